#ifndef TSF_FRAISSE_HPP
#define TSF_FRAISSE_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tsf/error.hpp"

namespace tsf::fraisse {

// Amalgam of a span X -> A, X -> B: legs A -> W and B -> W.
template <class Object, class Embedding>
struct Square {
    Object object;
    Embedding left, right;
};

// The engine sees objects and embeddings only through these operations.
// Extension is an instance-side record of a relative universal extension
// X -> W together with whatever embed_over_base needs.
template <class I>
concept AmalgamationInstance = requires(const I& inst, const typename I::Object& x,
                                        const typename I::Embedding& e, const typename I::Extension& rel,
                                        std::size_t k) {
    { inst.size(x) } -> std::convertible_to<std::size_t>;
    { inst.source(e) } -> std::convertible_to<const typename I::Object&>;
    { inst.target(e) } -> std::convertible_to<const typename I::Object&>;
    { inst.compose(e, e) } -> std::same_as<typename I::Embedding>;
    { inst.equal(e, e) } -> std::same_as<bool>;
    { inst.identity(x) } -> std::same_as<typename I::Embedding>;
    { inst.initial() } -> std::same_as<typename I::Object>;
    { inst.from_initial(x) } -> std::same_as<typename I::Embedding>;
    // Extension of the initial object that absorbs every object of size <= k.
    { inst.universal(k) } -> std::same_as<typename I::Extension>;
    { inst.relative_extension(x, k) } -> std::same_as<typename I::Extension>;
    { inst.extension_object(rel) } -> std::convertible_to<const typename I::Object&>;
    { inst.extension_inclusion(rel) } -> std::same_as<typename I::Embedding>;
    { inst.capacity(rel) } -> std::convertible_to<std::size_t>;
    // For ext: base -> Y, an embedding Y -> W with result o ext = inclusion.
    { inst.embed_over_base(e, rel) } -> std::same_as<typename I::Embedding>;
    { inst.amalgamate(e, e) } -> std::same_as<Square<typename I::Object, typename I::Embedding>>;
    // X -> Y1 -> Y with |Y1| = |X| + k, composing to e.
    { inst.split(e, k) } -> std::same_as<std::pair<typename I::Embedding, typename I::Embedding>>;
    // For s: A -> V, A -> A' -> V adding up to k elements of V outside the
    // image, lowest first; nullopt when s is onto.
    { inst.grow(e, k) } -> std::same_as<std::optional<std::pair<typename I::Embedding, typename I::Embedding>>>;
    { inst.certify(e) } -> std::same_as<bool>;
};

// Levels are numbered from 0, the initial object.
template <class E>
struct Request {
    std::size_t from = 0, to = 0;
    E alpha;  // X -> level from
    E iota;   // X -> Y
    E beta;   // Y -> level to, beta o iota = transition(from, to) o alpha
};

template <AmalgamationInstance I>
struct Tower {
    using Object = typename I::Object;
    using Embedding = typename I::Embedding;
    using Extension = typename I::Extension;

    std::vector<Extension> extensions;   // extensions[n]: level n -> level n + 1
    std::vector<std::size_t> schedule;   // schedule[n]: capacity of extensions[n]
    std::vector<Request<Embedding>> log;
    bool lazy = false;
    // Absorbing images fixed once per bound, keyed by bound.
    std::map<std::size_t, Request<Embedding>> witnesses;

    std::size_t depth() const { return extensions.size(); }
};

template <AmalgamationInstance I>
typename I::Object level(const I& inst, const Tower<I>& t, std::size_t n) {
    if (n == 0) return inst.initial();
    return inst.extension_object(t.extensions.at(n - 1));
}

// The transition from level n to level m >= n.
template <AmalgamationInstance I>
typename I::Embedding transition(const I& inst, const Tower<I>& t, std::size_t n, std::size_t m) {
    if (m < n || m > t.depth()) throw Error("invalid-level", "transition " + std::to_string(n) + "->" + std::to_string(m));
    if (n == 0) return inst.from_initial(level(inst, t, m));
    auto e = inst.identity(level(inst, t, n));
    for (std::size_t j = n; j < m; ++j) e = inst.compose(inst.extension_inclusion(t.extensions[j]), e);
    return e;
}

template <AmalgamationInstance I>
void grow_level(const I& inst, Tower<I>& t, std::size_t capacity) {
    if (capacity == 0) throw Error("invalid-schedule", "capacity 0");
    if (t.extensions.empty())
        t.extensions.push_back(inst.universal(capacity));
    else
        t.extensions.push_back(inst.relative_extension(inst.extension_object(t.extensions.back()), capacity));
    t.schedule.push_back(capacity);
    if (!inst.certify(inst.extension_inclusion(t.extensions.back())))
        throw Error("certificate-failure", "transition " + std::to_string(t.depth()));
}

// Level 1 absorbs everything of size <= u(1); level n + 1 is relatively
// u(n + 1)-universal over level n.
template <AmalgamationInstance I>
Tower<I> build_tower(const I& inst, std::size_t depth, const std::vector<std::size_t>& schedule, bool lazy = false) {
    if (schedule.size() < depth) throw Error("invalid-schedule", "schedule shorter than depth");
    Tower<I> t;
    t.lazy = lazy;
    for (std::size_t n = 0; n < depth; ++n) grow_level(inst, t, schedule[n]);
    return t;
}

namespace detail {

// One amalgamate-then-embed step from level n into level n + 1.
template <AmalgamationInstance I>
typename I::Embedding resolve_step(const I& inst, const Tower<I>& t, std::size_t n,
                                   const typename I::Embedding& alpha, const typename I::Embedding& iota) {
    auto sq = inst.amalgamate(alpha, iota);
    auto gamma = inst.embed_over_base(sq.left, t.extensions.at(n));
    return inst.compose(gamma, sq.right);
}

template <AmalgamationInstance I>
std::size_t extra_of(const I& inst, const typename I::Embedding& iota) {
    return inst.size(inst.target(iota)) - inst.size(inst.source(iota));
}

// Resolves against the levels above n, splitting Y into capacity-sized
// steps. Grows the tower only when allowed.
template <AmalgamationInstance I>
std::pair<typename I::Embedding, std::size_t> resolve(const I& inst, Tower<I>& t, bool may_grow, std::size_t n,
                                                       typename I::Embedding alpha, typename I::Embedding iota) {
    std::size_t lvl = n;
    while (true) {
        std::size_t rem = extra_of(inst, iota);
        if (lvl == t.depth()) {
            if (!may_grow || !t.lazy)
                throw CapacityError("capacity-exhausted", std::to_string(rem) + " dimensions beyond level " +
                                                              std::to_string(lvl));
            grow_level(inst, t, std::max(rem, t.schedule.empty() ? std::size_t{1} : t.schedule.back()));
        }
        std::size_t cap = inst.capacity(t.extensions[lvl]);
        if (rem <= cap) return {resolve_step(inst, t, lvl, alpha, iota), lvl + 1};
        auto [head, rest] = inst.split(iota, cap);
        alpha = resolve_step(inst, t, lvl, alpha, head);
        iota = rest;
        ++lvl;
    }
}

template <AmalgamationInstance I>
bool triangle_commutes(const I& inst, const Tower<I>& t, const Request<typename I::Embedding>& r) {
    if (!inst.certify(r.beta)) return false;
    return inst.equal(inst.compose(r.beta, r.iota), inst.compose(transition(inst, t, r.from, r.to), r.alpha));
}

}  // namespace detail

// beta: Y -> level m with beta o iota = transition(n, m) o alpha; certified
// and logged. CapacityError when the tower runs out in static mode.
template <AmalgamationInstance I>
const Request<typename I::Embedding>& extend_embedding(const I& inst, Tower<I>& t, std::size_t n,
                                                        const typename I::Embedding& alpha,
                                                        const typename I::Embedding& iota) {
    if (n > t.depth()) throw Error("invalid-level", std::to_string(n));
    auto [beta, m] = detail::resolve(inst, t, true, n, alpha, iota);
    Request<typename I::Embedding> r{n, m, alpha, iota, std::move(beta)};
    if (!detail::triangle_commutes(inst, t, r)) throw Error("certificate-failure", "request triangle");
    t.log.push_back(std::move(r));
    return t.log.back();
}

// The logged triangle still commutes and a fresh resolution against the
// current tower succeeds without growing it.
template <AmalgamationInstance I>
bool replay(const I& inst, Tower<I>& t, const Request<typename I::Embedding>& r) {
    if (r.to > t.depth() || !detail::triangle_commutes(inst, t, r)) return false;
    try {
        auto [beta, m] = detail::resolve(inst, t, false, r.from, r.alpha, r.iota);
        return detail::triangle_commutes(inst, t, Request<typename I::Embedding>{r.from, m, r.alpha, r.iota, beta});
    } catch (const CapacityError&) {
        return false;
    }
}

// A common object A with embeddings into a level of each tower.
template <class E>
struct Partial {
    E left;   // A -> level left_level of the first tower
    E right;  // A -> level right_level of the second tower
    std::size_t left_level = 0, right_level = 0;
    std::size_t steps = 0;
};

namespace detail {

// Adds elements from the `from` side and resolves them in `to`.
template <AmalgamationInstance I, AmalgamationInstance J>
bool bf_step(const I& from_inst, const Tower<I>& from, typename I::Embedding& s, std::size_t& s_level,
             const J& to_inst, Tower<J>& to, typename J::Embedding& r, std::size_t& r_level) {
    std::size_t cap;
    if (r_level < to.depth())
        cap = to_inst.capacity(to.extensions[r_level]);
    else if (to.lazy)
        cap = to.schedule.empty() ? 1 : to.schedule.back();
    else
        throw CapacityError("capacity-exhausted", "no level above " + std::to_string(r_level));
    auto g = from_inst.grow(s, cap);
    while (!g) {
        if (s_level == from.depth()) return false;
        s = from_inst.compose(transition(from_inst, from, s_level, s_level + 1), s);
        ++s_level;
        g = from_inst.grow(s, cap);
    }
    const auto& req = extend_embedding(to_inst, to, r_level, r, g->first);
    s = g->second;
    r = req.beta;
    r_level = req.to;
    return true;
}

}  // namespace detail

// Alternates forth (grow on the first tower, resolve in the second) and back,
// for at most `budget` steps. Both towers may be the same object. Stops early
// when the first side is exhausted; CapacityError propagates.
template <AmalgamationInstance I, AmalgamationInstance J>
    requires std::same_as<typename I::Embedding, typename J::Embedding>
Partial<typename I::Embedding> back_and_forth(const I& inst, Tower<I>& t, const J& inst2, Tower<J>& t2,
                                              Partial<typename I::Embedding> seed, std::size_t budget) {
    auto p = std::move(seed);
    while (p.steps < budget) {
        bool moved = (p.steps % 2 == 0)
                         ? detail::bf_step(inst, t, p.left, p.left_level, inst2, t2, p.right, p.right_level)
                         : detail::bf_step(inst2, t2, p.right, p.right_level, inst, t, p.left, p.left_level);
        if (!moved) break;
        ++p.steps;
    }
    return p;
}

template <AmalgamationInstance I>
Partial<typename I::Embedding> empty_seed(const I& inst, const Tower<I>& t) {
    auto e = transition(inst, t, 0, 0);
    return {e, e, 0, 0, 0};
}

// Universal only: each object joins the previous level over the initial object.
template <AmalgamationInstance I>
struct Chain {
    std::vector<typename I::Object> levels;
    std::vector<typename I::Embedding> transitions;  // levels[n] -> levels[n + 1]
    std::vector<typename I::Embedding> legs;         // objects[n] -> levels[n]
};

template <AmalgamationInstance I>
Chain<I> jep_chain(const I& inst, const std::vector<typename I::Object>& objects) {
    Chain<I> c;
    for (const auto& x : objects) {
        if (c.levels.empty()) {
            c.levels.push_back(x);
            c.legs.push_back(inst.identity(x));
            continue;
        }
        auto sq = inst.amalgamate(inst.from_initial(c.levels.back()), inst.from_initial(x));
        if (!inst.certify(sq.left) || !inst.certify(sq.right)) throw Error("certificate-failure", "joint embedding");
        c.levels.push_back(sq.object);
        c.transitions.push_back(sq.left);
        c.legs.push_back(sq.right);
    }
    return c;
}

// Leg of objects[i] carried to the last level.
template <AmalgamationInstance I>
typename I::Embedding chain_leg(const I& inst, const Chain<I>& c, std::size_t i) {
    auto e = c.legs.at(i);
    for (std::size_t j = i; j < c.transitions.size(); ++j) e = inst.compose(c.transitions[j], e);
    return e;
}

}  // namespace tsf::fraisse

#endif
