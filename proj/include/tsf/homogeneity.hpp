#ifndef TSF_HOMOGENEITY_HPP
#define TSF_HOMOGENEITY_HPP

#include <optional>
#include <string>

#include "tsf/error.hpp"
#include "tsf/lambda_tower.hpp"

namespace tsf {

// The structure pulled back to k^n along e_i -> v_i.
struct RestrictionPoint {
    FieldRef field = nullptr;
    std::size_t n = 0;
    PartitionTuple tuple;
    std::vector<MultiForm> forms;
    bool operator==(const RestrictionPoint& o) const;
};

struct PointDifference {
    std::size_t entry = 0;
    Index index;  // 0-based
    std::string describe() const;  // "entry 1 (1,2)", 1-based
};
std::optional<PointDifference> first_difference(const RestrictionPoint& a, const RestrictionPoint& b);

// Columns of vs are the tuple. Throws "dependent-tuple".
RestrictionPoint classifying_map(const LambdaSpace& v, const Matrix& vs);

// ---------------------------------------------------------------- quadratic oracle

// Symmetric [(2)]-space of dimension 2d; block i has omega(e_i, f_i) = 1.
LambdaSpace hyperbolic_space(std::size_t d, FieldRef f);
// d x d Gram matrix of a 2-form.
Matrix gram(const MultiForm& w);
// w_i -> e_i + (1/2) sum_j G_ji f_j into hyperbolic_space(dim W). Radical
// vectors land on isotropic e-vectors. Certified; throws "characteristic-2".
LinearEmbedding witt_embed_quadratic(const LambdaSpace& w);
// An isometry g of the nondegenerate [(2)]-space v with g m = m'. Reflections
// after completing the radical of span(m) by hyperbolic partners. Throws
// "non-isometric" when the columns do not have equal Gram matrices.
Matrix witt_extend(const LambdaSpace& v, const Matrix& m, const Matrix& m2);
bool is_isometry(const LambdaSpace& v, const Matrix& g);

struct HyperbolicExtension {
    LambdaSpace base, space;  // space = base + H^capacity, base first
    std::size_t capacity = 0;
};

// Quadratic spaces whose towers are H^(u1 + ... + un). Relative extensions
// need a nondegenerate base and use the orthogonal complement plus
// witt_embed_quadratic.
class HyperbolicInstance : public LambdaInstance {
public:
    using Extension = HyperbolicExtension;
    explicit HyperbolicInstance(FieldRef f);

    HyperbolicExtension universal(std::size_t k) const;
    HyperbolicExtension relative_extension(const LambdaSpace& x, std::size_t k) const;
    const LambdaSpace& extension_object(const HyperbolicExtension& r) const { return r.space; }
    LinearEmbedding extension_inclusion(const HyperbolicExtension& r) const;
    std::size_t capacity(const HyperbolicExtension& r) const { return r.capacity; }
    LinearEmbedding embed_over_base(const LinearEmbedding& ext, const HyperbolicExtension& r) const;
};

// ---------------------------------------------------------------- tower queries

// Both legs share the object A = span of the matched tuples; the forward map
// is right o left^-1 and sends left's first columns (v) to right's (w).
struct AutomorphismFragment {
    fraisse::Partial<LinearEmbedding> partial;
    std::size_t base_level = 0;
    std::size_t tuple_length = 0;
};

enum class OrbitVerdict { same, distinct, inconclusive };

struct OrbitResult {
    OrbitVerdict verdict = OrbitVerdict::inconclusive;
    std::optional<PointDifference> difference;
    std::optional<AutomorphismFragment> fragment;
    std::string reason;
};

template <class I>
RestrictionPoint principal_type_point(const I& inst, const fraisse::Tower<I>& t, std::size_t n, const Matrix& vs) {
    return classifying_map(fraisse::level(inst, t, n), vs);
}

// The fragment's legs restricted to A-coordinates c: the two tuples they give.
inline std::pair<Matrix, Matrix> fragment_images(const AutomorphismFragment& g, const Matrix& c) {
    return {g.partial.left.matrix * c, g.partial.right.matrix * c};
}

// "distinct" only from a classifying-map mismatch; a search that runs out
// of capacity is inconclusive.
template <class I>
OrbitResult orbit_test(const I& inst, fraisse::Tower<I>& t, std::size_t n, const Matrix& vs, const Matrix& ws,
                       std::size_t budget) {
    if (vs.cols() != ws.cols()) throw Error("dimension-mismatch", "tuples of different length");
    const LambdaSpace v = fraisse::level(inst, t, n);
    auto pv = classifying_map(v, vs), pw = classifying_map(v, ws);
    OrbitResult out;
    if (auto diff = first_difference(pv, pw)) {
        out.verdict = OrbitVerdict::distinct;
        out.difference = diff;
        out.reason = "distinct-orbits: " + diff->describe();
        return out;
    }
    LambdaSpace a = pullback_space(v, vs);
    fraisse::Partial<LinearEmbedding> seed{{a, v, vs}, {a, v, ws}, n, n, 0};
    try {
        auto p = fraisse::back_and_forth(inst, t, inst, t, seed, budget);
        out.verdict = OrbitVerdict::same;
        out.fragment = AutomorphismFragment{p, n, vs.cols()};
        out.reason = "same-orbit: " + std::to_string(p.steps) + " steps";
    } catch (const CapacityError& e) {
        out.verdict = OrbitVerdict::inconclusive;
        out.reason = std::string("inconclusive: ") + e.what();
    }
    return out;
}

// Column span of a contains column span of b.
bool spans_within(const Matrix& a, const Matrix& b);

struct OligomorphicWitness {
    fraisse::Request<LinearEmbedding> absorber;  // E: image of the absorbing object
    AutomorphismFragment fragment;               // right leg maps W into E
    bool inside = false;                         // certificate that it does
};

// E is fixed once per (tower, d) in t.witnesses.
template <class I>
const fraisse::Request<LinearEmbedding>& absorber(const I& inst, fraisse::Tower<I>& t, std::size_t d) {
    auto it = t.witnesses.find(d);
    if (it != t.witnesses.end()) return it->second;
    auto u = inst.extension_object(inst.universal(d));
    auto r = fraisse::extend_embedding(inst, t, 0, inst.from_initial(inst.initial()), inst.from_initial(u));
    return t.witnesses.emplace(d, r).first->second;
}

// ws spans W inside level n; CapacityError when the search runs out.
template <class I>
OligomorphicWitness oligomorphic_witness(const I& inst, fraisse::Tower<I>& t, std::size_t n, const Matrix& ws,
                                         std::size_t d, std::size_t budget) {
    if (ws.cols() > d) throw Error("dimension-exceeds-bound", "dim W > d");
    const auto e = absorber(inst, t, d);
    const LambdaSpace v = fraisse::level(inst, t, n);
    auto w = subspace(v, ws);
    fraisse::Partial<LinearEmbedding> seed{w, w, n, n, 0};
    if (n > e.to || !spans_within(e.beta.matrix, fraisse::transition(inst, t, n, e.to).matrix * ws)) {
        auto into_u = inst.embed_over_base(inst.from_initial(w.source), inst.universal(d));
        seed.right = inst.compose(e.beta, into_u);
        seed.right_level = e.to;
    }
    const LinearEmbedding right = seed.right;
    auto p = fraisse::back_and_forth(inst, t, inst, t, seed, budget);
    OligomorphicWitness out{e, {p, n, ws.cols()}, false};
    out.inside = seed.right_level == e.to ? spans_within(e.beta.matrix, right.matrix)
                                          : spans_within(e.beta.matrix, fraisse::transition(inst, t, n, e.to).matrix * ws);
    return out;
}

struct PinnedWitness {
    fraisse::Request<LinearEmbedding> absorber;  // relative extension over span(pins)
    AutomorphismFragment fragment;
    bool fixes_pins = false;
    bool inside = false;
};

// W must meet span(pins) trivially.
template <class I>
PinnedWitness pinned_oligomorphic_witness(const I& inst, fraisse::Tower<I>& t, std::size_t n, const Matrix& pins,
                                          const Matrix& ws, std::size_t d, std::size_t budget) {
    if (ws.cols() > d) throw Error("dimension-exceeds-bound", "dim W > d");
    const LambdaSpace v = fraisse::level(inst, t, n);
    auto u = subspace(v, pins);
    auto rel = inst.relative_extension(u.source, d);
    const auto e = fraisse::extend_embedding(inst, t, n, u, inst.extension_inclusion(rel));
    auto y = subspace(v, pins.hstack(ws));
    LinearEmbedding ext{u.source, y.source, Matrix::inclusion(v.field(), y.source.dim(), pins.cols())};
    auto right = inst.compose(e.beta, inst.embed_over_base(ext, rel));
    fraisse::Partial<LinearEmbedding> seed{y, right, n, e.to, 0};
    auto p = fraisse::back_and_forth(inst, t, inst, t, seed, budget);
    PinnedWitness out{e, {p, n, pins.cols() + ws.cols()}, false, false};
    auto shift = fraisse::transition(inst, t, n, p.right_level);
    out.fixes_pins = p.right.matrix.select_columns(0, pins.cols()) == shift.matrix * pins;
    out.inside = spans_within(e.beta.matrix, right.matrix.select_columns(pins.cols(), ws.cols()));
    return out;
}

}  // namespace tsf

#endif
