#include "tsf/young.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "tsf/error.hpp"

namespace tsf {

namespace {

constexpr int kMaxDegree = 8;
constexpr int kTableDegree = 6;  // full multiplication tables up to here

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

struct Tables {
    std::vector<std::vector<std::uint16_t>> compose;  // compose[outer][inner]
};

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

SymmetricGroup::SymmetricGroup(int n) : n_(n) {
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms_.push_back(p);
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        signs_.push_back(inv % 2 ? -1 : 1);
    } while (std::next_permutation(p.begin(), p.end()));
}

const SymmetricGroup& SymmetricGroup::of(int n) {
    if (n < 0 || n > kMaxDegree) throw Error("too-large", "symmetric group degree out of range");
    static std::unique_ptr<SymmetricGroup> groups[kMaxDegree + 1];
    std::lock_guard<std::mutex> lock(cache_mutex());
    if (!groups[n]) groups[n].reset(new SymmetricGroup(n));
    return *groups[n];
}

std::size_t SymmetricGroup::index(const Permutation& p) const {
    if (static_cast<int>(p.size()) != n_) throw Error("dimension-mismatch", "permutation degree");
    // Lehmer code gives the lexicographic rank.
    std::size_t r = 0;
    for (int i = 0; i < n_; ++i) {
        std::size_t smaller = 0;
        for (int j = i + 1; j < n_; ++j)
            if (p[j] < p[i]) ++smaller;
        r += smaller * factorial(n_ - 1 - i);
    }
    return r;
}

std::size_t SymmetricGroup::compose(std::size_t outer, std::size_t inner) const {
    static Tables tables[kTableDegree + 1];
    static std::once_flag flags[kTableDegree + 1];
    if (n_ <= kTableDegree) {
        auto& t = tables[n_];
        std::call_once(flags[n_], [&] {
            t.compose.assign(order(), std::vector<std::uint16_t>(order()));
            Permutation c(static_cast<std::size_t>(n_));
            for (std::size_t a = 0; a < order(); ++a)
                for (std::size_t b = 0; b < order(); ++b) {
                    for (int k = 0; k < n_; ++k) c[k] = perms_[a][perms_[b][k]];
                    t.compose[a][b] = static_cast<std::uint16_t>(index(c));
                }
        });
        return t.compose[outer][inner];
    }
    Permutation c(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) c[k] = perms_[outer][perms_[inner][k]];
    return index(c);
}

GroupAlgebraElement GroupAlgebraElement::zero(FieldRef f, int n) {
    return {f, n, std::vector<Scalar>(SymmetricGroup::of(n).order(), f->zero())};
}

GroupAlgebraElement GroupAlgebraElement::unit(FieldRef f, int n) { return basis(f, n, 0, f->one()); }

GroupAlgebraElement GroupAlgebraElement::basis(FieldRef f, int n, std::size_t i, const Scalar& c) {
    auto e = zero(f, n);
    e.coeff.at(i) = c;
    return e;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    if (n != o.n || field != o.field) throw Error("dimension-mismatch", "group algebra product");
    const auto& g = SymmetricGroup::of(n);
    auto out = zero(field, n);
    std::vector<std::size_t> sy;
    for (std::size_t t = 0; t < o.coeff.size(); ++t)
        if (!o.coeff[t].is_zero()) sy.push_back(t);
    for (std::size_t s = 0; s < coeff.size(); ++s) {
        if (coeff[s].is_zero()) continue;
        for (auto t : sy) out.coeff[g.compose(t, s)] += coeff[s] * o.coeff[t];
    }
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    if (n != o.n || field != o.field) throw Error("dimension-mismatch", "group algebra sum");
    auto out = *this;
    for (std::size_t i = 0; i < coeff.size(); ++i) out.coeff[i] += o.coeff[i];
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    return *this + o.scaled(-field->one());
}

GroupAlgebraElement GroupAlgebraElement::scaled(const Scalar& s) const {
    auto out = *this;
    for (auto& c : out.coeff) c *= s;
    return out;
}

std::size_t GroupAlgebraElement::support() const {
    return static_cast<std::size_t>(std::count_if(coeff.begin(), coeff.end(), [](const Scalar& c) { return !c.is_zero(); }));
}

void require_characteristic(FieldRef f, int n) {
    auto p = f->characteristic();
    if (p != 0 && p <= n)
        throw Error("characteristic-too-small",
                    "characteristic " + std::to_string(p) + " does not exceed " + std::to_string(n));
}

MultiForm act(const MultiForm& omega, const GroupAlgebraElement& x) {
    const int n = omega.arity();
    if (x.n != n) throw Error("dimension-mismatch", "group algebra degree differs from arity");
    const auto& g = SymmetricGroup::of(n);
    const std::size_t d = omega.dim();
    std::vector<std::uint64_t> pw(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 1; k <= n; ++k) pw[k] = pw[k - 1] * d;
    FormBuilder out(omega.field(), n, d);
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(n));
    for (auto& [key, v] : omega.entries()) {
        std::uint64_t k = key;
        for (int slot = n - 1; slot >= 0; --slot) {
            digits[slot] = k % d;
            k /= d;
        }
        for (std::size_t s = 0; s < x.coeff.size(); ++s) {
            if (x.coeff[s].is_zero()) continue;
            const auto& sigma = g.perm(s);
            std::uint64_t nk = 0;
            for (int slot = 0; slot < n; ++slot) nk += digits[slot] * pw[n - 1 - sigma[slot]];
            out.add_key(nk, v * x.coeff[s]);
        }
    }
    return out.finish();
}

GroupAlgebraElement young_element(const StandardTableau& t, FieldRef f) {
    const int n = t.shape.size();
    require_characteristic(f, n);
    const auto& g = SymmetricGroup::of(n);
    std::vector<int> row_of(static_cast<std::size_t>(n)), col_of(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            row_of[t.rows[r][c] - 1] = static_cast<int>(r);
            col_of[t.rows[r][c] - 1] = static_cast<int>(c);
        }
    auto a = GroupAlgebraElement::zero(f, n), b = GroupAlgebraElement::zero(f, n);
    for (std::size_t s = 0; s < g.order(); ++s) {
        const auto& p = g.perm(s);
        bool rows_kept = true, cols_kept = true;
        for (int k = 0; k < n; ++k) {
            rows_kept = rows_kept && row_of[p[k]] == row_of[k];
            cols_kept = cols_kept && col_of[p[k]] == col_of[k];
        }
        if (rows_kept) a.coeff[s] = f->one();
        if (cols_kept) b.coeff[s] = f->from_int(g.sign(s));
    }
    Scalar scale = f->from_int(static_cast<std::int64_t>(standard_tableaux(t.shape).size())) /
                   f->from_int(static_cast<std::int64_t>(factorial(n)));
    return (a * b).scaled(scale);
}

const GroupAlgebraElement& young_idempotent(const Partition& lambda, FieldRef f) {
    static std::map<std::pair<FieldRef, std::vector<int>>, GroupAlgebraElement> cache;
    static std::mutex m;
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = cache.find({f, lambda.parts()});
        if (it != cache.end()) return it->second;
    }
    if (lambda.empty()) throw Error("invalid-partition", "projector of the empty partition");
    auto e = young_element(canonical_tableau(lambda), f);
    if (!(e * e == e)) throw Error("internal", "Young element is not idempotent for " + lambda.to_string());
    std::lock_guard<std::mutex> lock(m);
    return cache.emplace(std::make_pair(f, lambda.parts()), std::move(e)).first->second;
}

MultiForm young_projector_apply(const MultiForm& omega, const Partition& lambda) {
    if (omega.arity() != lambda.size()) throw Error("dimension-mismatch", "arity differs from |lambda|");
    return act(omega, young_idempotent(lambda, omega.field()));
}

GroupAlgebraElement jucys_murphy(FieldRef f, int n, int k) {
    const auto& g = SymmetricGroup::of(n);
    auto out = GroupAlgebraElement::zero(f, n);
    for (int i = 1; i < k; ++i) {
        Permutation p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[i - 1], p[k - 1]);
        out.coeff[g.index(p)] = f->one();
    }
    return out;
}

namespace {

// k[S_{n-1}] -> k[S_n], fixing the last point.
GroupAlgebraElement lift(const GroupAlgebraElement& x) {
    const auto& small = SymmetricGroup::of(x.n);
    const auto& big = SymmetricGroup::of(x.n + 1);
    auto out = GroupAlgebraElement::zero(x.field, x.n + 1);
    for (std::size_t s = 0; s < x.coeff.size(); ++s) {
        if (x.coeff[s].is_zero()) continue;
        Permutation p = small.perm(s);
        p.push_back(x.n);
        out.coeff[big.index(p)] = x.coeff[s];
    }
    return out;
}

std::vector<TableauIdempotent> build_seminormal(int n, FieldRef f) {
    if (n == 0) return {{StandardTableau{Partition(), {}}, GroupAlgebraElement::unit(f, 0)}};
    const auto& prev = seminormal_idempotents(n - 1, f);
    const auto ln = jucys_murphy(f, n, n);
    std::vector<TableauIdempotent> out;
    for (auto& lambda : partitions_of(n))
        for (auto& t : standard_tableaux(lambda)) {
            StandardTableau down{Partition(), t.rows};
            int nr = -1, nc = -1;
            for (std::size_t r = 0; r < down.rows.size(); ++r)
                if (!down.rows[r].empty() && down.rows[r].back() == n) {
                    nr = static_cast<int>(r);
                    nc = static_cast<int>(down.rows[r].size()) - 1;
                    down.rows[r].pop_back();
                }
            if (down.rows.back().empty()) down.rows.pop_back();
            std::vector<int> parts;
            for (auto& r : down.rows) parts.push_back(static_cast<int>(r.size()));
            down.shape = Partition(parts);
            const GroupAlgebraElement* base = nullptr;
            for (auto& e : prev)
                if (e.tableau.rows == down.rows) base = &e.element;
            if (!base) throw Error("internal", "missing restricted tableau");
            const int content = nc - nr;
            auto e = lift(*base);
            // Addable cells of the restricted shape other than the one holding n.
            for (int r = 0; r <= down.shape.rows(); ++r) {
                if (r > 0 && down.shape[r - 1] <= down.shape[r]) continue;
                int c = down.shape[r] - r;
                if (c == content) continue;
                auto factor = ln - GroupAlgebraElement::unit(f, n).scaled(f->from_int(c));
                e = e * factor.scaled(f->from_int(content - c).inverse());
            }
            out.push_back({t, std::move(e)});
        }
    return out;
}

}  // namespace

const std::vector<TableauIdempotent>& seminormal_idempotents(int n, FieldRef f) {
    require_characteristic(f, n);
    static std::map<std::pair<FieldRef, int>, std::vector<TableauIdempotent>> cache;
    static std::recursive_mutex m;
    std::lock_guard<std::recursive_mutex> lock(m);
    auto it = cache.find({f, n});
    if (it != cache.end()) return it->second;
    auto built = build_seminormal(n, f);
    return cache.emplace(std::make_pair(f, n), std::move(built)).first->second;
}

std::vector<MultiForm> projector_image_basis(const Partition& lambda, std::size_t d, FieldRef f) {
    const int n = lambda.size();
    std::uint64_t cells = 1;
    for (int k = 0; k < n; ++k) cells *= d;
    std::vector<MultiForm> basis;
    Matrix span(f, cells, 0);
    for (std::uint64_t key = 0; key < cells; ++key) {
        MultiForm unit = MultiForm::from_entries(f, n, d, {{key, f->one()}});
        MultiForm img = young_projector_apply(unit, lambda);
        if (img.is_zero()) continue;
        SparseColumn col;
        for (auto& [k, v] : img.entries()) col.emplace_back(static_cast<std::size_t>(k), v);
        Matrix next = span.hstack(Matrix::from_columns(f, cells, {col}));
        if (rank(next) == next.cols()) {
            span = std::move(next);
            basis.push_back(std::move(img));
        }
    }
    return basis;
}

std::vector<FormComponent> decompose_form(const MultiForm& omega) {
    std::vector<FormComponent> out;
    for (auto& e : seminormal_idempotents(omega.arity(), omega.field()))
        out.push_back({e.tableau, act(omega, e.element)});
    return out;
}

MultiForm reassemble(const std::vector<FormComponent>& parts) {
    if (parts.empty()) throw Error("invalid-form", "no components to reassemble");
    MultiForm total(parts[0].form.field(), parts[0].form.arity(), parts[0].form.dim());
    for (auto& p : parts) total = total + p.form;
    return total;
}

}  // namespace tsf
