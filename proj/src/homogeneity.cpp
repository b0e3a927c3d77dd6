#include "tsf/homogeneity.hpp"

#include <sstream>

#include "tsf/young.hpp"

namespace tsf {

bool RestrictionPoint::operator==(const RestrictionPoint& o) const {
    return field == o.field && n == o.n && tuple == o.tuple && forms == o.forms;
}

std::string PointDifference::describe() const {
    std::ostringstream s;
    s << "entry " << entry + 1 << " (";
    for (std::size_t i = 0; i < index.size(); ++i) s << (i ? "," : "") << index[i] + 1;
    s << ")";
    return s.str();
}

std::optional<PointDifference> first_difference(const RestrictionPoint& a, const RestrictionPoint& b) {
    if (a.field != b.field || a.n != b.n || a.tuple != b.tuple)
        throw Error("tuple-mismatch", "restriction points of different shape");
    for (std::size_t i = 0; i < a.forms.size(); ++i)
        if (auto idx = a.forms[i].first_difference(b.forms[i])) return PointDifference{i, *idx};
    return std::nullopt;
}

RestrictionPoint classifying_map(const LambdaSpace& v, const Matrix& vs) {
    if (vs.rows() != v.dim()) throw Error("dimension-mismatch", "tuple vectors have the wrong length");
    if (rank(vs) != vs.cols()) throw Error("dependent-tuple", "tuple is linearly dependent");
    RestrictionPoint p{v.field(), vs.cols(), v.tuple(), {}};
    for (std::size_t i = 0; i < v.size(); ++i) p.forms.push_back(pullback(v.form(i), vs));
    return p;
}

// ---------------------------------------------------------------- quadratic oracle

namespace {

void require_quadratic(const LambdaSpace& v) {
    if (v.tuple() != PartitionTuple{Partition({2})}) throw Error("tuple-mismatch", "expected a [(2)]-space");
    if (v.field()->characteristic() == 2) throw Error("characteristic-2", "quadratic forms need characteristic != 2");
}

Scalar bilinear(const Matrix& g, const Vector& x, const Vector& y) {
    Vector gy = g * y;
    Scalar s = g.field()->zero();
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
    return s;
}

Vector axpy(Vector x, const Vector& y, const Scalar& a) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += a * y[i];
    return x;
}

Vector combine(const Matrix& m, const Vector& c) { return m * c; }

// I - (2 / q(a)) a a^T G.
Matrix reflection(const Matrix& g, const Vector& a) {
    FieldRef f = g.field();
    const std::size_t d = a.size();
    Scalar s = f->from_int(2) * bilinear(g, a, a).inverse();
    Matrix at = Matrix::from_dense_columns(f, d, {a}).transpose() * g;  // 1 x d
    Matrix col = Matrix::from_dense_columns(f, d, {a}).scaled(s);
    return Matrix::identity(f, d) - col * at;
}

}  // namespace

LambdaSpace hyperbolic_space(std::size_t d, FieldRef f) {
    std::vector<MultiForm::Entry> e;
    const std::size_t n = 2 * d;
    for (std::size_t i = 0; i < d; ++i) {
        e.emplace_back(static_cast<std::uint64_t>(2 * i * n + 2 * i + 1), f->one());
        e.emplace_back(static_cast<std::uint64_t>((2 * i + 1) * n + 2 * i), f->one());
    }
    return LambdaSpace(f, n, {Partition({2})}, {MultiForm::from_entries(f, 2, n, std::move(e))});
}

Matrix gram(const MultiForm& w) {
    if (w.arity() != 2) throw Error("invalid-form", "Gram matrix of a non-bilinear form");
    Matrix g(w.field(), w.dim(), w.dim());
    for (auto& [key, v] : w.entries()) {
        Index idx = w.index(key);
        g.set(idx[0], idx[1], v);
    }
    return g;
}

bool is_isometry(const LambdaSpace& v, const Matrix& g) {
    return g.rows() == v.dim() && g.cols() == v.dim() && rank(g) == v.dim() && pullback(v.form(0), g) == v.form(0);
}

LinearEmbedding witt_embed_quadratic(const LambdaSpace& w) {
    require_quadratic(w);
    FieldRef f = w.field();
    const std::size_t m = w.dim();
    Matrix g = gram(w.form(0));
    Scalar half = f->from_int(2).inverse();
    std::vector<SparseColumn> cols(m);
    for (std::size_t i = 0; i < m; ++i) {
        cols[i].emplace_back(2 * i, f->one());
        for (auto& [j, v] : g.column(i)) cols[i].emplace_back(2 * j + 1, v * half);
    }
    LinearEmbedding e{w, hyperbolic_space(m, f), Matrix::from_columns(f, 2 * m, std::move(cols))};
    certify(e);
    return e;
}

Matrix witt_extend(const LambdaSpace& v, const Matrix& m_in, const Matrix& m2_in) {
    require_quadratic(v);
    FieldRef f = v.field();
    const std::size_t d = v.dim();
    Matrix g = gram(v.form(0));
    if (rank(g) != d) throw Error("degenerate-ambient", "Witt extension needs a nondegenerate space");
    if (m_in.rows() != d || m2_in.rows() != d || m_in.cols() != m2_in.cols())
        throw Error("dimension-mismatch", "subspace bases of different shape");
    if (rank(m_in) != m_in.cols() || rank(m2_in) != m2_in.cols())
        throw Error("non-isometric", "basis columns are dependent");
    if (m_in.transpose() * g * m_in != m2_in.transpose() * g * m2_in)
        throw Error("non-isometric", "Gram matrices differ");

    std::vector<Vector> m, m2;
    for (std::size_t j = 0; j < m_in.cols(); ++j) {
        m.push_back(m_in.dense_column(j));
        m2.push_back(m2_in.dense_column(j));
    }
    auto as_matrix = [&](const std::vector<Vector>& cols) { return Matrix::from_dense_columns(f, d, cols); };
    Scalar half = f->from_int(2).inverse();

    // Hyperbolic partners for the radical of span(m), matched on both sides.
    for (;;) {
        Matrix mm = as_matrix(m);
        auto ker = kernel_basis(mm.transpose() * g * mm);
        if (ker.empty()) break;
        const Vector& c = ker[0];
        std::size_t p = 0;
        while (c[p].is_zero()) ++p;
        Vector t(m.size(), f->zero());
        t[p] = c[p].inverse();
        auto partner = [&](const std::vector<Vector>& side) {
            Matrix s = as_matrix(side);
            auto x = solve_linear(s.transpose() * g, t);
            if (!x) throw Error("internal", "no hyperbolic partner");
            Vector r = combine(s, c);
            return axpy(*x, r, -(bilinear(g, *x, *x) * half));
        };
        Vector x = partner(m), x2 = partner(m2);
        m.push_back(std::move(x));
        m2.push_back(std::move(x2));
    }

    // Reflections: match one anisotropic vector, then recurse in its orthogonal.
    Matrix total = Matrix::identity(f, d);
    while (!m.empty()) {
        const std::size_t k = m.size();
        Vector c(k, f->zero());
        bool found = false;
        for (std::size_t i = 0; i < k && !found; ++i) {
            c.assign(k, f->zero());
            c[i] = f->one();
            found = !bilinear(g, m[i], m[i]).is_zero();
        }
        for (std::size_t i = 0; i < k && !found; ++i)
            for (std::size_t j = i + 1; j < k && !found; ++j) {
                c.assign(k, f->zero());
                c[i] = c[j] = f->one();
                found = !bilinear(g, axpy(m[i], m[j], f->one()), axpy(m[i], m[j], f->one())).is_zero();
            }
        if (!found) throw Error("internal", "nondegenerate subspace without anisotropic vector");
        Vector u = combine(as_matrix(m), c), u2 = combine(as_matrix(m2), c);
        // rho u = u2: one reflection when q(u - u2) != 0, else two (q(u + u2) = 4 q(u)).
        Matrix rho = Matrix::identity(f, d);
        Vector diff = axpy(u, u2, -f->one());
        if (u != u2)
            rho = bilinear(g, diff, diff).is_zero() ? reflection(g, u2) * reflection(g, axpy(u, u2, f->one()))
                                                    : reflection(g, diff);
        Matrix rho_inv = *inverse(rho);
        total = total * rho;
        Scalar qu = bilinear(g, u, u).inverse();
        std::size_t p = 0;
        while (c[p].is_zero()) ++p;
        std::vector<Vector> next, next2;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == p) continue;
            Scalar a = bilinear(g, m[j], u) * qu;
            next.push_back(axpy(m[j], u, -a));
            next2.push_back(rho_inv * axpy(m2[j], u2, -a));
        }
        m = std::move(next);
        m2 = std::move(next2);
    }
    if (total * m_in != m2_in || !is_isometry(v, total)) throw Error("internal", "Witt extension failed to certify");
    return total;
}

// ---------------------------------------------------------------- hyperbolic instance

HyperbolicInstance::HyperbolicInstance(FieldRef f) : LambdaInstance(f, {Partition({2})}) {}

HyperbolicExtension HyperbolicInstance::universal(std::size_t k) const {
    return {initial(), hyperbolic_space(k, field()), k};
}

HyperbolicExtension HyperbolicInstance::relative_extension(const LambdaSpace& x, std::size_t k) const {
    if (rank(gram(x.form(0))) != x.dim()) throw Error("degenerate-base", "hyperbolic extensions need a nondegenerate base");
    return {x, orthogonal_sum({x, hyperbolic_space(k, field())}), k};
}

LinearEmbedding HyperbolicInstance::extension_inclusion(const HyperbolicExtension& r) const {
    return {r.base, r.space, Matrix::inclusion(field(), r.space.dim(), r.base.dim())};
}

LinearEmbedding HyperbolicInstance::embed_over_base(const LinearEmbedding& ext, const HyperbolicExtension& r) const {
    FieldRef f = field();
    const LambdaSpace& y = ext.target;
    const std::size_t n = r.base.dim();
    if (ext.matrix.cols() != n || ext.source.dim() != n) throw Error("dimension-mismatch", "extension does not start at the base");
    const std::size_t extra = y.dim() - n;
    if (extra > r.capacity)
        throw CapacityError("capacity-exceeded", "extension adds " + std::to_string(extra) + " dimensions, capacity is " +
                                                     std::to_string(r.capacity));
    const Matrix& b = ext.matrix;
    Matrix gy = gram(y.form(0));
    // Orthogonal complement of the base image: c - B G_X^-1 B^T G_Y c.
    Matrix c = complete_basis(b);
    Matrix correction(f, y.dim(), extra);
    if (n > 0) {
        auto gx_inv = inverse(gram(r.base.form(0)));
        if (!gx_inv) throw Error("degenerate-base", "base Gram matrix is singular");
        correction = b * (*gx_inv * (b.transpose() * gy * c));
    }
    Matrix perp = c - correction;
    auto w = witt_embed_quadratic(pullback_space(y, perp));
    Matrix image = Matrix::inclusion(f, r.space.dim(), n).hstack(w.matrix.padded_rows(r.space.dim(), n));
    auto basis_inv = inverse(b.hstack(perp));
    if (!basis_inv) throw Error("internal", "complement is not a complement");
    LinearEmbedding out{y, r.space, image * *basis_inv};
    certify(out);
    return out;
}

bool spans_within(const Matrix& a, const Matrix& b) { return rank(a.hstack(b)) == rank(a); }

}  // namespace tsf
