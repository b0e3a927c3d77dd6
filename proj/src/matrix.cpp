#include "tsf/matrix.hpp"

#include <algorithm>
#include <map>

#include "tsf/error.hpp"

namespace tsf {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error("dimension-mismatch", what);
}

// Merge-adds b * s into a.
SparseColumn axpy(const SparseColumn& a, const SparseColumn& b, const Scalar& s) {
    SparseColumn out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Scalar v = b[j].second * s;
            if (!v.is_zero()) out.emplace_back(b[j].first, v);
            ++j;
        } else {
            Scalar v = a[i].second + b[j].second * s;
            if (!v.is_zero()) out.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

using Dense = std::vector<std::vector<Scalar>>;

struct Echelon {
    Dense m;                           // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column per nonzero row
};

// Gauss-Jordan with first-nonzero pivoting.
Echelon rref(Dense m, std::size_t cols) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Scalar inv = m[row][c].inverse();
        for (std::size_t k = c; k < cols; ++k) m[row][k] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Scalar f = m[r][c];
            for (std::size_t k = c; k < cols; ++k)
                if (!m[row][k].is_zero()) m[r][k] -= f * m[row][k];
        }
        e.pivots.push_back(c);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

}  // namespace

Matrix::Matrix(FieldRef f, std::size_t rows, std::size_t cols) : f_(f), rows_(rows), cols_(cols) {}

Matrix Matrix::identity(FieldRef f, std::size_t n) { return inclusion(f, n, n, 0); }

Matrix Matrix::inclusion(FieldRef f, std::size_t rows, std::size_t cols, std::size_t offset) {
    require(offset + cols <= rows, "inclusion does not fit");
    Matrix m(f, rows, cols);
    for (std::size_t c = 0; c < cols; ++c) m.cols_[c].emplace_back(offset + c, f->one());
    return m;
}

Matrix Matrix::from_rows(FieldRef f, const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == cols, "ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            if (!rows[r][c].is_zero()) m.cols_[c].emplace_back(r, rows[r][c]);
    }
    return m;
}

Matrix Matrix::from_int_rows(FieldRef f, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (auto& r : rows) {
        s.emplace_back();
        for (long v : r) s.back().push_back(f->from_int(v));
    }
    return from_rows(f, s);
}

Matrix Matrix::from_columns(FieldRef f, std::size_t rows, std::vector<SparseColumn> cols) {
    Matrix m(f, rows, 0);
    m.cols_ = std::move(cols);
    for (auto& c : m.cols_) {
        std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
        SparseColumn clean;
        for (auto& e : c) {
            require(e.first < rows, "row index out of range");
            if (!clean.empty() && clean.back().first == e.first) {
                clean.back().second += e.second;
                if (clean.back().second.is_zero()) clean.pop_back();
            } else if (!e.second.is_zero()) {
                clean.push_back(e);
            }
        }
        c = std::move(clean);
    }
    return m;
}

Matrix Matrix::from_dense_columns(FieldRef f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        require(cols[c].size() == rows, "column length");
        for (std::size_t r = 0; r < rows; ++r)
            if (!cols[c][r].is_zero()) m.cols_[c].emplace_back(r, cols[c][r]);
    }
    return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
    require(r < rows_ && c < cols_.size(), "index out of range");
    const auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](auto& e, std::size_t x) { return e.first < x; });
    if (it != col.end() && it->first == r) return it->second;
    return f_->zero();
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
    require(r < rows_ && c < cols_.size(), "index out of range");
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](auto& e, std::size_t x) { return e.first < x; });
    if (it != col.end() && it->first == r) {
        if (v.is_zero())
            col.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        col.insert(it, {r, v});
    }
}

void Matrix::set_column(std::size_t c, SparseColumn col) {
    auto m = from_columns(f_, rows_, {std::move(col)});
    cols_.at(c) = std::move(m.cols_[0]);
}

Vector Matrix::dense_column(std::size_t c) const {
    Vector v(rows_, f_->zero());
    for (auto& [r, x] : cols_.at(c)) v[r] = x;
    return v;
}

std::size_t Matrix::nonzeros() const {
    std::size_t n = 0;
    for (auto& c : cols_) n += c.size();
    return n;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require(cols() == o.rows_, "product shape");
    Matrix out(f_, rows_, o.cols());
    for (std::size_t c = 0; c < o.cols(); ++c) {
        std::map<std::size_t, Scalar> acc;
        for (auto& [k, v] : o.cols_[c])
            for (auto& [r, a] : cols_[k]) {
                auto it = acc.find(r);
                if (it == acc.end())
                    acc.emplace(r, a * v);
                else
                    it->second += a * v;
            }
        for (auto& [r, v] : acc)
            if (!v.is_zero()) out.cols_[c].emplace_back(r, v);
    }
    return out;
}

Vector Matrix::operator*(const Vector& v) const {
    require(v.size() == cols(), "vector length");
    Vector out(rows_, f_->zero());
    for (std::size_t c = 0; c < cols(); ++c) {
        if (v[c].is_zero()) continue;
        for (auto& [r, a] : cols_[c]) out[r] += a * v[c];
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols() == o.cols(), "sum shape");
    Matrix out(f_, rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) out.cols_[c] = axpy(cols_[c], o.cols_[c], f_->one());
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require(rows_ == o.rows_ && cols() == o.cols(), "difference shape");
    Matrix out(f_, rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) out.cols_[c] = axpy(cols_[c], o.cols_[c], -f_->one());
    return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix out(f_, rows_, cols());
    if (s.is_zero()) return out;
    for (std::size_t c = 0; c < cols(); ++c)
        for (auto& [r, v] : cols_[c]) out.cols_[c].emplace_back(r, v * s);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(f_, cols(), rows_);
    for (std::size_t c = 0; c < cols(); ++c)
        for (auto& [r, v] : cols_[c]) out.cols_[r].emplace_back(c, v);
    return out;
}

Matrix Matrix::hstack(const Matrix& o) const {
    require(rows_ == o.rows_, "hstack rows");
    Matrix out = *this;
    out.cols_.insert(out.cols_.end(), o.cols_.begin(), o.cols_.end());
    return out;
}

Matrix Matrix::vstack(const Matrix& o) const {
    require(cols() == o.cols(), "vstack cols");
    Matrix out(f_ ? f_ : o.f_, rows_ + o.rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        out.cols_[c] = cols_[c];
        for (auto& [r, v] : o.cols_[c]) out.cols_[c].emplace_back(r + rows_, v);
    }
    return out;
}

Matrix Matrix::select_columns(std::size_t first, std::size_t count) const {
    require(first + count <= cols(), "column range");
    Matrix out(f_, rows_, 0);
    out.cols_.assign(cols_.begin() + first, cols_.begin() + first + count);
    return out;
}

Matrix Matrix::select_rows(std::size_t first, std::size_t count) const {
    require(first + count <= rows_, "row range");
    Matrix out(f_, count, cols());
    for (std::size_t c = 0; c < cols(); ++c)
        for (auto& [r, v] : cols_[c])
            if (r >= first && r < first + count) out.cols_[c].emplace_back(r - first, v);
    return out;
}

Matrix Matrix::padded_rows(std::size_t total_rows, std::size_t row_offset) const {
    require(row_offset + rows_ <= total_rows, "padding");
    Matrix out(f_, total_rows, cols());
    for (std::size_t c = 0; c < cols(); ++c)
        for (auto& [r, v] : cols_[c]) out.cols_[c].emplace_back(r + row_offset, v);
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && (f_ == o.f_ || nonzeros() == 0);
}

std::vector<std::vector<Scalar>> Matrix::to_dense() const {
    std::vector<std::vector<Scalar>> d(rows_, std::vector<Scalar>(cols(), f_->zero()));
    for (std::size_t c = 0; c < cols(); ++c)
        for (auto& [r, v] : cols_[c]) d[r][c] = v;
    return d;
}

std::vector<std::vector<std::pair<std::size_t, Scalar>>> Matrix::row_lists() const {
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> out(rows_);
    for (std::size_t c = 0; c < cols(); ++c)
        for (auto& [r, v] : cols_[c]) out[r].emplace_back(c, v);
    return out;
}

bool Matrix::is_prefix_inclusion() const {
    if (cols() > rows_) return false;
    for (std::size_t c = 0; c < cols(); ++c)
        if (cols_[c].size() != 1 || cols_[c][0].first != c || !cols_[c][0].second.is_one()) return false;
    return true;
}

// ---------------------------------------------------------------- linear algebra

std::optional<Vector> solve_linear(const Matrix& a, const Vector& b) {
    require(a.rows() == b.size(), "solve_linear: rows of A vs length of b");
    FieldRef f = a.field();
    const std::size_t n = a.cols();
    Dense aug = a.to_dense();
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
    Echelon e = rref(std::move(aug), n + 1);
    Vector x(n, f->zero());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == n) return std::nullopt;
        x[e.pivots[i]] = e.m[i][n];
    }
    return x;
}

std::vector<Vector> kernel_basis(const Matrix& a) {
    FieldRef f = a.field();
    const std::size_t n = a.cols();
    Echelon e = rref(a.to_dense(), n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vector v(n, f->zero());
        v[free] = f->one();
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Matrix& a) {
    // Column-by-column sparse reduction; each basis column has its pivot as first entry.
    std::map<std::size_t, SparseColumn> basis;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        SparseColumn col = a.column(c);
        while (!col.empty()) {
            auto it = basis.find(col.front().first);
            if (it == basis.end()) {
                Scalar inv = col.front().second.inverse();
                for (auto& e : col) e.second *= inv;
                std::size_t key = col.front().first;
                basis.emplace(key, std::move(col));
                break;
            }
            col = axpy(col, it->second, -col.front().second);
        }
    }
    return basis.size();
}

std::optional<Matrix> inverse(const Matrix& a) {
    require(a.rows() == a.cols(), "inverse of non-square matrix");
    FieldRef f = a.field();
    const std::size_t n = a.rows();
    if (a.is_prefix_inclusion()) return a;
    Dense aug = a.to_dense();
    for (std::size_t r = 0; r < n; ++r) {
        aug[r].resize(2 * n, f->zero());
        aug[r][n + r] = f->one();
    }
    Echelon e = rref(std::move(aug), 2 * n);
    if (e.pivots.size() < n || e.pivots[n - 1] >= n) return std::nullopt;
    Matrix inv(f, n, n);
    std::vector<SparseColumn> cols(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (!e.m[r][n + c].is_zero()) cols[c].emplace_back(r, e.m[r][n + c]);
    return Matrix::from_columns(f, n, std::move(cols));
}

std::vector<std::size_t> pivot_rows(const Matrix& a) {
    // Pivot columns of A^T are independent rows of A.
    std::vector<std::size_t> rows;
    std::map<std::size_t, SparseColumn> basis;  // keyed by column index of A
    auto lists = a.row_lists();
    for (std::size_t r = 0; r < a.rows() && rows.size() < a.cols(); ++r) {
        SparseColumn row(lists[r].begin(), lists[r].end());
        while (!row.empty()) {
            auto it = basis.find(row.front().first);
            if (it == basis.end()) {
                Scalar inv = row.front().second.inverse();
                for (auto& e : row) e.second *= inv;
                std::size_t key = row.front().first;
                basis.emplace(key, std::move(row));
                rows.push_back(r);
                break;
            }
            row = axpy(row, it->second, -row.front().second);
        }
    }
    if (rows.size() != a.cols()) throw Error("not-injective", "matrix lacks full column rank");
    return rows;
}

Matrix left_inverse(const Matrix& a) {
    auto rows = pivot_rows(a);
    const std::size_t k = a.cols();
    FieldRef f = a.field();
    std::vector<std::vector<Scalar>> sub(k, std::vector<Scalar>(k, f->zero()));
    auto lists = a.row_lists();
    for (std::size_t i = 0; i < k; ++i)
        for (auto& [c, v] : lists[rows[i]]) sub[i][c] = v;
    auto inv = inverse(Matrix::from_rows(f, sub, k));
    if (!inv) throw Error("internal", "pivot submatrix singular");
    // r = inv * (row selector)
    std::vector<SparseColumn> cols(a.rows());
    for (std::size_t i = 0; i < k; ++i) cols[rows[i]] = inv->column(i);
    return Matrix::from_columns(f, k, std::move(cols));
}

Matrix complete_basis(const Matrix& a) {
    FieldRef f = a.field();
    std::map<std::size_t, SparseColumn> basis;
    auto insert = [&](SparseColumn col) {
        while (!col.empty()) {
            auto it = basis.find(col.front().first);
            if (it == basis.end()) {
                Scalar inv = col.front().second.inverse();
                for (auto& e : col) e.second *= inv;
                std::size_t key = col.front().first;
                basis.emplace(key, std::move(col));
                return true;
            }
            col = axpy(col, it->second, -col.front().second);
        }
        return false;
    };
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!insert(a.column(c))) throw Error("not-injective", "columns are dependent");
    // Reduced basis columns have pairwise distinct leading rows; the missing
    // leading rows index standard vectors completing the span.
    std::vector<SparseColumn> extra;
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (!basis.count(r)) extra.push_back({{r, f->one()}});
    return Matrix::from_columns(f, a.rows(), std::move(extra));
}

// ---------------------------------------------------------------- GL enumeration

GLEnumerator::GLEnumerator(std::size_t d, FieldRef f) : d_(d), f_(f), count_(1) {
    if (!f->is_finite()) throw Error("infinite-field", "enumerate_gl needs a finite field");
    const auto q = static_cast<std::uint64_t>(f->order());
    for (std::size_t i = 0; i < d * d; ++i) {
        if (count_ > (~std::uint64_t{0}) / q) throw Error("too-large", "GL enumeration overflows");
        count_ *= q;
    }
}

std::optional<Matrix> GLEnumerator::at(std::uint64_t code) const {
    const auto q = static_cast<std::uint64_t>(f_->order());
    std::vector<std::vector<Scalar>> rows(d_, std::vector<Scalar>(d_));
    // Most significant digit is entry (0,0).
    for (std::size_t k = d_ * d_; k-- > 0;) {
        rows[k / d_][k % d_] = f_->element(static_cast<std::int64_t>(code % q));
        code /= q;
    }
    Matrix m = Matrix::from_rows(f_, rows, d_);
    if (rank(m) != d_) return std::nullopt;
    return m;
}

void GLEnumerator::for_each(const std::function<bool(const Matrix&)>& fn, std::uint64_t begin,
                            std::uint64_t end) const {
    end = std::min(end, count_);
    for (std::uint64_t c = begin; c < end; ++c) {
        auto m = at(c);
        if (m && !fn(*m)) return;
    }
}

std::uint64_t GLEnumerator::expected_size(std::size_t d, std::int64_t q) {
    std::uint64_t qd = 1, out = 1, qi = 1;
    for (std::size_t i = 0; i < d; ++i) qd *= static_cast<std::uint64_t>(q);
    for (std::size_t i = 0; i < d; ++i) {
        out *= qd - qi;
        qi *= static_cast<std::uint64_t>(q);
    }
    return out;
}

std::vector<Matrix> enumerate_gl(std::size_t d, FieldRef f) {
    GLEnumerator e(d, f);
    std::vector<Matrix> out;
    e.for_each([&](const Matrix& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

}  // namespace tsf
