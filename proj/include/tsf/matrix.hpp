#ifndef TSF_MATRIX_HPP
#define TSF_MATRIX_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tsf/field.hpp"

namespace tsf {

// Sorted by row index, no explicit zeros.
using SparseColumn = std::vector<std::pair<std::size_t, Scalar>>;
using Vector = std::vector<Scalar>;

// rows x cols matrix over one field. Storage is column-sparse: absent entries
// are zero. Embedding matrices into tower levels are mostly zero, and every
// dense algorithm copies into a work buffer first.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldRef f, std::size_t rows, std::size_t cols);

    static Matrix identity(FieldRef f, std::size_t n);
    static Matrix from_rows(FieldRef f, const std::vector<std::vector<Scalar>>& rows, std::size_t cols = 0);
    static Matrix from_int_rows(FieldRef f, const std::vector<std::vector<long>>& rows);
    static Matrix from_columns(FieldRef f, std::size_t rows, std::vector<SparseColumn> cols);
    static Matrix from_dense_columns(FieldRef f, std::size_t rows, const std::vector<Vector>& cols);
    // Columns e_{offset}, e_{offset+1}, ... of length rows.
    static Matrix inclusion(FieldRef f, std::size_t rows, std::size_t cols, std::size_t offset = 0);

    FieldRef field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }

    Scalar at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& v);
    const SparseColumn& column(std::size_t c) const { return cols_.at(c); }
    void set_column(std::size_t c, SparseColumn col);
    Vector dense_column(std::size_t c) const;
    std::size_t nonzeros() const;

    Matrix operator*(const Matrix& o) const;
    Vector operator*(const Vector& v) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;
    Matrix transpose() const;
    Matrix hstack(const Matrix& o) const;
    Matrix vstack(const Matrix& o) const;
    Matrix select_columns(std::size_t first, std::size_t count) const;
    Matrix select_rows(std::size_t first, std::size_t count) const;
    // Embeds this matrix as rows [row_offset, row_offset + rows()) of a taller matrix.
    Matrix padded_rows(std::size_t total_rows, std::size_t row_offset) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    std::vector<std::vector<Scalar>> to_dense() const;
    // Row-wise view: for each row, the (column, value) pairs.
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> row_lists() const;
    // True when the matrix is [I; 0] (a prefix inclusion).
    bool is_prefix_inclusion() const;

private:
    FieldRef f_ = nullptr;
    std::size_t rows_ = 0;
    std::vector<SparseColumn> cols_;
};

// ---------------------------------------------------------------- linear algebra

std::optional<Vector> solve_linear(const Matrix& a, const Vector& b);
// Linearly independent columns spanning {x : A x = 0}.
std::vector<Vector> kernel_basis(const Matrix& a);
std::size_t rank(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);
// The pivot rows of a full-column-rank matrix: row indices R with A[R,:] invertible.
std::vector<std::size_t> pivot_rows(const Matrix& a);
// r with r * A = I; A must have full column rank.
Matrix left_inverse(const Matrix& a);
// Standard basis columns C such that [A | C] is invertible; A must have full column rank.
Matrix complete_basis(const Matrix& a);

// Invertible d x d matrices over a finite field, indexed by the base-q code of
// their entries (row-major). Codes that are singular are skipped, so disjoint
// code ranges give disjoint shards of GL_d.
class GLEnumerator {
public:
    GLEnumerator(std::size_t d, FieldRef f);
    std::uint64_t code_count() const { return count_; }
    std::optional<Matrix> at(std::uint64_t code) const;
    // Visits invertible matrices with code in [begin, end); stops when fn returns false.
    void for_each(const std::function<bool(const Matrix&)>& fn, std::uint64_t begin = 0,
                  std::uint64_t end = ~std::uint64_t{0}) const;
    static std::uint64_t expected_size(std::size_t d, std::int64_t q);

private:
    std::size_t d_;
    FieldRef f_;
    std::uint64_t count_;
};

std::vector<Matrix> enumerate_gl(std::size_t d, FieldRef f);

}  // namespace tsf

#endif
