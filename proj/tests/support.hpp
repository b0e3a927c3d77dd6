// Shared random generators for the test binaries.
#ifndef TSF_TEST_SUPPORT_HPP
#define TSF_TEST_SUPPORT_HPP

#include <algorithm>
#include <random>

#include "tsf/field.hpp"
#include "tsf/matrix.hpp"
#include "tsf/lambda_space.hpp"
#include "tsf/multiform.hpp"
#include "tsf/young.hpp"

namespace tsf::testing {

inline Scalar random_scalar(FieldRef f, std::mt19937_64& rng, int spread = 4) {
    if (f->is_finite()) return f->element(std::uniform_int_distribution<std::int64_t>(0, f->order() - 1)(rng));
    std::uniform_int_distribution<int> num(-spread, spread), den(1, 3);
    return f->from_rational(mpq_class(num(rng), den(rng)));
}

inline Matrix random_matrix(FieldRef f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::vector<std::vector<Scalar>> rows(r);
    for (auto& row : rows)
        for (std::size_t j = 0; j < c; ++j) row.push_back(random_scalar(f, rng));
    return Matrix::from_rows(f, rows, c);
}

inline Vector random_vector(FieldRef f, std::size_t n, std::mt19937_64& rng) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(f, rng));
    return v;
}

inline MultiForm random_form(FieldRef f, int n, std::size_t d, std::mt19937_64& rng) {
    FormBuilder b(f, n, d);
    for_each_index(n, d, [&](const Index& idx) { b.add(idx, random_scalar(f, rng)); });
    return b.finish();
}

inline Matrix random_invertible(FieldRef f, std::size_t d, std::mt19937_64& rng) {
    for (;;) {
        auto m = random_matrix(f, d, d, rng);
        if (rank(m) == d) return m;
    }
}

// Every linear combination of basis over a finite field, codes in base q
// with the first basis element least significant.
template <class Fn>
void for_each_combination(const std::vector<MultiForm>& basis, const MultiForm& zero, Fn&& fn) {
    FieldRef f = zero.field();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) total *= static_cast<std::uint64_t>(f->order());
    for (std::uint64_t code = 0; code < total; ++code) {
        MultiForm w = zero;
        std::uint64_t c = code;
        for (auto& b : basis) {
            auto digit = static_cast<std::int64_t>(c % f->order());
            c /= f->order();
            if (digit) w = w + b.scaled(f->element(digit));
        }
        fn(static_cast<const MultiForm&>(w));
    }
}

inline MultiForm random_combination(const std::vector<MultiForm>& basis, const MultiForm& zero, std::mt19937_64& rng) {
    MultiForm w = zero;
    for (auto& b : basis) w = w + b.scaled(random_scalar(zero.field(), rng));
    return w;
}

inline Vector basis_vector(FieldRef f, std::size_t d, std::size_t i) {
    Vector v(d, f->zero());
    v[i] = f->one();
    return v;
}

// Projector-fixed forms on k^{base+1} vanishing on the first `base`
// coordinates: the images of unit tensors that touch the last coordinate.
inline std::vector<MultiForm> fiber_basis(const Partition& lambda, std::size_t base, FieldRef f) {
    const int n = lambda.size();
    const std::size_t d = base + 1;
    std::vector<MultiForm> basis;
    std::vector<SparseColumn> cols;
    std::uint64_t cells = 1;
    for (int k = 0; k < n; ++k) cells *= d;
    for_each_index(n, d, [&](const Index& idx) {
        if (std::find(idx.begin(), idx.end(), base) == idx.end()) return;
        FormBuilder b(f, n, d);
        b.add(idx, f->one());
        MultiForm img = young_projector_apply(b.finish(), lambda);
        if (img.is_zero()) return;
        SparseColumn col;
        for (auto& [k, v] : img.entries()) col.emplace_back(static_cast<std::size_t>(k), v);
        cols.push_back(col);
        if (rank(Matrix::from_columns(f, cells, cols)) == cols.size())
            basis.push_back(std::move(img));
        else
            cols.pop_back();
    });
    return basis;
}

// X's forms on k^{dim X + 1}, constant along the last coordinate.
inline std::vector<MultiForm> padded_forms(const LambdaSpace& x) {
    Matrix proj = Matrix::identity(x.field(), x.dim()).hstack(Matrix(x.field(), x.dim(), 1));
    std::vector<MultiForm> out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(pullback(x.form(i), proj));
    return out;
}

// Every one-dimensional extension Y of X over a finite field, with X the
// first dim X coordinates of Y.
template <class Fn>
void for_each_one_dim_extension(const LambdaSpace& x, Fn&& fn) {
    FieldRef f = x.field();
    auto base = padded_forms(x);
    std::vector<std::vector<MultiForm>> fibers;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fibers.push_back(fiber_basis(x.shape(i), x.dim(), f));
        for (std::size_t j = 0; j < fibers.back().size(); ++j) total *= static_cast<std::uint64_t>(f->order());
    }
    for (std::uint64_t code = 0; code < total; ++code) {
        auto forms = base;
        std::uint64_t c = code;
        for (std::size_t i = 0; i < fibers.size(); ++i)
            for (auto& b : fibers[i]) {
                auto digit = static_cast<std::int64_t>(c % f->order());
                c /= f->order();
                if (digit) forms[i] = forms[i] + b.scaled(f->element(digit));
            }
        fn(LambdaSpace(f, x.dim() + 1, x.tuple(), forms, LambdaSpace::Input::trusted));
    }
}

inline LambdaSpace random_space(FieldRef f, const PartitionTuple& t, std::size_t d, std::mt19937_64& rng) {
    std::vector<MultiForm> forms;
    for (auto& l : t) forms.push_back(random_form(f, l.size(), d, rng));
    return LambdaSpace(f, d, t, std::move(forms), LambdaSpace::Input::raw);
}

// A random extension of X by `extra` dimensions, X first.
inline LambdaSpace random_extension(const LambdaSpace& x, std::size_t extra, std::mt19937_64& rng) {
    FieldRef f = x.field();
    const std::size_t d = x.dim() + extra;
    Matrix proj = Matrix::identity(f, x.dim()).hstack(Matrix(f, x.dim(), extra));
    std::vector<MultiForm> forms;
    for (std::size_t i = 0; i < x.size(); ++i) {
        FormBuilder b(f, x.shape(i).size(), d);
        for_each_index(x.shape(i).size(), d, [&](const Index& idx) {
            if (std::any_of(idx.begin(), idx.end(), [&](std::size_t c) { return c >= x.dim(); }))
                b.add(idx, random_scalar(f, rng));
        });
        forms.push_back(pullback(x.form(i), proj) + young_projector_apply(b.finish(), x.shape(i)));
    }
    return LambdaSpace(f, d, x.tuple(), forms);
}

}  // namespace tsf::testing

#endif
