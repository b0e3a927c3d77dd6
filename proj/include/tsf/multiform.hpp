#ifndef TSF_MULTIFORM_HPP
#define TSF_MULTIFORM_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsf/field.hpp"
#include "tsf/matrix.hpp"

namespace tsf {

using Index = std::vector<std::size_t>;
// Images of 0..n-1; sigma[k] is sigma(k).
using Permutation = std::vector<int>;

// An n-linear form on k^d, stored by its nonzero coefficients.
//
// Keys flatten (i_1, ..., i_n) with i_1 most significant, so key order is
// lexicographic index order. Entries are sorted by key and never zero.
class MultiForm {
public:
    using Entry = std::pair<std::uint64_t, Scalar>;

    MultiForm() = default;
    MultiForm(FieldRef f, int arity, std::size_t dim);

    FieldRef field() const { return f_; }
    int arity() const { return n_; }
    std::size_t dim() const { return d_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    std::uint64_t key(const Index& idx) const;
    Index index(std::uint64_t key) const;
    Scalar get(const Index& idx) const;
    Scalar get_key(std::uint64_t key) const;

    MultiForm operator+(const MultiForm& o) const;
    MultiForm operator-(const MultiForm& o) const;
    MultiForm scaled(const Scalar& s) const;
    // (omega . sigma)(v_1..v_n) = omega(v_sigma(1), ..., v_sigma(n)).
    MultiForm permuted(const Permutation& sigma) const;
    bool operator==(const MultiForm& o) const;
    bool operator!=(const MultiForm& o) const { return !(*this == o); }
    // First index where the two forms differ, if any.
    std::optional<Index> first_difference(const MultiForm& o) const;

    static MultiForm from_entries(FieldRef f, int arity, std::size_t dim, std::vector<Entry> entries);

private:
    friend class FormBuilder;
    FieldRef f_ = nullptr;
    int n_ = 0;
    std::size_t d_ = 0;
    std::vector<Entry> entries_;
};

// Accumulates coefficients by index, then freezes into a MultiForm.
class FormBuilder {
public:
    FormBuilder(FieldRef f, int arity, std::size_t dim);
    void add(const Index& idx, const Scalar& v);
    void add_key(std::uint64_t key, const Scalar& v);
    std::uint64_t key(const Index& idx) const { return proto_.key(idx); }
    MultiForm finish();

private:
    MultiForm proto_;
    std::unordered_map<std::uint64_t, Scalar> acc_;
};

// (f^* omega)(v_1..v_n) = omega(f v_1, ..., f v_n); f is dim(omega) x d'.
MultiForm pullback(const MultiForm& omega, const Matrix& f);
Scalar evaluate(const MultiForm& omega, const std::vector<Vector>& vectors);

// Every index tuple of [d]^n in lexicographic order.
template <class Fn>
void for_each_index(int n, std::size_t d, Fn&& fn) {
    Index idx(static_cast<std::size_t>(n), 0);
    if (n > 0 && d == 0) return;
    for (;;) {
        fn(static_cast<const Index&>(idx));
        int k = n - 1;
        while (k >= 0 && ++idx[k] == d) idx[k--] = 0;
        if (k < 0) return;
    }
}

}  // namespace tsf

#endif
