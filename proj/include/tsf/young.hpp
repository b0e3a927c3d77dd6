#ifndef TSF_YOUNG_HPP
#define TSF_YOUNG_HPP

#include <vector>

#include "tsf/field.hpp"
#include "tsf/multiform.hpp"
#include "tsf/partition.hpp"

namespace tsf {

// S_n with permutations listed in lexicographic order of their image vectors.
class SymmetricGroup {
public:
    static const SymmetricGroup& of(int n);

    int degree() const { return n_; }
    std::size_t order() const { return perms_.size(); }
    const Permutation& perm(std::size_t i) const { return perms_[i]; }
    std::size_t index(const Permutation& p) const;
    std::size_t identity() const { return 0; }
    // Index of outer o inner.
    std::size_t compose(std::size_t outer, std::size_t inner) const;
    int sign(std::size_t i) const { return signs_[i]; }

private:
    explicit SymmetricGroup(int n);
    int n_;
    std::vector<Permutation> perms_;
    std::vector<int> signs_;
};

// An element of k[S_n], one coefficient per permutation index.
//
// Forms are acted on from the right: omega . (x * y) = (omega . x) . y.
// Since (omega . s) . t = omega . (t o s), the product is
// x * y = sum x_s y_t (t o s).
struct GroupAlgebraElement {
    FieldRef field = nullptr;
    int n = 0;
    std::vector<Scalar> coeff;

    static GroupAlgebraElement zero(FieldRef f, int n);
    static GroupAlgebraElement unit(FieldRef f, int n);
    static GroupAlgebraElement basis(FieldRef f, int n, std::size_t perm_index, const Scalar& c);

    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement scaled(const Scalar& s) const;
    bool operator==(const GroupAlgebraElement& o) const { return n == o.n && coeff == o.coeff; }
    std::size_t support() const;
};

// Throws unless the characteristic is 0 or exceeds n.
void require_characteristic(FieldRef f, int n);

MultiForm act(const MultiForm& omega, const GroupAlgebraElement& x);

// (f^lambda / n!) a_T b_T, row symmetrizer first. T is standard of any shape.
GroupAlgebraElement young_element(const StandardTableau& t, FieldRef f);
// Idempotent for the canonical tableau; built once per (lambda, field) and
// verified to square to itself before first use.
const GroupAlgebraElement& young_idempotent(const Partition& lambda, FieldRef f);
MultiForm young_projector_apply(const MultiForm& omega, const Partition& lambda);

// Jucys-Murphy element L_k = sum_{i<k} (i k), slots numbered from 1.
GroupAlgebraElement jucys_murphy(FieldRef f, int n, int k);

// Seminormal idempotents E_T, one per standard tableau of size n: primitive,
// pairwise orthogonal, summing to the unit. Cached per (n, field).
struct TableauIdempotent {
    StandardTableau tableau;
    GroupAlgebraElement element;
};
const std::vector<TableauIdempotent>& seminormal_idempotents(int n, FieldRef f);

// A basis of the projector's image on n-forms over k^d: the coordinate
// space of lambda-structures on a d-dimensional space.
std::vector<MultiForm> projector_image_basis(const Partition& lambda, std::size_t d, FieldRef f);

struct FormComponent {
    StandardTableau tableau;
    MultiForm form;  // omega . E_T
};
// One component per standard tableau, in (shape, tableau) order.
std::vector<FormComponent> decompose_form(const MultiForm& omega);
MultiForm reassemble(const std::vector<FormComponent>& parts);

}  // namespace tsf

#endif
