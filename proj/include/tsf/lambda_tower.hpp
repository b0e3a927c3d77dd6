#ifndef TSF_LAMBDA_TOWER_HPP
#define TSF_LAMBDA_TOWER_HPP

#include "tsf/fraisse.hpp"
#include "tsf/relative.hpp"

namespace tsf {

// Finite lambda-spaces of one tuple over one field, with certified linear
// embeddings. Relative universality comes from relative_universal_extension.
class LambdaInstance {
public:
    using Object = LambdaSpace;
    using Embedding = LinearEmbedding;
    using Extension = RelativeExtension;

    LambdaInstance(FieldRef f, PartitionTuple tuple);

    FieldRef field() const { return f_; }
    const PartitionTuple& tuple() const { return tuple_; }

    std::size_t size(const LambdaSpace& x) const { return x.dim(); }
    const LambdaSpace& source(const LinearEmbedding& e) const { return e.source; }
    const LambdaSpace& target(const LinearEmbedding& e) const { return e.target; }
    LinearEmbedding compose(const LinearEmbedding& outer, const LinearEmbedding& inner) const;
    bool equal(const LinearEmbedding& a, const LinearEmbedding& b) const;
    LinearEmbedding identity(const LambdaSpace& x) const { return identity_embedding(x); }
    LambdaSpace initial() const { return LambdaSpace::zero(f_, 0, tuple_); }
    LinearEmbedding from_initial(const LambdaSpace& x) const;

    RelativeExtension universal(std::size_t k) const { return relative_universal_extension(initial(), k); }
    RelativeExtension relative_extension(const LambdaSpace& x, std::size_t k) const {
        return relative_universal_extension(x, k);
    }
    const LambdaSpace& extension_object(const RelativeExtension& r) const { return r.space; }
    LinearEmbedding extension_inclusion(const RelativeExtension& r) const { return r.embedding(); }
    std::size_t capacity(const RelativeExtension& r) const { return r.capacity; }
    LinearEmbedding embed_over_base(const LinearEmbedding& ext, const RelativeExtension& r) const {
        return tsf::embed_over_base(ext, r);
    }

    fraisse::Square<LambdaSpace, LinearEmbedding> amalgamate(const LinearEmbedding& f, const LinearEmbedding& g) const;
    std::pair<LinearEmbedding, LinearEmbedding> split(const LinearEmbedding& iota, std::size_t k) const;
    std::optional<std::pair<LinearEmbedding, LinearEmbedding>> grow(const LinearEmbedding& s, std::size_t k) const;
    bool certify(const LinearEmbedding& e) const;

private:
    FieldRef f_;
    PartitionTuple tuple_;
};

using LambdaTower = fraisse::Tower<LambdaInstance>;

// The subspace spanned by the columns of m, with the pulled-back structure,
// and its inclusion into v.
LinearEmbedding subspace(const LambdaSpace& v, const Matrix& m);

}  // namespace tsf

#endif
