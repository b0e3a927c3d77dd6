#ifndef TSF_UNIVERSAL_HPP
#define TSF_UNIVERSAL_HPP

#include <vector>

#include "tsf/lambda_space.hpp"

namespace tsf {

// A space with one raw n-form and no projector constraint.
struct NFormSpace {
    FieldRef field = nullptr;
    std::size_t dim = 0;
    MultiForm form;
};

struct NFormEmbedding {
    NFormSpace source, target;
    Matrix matrix;
};

EmbeddingCheck is_embedding(const Matrix& f, const NFormSpace& src, const NFormSpace& dst);

// m blocks of n basis vectors v_{i,j} at index i*n + j, with
// omega = sum_i x_{i,1} (x) ... (x) x_{i,n}.
NFormSpace universal_nform(int n, std::size_t m, FieldRef f);

// Embedding of W into universal_nform(n, d^n + d), d = dim W. Rows of the
// matrix are the pulled-back coordinates x_{i,j}; block i < d^n carries the
// i-th coefficient, digits of i in base d (most significant first) choosing
// the basis vector of each slot. The last d blocks make the map injective.
NFormEmbedding embed_into_universal_nform(const NFormSpace& w);

// Number of blocks d^n + d, checked against overflow.
std::size_t universal_block_count(int n, std::size_t d);

// d-universal lambda-bar space: block i is the projected universal
// n_i-form with d^{n_i} + d blocks, at coordinate offset offsets[i].
struct UniversalLambdaSpace {
    LambdaSpace space;
    std::size_t bound = 0;
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> blocks;
};

UniversalLambdaSpace universal_lambda_space(const PartitionTuple& tuple, std::size_t d, FieldRef f);
LinearEmbedding embed_finite_space(const LambdaSpace& w, const UniversalLambdaSpace& u);

// Coefficients pushed through the canonical embedding of fields.
LambdaSpace base_change(const LambdaSpace& v, FieldRef to);
MultiForm base_change(const MultiForm& w, FieldRef to);
Matrix base_change(const Matrix& m, FieldRef to);

}  // namespace tsf

#endif
