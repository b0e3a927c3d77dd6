#include "tsf/lambda_tower.hpp"

#include "tsf/error.hpp"
#include "tsf/young.hpp"

namespace tsf {

LambdaInstance::LambdaInstance(FieldRef f, PartitionTuple tuple) : f_(f), tuple_(std::move(tuple)) {
    for (auto& l : tuple_) require_characteristic(f_, l.size());
}

LinearEmbedding LambdaInstance::compose(const LinearEmbedding& outer, const LinearEmbedding& inner) const {
    return tsf::compose(outer, inner);
}

bool LambdaInstance::equal(const LinearEmbedding& a, const LinearEmbedding& b) const {
    return a.source.dim() == b.source.dim() && a.target.dim() == b.target.dim() && a.matrix == b.matrix;
}

LinearEmbedding LambdaInstance::from_initial(const LambdaSpace& x) const {
    return {initial(), x, Matrix(f_, x.dim(), 0)};
}

fraisse::Square<LambdaSpace, LinearEmbedding> LambdaInstance::amalgamate(const LinearEmbedding& f,
                                                                         const LinearEmbedding& g) const {
    auto a = tsf::amalgamate(f, g);
    return {a.space, a.y, a.z};
}

LinearEmbedding subspace(const LambdaSpace& v, const Matrix& m) {
    if (rank(m) != m.cols()) throw Error("dependent-tuple", "spanning columns are dependent");
    return {pullback_space(v, m), v, m};
}

std::pair<LinearEmbedding, LinearEmbedding> LambdaInstance::split(const LinearEmbedding& iota, std::size_t k) const {
    const std::size_t nx = iota.source.dim();
    Matrix m = iota.matrix.hstack(complete_basis(iota.matrix).select_columns(0, k));
    auto tail = subspace(iota.target, m);
    LinearEmbedding head{iota.source, tail.source, Matrix::inclusion(f_, nx + k, nx)};
    return {head, tail};
}

std::optional<std::pair<LinearEmbedding, LinearEmbedding>> LambdaInstance::grow(const LinearEmbedding& s,
                                                                                std::size_t k) const {
    const std::size_t na = s.source.dim();
    if (na == s.target.dim()) return std::nullopt;
    Matrix c = complete_basis(s.matrix);
    Matrix m = s.matrix.hstack(c.select_columns(0, std::min(k, c.cols())));
    LinearEmbedding onto{pullback_space(s.target, m), s.target, m};
    LinearEmbedding step{s.source, onto.source, Matrix::inclusion(f_, m.cols(), na)};
    return std::make_pair(step, onto);
}

bool LambdaInstance::certify(const LinearEmbedding& e) const {
    return e.matrix.rows() == e.target.dim() && e.matrix.cols() == e.source.dim() &&
           is_embedding(e.matrix, e.source, e.target).ok;
}

}  // namespace tsf
