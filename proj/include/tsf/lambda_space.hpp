#ifndef TSF_LAMBDA_SPACE_HPP
#define TSF_LAMBDA_SPACE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsf/matrix.hpp"
#include "tsf/multiform.hpp"
#include "tsf/partition.hpp"

namespace tsf {

// A lambda-form, stored as its canonical n-form: the fixed point of the
// Young projector of the canonical tableau.
struct LambdaForm {
    Partition shape;
    std::shared_ptr<const MultiForm> canonical;
};

// A finite-dimensional space with one lambda-form per tuple entry.
// Copies share form storage.
class LambdaSpace {
public:
    enum class Input {
        canonical,  // verify that every form is projector-fixed
        raw,        // project every form first
        trusted,    // fixed by construction; no check
    };

    LambdaSpace() = default;
    LambdaSpace(FieldRef f, std::size_t dim, PartitionTuple tuple, std::vector<MultiForm> forms,
                Input input = Input::canonical);
    LambdaSpace(FieldRef f, std::size_t dim, std::vector<LambdaForm> forms, Input input = Input::canonical);
    // All forms zero.
    static LambdaSpace zero(FieldRef f, std::size_t dim, const PartitionTuple& tuple);

    FieldRef field() const { return f_; }
    std::size_t dim() const { return d_; }
    PartitionTuple tuple() const;
    std::size_t size() const { return forms_.size(); }
    const Partition& shape(std::size_t i) const { return forms_.at(i).shape; }
    const MultiForm& form(std::size_t i) const { return *forms_.at(i).canonical; }
    const LambdaForm& lambda_form(std::size_t i) const { return forms_.at(i); }

    bool operator==(const LambdaSpace& o) const;
    bool operator!=(const LambdaSpace& o) const { return !(*this == o); }

private:
    void validate(Input input);
    FieldRef f_ = nullptr;
    std::size_t d_ = 0;
    std::vector<LambdaForm> forms_;
};

struct LinearEmbedding {
    LambdaSpace source, target;
    Matrix matrix;  // target.dim() x source.dim()
};

// Outcome of an embedding check; on failure names the first violation.
struct EmbeddingCheck {
    bool ok = false;
    std::string reason;                // "", "not-injective", "dimension-mismatch", "form-mismatch"
    std::optional<std::size_t> form;   // tuple entry of the first violated form
    std::optional<Index> entry;        // first differing coefficient, 0-based
    explicit operator bool() const { return ok; }
    std::string describe() const;
};

// Injectivity plus pullback of dst[i] along f equal to src[i] for every i.
EmbeddingCheck check_forms_embedding(const Matrix& f, const std::vector<const MultiForm*>& src,
                                     const std::vector<const MultiForm*>& dst);
EmbeddingCheck is_embedding(const Matrix& f, const LambdaSpace& src, const LambdaSpace& dst);
// Throws unless e is a certified embedding.
void certify(const LinearEmbedding& e);

// Tuples concatenate: each summand keeps its own forms.
LambdaSpace direct_sum(const std::vector<LambdaSpace>& spaces);
// One tuple; block-diagonal forms.
LambdaSpace orthogonal_sum(const std::vector<LambdaSpace>& spaces);
LambdaSpace restrict_tuple(const LambdaSpace& v, const std::vector<std::size_t>& indices);
// The structure f* V on the source of f (f is V.dim() x d').
LambdaSpace pullback_space(const LambdaSpace& v, const Matrix& f);
// outer o inner.
LinearEmbedding compose(const LinearEmbedding& outer, const LinearEmbedding& inner);
LinearEmbedding identity_embedding(const LambdaSpace& v);

// First g in enumerate_gl order with g an isomorphism A -> B.
std::optional<Matrix> iso_brute_force(const LambdaSpace& a, const LambdaSpace& b);

}  // namespace tsf

#endif
