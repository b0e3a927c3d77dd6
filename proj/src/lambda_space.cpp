#include "tsf/lambda_space.hpp"

#include <sstream>

#include "tsf/error.hpp"
#include "tsf/young.hpp"

namespace tsf {

LambdaSpace::LambdaSpace(FieldRef f, std::size_t dim, PartitionTuple tuple, std::vector<MultiForm> forms, Input input)
    : f_(f), d_(dim) {
    if (tuple.size() != forms.size()) throw Error("dimension-mismatch", "one form per tuple entry");
    for (std::size_t i = 0; i < tuple.size(); ++i)
        forms_.push_back({tuple[i], std::make_shared<const MultiForm>(std::move(forms[i]))});
    validate(input);
}

LambdaSpace::LambdaSpace(FieldRef f, std::size_t dim, std::vector<LambdaForm> forms, Input input)
    : f_(f), d_(dim), forms_(std::move(forms)) {
    validate(input);
}

void LambdaSpace::validate(Input input) {
    if (!f_) throw Error("invalid-space", "missing field");
    for (auto& lf : forms_) {
        if (!lf.canonical) throw Error("invalid-space", "missing form");
        const MultiForm& w = *lf.canonical;
        if (w.field() != f_) throw Error("mixed-fields", "form over a different field");
        if (w.arity() != lf.shape.size()) throw Error("dimension-mismatch", "form arity differs from |lambda|");
        if (w.dim() != d_) throw Error("dimension-mismatch", "form dimension differs from space dimension");
        require_characteristic(f_, lf.shape.size());
        if (lf.shape.empty() || input == Input::trusted) continue;
        MultiForm p = young_projector_apply(w, lf.shape);
        if (input == Input::raw) {
            lf.canonical = std::make_shared<const MultiForm>(std::move(p));
        } else if (p != w) {
            throw Error("not-canonical", "form is not fixed by the Young projector of " + lf.shape.to_string());
        }
    }
}

LambdaSpace LambdaSpace::zero(FieldRef f, std::size_t dim, const PartitionTuple& tuple) {
    std::vector<MultiForm> forms;
    for (auto& l : tuple) forms.emplace_back(f, l.size(), dim);
    return LambdaSpace(f, dim, tuple, std::move(forms), Input::trusted);
}

PartitionTuple LambdaSpace::tuple() const {
    PartitionTuple t;
    for (auto& lf : forms_) t.push_back(lf.shape);
    return t;
}

bool LambdaSpace::operator==(const LambdaSpace& o) const {
    if (f_ != o.f_ || d_ != o.d_ || forms_.size() != o.forms_.size()) return false;
    for (std::size_t i = 0; i < forms_.size(); ++i)
        if (forms_[i].shape != o.forms_[i].shape || *forms_[i].canonical != *o.forms_[i].canonical) return false;
    return true;
}

std::string EmbeddingCheck::describe() const {
    if (ok) return "ok";
    std::ostringstream os;
    os << reason;
    if (form) os << " form " << (*form + 1);
    if (entry) {
        os << " at (";
        for (std::size_t k = 0; k < entry->size(); ++k) os << (k ? "," : "") << (*entry)[k] + 1;
        os << ")";
    }
    return os.str();
}

EmbeddingCheck check_forms_embedding(const Matrix& f, const std::vector<const MultiForm*>& src,
                                     const std::vector<const MultiForm*>& dst) {
    EmbeddingCheck c;
    if (src.size() != dst.size()) {
        c.reason = "dimension-mismatch";
        return c;
    }
    for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i]->arity() != dst[i]->arity() || f.rows() != dst[i]->dim() || f.cols() != src[i]->dim()) {
            c.reason = "dimension-mismatch";
            c.form = i;
            return c;
        }
    if (!f.is_prefix_inclusion() && rank(f) != f.cols()) {
        c.reason = "not-injective";
        return c;
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
        MultiForm p = pullback(*dst[i], f);
        if (auto diff = p.first_difference(*src[i])) {
            c.reason = "form-mismatch";
            c.form = i;
            c.entry = *diff;
            return c;
        }
    }
    c.ok = true;
    return c;
}

EmbeddingCheck is_embedding(const Matrix& f, const LambdaSpace& src, const LambdaSpace& dst) {
    if (src.field() != dst.field() || f.field() != src.field()) throw Error("mixed-fields", "embedding across fields");
    if (src.tuple() != dst.tuple()) throw Error("tuple-mismatch", "source and target tuples differ");
    if (f.rows() != dst.dim() || f.cols() != src.dim()) {
        EmbeddingCheck c;
        c.reason = "dimension-mismatch";
        return c;
    }
    std::vector<const MultiForm*> s, d;
    for (std::size_t i = 0; i < src.size(); ++i) {
        s.push_back(&src.form(i));
        d.push_back(&dst.form(i));
    }
    return check_forms_embedding(f, s, d);
}

void certify(const LinearEmbedding& e) {
    auto c = is_embedding(e.matrix, e.source, e.target);
    if (!c) throw Error("certificate-failure", c.describe());
}

LambdaSpace orthogonal_sum(const std::vector<LambdaSpace>& spaces) {
    if (spaces.empty()) throw Error("invalid-space", "orthogonal sum of no spaces needs a field");
    FieldRef f = spaces[0].field();
    const PartitionTuple tuple = spaces[0].tuple();
    std::size_t total = 0;
    for (auto& s : spaces) {
        if (s.field() != f) throw Error("mixed-fields", "orthogonal sum over different fields");
        if (s.tuple() != tuple) throw Error("tuple-mismatch", "orthogonal sum of different tuples");
        total += s.dim();
    }
    std::vector<LambdaForm> forms;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        FormBuilder b(f, tuple[i].size(), total);
        std::size_t offset = 0;
        for (auto& s : spaces) {
            const MultiForm& w = s.form(i);
            for (auto& [key, v] : w.entries()) {
                Index idx = w.index(key);
                for (auto& x : idx) x += offset;
                b.add(idx, v);
            }
            offset += s.dim();
        }
        forms.push_back({tuple[i], std::make_shared<const MultiForm>(b.finish())});
    }
    return LambdaSpace(f, total, std::move(forms), LambdaSpace::Input::trusted);
}

LambdaSpace direct_sum(const std::vector<LambdaSpace>& spaces) {
    if (spaces.empty()) throw Error("invalid-space", "direct sum of no spaces needs a field");
    FieldRef f = spaces[0].field();
    std::size_t total = 0;
    for (auto& s : spaces) {
        if (s.field() != f) throw Error("mixed-fields", "direct sum over different fields");
        total += s.dim();
    }
    std::vector<LambdaForm> forms;
    std::size_t offset = 0;
    for (auto& s : spaces) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const MultiForm& w = s.form(i);
            FormBuilder b(f, w.arity(), total);
            for (auto& [key, v] : w.entries()) {
                Index idx = w.index(key);
                for (auto& x : idx) x += offset;
                b.add(idx, v);
            }
            forms.push_back({s.shape(i), std::make_shared<const MultiForm>(b.finish())});
        }
        offset += s.dim();
    }
    return LambdaSpace(f, total, std::move(forms), LambdaSpace::Input::trusted);
}

LambdaSpace restrict_tuple(const LambdaSpace& v, const std::vector<std::size_t>& indices) {
    std::vector<LambdaForm> forms;
    for (auto i : indices) {
        if (i >= v.size()) throw Error("index-out-of-range", "tuple index " + std::to_string(i));
        forms.push_back(v.lambda_form(i));
    }
    return LambdaSpace(v.field(), v.dim(), std::move(forms), LambdaSpace::Input::trusted);
}

LambdaSpace pullback_space(const LambdaSpace& v, const Matrix& f) {
    if (f.rows() != v.dim()) throw Error("dimension-mismatch", "pullback matrix rows");
    std::vector<LambdaForm> forms;
    // Slot permutations commute with pullback, so fixed forms stay fixed.
    for (std::size_t i = 0; i < v.size(); ++i)
        forms.push_back({v.shape(i), std::make_shared<const MultiForm>(pullback(v.form(i), f))});
    return LambdaSpace(v.field(), f.cols(), std::move(forms), LambdaSpace::Input::trusted);
}

LinearEmbedding compose(const LinearEmbedding& outer, const LinearEmbedding& inner) {
    if (inner.matrix.rows() != outer.matrix.cols()) throw Error("dimension-mismatch", "composition");
    return {inner.source, outer.target, outer.matrix * inner.matrix};
}

LinearEmbedding identity_embedding(const LambdaSpace& v) { return {v, v, Matrix::identity(v.field(), v.dim())}; }

std::optional<Matrix> iso_brute_force(const LambdaSpace& a, const LambdaSpace& b) {
    if (!a.field()->is_finite()) throw Error("infinite-field", "brute force needs a finite field");
    if (a.dim() > 3) throw Error("too-large", "brute force limited to dimension 3");
    if (a.dim() != b.dim() || a.tuple() != b.tuple() || a.field() != b.field())
        throw Error("dimension-mismatch", "spaces are not comparable");
    std::optional<Matrix> found;
    GLEnumerator(a.dim(), a.field()).for_each([&](const Matrix& g) {
        if (is_embedding(g, a, b)) {
            found = g;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace tsf
