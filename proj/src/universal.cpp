#include "tsf/universal.hpp"

#include "tsf/error.hpp"

namespace tsf {

EmbeddingCheck is_embedding(const Matrix& f, const NFormSpace& src, const NFormSpace& dst) {
    if (src.field != dst.field || f.field() != src.field) throw Error("mixed-fields", "embedding across fields");
    if (f.rows() != dst.dim || f.cols() != src.dim) {
        EmbeddingCheck c;
        c.reason = "dimension-mismatch";
        return c;
    }
    return check_forms_embedding(f, {&src.form}, {&dst.form});
}

NFormSpace universal_nform(int n, std::size_t m, FieldRef f) {
    if (n < 1) throw Error("invalid-arity", "universal n-form needs n >= 1");
    const std::size_t dim = m * static_cast<std::size_t>(n);
    FormBuilder b(f, n, dim);
    Index idx(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) idx[j] = i * n + j;
        b.add(idx, f->one());
    }
    return {f, dim, b.finish()};
}

std::size_t universal_block_count(int n, std::size_t d) {
    std::size_t p = 1;
    for (int k = 0; k < n; ++k) {
        if (d != 0 && p > (std::size_t{1} << 40) / d) throw Error("too-large", "universal block count overflows");
        p *= d;
    }
    return p + d;
}

NFormEmbedding embed_into_universal_nform(const NFormSpace& w) {
    const int n = w.form.arity();
    const std::size_t d = w.dim;
    FieldRef f = w.field;
    if (w.form.dim() != d || w.form.field() != f) throw Error("dimension-mismatch", "form does not match its space");
    const std::size_t m = universal_block_count(n, d);
    NFormSpace target = universal_nform(n, m, f);
    std::vector<SparseColumn> cols(d);
    if (n == 1) {
        // Column a is e_a + (c_a - 1) e_d; omega is the sum of all coordinates.
        for (std::size_t a = 0; a < d; ++a) {
            Scalar shift = w.form.get({a}) - f->one();
            cols[a].emplace_back(a, f->one());
            if (!shift.is_zero()) cols[a].emplace_back(d, shift);
        }
    } else {
        const std::size_t cells = m - d;  // d^n
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t row0 = i * n;
            if (i < cells) {
                Scalar c = w.form.get_key(i);  // key order is the digit expansion
                Index a = w.form.index(i);
                if (!c.is_zero()) cols[a[0]].emplace_back(row0, c);
                for (int j = 1; j < n; ++j) cols[a[j]].emplace_back(row0 + j, f->one());
            } else {
                for (int j = 1; j < n; ++j) cols[i - cells].emplace_back(row0 + j, f->one());
            }
        }
    }
    NFormEmbedding e{w, target, Matrix::from_columns(f, target.dim, std::move(cols))};
    if (auto c = is_embedding(e.matrix, e.source, e.target); !c)
        throw Error("certificate-failure", "universal n-form embedding: " + c.describe());
    return e;
}

UniversalLambdaSpace universal_lambda_space(const PartitionTuple& tuple, std::size_t d, FieldRef f) {
    if (!is_pure(tuple)) throw Error("impure-tuple", tuple_to_string(tuple));
    UniversalLambdaSpace u;
    u.bound = d;
    if (tuple.empty()) {
        u.space = LambdaSpace::zero(f, d, tuple);
        return u;
    }
    std::vector<LambdaSpace> parts;
    std::size_t offset = 0;
    for (auto& l : tuple) {
        std::size_t m = universal_block_count(l.size(), d);
        NFormSpace raw = universal_nform(l.size(), m, f);
        parts.emplace_back(f, raw.dim, PartitionTuple{l}, std::vector<MultiForm>{raw.form}, LambdaSpace::Input::raw);
        u.offsets.push_back(offset);
        u.blocks.push_back(m);
        offset += raw.dim;
    }
    u.space = direct_sum(parts);
    return u;
}

LinearEmbedding embed_finite_space(const LambdaSpace& w, const UniversalLambdaSpace& u) {
    if (w.dim() > u.bound) throw Error("dimension-exceeds-bound", "space dimension " + std::to_string(w.dim()) +
                                                                     " exceeds " + std::to_string(u.bound));
    if (w.tuple() != u.space.tuple()) throw Error("tuple-mismatch", "space and universal tuples differ");
    if (w.field() != u.space.field()) throw Error("mixed-fields", "space and universal fields differ");
    LinearEmbedding e{w, u.space, Matrix()};
    if (w.size() == 0) {
        e.matrix = Matrix::inclusion(w.field(), u.space.dim(), w.dim());
    } else {
        Matrix stacked(w.field(), 0, w.dim());
        for (std::size_t i = 0; i < w.size(); ++i) {
            // The canonical form is its own only nonzero tableau component.
            NFormSpace raw{w.field(), w.dim(), w.form(i)};
            auto part = embed_into_universal_nform(raw);
            std::size_t block_dim = u.blocks[i] * static_cast<std::size_t>(w.shape(i).size());
            stacked = stacked.vstack(part.matrix.padded_rows(block_dim, 0));
        }
        e.matrix = stacked;
    }
    certify(e);
    return e;
}

MultiForm base_change(const MultiForm& w, FieldRef to) {
    if (!to->embeds_from(w.field())) throw Error("characteristic-mismatch", "no embedding " + w.field()->name() + " -> " + to->name());
    std::vector<MultiForm::Entry> entries;
    for (auto& [k, v] : w.entries()) entries.emplace_back(k, to->embed(v));
    return MultiForm::from_entries(to, w.arity(), w.dim(), std::move(entries));
}

Matrix base_change(const Matrix& m, FieldRef to) {
    if (!to->embeds_from(m.field())) throw Error("characteristic-mismatch", "no embedding " + m.field()->name() + " -> " + to->name());
    std::vector<SparseColumn> cols;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        SparseColumn col;
        for (auto& [r, v] : m.column(c)) col.emplace_back(r, to->embed(v));
        cols.push_back(std::move(col));
    }
    return Matrix::from_columns(to, m.rows(), std::move(cols));
}

LambdaSpace base_change(const LambdaSpace& v, FieldRef to) {
    std::vector<MultiForm> forms;
    for (std::size_t i = 0; i < v.size(); ++i) forms.push_back(base_change(v.form(i), to));
    // Slot permutations act by the same integer coefficients over both fields.
    return LambdaSpace(to, v.dim(), v.tuple(), std::move(forms), LambdaSpace::Input::trusted);
}

}  // namespace tsf
