#include "tsf/relative.hpp"

#include <algorithm>
#include <sstream>

#include "tsf/error.hpp"
#include "tsf/universal.hpp"
#include "tsf/young.hpp"

namespace tsf {

int free_slots(const Pattern& p) { return static_cast<int>(std::count(p.begin(), p.end(), kFree)); }

std::string pattern_to_string(const Pattern& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < p.size(); ++k) {
        os << (k ? "," : "");
        if (p[k] == kFree)
            os << "*";
        else
            os << p[k] + 1;
    }
    os << ")";
    return os.str();
}

PinnedBase PinnedBase::make(const LambdaSpace& v, const Matrix& pins) {
    if (pins.rows() != v.dim()) throw Error("dimension-mismatch", "pins live in the ambient space");
    if (rank(pins) != pins.cols()) throw Error("dependent-pins", "pins are linearly dependent");
    return make(v, pins, complete_basis(pins));
}

PinnedBase PinnedBase::make(const LambdaSpace& v, const Matrix& pins, const Matrix& complement) {
    if (pins.rows() != v.dim() || complement.rows() != v.dim()) throw Error("dimension-mismatch", "pinned base");
    Matrix b = pins.hstack(complement);
    if (b.cols() != v.dim() || rank(b) != v.dim()) throw Error("not-a-basis", "pins and complement must form a basis");
    return {v, pins, complement};
}

bool BlockStructure::operator==(const BlockStructure& o) const {
    return field == o.field && base_dim == o.base_dim && free_dim == o.free_dim && tuple == o.tuple &&
           residuals == o.residuals;
}

std::vector<Pattern> all_patterns(int arity, std::size_t n) {
    std::vector<Pattern> out;
    Pattern p(static_cast<std::size_t>(arity), kFree);
    for (;;) {
        out.push_back(p);
        int k = arity - 1;
        while (k >= 0 && p[k] == static_cast<int>(n) - 1) p[k--] = kFree;
        if (k < 0) break;
        ++p[k];
    }
    return out;
}

namespace {

// Nonzero residuals of w, split by the pattern of pinned slots (index < n).
// keep(p) filters the patterns of interest.
template <class Keep>
std::map<Pattern, MultiForm> extract_residuals(const MultiForm& w, std::size_t n, Keep&& keep) {
    const int s = w.arity();
    const std::size_t free_dim = w.dim() - n;
    std::map<Pattern, FormBuilder> acc;
    Pattern p(static_cast<std::size_t>(s));
    Index rest;
    for (auto& [key, v] : w.entries()) {
        Index idx = w.index(key);
        rest.clear();
        for (int k = 0; k < s; ++k) {
            if (idx[k] < n) {
                p[k] = static_cast<int>(idx[k]);
            } else {
                p[k] = kFree;
                rest.push_back(idx[k] - n);
            }
        }
        if (!keep(p)) continue;
        auto it = acc.find(p);
        if (it == acc.end()) it = acc.emplace(p, FormBuilder(w.field(), free_slots(p), free_dim)).first;
        it->second.add(rest, v);
    }
    std::map<Pattern, MultiForm> out;
    for (auto& [pat, b] : acc) {
        MultiForm r = b.finish();
        if (!r.is_zero()) out.emplace(pat, std::move(r));
    }
    return out;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

// Canonical patterns with at least one free slot: free count descending,
// then pin multisets in lexicographic order.
std::vector<Pattern> canonical_patterns(int arity, std::size_t n) {
    std::vector<Pattern> out;
    for (int b = arity; b >= 1; --b) {
        const int filled = arity - b;
        Pattern p(static_cast<std::size_t>(arity), kFree);
        if (filled > 0 && n == 0) continue;
        for (int k = 0; k < filled; ++k) p[k] = 0;
        for (;;) {
            out.push_back(p);
            int k = filled - 1;
            while (k >= 0 && p[k] == static_cast<int>(n) - 1) --k;
            if (k < 0) break;
            ++p[k];
            for (int j = k + 1; j < filled; ++j) p[j] = p[k];
        }
    }
    return out;
}

}  // namespace

BlockStructure shift_coordinates(const LambdaSpace& v, std::size_t n) {
    if (n > v.dim()) throw Error("dimension-mismatch", "more pins than dimensions");
    BlockStructure b{v.field(), n, v.dim() - n, v.tuple(), {}};
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto found = extract_residuals(v.form(i), n, [](const Pattern&) { return true; });
        std::map<Pattern, MultiForm> all;
        for (auto& p : all_patterns(v.shape(i).size(), n)) {
            auto it = found.find(p);
            all.emplace(p, it != found.end() ? it->second : MultiForm(v.field(), free_slots(p), b.free_dim));
        }
        b.residuals.push_back(std::move(all));
    }
    return b;
}

BlockStructure shift_structure(const PinnedBase& p) {
    const Matrix basis = p.basis();
    return shift_coordinates(pullback_space(p.ambient, basis), p.pins.cols());
}

LambdaSpace unshift(const LambdaSpace& u, const BlockStructure& b) {
    if (u.field() != b.field) throw Error("mixed-fields", "unshift across fields");
    if (u.dim() != b.base_dim || u.tuple() != b.tuple) throw Error("dimension-mismatch", "block structure does not sit over this base");
    const std::size_t n = b.base_dim, total = b.base_dim + b.free_dim;
    std::vector<MultiForm> forms;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const int s = u.shape(i).size();
        FormBuilder out(u.field(), s, total);
        for (auto& [pat, r] : b.residuals[i]) {
            if (static_cast<int>(pat.size()) != s || r.arity() != free_slots(pat) || r.dim() != b.free_dim)
                throw Error("dimension-mismatch", "residual " + pattern_to_string(pat));
            if (r.arity() == 0) {
                Index idx(pat.begin(), pat.end());
                if (r.get_key(0) != u.form(i).get(idx))
                    throw Error("pinned-block-mismatch", "entry " + std::to_string(i + 1) + " pattern " + pattern_to_string(pat));
                continue;
            }
            for (auto& [key, v] : r.entries()) {
                Index rest = r.index(key), idx(static_cast<std::size_t>(s));
                std::size_t j = 0;
                for (int k = 0; k < s; ++k)
                    idx[k] = pat[k] == kFree ? n + rest[j++] : static_cast<std::size_t>(pat[k]);
                out.add(idx, v);
            }
        }
        for (auto& [key, v] : u.form(i).entries()) out.add(u.form(i).index(key), v);
        forms.push_back(out.finish());
    }
    return LambdaSpace(u.field(), total, u.tuple(), std::move(forms));
}

bool orbit_reducible(const Partition& lambda) { return lambda.rows() <= 1 || lambda[0] == 1; }

bool is_canonical_pattern(const Pattern& p) {
    std::size_t k = 0;
    while (k < p.size() && p[k] != kFree) {
        if (k > 0 && p[k] < p[k - 1]) return false;
        ++k;
    }
    for (; k < p.size(); ++k)
        if (p[k] != kFree) return false;
    return true;
}

std::uint64_t pattern_orbit_size(const Pattern& p) {
    std::map<int, int> mult;
    for (int x : p) ++mult[x];
    std::uint64_t r = factorial(static_cast<int>(p.size()));
    for (auto& [pin, m] : mult) r /= factorial(m);
    return r;
}

RelativeExtension relative_universal_extension(const LambdaSpace& x, std::size_t e) {
    FieldRef f = x.field();
    const std::size_t n = x.dim();
    RelativeExtension rel;
    rel.base = x;
    rel.capacity = e;
    rel.reduced = true;
    for (std::size_t i = 0; i < x.size(); ++i) rel.reduced = rel.reduced && orbit_reducible(x.shape(i));
    std::size_t offset = n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int s = x.shape(i).size();
        require_characteristic(f, s);
        std::vector<Pattern> pats;
        if (rel.reduced) {
            pats = canonical_patterns(s, n);
        } else {
            for (auto& p : all_patterns(s, n))
                if (free_slots(p) > 0) pats.push_back(p);
        }
        for (auto& p : pats) {
            PatternBlock blk;
            blk.entry = i;
            blk.pattern = p;
            blk.arity = free_slots(p);
            blk.blocks = universal_block_count(blk.arity, e);
            blk.offset = offset;
            blk.weight = rel.reduced ? pattern_orbit_size(p) : 1;
            offset += blk.blocks * static_cast<std::size_t>(blk.arity);
            rel.blocks.push_back(std::move(blk));
        }
    }
    if (x.size() == 0) offset = n + e;  // bare spaces: a free complement of dimension e
    const std::size_t total = offset;
    std::vector<MultiForm> raw;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int s = x.shape(i).size();
        FormBuilder b(f, s, total);
        for (auto& [key, v] : x.form(i).entries()) b.add(x.form(i).index(key), v);
        Index idx(static_cast<std::size_t>(s));
        for (auto& blk : rel.blocks) {
            if (blk.entry != i) continue;
            for (std::size_t t = 0; t < blk.blocks; ++t) {
                std::size_t j = 0;
                for (int k = 0; k < s; ++k)
                    idx[k] = blk.pattern[k] == kFree ? blk.offset + t * blk.arity + j++
                                                     : static_cast<std::size_t>(blk.pattern[k]);
                b.add(idx, f->one());
            }
        }
        raw.push_back(b.finish());
    }
    rel.space = LambdaSpace(f, total, x.tuple(), std::move(raw), LambdaSpace::Input::raw);
    rel.inclusion = Matrix::inclusion(f, total, n);
    certify(rel.embedding());
    return rel;
}

LinearEmbedding embed_over_base(const LinearEmbedding& ext, const RelativeExtension& rel) {
    const LambdaSpace& x = rel.base;
    const LambdaSpace& y = ext.target;
    FieldRef f = x.field();
    const std::size_t n = x.dim();
    if (ext.matrix.cols() != n || ext.source.dim() != n || ext.source.tuple() != x.tuple())
        throw Error("dimension-mismatch", "extension does not start at the base");
    if (y.dim() < n) throw Error("dimension-mismatch", "extension smaller than its base");
    const std::size_t extra = y.dim() - n;
    if (extra > rel.capacity)
        throw CapacityError("capacity-exceeded", "extension adds " + std::to_string(extra) +
                                                     " dimensions, capacity is " + std::to_string(rel.capacity));
    const bool prefix = ext.matrix.is_prefix_inclusion();
    Matrix change;
    LambdaSpace yc = y;
    if (!prefix) {
        change = ext.matrix.hstack(complete_basis(ext.matrix));
        yc = pullback_space(y, change);
    }
    const std::size_t total = rel.space.dim();
    std::vector<SparseColumn> cols(y.dim());
    for (std::size_t c = 0; c < n; ++c) cols[c].emplace_back(c, f->one());
    if (x.size() == 0) {
        for (std::size_t j = 0; j < extra; ++j) cols[n + j].emplace_back(n + j, f->one());
    } else {
        std::vector<std::map<Pattern, MultiForm>> res;
        for (std::size_t i = 0; i < x.size(); ++i)
            res.push_back(extract_residuals(yc.form(i), n, [&](const Pattern& p) {
                return free_slots(p) > 0 && (!rel.reduced || is_canonical_pattern(p));
            }));
        bool forced_done = false;
        for (auto& blk : rel.blocks) {
            auto it = res[blk.entry].find(blk.pattern);
            const bool forced = !forced_done && blk.entry == 0 && blk.arity == static_cast<int>(blk.pattern.size());
            if (it == res[blk.entry].end() && !forced) continue;
            if (forced) forced_done = true;
            MultiForm target = it != res[blk.entry].end() ? it->second.scaled(f->from_int(static_cast<std::int64_t>(blk.weight)))
                                                         : MultiForm(f, blk.arity, extra);
            auto emb = embed_into_universal_nform({f, extra, target});
            for (std::size_t j = 0; j < extra; ++j)
                for (auto& [r, v] : emb.matrix.column(j)) cols[n + j].emplace_back(blk.offset + r, v);
        }
        for (auto& c : cols) std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
    }
    Matrix beta = Matrix::from_columns(f, total, std::move(cols));
    if (!prefix) {
        auto inv = inverse(change);
        if (!inv) throw Error("internal", "basis change is singular");
        beta = beta * *inv;
    }
    LinearEmbedding out{y, rel.space, beta};
    if (beta * ext.matrix != rel.inclusion) throw Error("certificate-failure", "embedding does not fix the base");
    certify(out);
    return out;
}

Amalgam amalgamate(const LinearEmbedding& f, const LinearEmbedding& g) {
    const LambdaSpace &x = f.source, &y = f.target, &z = g.target;
    FieldRef k = x.field();
    if (g.source.dim() != x.dim() || g.source.tuple() != x.tuple() || y.tuple() != z.tuple() || y.field() != z.field())
        throw Error("tuple-mismatch", "amalgamation legs do not share a source");
    const std::size_t nx = x.dim(), ny = y.dim(), nz = z.dim(), nw = ny + nz - nx;
    Matrix bz = g.matrix.is_prefix_inclusion() ? Matrix::identity(k, nz) : g.matrix.hstack(complete_basis(g.matrix));
    LambdaSpace zc = g.matrix.is_prefix_inclusion() ? z : pullback_space(z, bz);
    Matrix r = left_inverse(f.matrix);  // nx x ny
    // psi: W -> Z coordinates (x part, z' part) = (r y, z').
    Matrix psi = r.hstack(Matrix(k, nx, nz - nx))
                     .vstack(Matrix(k, nz - nx, ny).hstack(Matrix::identity(k, nz - nx)));
    Matrix proj_y = Matrix::identity(k, ny).hstack(Matrix(k, ny, nz - nx));
    std::vector<MultiForm> forms;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const MultiForm& wz = zc.form(i);
        std::vector<MultiForm::Entry> mixed;
        for (auto& [key, v] : wz.entries()) {
            Index idx = wz.index(key);
            if (std::any_of(idx.begin(), idx.end(), [&](std::size_t c) { return c >= nx; })) mixed.emplace_back(key, v);
        }
        MultiForm zm = MultiForm::from_entries(k, wz.arity(), nz, std::move(mixed));
        forms.push_back(pullback(y.form(i), proj_y) + pullback(zm, psi));
    }
    LambdaSpace w(k, nw, y.tuple(), std::move(forms));
    Amalgam a{w, {y, w, Matrix::inclusion(k, nw, ny)}, {z, w, Matrix()}};
    Matrix zleg = f.matrix.vstack(Matrix(k, nz - nx, nx))
                      .hstack(Matrix(k, ny, nz - nx).vstack(Matrix::identity(k, nz - nx)));
    if (g.matrix.is_prefix_inclusion()) {
        a.z.matrix = zleg;
    } else {
        auto inv = inverse(bz);
        if (!inv) throw Error("internal", "basis change is singular");
        a.z.matrix = zleg * *inv;
    }
    certify(a.y);
    certify(a.z);
    if (a.y.matrix * f.matrix != a.z.matrix * g.matrix) throw Error("certificate-failure", "amalgamation square does not commute");
    return a;
}

BlocksDimension blocks_dimension_check(const PartitionTuple& tuple, std::size_t n, std::size_t free_dim) {
    FieldRef q = Field::rationals();
    BlocksDimension out;
    const std::size_t d = n + free_dim;
    for (auto& l : tuple) {
        auto basis = projector_image_basis(l, d, q);
        // Restriction to the pinned block: coordinates with every index below n.
        std::vector<SparseColumn> cols;
        std::size_t rows = 1;
        for (int k = 0; k < l.size(); ++k) rows *= n;
        for (auto& w : basis) {
            SparseColumn c;
            for (auto& [key, v] : w.entries()) {
                Index idx = w.index(key);
                if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i < n; })) {
                    std::size_t row = 0;
                    for (auto i : idx) row = row * n + i;
                    c.emplace_back(row, v);
                }
            }
            std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
            cols.push_back(std::move(c));
        }
        std::size_t r = basis.empty() ? 0 : rank(Matrix::from_columns(q, rows, std::move(cols)));
        out.concrete += basis.size() - r;
    }
    for (auto& [nu, m] : pure_part(shift_tuple(tuple, static_cast<int>(n))))
        out.predicted += m * schur_dim(nu, static_cast<int>(free_dim));
    return out;
}

}  // namespace tsf
