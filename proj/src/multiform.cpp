#include "tsf/multiform.hpp"

#include <algorithm>

#include "tsf/error.hpp"

namespace tsf {

namespace {

std::vector<std::uint64_t> powers(std::size_t d, int n) {
    std::vector<std::uint64_t> p(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 1; k <= n; ++k) {
        if (d > 1 && p[k - 1] > (~std::uint64_t{0}) / d) throw Error("too-large", "index space exceeds 64 bits");
        p[k] = p[k - 1] * d;
    }
    return p;
}

}  // namespace

MultiForm::MultiForm(FieldRef f, int arity, std::size_t dim) : f_(f), n_(arity), d_(dim) {
    if (arity < 0) throw Error("invalid-form", "negative arity");
    powers(dim, arity);
}

std::uint64_t MultiForm::key(const Index& idx) const {
    if (static_cast<int>(idx.size()) != n_) throw Error("dimension-mismatch", "index length differs from arity");
    std::uint64_t k = 0;
    for (auto i : idx) {
        if (i >= d_) throw Error("index-out-of-range", "form index exceeds dimension");
        k = k * d_ + i;
    }
    return k;
}

Index MultiForm::index(std::uint64_t key) const {
    Index idx(static_cast<std::size_t>(n_));
    for (int k = n_ - 1; k >= 0; --k) {
        idx[k] = static_cast<std::size_t>(key % d_);
        key /= d_;
    }
    return idx;
}

Scalar MultiForm::get_key(std::uint64_t key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& e, std::uint64_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == key) return it->second;
    return f_->zero();
}

Scalar MultiForm::get(const Index& idx) const { return get_key(key(idx)); }

MultiForm MultiForm::operator+(const MultiForm& o) const {
    if (o.n_ != n_ || o.d_ != d_) throw Error("dimension-mismatch", "sum of forms of different shape");
    MultiForm out(f_, n_, d_);
    std::size_t i = 0, j = 0;
    while (i < entries_.size() || j < o.entries_.size()) {
        if (j == o.entries_.size() || (i < entries_.size() && entries_[i].first < o.entries_[j].first)) {
            out.entries_.push_back(entries_[i++]);
        } else if (i == entries_.size() || o.entries_[j].first < entries_[i].first) {
            out.entries_.push_back(o.entries_[j++]);
        } else {
            Scalar v = entries_[i].second + o.entries_[j].second;
            if (!v.is_zero()) out.entries_.emplace_back(entries_[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

MultiForm MultiForm::operator-(const MultiForm& o) const { return *this + o.scaled(-o.f_->one()); }

MultiForm MultiForm::scaled(const Scalar& s) const {
    MultiForm out(f_, n_, d_);
    if (s.is_zero()) return out;
    out.entries_.reserve(entries_.size());
    for (auto& [k, v] : entries_) out.entries_.emplace_back(k, v * s);
    return out;
}

MultiForm MultiForm::permuted(const Permutation& sigma) const {
    if (static_cast<int>(sigma.size()) != n_) throw Error("dimension-mismatch", "permutation size");
    auto pw = powers(d_, n_);
    // Output index i has i_{sigma(k)} = j_k; weight of slot m is d^{n-1-m}.
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (auto& [key, v] : entries_) {
        std::uint64_t k = key, nk = 0;
        for (int slot = n_ - 1; slot >= 0; --slot) {
            std::uint64_t j = k % d_;
            k /= d_;
            nk += j * pw[n_ - 1 - sigma[slot]];
        }
        out.emplace_back(nk, v);
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    MultiForm r(f_, n_, d_);
    r.entries_ = std::move(out);
    return r;
}

bool MultiForm::operator==(const MultiForm& o) const {
    return n_ == o.n_ && d_ == o.d_ && entries_ == o.entries_;
}

std::optional<Index> MultiForm::first_difference(const MultiForm& o) const {
    if (n_ != o.n_ || d_ != o.d_) throw Error("dimension-mismatch", "comparing forms of different shape");
    std::size_t i = 0, j = 0;
    while (i < entries_.size() || j < o.entries_.size()) {
        if (j == o.entries_.size() || (i < entries_.size() && entries_[i].first < o.entries_[j].first))
            return index(entries_[i].first);
        if (i == entries_.size() || o.entries_[j].first < entries_[i].first) return index(o.entries_[j].first);
        if (entries_[i].second != o.entries_[j].second) return index(entries_[i].first);
        ++i;
        ++j;
    }
    return std::nullopt;
}

MultiForm MultiForm::from_entries(FieldRef f, int arity, std::size_t dim, std::vector<Entry> entries) {
    FormBuilder b(f, arity, dim);
    for (auto& [k, v] : entries) b.add_key(k, v);
    return b.finish();
}

FormBuilder::FormBuilder(FieldRef f, int arity, std::size_t dim) : proto_(f, arity, dim) {}

void FormBuilder::add(const Index& idx, const Scalar& v) { add_key(proto_.key(idx), v); }

void FormBuilder::add_key(std::uint64_t key, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = acc_.find(key);
    if (it == acc_.end())
        acc_.emplace(key, v);
    else
        it->second += v;
}

MultiForm FormBuilder::finish() {
    MultiForm out = proto_;
    out.entries_.reserve(acc_.size());
    for (auto& [k, v] : acc_)
        if (!v.is_zero()) out.entries_.emplace_back(k, std::move(v));
    acc_.clear();
    std::sort(out.entries_.begin(), out.entries_.end(),
              [](const MultiForm::Entry& a, const MultiForm::Entry& b) { return a.first < b.first; });
    return out;
}

MultiForm pullback(const MultiForm& omega, const Matrix& f) {
    if (f.rows() != omega.dim()) throw Error("dimension-mismatch", "pullback: matrix rows differ from form dimension");
    const int n = omega.arity();
    const std::size_t dp = f.cols();
    FormBuilder out(omega.field(), n, dp);
    if (n == 0) {
        for (auto& [k, v] : omega.entries()) out.add_key(0, v);
        return out.finish();
    }
    auto rows = f.row_lists();
    auto pw = powers(dp, n);
    std::vector<const std::vector<std::pair<std::size_t, Scalar>>*> lists(static_cast<std::size_t>(n));
    std::vector<std::size_t> pos(static_cast<std::size_t>(n));
    for (auto& [key, c] : omega.entries()) {
        Index idx = omega.index(key);
        bool empty = false;
        for (int k = 0; k < n; ++k) {
            lists[k] = &rows[idx[k]];
            if (lists[k]->empty()) empty = true;
        }
        if (empty) continue;
        std::fill(pos.begin(), pos.end(), 0);
        for (;;) {
            Scalar v = c;
            std::uint64_t nk = 0;
            for (int k = 0; k < n; ++k) {
                const auto& [col, x] = (*lists[k])[pos[k]];
                v *= x;
                nk += col * pw[n - 1 - k];
            }
            out.add_key(nk, v);
            int k = n - 1;
            while (k >= 0 && ++pos[k] == lists[k]->size()) pos[k--] = 0;
            if (k < 0) break;
        }
    }
    return out.finish();
}

Scalar evaluate(const MultiForm& omega, const std::vector<Vector>& vectors) {
    if (static_cast<int>(vectors.size()) != omega.arity()) throw Error("dimension-mismatch", "evaluate: wrong number of vectors");
    for (auto& v : vectors)
        if (v.size() != omega.dim()) throw Error("dimension-mismatch", "evaluate: vector length");
    Scalar total = omega.field()->zero();
    for (auto& [key, c] : omega.entries()) {
        Index idx = omega.index(key);
        Scalar t = c;
        for (std::size_t k = 0; k < idx.size() && !t.is_zero(); ++k) t *= vectors[k][idx[k]];
        total += t;
    }
    return total;
}

}  // namespace tsf
