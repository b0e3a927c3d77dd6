#include "tsf/partition.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include <gmpxx.h>

#include "tsf/error.hpp"

namespace tsf {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw Error("invalid-partition", "parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw Error("invalid-partition", "parts must be weakly decreasing");
        size_ += parts_[i];
    }
}

bool Partition::contains(const Partition& mu) const {
    if (mu.rows() > rows()) return false;
    for (int i = 0; i < mu.rows(); ++i)
        if (mu.parts_[i] > parts_[i]) return false;
    return true;
}

Partition Partition::conjugate() const {
    std::vector<int> c;
    for (int j = 0; j < (*this)[0]; ++j) {
        int h = 0;
        while (h < rows() && parts_[h] > j) ++h;
        c.push_back(h);
    }
    return Partition(c);
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

Partition Partition::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw Error("malformed-partition", text);
    std::vector<int> parts;
    std::string body = s.substr(1, s.size() - 2);
    if (!body.empty()) {
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw Error("malformed-partition", text);
            parts.push_back(std::stoi(tok));
        }
    }
    return Partition(parts);
}

bool is_pure(const PartitionTuple& t) {
    for (auto& p : t)
        if (p.empty()) return false;
    return true;
}

std::string tuple_to_string(const PartitionTuple& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].to_string();
    return s + "]";
}

PartitionTuple parse_tuple(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw Error("malformed-tuple", text);
    PartitionTuple t;
    std::size_t i = 1;
    while (i + 1 < s.size()) {
        auto close = s.find(')', i);
        if (s[i] != '(' || close == std::string::npos) throw Error("malformed-tuple", text);
        t.push_back(Partition::parse(s.substr(i, close - i + 1)));
        i = close + 1;
        if (i + 1 < s.size()) {
            if (s[i] != ',') throw Error("malformed-tuple", text);
            ++i;
        }
    }
    return t;
}

int max_size(const PartitionTuple& t) {
    int m = 0;
    for (auto& p : t) m = std::max(m, p.size());
    return m;
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::sort(out.begin(), out.end());
    return out;
}

std::string StandardTableau::to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        os << (r ? "/" : "");
        for (std::size_t c = 0; c < rows[r].size(); ++c) os << (c ? " " : "") << rows[r][c];
    }
    return os.str();
}

std::vector<StandardTableau> standard_tableaux(const Partition& lambda) {
    // Place 1..n one at a time at an outer corner of the growing shape.
    std::vector<StandardTableau> out;
    const int n = lambda.size();
    std::vector<std::vector<int>> rows(lambda.rows());
    std::function<void(int)> rec = [&](int k) {
        if (k > n) {
            out.push_back({lambda, rows});
            return;
        }
        for (int r = 0; r < lambda.rows(); ++r) {
            int len = static_cast<int>(rows[r].size());
            if (len >= lambda[r]) continue;
            if (r > 0 && static_cast<int>(rows[r - 1].size()) <= len) continue;
            rows[r].push_back(k);
            rec(k + 1);
            rows[r].pop_back();
        }
    };
    rec(1);
    std::sort(out.begin(), out.end());
    return out;
}

StandardTableau canonical_tableau(const Partition& lambda) {
    if (lambda.empty()) throw Error("invalid-partition", "canonical tableau of the empty partition");
    StandardTableau t{lambda, {}};
    int k = 1;
    for (int r = 0; r < lambda.rows(); ++r) {
        t.rows.emplace_back();
        for (int c = 0; c < lambda[r]; ++c) t.rows.back().push_back(k++);
    }
    return t;
}

std::uint64_t schur_dim(const Partition& lambda, int n) {
    if (lambda.rows() > n) return 0;
    const Partition conj = lambda.conjugate();
    mpz_class num = 1, den = 1;
    for (int r = 0; r < lambda.rows(); ++r)
        for (int c = 0; c < lambda[r]; ++c) {
            num *= n + c - r;
            den *= (lambda[r] - c - 1) + (conj[c] - r - 1) + 1;
        }
    mpz_class q = num / den;
    return q.get_ui();
}

std::uint64_t lr_coefficient(const Partition& mu, const Partition& nu, const Partition& lambda) {
    if (mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu)) return 0;
    // Skew cells in reverse reading order: rows top to bottom, each right to left.
    std::vector<std::pair<int, int>> cells;
    for (int r = 0; r < lambda.rows(); ++r)
        for (int c = lambda[r] - 1; c >= mu[r]; --c) cells.emplace_back(r, c);
    std::vector<std::vector<int>> fill(lambda.rows());
    for (int r = 0; r < lambda.rows(); ++r) fill[r].assign(lambda[r], 0);
    std::vector<int> count(nu.rows() + 1, 0);
    std::uint64_t total = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == cells.size()) {
            ++total;
            return;
        }
        auto [r, c] = cells[k];
        int hi = nu.rows();
        if (c + 1 < lambda[r]) hi = std::min(hi, fill[r][c + 1]);  // rows weakly increase
        int lo = 1;
        if (r > 0 && c >= mu[r - 1]) lo = fill[r - 1][c] + 1;       // columns strictly increase
        for (int v = lo; v <= hi; ++v) {
            if (count[v] >= nu[v - 1]) continue;
            if (v > 1 && count[v] + 1 > count[v - 1]) continue;     // lattice word
            fill[r][c] = v;
            ++count[v];
            rec(k + 1);
            --count[v];
        }
        fill[r][c] = 0;
    };
    rec(0);
    return total;
}

std::map<Partition, std::uint64_t> shift_tuple(const PartitionTuple& t, int n) {
    std::map<Partition, std::uint64_t> mult;
    for (auto& lambda : t) {
        for (int k = 0; k <= lambda.size(); ++k)
            for (auto& nu : partitions_of(k)) {
                if (!lambda.contains(nu)) continue;
                std::uint64_t m = 0;
                for (auto& mu : partitions_of(lambda.size() - k)) {
                    std::uint64_t c = lr_coefficient(mu, nu, lambda);
                    if (c) m += c * schur_dim(mu, n);
                }
                if (m) mult[nu] += m;
            }
    }
    return mult;
}

std::map<Partition, std::uint64_t> pure_part(const std::map<Partition, std::uint64_t>& mult) {
    auto out = mult;
    out.erase(Partition());
    return out;
}

PartitionTuple flatten(const std::map<Partition, std::uint64_t>& mult) {
    PartitionTuple out;
    for (auto& [p, m] : mult)
        for (std::uint64_t i = 0; i < m; ++i) out.push_back(p);
    return out;
}

}  // namespace tsf
