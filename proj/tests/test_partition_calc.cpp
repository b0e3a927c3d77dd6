#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <map>

#include "tsf/error.hpp"
#include "tsf/partition.hpp"

using namespace tsf;

namespace {

Partition P(std::vector<int> p) { return Partition(std::move(p)); }

// ---- independent oracles ---------------------------------------------------

// n! / prod of hook lengths, hooks counted cell by cell.
std::uint64_t hook_length_count(const Partition& l) {
    std::uint64_t num = 1, den = 1;
    for (int i = 2; i <= l.size(); ++i) num *= static_cast<std::uint64_t>(i);
    for (int r = 0; r < l.rows(); ++r)
        for (int c = 0; c < l[r]; ++c) {
            int below = 0;
            for (int rr = r + 1; rr < l.rows(); ++rr)
                if (l[rr] > c) ++below;
            den *= static_cast<std::uint64_t>(l[r] - c - 1 + below + 1);
        }
    return num / den;
}

// Semistandard tableaux of shape l with entries in 1..n, as exponent vectors.
void for_each_ssyt(const Partition& l, int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<std::pair<int, int>> cells;
    for (int r = 0; r < l.rows(); ++r)
        for (int c = 0; c < l[r]; ++c) cells.emplace_back(r, c);
    std::vector<std::vector<int>> t(l.rows());
    for (int r = 0; r < l.rows(); ++r) t[r].assign(l[r], 0);
    std::vector<int> expo(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == cells.size()) {
            fn(expo);
            return;
        }
        auto [r, c] = cells[k];
        int lo = 1;
        if (c > 0) lo = std::max(lo, t[r][c - 1]);
        if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
        for (int v = lo; v <= n; ++v) {
            t[r][c] = v;
            ++expo[v - 1];
            rec(k + 1);
            --expo[v - 1];
        }
    };
    rec(0);
}

std::uint64_t ssyt_count(const Partition& l, int n) {
    std::uint64_t c = 0;
    for_each_ssyt(l, n, [&](const std::vector<int>&) { ++c; });
    return c;
}

using Poly = std::map<std::vector<int>, long>;

Poly schur_poly(const Partition& l, int n) {
    Poly p;
    for_each_ssyt(l, n, [&](const std::vector<int>& e) { ++p[e]; });
    return p;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    return out;
}

// Expand a symmetric polynomial in Schur polynomials by peeling off the
// lexicographically largest monomial, which is always a dominant weight.
std::map<Partition, long> schur_expand(Poly p, int n) {
    std::map<Partition, long> out;
    for (;;) {
        while (!p.empty() && p.rbegin()->second == 0) p.erase(std::prev(p.end()));
        if (p.empty()) break;
        auto [e, c] = *p.rbegin();
        std::vector<int> parts;
        for (int x : e)
            if (x > 0) parts.push_back(x);
        Partition l(parts);
        out[l] += c;
        for (auto& [m, k] : schur_poly(l, n)) p[m] -= c * k;
    }
    return out;
}

long lr_by_schur_product(const Partition& mu, const Partition& nu, const Partition& lambda) {
    int n = std::max(1, lambda.size());
    auto prod = schur_expand(mul(schur_poly(mu, n), schur_poly(nu, n)), n);
    auto it = prod.find(lambda);
    return it == prod.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("partition parsing and validation") {
    CHECK(Partition::parse("(2,1)") == P({2, 1}));
    CHECK(Partition::parse("()").empty());
    CHECK_THROWS_AS(Partition::parse("(1,2)"), Error);
    CHECK_THROWS_AS(Partition::parse("(2,0)"), Error);
    auto t = parse_tuple("[(3),(2,1)]");
    REQUIRE(t.size() == 2);
    CHECK(tuple_to_string(t) == "[(3),(2,1)]");
    CHECK(is_pure(t));
    CHECK(!is_pure(parse_tuple("[(1),()]")));
    CHECK(parse_tuple("[]").empty());
}

TEST_CASE("standard tableaux examples") {
    CHECK(standard_tableaux(P({4})).size() == 1);
    CHECK(standard_tableaux(P({1, 1})).size() == 1);
    auto t21 = standard_tableaux(P({2, 1}));
    REQUIRE(t21.size() == 2);
    CHECK(t21[0].rows == std::vector<std::vector<int>>{{1, 2}, {3}});
    CHECK(t21[1].rows == std::vector<std::vector<int>>{{1, 3}, {2}});
}

TEST_CASE("standard tableaux count equals the hook-length number for |lambda| <= 6") {
    for (int n = 0; n <= 6; ++n)
        for (auto& l : partitions_of(n)) {
            auto ts = standard_tableaux(l);
            CHECK(ts.size() == hook_length_count(l));
            for (auto& t : ts) {
                for (auto& row : t.rows)
                    for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c - 1] < row[c]);
                for (std::size_t r = 1; r < t.rows.size(); ++r)
                    for (std::size_t c = 0; c < t.rows[r].size(); ++c) CHECK(t.rows[r - 1][c] < t.rows[r][c]);
            }
        }
}

TEST_CASE("canonical tableau is row reading") {
    CHECK(canonical_tableau(P({2})).rows == std::vector<std::vector<int>>{{1, 2}});
    CHECK(canonical_tableau(P({1, 1})).rows == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(canonical_tableau(P({2, 1})).rows == std::vector<std::vector<int>>{{1, 2}, {3}});
    CHECK_THROWS_AS(canonical_tableau(Partition()), Error);
}

TEST_CASE("schur_dim examples and semistandard oracle") {
    for (int n = 0; n <= 5; ++n) CHECK(schur_dim(P({1}), n) == static_cast<std::uint64_t>(n));
    CHECK(schur_dim(P({1, 1, 1}), 2) == 0);
    CHECK(schur_dim(P({2, 1}), 3) == 8);
    CHECK(ssyt_count(P({2, 1}), 3) == 8);
    for (int k = 0; k <= 5; ++k)
        for (auto& l : partitions_of(k))
            for (int n = 0; n <= 4; ++n) CHECK(schur_dim(l, n) == ssyt_count(l, n));
}

TEST_CASE("Littlewood-Richardson examples") {
    CHECK(lr_coefficient(P({1}), P({1}), P({2})) == 1);
    CHECK(lr_coefficient(P({2}), P({2}), P({3, 2})) == 0);
    CHECK(lr_coefficient(Partition(), P({2, 1}), P({2, 1})) == 1);
    CHECK(lr_by_schur_product(P({1}), P({1}), P({2})) == 1);
    CHECK(lr_by_schur_product(P({2}), P({2}), P({3, 2})) == 0);
    // s_2 s_2 = s_4 + s_31 + s_22
    auto prod = schur_expand(mul(schur_poly(P({2}), 4), schur_poly(P({2}), 4)), 4);
    CHECK(prod == std::map<Partition, long>{{P({4}), 1}, {P({3, 1}), 1}, {P({2, 2}), 1}});
    CHECK(lr_coefficient(P({2, 1}), P({2, 1}), P({3, 2, 1})) == 2);
}

TEST_CASE("skew-tableau LR agrees with the Schur-product oracle for |lambda| <= 5") {
    for (int n = 0; n <= 5; ++n)
        for (auto& lambda : partitions_of(n))
            for (int k = 0; k <= n; ++k)
                for (auto& mu : partitions_of(k))
                    for (auto& nu : partitions_of(n - k))
                        CHECK(static_cast<long>(lr_coefficient(mu, nu, lambda)) ==
                              lr_by_schur_product(mu, nu, lambda));
}

TEST_CASE("dimension identity for direct sums") {
    for (int s = 0; s <= 4; ++s)
        for (auto& lambda : partitions_of(s))
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; b <= 3; ++b) {
                    std::uint64_t rhs = 0;
                    for (int k = 0; k <= s; ++k)
                        for (auto& mu : partitions_of(k))
                            for (auto& nu : partitions_of(s - k))
                                rhs += lr_coefficient(mu, nu, lambda) * schur_dim(mu, a) * schur_dim(nu, b);
                    CHECK(schur_dim(lambda, a + b) == rhs);
                }
}

TEST_CASE("shift tuple examples") {
    for (int n = 0; n <= 4; ++n) {
        auto m = shift_tuple({P({2})}, n);
        std::map<Partition, std::uint64_t> want{{P({2}), 1}};
        if (n > 0) {
            want[Partition()] = static_cast<std::uint64_t>(n * (n + 1) / 2);
            want[P({1})] = static_cast<std::uint64_t>(n);
        }
        CHECK(m == want);
    }
    auto t = parse_tuple("[(3),(2,1)]");
    CHECK(flatten(shift_tuple(t, 0)) == PartitionTuple{P({2, 1}), P({3})});  // lexicographic within a degree
    auto m3 = shift_tuple({P({3})}, 1);
    CHECK(m3 == std::map<Partition, std::uint64_t>{{Partition(), 1}, {P({1}), 1}, {P({2}), 1}, {P({3}), 1}});
    CHECK(flatten(m3) == PartitionTuple{Partition(), P({1}), P({2}), P({3})});
    CHECK(pure_part(m3).size() == 3);
    auto f = flatten(shift_tuple({P({2})}, 2));
    CHECK(tuple_to_string(f) == "[(),(),(),(1),(1),(2)]");
}

TEST_CASE("shift degree conservation and total dimension") {
    std::vector<PartitionTuple> tuples{{P({1})}, {P({2})}, {P({3})}, {P({2, 1})}, {P({1, 1})},
                                       {P({2}), P({2})}, {P({3}), P({2, 1})}, {P({2, 2})}};
    for (auto& t : tuples)
        for (int n = 0; n <= 3; ++n) {
            auto mult = shift_tuple(t, n);
            for (auto& [nu, c] : mult) CHECK(nu.size() <= max_size(t));
            for (int m = 0; m <= 3; ++m) {
                std::uint64_t lhs = 0, rhs = 0;
                for (auto& [nu, c] : mult) lhs += c * schur_dim(nu, m);
                for (auto& l : t) rhs += schur_dim(l, n + m);
                CHECK(lhs == rhs);
            }
        }
}
