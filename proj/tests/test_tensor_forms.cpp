#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "support.hpp"
#include "tsf/error.hpp"
#include "tsf/lambda_space.hpp"
#include "tsf/young.hpp"

using namespace tsf;
using namespace tsf::testing;

namespace {

Partition P(std::vector<int> p) { return Partition(std::move(p)); }

// (omega . sigma)[i] = omega[i_sigma(1), ..., i_sigma(n)], by dense enumeration.
MultiForm permute_oracle(const MultiForm& w, const std::vector<int>& sigma) {
    FormBuilder b(w.field(), w.arity(), w.dim());
    for_each_index(w.arity(), w.dim(), [&](const Index& i) {
        Index j(i.size());
        for (std::size_t k = 0; k < i.size(); ++k) j[k] = i[sigma[k]];
        b.add(i, w.get(j));
    });
    return b.finish();
}

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int parity(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

// Sum over row-preserving r and column-preserving c of sgn(c) (omega . r) . c,
// scaled by (#SYT / n!). Row and column groups found by brute force.
MultiForm projector_oracle(const MultiForm& w, const Partition& l) {
    const int n = l.size();
    std::vector<int> row(n), col(n);
    int k = 0;
    for (int r = 0; r < l.rows(); ++r)
        for (int c = 0; c < l[r]; ++c, ++k) {
            row[k] = r;
            col[k] = c;
        }
    FieldRef f = w.field();
    MultiForm acc(f, n, w.dim());
    for (auto& r : all_perms(n)) {
        bool ok = true;
        for (int i = 0; i < n; ++i) ok = ok && row[r[i]] == row[i];
        if (!ok) continue;
        MultiForm wr = permute_oracle(w, r);
        for (auto& c : all_perms(n)) {
            bool okc = true;
            for (int i = 0; i < n; ++i) okc = okc && col[c[i]] == col[i];
            if (!okc) continue;
            acc = acc + permute_oracle(wr, c).scaled(f->from_int(parity(c)));
        }
    }
    std::int64_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    std::int64_t syt = static_cast<std::int64_t>(standard_tableaux(l).size());
    return acc.scaled(f->from_int(syt) / f->from_int(fact));
}

// Explicit coefficient of pullback by evaluating on images of basis vectors.
MultiForm pullback_oracle(const MultiForm& w, const Matrix& f) {
    FormBuilder b(w.field(), w.arity(), f.cols());
    for_each_index(w.arity(), f.cols(), [&](const Index& i) {
        std::vector<Vector> vs;
        for (auto c : i) vs.push_back(f.dense_column(c));
        b.add(i, evaluate(w, vs));
    });
    return b.finish();
}

MultiForm single(FieldRef f, int n, std::size_t d, const Index& idx, long v) {
    FormBuilder b(f, n, d);
    b.add(idx, f->from_int(v));
    return b.finish();
}

}  // namespace

TEST_CASE("slot action convention on a rank-one form") {
    FieldRef q = Field::rationals();
    auto w = single(q, 2, 2, {0, 1}, 1);  // x1 (x) x2
    auto sw = w.permuted({1, 0});
    CHECK(evaluate(sw, {basis_vector(q, 2, 1), basis_vector(q, 2, 0)}) == q->one());
    CHECK(evaluate(sw, {basis_vector(q, 2, 0), basis_vector(q, 2, 1)}) == q->zero());
    std::mt19937_64 rng(7);
    auto r = random_form(q, 3, 2, rng);
    for (auto& s : all_perms(3)) CHECK(r.permuted(s) == permute_oracle(r, s));
}

TEST_CASE("symmetrization for lambda=(2) expands by hand") {
    std::mt19937_64 rng(1);
    for (FieldRef f : {Field::rationals(), Field::prime(5), Field::prime(3)}) {
        auto w = random_form(f, 2, 3, rng);
        auto p = young_projector_apply(w, P({2}));
        auto m = young_projector_apply(w, P({1, 1}));
        Scalar half = f->from_int(2).inverse();
        for_each_index(2, 3, [&](const Index& i) {
            Index j{i[1], i[0]};
            CHECK(p.get(i) == half * (w.get(i) + w.get(j)));
            CHECK(m.get(i) == half * (w.get(i) - w.get(j)));
        });
    }
}

TEST_CASE("lambda=(1) projector is the identity") {
    std::mt19937_64 rng(2);
    auto w = random_form(Field::rationals(), 1, 4, rng);
    CHECK(young_projector_apply(w, P({1})) == w);
}

TEST_CASE("projector agrees with the brute-force symmetrizer and is idempotent for |lambda| <= 4") {
    std::mt19937_64 rng(3);
    for (FieldRef f : {Field::rationals(), Field::prime(5), Field::prime(7)})
        for (int n = 1; n <= 4; ++n) {
            if (f->characteristic() != 0 && f->characteristic() <= n) continue;
            for (auto& l : partitions_of(n)) {
                auto w = random_form(f, n, 2, rng);
                auto p = young_projector_apply(w, l);
                CHECK(p == projector_oracle(w, l));
                CHECK(young_projector_apply(p, l) == p);
            }
        }
}

TEST_CASE("Young elements of every standard tableau are idempotent") {
    FieldRef q = Field::rationals();
    for (int n = 1; n <= 4; ++n)
        for (auto& l : partitions_of(n))
            for (auto& t : standard_tableaux(l)) {
                auto e = young_element(t, q);
                CHECK(e * e == e);
            }
}

TEST_CASE("projector rejects small characteristic") {
    auto w = MultiForm(Field::prime(3), 3, 1);
    CHECK_THROWS_AS(young_projector_apply(w, P({3})), Error);
    CHECK_THROWS_AS(young_projector_apply(MultiForm(Field::prime(2), 2, 1), P({2})), Error);
    CHECK_THROWS_AS(decompose_form(MultiForm(Field::prime(3), 3, 2)), Error);
}

TEST_CASE("projector commutes with pullback") {
    std::mt19937_64 rng(4);
    for (FieldRef f : {Field::rationals(), Field::prime(5)})
        for (int n = 1; n <= 4; ++n)
            for (auto& l : partitions_of(n)) {
                auto w = random_form(f, n, 3, rng);
                auto m = random_matrix(f, 3, 2, rng);
                CHECK(young_projector_apply(pullback(w, m), l) == pullback(young_projector_apply(w, l), m));
            }
}

TEST_CASE("seminormal idempotents are orthogonal, primitive-sized and sum to one") {
    FieldRef q = Field::rationals();
    for (int n = 0; n <= 4; ++n) {
        const auto& es = seminormal_idempotents(n, q);
        std::size_t expected = 0;
        for (auto& l : partitions_of(n)) expected += standard_tableaux(l).size();
        REQUIRE(es.size() == expected);
        auto total = GroupAlgebraElement::zero(q, n);
        for (std::size_t a = 0; a < es.size(); ++a) {
            total = total + es[a].element;
            for (std::size_t b = 0; b < es.size(); ++b) {
                auto prod = es[a].element * es[b].element;
                if (a == b)
                    CHECK(prod == es[a].element);
                else
                    CHECK(prod == GroupAlgebraElement::zero(q, n));
            }
        }
        CHECK(total == GroupAlgebraElement::unit(q, n));
        // Summing over one shape gives a central element.
        const auto& g = SymmetricGroup::of(n);
        for (auto& l : partitions_of(n)) {
            auto z = GroupAlgebraElement::zero(q, n);
            for (auto& e : es)
                if (e.tableau.shape == l) z = z + e.element;
            for (std::size_t s = 0; s < g.order(); ++s) {
                auto x = GroupAlgebraElement::basis(q, n, s, q->one());
                CHECK(x * z == z * x);
            }
        }
    }
}

TEST_CASE("n=2 decomposition is the symmetric plus skew split") {
    std::mt19937_64 rng(5);
    FieldRef q = Field::rationals();
    auto w = random_form(q, 2, 3, rng);
    auto parts = decompose_form(w);
    REQUIRE(parts.size() == 2);
    for (auto& p : parts) {
        if (p.tableau.shape == P({2}))
            CHECK(p.form == young_projector_apply(w, P({2})));
        else
            CHECK(p.form == young_projector_apply(w, P({1, 1})));
    }
    auto sym = young_projector_apply(w, P({2}));
    for (auto& p : decompose_form(sym))
        if (p.tableau.shape == P({1, 1})) CHECK(p.form.is_zero());
}

TEST_CASE("decompose then reassemble is the identity") {
    std::mt19937_64 rng(6);
    FieldRef q = Field::rationals();
    for (int n = 0; n <= 4; ++n)
        for (int t = 0; t < 3; ++t) {
            auto w = random_form(q, n, 2, rng);
            CHECK(reassemble(decompose_form(w)) == w);
        }
    auto w5 = random_form(Field::prime(5), 3, 2, rng);
    CHECK(reassemble(decompose_form(w5)) == w5);
    // Exhaustive over F_3 for n <= 2, d <= 2 (n = 3 needs characteristic > 3).
    FieldRef f3 = Field::prime(3);
    for (int n = 1; n <= 2; ++n)
        for (std::size_t d = 1; d <= 2; ++d) {
            std::size_t cells = 1;
            for (int k = 0; k < n; ++k) cells *= d;
            std::size_t total = 1;
            for (std::size_t k = 0; k < cells; ++k) total *= 3;
            for (std::size_t code = 0; code < total; ++code) {
                FormBuilder b(f3, n, d);
                std::size_t c = code;
                for (std::size_t key = 0; key < cells; ++key, c /= 3)
                    b.add_key(key, f3->element(static_cast<std::int64_t>(c % 3)));
                auto w = b.finish();
                CHECK(reassemble(decompose_form(w)) == w);
            }
        }
}

TEST_CASE("pullback examples and functoriality") {
    std::mt19937_64 rng(8);
    for (FieldRef f : {Field::rationals(), Field::prime(5), Field::extension(3, {2, 2, 1})}) {
        auto w = random_form(f, 3, 3, rng);
        CHECK(pullback(w, Matrix::identity(f, 3)) == w);
        CHECK(pullback(w, Matrix(f, 3, 2)).is_zero());
        auto a = random_matrix(f, 3, 2, rng), b = random_matrix(f, 2, 4, rng);
        CHECK(pullback(pullback(w, a), b) == pullback(w, a * b));
        CHECK(pullback(w, a) == pullback_oracle(w, a));
    }
    CHECK_THROWS_AS(pullback(MultiForm(Field::rationals(), 2, 3), Matrix(Field::rationals(), 2, 2)), Error);
}

TEST_CASE("evaluation examples and multilinearity") {
    FieldRef q = Field::rationals();
    auto w = single(q, 2, 2, {0, 1}, 1);
    CHECK(evaluate(w, {basis_vector(q, 2, 0), basis_vector(q, 2, 1)}) == q->one());
    std::mt19937_64 rng(9);
    auto r = random_form(q, 3, 3, rng);
    auto u = random_vector(q, 3, rng), v = random_vector(q, 3, rng), x = random_vector(q, 3, rng);
    CHECK(evaluate(r, {Vector(3, q->zero()), v, x}).is_zero());
    Vector uv(3);
    for (int i = 0; i < 3; ++i) uv[i] = u[i] + v[i];
    CHECK(evaluate(r, {uv, x, x}) == evaluate(r, {u, x, x}) + evaluate(r, {v, x, x}));
    CHECK_THROWS_AS(evaluate(r, {u, v}), Error);
}

TEST_CASE("lambda spaces validate canonical forms") {
    FieldRef q = Field::rationals();
    auto w = single(q, 2, 2, {0, 1}, 1);
    CHECK_THROWS_AS(LambdaSpace(q, 2, {P({2})}, {w}), Error);
    LambdaSpace v(q, 2, {P({2})}, {w}, LambdaSpace::Input::raw);
    CHECK(v.form(0).get({1, 0}) == q->from_rational(mpq_class(1, 2)));
    CHECK_NOTHROW(LambdaSpace(q, 2, {P({2})}, {v.form(0)}));
    CHECK_THROWS_AS(LambdaSpace(Field::prime(3), 1, {P({3})}, {MultiForm(Field::prime(3), 3, 1)}), Error);
}

TEST_CASE("direct sums and restriction") {
    FieldRef q = Field::rationals();
    LambdaSpace a(q, 1, {P({2})}, {single(q, 2, 1, {0, 0}, 1)});
    LambdaSpace b(q, 1, {P({2})}, {single(q, 2, 1, {0, 0}, 1)});
    auto s = direct_sum({a, b});
    CHECK(s.dim() == 2);
    CHECK(s.tuple() == PartitionTuple{P({2}), P({2})});
    CHECK(s.form(0) == single(q, 2, 2, {0, 0}, 1));
    CHECK(s.form(1) == single(q, 2, 2, {1, 1}, 1));
    auto zero = LambdaSpace::zero(q, 0, {});
    CHECK(direct_sum({a, zero}) == a);
    std::mt19937_64 rng(10);
    LambdaSpace c(q, 2, {P({2, 1})}, {random_form(q, 3, 2, rng)}, LambdaSpace::Input::raw);
    LambdaSpace d(q, 3, {P({1, 1})}, {random_form(q, 2, 3, rng)}, LambdaSpace::Input::raw);
    auto cd = direct_sum({c, d});
    CHECK(pullback_space(restrict_tuple(cd, {0}), Matrix::inclusion(q, 5, 2, 0)) == c);
    CHECK(pullback_space(restrict_tuple(cd, {1}), Matrix::inclusion(q, 5, 3, 2)) == d);
    CHECK(pullback(cd.form(0), Matrix::inclusion(q, 5, 3, 2)).is_zero());
    CHECK(restrict_tuple(s, {0, 1}) == s);
    CHECK(restrict_tuple(s, {}).size() == 0);
    CHECK(restrict_tuple(s, {0}).form(0) == s.form(0));
    CHECK_THROWS_AS(restrict_tuple(s, {2}), Error);
    CHECK_THROWS_AS(direct_sum({a, LambdaSpace::zero(Field::prime(5), 1, {})}), Error);
}

TEST_CASE("embedding checks") {
    FieldRef q = Field::rationals();
    std::mt19937_64 rng(11);
    LambdaSpace cubic(q, 2, {P({3})}, {random_form(q, 3, 2, rng)}, LambdaSpace::Input::raw);
    REQUIRE(!cubic.form(0).is_zero());
    CHECK(is_embedding(Matrix::identity(q, 2), cubic, cubic));
    auto neg = Matrix::identity(q, 2).scaled(q->from_int(-1));
    auto c = is_embedding(neg, cubic, cubic);
    CHECK(!c);
    CHECK(c.reason == "form-mismatch");
    auto zc = is_embedding(Matrix(q, 2, 2), cubic, cubic);
    CHECK(zc.reason == "not-injective");
    // Transitivity: composing certified embeddings stays certified.
    auto g = random_invertible(q, 2, rng);
    auto mid = pullback_space(cubic, g);
    auto big = pullback_space(cubic, Matrix::inclusion(q, 3, 2).transpose());
    LinearEmbedding e1{mid, cubic, g}, e2{cubic, big, Matrix::inclusion(q, 3, 2)};
    certify(e1);
    certify(e2);
    CHECK_NOTHROW(certify(compose(e2, e1)));
}

TEST_CASE("brute-force isomorphism of 1-dimensional cubic spaces over F_7") {
    FieldRef f = Field::prime(7);
    auto space = [&](long v) { return LambdaSpace(f, 1, {P({3})}, {single(f, 3, 1, {0, 0, 0}, v)}); };
    auto a = space(1);
    auto id = iso_brute_force(a, a);
    REQUIRE(id);
    CHECK(is_embedding(*id, a, a));
    std::vector<long> cubes;
    for (long c = 1; c < 7; ++c) cubes.push_back(c * c * c % 7);
    for (long v = 1; v < 7; ++v) {
        bool cube = std::find(cubes.begin(), cubes.end(), v) != cubes.end();
        auto g = iso_brute_force(a, space(v));
        CHECK(g.has_value() == cube);
        if (g) {
            CHECK(is_embedding(*g, a, space(v)));
            auto x = g->at(0, 0);
            CHECK(x * x * x * f->from_int(v) == f->one());
        }
    }
    CHECK_THROWS_AS(iso_brute_force(LambdaSpace::zero(Field::rationals(), 1, {}), LambdaSpace::zero(Field::rationals(), 1, {})), Error);
}
