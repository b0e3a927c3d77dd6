#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "graph_fixture.hpp"
#include "support.hpp"
#include "tsf/error.hpp"
#include "tsf/lambda_tower.hpp"
#include "tsf/universal.hpp"

using namespace tsf;
using namespace tsf::testing;
using fraisse::build_tower;
using fraisse::extend_embedding;
using fraisse::level;
using fraisse::transition;

namespace {

Partition P(std::vector<int> p) { return Partition(std::move(p)); }

LambdaSpace hyperbolic_plane(FieldRef f) {
    return LambdaSpace(f, 2, {P({2})}, {MultiForm::from_entries(f, 2, 2, {{1, f->one()}, {2, f->one()}})});
}

LinearEmbedding prefix(const LambdaSpace& x, const LambdaSpace& y) {
    return {x, y, Matrix::inclusion(x.field(), y.dim(), x.dim())};
}

// Direct check of the one-point extension property: the new vertex sees
// exactly the images of `nbrs`.
bool sees_exactly(const GraphEmbedding& beta, std::size_t fresh, const std::vector<char>& nbrs) {
    for (std::size_t v = 0; v < nbrs.size(); ++v)
        if (beta.target.edge(beta.map[fresh], beta.map[v]) != (nbrs[v] != 0)) return false;
    return true;
}

}  // namespace

static_assert(fraisse::AmalgamationInstance<LambdaInstance>);

TEST_CASE("graph tower: one-point extension property at depth 3") {
    GraphInstance g;
    auto t = build_tower(g, 3, {1, 1, 1});
    CHECK(level(g, t, 1).n == 1);
    CHECK(level(g, t, 2).n == 3);
    CHECK(level(g, t, 3).n == 11);
    std::size_t served = 0;
    for (std::size_t n = 0; n < 3; ++n) {
        const Graph lv = level(g, t, n);
        for (std::size_t sub = 0; sub < (std::size_t{1} << lv.n); ++sub) {
            std::vector<std::size_t> vs;
            for (std::size_t v = 0; v < lv.n; ++v)
                if ((sub >> v) & 1) vs.push_back(v);
            Graph x = lv.induced(vs);
            GraphEmbedding alpha{x, lv, vs};
            for (std::size_t nb = 0; nb < (std::size_t{1} << x.n); ++nb) {
                Graph y(x.n + 1);
                std::vector<char> nbrs(x.n, 0);
                for (std::size_t i = 0; i < x.n; ++i)
                    for (std::size_t j = i + 1; j < x.n; ++j)
                        if (x.edge(i, j)) y.connect(i, j);
                for (std::size_t i = 0; i < x.n; ++i)
                    if ((nb >> i) & 1) {
                        y.connect(i, x.n);
                        nbrs[i] = 1;
                    }
                GraphEmbedding iota{x, y, {}};
                for (std::size_t i = 0; i < x.n; ++i) iota.map.push_back(i);
                auto r = extend_embedding(g, t, n, alpha, iota);
                CHECK(r.to == n + 1);
                CHECK(sees_exactly(r.beta, x.n, nbrs));
                ++served;
            }
        }
    }
    CHECK(served == t.log.size());
    for (auto& r : t.log) CHECK(fraisse::replay(g, t, r));
    // A two-vertex request is split across two levels.
    Graph path(2);
    path.connect(0, 1);
    auto r = extend_embedding(g, t, 0, g.from_initial(Graph(0)), g.from_initial(path));
    CHECK(r.to == 2);
    CHECK(g.certify(r.beta));
    // Static towers refuse requests above the top; lazy ones grow.
    auto top = level(g, t, 3);
    Graph one(1);
    CHECK_THROWS_AS(extend_embedding(g, t, 3, g.from_initial(top), g.from_initial(one)), CapacityError);
    t.lazy = true;
    auto rl = extend_embedding(g, t, 3, g.from_initial(top), g.from_initial(one));
    CHECK(rl.to == 4);
    CHECK(t.depth() == 4);
}

TEST_CASE("graph towers: back and forth between two truncations") {
    GraphInstance g;
    auto a = build_tower(g, 3, {1, 1, 1});
    auto b = build_tower(g, 3, {1, 1, 1});
    auto p = fraisse::back_and_forth(g, a, g, b, fraisse::empty_seed(g, a), 2);
    CHECK(p.steps == 2);
    CHECK(g.certify(p.left));
    CHECK(g.certify(p.right));
    CHECK(p.left.source == p.right.source);
}

TEST_CASE("lambda towers: sizes and the universal level") {
    FieldRef q = Field::rationals();
    LambdaInstance quad(q, {P({2})});
    auto t1 = build_tower(quad, 1, {1});
    CHECK(t1.depth() == 1);
    CHECK(level(quad, t1, 1) == universal_lambda_space({P({2})}, 1, q).space);
    auto t = build_tower(quad, 2, {1, 2});
    CHECK(level(quad, t, 1).dim() == 4);
    CHECK(level(quad, t, 2).dim() == 32);
    CHECK(quad.certify(transition(quad, t, 1, 2)));
    CHECK(quad.certify(transition(quad, t, 0, 2)));
    CHECK_THROWS_AS(build_tower(quad, 2, {1}), Error);
    CHECK_THROWS_AS(build_tower(quad, 1, {0}), Error);
    CHECK_THROWS_AS(LambdaInstance(Field::prime(3), {P({3})}), Error);
}

TEST_CASE("extend_embedding examples") {
    FieldRef q = Field::rationals();
    LambdaInstance quad(q, {P({2})});
    auto t = build_tower(quad, 3, {1, 2, 3});
    SUBCASE("absolute embedding from the initial object") {
        auto h = hyperbolic_plane(q);
        auto r = extend_embedding(quad, t, 0, quad.from_initial(quad.initial()), quad.from_initial(h));
        CHECK(r.to == 2);  // u(1) = 1, so the plane needs two levels
        CHECK(quad.certify(r.beta));
    }
    SUBCASE("isotropic line of level 1 into a hyperbolic plane") {
        const auto l1 = level(quad, t, 1);
        // e_1 pairs with e_2 in the first universal block, so it is isotropic.
        auto alpha = subspace(l1, Matrix::inclusion(q, l1.dim(), 1));
        CHECK(alpha.source.form(0).is_zero());
        auto h = hyperbolic_plane(q);
        LinearEmbedding iota{alpha.source, h, Matrix::inclusion(q, 2, 1)};
        REQUIRE(quad.certify(iota));
        auto r = extend_embedding(quad, t, 1, alpha, iota);
        CHECK(r.to == 2);
        CHECK(quad.certify(r.beta));
        CHECK(r.beta.matrix * iota.matrix == transition(quad, t, 1, 2).matrix * alpha.matrix);
    }
    SUBCASE("identity request") {
        const auto l1 = level(quad, t, 1);
        auto alpha = quad.identity(l1);
        auto r = extend_embedding(quad, t, 1, alpha, quad.identity(l1));
        CHECK(quad.equal(r.beta, transition(quad, t, 1, 2)));
    }
    for (auto& r : t.log) CHECK(fraisse::replay(quad, t, r));
}

TEST_CASE("tower universality under schedule (1,2)") {
    std::mt19937_64 rng(61);
    struct Case {
        PartitionTuple tuple;
        FieldRef f;
    };
    // [(3)] runs over F_5: F_3 is below the characteristic bound for n = 3.
    std::vector<Case> cases{{{P({2})}, Field::prime(3)},
                            {{P({3})}, Field::prime(5)},
                            {{P({2}), P({2})}, Field::prime(3)},
                            {{P({2})}, Field::rationals()}};
    for (auto& c : cases) {
        LambdaInstance inst(c.f, c.tuple);
        auto t = build_tower(inst, 2, {1, 2});
        for (std::size_t d = 0; d <= 2; ++d) {
            std::vector<std::vector<MultiForm>> bases;
            std::uint64_t points = 1;
            for (auto& l : c.tuple) {
                bases.push_back(projector_image_basis(l, d, c.f));
                for (std::size_t i = 0; i < bases.back().size(); ++i)
                    points *= c.f->is_finite() ? static_cast<std::uint64_t>(c.f->order()) : 1000;
            }
            auto run = [&](const std::vector<MultiForm>& forms) {
                LambdaSpace y(c.f, d, c.tuple, forms, LambdaSpace::Input::trusted);
                auto r = extend_embedding(inst, t, 0, inst.from_initial(inst.initial()), inst.from_initial(y));
                CHECK(r.to <= 2);
                CHECK(inst.certify(r.beta));
            };
            if (c.tuple.size() == 1 && points <= 625) {
                for_each_combination(bases[0], MultiForm(c.f, c.tuple[0].size(), d),
                                     [&](const MultiForm& w) { run({w}); });
            } else {
                for (int s = 0; s < 40; ++s) {
                    std::vector<MultiForm> forms;
                    for (std::size_t i = 0; i < c.tuple.size(); ++i)
                        forms.push_back(random_combination(bases[i], MultiForm(c.f, c.tuple[i].size(), d), rng));
                    run(forms);
                }
            }
        }
        for (auto& r : t.log) CHECK(fraisse::replay(inst, t, r));
    }
}

TEST_CASE("one-dimensional requests over F_3 resolve exhaustively") {
    FieldRef f = Field::prime(3);
    LambdaInstance quad(f, {P({2})});
    auto t = build_tower(quad, 2, {1, 2});
    const auto l1 = level(quad, t, 1);
    std::size_t count = 0;
    for_each_one_dim_extension(l1, [&](const LambdaSpace& y) {
        auto r = extend_embedding(quad, t, 1, quad.identity(l1), prefix(l1, y));
        CHECK(r.to == 2);
        ++count;
    });
    CHECK(count == 243);  // 3^5 values of (omega(e_i, y))_i, omega(y, y)
    // The same requests through a non-prefix inclusion.
    std::mt19937_64 rng(62);
    for (int s = 0; s < 10; ++s) {
        auto y = random_extension(l1, 1, rng);
        Matrix g = random_invertible(f, 5, rng);
        auto gi = inverse(g);
        LambdaSpace y2 = pullback_space(y, g);
        LinearEmbedding iota{l1, y2, *gi * Matrix::inclusion(f, 5, 4)};
        REQUIRE(quad.certify(iota));
        auto r = extend_embedding(quad, t, 1, quad.identity(l1), iota);
        CHECK(quad.certify(r.beta));
    }
    for (auto& r : t.log) CHECK(fraisse::replay(quad, t, r));
}

TEST_CASE("lazy towers grow on demand") {
    FieldRef f = Field::prime(3);
    LambdaInstance quad(f, {P({2})});
    auto t = build_tower(quad, 1, {1});
    auto l1 = level(quad, t, 1);
    std::mt19937_64 rng(63);
    auto y = random_extension(l1, 1, rng);
    CHECK_THROWS_AS(extend_embedding(quad, t, 1, quad.identity(l1), prefix(l1, y)), CapacityError);
    t.lazy = true;
    auto r = extend_embedding(quad, t, 1, quad.identity(l1), prefix(l1, y));
    CHECK(t.depth() == 2);
    CHECK(r.to == 2);
    CHECK(fraisse::replay(quad, t, t.log.back()));
}

TEST_CASE("back and forth on lambda towers") {
    FieldRef q = Field::rationals();
    LambdaInstance quad(q, {P({2})});
    SUBCASE("identity seed inside one tower") {
        auto t = build_tower(quad, 2, {1, 2});
        auto id = quad.identity(level(quad, t, 1));
        fraisse::Partial<LinearEmbedding> seed{id, id, 1, 1, 0};
        auto p = fraisse::back_and_forth(quad, t, quad, t, seed, 0);
        CHECK(quad.equal(p.left, id));
        CHECK(quad.equal(p.right, id));
        // One forth step: level 1 is covered, so the left leg moves up by the transition.
        auto p1 = fraisse::back_and_forth(quad, t, quad, t, seed, 1);
        CHECK(p1.steps == 1);
        CHECK(p1.left_level == 2);
        CHECK(quad.certify(p1.left));
        CHECK(quad.certify(p1.right));
    }
    SUBCASE("two independently scheduled towers from the empty seed") {
        auto a = build_tower(quad, 3, {1, 2, 3});
        auto b = build_tower(quad, 3, {2, 1, 3});
        auto p = fraisse::back_and_forth(quad, a, quad, b, fraisse::empty_seed(quad, a), 2);
        CHECK(p.steps == 2);
        // Forth adds 2 vectors (b's first capacity), back adds 2 more (a's second).
        CHECK(p.left.source.dim() == 4);
        CHECK(p.left_level == 2);
        CHECK(p.right_level == 1);
        CHECK(quad.certify(p.left));
        CHECK(quad.certify(p.right));
        for (auto& r : a.log) CHECK(fraisse::replay(quad, a, r));
        for (auto& r : b.log) CHECK(fraisse::replay(quad, b, r));
    }
}

TEST_CASE("jep chains") {
    FieldRef q = Field::rationals();
    LambdaInstance quad(q, {P({2})});
    auto h = hyperbolic_plane(q);
    auto single = fraisse::jep_chain(quad, {h});
    CHECK(single.levels.size() == 1);
    CHECK(single.levels[0] == h);
    // Every one-dimensional cubic space over F_5 (F_3 is excluded for n = 3).
    FieldRef f5 = Field::prime(5);
    LambdaInstance cubic(f5, {P({3})});
    std::vector<LambdaSpace> lines;
    for (std::int64_t a = 0; a < 5; ++a)
        lines.emplace_back(f5, 1, PartitionTuple{P({3})}, std::vector<MultiForm>{MultiForm::from_entries(f5, 3, 1, {{0, f5->element(a)}})});
    auto c = fraisse::jep_chain(cubic, lines);
    CHECK(c.levels.back().dim() == 5);
    for (std::size_t i = 0; i < lines.size(); ++i) CHECK(cubic.certify(fraisse::chain_leg(cubic, c, i)));
    // Universal spaces for d = 1, 2, 3: the last level absorbs every 3-dim space.
    std::vector<UniversalLambdaSpace> us;
    std::vector<LambdaSpace> objs;
    for (std::size_t d = 1; d <= 3; ++d) {
        us.push_back(universal_lambda_space({P({2})}, d, q));
        objs.push_back(us.back().space);
    }
    auto u = fraisse::jep_chain(quad, objs);
    std::mt19937_64 rng(64);
    for (int s = 0; s < 20; ++s) {
        auto w = random_space(q, {P({2})}, 1 + s % 3, rng);
        std::size_t i = w.dim() - 1;
        auto e = quad.compose(fraisse::chain_leg(quad, u, i), embed_finite_space(w, us[i]));
        CHECK(quad.certify(e));
    }
}
