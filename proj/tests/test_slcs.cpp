#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "casmc/errors.hpp"
#include "casmc/slcs.hpp"
#include "support/gen.hpp"

using namespace casmc;

namespace {

PointSet set_of(std::size_t n, std::initializer_list<PointId> ids) {
    PointSet s(n);
    for (PointId p : ids) s.add(p);
    return s;
}

SpatialModel path3_model(Direction dir, std::initializer_list<PointId> p_at) {
    SpaceRelation rel{3, {{0, 1}, {1, 2}}};
    SpatialModel m(ClosureSpace::from_relation(rel, dir), {"p", "q"});
    for (PointId p : p_at) m.assign(p, "p");
    return m;
}

}  // namespace

TEST_CASE("sat of near") {
    SpatialModel m = path3_model(Direction::symmetric, {0});
    CHECK(sat_set(m, f_near(f_atom("p"))) == set_of(3, {0, 1}));
    // N false is empty on any model
    CHECK(sat_set(m, f_near(f_not(f_true()))) == set_of(3, {}));
}

TEST_CASE("near is the identity on an edgeless space") {
    SpaceRelation rel{4, {}};
    SpatialModel m(ClosureSpace::from_relation(rel, Direction::forward), {"p"});
    m.assign(1, "p");
    m.assign(3, "p");
    CHECK(sat_set(m, f_near(f_atom("p"))) == sat_set(m, f_atom("p")));
}

TEST_CASE("undeclared atoms are rejected") {
    SpatialModel m = path3_model(Direction::symmetric, {0});
    CHECK_THROWS_AS(sat_set(m, f_atom("nope")), FormulaError);
}

TEST_CASE("temporal operators are rejected by the spatial engine") {
    SpatialModel m = path3_model(Direction::symmetric, {0});
    CHECK_THROWS_AS(sat_set(m, f_ex(f_atom("p"))), FormulaError);
}

TEST_CASE("surrounded on the symmetric path") {
    SpatialModel m = path3_model(Direction::symmetric, {});
    const ClosureSpace& sp = m.space();

    SUBCASE("phi = X is always satisfied everywhere") {
        CHECK(surrounded_sat(sp, sp.full_set(), set_of(3, {})) == sp.full_set());
        CHECK(surrounded_sat(sp, sp.full_set(), set_of(3, {1})) == sp.full_set());
    }
    SUBCASE("one point fenced by its frontier") {
        CHECK(surrounded_sat(sp, set_of(3, {0}), set_of(3, {1})) == set_of(3, {0}));
    }
    SUBCASE("no fence, no satisfaction") {
        CHECK(surrounded_sat(sp, set_of(3, {0}), set_of(3, {})) == set_of(3, {}));
    }
}

TEST_CASE("surrounded bruteforce basics") {
    SUBCASE("empty phi yields empty") {
        SpatialModel m = path3_model(Direction::symmetric, {});
        CHECK(surrounded_bruteforce(m.space(), set_of(3, {}), set_of(3, {})) == set_of(3, {}));
    }
    SUBCASE("singleton space") {
        SpaceRelation rel{1, {}};
        ClosureSpace sp = ClosureSpace::from_relation(rel, Direction::forward);
        CHECK(surrounded_bruteforce(sp, set_of(1, {0}), set_of(1, {})) == set_of(1, {0}));
    }
    SUBCASE("4-cycle with opposite corners") {
        SpaceRelation rel{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
        ClosureSpace sp = ClosureSpace::from_relation(rel, Direction::symmetric);
        PointSet phi = set_of(4, {0, 2});
        PointSet psi = set_of(4, {1, 3});
        CHECK(surrounded_bruteforce(sp, phi, psi) == phi);
        CHECK(surrounded_sat(sp, phi, psi) == phi);
    }
    SUBCASE("cap is enforced") {
        SpaceRelation rel{25, {}};
        ClosureSpace sp = ClosureSpace::from_relation(rel, Direction::forward);
        CHECK_THROWS_AS(surrounded_bruteforce(sp, sp.full_set(), sp.empty_set(), 20),
                        InfeasibleError);
    }
}

TEST_CASE("surrounded: overlap of phi and psi with a direct escape") {
    // a -> b, phi = psi = {a}: every witness A = {a} leaks b, so the
    // satisfaction set is empty even though a lies in psi.
    SpaceRelation rel{2, {{0, 1}}};
    ClosureSpace sp = ClosureSpace::from_relation(rel, Direction::forward);
    PointSet phi = set_of(2, {0});
    CHECK(surrounded_bruteforce(sp, phi, phi) == set_of(2, {}));
    CHECK(surrounded_sat(sp, phi, phi) == set_of(2, {}));
}

TEST_CASE("surrounded fixpoint equals the subset oracle on random inputs") {
    gen::Rng rng(99123);
    for (int i = 0; i < 300; ++i) {
        ClosureSpace sp = gen::random_space(rng, 10);
        PointSet phi = gen::random_subset(rng, sp.size());
        PointSet psi = gen::random_subset(rng, sp.size());
        CHECK(surrounded_sat(sp, phi, psi) == surrounded_bruteforce(sp, phi, psi));
    }
}

TEST_CASE("propagate examples") {
    SpatialModel m = path3_model(Direction::forward, {});
    const ClosureSpace& sp = m.space();
    CHECK(propagate_sat(sp, set_of(3, {}), set_of(3, {1, 2})) == set_of(3, {}));
    CHECK(propagate_sat(sp, set_of(3, {0}), set_of(3, {})) == set_of(3, {}));
    CHECK(propagate_sat(sp, set_of(3, {0}), set_of(3, {1, 2})) == set_of(3, {1, 2}));
}

TEST_CASE("somewhere floods along closure paths") {
    SpatialModel m = path3_model(Direction::symmetric, {2});
    CHECK(sat_set(m, f_somewhere(f_atom("p"))) == set_of(3, {0, 1, 2}));

    SpatialModel fwd = path3_model(Direction::forward, {0});
    // only a can reach p = {a}; b and c have no path back
    CHECK(sat_set(fwd, f_somewhere(f_atom("p"))) == set_of(3, {0}));
}

TEST_CASE("desugar rewrites") {
    FormulaPtr f = f_or(f_atom("p"), f_atom("q"));
    CHECK(*desugar(f) == *f_not(f_and(f_not(f_atom("p")), f_not(f_atom("q")))));

    SpatialModel m = path3_model(Direction::symmetric, {0});
    CHECK(sat_set(m, f_everywhere(f_true())) == m.space().full_set());
    CHECK(sat_set(m, f_implies(f_atom("p"), f_atom("p"))) == m.space().full_set());
}

TEST_CASE("spatial tautologies on random models") {
    gen::Rng rng(5150);
    for (int i = 0; i < 100; ++i) {
        SpatialModel m = gen::random_spatial_model(rng, 10, 3);
        FormulaPtr f = gen::random_spatial_formula(rng, m.atoms(), 3);
        FormulaPtr g = gen::random_spatial_formula(rng, m.atoms(), 2);

        PointSet sf = sat_set(m, f);
        CHECK(sat_set(m, f_not(f_not(f))) == sf);
        CHECK(sat_set(m, f_and(f, f)) == sf);
        CHECK(sf.is_subset_of(sat_set(m, f_near(f))));
        CHECK(sat_set(m, f_surrounded(f, g)).is_subset_of(sf));

        // somewhere is monotone
        PointSet s_fg = sat_set(m, f_somewhere(f_and(f, g)));
        CHECK(s_fg.is_subset_of(sat_set(m, f_somewhere(f))));
    }
}

TEST_CASE("surrounded by anything holds everywhere when phi covers the space") {
    gen::Rng rng(616);
    for (int i = 0; i < 50; ++i) {
        SpatialModel m = gen::random_spatial_model(rng, 10, 2);
        FormulaPtr g = gen::random_spatial_formula(rng, m.atoms(), 2);
        CHECK(sat_set(m, f_surrounded(f_true(), g)) == m.space().full_set());
    }
}

TEST_CASE("evaluation is invariant under point renumbering") {
    gen::Rng rng(31337);
    for (int i = 0; i < 50; ++i) {
        ClosureSpace sp = gen::random_space(rng, 9);
        const std::size_t n = sp.size();

        std::vector<PointId> perm(n);
        for (std::size_t p = 0; p < n; ++p) perm[p] = static_cast<PointId>(p);
        std::shuffle(perm.begin(), perm.end(), rng);

        PointSet phi = gen::random_subset(rng, n);
        PointSet psi = gen::random_subset(rng, n);

        SpaceRelation prel{n, {}};
        for (PointId a = 0; a < n; ++a)
            for (PointId b : sp.successors(a)) prel.edges.emplace_back(perm[a], perm[b]);
        // the effective relation is already directionally expanded
        ClosureSpace psp = ClosureSpace::from_relation(prel, Direction::forward);

        PointSet pphi(n), ppsi(n);
        phi.for_each([&](PointId p) { pphi.add(perm[p]); });
        psi.for_each([&](PointId p) { ppsi.add(perm[p]); });

        PointSet direct = surrounded_sat(sp, phi, psi);
        PointSet mapped(n);
        direct.for_each([&](PointId p) { mapped.add(perm[p]); });
        ClosureSpace fsp = ClosureSpace::from_relation(
            SpaceRelation{n, [&] {
                              std::vector<std::pair<PointId, PointId>> es;
                              for (PointId a = 0; a < n; ++a)
                                  for (PointId b : sp.successors(a)) es.emplace_back(a, b);
                              return es;
                          }()},
            Direction::forward);
        CHECK(surrounded_sat(fsp, phi, psi) == direct);
        CHECK(surrounded_sat(psp, pphi, ppsi) == mapped);
    }
}
