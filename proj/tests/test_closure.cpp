#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "casmc/closure.hpp"
#include "casmc/errors.hpp"
#include "support/gen.hpp"

using namespace casmc;

namespace {

PointSet set_of(const ClosureSpace& sp, std::initializer_list<PointId> ids) {
    PointSet s(sp.size());
    for (PointId p : ids) s.add(p);
    return s;
}

// a -> b -> c
ClosureSpace path3(Direction dir) {
    SpaceRelation rel{3, {{0, 1}, {1, 2}}};
    return ClosureSpace::from_relation(rel, dir);
}

}  // namespace

TEST_CASE("closure on the empty relation is the identity") {
    SpaceRelation rel{3, {}};
    ClosureSpace sp = ClosureSpace::from_relation(rel, Direction::forward);
    for (PointId p = 0; p < 3; ++p) {
        PointSet s = set_of(sp, {p});
        CHECK(sp.closure(s) == s);
    }
}

TEST_CASE("direction controls which relation induces the closure") {
    ClosureSpace sym = path3(Direction::symmetric);
    CHECK(sym.closure(set_of(sym, {1})) == set_of(sym, {0, 1, 2}));

    ClosureSpace fwd = path3(Direction::forward);
    CHECK(fwd.closure(set_of(fwd, {0})) == set_of(fwd, {0, 1}));
    CHECK(fwd.closure(set_of(fwd, {2})) == set_of(fwd, {2}));

    ClosureSpace inv = path3(Direction::inverse);
    CHECK(inv.closure(set_of(inv, {0})) == set_of(inv, {0}));
    CHECK(inv.closure(set_of(inv, {2})) == set_of(inv, {1, 2}));
}

TEST_CASE("closure of empty and full sets") {
    ClosureSpace sp = path3(Direction::symmetric);
    CHECK(sp.closure(sp.empty_set()) == sp.empty_set());
    CHECK(sp.closure(sp.full_set()) == sp.full_set());
}

TEST_CASE("closure on a symmetric path") {
    ClosureSpace sp = path3(Direction::symmetric);
    CHECK(sp.closure(set_of(sp, {0})) == set_of(sp, {0, 1}));
}

TEST_CASE("interior examples") {
    ClosureSpace sp = path3(Direction::symmetric);
    CHECK(sp.interior(sp.full_set()) == sp.full_set());
    CHECK(sp.interior(sp.empty_set()) == sp.empty_set());
    CHECK(sp.interior(set_of(sp, {0, 1})) == set_of(sp, {0}));
}

TEST_CASE("frontier examples") {
    ClosureSpace sp = path3(Direction::symmetric);
    CHECK(sp.frontier(sp.full_set()) == sp.empty_set());
    CHECK(sp.frontier(sp.empty_set()) == sp.empty_set());
    CHECK(sp.frontier(set_of(sp, {0})) == set_of(sp, {1}));
}

TEST_CASE("malformed relations are rejected") {
    CHECK_THROWS_AS(ClosureSpace::from_relation(SpaceRelation{2, {{0, 2}}}, Direction::forward),
                    ModelError);
    CHECK_THROWS_AS(ClosureSpace::from_relation(SpaceRelation{2, {{0, 1}, {0, 1}}}, Direction::forward),
                    ModelError);
}

TEST_CASE("sets over the wrong carrier are rejected") {
    ClosureSpace sp = path3(Direction::forward);
    PointSet wrong(5);
    CHECK_THROWS_AS(sp.closure(wrong), DomainError);
    CHECK_THROWS_AS(sp.interior(wrong), DomainError);
    CHECK_THROWS_AS(sp.frontier(wrong), DomainError);
}

TEST_CASE("closure axioms hold on random spaces") {
    gen::Rng rng(20240811);
    for (int i = 0; i < 200; ++i) {
        ClosureSpace sp = gen::random_space(rng, 50);
        PointSet a = gen::random_subset(rng, sp.size());
        PointSet b = gen::random_subset(rng, sp.size());

        CHECK(sp.closure(sp.empty_set()) == sp.empty_set());
        CHECK(a.is_subset_of(sp.closure(a)));
        CHECK(sp.closure(a | b) == (sp.closure(a) | sp.closure(b)));

        // monotonicity, with a ⊆ a ∪ b
        CHECK(sp.closure(a).is_subset_of(sp.closure(a | b)));

        // interior duality cross-check
        CHECK(sp.interior(a) == sp.closure(a.complement()).complement());
        CHECK(sp.frontier(a) == (sp.closure(a) - a));
    }
}

TEST_CASE("edgeless spaces have identity closure") {
    gen::Rng rng(7);
    SpaceRelation rel{17, {}};
    ClosureSpace sp = ClosureSpace::from_relation(rel, Direction::symmetric);
    for (int i = 0; i < 20; ++i) {
        PointSet a = gen::random_subset(rng, sp.size());
        CHECK(sp.closure(a) == a);
    }
}
