#pragma once

// Seeded random generators for spaces, models and formulas, shared by the
// unit suites and the acceptance runner.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "casmc/closure.hpp"
#include "casmc/formula.hpp"
#include "casmc/meanfield.hpp"
#include "casmc/parse.hpp"
#include "casmc/pctl.hpp"
#include "casmc/slcs.hpp"
#include "casmc/temporal.hpp"

namespace casmc::gen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline Direction random_direction(Rng& rng) {
    switch (pick(rng, 0, 2)) {
        case 0: return Direction::forward;
        case 1: return Direction::inverse;
        default: return Direction::symmetric;
    }
}

inline SpaceRelation random_relation(Rng& rng, std::size_t max_points) {
    SpaceRelation rel;
    rel.point_count = pick(rng, 1, max_points);
    const double density = unit(rng) * 0.5;
    for (PointId a = 0; a < rel.point_count; ++a)
        for (PointId b = 0; b < rel.point_count; ++b)
            if (unit(rng) < density) rel.edges.emplace_back(a, b);
    return rel;
}

inline ClosureSpace random_space(Rng& rng, std::size_t max_points) {
    return ClosureSpace::from_relation(random_relation(rng, max_points), random_direction(rng));
}

inline PointSet random_subset(Rng& rng, std::size_t universe) {
    PointSet s(universe);
    const double density = unit(rng);
    for (PointId p = 0; p < universe; ++p)
        if (unit(rng) < density) s.add(p);
    return s;
}

inline SpatialModel random_spatial_model(Rng& rng, std::size_t max_points, std::size_t max_atoms) {
    static const std::vector<std::string> names = {"p", "q", "r"};
    const std::size_t n_atoms = pick(rng, 1, max_atoms);
    ClosureSpace space = random_space(rng, max_points);
    const std::size_t n = space.size();
    SpatialModel model(std::move(space),
                       std::vector<std::string>(names.begin(), names.begin() + n_atoms));
    for (std::size_t a = 0; a < n_atoms; ++a) {
        const double density = unit(rng);
        for (PointId p = 0; p < n; ++p)
            if (unit(rng) < density) model.assign(p, a);
    }
    return model;
}

// Core spatial grammar (True/Atom/Not/And/Near/Surrounded) of bounded depth.
inline FormulaPtr random_core_formula(Rng& rng, const std::vector<std::string>& atoms,
                                      std::size_t depth) {
    if (depth == 0) {
        if (pick(rng, 0, 4) == 0) return f_true();
        return f_atom(atoms[pick(rng, 0, atoms.size() - 1)]);
    }
    switch (pick(rng, 0, 5)) {
        case 0: return f_not(random_core_formula(rng, atoms, depth - 1));
        case 1:
            return f_and(random_core_formula(rng, atoms, depth - 1),
                         random_core_formula(rng, atoms, depth - 1));
        case 2: return f_near(random_core_formula(rng, atoms, depth - 1));
        case 3:
        case 4:
            return f_surrounded(random_core_formula(rng, atoms, depth - 1),
                                random_core_formula(rng, atoms, depth - 1));
        default: return random_core_formula(rng, atoms, 0);
    }
}

// Full spatial grammar including the derived operators.
inline FormulaPtr random_spatial_formula(Rng& rng, const std::vector<std::string>& atoms,
                                         std::size_t depth) {
    if (depth == 0) {
        if (pick(rng, 0, 4) == 0) return f_true();
        return f_atom(atoms[pick(rng, 0, atoms.size() - 1)]);
    }
    auto sub = [&] { return random_spatial_formula(rng, atoms, depth - 1); };
    switch (pick(rng, 0, 9)) {
        case 0: return f_not(sub());
        case 1: return f_and(sub(), sub());
        case 2: return f_or(sub(), sub());
        case 3: return f_implies(sub(), sub());
        case 4: return f_near(sub());
        case 5: return f_surrounded(sub(), sub());
        case 6: return f_propagate(sub(), sub());
        case 7: return f_somewhere(sub());
        case 8: return f_everywhere(sub());
        default: return f_reach(sub(), sub());
    }
}

inline FormulaPtr random_st_formula(Rng& rng, const std::vector<std::string>& atoms,
                                    std::size_t depth) {
    if (depth == 0 || pick(rng, 0, 2) == 0) return random_spatial_formula(rng, atoms, depth);
    auto sub = [&] { return random_st_formula(rng, atoms, depth - 1); };
    switch (pick(rng, 0, 6)) {
        case 0: return f_ex(sub());
        case 1: return f_eu(sub(), sub());
        case 2: return f_au(sub(), sub());
        case 3: return f_ef(sub());
        case 4: return f_af(sub());
        case 5: return f_eg(sub());
        default: return f_ag(sub());
    }
}

inline SnapshotModel random_snapshot_model(Rng& rng, std::size_t max_states,
                                           std::size_t max_points, std::size_t max_atoms) {
    static const std::vector<std::string> names = {"p", "q", "r"};
    const std::size_t n_atoms = pick(rng, 1, max_atoms);
    const std::size_t n_states = pick(rng, 1, max_states);
    ClosureSpace space = random_space(rng, max_points);
    const std::size_t n = space.size();

    std::vector<std::pair<std::uint32_t, std::uint32_t>> trans;
    for (std::uint32_t s = 0; s < n_states; ++s) {
        trans.emplace_back(s, static_cast<std::uint32_t>(pick(rng, 0, n_states - 1)));
        for (std::uint32_t t = 0; t < n_states; ++t)
            if (unit(rng) < 0.3) trans.emplace_back(s, t);
    }
    SnapshotModel model(std::move(space),
                        std::vector<std::string>(names.begin(), names.begin() + n_atoms), n_states,
                        trans, static_cast<std::uint32_t>(pick(rng, 0, n_states - 1)));
    for (std::uint32_t s = 0; s < n_states; ++s)
        for (std::size_t a = 0; a < n_atoms; ++a) {
            const double density = unit(rng);
            for (PointId p = 0; p < n; ++p)
                if (unit(rng) < density) model.assign(s, p, names[a]);
        }
    return model;
}

// Population model with rows mixing a constant distribution and the
// current measure: K[s][t] = (1-θ)·c_t + θ·m[t], row-stochastic for
// every m by construction.
inline PopulationModel random_population_model(Rng& rng, std::size_t max_states) {
    static const std::vector<std::string> names = {"a", "b", "c", "d", "e"};
    const std::size_t S = pick(rng, 2, max_states);
    std::vector<std::string> states(names.begin(), names.begin() + S);

    OccupancyMeasure init(S);
    double total = 0.0;
    for (auto& v : init) total += (v = unit(rng) + 0.05);
    for (auto& v : init) v /= total;

    std::vector<TransitionRule> rules;
    for (std::size_t s = 0; s < S; ++s) {
        std::vector<double> row(S);
        double row_total = 0.0;
        for (auto& v : row) row_total += (v = unit(rng) + 0.02);
        for (auto& v : row) v /= row_total;
        const double theta = pick(rng, 0, 1) ? unit(rng) * 0.8 : 0.0;
        for (std::size_t t = 0; t < S; ++t) {
            ExprPtr e = Expr::constant((1.0 - theta) * row[t]);
            if (theta > 0.0)
                e = Expr::binary(EKind::Add, e,
                                 Expr::binary(EKind::Mul, Expr::constant(theta),
                                              Expr::var_ref(states[t])));
            rules.push_back({states[s], states[t], e});
        }
    }
    return PopulationModel(states, init, rules, std::nullopt);
}

inline PctlFormulaPtr random_pctl_state(Rng& rng, const std::vector<std::string>& states,
                                        std::size_t depth, std::size_t max_k);

inline PctlPathPtr random_pctl_path(Rng& rng, const std::vector<std::string>& states,
                                    std::size_t depth, std::size_t max_k) {
    if (pick(rng, 0, 2) == 0)
        return PctlPath::next(random_pctl_state(rng, states, depth, max_k));
    return PctlPath::until(random_pctl_state(rng, states, depth, max_k), pick(rng, 0, max_k),
                           random_pctl_state(rng, states, depth, max_k));
}

inline PctlFormulaPtr random_pctl_occ(Rng& rng, const std::vector<std::string>& states) {
    std::vector<OccTerm> terms;
    const std::size_t n = pick(rng, 1, 2);
    for (std::size_t i = 0; i < n; ++i)
        terms.push_back({states[pick(rng, 0, states.size() - 1)],
                         std::round(unit(rng) * 4.0) / 2.0 - 1.0});
    const CmpOp op = static_cast<CmpOp>(pick(rng, 0, 3));
    return PctlFormula::occ_predicate(std::move(terms), op,
                                      std::round(unit(rng) * 16.0) / 16.0 - 0.5);
}

inline PctlFormulaPtr random_pctl_state(Rng& rng, const std::vector<std::string>& states,
                                        std::size_t depth, std::size_t max_k) {
    switch (pick(rng, 0, depth > 0 ? 5 : 2)) {
        case 0: return PctlFormula::make_true();
        case 1: return PctlFormula::local_atom(states[pick(rng, 0, states.size() - 1)]);
        case 2: return random_pctl_occ(rng, states);
        case 3: return PctlFormula::negation(random_pctl_state(rng, states, depth - 1, max_k));
        case 4:
            return PctlFormula::conjunction(random_pctl_state(rng, states, depth - 1, max_k),
                                            random_pctl_state(rng, states, depth - 1, max_k));
        default:
            return PctlFormula::prob(static_cast<CmpOp>(pick(rng, 0, 3)),
                                     std::round(unit(rng) * 64.0) / 64.0,
                                     random_pctl_path(rng, states, depth - 1, max_k));
    }
}

// A formula whose root is a Prob operator, for probability-agreement tests.
inline PctlFormulaPtr random_pctl_prob(Rng& rng, const std::vector<std::string>& states,
                                       std::size_t depth, std::size_t max_k) {
    return PctlFormula::prob(static_cast<CmpOp>(pick(rng, 0, 3)),
                             std::round(unit(rng) * 64.0) / 64.0,
                             random_pctl_path(rng, states, depth, max_k));
}

}  // namespace casmc::gen
