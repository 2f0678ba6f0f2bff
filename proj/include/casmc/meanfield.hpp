#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casmc/expr.hpp"
#include "casmc/pctl.hpp"

namespace casmc {

// Fractions of the population per local state; entries >= 0, sum 1
// within 1e-9.
using OccupancyMeasure = std::vector<double>;

inline constexpr double kMeasureTolerance = 1e-9;

// Checks the OccupancyMeasure invariants and returns an exactly
// renormalized copy.
OccupancyMeasure validated_measure(const OccupancyMeasure& m, const std::string& what);

// One transition rule: probability expression for moving from `from`
// to `to`, evaluated over the current occupancy measure.
struct TransitionRule {
    std::string from;
    std::string to;
    ExprPtr probability;
};

// Clock-synchronous population model: S named local states and an
// occupancy-dependent row-stochastic kernel. Mass not covered by the
// listed rules stays put, i.e. the diagonal absorbs the remainder.
class PopulationModel {
public:
    PopulationModel(std::vector<std::string> states, OccupancyMeasure initial,
                    const std::vector<TransitionRule>& rules,
                    std::optional<std::uint64_t> population = std::nullopt);

    std::size_t state_count() const { return states_.size(); }
    const std::vector<std::string>& states() const { return states_; }
    std::size_t state_index(const std::string& name) const;
    bool has_state(const std::string& name) const;

    const OccupancyMeasure& initial_measure() const { return initial_; }
    std::optional<std::uint64_t> population() const { return population_; }

    // Kernel matrix K(m), row-major S×S: entries validated against [0,1]
    // and each row renormalized after passing the 1e-9 sum check.
    // `step` only decorates error messages.
    std::vector<double> kernel_at(const OccupancyMeasure& m,
                                  std::optional<std::size_t> step = std::nullopt) const;

private:
    std::vector<std::string> states_;
    OccupancyMeasure initial_;
    std::optional<std::uint64_t> population_;
    // entries_[s*S + s'] is the listed expression, null when the rule is
    // absent; diagonal entries additionally absorb the unlisted mass.
    std::vector<ExprPtr> entries_;
};

// m'[s'] = Σ_s m[s]·K[s][s'](m).
OccupancyMeasure mf_step(const PopulationModel& model, const OccupancyMeasure& m,
                         std::optional<std::size_t> step = std::nullopt);

// [m(0), ..., m(horizon)] of the mean-field difference equation.
std::vector<OccupancyMeasure> mf_trajectory(const PopulationModel& model, std::size_t horizon);

// --- fast simulation -------------------------------------------------

struct SimulationResult {
    // One trace per tagged object, horizon+1 local-state ids each.
    std::vector<std::vector<std::uint32_t>> traces;
    std::uint64_t seed = 0;
    // Generator identifier, fixed so traces are reproducible across
    // implementations: "mt19937_64/u53" = std::mt19937_64 with doubles
    // drawn as (x >> 11) * 2^-53.
    std::string rng_id;
};

// Samples `tagged_count` independent objects against the deterministic
// mean-field trajectory: the step-t matrix is K(m(t)). All objects start
// in `start_state` (default: first state with positive initial mass).
SimulationResult fast_simulate(const PopulationModel& model, std::size_t tagged_count,
                               std::size_t horizon, std::uint64_t seed,
                               const std::string& start_state = "");

// --- bounded PCTL ----------------------------------------------------

struct ExpansionAudit {
    std::size_t nodes_expanded = 0;           // path-node expansions that summed successors
    std::size_t max_successors_per_node = 0;  // bounded by S
    std::size_t memo_entries = 0;             // (Prob subformula, state, time) cache size
    std::size_t prob_subformulas = 0;
    std::size_t horizon = 0;
};

struct CheckResult {
    bool verdict = false;
    // Path probability of the root Prob operator, when the root is one.
    std::optional<double> probability;
    ExpansionAudit audit;
};

// On-the-fly check of a bounded PCTL formula for a tagged object starting
// in s0 at time 0. Probabilities are memoized per (subformula, state, t).
CheckResult pctl_check(const PopulationModel& model, const std::string& s0, const PctlFormulaPtr& f);

// Probability of Φ1 U≤k Φ2 for the tagged object at (state, t).
double prob_until(const PopulationModel& model, const std::string& state, std::size_t t,
                  std::size_t k, const PctlFormulaPtr& f1, const PctlFormulaPtr& f2);

// Oracle: materializes the time-expanded tagged chain (states (s,t)) and
// evaluates by dense backward matrix recursion. Must agree with
// pctl_check to 1e-12 on probabilities.
CheckResult pctl_check_naive(const PopulationModel& model, const std::string& s0,
                             const PctlFormulaPtr& f, std::size_t cell_cap = 1u << 20);

// --- exact population chain ------------------------------------------

struct ExactOptions {
    std::size_t max_count_vectors = 200000;
    // Guard for the dense (N+1)^(S-1) scratch layout used internally.
    std::size_t max_dense_cells = 20000000;
};

// Expected occupancy E[m_N(t)], t = 0..horizon, of the exact global DTMC
// over occupancy count vectors for population N. Objects start i.i.d.
// from the initial measure; each step moves every object independently
// per K(n/N), which induces multinomial count transitions.
std::vector<OccupancyMeasure> exact_count_dtmc(const PopulationModel& model, std::size_t N,
                                               std::size_t horizon, const ExactOptions& opts = {});

}  // namespace casmc
