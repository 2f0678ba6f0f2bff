#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "casmc/closure.hpp"
#include "casmc/formula.hpp"
#include "casmc/slcs.hpp"

namespace casmc {

// Kripke structure whose states are snapshots: valuations over one fixed
// closure space. The transition relation must be total.
class SnapshotModel {
public:
    SnapshotModel(ClosureSpace space, std::vector<std::string> atoms, std::size_t state_count,
                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& transitions,
                  std::uint32_t initial_state);

    const ClosureSpace& space() const { return space_; }
    const std::vector<std::string>& atoms() const { return atoms_; }
    std::size_t state_count() const { return states_.size(); }
    std::uint32_t initial_state() const { return initial_; }

    const std::vector<std::uint32_t>& successors(std::uint32_t s) const { return states_[s].succ; }
    const std::vector<std::uint32_t>& predecessors(std::uint32_t s) const { return states_[s].pred; }

    // Valuation of one kripke state, as a spatial model over the shared space.
    const SpatialModel& snapshot(std::uint32_t s) const { return states_[s].snapshot; }
    void assign(std::uint32_t s, PointId p, const std::string& atom);

private:
    struct State {
        SpatialModel snapshot;
        std::vector<std::uint32_t> succ, pred;
    };

    ClosureSpace space_;
    std::vector<std::string> atoms_;
    std::vector<State> states_;
    std::uint32_t initial_ = 0;
};

// Labeling over the product space: one PointSet per kripke state.
using StLabeling = std::vector<PointSet>;

struct StStats {
    // Largest number of synchronous passes any EU/AU fixpoint took to
    // stabilize; bounded by the kripke state count.
    std::size_t max_fixpoint_iterations = 0;
};

// CTL-style labeling: temporal steps move along kripke transitions, spatial
// operators are evaluated inside each snapshot.
StLabeling st_sat_set(const SnapshotModel& model, const FormulaPtr& f, const EvalOptions& opts = {},
                      StStats* stats = nullptr);

}  // namespace casmc
