#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "casmc/pointset.hpp"

namespace casmc {

// How the closure operator reads the underlying relation R:
// forward adds R-successors, inverse adds R-predecessors, symmetric both.
enum class Direction { forward, inverse, symmetric };

const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);

// A binary relation over [0, point_count). Duplicate or out-of-range
// edges are rejected by validate().
struct SpaceRelation {
    std::size_t point_count = 0;
    std::vector<std::pair<PointId, PointId>> edges;

    void validate() const;
};

// Finite quasi-discrete closure space: the carrier [0, size) together with
// the closure operator induced by a relation,
//
//   C(A) = A ∪ { x | ∃ a ∈ A : (a, x) ∈ R' }
//
// where R' is R, R⁻¹ or R ∪ R⁻¹ depending on the direction. Instances are
// immutable after construction and safe to share across threads.
class ClosureSpace {
public:
    static ClosureSpace from_relation(const SpaceRelation& rel, Direction dir = Direction::forward);

    std::size_t size() const { return n_; }
    Direction direction() const { return dir_; }

    PointSet empty_set() const { return PointSet(n_); }
    PointSet full_set() const { return PointSet::full(n_); }

    // One closure step: points added to {p} besides p itself.
    std::span<const PointId> successors(PointId p) const {
        return {succ_.data() + succ_off_[p], succ_off_[p + 1] - succ_off_[p]};
    }
    // Inverse step: points q with p ∈ C({q}) \ {q}.
    std::span<const PointId> predecessors(PointId p) const {
        return {pred_.data() + pred_off_[p], pred_off_[p + 1] - pred_off_[p]};
    }

    PointSet closure(const PointSet& a) const;
    PointSet interior(const PointSet& a) const;   // X \ C(X \ A)
    PointSet frontier(const PointSet& a) const;   // C(A) \ A

    // Optional point names; empty when the space has none.
    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);

private:
    ClosureSpace() = default;

    void check_subset(const PointSet& a) const;

    std::size_t n_ = 0;
    Direction dir_ = Direction::forward;
    // CSR adjacency for the effective relation R' and its inverse.
    std::vector<std::uint32_t> succ_off_, pred_off_;
    std::vector<PointId> succ_, pred_;
    std::vector<std::string> labels_;
};

}  // namespace casmc
