#include "casmc/closure.hpp"

#include <algorithm>

#include "casmc/errors.hpp"

namespace casmc {

const char* to_string(Direction d) {
    switch (d) {
        case Direction::forward: return "forward";
        case Direction::inverse: return "inverse";
        case Direction::symmetric: return "symmetric";
    }
    throw InternalError("unknown direction");
}

Direction direction_from_string(const std::string& s) {
    if (s == "forward") return Direction::forward;
    if (s == "inverse") return Direction::inverse;
    if (s == "symmetric" || s == "symmetric-closure") return Direction::symmetric;
    throw ModelError("unknown direction '" + s + "' (expected forward|inverse|symmetric)");
}

void SpaceRelation::validate() const {
    for (const auto& [a, b] : edges) {
        if (a >= point_count || b >= point_count)
            throw ModelError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") has endpoint outside [0, " + std::to_string(point_count) + ")");
    }
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ModelError("duplicate edge in relation");
}

namespace {

// Builds CSR adjacency from directed pairs, dropping duplicates.
void build_csr(std::size_t n, std::vector<std::pair<PointId, PointId>> pairs,
               std::vector<std::uint32_t>& off, std::vector<PointId>& flat) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    off.assign(n + 1, 0);
    for (const auto& [a, b] : pairs) {
        (void)b;
        ++off[a + 1];
    }
    for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
    flat.resize(pairs.size());
    std::vector<std::uint32_t> cursor(off.begin(), off.end() - 1);
    for (const auto& [a, b] : pairs) flat[cursor[a]++] = b;
}

}  // namespace

ClosureSpace ClosureSpace::from_relation(const SpaceRelation& rel, Direction dir) {
    rel.validate();

    std::vector<std::pair<PointId, PointId>> eff;
    eff.reserve(rel.edges.size() * (dir == Direction::symmetric ? 2 : 1));
    for (const auto& [a, b] : rel.edges) {
        if (dir == Direction::forward || dir == Direction::symmetric) eff.emplace_back(a, b);
        if (dir == Direction::inverse || dir == Direction::symmetric) eff.emplace_back(b, a);
    }

    ClosureSpace sp;
    sp.n_ = rel.point_count;
    sp.dir_ = dir;
    build_csr(sp.n_, eff, sp.succ_off_, sp.succ_);
    for (auto& [a, b] : eff) std::swap(a, b);
    build_csr(sp.n_, std::move(eff), sp.pred_off_, sp.pred_);
    return sp;
}

void ClosureSpace::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n_)
        throw ModelError("label count does not match carrier size");
    labels_ = std::move(labels);
}

void ClosureSpace::check_subset(const PointSet& a) const {
    if (a.universe() != n_)
        throw DomainError("argument set ranges over a carrier of size " + std::to_string(a.universe()) +
                          ", space has " + std::to_string(n_));
}

PointSet ClosureSpace::closure(const PointSet& a) const {
    check_subset(a);
    PointSet out = a;
    a.for_each([&](PointId p) {
        for (PointId q : successors(p)) out.add(q);
    });
    return out;
}

PointSet ClosureSpace::interior(const PointSet& a) const {
    check_subset(a);
    return closure(a.complement()).complement();
}

PointSet ClosureSpace::frontier(const PointSet& a) const {
    check_subset(a);
    return closure(a) - a;
}

}  // namespace casmc
