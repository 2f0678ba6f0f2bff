#include "casmc/slcs.hpp"

#include <cstdint>

#include "casmc/errors.hpp"

namespace casmc {

SpatialModel::SpatialModel(ClosureSpace space, std::vector<std::string> atoms)
    : space_(std::move(space)), atoms_(std::move(atoms)) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!atom_index_.emplace(atoms_[i], i).second)
            throw ModelError("atom '" + atoms_[i] + "' declared twice");
    }
    atom_sets_.assign(atoms_.size(), PointSet(space_.size()));
}

std::size_t SpatialModel::atom_index(const std::string& name) const {
    auto it = atom_index_.find(name);
    if (it == atom_index_.end()) throw FormulaError("undeclared atom '" + name + "'");
    return it->second;
}

PointSet surrounded_sat(const ClosureSpace& space, const PointSet& phi, const PointSet& psi) {
    if (phi.universe() != space.size() || psi.universe() != space.size())
        throw DomainError("surrounded arguments must range over the space carrier");

    // Escape flood: E collects the non-psi points from which a closure path
    // of non-psi points leaves phi ∪ psi. Seeds are the points outside both.
    PointSet escape = (phi | psi).complement();
    std::vector<PointId> worklist = escape.ids();
    const PointSet candidates = phi - psi;
    while (!worklist.empty()) {
        PointId z = worklist.back();
        worklist.pop_back();
        for (PointId y : space.predecessors(z)) {
            if (candidates.contains(y) && !escape.contains(y)) {
                escape.add(y);
                worklist.push_back(y);
            }
        }
    }

    // x qualifies iff C({x}) avoids the escape set entirely.
    PointSet out(space.size());
    phi.for_each([&](PointId x) {
        if (escape.contains(x)) return;
        for (PointId q : space.successors(x))
            if (escape.contains(q)) return;
        out.add(x);
    });
    return out;
}

PointSet surrounded_bruteforce(const ClosureSpace& space, const PointSet& phi, const PointSet& psi,
                               std::size_t cap) {
    if (phi.universe() != space.size() || psi.universe() != space.size())
        throw DomainError("surrounded arguments must range over the space carrier");
    const std::vector<PointId> members = phi.ids();
    if (members.size() > cap)
        throw InfeasibleError("surrounded_bruteforce: |phi| = " + std::to_string(members.size()) +
                              " exceeds cap " + std::to_string(cap));

    PointSet out(space.size());
    const std::uint64_t limit = std::uint64_t{1} << members.size();
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
        PointSet a(space.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) a.add(members[i]);
        if (space.frontier(a).is_subset_of(psi)) out |= a;
    }
    return out;
}

PointSet propagate_sat(const ClosureSpace& space, const PointSet& phi, const PointSet& psi) {
    if (phi.universe() != space.size() || psi.universe() != space.size())
        throw DomainError("propagate arguments must range over the space carrier");
    PointSet result = psi & space.closure(phi);
    std::vector<PointId> worklist = result.ids();
    while (!worklist.empty()) {
        PointId z = worklist.back();
        worklist.pop_back();
        for (PointId w : space.successors(z)) {
            if (psi.contains(w) && !result.contains(w)) {
                result.add(w);
                worklist.push_back(w);
            }
        }
    }
    return result;
}

PointSet reach_sat(const ClosureSpace& space, const PointSet& phi, const PointSet& psi) {
    if (phi.universe() != space.size() || psi.universe() != space.size())
        throw DomainError("reach arguments must range over the space carrier");
    PointSet result = psi;
    std::vector<PointId> worklist = result.ids();
    while (!worklist.empty()) {
        PointId z = worklist.back();
        worklist.pop_back();
        for (PointId y : space.predecessors(z)) {
            if (phi.contains(y) && !result.contains(y)) {
                result.add(y);
                worklist.push_back(y);
            }
        }
    }
    return result;
}

namespace {

PointSet eval(const SpatialModel& m, const Formula& f, const EvalOptions& opts) {
    const ClosureSpace& sp = m.space();
    switch (f.kind) {
        case FKind::True: return sp.full_set();
        case FKind::Atom: return m.atom_set(f.atom);
        case FKind::Not: return eval(m, *f.lhs, opts).complement();
        case FKind::And: return eval(m, *f.lhs, opts) & eval(m, *f.rhs, opts);
        case FKind::Near: return sp.closure(eval(m, *f.lhs, opts));
        case FKind::Surrounded: {
            PointSet phi = eval(m, *f.lhs, opts);
            PointSet psi = eval(m, *f.rhs, opts);
            return opts.oracle_surrounded ? surrounded_bruteforce(sp, phi, psi, opts.bruteforce_cap)
                                          : surrounded_sat(sp, phi, psi);
        }
        case FKind::Propagate: return propagate_sat(sp, eval(m, *f.lhs, opts), eval(m, *f.rhs, opts));
        case FKind::Reach: return reach_sat(sp, eval(m, *f.lhs, opts), eval(m, *f.rhs, opts));
        default:
            throw FormulaError("temporal operator '" + to_string(f) + "' in purely spatial evaluation");
    }
}

}  // namespace

PointSet sat_set(const SpatialModel& model, const FormulaPtr& f, const EvalOptions& opts) {
    return eval(model, *desugar(f), opts);
}

}  // namespace casmc
