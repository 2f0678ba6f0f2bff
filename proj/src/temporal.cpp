#include "casmc/temporal.hpp"

#include <algorithm>

#include "casmc/errors.hpp"

namespace casmc {

SnapshotModel::SnapshotModel(ClosureSpace space, std::vector<std::string> atoms,
                             std::size_t state_count,
                             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& transitions,
                             std::uint32_t initial_state)
    : space_(std::move(space)), atoms_(std::move(atoms)), initial_(initial_state) {
    if (state_count == 0) throw ModelError("snapshot model needs at least one kripke state");
    if (initial_ >= state_count)
        throw ModelError("initial kripke state " + std::to_string(initial_) + " out of range");

    states_.reserve(state_count);
    for (std::size_t i = 0; i < state_count; ++i)
        states_.push_back(State{SpatialModel(space_, atoms_), {}, {}});

    for (const auto& [a, b] : transitions) {
        if (a >= state_count || b >= state_count)
            throw ModelError("kripke transition (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") out of range");
        states_[a].succ.push_back(b);
        states_[b].pred.push_back(a);
    }
    for (std::size_t i = 0; i < state_count; ++i) {
        auto& st = states_[i];
        std::sort(st.succ.begin(), st.succ.end());
        st.succ.erase(std::unique(st.succ.begin(), st.succ.end()), st.succ.end());
        std::sort(st.pred.begin(), st.pred.end());
        st.pred.erase(std::unique(st.pred.begin(), st.pred.end()), st.pred.end());
        if (st.succ.empty())
            throw ModelError("kripke state " + std::to_string(i) +
                             " has no outgoing transition (relation must be total)");
    }
}

void SnapshotModel::assign(std::uint32_t s, PointId p, const std::string& atom) {
    if (s >= states_.size()) throw ModelError("kripke state " + std::to_string(s) + " out of range");
    states_[s].snapshot.assign(p, atom);
}

namespace {

struct StEvaluator {
    const SnapshotModel& m;
    const EvalOptions& opts;
    StStats* stats;

    StLabeling constant(bool value) const {
        return StLabeling(m.state_count(),
                          value ? m.space().full_set() : m.space().empty_set());
    }

    StLabeling lab_not(StLabeling a) const {
        for (auto& s : a) s = s.complement();
        return a;
    }

    StLabeling lab_and(StLabeling a, const StLabeling& b) const {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
        return a;
    }

    // (s,x) ⊨ EX f iff some kripke successor of s satisfies f at x.
    StLabeling lab_ex(const StLabeling& f) const {
        StLabeling out(m.state_count(), m.space().empty_set());
        for (std::uint32_t s = 0; s < m.state_count(); ++s)
            for (std::uint32_t t : m.successors(s)) out[s] |= f[t];
        return out;
    }

    StLabeling lab_ax(const StLabeling& f) const {
        StLabeling out(m.state_count(), m.space().full_set());
        for (std::uint32_t s = 0; s < m.state_count(); ++s)
            for (std::uint32_t t : m.successors(s)) out[s] &= f[t];
        return out;
    }

    StLabeling until(const StLabeling& f, const StLabeling& g, bool universal) {
        StLabeling z = g;
        std::size_t iterations = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            StLabeling step = universal ? lab_ax(z) : lab_ex(z);
            for (std::uint32_t s = 0; s < m.state_count(); ++s) {
                PointSet grow = (f[s] & step[s]) - z[s];
                if (!grow.empty()) {
                    z[s] |= grow;
                    changed = true;
                }
            }
            if (changed) ++iterations;
        }
        if (stats) stats->max_fixpoint_iterations = std::max(stats->max_fixpoint_iterations, iterations);
        return z;
    }

    StLabeling eval(const Formula& f) {
        switch (f.kind) {
            case FKind::True: return constant(true);
            case FKind::Not: return lab_not(eval(*f.lhs));
            case FKind::And: return lab_and(eval(*f.lhs), eval(*f.rhs));
            case FKind::EX: return lab_ex(eval(*f.lhs));
            case FKind::EU: return until(eval(*f.lhs), eval(*f.rhs), false);
            case FKind::AU: return until(eval(*f.lhs), eval(*f.rhs), true);
            case FKind::Atom: {
                StLabeling out;
                out.reserve(m.state_count());
                for (std::uint32_t s = 0; s < m.state_count(); ++s)
                    out.push_back(m.snapshot(s).atom_set(f.atom));
                return out;
            }
            case FKind::Near:
            case FKind::Surrounded:
            case FKind::Propagate:
            case FKind::Reach: {
                // Spatial step inside each snapshot, on already-labeled children.
                StLabeling l = eval(*f.lhs);
                StLabeling r = f.rhs ? eval(*f.rhs) : StLabeling{};
                StLabeling out;
                out.reserve(m.state_count());
                const ClosureSpace& sp = m.space();
                for (std::uint32_t s = 0; s < m.state_count(); ++s) {
                    switch (f.kind) {
                        case FKind::Near: out.push_back(sp.closure(l[s])); break;
                        case FKind::Surrounded:
                            out.push_back(opts.oracle_surrounded
                                              ? surrounded_bruteforce(sp, l[s], r[s], opts.bruteforce_cap)
                                              : surrounded_sat(sp, l[s], r[s]));
                            break;
                        case FKind::Propagate: out.push_back(propagate_sat(sp, l[s], r[s])); break;
                        default: out.push_back(reach_sat(sp, l[s], r[s])); break;
                    }
                }
                return out;
            }
            default:
                throw InternalError("unexpected operator after desugaring: " + to_string(f));
        }
    }
};

}  // namespace

StLabeling st_sat_set(const SnapshotModel& model, const FormulaPtr& f, const EvalOptions& opts,
                      StStats* stats) {
    StEvaluator ev{model, opts, stats};
    return ev.eval(*desugar(f));
}

}  // namespace casmc
