#include <cstdint>
#include <unordered_map>
#include <vector>

#include "casmc/errors.hpp"
#include "casmc/meanfield.hpp"

namespace casmc {

namespace {

// Per-formula static context shared by both checkers: resolved atoms,
// occupancy-predicate coefficient vectors and node numbering.
struct FormulaContext {
    const PopulationModel& model;
    std::unordered_map<const PctlFormula*, std::size_t> atom_index;
    std::unordered_map<const PctlFormula*, std::vector<std::pair<std::size_t, double>>> occ_terms;
    std::unordered_map<const PctlFormula*, std::uint32_t> prob_ids;

    FormulaContext(const PopulationModel& m, const PctlFormula& root) : model(m) { visit(root); }

    void visit(const PctlFormula& f) {
        switch (f.kind) {
            case PfKind::True: break;
            case PfKind::LocalAtom:
                atom_index.emplace(&f, model.state_index(f.atom));
                break;
            case PfKind::OccPredicate: {
                std::vector<std::pair<std::size_t, double>> terms;
                terms.reserve(f.terms.size());
                for (const auto& t : f.terms) terms.emplace_back(model.state_index(t.state), t.coeff);
                occ_terms.emplace(&f, std::move(terms));
                break;
            }
            case PfKind::Not: visit(*f.lhs); break;
            case PfKind::And:
                visit(*f.lhs);
                visit(*f.rhs);
                break;
            case PfKind::Prob: {
                prob_ids.emplace(&f, static_cast<std::uint32_t>(prob_ids.size()));
                visit(*f.path->f1);
                if (f.path->f2) visit(*f.path->f2);
                break;
            }
        }
    }

    bool occ_holds(const PctlFormula& f, const OccupancyMeasure& m) const {
        double lhs = 0.0;
        for (const auto& [idx, coeff] : occ_terms.at(&f)) lhs += coeff * m[idx];
        return compare(f.cmp, lhs, f.bound);
    }
};

class OnTheFlyChecker {
public:
    OnTheFlyChecker(const PopulationModel& model, const PctlFormulaPtr& root,
                    std::size_t extra_horizon = 0)
        : model_(model), root_(root), ctx_(model, *root), S_(model.state_count()) {
        horizon_ = pctl_horizon(*root) + extra_horizon;
        traj_ = mf_trajectory(model_, horizon_);
        kernels_.reserve(horizon_);
        for (std::size_t t = 0; t < horizon_; ++t) kernels_.push_back(model_.kernel_at(traj_[t], t));
        audit_.prob_subformulas = count_prob_subformulas(*root);
        audit_.horizon = horizon_;
    }

    bool holds(const PctlFormula& f, std::size_t s, std::size_t t) {
        switch (f.kind) {
            case PfKind::True: return true;
            case PfKind::LocalAtom: return ctx_.atom_index.at(&f) == s;
            case PfKind::OccPredicate: return ctx_.occ_holds(f, traj_[t]);
            case PfKind::Not: return !holds(*f.lhs, s, t);
            case PfKind::And: return holds(*f.lhs, s, t) && holds(*f.rhs, s, t);
            case PfKind::Prob: return compare(f.cmp, prob_of(f, s, t), f.bound);
        }
        throw InternalError("unknown pctl formula kind");
    }

    // Path probability of a Prob node evaluated at (s, t); memoized per
    // (subformula, state, time).
    double prob_of(const PctlFormula& f, std::size_t s, std::size_t t) {
        const std::uint64_t key = memo_key(ctx_.prob_ids.at(&f), s, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const PctlPath& p = *f.path;
        double v;
        if (p.is_next) {
            const double* row = kernel_row(t, s);
            double sum = 0.0;
            std::size_t expanded = 0;
            for (std::size_t q = 0; q < S_; ++q) {
                if (row[q] == 0.0) continue;
                ++expanded;
                if (holds(*p.f1, q, t + 1)) sum += row[q];
            }
            note_expansion(expanded);
            v = sum;
        } else {
            UntilTable table(S_ * (p.bound + 1));
            v = until_rec(p, s, t, t, table);
        }
        memo_.emplace(key, v);
        audit_.memo_entries = memo_.size();
        return v;
    }

    ExpansionAudit audit() const { return audit_; }

private:
    struct UntilSlot {
        double value = 0.0;
        bool computed = false;
    };
    using UntilTable = std::vector<UntilSlot>;

    // Depth-first expansion of Φ1 U≤k Φ2 started at time t0; the table is
    // per-evaluation scratch indexed by (state, t - t0).
    double until_rec(const PctlPath& p, std::size_t s, std::size_t t, std::size_t t0,
                     UntilTable& table) {
        UntilSlot& slot = table[s * (p.bound + 1) + (t - t0)];
        if (slot.computed) return slot.value;

        double v;
        if (holds(*p.f2, s, t)) {
            v = 1.0;
        } else if (t == t0 + p.bound || !holds(*p.f1, s, t)) {
            v = 0.0;
        } else {
            const double* row = kernel_row(t, s);
            double sum = 0.0;
            std::size_t expanded = 0;
            for (std::size_t q = 0; q < S_; ++q) {
                if (row[q] == 0.0) continue;
                ++expanded;
                sum += row[q] * until_rec(p, q, t + 1, t0, table);
            }
            note_expansion(expanded);
            v = sum;
        }
        slot.value = v;
        slot.computed = true;
        return v;
    }

    const double* kernel_row(std::size_t t, std::size_t s) {
        if (t >= kernels_.size()) throw InternalError("time index beyond computed horizon");
        return kernels_[t].data() + s * S_;
    }

    void note_expansion(std::size_t successors) {
        ++audit_.nodes_expanded;
        if (successors > audit_.max_successors_per_node) audit_.max_successors_per_node = successors;
    }

    std::uint64_t memo_key(std::uint32_t node, std::size_t s, std::size_t t) const {
        return (static_cast<std::uint64_t>(node) * S_ + s) * (horizon_ + 2) + t;
    }

    const PopulationModel& model_;
    PctlFormulaPtr root_;
    FormulaContext ctx_;
    std::size_t S_;
    std::size_t horizon_ = 0;
    std::vector<OccupancyMeasure> traj_;
    std::vector<std::vector<double>> kernels_;
    std::unordered_map<std::uint64_t, double> memo_;
    ExpansionAudit audit_;
};

// Dense bottom-up evaluation over the materialized (state, time) grid.
class NaiveChecker {
public:
    NaiveChecker(const PopulationModel& model, const PctlFormulaPtr& root, std::size_t cell_cap)
        : model_(model), root_(root), ctx_(model, *root), S_(model.state_count()) {
        horizon_ = pctl_horizon(*root);
        if (S_ * (horizon_ + 1) > cell_cap)
            throw InfeasibleError("time-expanded chain needs " + std::to_string(S_ * (horizon_ + 1)) +
                                  " cells, cap is " + std::to_string(cell_cap));
        traj_ = mf_trajectory(model_, horizon_);
        kernels_.reserve(horizon_);
        for (std::size_t t = 0; t < horizon_; ++t) kernels_.push_back(model_.kernel_at(traj_[t], t));
        assign_need(*root, 0);
    }

    bool verdict(std::size_t s0) { return sat(*root_)[s0] != 0; }

    std::optional<double> root_probability(std::size_t s0) {
        if (root_->kind != PfKind::Prob) return std::nullopt;
        return prob_table(*root_)[s0];
    }

private:
    // table[t*S + s]; each node is materialized up to the largest time it
    // is evaluated at.
    using Table = std::vector<char>;

    void assign_need(const PctlFormula& f, std::size_t t) {
        auto [it, inserted] = need_.emplace(&f, t);
        if (!inserted && it->second >= t) return;
        it->second = std::max(it->second, t);
        switch (f.kind) {
            case PfKind::Not: assign_need(*f.lhs, t); break;
            case PfKind::And:
                assign_need(*f.lhs, t);
                assign_need(*f.rhs, t);
                break;
            case PfKind::Prob:
                if (f.path->is_next) {
                    assign_need(*f.path->f1, t + 1);
                } else {
                    assign_need(*f.path->f1, t + f.path->bound);
                    assign_need(*f.path->f2, t + f.path->bound);
                }
                break;
            default: break;
        }
    }

    const Table& sat(const PctlFormula& f) {
        if (auto it = sat_.find(&f); it != sat_.end()) return it->second;
        const std::size_t tmax = need_.at(&f);
        Table table((tmax + 1) * S_, 0);
        switch (f.kind) {
            case PfKind::True:
                std::fill(table.begin(), table.end(), 1);
                break;
            case PfKind::LocalAtom: {
                const std::size_t idx = ctx_.atom_index.at(&f);
                for (std::size_t t = 0; t <= tmax; ++t) table[t * S_ + idx] = 1;
                break;
            }
            case PfKind::OccPredicate:
                for (std::size_t t = 0; t <= tmax; ++t) {
                    const char v = ctx_.occ_holds(f, traj_[t]) ? 1 : 0;
                    for (std::size_t s = 0; s < S_; ++s) table[t * S_ + s] = v;
                }
                break;
            case PfKind::Not: {
                const Table& a = sat(*f.lhs);
                for (std::size_t i = 0; i < table.size(); ++i) table[i] = a[i] ? 0 : 1;
                break;
            }
            case PfKind::And: {
                const Table& a = sat(*f.lhs);
                const Table& b = sat(*f.rhs);
                for (std::size_t i = 0; i < table.size(); ++i) table[i] = (a[i] && b[i]) ? 1 : 0;
                break;
            }
            case PfKind::Prob: {
                const std::vector<double>& prob = prob_table(f);
                for (std::size_t i = 0; i < table.size(); ++i)
                    table[i] = compare(f.cmp, prob[i], f.bound) ? 1 : 0;
                break;
            }
        }
        return sat_.emplace(&f, std::move(table)).first->second;
    }

    // prob[t*S + s] for t up to the node's need.
    const std::vector<double>& prob_table(const PctlFormula& f) {
        if (auto it = prob_.find(&f); it != prob_.end()) return it->second;
        const std::size_t tmax = need_.at(&f);
        const PctlPath& p = *f.path;
        std::vector<double> out((tmax + 1) * S_, 0.0);
        if (p.is_next) {
            const Table& a = sat(*p.f1);
            for (std::size_t t = 0; t <= tmax; ++t) {
                const std::vector<double>& K = kernels_[t];
                for (std::size_t s = 0; s < S_; ++s) {
                    double sum = 0.0;
                    for (std::size_t q = 0; q < S_; ++q)
                        if (a[(t + 1) * S_ + q]) sum += K[s * S_ + q];
                    out[t * S_ + s] = sum;
                }
            }
        } else {
            const Table& a = sat(*p.f1);
            const Table& b = sat(*p.f2);
            // q_j over the full time range; two rolling layers.
            const std::size_t span = tmax + p.bound + 1;
            std::vector<double> prev(span * S_, 0.0), cur(span * S_, 0.0);
            for (std::size_t j = 0; j <= p.bound; ++j) {
                for (std::size_t t = 0; t + j <= tmax + p.bound; ++t) {
                    for (std::size_t s = 0; s < S_; ++s) {
                        double v;
                        if (b[t * S_ + s]) {
                            v = 1.0;
                        } else if (j == 0 || !a[t * S_ + s]) {
                            v = 0.0;
                        } else {
                            const std::vector<double>& K = kernels_[t];
                            double sum = 0.0;
                            for (std::size_t q = 0; q < S_; ++q)
                                sum += K[s * S_ + q] * prev[(t + 1) * S_ + q];
                            v = sum;
                        }
                        cur[t * S_ + s] = v;
                    }
                }
                std::swap(prev, cur);
            }
            for (std::size_t t = 0; t <= tmax; ++t)
                for (std::size_t s = 0; s < S_; ++s) out[t * S_ + s] = prev[t * S_ + s];
        }
        return prob_.emplace(&f, std::move(out)).first->second;
    }

    const PopulationModel& model_;
    PctlFormulaPtr root_;
    FormulaContext ctx_;
    std::size_t S_;
    std::size_t horizon_ = 0;
    std::vector<OccupancyMeasure> traj_;
    std::vector<std::vector<double>> kernels_;
    std::unordered_map<const PctlFormula*, std::size_t> need_;
    std::unordered_map<const PctlFormula*, Table> sat_;
    std::unordered_map<const PctlFormula*, std::vector<double>> prob_;
};

}  // namespace

CheckResult pctl_check(const PopulationModel& model, const std::string& s0, const PctlFormulaPtr& f) {
    const std::size_t start = model.state_index(s0);
    OnTheFlyChecker checker(model, f);
    CheckResult result;
    result.verdict = checker.holds(*f, start, 0);
    if (f->kind == PfKind::Prob) result.probability = checker.prob_of(*f, start, 0);
    result.audit = checker.audit();
    return result;
}

double prob_until(const PopulationModel& model, const std::string& state, std::size_t t,
                  std::size_t k, const PctlFormulaPtr& f1, const PctlFormulaPtr& f2) {
    PctlFormulaPtr probe = PctlFormula::prob(CmpOp::GE, 0.0, PctlPath::until(f1, k, f2));
    OnTheFlyChecker checker(model, probe, t);
    return checker.prob_of(*probe, model.state_index(state), t);
}

CheckResult pctl_check_naive(const PopulationModel& model, const std::string& s0,
                             const PctlFormulaPtr& f, std::size_t cell_cap) {
    const std::size_t start = model.state_index(s0);
    NaiveChecker checker(model, f, cell_cap);
    CheckResult result;
    result.verdict = checker.verdict(start);
    result.probability = checker.root_probability(start);
    result.audit.prob_subformulas = count_prob_subformulas(*f);
    result.audit.horizon = pctl_horizon(*f);
    return result;
}

}  // namespace casmc
