#include "casmc/meanfield.hpp"

#include <cmath>
#include <random>

#include "casmc/errors.hpp"
#include "numfmt.hpp"

namespace casmc {

OccupancyMeasure validated_measure(const OccupancyMeasure& m, const std::string& what) {
    if (m.empty()) throw ModelError(what + ": empty measure");
    double sum = 0.0;
    for (double v : m) {
        if (!std::isfinite(v) || v < -kMeasureTolerance)
            throw ModelError(what + ": entry " + num_to_string(v) + " is negative");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > kMeasureTolerance)
        throw ModelError(what + ": entries sum to " + num_to_string(sum) + ", expected 1");
    OccupancyMeasure out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = std::max(m[i], 0.0) / sum;
    return out;
}

PopulationModel::PopulationModel(std::vector<std::string> states, OccupancyMeasure initial,
                                 const std::vector<TransitionRule>& rules,
                                 std::optional<std::uint64_t> population)
    : states_(std::move(states)), population_(population) {
    if (states_.empty()) throw ModelError("population model needs at least one state");
    for (std::size_t i = 0; i < states_.size(); ++i)
        for (std::size_t j = i + 1; j < states_.size(); ++j)
            if (states_[i] == states_[j]) throw ModelError("state '" + states_[i] + "' declared twice");
    if (initial.size() != states_.size())
        throw ModelError("initial measure has " + std::to_string(initial.size()) + " entries for " +
                         std::to_string(states_.size()) + " states");
    initial_ = validated_measure(initial, "initial measure");

    const std::size_t S = states_.size();
    entries_.assign(S * S, nullptr);
    for (const auto& rule : rules) {
        std::size_t from = state_index(rule.from);
        std::size_t to = state_index(rule.to);
        auto& slot = entries_[from * S + to];
        if (slot) throw ModelError("duplicate rule " + rule.from + " -> " + rule.to);
        slot = resolve(rule.probability, states_);
    }
    if (population_ && *population_ == 0) throw ModelError("population must be positive");
}

bool PopulationModel::has_state(const std::string& name) const {
    for (const auto& s : states_)
        if (s == name) return true;
    return false;
}

std::size_t PopulationModel::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name) return i;
    throw ModelError("unknown state '" + name + "'");
}

std::vector<double> PopulationModel::kernel_at(const OccupancyMeasure& m,
                                               std::optional<std::size_t> step) const {
    const std::size_t S = states_.size();
    if (m.size() != S) throw ModelError("measure size does not match state count");

    std::vector<double> K(S * S, 0.0);
    for (std::size_t s = 0; s < S; ++s) {
        double listed = 0.0;
        for (std::size_t t = 0; t < S; ++t) {
            const ExprPtr& e = entries_[s * S + t];
            if (!e) continue;
            double v = eval(*e, m);
            if (!std::isfinite(v) || v < -kMeasureTolerance || v > 1.0 + kMeasureTolerance)
                throw KernelError("kernel entry outside [0,1]", states_[s], states_[t], v, step);
            v = std::min(std::max(v, 0.0), 1.0);
            K[s * S + t] = v;
            listed += v;
        }
        // Unlisted mass stays put.
        double stay = 1.0 - listed;
        if (stay < -kMeasureTolerance)
            throw KernelError("listed row mass exceeds 1", states_[s], states_[s], listed, step);
        K[s * S + s] += std::max(stay, 0.0);

        double total = 0.0;
        for (std::size_t t = 0; t < S; ++t) total += K[s * S + t];
        if (std::fabs(total - 1.0) > kMeasureTolerance)
            throw KernelError("row sum off by more than 1e-9", states_[s], states_[s], total, step);
        for (std::size_t t = 0; t < S; ++t) K[s * S + t] /= total;
    }
    return K;
}

OccupancyMeasure mf_step(const PopulationModel& model, const OccupancyMeasure& m,
                         std::optional<std::size_t> step) {
    const std::size_t S = model.state_count();
    OccupancyMeasure in = validated_measure(m, "mf_step input");
    std::vector<double> K = model.kernel_at(in, step);

    OccupancyMeasure out(S, 0.0);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t t = 0; t < S; ++t) out[t] += in[s] * K[s * S + t];

    double sum = 0.0;
    for (double v : out) sum += v;
    if (std::fabs(sum - 1.0) > kMeasureTolerance)
        throw InternalError("mf_step drifted off the simplex: sum " + num_to_string(sum));
    for (double& v : out) v /= sum;
    return out;
}

std::vector<OccupancyMeasure> mf_trajectory(const PopulationModel& model, std::size_t horizon) {
    std::vector<OccupancyMeasure> traj;
    traj.reserve(horizon + 1);
    traj.push_back(model.initial_measure());
    for (std::size_t t = 0; t < horizon; ++t) traj.push_back(mf_step(model, traj.back(), t));
    return traj;
}

namespace {

// 53-bit uniform double in [0, 1).
inline double next_u53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SimulationResult fast_simulate(const PopulationModel& model, std::size_t tagged_count,
                               std::size_t horizon, std::uint64_t seed,
                               const std::string& start_state) {
    if (tagged_count == 0) throw ModelError("tagged_count must be at least 1");
    const std::size_t S = model.state_count();

    std::size_t start;
    if (start_state.empty()) {
        start = 0;
        while (start < S && model.initial_measure()[start] <= 0.0) ++start;
        if (start == S) throw InternalError("initial measure has no positive entry");
    } else {
        if (!model.has_state(start_state))
            throw ModelError("invalid seed state name '" + start_state + "'");
        start = model.state_index(start_state);
    }

    // Kernels along the deterministic trajectory, shared by all objects.
    std::vector<OccupancyMeasure> traj = mf_trajectory(model, horizon > 0 ? horizon - 1 : 0);
    std::vector<std::vector<double>> kernels;
    kernels.reserve(horizon);
    for (std::size_t t = 0; t < horizon; ++t) kernels.push_back(model.kernel_at(traj[t], t));

    SimulationResult result;
    result.seed = seed;
    result.rng_id = "mt19937_64/u53";
    result.traces.reserve(tagged_count);

    std::mt19937_64 rng(seed);
    for (std::size_t obj = 0; obj < tagged_count; ++obj) {
        std::vector<std::uint32_t> trace;
        trace.reserve(horizon + 1);
        std::uint32_t s = static_cast<std::uint32_t>(start);
        trace.push_back(s);
        for (std::size_t t = 0; t < horizon; ++t) {
            const double u = next_u53(rng);
            const double* row = kernels[t].data() + static_cast<std::size_t>(s) * S;
            double cum = 0.0;
            std::uint32_t chosen = static_cast<std::uint32_t>(S - 1);
            for (std::size_t j = 0; j < S; ++j) {
                cum += row[j];
                if (u < cum) {
                    chosen = static_cast<std::uint32_t>(j);
                    break;
                }
            }
            s = chosen;
            trace.push_back(s);
        }
        result.traces.push_back(std::move(trace));
    }
    return result;
}

}  // namespace casmc
