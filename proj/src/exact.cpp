#include <cstdint>
#include <functional>
#include <vector>

#include "casmc/errors.hpp"
#include "casmc/meanfield.hpp"

namespace casmc {

namespace {

// Compositions of M into S ordered non-negative parts, enumerated in a
// fixed lexicographic order.
void for_each_composition(std::size_t S, std::uint32_t M,
                          const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::uint32_t> vec(S, 0);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos, std::uint32_t rest) {
        if (pos + 1 == S) {
            vec[pos] = rest;
            fn(vec);
            return;
        }
        for (std::uint32_t v = 0; v <= rest; ++v) {
            vec[pos] = v;
            rec(pos + 1, rest - v);
        }
    };
    rec(0, M);
}

std::size_t composition_count(std::size_t S, std::size_t N, std::size_t cap) {
    // C(N+S-1, S-1) with early bail-out above cap.
    std::uint64_t num = 1;
    for (std::size_t i = 1; i < S; ++i) {
        num = num * (N + i) / i;  // exact: product of i consecutive integers divides by i!
        if (num > cap * 16ULL) return cap + 1;
    }
    return static_cast<std::size_t>(num);
}

// Mixed-radix flat layout over the first S-1 components (the last one is
// implied by the running total), with dense scratch buffers reused by the
// per-object placement DP.
struct CountLayout {
    std::size_t S;
    std::uint32_t N;
    std::vector<std::uint64_t> strides;
    std::size_t cells = 1;

    CountLayout(std::size_t S_, std::uint32_t N_, std::size_t max_cells) : S(S_), N(N_) {
        for (std::size_t i = 0; i + 1 < S; ++i) {
            strides.push_back(cells);
            if (cells > max_cells / (N + 1) + 1) throw InfeasibleError("exact_count_dtmc: dense scratch layout too large");
            cells *= N + 1;
        }
        if (cells > max_cells)
            throw InfeasibleError("exact_count_dtmc: dense scratch layout needs " +
                                  std::to_string(cells) + " cells");
    }

    std::uint64_t flat(const std::vector<std::uint32_t>& vec) const {
        std::uint64_t f = 0;
        for (std::size_t i = 0; i + 1 < S; ++i) f += vec[i] * strides[i];
        return f;
    }
};

// Distributes `count` objects with destination probabilities `probs` on
// top of the layer currently held in `a`, advancing `placed`.
void place_objects(const CountLayout& layout, std::uint32_t count, const double* probs,
                   std::vector<double>& a, std::vector<double>& b, std::uint32_t& placed) {
    const std::size_t S = layout.S;
    for (std::uint32_t obj = 0; obj < count; ++obj) {
        for_each_composition(S, placed + 1, [&](const std::vector<std::uint32_t>& vec) {
            b[layout.flat(vec)] = 0.0;
        });
        for_each_composition(S, placed, [&](const std::vector<std::uint32_t>& vec) {
            const double w = a[layout.flat(vec)];
            if (w == 0.0) return;
            const std::uint64_t f = layout.flat(vec);
            for (std::size_t j = 0; j + 1 < S; ++j)
                if (probs[j] != 0.0) b[f + layout.strides[j]] += w * probs[j];
            if (probs[S - 1] != 0.0) b[f] += w * probs[S - 1];
        });
        std::swap(a, b);
        ++placed;
    }
}

}  // namespace

std::vector<OccupancyMeasure> exact_count_dtmc(const PopulationModel& model, std::size_t N,
                                               std::size_t horizon, const ExactOptions& opts) {
    if (N == 0) throw ModelError("population N must be positive");
    const std::size_t S = model.state_count();
    const std::size_t vec_count = composition_count(S, N, opts.max_count_vectors);
    if (vec_count > opts.max_count_vectors)
        throw InfeasibleError("exact_count_dtmc: " + std::to_string(vec_count) +
                              " count vectors exceed cap " + std::to_string(opts.max_count_vectors));

    const CountLayout layout(S, static_cast<std::uint32_t>(N), opts.max_dense_cells);

    // Rank all full count vectors.
    std::vector<std::vector<std::uint32_t>> vecs;
    vecs.reserve(vec_count);
    std::vector<std::int32_t> rank_of(layout.cells, -1);
    for_each_composition(S, static_cast<std::uint32_t>(N), [&](const std::vector<std::uint32_t>& vec) {
        rank_of[layout.flat(vec)] = static_cast<std::int32_t>(vecs.size());
        vecs.push_back(vec);
    });

    std::vector<double> a(layout.cells, 0.0), b(layout.cells, 0.0);

    // Initial distribution: N objects drawn i.i.d. from the initial measure.
    const OccupancyMeasure& m0 = model.initial_measure();
    std::vector<double> dist(vecs.size(), 0.0);
    {
        a[0] = 1.0;
        std::uint32_t placed = 0;
        place_objects(layout, static_cast<std::uint32_t>(N), m0.data(), a, b, placed);
        for (std::size_t r = 0; r < vecs.size(); ++r) dist[r] = a[layout.flat(vecs[r])];
    }

    // One-step transition rows, built lazily; the count chain is
    // time-homogeneous because the kernel depends only on n/N.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(vecs.size());
    std::vector<char> row_built(vecs.size(), 0);
    auto build_row = [&](std::size_t r) {
        OccupancyMeasure m(S);
        for (std::size_t i = 0; i < S; ++i) m[i] = static_cast<double>(vecs[r][i]) / static_cast<double>(N);
        const std::vector<double> K = model.kernel_at(m);

        std::fill(a.begin(), a.end(), 0.0);
        a[0] = 1.0;
        std::uint32_t placed = 0;
        for (std::size_t s = 0; s < S; ++s)
            place_objects(layout, vecs[r][s], K.data() + s * S, a, b, placed);

        auto& row = rows[r];
        for_each_composition(S, static_cast<std::uint32_t>(N), [&](const std::vector<std::uint32_t>& vec) {
            const double w = a[layout.flat(vec)];
            if (w != 0.0) row.emplace_back(static_cast<std::uint32_t>(rank_of[layout.flat(vec)]), w);
        });
        row_built[r] = 1;
    };

    std::vector<OccupancyMeasure> expected;
    expected.reserve(horizon + 1);
    auto record = [&]() {
        OccupancyMeasure e(S, 0.0);
        for (std::size_t r = 0; r < vecs.size(); ++r) {
            if (dist[r] == 0.0) continue;
            for (std::size_t i = 0; i < S; ++i)
                e[i] += dist[r] * static_cast<double>(vecs[r][i]) / static_cast<double>(N);
        }
        expected.push_back(std::move(e));
    };

    record();
    std::vector<double> next(vecs.size(), 0.0);
    for (std::size_t t = 0; t < horizon; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t r = 0; r < vecs.size(); ++r) {
            if (dist[r] == 0.0) continue;
            if (!row_built[r]) build_row(r);
            for (const auto& [dest, w] : rows[r]) next[dest] += dist[r] * w;
        }
        dist.swap(next);
        record();
    }
    return expected;
}

}  // namespace casmc
