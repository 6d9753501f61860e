#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "noma/channel.hpp"
#include "noma/schemes.hpp"

namespace noma {

struct OutageEstimate {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double mean_gain = 0.0;
};

/// Wilson score interval for `failures` out of `trials` at two-sided
/// `confidence`. Throws std::invalid_argument if trials == 0 or failures > trials.
std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                          double confidence = 0.95);

/// Per-trial evaluator for custom experiments: sets outage flag and gain.
struct TrialResult {
    bool outage = false;
    double gain = 0.0;
};
using TrialFn = std::function<TrialResult(const ChannelDraw&)>;

/// Number of worker threads to use when the caller passes 0.
unsigned default_workers() noexcept;

/// Runs `trials` draws of m secondary users keyed by `seed` and evaluates every
/// scheme on each draw. Results are identical for any `workers` value.
std::vector<OutageEstimate> estimate_many(std::span<const SchemeId> schemes, const SystemParams& params,
                                          std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

OutageEstimate estimate(SchemeId scheme, const SystemParams& params, std::uint64_t trials,
                        std::uint64_t seed, unsigned workers = 0);

OutageEstimate estimate_custom(const TrialFn& fn, std::size_t m, std::uint64_t trials, std::uint64_t seed,
                               unsigned workers = 0);

struct SweepSpec {
    std::vector<double> snr_db_grid;
    std::vector<std::size_t> m_list;
    std::vector<SchemeId> schemes;
    double r0 = 0.2;
    double rs = 1.0;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    /// Every scheme in an (snr, m) cell sees the same draw sequence.
    bool shared_draws = true;

    /// Throws std::invalid_argument on empty grids, zero trials or m == 0.
    void validate() const;

    bool operator==(const SweepSpec&) const = default;
};

struct SweepRow {
    double snr_db = 0.0;
    SchemeId scheme = SchemeId::Hybrid;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    OutageEstimate estimate;
};

/// Seed of an (snr, m) cell in shared-draw mode, or of an (snr, m, scheme)
/// cell otherwise; cells are numbered in emission order.
std::uint64_t cell_seed(const SweepSpec& spec, std::size_t cell_index);

/// One row per (snr, m, scheme), snr outermost, scheme innermost.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers = 0);

}  // namespace noma
