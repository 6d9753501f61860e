#include "noma/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/normal.hpp>

namespace noma {

namespace {

// Trials are grouped into fixed-size blocks; blocks are reduced in index order
// so the totals never depend on how blocks were spread over workers.
constexpr std::uint64_t kBlockSize = 4096;

/// Neumaier-compensated running sum plus an exact failure count.
struct Accumulator {
    std::uint64_t failures = 0;
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) noexcept {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double total() const noexcept { return sum + comp; }
};

template <class Eval>
std::vector<Accumulator> run_trials(std::size_t slots, std::size_t m, std::uint64_t trials,
                                    std::uint64_t seed, unsigned workers, Eval&& eval) {
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");
    const std::uint64_t blocks = (trials + kBlockSize - 1) / kBlockSize;
    std::vector<Accumulator> per_block(blocks * slots);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        ChannelDraw draw;
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            std::span<Accumulator> acc(per_block.data() + b * slots, slots);
            const std::uint64_t end = std::min(trials, (b + 1) * kBlockSize);
            for (std::uint64_t t = b * kBlockSize; t < end; ++t) {
                TrialStream rng(seed, t);
                sample_draw_into(m, rng, draw);
                eval(draw, acc);
            }
        }
    };

    if (workers == 0) workers = default_workers();
    const auto n_threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    }

    std::vector<Accumulator> totals(slots);
    for (std::size_t s = 0; s < slots; ++s) {
        for (std::uint64_t b = 0; b < blocks; ++b) {
            const auto& a = per_block[b * slots + s];
            totals[s].failures += a.failures;
            totals[s].add(a.total());
        }
    }
    return totals;
}

OutageEstimate finalize(const Accumulator& acc, std::uint64_t trials) {
    OutageEstimate e;
    e.trials = trials;
    e.failures = acc.failures;
    e.p_hat = static_cast<double>(acc.failures) / static_cast<double>(trials);
    std::tie(e.ci_low, e.ci_high) = wilson_interval(acc.failures, trials);
    e.mean_gain = acc.total() / static_cast<double>(trials);
    return e;
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials, double confidence) {
    if (trials == 0) throw std::invalid_argument("wilson_interval needs at least one trial");
    if (failures > trials) throw std::invalid_argument("failures exceed trials");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("confidence must lie in (0, 1)");

    const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;

    double low = failures == 0 ? 0.0 : std::clamp(center - half, 0.0, p);
    double high = failures == trials ? 1.0 : std::clamp(center + half, p, 1.0);
    return {low, high};
}

unsigned default_workers() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<OutageEstimate> estimate_many(std::span<const SchemeId> schemes, const SystemParams& params,
                                          std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (schemes.empty()) return {};
    auto totals = run_trials(schemes.size(), params.m_users(), trials, seed, workers,
                             [&](const ChannelDraw& draw, std::span<Accumulator> acc) {
                                 for (std::size_t k = 0; k < schemes.size(); ++k) {
                                     const auto out = evaluate(schemes[k], params, draw);
                                     acc[k].failures += out.outage ? 1 : 0;
                                     acc[k].add(out.gain);
                                 }
                             });
    std::vector<OutageEstimate> result;
    result.reserve(totals.size());
    for (const auto& t : totals) result.push_back(finalize(t, trials));
    return result;
}

OutageEstimate estimate(SchemeId scheme, const SystemParams& params, std::uint64_t trials,
                        std::uint64_t seed, unsigned workers) {
    const SchemeId one[] = {scheme};
    return estimate_many(one, params, trials, seed, workers).front();
}

OutageEstimate estimate_custom(const TrialFn& fn, std::size_t m, std::uint64_t trials, std::uint64_t seed,
                               unsigned workers) {
    auto totals = run_trials(1, m, trials, seed, workers,
                             [&](const ChannelDraw& draw, std::span<Accumulator> acc) {
                                 const auto r = fn(draw);
                                 acc[0].failures += r.outage ? 1 : 0;
                                 acc[0].add(r.gain);
                             });
    return finalize(totals.front(), trials);
}

void SweepSpec::validate() const {
    if (snr_db_grid.empty()) throw std::invalid_argument("SNR grid is empty");
    if (m_list.empty()) throw std::invalid_argument("user-count list is empty");
    if (schemes.empty()) throw std::invalid_argument("scheme list is empty");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    for (auto m : m_list)
        if (m < 1) throw std::invalid_argument("user counts must be at least 1");
    for (double s : snr_db_grid)
        if (!std::isfinite(s)) throw std::invalid_argument("SNR values must be finite");
    // Rate checks happen in SystemParams.
    SystemParams(1.0, 1, r0, rs);
}

std::uint64_t cell_seed(const SweepSpec& spec, std::size_t cell_index) {
    return derive_seed(spec.seed, cell_index);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.snr_db_grid.size() * spec.m_list.size() * spec.schemes.size());

    std::size_t pair_index = 0;
    for (double snr : spec.snr_db_grid) {
        for (std::size_t m : spec.m_list) {
            const auto params = SystemParams::from_snr_db(snr, m, spec.r0, spec.rs);
            if (spec.shared_draws) {
                const auto seed = cell_seed(spec, pair_index);
                const auto est = estimate_many(spec.schemes, params, spec.trials, seed, workers);
                for (std::size_t k = 0; k < spec.schemes.size(); ++k)
                    rows.push_back({snr, spec.schemes[k], m, seed, est[k]});
            } else {
                for (std::size_t k = 0; k < spec.schemes.size(); ++k) {
                    const auto seed = cell_seed(spec, pair_index * spec.schemes.size() + k);
                    rows.push_back(
                        {snr, spec.schemes[k], m, seed, estimate(spec.schemes[k], params, spec.trials, seed, workers)});
                }
            }
            ++pair_index;
        }
    }
    return rows;
}

}  // namespace noma
