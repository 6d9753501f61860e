#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace noma {

/// Counter-based random stream. Output k of the stream keyed by (seed, index)
/// is a pure function of (seed, index, k), so trial i sees the same numbers no
/// matter which worker runs it or in what order.
class TrialStream {
public:
    using result_type = std::uint64_t;

    TrialStream(std::uint64_t seed, std::uint64_t index) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept;

    /// Uniform on (0, 1). A zero draw is remapped to the smallest positive
    /// double so that -log(u) stays finite.
    double uniform() noexcept;

    /// Unit-mean exponential variate by inversion.
    double exponential() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for sweep cell `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// One fading realization: |h0|^2 and the ascending secondary gains
/// |h1|^2 <= ... <= |hM|^2.
struct ChannelDraw {
    double primary_gain = 0.0;
    std::vector<double> secondary_gains;
};

/// Draws |h0|^2 first, then m secondary gains, then sorts the secondaries.
ChannelDraw sample_draw(std::size_t m, TrialStream& rng);

/// Same as sample_draw but reuses `out`'s storage.
void sample_draw_into(std::size_t m, TrialStream& rng, ChannelDraw& out);

/// Number of secondary gains strictly above `threshold`.
std::size_t exceedance_count(const ChannelDraw& draw, double threshold);

}  // namespace noma
