#include "noma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace noma {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kCellSalt = 0x8CB92BA72F3D8DD7ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master ^ kCellSalt) + kGolden * (index + 1));
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t index) noexcept
    : key_(mix64(mix64(seed + kStreamSalt) ^ mix64(index * kGolden + kStreamSalt))) {}

TrialStream::result_type TrialStream::operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double TrialStream::uniform() noexcept {
    const double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : std::numeric_limits<double>::denorm_min();
}

double TrialStream::exponential() noexcept { return -std::log(uniform()); }

void sample_draw_into(std::size_t m, TrialStream& rng, ChannelDraw& out) {
    out.primary_gain = rng.exponential();
    out.secondary_gains.resize(m);
    for (auto& g : out.secondary_gains) g = rng.exponential();
    std::sort(out.secondary_gains.begin(), out.secondary_gains.end());
}

ChannelDraw sample_draw(std::size_t m, TrialStream& rng) {
    ChannelDraw draw;
    sample_draw_into(m, rng, draw);
    return draw;
}

std::size_t exceedance_count(const ChannelDraw& draw, double threshold) {
    const auto& g = draw.secondary_gains;
    return static_cast<std::size_t>(
        std::count_if(g.begin(), g.end(), [threshold](double x) { return x > threshold; }));
}

}  // namespace noma
