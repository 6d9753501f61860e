#include "noma/contention.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace noma {

void ContentionConfig::validate() const {
    if (!(backoff_constant > 0.0)) throw std::invalid_argument("backoff constant must be positive");
    if (!(sensing_window >= 0.0)) throw std::invalid_argument("sensing window must be non-negative");
}

std::vector<double> backoff_times(std::span<const double> rates, const ContentionConfig& cfg) {
    cfg.validate();
    std::vector<double> times;
    times.reserve(rates.size());
    for (double r : rates) {
        if (r < 0.0) throw std::invalid_argument("rates must be non-negative");
        times.push_back(r > 0.0 ? cfg.backoff_constant / r : std::numeric_limits<double>::infinity());
    }
    return times;
}

ContentionOutcome contention_winner(std::span<const double> times, const ContentionConfig& cfg) {
    cfg.validate();
    constexpr double inf = std::numeric_limits<double>::infinity();
    double first = inf, second = inf;
    std::size_t first_index = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (!std::isfinite(t)) continue;
        if (t < first) {
            second = first;
            first = t;
            first_index = i;
        } else if (t < second) {
            second = t;
        }
    }
    if (first == inf) return {ContentionResult::Idle, 0};
    if (second != inf && second - first <= cfg.sensing_window) return {ContentionResult::Collision, 0};
    return {ContentionResult::Winner, first_index};
}

}  // namespace noma
