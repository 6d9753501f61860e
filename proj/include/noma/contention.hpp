#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace noma {

/// Backoff timer settings for distributed admission. Times are in seconds.
struct ContentionConfig {
    double backoff_constant = 1.0;
    /// Two timers closer than this cannot be told apart and collide.
    double sensing_window = 0.0;

    /// Throws std::invalid_argument unless backoff_constant > 0 and sensing_window >= 0.
    void validate() const;
};

enum class ContentionResult { Winner, Collision, Idle };

struct ContentionOutcome {
    ContentionResult result = ContentionResult::Idle;
    std::size_t winner = 0;  // valid only for ContentionResult::Winner
};

/// t_n = backoff_constant / rate_n. Users with rate 0 abstain and get +inf.
/// When every rate is zero all entries are +inf and contention_winner reports Idle.
std::vector<double> backoff_times(std::span<const double> rates, const ContentionConfig& cfg);

/// Resolves the race between the two earliest finite timers.
ContentionOutcome contention_winner(std::span<const double> times, const ContentionConfig& cfg);

}  // namespace noma
