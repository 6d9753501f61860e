#pragma once

// Test-only reference computations, kept independent of the library code paths.

#include <algorithm>
#include <cmath>
#include <vector>

namespace noma::oracle {

/// Composite Simpson rule on [a, b].
template <class F>
double simpson(F&& f, double a, double b, int panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Hybrid-SIC outage computed without simulation.
///
/// Given |h0|^2 = x, every secondary user's rate depends only on its own gain,
/// so the admitted user is in outage iff each of the M i.i.d. users is. With
/// tau = max(0, x/c0 - 1/P), a = cs (1 + P x) / P and b = cs / P, a single user
/// fails with probability q(x) = (1 - e^{-min(tau, b)}) + max(0, e^{-tau} - e^{-a}),
/// and the outage is E[q(x)^M] over x ~ Exp(1). The integral is split at the
/// kinks of q and on a logarithmic grid so that tiny probabilities keep their
/// relative accuracy.
inline double hybrid_outage_exact(double p, int m, double r0, double rs) {
    const double c0 = std::exp2(r0) - 1.0;
    const double cs = std::exp2(rs) - 1.0;
    auto q = [&](double x) {
        const double tau = std::max(0.0, x / c0 - 1.0 / p);
        const double a = cs * (1.0 + p * x) / p;
        const double b = cs / p;
        return -std::expm1(-std::min(tau, b)) + std::max(0.0, std::exp(-tau) - std::exp(-a));
    };
    auto integrand = [&](double x) { return std::exp(-x) * std::pow(q(x), m); };

    std::vector<double> cuts = {0.0, 40.0, c0 / p, c0 * (1.0 + cs) / p};
    if (cs * c0 < 1.0) cuts.push_back(std::exp2(rs) / (p * (1.0 / c0 - cs)));
    for (double e = -14; e <= 1.5; e += 0.25) cuts.push_back(std::pow(10.0, e));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i] < 40.0) total += simpson(integrand, cuts[i], std::min(cuts[i + 1], 40.0), 400);
    return total;
}

}  // namespace noma::oracle
