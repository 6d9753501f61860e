#pragma once

#include <cstddef>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "noma/schemes.hpp"

namespace noma {

enum class FloorMethod { ClosedForm, Quadrature };

struct FloorResult {
    double value = 0.0;
    FloorMethod method = FloorMethod::ClosedForm;
};

/// Probability that CR-NOMA admits the secondary user.
///
/// With `g_equal` the primary and secondary share one Rayleigh channel
/// (h0 = hn), giving exp(-(2^R0 - 1) / (P (2 - 2^R0))); this requires R0 < 1 and
/// throws std::domain_error otherwise. Without it the two gains are independent
/// unit exponentials and the probability is exp(-c0/P) / (1 + c0), c0 = 2^R0 - 1.
double cr_admission_prob(const SystemParams& params, bool g_equal);

/// High-SNR outage floor of CSI-ordered SIC with the strongest of m users:
/// P(|hM|^2 < (2^rs - 1) |h0|^2).
FloorResult csi_floor(std::size_t m, double rs, FloorMethod method = FloorMethod::ClosedForm);

/// High-SNR outage floor of QoS-ordered SIC with the weakest of m users:
/// P(|h0|^2 < (2^r0 - 1) |h1|^2).
FloorResult qos_floor(std::size_t m, double r0, FloorMethod method = FloorMethod::ClosedForm);

/// True when (2^Rs - 1)(2^R0 - 1) < 1, the regime where the hybrid outage
/// bound exists.
bool hybrid_bound_applicable(double r0, double rs) noexcept;

/// Upper bound on the hybrid-SIC outage term that survives at high SNR:
/// P(|h0|^2 < 2^Rs / (P (1/(2^R0 - 1) - (2^Rs - 1)))). Throws std::domain_error
/// outside the applicable regime.
double hybrid_outage_bound(const SystemParams& params);

inline constexpr double kQuadratureUpper = 40.0;

/// Adaptive Gauss-Kronrod integration on [0, 40]. The exponential tails of the
/// floor integrands beyond 40 are below e^-40.
template <class F>
double integrate_unit_tail(F&& f, double rel_tol = 1e-10) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, kQuadratureUpper, 20,
                                                                         rel_tol);
}

}  // namespace noma
