#include "noma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma {

double cr_admission_prob(const SystemParams& params, bool g_equal) {
    const double c0 = std::exp2(params.r0()) - 1.0;
    const double p = params.p_linear();
    if (!g_equal) return std::exp(-c0 / p) / (1.0 + c0);
    if (params.r0() >= 1.0)
        throw std::domain_error("equal-channel admission probability requires R0 < 1");
    return std::exp(-c0 / (p * (2.0 - std::exp2(params.r0()))));
}

FloorResult csi_floor(std::size_t m, double rs, FloorMethod method) {
    if (m < 1) throw std::invalid_argument("csi_floor needs m >= 1");
    const double c = std::exp2(rs) - 1.0;
    const int mm = static_cast<int>(m);
    double value = 0.0;
    if (method == FloorMethod::ClosedForm) {
        // E[(1 - e^{-cY})^M], Y ~ Exp(1), expanded binomially.
        double binom = 1.0;
        for (int k = 0; k <= mm; ++k) {
            value += (k % 2 == 0 ? binom : -binom) / (1.0 + k * c);
            binom = binom * (mm - k) / (k + 1);
        }
    } else {
        value = integrate_unit_tail(
            [c, m](double y) { return std::exp(-y) * std::pow(-std::expm1(-c * y), double(m)); });
    }
    return {std::clamp(value, 0.0, 1.0), method};
}

FloorResult qos_floor(std::size_t m, double r0, FloorMethod method) {
    if (m < 1) throw std::invalid_argument("qos_floor needs m >= 1");
    const double c0 = std::exp2(r0) - 1.0;
    const double md = static_cast<double>(m);
    double value = 0.0;
    if (method == FloorMethod::ClosedForm) {
        value = c0 / (md + c0);
    } else {
        value = integrate_unit_tail(
            [c0, md](double x) { return md * std::exp(-md * x) * -std::expm1(-c0 * x); });
    }
    return {std::clamp(value, 0.0, 1.0), method};
}

bool hybrid_bound_applicable(double r0, double rs) noexcept {
    return (std::exp2(rs) - 1.0) * (std::exp2(r0) - 1.0) < 1.0;
}

double hybrid_outage_bound(const SystemParams& params) {
    if (!hybrid_bound_applicable(params.r0(), params.rs()))
        throw std::domain_error("hybrid outage bound requires (2^Rs - 1)(2^R0 - 1) < 1");
    const double c0 = std::exp2(params.r0()) - 1.0;
    const double cs = std::exp2(params.rs()) - 1.0;
    const double x = std::exp2(params.rs()) / (params.p_linear() * (1.0 / c0 - cs));
    return -std::expm1(-x);
}

}  // namespace noma
