#include "noma/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma {

SystemParams::SystemParams(double p_linear, std::size_t m_users, double r0, double rs)
    : p_(p_linear), m_(m_users), r0_(r0), rs_(rs) {
    if (!(p_linear > 0.0) || !std::isfinite(p_linear))
        throw std::invalid_argument("transmit SNR must be positive and finite");
    if (m_users < 1) throw std::invalid_argument("need at least one secondary user");
    if (!(r0 > 0.0)) throw std::invalid_argument("primary target rate must be positive");
    if (!(rs > 0.0)) throw std::invalid_argument("secondary target rate must be positive");
}

SystemParams SystemParams::from_snr_db(double snr_db, std::size_t m_users, double r0, double rs) {
    return SystemParams(std::pow(10.0, snr_db / 10.0), m_users, r0, rs);
}

std::string_view scheme_name(SchemeId id) noexcept {
    switch (id) {
        case SchemeId::CrNoma: return "cr_noma";
        case SchemeId::Sgf1: return "sgf1";
        case SchemeId::Sgf2: return "sgf2";
        case SchemeId::Hybrid: return "hybrid";
    }
    return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
    for (auto id : {SchemeId::CrNoma, SchemeId::Sgf1, SchemeId::Sgf2, SchemeId::Hybrid})
        if (scheme_name(id) == name) return id;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

double oma_rate(double p_oma, double gain) { return 0.5 * std::log2(1.0 + p_oma * gain); }

NomaRates pd_noma_rates(const SystemParams& params, double g0, double gn) {
    const double p = params.p_linear();
    return {std::log2(1.0 + p * gn / (1.0 + p * g0)), std::log2(1.0 + p * g0)};
}

double primary_first_rate(double p_linear, double g0, double gn) {
    return std::log2(1.0 + p_linear * g0 / (1.0 + p_linear * gn));
}

bool primary_qos_met(const SystemParams& params, double g0, double gn) {
    return primary_first_rate(params.p_linear(), g0, gn) >= params.r0();
}

namespace {

double interference_free_rate(double p, double gn) { return std::log2(1.0 + p * gn); }

double csi_order_rate(double p, double g0, double gn) {
    return std::log2(1.0 + p * gn / (1.0 + p * g0));
}

SchemeOutcome admit(std::size_t index, DecodingOrder order, double rate, double rs) {
    SchemeOutcome out;
    out.admitted = index;
    out.order = order;
    out.rate = rate;
    out.gain = rate;
    out.outage = rate < rs;
    out.admitted_flag = true;
    return out;
}

}  // namespace

SchemeOutcome cr_noma_schedule(const SystemParams& params, const ChannelDraw& draw) {
    const auto& g = draw.secondary_gains;
    // Feasibility is monotone in the secondary gain, so the strongest feasible
    // user is the last one (in ascending order) that passes.
    for (std::size_t i = g.size(); i-- > 0;) {
        if (primary_qos_met(params, draw.primary_gain, g[i]))
            return admit(i, DecodingOrder::PrimaryFirst,
                         interference_free_rate(params.p_linear(), g[i]), params.rs());
    }
    return SchemeOutcome{};
}

SchemeOutcome sgf1_outcome(const SystemParams& params, const ChannelDraw& draw) {
    const auto& g = draw.secondary_gains;
    if (g.empty()) return SchemeOutcome{};
    const std::size_t strongest = g.size() - 1;
    return admit(strongest, DecodingOrder::SecondaryFirst,
                 csi_order_rate(params.p_linear(), draw.primary_gain, g[strongest]), params.rs());
}

SchemeOutcome sgf2_outcome(const SystemParams& params, const ChannelDraw& draw) {
    const auto& g = draw.secondary_gains;
    if (g.empty() || !primary_qos_met(params, draw.primary_gain, g.front())) return SchemeOutcome{};
    return admit(0, DecodingOrder::PrimaryFirst, interference_free_rate(params.p_linear(), g.front()),
                 params.rs());
}

double hybrid_threshold(const SystemParams& params, double g0) {
    const double c0 = std::exp2(params.r0()) - 1.0;
    return std::max(0.0, g0 / c0 - 1.0 / params.p_linear());
}

HybridPartition hybrid_partition(const ChannelDraw& draw, double tau) {
    HybridPartition part;
    part.tau = tau;
    const auto& g = draw.secondary_gains;
    for (std::size_t i = 0; i < g.size(); ++i) (g[i] > tau ? part.s1 : part.s2).push_back(i);
    return part;
}

std::vector<double> hybrid_user_rates(const SystemParams& params, const ChannelDraw& draw) {
    const double p = params.p_linear();
    const double tau = hybrid_threshold(params, draw.primary_gain);
    std::vector<double> rates;
    rates.reserve(draw.secondary_gains.size());
    for (double gn : draw.secondary_gains)
        rates.push_back(gn > tau ? csi_order_rate(p, draw.primary_gain, gn)
                                 : interference_free_rate(p, gn));
    return rates;
}

SchemeOutcome hybrid_outcome(const SystemParams& params, const ChannelDraw& draw) {
    const auto& g = draw.secondary_gains;
    if (g.empty()) return SchemeOutcome{};
    const double p = params.p_linear();
    const double tau = hybrid_threshold(params, draw.primary_gain);

    std::size_t best = 0;
    double best_rate = -1.0;
    bool best_strong = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const bool strong = g[i] > tau;
        const double r =
            strong ? csi_order_rate(p, draw.primary_gain, g[i]) : interference_free_rate(p, g[i]);
        if (r > best_rate) {
            best = i;
            best_rate = r;
            best_strong = strong;
        }
    }
    return admit(best, best_strong ? DecodingOrder::SecondaryFirst : DecodingOrder::PrimaryFirst,
                 best_rate, params.rs());
}

SchemeOutcome evaluate(SchemeId scheme, const SystemParams& params, const ChannelDraw& draw) {
    switch (scheme) {
        case SchemeId::CrNoma: return cr_noma_schedule(params, draw);
        case SchemeId::Sgf1: return sgf1_outcome(params, draw);
        case SchemeId::Sgf2: return sgf2_outcome(params, draw);
        case SchemeId::Hybrid: return hybrid_outcome(params, draw);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace noma
