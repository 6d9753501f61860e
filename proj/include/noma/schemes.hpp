#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noma/channel.hpp"

namespace noma {

/// Link parameters shared by every scheme. Rates are in bits/s/Hz.
class SystemParams {
public:
    /// Throws std::invalid_argument unless p_linear > 0, m_users >= 1,
    /// r0 > 0 and rs > 0.
    SystemParams(double p_linear, std::size_t m_users, double r0, double rs);

    static SystemParams from_snr_db(double snr_db, std::size_t m_users, double r0, double rs);

    double p_linear() const noexcept { return p_; }
    /// Per-user power in the orthogonal baseline, fixed at twice the NOMA power.
    double p_oma() const noexcept { return 2.0 * p_; }
    std::size_t m_users() const noexcept { return m_; }
    double r0() const noexcept { return r0_; }
    double rs() const noexcept { return rs_; }

private:
    double p_;
    std::size_t m_;
    double r0_;
    double rs_;
};

enum class DecodingOrder {
    None,
    SecondaryFirst,  // CSI-style: admitted secondary decoded before the primary
    PrimaryFirst,    // QoS-style: primary decoded first, secondary interference-free
};

enum class SchemeId { CrNoma, Sgf1, Sgf2, Hybrid };

std::string_view scheme_name(SchemeId id) noexcept;

/// Accepts "cr_noma", "sgf1", "sgf2", "hybrid". Throws std::invalid_argument
/// for anything else.
SchemeId parse_scheme(std::string_view name);

/// Per-realization result. `admitted` indexes into ChannelDraw::secondary_gains.
struct SchemeOutcome {
    std::optional<std::size_t> admitted;
    DecodingOrder order = DecodingOrder::None;
    double rate = 0.0;
    bool outage = true;
    /// Sum-rate gain over OMA: the admitted user's achievable rate.
    double gain = 0.0;
    /// Whether the primary's QoS constraint admitted anyone (CR-NOMA indicator).
    bool admitted_flag = false;
};

struct HybridPartition {
    double tau = 0.0;
    std::vector<std::size_t> s1;  // gain > tau, CSI order only
    std::vector<std::size_t> s2;  // gain <= tau, either order
};

struct NomaRates {
    double secondary = 0.0;
    double primary = 0.0;
};

double oma_rate(double p_oma, double gain);

/// Two-user power-domain NOMA with the secondary decoded first.
NomaRates pd_noma_rates(const SystemParams& params, double g0, double gn);

/// log2(1 + P g0 / (1 + P gn)): the primary's rate when decoded first.
double primary_first_rate(double p_linear, double g0, double gn);

/// Primary decoded first with the secondary as noise meets the R0 target.
bool primary_qos_met(const SystemParams& params, double g0, double gn);

SchemeOutcome cr_noma_schedule(const SystemParams& params, const ChannelDraw& draw);
SchemeOutcome sgf1_outcome(const SystemParams& params, const ChannelDraw& draw);
SchemeOutcome sgf2_outcome(const SystemParams& params, const ChannelDraw& draw);

double hybrid_threshold(const SystemParams& params, double g0);
HybridPartition hybrid_partition(const ChannelDraw& draw, double tau);

/// Achievable rate of every secondary user under hybrid SIC: the CSI-order rate
/// for users above the threshold and the interference-free rate below it.
std::vector<double> hybrid_user_rates(const SystemParams& params, const ChannelDraw& draw);

SchemeOutcome hybrid_outcome(const SystemParams& params, const ChannelDraw& draw);

SchemeOutcome evaluate(SchemeId scheme, const SystemParams& params, const ChannelDraw& draw);

}  // namespace noma
