#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noma/montecarlo.hpp"

namespace noma::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    SweepSpec spec;
    std::string out_path;  // empty: standard output
    bool analysis = false;
    unsigned workers = 0;  // 0: one per hardware thread
};

struct ParseResult {
    std::optional<Options> options;  // empty when the process should exit
    int exit_code = kExitOk;
    std::string message;  // help text or error description
};

/// `workers_env` stands in for NOMA_SIM_WORKERS so tests need not touch the
/// process environment.
ParseResult parse_args(int argc, const char* const* argv,
                       std::optional<std::string> workers_env = std::nullopt);

/// Comma-separated list whose items are numbers or inclusive `start:step:stop`
/// ranges. Throws UsageError.
std::vector<double> parse_snr_grid(std::string_view text);
std::vector<std::size_t> parse_m_list(std::string_view text);
std::vector<SchemeId> parse_scheme_list(std::string_view text);

/// Oracle overlay row: a high-SNR floor or the hybrid bound at one cell.
struct AnalysisRow {
    double snr_db = 0.0;
    std::string label;
    std::size_t m = 0;
    double value = 0.0;
};

/// Floors for sgf1/sgf2 and the hybrid bound for every (snr, m) cell of the
/// sweep. Inapplicable overlays are skipped and reported in `warnings`.
std::vector<AnalysisRow> analysis_rows(const SweepSpec& spec, std::vector<std::string>& warnings);

/// `#`-prefixed header lines describing the run. The timestamp line is the
/// only one that varies between identical runs.
void write_manifest(std::ostream& os, const SweepSpec& spec, std::string_view timestamp);

/// Rebuilds the SweepSpec from a CSV stream's manifest header.
SweepSpec parse_manifest(std::istream& is);

void emit_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows,
              const std::vector<AnalysisRow>& overlay, std::string_view timestamp);

/// Full command-line entry point. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::optional<std::string> workers_env = std::nullopt);

}  // namespace noma::cli
