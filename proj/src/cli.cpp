#include "noma/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "noma/analysis.hpp"

namespace noma::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? s.size() - pos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

double to_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

std::uint64_t to_u64(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

std::string fmt_g(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Shortest representation that parses back to the same double.
std::string fmt_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Data fields carry 10 significant digits.
std::string fmt_data(double v) { return fmt_g(v, 10); }

template <class T, class F>
std::string join(const std::vector<T>& items, F&& f) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ',';
        s += f(items[i]);
    }
    return s;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

constexpr std::size_t kMaxGridPoints = 100000;

}  // namespace

std::vector<double> parse_snr_grid(std::string_view text) {
    std::vector<double> grid;
    for (auto item : split(text, ',')) {
        if (item.empty()) throw UsageError("empty SNR entry");
        const auto fields = split(item, ':');
        if (fields.size() == 1) {
            grid.push_back(to_double(item, "SNR value"));
            continue;
        }
        if (fields.size() != 3) throw UsageError("SNR range must be start:step:stop");
        const double start = to_double(fields[0], "SNR start");
        const double step = to_double(fields[1], "SNR step");
        const double stop = to_double(fields[2], "SNR stop");
        if (step == 0.0) throw UsageError("SNR step must be non-zero");
        const double span = (stop - start) / step;
        if (span < 0.0) throw UsageError("SNR step points away from stop");
        const auto last = static_cast<std::size_t>(std::floor(span + 1e-9));
        if (last >= kMaxGridPoints) throw UsageError("SNR range has too many points");
        for (std::size_t i = 0; i <= last; ++i) {
            double v = start + static_cast<double>(i) * step;
            if (i == last && std::abs(v - stop) <= 1e-9 * std::max(1.0, std::abs(stop))) v = stop;
            grid.push_back(v);
        }
    }
    if (grid.empty()) throw UsageError("SNR grid is empty");
    return grid;
}

std::vector<std::size_t> parse_m_list(std::string_view text) {
    std::vector<std::size_t> ms;
    for (auto item : split(text, ',')) {
        const auto m = to_u64(item, "user count");
        if (m < 1) throw UsageError("user counts must be at least 1");
        ms.push_back(static_cast<std::size_t>(m));
    }
    return ms;
}

std::vector<SchemeId> parse_scheme_list(std::string_view text) {
    std::vector<SchemeId> ids;
    for (auto item : split(text, ',')) {
        try {
            ids.push_back(parse_scheme(item));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return ids;
}

ParseResult parse_args(int argc, const char* const* argv, std::optional<std::string> workers_env) {
    CLI::App app{"Monte-Carlo outage and sum-rate simulator for uplink NOMA SIC decoding orders",
                 "noma-sim"};
    std::string schemes = "hybrid,sgf1,sgf2";
    std::string m_text = "2,4";
    std::string snr_text = "0:5:50";
    Options opts;
    opts.spec.r0 = 0.2;
    opts.spec.rs = 1.0;
    opts.spec.trials = 100000;
    opts.spec.seed = 0;
    std::int64_t trials = static_cast<std::int64_t>(opts.spec.trials);
    std::optional<unsigned> workers;

    app.add_option("--schemes", schemes, "Comma list of cr_noma, sgf1, sgf2, hybrid")->capture_default_str();
    app.add_option("--m", m_text, "Comma list of secondary user counts")->capture_default_str();
    app.add_option("--snr-db", snr_text, "SNR grid in dB: values and/or start:step:stop")->capture_default_str();
    app.add_option("--r0", opts.spec.r0, "Primary target rate (bits/s/Hz)")->capture_default_str();
    app.add_option("--rs", opts.spec.rs, "Secondary target rate (bits/s/Hz)")->capture_default_str();
    app.add_option("--trials", trials, "Monte-Carlo trials per cell")->capture_default_str();
    app.add_option("--seed", opts.spec.seed, "Master seed")->capture_default_str();
    app.add_option("--out", opts.out_path, "Output CSV path (default: stdout)");
    app.add_flag("--analysis", opts.analysis, "Append analytical floor/bound rows");
    app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
    app.add_flag("--shared-draws,!--no-shared-draws", opts.spec.shared_draws,
                 "Evaluate all schemes of a cell on the same draws (default on)");
    app.set_version_flag("--version", std::string(kToolVersion));

    ParseResult result;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        result.message = app.help();
        return result;
    } catch (const CLI::CallForVersion&) {
        result.message = std::string(kToolVersion) + "\n";
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = kExitUsage;
        result.message = e.what();
        return result;
    }

    try {
        if (trials < 1) throw UsageError("--trials must be at least 1");
        opts.spec.trials = static_cast<std::uint64_t>(trials);
        opts.spec.schemes = parse_scheme_list(schemes);
        opts.spec.m_list = parse_m_list(m_text);
        opts.spec.snr_db_grid = parse_snr_grid(snr_text);
        if (!(opts.spec.r0 > 0.0)) throw UsageError("--r0 must be positive");
        if (!(opts.spec.rs > 0.0)) throw UsageError("--rs must be positive");
        if (workers) {
            opts.workers = *workers;
        } else if (workers_env && !workers_env->empty()) {
            opts.workers = static_cast<unsigned>(to_u64(trim(*workers_env), "NOMA_SIM_WORKERS"));
        }
        opts.spec.validate();
    } catch (const std::exception& e) {
        result.exit_code = kExitUsage;
        result.message = e.what();
        return result;
    }
    result.options = std::move(opts);
    return result;
}

std::vector<AnalysisRow> analysis_rows(const SweepSpec& spec, std::vector<std::string>& warnings) {
    std::vector<AnalysisRow> rows;
    const auto has = [&](SchemeId id) {
        return std::find(spec.schemes.begin(), spec.schemes.end(), id) != spec.schemes.end();
    };
    const bool bound_ok = hybrid_bound_applicable(spec.r0, spec.rs);
    if (has(SchemeId::Hybrid) && !bound_ok)
        warnings.push_back("hybrid outage bound needs (2^rs - 1)(2^r0 - 1) < 1; bound rows suppressed");

    for (double snr : spec.snr_db_grid) {
        for (std::size_t m : spec.m_list) {
            if (has(SchemeId::Sgf1)) rows.push_back({snr, "sgf1_floor", m, csi_floor(m, spec.rs).value});
            if (has(SchemeId::Sgf2)) rows.push_back({snr, "sgf2_floor", m, qos_floor(m, spec.r0).value});
            if (has(SchemeId::Hybrid) && bound_ok) {
                const auto params = SystemParams::from_snr_db(snr, m, spec.r0, spec.rs);
                rows.push_back({snr, "hybrid_bound", m, hybrid_outage_bound(params)});
            }
        }
    }
    return rows;
}

void write_manifest(std::ostream& os, const SweepSpec& spec, std::string_view timestamp) {
    os << "# noma-sim manifest\n";
    os << "# version: " << kToolVersion << '\n';
    os << "# schemes: " << join(spec.schemes, [](SchemeId s) { return std::string(scheme_name(s)); }) << '\n';
    os << "# m: " << join(spec.m_list, [](std::size_t m) { return std::to_string(m); }) << '\n';
    os << "# snr_db: " << join(spec.snr_db_grid, fmt_exact) << '\n';
    os << "# r0: " << fmt_exact(spec.r0) << '\n';
    os << "# rs: " << fmt_exact(spec.rs) << '\n';
    os << "# trials: " << spec.trials << '\n';
    os << "# seed: " << spec.seed << '\n';
    os << "# shared_draws: " << (spec.shared_draws ? "true" : "false") << '\n';
    os << "# timestamp: " << timestamp << '\n';
}

SweepSpec parse_manifest(std::istream& is) {
    std::map<std::string, std::string, std::less<>> fields;
    std::string line;
    while (is.peek() == '#' && std::getline(is, line)) {
        const auto body = trim(std::string_view(line).substr(1));
        const auto colon = body.find(':');
        if (colon == std::string_view::npos) continue;
        fields.emplace(std::string(trim(body.substr(0, colon))), std::string(trim(body.substr(colon + 1))));
    }
    const auto get = [&](std::string_view key) -> const std::string& {
        const auto it = fields.find(key);
        if (it == fields.end()) throw UsageError("manifest is missing '" + std::string(key) + "'");
        return it->second;
    };

    SweepSpec spec;
    spec.schemes = parse_scheme_list(get("schemes"));
    spec.m_list = parse_m_list(get("m"));
    spec.snr_db_grid.clear();
    for (auto v : split(get("snr_db"), ',')) spec.snr_db_grid.push_back(to_double(v, "SNR value"));
    spec.r0 = to_double(get("r0"), "r0");
    spec.rs = to_double(get("rs"), "rs");
    spec.trials = to_u64(get("trials"), "trials");
    spec.seed = to_u64(get("seed"), "seed");
    const auto& shared = get("shared_draws");
    if (shared != "true" && shared != "false") throw UsageError("invalid shared_draws '" + shared + "'");
    spec.shared_draws = shared == "true";
    return spec;
}

void emit_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows,
              const std::vector<AnalysisRow>& overlay, std::string_view timestamp) {
    write_manifest(os, spec, timestamp);
    os << "snr_db,scheme,m,r0,rs,trials,outage,ci_low,ci_high,mean_gain\n";
    const std::string rates = fmt_data(spec.r0) + ',' + fmt_data(spec.rs);
    for (const auto& r : rows) {
        const auto& e = r.estimate;
        os << fmt_data(r.snr_db) << ',' << scheme_name(r.scheme) << ',' << r.m << ',' << rates << ','
           << e.trials << ',' << fmt_data(e.p_hat) << ',' << fmt_data(e.ci_low) << ',' << fmt_data(e.ci_high)
           << ',' << fmt_data(e.mean_gain) << '\n';
    }
    // Oracle rows carry no trials and no gain; the interval collapses to the value.
    for (const auto& a : overlay) {
        const auto v = fmt_data(a.value);
        os << fmt_data(a.snr_db) << ',' << a.label << ',' << a.m << ',' << rates << ",0," << v << ',' << v
           << ',' << v << ",\n";
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::optional<std::string> workers_env) {
    auto parsed = parse_args(argc, argv, std::move(workers_env));
    if (!parsed.options) {
        (parsed.exit_code == kExitOk ? out : err) << parsed.message;
        if (parsed.exit_code != kExitOk) err << "\nRun with --help for usage.\n";
        return parsed.exit_code;
    }
    const auto& opts = *parsed.options;

    std::ofstream file;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open '" << opts.out_path << "' for writing\n";
            return kExitIo;
        }
    }

    std::vector<std::string> warnings;
    std::vector<AnalysisRow> overlay;
    if (opts.analysis) overlay = analysis_rows(opts.spec, warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    const auto rows = run_sweep(opts.spec, opts.workers);

    std::ostream& dest = opts.out_path.empty() ? out : file;
    emit_csv(dest, opts.spec, rows, overlay, utc_timestamp());
    dest.flush();
    if (!dest) {
        err << "error: failed writing output\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace noma::cli
