#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "noma/analysis.hpp"
#include "noma/cli.hpp"

using namespace noma;
using namespace noma::cli;

namespace {

ParseResult parse(std::vector<const char*> args, std::optional<std::string> env = std::nullopt) {
    args.insert(args.begin(), "noma-sim");
    return parse_args(static_cast<int>(args.size()), args.data(), std::move(env));
}

int run_cli(std::vector<const char*> args, std::string& out, std::string& err) {
    args.insert(args.begin(), "noma-sim");
    std::ostringstream o, e;
    const int rc = run(static_cast<int>(args.size()), args.data(), o, e);
    out = o.str();
    err = e.str();
    return rc;
}

std::vector<std::string> lines_without_timestamp(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        if (l.rfind("# timestamp:", 0) != 0) lines.push_back(l);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    f.push_back(cur);
    return f;
}

}  // namespace

TEST_CASE("figure reproduction command line") {
    const auto r = parse({"--schemes", "hybrid,sgf1,sgf2", "--m", "2,4", "--snr-db", "0:5:50", "--r0", "0.2",
                          "--rs", "1.0", "--trials", "1000000", "--seed", "42", "--out", "fig1.csv"});
    REQUIRE(r.options.has_value());
    const auto& s = r.options->spec;
    CHECK(s.schemes == std::vector<SchemeId>{SchemeId::Hybrid, SchemeId::Sgf1, SchemeId::Sgf2});
    CHECK(s.m_list == std::vector<std::size_t>{2, 4});
    REQUIRE(s.snr_db_grid.size() == 11);
    CHECK(s.snr_db_grid.front() == 0.0);
    CHECK(s.snr_db_grid.back() == 50.0);
    CHECK(s.r0 == 0.2);
    CHECK(s.rs == 1.0);
    CHECK(s.trials == 1000000);
    CHECK(s.seed == 42);
    CHECK(s.shared_draws);
    CHECK(r.options->out_path == "fig1.csv");
    CHECK_FALSE(r.options->analysis);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(parse({"--trials", "0"}).exit_code == kExitUsage);
    CHECK(parse({"--trials", "-3"}).exit_code == kExitUsage);
    CHECK(parse({"--bogus"}).exit_code == kExitUsage);
    CHECK(parse({"--schemes", "hybrid,oma"}).exit_code == kExitUsage);
    CHECK(parse({"--m", "0"}).exit_code == kExitUsage);
    CHECK(parse({"--snr-db", "10:-5:20"}).exit_code == kExitUsage);
    CHECK(parse({"--snr-db", "0:0:10"}).exit_code == kExitUsage);
    CHECK(parse({"--r0", "-0.2"}).exit_code == kExitUsage);
    CHECK(parse({"--workers", "x"}).exit_code == kExitUsage);
    CHECK(parse({}, std::string("lots")).exit_code == kExitUsage);

    std::string out, err;
    CHECK(run_cli({"--trials", "0"}, out, err) == kExitUsage);
    CHECK_FALSE(err.empty());
}

TEST_CASE("defaults") {
    const auto r = parse({});
    REQUIRE(r.options.has_value());
    CHECK(r.options->spec.seed == 0);
    CHECK(r.options->workers == 0);
    CHECK(parse({"--no-shared-draws"}).options->spec.shared_draws == false);
    CHECK(parse({}, std::string("3")).options->workers == 3);
    CHECK(parse({"--workers", "5"}, std::string("3")).options->workers == 5);
    CHECK(parse({"--help"}).exit_code == kExitOk);
    CHECK_FALSE(parse({"--help"}).options.has_value());
}

TEST_CASE("SNR grid syntax") {
    CHECK(parse_snr_grid("0:5:50").size() == 11);
    CHECK(parse_snr_grid("0:5:52") == std::vector<double>{0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50});
    CHECK(parse_snr_grid("0:0.1:0.3").back() == 0.3);
    CHECK(parse_snr_grid("0:0.1:0.3").size() == 4);
    CHECK(parse_snr_grid("30:-10:10") == std::vector<double>{30, 20, 10});
    CHECK(parse_snr_grid("7") == std::vector<double>{7});
    CHECK(parse_snr_grid("0, 10:5:20, 40") == std::vector<double>{0, 10, 15, 20, 40});
    CHECK_THROWS_AS(parse_snr_grid("1:2"), UsageError);
    CHECK_THROWS_AS(parse_snr_grid("a:1:2"), UsageError);
    CHECK_THROWS_AS(parse_snr_grid(""), UsageError);
}

TEST_CASE("manifest round-trips the sweep spec") {
    SweepSpec s;
    s.snr_db_grid = parse_snr_grid("0:0.1:1,17.25");
    s.m_list = {1, 3, 8};
    s.schemes = {SchemeId::CrNoma, SchemeId::Hybrid};
    s.r0 = 0.123456789012345;
    s.rs = 1.75;
    s.trials = 123457;
    s.seed = 18446744073709551615ULL;
    s.shared_draws = false;
    std::stringstream ss;
    write_manifest(ss, s, "2026-01-01T00:00:00Z");
    ss << "snr_db,scheme\n";
    CHECK(parse_manifest(ss) == s);
}

TEST_CASE("single-cell run writes manifest, header and one row") {
    std::string out, err;
    REQUIRE(run_cli({"--schemes", "sgf1", "--m", "2", "--snr-db", "10", "--trials", "500", "--seed", "3",
                     "--workers", "2"},
                    out, err) == kExitOk);
    std::istringstream is(out);
    const auto spec = parse_manifest(is);
    CHECK(spec.trials == 500);
    std::string header, row, extra;
    std::getline(is, header);
    CHECK(header == "snr_db,scheme,m,r0,rs,trials,outage,ci_low,ci_high,mean_gain");
    REQUIRE(std::getline(is, row));
    CHECK_FALSE(std::getline(is, extra));

    const auto f = split_csv(row);
    REQUIRE(f.size() == 10);
    CHECK(f[0] == "10");
    CHECK(f[1] == "sgf1");
    CHECK(f[2] == "2");
    CHECK(f[5] == "500");
    const auto e = estimate(SchemeId::Sgf1, SystemParams::from_snr_db(10, 2, 0.2, 1.0), 500, cell_seed(spec, 0));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", e.p_hat);
    CHECK(f[6] == buf);
    std::snprintf(buf, sizeof buf, "%.10g", e.mean_gain);
    CHECK(f[9] == buf);
}

TEST_CASE("repeated runs are identical apart from the timestamp") {
    std::string a, b, err;
    const std::vector<const char*> args = {"--schemes", "hybrid,sgf2", "--m", "2,4", "--snr-db", "0:10:20",
                                           "--trials", "2000", "--seed", "9", "--analysis"};
    auto args1 = args;
    args1.push_back("--workers");
    args1.push_back("1");
    auto args2 = args;
    args2.push_back("--workers");
    args2.push_back("4");
    REQUIRE(run_cli(args1, a, err) == kExitOk);
    REQUIRE(run_cli(args2, b, err) == kExitOk);
    CHECK(lines_without_timestamp(a) == lines_without_timestamp(b));
}

TEST_CASE("analysis overlay rows") {
    std::string out, err;
    REQUIRE(run_cli({"--schemes", "hybrid,sgf1,sgf2", "--m", "2,4", "--snr-db", "40,50", "--trials", "10",
                     "--analysis"},
                    out, err) == kExitOk);
    int floors = 0, bounds = 0;
    std::istringstream is(out);
    for (std::string l; std::getline(is, l);) {
        if (l.empty() || l[0] == '#') continue;
        const auto f = split_csv(l);
        if (f[1] == "sgf1_floor") {
            ++floors;
            const double v = std::stod(f[6]);
            CHECK(v == doctest::Approx(f[2] == "2" ? 1.0 / 3.0 : 0.2).epsilon(1e-9));
            CHECK(f[5] == "0");
            CHECK(f[9].empty());
        } else if (f[1] == "sgf2_floor") {
            CHECK(std::stod(f[6]) == doctest::Approx(qos_floor(std::stoul(f[2]), 0.2).value).epsilon(1e-9));
        } else if (f[1] == "hybrid_bound") {
            ++bounds;
            const auto sp = SystemParams::from_snr_db(std::stod(f[0]), 2, 0.2, 1.0);
            CHECK(std::stod(f[6]) == doctest::Approx(hybrid_outage_bound(sp)).epsilon(1e-9));
        }
    }
    CHECK(floors == 4);
    CHECK(bounds == 4);
}

TEST_CASE("inapplicable bound warns but still simulates") {
    std::string out, err;
    REQUIRE(run_cli({"--schemes", "hybrid", "--m", "2", "--snr-db", "10", "--r0", "1", "--rs", "1",
                     "--trials", "10", "--analysis"},
                    out, err) == kExitOk);
    CHECK(err.find("warning") != std::string::npos);
    CHECK(out.find("hybrid_bound") == std::string::npos);
    CHECK(out.find("\n10,hybrid,2,") != std::string::npos);
}

TEST_CASE("output file handling") {
    const auto dir = std::filesystem::temp_directory_path() / "noma_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "out.csv").string();
    std::string out, err;
    REQUIRE(run_cli({"--schemes", "sgf2", "--m", "2", "--snr-db", "0", "--trials", "10", "--out", path.c_str()},
                    out, err) == kExitOk);
    CHECK(out.empty());
    std::ifstream f(path);
    const std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content.find("snr_db,scheme,m") != std::string::npos);
    CHECK(content.find('\r') == std::string::npos);

    const auto bad = (dir / "missing" / "nested" / "out.csv").string();
    CHECK(run_cli({"--trials", "10", "--out", bad.c_str()}, out, err) == kExitIo);
    std::filesystem::remove_all(dir);
}
