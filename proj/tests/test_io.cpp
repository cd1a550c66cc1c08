#include "dcl/io.hpp"
#include "dcl/runs.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace dcl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("dcl_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("profile json round trip") {
    testing::Gen gen(51);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = gen.profile(gen.integer(0, 40));
        const auto text = dump_json(profile_to_json(p));
        CHECK(profile_from_json(parse_json_text(text)) == p);
    }
}

TEST_CASE("profile schema errors") {
    CHECK_THROWS_AS(profile_from_json(json::parse(R"({"harmonics": []})")), ParseError);
    CHECK_THROWS_AS(profile_from_json(json::parse(R"({"a0": "2"})")), ParseError);
    CHECK_THROWS_AS(profile_from_json(json::parse(R"({"a0": 2, "harmonics": [[1]]})")), ParseError);
    CHECK_THROWS_AS(profile_from_json(json::parse(R"({"a0": 2, "extra": 1})")), ParseError);
    try {
        profile_from_json(json::parse(R"({"a0": 2, "harmonics": [[0, 0], [0.1, "x"]]})"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pointer() == "/harmonics/1/1");
    }
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_json_text("{\n  \"a0\": 2,\n  \"harmonics\": [1, ]\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.location());
        CHECK(e.location()->line == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("file helpers") {
    const auto dir = scratch("files");
    CHECK_THROWS_AS(read_text_file(dir / "missing.json"), IoError);
    CHECK_THROWS_AS(write_text_file(dir / "no" / "such" / "dir.txt", "x"), IoError);
    write_text_file(dir / "body.json", R"({"a0": 2, "harmonics": [[0, 0], [0, 0], [0.2, 0]]})");
    CHECK(load_profile(dir / "body.json") == testing::profile(2.0, {{3, 0.2}}));
}

TEST_CASE("samples") {
    const auto a = samples_from_json(json::parse(R"({"samples": [[0, 1], [1, 2]]})"));
    const auto b = samples_from_json(json::parse(R"([[0, 1], [1, 2]])"));
    REQUIRE(a.size() == 2);
    CHECK(b.size() == 2);
    CHECK(a[1].theta == 1.0);
    CHECK(a[1].radius == 2.0);
    CHECK_THROWS_AS(samples_from_json(json::parse(R"({"samples": [[0]]})")), ParseError);
}

TEST_CASE("csv and report formatting") {
    CHECK(csv_header() == "inequality_id,k,lambda,mu,alpha,lhs,rhs,slack,verdict,family");
    CHECK(format_double(0.1) == "0.10000000000000001");
    const auto s = testing::body(2.0);
    Parameters p;
    p.k = 2;
    p.lambda = 0.0;
    const auto r = evaluate_inequality(InequalityId::T1, s, nullptr, p);
    const auto row = csv_row(r);
    CHECK(row.rfind("T1,2,0,,,", 0) == 0);
    CHECK(row.find(",equality,disc") != std::string::npos);
    const auto j = report_to_json(r);
    CHECK(j.at("verdict") == "equality");
    CHECK(j.at("parameters").at("k") == 2);
    CHECK(j.at("family_mismatch") == false);
}

TEST_CASE("ensemble config") {
    const auto spec = ensemble_from_json(json::parse(
        R"({"count": 7, "seed": 3, "n_max": 5, "a0_range": [1.5, 2.5], "hypothesis_filter": {"inequality": "T1", "k": 3}})"));
    CHECK(spec.count == 7);
    CHECK(spec.max_order == 5);
    CHECK(spec.a0_min == 1.5);
    REQUIRE(spec.hypothesis_filter);
    CHECK(spec.hypothesis_filter->k == 3);
    CHECK(ensemble_from_json(ensemble_to_json(spec)).count == 7);
    CHECK_THROWS_AS(ensemble_from_json(json::parse(R"({"count": 0})")), ConfigError);
    CHECK_THROWS_AS(ensemble_from_json(json::parse(R"({"bogus": 1})")), ConfigError);
    CHECK_THROWS_AS(ensemble_from_json(json::parse(R"({"a0_range": [3, 1]})")), ConfigError);
}

TEST_CASE("run config errors") {
    const auto dir = scratch("cfg");
    CHECK_THROWS_AS(run_sweep(json::parse(R"({"inequality": "T9"})"), dir), ConfigError);
    CHECK_THROWS_AS(run_sweep(json::parse(R"({"inequality": "T1", "k": 2, "lambda": 0, "surprise": 1})"), dir),
                    ConfigError);
    CHECK_THROWS_AS(run_limit(json::parse(R"({"alpha": 1})"), dir), ConfigError);
    CHECK_THROWS_AS(run_search(json::parse(R"({"inequality": "T3", "k": 2, "alpha": 1, "start": {"a0": 2}})"), dir),
                    ConfigError);
    CHECK_THROWS_AS(run_sweep(json::parse(R"({"inequality": "T1", "k": 2, "lambda": 0, "bodies": [{"file": "nope.json"}]})"),
                              dir),
                    IoError);
}

TEST_CASE("sweep artifacts are byte-identical across reruns") {
    const auto a = scratch("sweep_a");
    const auto b = scratch("sweep_b");
    const auto cfg = json::parse(
        R"({"ensemble": {"count": 20, "seed": 9, "n_max": 12}, "inequality": "T3", "k": [2, 3], "alpha": [0.5, 2]})");
    const auto ra = run_sweep(cfg, a);
    const auto rb = run_sweep(cfg, b);
    REQUIRE(ra.files.size() == 2);
    CHECK(ra.violations == 0);
    for (std::size_t i = 0; i < ra.files.size(); ++i) {
        CHECK(read_text_file(ra.files[i]) == read_text_file(rb.files[i]));
    }
    const auto csv = read_text_file(a / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 20 * 4);
}

TEST_CASE("limit run") {
    const auto dir = scratch("limit");
    const auto out = run_limit(
        json::parse(R"({"s": {"a0": 2, "harmonics": [[0, 0], [0.1, 0]]}, "alpha": 1.2, "k_max": 6})"), dir);
    CHECK(out.files.size() == 2);
    const auto j = parse_json_text(read_text_file(dir / "limit.json"));
    CHECK(j.at("n_max") == 2);
    CHECK(j.at("max_deviation_beyond_n_max").get<double>() < 1e-10);
}

TEST_CASE("small report run") {
    const auto dir = scratch("report");
    const auto out = run_report(json::parse(R"({"ensemble": {"count": 12, "seed": 1, "n_max": 8}, "k": [2, 3]})"), dir);
    CHECK(out.violations == 0);
    const auto j = parse_json_text(read_text_file(dir / "report.json"));
    CHECK(j.at("max_identity_residual").get<double>() < 1e-9);
    CHECK(j.at("max_lemma_residual").get<double>() < 1e-9);
    CHECK(j.at("violations") == 0);
    CHECK_THROWS_AS(
        run_report(json::parse(R"({"ensemble": {"hypothesis_filter": {"inequality": "T1", "k": 2}}})"), dir),
        ConfigError);
}

}  // TEST_SUITE
