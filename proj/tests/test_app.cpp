#include <doctest.h>

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "antidamp/figures.hpp"
#include "antidamp/report.hpp"
#include "antidamp/spectrum.hpp"
#include "oracles.hpp"

using namespace antidamp;

namespace {

std::map<std::string, std::string> parse_record(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        REQUIRE(eq != std::string::npos);
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

std::string csv_text(const FigureData& d) {
    std::ostringstream out;
    write_figure_csv(out, d);
    return out.str();
}

double window_max(const Trajectory& tr, double lo, double hi) {
    double m = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k)
        if (tr.times[k] >= lo && tr.times[k] <= hi) m = std::max(m, tr.energies[k]);
    return m;
}

}  // namespace

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> bits;
    int tested = 0;
    while (tested < 10000) {
        const std::uint64_t u = bits(rng);
        double v;
        std::memcpy(&v, &u, sizeof v);
        if (!std::isfinite(v)) continue;
        const std::string s = format_double(v);
        double back = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(res.ec == std::errc());
        CHECK(back == v);
        ++tested;
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-0.125) == "-0.125");
}

TEST_CASE("classify report fields") {
    const auto opt = parse_record(classify_report(Params(0.5, 0.75)));
    CHECK(opt.at("kind") == "ExpDecay");
    CHECK(opt.at("omega_star") == "-0.125");
    CHECK(opt.at("defect") == "1");
    CHECK(opt.at("eta") == "0.75");
    CHECK(std::stod(opt.at("sqrt_epsilon")) == doctest::Approx(std::sqrt(0.5)));
    CHECK(opt.count("lambda4_im") == 1);

    const auto jordan = parse_record(classify_report(Params(1.0, 1.0)));
    CHECK(jordan.at("kind") == "PolyBlowup");
    CHECK(jordan.at("degree") == "1");
    CHECK(jordan.count("eta") == 0);

    const auto blow = parse_record(classify_report(Params(2.0, 7.0)));
    CHECK(blow.at("kind") == "ExpBlowup");
    CHECK(std::stod(blow.at("omega_star")) > 0.0);
    int stable = 0;
    for (const auto& l : oracle::dense_eigenvalues(assemble_matrix(Params(2.0, 7.0)).entries)) stable += l.real() < 0.0;
    CHECK(blow.at("stable_dim") == std::to_string(stable));
    CHECK(parse_record(classify_report(Params(0.5, 0.75))).at("stable_dim") == "4");
}

TEST_CASE("sweep examples") {
    const SweepResult half = sweep(0.5, 0.71, 0.79, 81);
    CHECK(half.rows.size() == 81);
    CHECK(std::abs(half.rows[half.argmin].b - 0.75) <= 0.001);
    CHECK(half.rows.front().b == 0.71);
    CHECK(half.rows.back().b == 0.79);

    const SweepResult zero = sweep(0.0, 0.4, 0.6, 201);
    CHECK(zero.rows[zero.argmin].b == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(zero.rows[zero.argmin].omega_star == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(zero.rows[zero.argmin].defect == 1);

    const SweepResult one = sweep(1.0, 0.1, 5.0, 50);
    for (const auto& r : one.rows) CHECK(r.omega_star >= 0.0);

    CHECK_THROWS_AS(sweep(0.5, 0.7, 0.8, 1), std::invalid_argument);
    CHECK_THROWS_AS(sweep(0.5, 0.8, 0.7, 10), std::invalid_argument);
}

TEST_CASE("sweep csv") {
    std::ostringstream out;
    write_sweep_csv(out, sweep(0.5, 0.7, 0.8, 3));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "b,omega_star,defect");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("modes report") {
    const auto rec = parse_record(modes_report(ModeFamily::dirichlet(64), Params(0.5, 0.75), 8));
    CHECK(std::stod(rec.at("sup_growth_bound")) == doctest::Approx(-0.125).epsilon(1e-9));
    CHECK(rec.at("argmax_mode") == "1");
    CHECK(rec.at("threshold_met") == "true");
}

TEST_CASE("figure ids") {
    CHECK(parse_figure_id("fig3") == FigureId::Fig3);
    CHECK(parse_figure_id("Fig9") == FigureId::Fig9);
    CHECK(parse_figure_id("1") == FigureId::Fig1);
    CHECK_FALSE(parse_figure_id("fig10").has_value());
    CHECK_FALSE(parse_figure_id("figure").has_value());
    CHECK(to_string(FigureId::Fig7) == "fig7");
}

TEST_CASE("figure defaults follow the captions") {
    const FigureSpec f1 = default_figure(FigureId::Fig1);
    CHECK(f1.params.size() == 3);
    CHECK(f1.z0 == State{1, 0, 0, 0});
    CHECK(default_figure(FigureId::Fig4).z0 == State{1, 0.5, 0, 0});
    CHECK(default_figure(FigureId::Fig5).z0 == State{1, 0.1, 0, 0});
    CHECK(default_figure(FigureId::Fig8).z0 == State{1, 1, 1, 1});
    CHECK(default_figure(FigureId::Fig9).params.front().epsilon() == 0.5);
    const FigureSpec f2 = default_figure(FigureId::Fig2, 4.0);
    CHECK(f2.params.front().b() == doctest::Approx(std::sqrt(3.25)));
    CHECK(f2.t_end == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
    CHECK_THROWS_AS(default_figure(FigureId::Fig2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(default_figure(FigureId::Fig2, -2.0), std::invalid_argument);
}

TEST_CASE("figure csv round-trips bit-exactly and is deterministic") {
    const FigureData d = compute_figure(default_figure(FigureId::Fig5));
    const std::string text = csv_text(d);
    CHECK(text == csv_text(compute_figure(default_figure(FigureId::Fig5))));

    std::istringstream in(text);
    const ParsedCsv parsed = parse_figure_csv(in);
    CHECK(parsed.header == std::vector<std::string>{"t", "u", "x", "v", "y", "E", "u_asym", "v_asym"});
    REQUIRE(parsed.blocks.size() == d.blocks.size());
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        const auto& tr = d.blocks[b].trajectory;
        REQUIRE(parsed.blocks[b].size() == tr.size());
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const auto& row = parsed.blocks[b][k];
            CHECK(row[0] == tr.times[k]);
            CHECK(row[1] == tr.states[k].u);
            CHECK(row[2] == tr.states[k].x);
            CHECK(row[3] == tr.states[k].v);
            CHECK(row[4] == tr.states[k].y);
            CHECK(row[5] == tr.energies[k]);
            CHECK(row[6] == d.blocks[b].u_asym[k]);
            CHECK(row[7] == d.blocks[b].v_asym[k]);
        }
        CHECK(parsed.comments[b].front().rfind("# block=" + std::to_string(b), 0) == 0);
    }
}

TEST_CASE("blow-up series are truncated with a note") {
    FigureSpec spec = default_figure(FigureId::Fig1);
    spec.params = {Params(2.0, 0.5)};
    spec.t_end = 2000.0;
    spec.sample_dt = 1.0;
    const FigureData d = compute_figure(spec);
    CHECK(d.blocks[0].trajectory.truncated);
    const std::string text = csv_text(d);
    CHECK(text.find("# truncated: E > 1e100") != std::string::npos);
    std::istringstream in(text);
    const ParsedCsv parsed = parse_figure_csv(in);
    CHECK(parsed.comments[0].back().rfind("# truncated", 0) == 0);
}

TEST_CASE("figure files are written next to each other") {
    const auto dir = std::filesystem::temp_directory_path() / "antidamp_fig_test";
    std::filesystem::create_directories(dir);
    FigureSpec spec = default_figure(FigureId::Fig8);
    spec.output_stem = (dir / "f8").string();
    spec.t_end = 2.0;
    write_figure_files(compute_figure(spec));
    CHECK(std::filesystem::exists(dir / "f8.csv"));
    std::ifstream plot(dir / "f8.plot");
    std::stringstream ss;
    ss << plot.rdbuf();
    CHECK(ss.str().find("data f8.csv") != std::string::npos);
    CHECK(ss.str().find("x=u y=x") != std::string::npos);
    std::filesystem::remove_all(dir);

    spec.output_stem = "/nonexistent-dir/f8";
    CHECK_THROWS_WITH_AS(write_figure_files(compute_figure(spec)), "cannot write /nonexistent-dir/f8.csv",
                         std::runtime_error);
}

TEST_CASE("plot script references columns by header name only") {
    const FigureData d = compute_figure(default_figure(FigureId::Fig6));
    const std::string script = figure_plot_script(d, "fig6.csv");
    CHECK(script.find("y=v_asym") != std::string::npos);
    CHECK(script.find("style=dashed") != std::string::npos);
    CHECK(script.find("series block=2") != std::string::npos);
}

TEST_CASE("Fig1: exponential, quadratic and bounded energy") {
    const FigureData d = compute_figure(default_figure(FigureId::Fig1));
    const Trajectory& lo = d.blocks[0].trajectory;   // b < 1
    const Trajectory& mid = d.blocks[1].trajectory;  // b = 1
    const Trajectory& hi = d.blocks[2].trajectory;   // b > 1
    CHECK(window_max(lo, 30, 40) > 1e3 * window_max(lo, 0, 10));
    // E ~ t^2: envelope ratio between t ~ 40 and t ~ 20 close to 4.
    const double ratio = window_max(mid, 34, 40) / window_max(mid, 14, 20);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.5);
    CHECK(window_max(hi, 20, 40) < 3.0 * window_max(hi, 0, 20));
}

TEST_CASE("Fig2: closed phase curve over one period") {
    const FigureData d = compute_figure(default_figure(FigureId::Fig2, 4.0));
    const Trajectory& tr = d.blocks[0].trajectory;
    const State& end = tr.final_state();
    CHECK(std::abs(end.u - 1.0) < 1e-6);
    CHECK(std::abs(end.x) < 1e-6);
    CHECK(std::abs(end.v) < 1e-6);
    CHECK(std::abs(end.y) < 1e-6);
}

TEST_CASE("Fig7: blow-up, bounded and decaying energy") {
    const FigureData d = compute_figure(default_figure(FigureId::Fig7));
    const Trajectory& lo = d.blocks[0].trajectory;
    const Trajectory& edge = d.blocks[1].trajectory;
    const Trajectory& hi = d.blocks[2].trajectory;
    CHECK(window_max(lo, 50, 60) > 10.0 * window_max(lo, 0, 10));
    CHECK(window_max(edge, 50, 60) < 2.0 * window_max(edge, 0, 10));
    CHECK(window_max(edge, 50, 60) > 1e-2);
    CHECK(window_max(hi, 50, 60) < 1e-2 * window_max(hi, 0, 10));
}

TEST_CASE("Fig5: numerical and asymptotic components get closer as b grows") {
    const FigureData d = compute_figure(default_figure(FigureId::Fig5));
    std::vector<double> gaps;
    for (const auto& blk : d.blocks) {
        double g = 0.0;
        for (std::size_t k = 0; k < blk.trajectory.size(); ++k)
            g = std::max(g, std::abs(blk.trajectory.states[k].u - blk.u_asym[k]));
        gaps.push_back(g);
    }
    CHECK(gaps[1] < gaps[0]);
    CHECK(gaps[2] < gaps[1]);
}
