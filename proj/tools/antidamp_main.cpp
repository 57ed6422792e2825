// antidamp: regime reports, sweeps, figure data and the acceptance suite.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "antidamp/acceptance.hpp"
#include "antidamp/errors.hpp"
#include "antidamp/figures.hpp"
#include "antidamp/modal.hpp"
#include "antidamp/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;
constexpr int kAcceptance = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

antidamp::State parse_z0(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("--z0: bad number '" + item + "'");
        }
        if (used != item.size() || !std::isfinite(x)) throw UsageError("--z0: bad number '" + item + "'");
        v.push_back(x);
    }
    if (v.size() != 4) throw UsageError("--z0 expects four comma-separated values u,x,v,y");
    return {v[0], v[1], v[2], v[3]};
}

// Writes to the named file, or stdout when the name is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) throw std::runtime_error("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled damped/antidamped oscillators: spectra, regimes, simulation"};
    app.require_subcommand(1);

    double epsilon = 0.0, b = 0.0;
    double tol = 1e-10;
    std::string out;

    auto* classify = app.add_subcommand("classify", "Regime report as key=value lines");
    classify->add_option("--epsilon", epsilon, "antidamping coefficient (>= 0)")->required();
    classify->add_option("--b", b, "coupling constant (> 0)")->required();
    classify->add_option("--out", out, "output file (default stdout)");

    std::string fig_name;
    double q = 4.0;
    std::optional<double> fig_eps, fig_b, t_end;
    std::string z0_text;
    auto* figure = app.add_subcommand("figure", "Write <stem>.csv and <stem>.plot for one figure");
    figure->add_option("id", fig_name, "fig1 .. fig9")->required();
    figure->add_option("--q", q, "Fig2 frequency ratio parameter, b = sqrt(q + 1/q - 1)");
    figure->add_option("--epsilon", fig_eps, "override: single block with this epsilon");
    figure->add_option("--b", fig_b, "override: single block with this coupling");
    figure->add_option("--z0", z0_text, "override initial state u,x,v,y");
    figure->add_option("--t-end", t_end, "override final time");
    figure->add_option("--tol", tol, "integrator tolerance");
    figure->add_option("--out", out, "output stem (default figN)");

    double b_min = 0.0, b_max = 0.0;
    std::size_t n = 0;
    auto* sweep = app.add_subcommand("sweep", "omega* and defect over a uniform b grid, as CSV");
    sweep->add_option("--epsilon", epsilon, "antidamping coefficient (>= 0)")->required();
    sweep->add_option("--b-min", b_min, "first coupling value (> 0)")->required();
    sweep->add_option("--b-max", b_max, "last coupling value")->required();
    sweep->add_option("--n", n, "grid points (>= 2)")->required();
    sweep->add_option("--out", out, "CSV file (default stdout)");

    std::string modes_file;
    std::size_t dirichlet = 0;
    std::size_t tail = 8;
    auto* modes = app.add_subcommand("modes", "Growth bound of a modal family");
    modes->add_option("--epsilon", epsilon, "antidamping coefficient (>= 0)")->required();
    modes->add_option("--b", b, "coupling constant (> 0)")->required();
    auto* mf = modes->add_option("--modes-file", modes_file, "one eigenvalue per line, # comments");
    auto* md = modes->add_option("--dirichlet", dirichlet, "use (k pi)^2, k = 1..K");
    mf->excludes(md);
    modes->add_option("--tail", tail, "modes checked for a trustworthy truncation");
    modes->add_option("--out", out, "output file (default stdout)");

    auto* accept = app.add_subcommand("accept", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify) {
            emit(out, antidamp::classify_report(antidamp::Params(epsilon, b)));
        } else if (*figure) {
            const auto id = antidamp::parse_figure_id(fig_name);
            if (!id) throw UsageError("unknown figure '" + fig_name + "'");
            antidamp::FigureSpec spec = antidamp::default_figure(*id, q);
            if (fig_eps || fig_b) {
                const double e = fig_eps.value_or(spec.params.front().epsilon());
                const double bb = fig_b.value_or(spec.params.front().b());
                spec.params = {antidamp::Params(e, bb)};
            }
            if (!z0_text.empty()) spec.z0 = parse_z0(z0_text);
            if (t_end) {
                if (!(*t_end > 0.0) || !std::isfinite(*t_end)) throw UsageError("--t-end must be positive");
                spec.t_end = *t_end;
            }
            if (!out.empty()) spec.output_stem = out;
            const auto data = antidamp::compute_figure(spec, tol);
            antidamp::write_figure_files(data);
            std::cout << "wrote " << spec.output_stem << ".csv and " << spec.output_stem << ".plot\n";
            for (const auto& blk : data.blocks)
                if (blk.trajectory.truncated)
                    std::cout << "note: b=" << antidamp::format_double(blk.params.b())
                              << " truncated at E > 1e100, t=" << antidamp::format_double(blk.trajectory.times.back())
                              << '\n';
        } else if (*sweep) {
            const auto s = antidamp::sweep(epsilon, b_min, b_max, n);
            std::ostringstream csv;
            antidamp::write_sweep_csv(csv, s);
            emit(out, csv.str());
            const auto& row = s.rows[s.argmin];
            std::ostream& info = (out.empty() || out == "-") ? std::cerr : std::cout;
            info << "argmin b=" << antidamp::format_double(row.b)
                 << " omega_star=" << antidamp::format_double(row.omega_star) << " defect=" << row.defect << '\n';
        } else if (*modes) {
            if (modes_file.empty() && dirichlet == 0) throw UsageError("modes: give --modes-file or --dirichlet K");
            const auto family =
                modes_file.empty() ? antidamp::ModeFamily::dirichlet(dirichlet) : antidamp::ModeFamily::load(modes_file);
            emit(out, antidamp::modes_report(family, antidamp::Params(epsilon, b), tail));
        } else if (*accept) {
            const auto results = antidamp::run_acceptance(&std::cout);
            std::size_t passed = 0;
            for (const auto& r : results) passed += r.passed ? 1 : 0;
            std::cout << passed << "/" << results.size() << " criteria passed\n";
            return antidamp::all_passed(results) ? kOk : kAcceptance;
        }
    } catch (const antidamp::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}
