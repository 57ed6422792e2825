#include "antidamp/acceptance.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "antidamp/errors.hpp"
#include "antidamp/modal.hpp"
#include "antidamp/report.hpp"
#include "antidamp/sim.hpp"
#include "antidamp/spectrum.hpp"

namespace antidamp {

namespace {

using Clock = std::chrono::steady_clock;

struct Balance {
    double worst_ratio = 0.0;  // max residual / (100 tol)
    std::size_t count = 0;
    void add(const Trajectory& tr, double tol) {
        worst_ratio = std::max(worst_ratio, tr.max_balance_residual() / (100.0 * tol));
        ++count;
    }
};

std::string fmt(double v) { return format_double(v); }

Complex poly_eval(const std::array<double, 5>& c, Complex z) {
    Complex acc = c[0];
    for (std::size_t i = 1; i < 5; ++i) acc = acc * z + c[i];
    return acc;
}

// Smallest achievable max-distance over all pairings of two 4-element multisets.
double matching_distance(std::array<Complex, 4> a, const std::array<Complex, 4>& b) {
    std::array<int, 4> perm{0, 1, 2, 3};
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::array<Complex, 4> dense_eigenvalues(const Mat4& m) {
    Eigen::Matrix4d e;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) e(r, c) = m(r, c);
    Eigen::EigenSolver<Eigen::Matrix4d> es(e, false);
    if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    std::array<Complex, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()[i];
    return out;
}

bool rel_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

CriterionResult c1_residuals() {
    double worst_res = 0.0, worst_regular = 0.0, worst_defective = 0.0;
    std::size_t n = 0, defective = 0;
    for (int i = 0; i <= 20; ++i) {
        const double eps = i / 10.0;
        for (int j = 1; j <= 100; ++j) {
            const double b = j / 20.0;
            const Params p(eps, b);
            const auto roots = closed_form_eigenvalues(p).eigenvalues;
            const auto coeffs = characteristic_poly_coeffs(p);
            for (const Complex& l : roots) {
                const double scale = 1.0 + std::pow(std::abs(l), 4);
                worst_res = std::max(worst_res, std::abs(poly_eval(coeffs, l)) / scale);
            }
            const double d = matching_distance(roots, dense_eigenvalues(assemble_matrix(p).entries));
            // Repeated roots exactly where b = (1 + eps) / 2, for every eps.
            const bool is_defective = rel_equal(b, (1.0 + eps) / 2.0);
            if (is_defective) {
                worst_defective = std::max(worst_defective, d);
                ++defective;
            } else {
                worst_regular = std::max(worst_regular, d);
            }
            ++n;
        }
    }
    CriterionResult r;
    r.name = "closed-form roots: residual and dense cross-check";
    r.passed = worst_res <= 1e-9 && worst_regular <= 1e-8 && worst_defective <= 1e-4;
    r.detail = std::to_string(n) + " points (" + std::to_string(defective) + " defective); max scaled residual " +
               fmt(worst_res) + " (<= 1e-9), max set distance " + fmt(worst_regular) + " (<= 1e-8), defective " +
               fmt(worst_defective) + " (<= 1e-4)";
    return r;
}

CriterionResult c2_regimes() {
    struct Case {
        double eps, b;
        RegimeKind kind;
        int degree;
    };
    const double s05 = std::sqrt(0.5);
    const std::vector<Case> cases = {
        {2.0, 1.0, RegimeKind::ExpBlowup, 0},        {2.0, 7.0, RegimeKind::ExpBlowup, 0},
        {1.0, 0.5, RegimeKind::ExpBlowup, 0},        {0.5, 0.5, RegimeKind::ExpBlowup, 0},
        {1.0, 1.0, RegimeKind::PolyBlowup, 1},       {1.0, 2.0, RegimeKind::BoundedNonDecaying, 0},
        {1.0, 10.0, RegimeKind::BoundedNonDecaying, 0}, {0.5, s05, RegimeKind::BoundedNonDecaying, 0},
        {0.25, 0.5, RegimeKind::BoundedNonDecaying, 0}, {0.5, 0.75, RegimeKind::ExpDecay, 0},
        {0.5, 2.0, RegimeKind::ExpDecay, 0},         {0.0, 0.5, RegimeKind::ExpDecay, 0},
    };
    std::size_t ok = 0;
    std::string misses;
    for (const auto& c : cases) {
        const Regime r = classify(Params(c.eps, c.b));
        if (r.kind == c.kind && r.poly_degree == c.degree) {
            ++ok;
        } else {
            misses += " (" + fmt(c.eps) + "," + fmt(c.b) + ")->" + to_string(r.kind);
        }
    }
    CriterionResult r;
    r.name = "regime table";
    r.passed = ok == cases.size();
    r.detail = std::to_string(ok) + "/" + std::to_string(cases.size()) + " points match" + misses;
    return r;
}

CriterionResult c3_constants() {
    const double g = growth_bound(Params(0.5, 0.75));
    const Spectrum s = closed_form_eigenvalues(Params(0.0, 0.5));
    const Complex e1(-0.25, std::sqrt(15.0) / 4.0);
    const Complex e2 = std::conj(e1);
    // Each expected value must appear twice.
    int hits1 = 0, hits2 = 0;
    double worst = 0.0;
    for (const Complex& l : s.eigenvalues) {
        const double d1 = std::max(std::abs(l.real() - e1.real()), std::abs(l.imag() - e1.imag()));
        const double d2 = std::max(std::abs(l.real() - e2.real()), std::abs(l.imag() - e2.imag()));
        if (d1 <= 1e-9) ++hits1;
        if (d2 <= 1e-9) ++hits2;
        worst = std::max(worst, std::min(d1, d2));
    }
    const Spectrum jordan = closed_form_eigenvalues(Params(1.0, 1.0));
    const Spectrum optimal = closed_form_eigenvalues(Params(0.5, 0.75));
    const bool defects_ok = jordan.max_defect() == 1 && optimal.max_defect() == 1 && s.max_defect() == 1 &&
                            std::all_of(jordan.defects.begin(), jordan.defects.end(), [](int d) { return d == 1; }) &&
                            std::all_of(optimal.defects.begin(), optimal.defects.end(), [](int d) { return d == 1; });
    CriterionResult r;
    r.name = "published constants";
    r.passed = std::abs(g + 0.125) <= 1e-12 && hits1 == 2 && hits2 == 2 && defects_ok;
    r.detail = "growth_bound(0.5,0.75)=" + fmt(g) + "; eps=0 b=0.5 roots off by " + fmt(worst) + " (" +
               std::to_string(hits1) + "+" + std::to_string(hits2) + " hits); defects (1,1)=" +
               std::to_string(jordan.max_defect()) + " (0.5,0.75)=" + std::to_string(optimal.max_defect());
    return r;
}

CriterionResult c4_optimal() {
    bool ok = true;
    std::ostringstream d;
    for (double eps : {0.0, 0.25, 0.5, 0.9}) {
        try {
            const OptimalCoupling oc = optimal_coupling(eps);
            const double db = std::abs(oc.b_numeric - (1.0 + eps) / 2.0);
            const double dw = std::abs(oc.omega_numeric - (eps - 1.0) / 4.0);
            ok = ok && db <= 1e-6 && dw <= 1e-9;
            d << "eps=" << fmt(eps) << " |db|=" << fmt(db) << " |dw|=" << fmt(dw) << "; ";
        } catch (const std::exception& e) {
            ok = false;
            d << "eps=" << fmt(eps) << " error: " << e.what() << "; ";
        }
    }
    CriterionResult r;
    r.name = "optimal coupling";
    r.passed = ok;
    r.detail = d.str() + "(b <= 1e-6, omega <= 1e-9)";
    return r;
}

CriterionResult c5_fits() {
    struct Case {
        double eps, b, omega, degree;
    };
    const Case cases[] = {{1.0, 1.0, 0.0, 1.0}, {0.5, 0.75, -0.125, 1.0}, {0.0, 0.5, -0.25, 1.0}};
    const auto start = Clock::now();
    bool ok = true;
    std::ostringstream d;
    for (const auto& c : cases) {
        try {
            const GrowthFit f = norm_growth_fit(Params(c.eps, c.b));
            const double dw = std::abs(f.rate - c.omega), dd = std::abs(f.poly_degree - c.degree);
            ok = ok && dw <= 0.02 && dd <= 0.15;
            d << "(" << fmt(c.eps) << "," << fmt(c.b) << "): omega=" << fmt(f.rate) << " d=" << fmt(f.poly_degree)
              << "; ";
        } catch (const std::exception& e) {
            ok = false;
            d << "(" << fmt(c.eps) << "," << fmt(c.b) << ") error: " << e.what() << "; ";
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    CriterionResult r;
    r.name = "growth-rate fits";
    r.passed = ok && secs < 10.0;
    d << "runtime " << fmt(secs) << " s (< 10)";
    r.detail = d.str();
    return r;
}

CriterionResult c6_explicit(Balance& bal) {
    constexpr double tol = 1e-10;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Params p(1.0, 1.0);
    IntegrateOptions opts;
    opts.tol = tol;
    opts.sample_dt = 0.1;
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const State z0{dist(rng), dist(rng), dist(rng), dist(rng)};
        const Trajectory tr = integrate(p, z0, 50.0, opts);
        bal.add(tr, tol);
        for (std::size_t i = 0; i < tr.size(); ++i) {
            const Vec4 a = tr.states[i].to_vec();
            const Vec4 e = explicit_solution_eps1_b1(z0, tr.times[i]).to_vec();
            for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(a[c] - e[c]));
        }
    }
    CriterionResult r;
    r.name = "integrator vs explicit solution";
    r.passed = worst <= 1e-7;
    r.detail = "10 random z0 on [0,50], max component error " + fmt(worst) + " (<= 1e-7)";
    return r;
}

CriterionResult c7_asymptotic() {
    std::vector<double> sups;
    for (double b : {10.0, 50.0, 200.0}) {
        const Mat4 gen = assemble_matrix(Params(1.0, b)).entries;
        double sup = 0.0;
        // Resolve the fast rotation (period 2 pi / b) with >= 30 samples per period.
        const std::size_t n = static_cast<std::size_t>(std::ceil(20.0 * b * 30.0 / (2.0 * std::numbers::pi)));
        for (std::size_t k = 0; k <= n; ++k) {
            const double t = 20.0 * static_cast<double>(k) / static_cast<double>(n);
            const Mat4 diff = propagator(gen, t).matrix - asymptotic_propagator(b, t);
            sup = std::max(sup, operator_norm(diff));
        }
        sups.push_back(sup);
    }
    CriterionResult r;
    r.name = "large-coupling asymptotics";
    r.passed = sups[1] < sups[0] && sups[2] < sups[1];
    r.detail = "sup_{t<=20} ||S - S_asym|| at b=10,50,200: " + fmt(sups[0]) + ", " + fmt(sups[1]) + ", " +
               fmt(sups[2]) + " (strictly decreasing)";
    return r;
}

CriterionResult c8_periodicity(Balance& bal) {
    bool ok = true;
    std::ostringstream d;
    for (double q : {2.0, 3.0, 4.0, 9.0}) {
        const double b = std::sqrt(q + 1.0 / q - 1.0);
        const double predicted = 2.0 * std::numbers::pi * std::sqrt(q);
        const PortraitCheck pc = periodic_portrait_check(b, 200.0);
        const bool period_ok = pc.rational && std::abs(pc.period - predicted) <= 1e-9 * predicted;
        // Independent check against the predicted period itself.
        IntegrateOptions opts;
        opts.tol = 1e-12;
        const Trajectory tr = integrate(Params(1.0, b), State{1, 0, 0, 0}, predicted, opts);
        bal.add(tr, opts.tol);
        const Vec4 zT = tr.final_state().to_vec();
        const double rec = std::hypot(std::hypot(zT[0] - 1.0, zT[1]), std::hypot(zT[2], zT[3]));
        ok = ok && period_ok && pc.is_periodic && rec <= 1e-6;
        d << "q=" << fmt(q) << " T=" << fmt(pc.period) << " |z(T)-z0|=" << fmt(rec) << "; ";
    }
    const PortraitCheck irr = periodic_portrait_check(std::sqrt(2.0), 200.0);
    ok = ok && !irr.rational && !irr.is_periodic && irr.recurrence_error > 1e-6;
    d << "b=sqrt2 rational=" << (irr.rational ? "yes" : "no") << " closest return on [1,200] "
      << fmt(irr.recurrence_error) << " (> 1e-6)";
    CriterionResult r;
    r.name = "periodic portraits";
    r.passed = ok;
    r.detail = d.str();
    return r;
}

CriterionResult c9_balance(const Balance& bal) {
    CriterionResult r;
    r.name = "energy balance";
    r.passed = bal.count > 0 && bal.worst_ratio <= 1.0;
    r.detail = std::to_string(bal.count) + " trajectories, worst |dE - work| / (100 tol) = " + fmt(bal.worst_ratio) +
               " (<= 1)";
    return r;
}

CriterionResult c10_modal() {
    const auto start = Clock::now();
    const Params p(0.5, 0.75);
    const ModeFamily dir = ModeFamily::dirichlet(64);
    const FamilyBound fb = family_growth_bound(dir, p);
    std::vector<double> with_low = dir.mu();
    with_low.insert(with_low.begin(), 0.001);
    const FamilyBound low = family_growth_bound(ModeFamily(with_low, "dirichlet+0.001"), p);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    CriterionResult r;
    r.name = "modal threshold";
    r.passed = std::abs(fb.sup + 0.125) <= 1e-9 && fb.argmax == 0 && low.sup > -0.125 && secs < 5.0;
    r.detail = "Dirichlet k<=64 sup=" + fmt(fb.sup) + " at mode " + std::to_string(fb.argmax + 1) +
               "; with mu=0.001 prepended sup=" + fmt(low.sup) + " (> -0.125); runtime " + fmt(secs) + " s (< 5)";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream* log) {
    Balance balance;
    const std::vector<std::function<CriterionResult()>> criteria = {
        c1_residuals,
        c2_regimes,
        c3_constants,
        c4_optimal,
        c5_fits,
        [&] { return c6_explicit(balance); },
        c7_asymptotic,
        [&] { return c8_periodicity(balance); },
        [&] { return c9_balance(balance); },
        c10_modal,
    };
    std::vector<CriterionResult> results;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        CriterionResult r;
        try {
            r = criteria[i]();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = static_cast<int>(i + 1);
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (log) {
            *log << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << '\n';
            log->flush();
        }
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

}  // namespace antidamp
