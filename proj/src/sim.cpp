#include "antidamp/sim.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "antidamp/errors.hpp"
#include "antidamp/spectrum.hpp"

namespace antidamp {

PropagatorSample propagator(const Mat4& generator, double t) {
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("propagator: t must be finite and >= 0");
    PropagatorSample s;
    s.t = t;
    s.matrix = expm(t * generator);
    s.operator_norm = operator_norm(s.matrix);
    return s;
}

PropagatorSample propagator(const Params& p, double t) { return propagator(assemble_matrix(p).entries, t); }

double Trajectory::max_balance_residual() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < size(); ++k)
        worst = std::max(worst, std::abs(energies[k] - energies[0] - work[k]));
    return worst;
}

double Trajectory::max_energy() const { return energies.empty() ? 0.0 : *std::max_element(energies.begin(), energies.end()); }

namespace {

// State augmented with the accumulated work integral.
using Aug = std::array<double, 5>;

Aug rhs(const Mat4& a, double epsilon, const Aug& z) {
    Aug d{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) d[i] += a(i, j) * z[j];
    d[4] = epsilon * z[3] * z[3] - z[1] * z[1];
    return d;
}

// Dormand-Prince 5(4) tableau. The system is autonomous, so the nodes c_i are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
    Aug y;
    Aug inc;  // y - y_old before rounding into y
    Aug k7;
    double err;
};

StepResult dopri_step(const Mat4& a, double eps, const Aug& y, const Aug& k1, double h, double tol) {
    auto comb = [&](std::initializer_list<std::pair<double, const Aug*>> terms) {
        Aug out = y;
        for (const auto& [coef, k] : terms)
            for (std::size_t i = 0; i < 5; ++i) out[i] += h * coef * (*k)[i];
        return out;
    };
    const Aug k2 = rhs(a, eps, comb({{a21, &k1}}));
    const Aug k3 = rhs(a, eps, comb({{a31, &k1}, {a32, &k2}}));
    const Aug k4 = rhs(a, eps, comb({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Aug k5 = rhs(a, eps, comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Aug k6 = rhs(a, eps, comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    Aug inc{};
    for (std::size_t i = 0; i < 5; ++i)
        inc[i] = h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    Aug y_new = y;
    for (std::size_t i = 0; i < 5; ++i) y_new[i] += inc[i];
    const Aug k7 = rhs(a, eps, y_new);

    double sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        sum += (e / sc) * (e / sc);
    }
    return {y_new, inc, k7, std::sqrt(sum / 5.0)};
}

void record(Trajectory& tr, double t, const Aug& y) {
    const State s{y[0], y[1], y[2], y[3]};
    tr.times.push_back(t);
    tr.states.push_back(s);
    tr.energies.push_back(energy(s));
    tr.work.push_back(y[4]);
}

}  // namespace

Trajectory integrate(const Params& p, const State& z0, double t_end, const IntegrateOptions& opts) {
    if (!(std::isfinite(t_end) && t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");
    if (opts.sample_dt < 0.0) throw std::invalid_argument("integrate: sample_dt must be >= 0");
    if (!z0.is_finite()) throw std::invalid_argument("integrate: non-finite initial state");

    const Mat4 a = assemble_matrix(p).entries;
    const double eps = p.epsilon();

    Trajectory tr;
    Aug y{z0.u, z0.x, z0.v, z0.y, 0.0};
    double t = 0.0;
    record(tr, t, y);

    std::size_t next_sample = 1;
    auto sample_time = [&](std::size_t k) {
        return opts.sample_dt > 0.0 ? std::min(t_end, static_cast<double>(k) * opts.sample_dt) : t_end;
    };

    Aug k1 = rhs(a, eps, y);
    double h = std::min(1e-2, t_end);
    for (std::size_t step = 0; t < t_end; ++step) {
        if (step >= opts.max_steps) throw NumericalError("integrate: step budget exhausted");
        const double target = sample_time(next_sample);
        bool clipped = false;
        double h_try = h;
        // Stretch by up to 1% rather than leave a sliver before the sample time.
        if (t + 1.01 * h_try >= target) {
            h_try = target - t;
            clipped = true;
        }
        if (h_try < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw NumericalError("integrate: step size underflow at t = " + std::to_string(t));

        StepResult r = dopri_step(a, eps, y, k1, h_try, opts.tol);
        if (!std::isfinite(r.err)) throw NumericalError("integrate: non-finite state at t = " + std::to_string(t));
        if (opts.enforce_balance) {
            // (a^2 - b^2)/2 summed as (a - b)(a + b)/2 to avoid cancellation.
            double de = 0.0;
            for (std::size_t i = 0; i < 4; ++i) de += 0.5 * r.inc[i] * (r.y[i] + y[i]);
            const double residual = std::abs(de - r.inc[4]);
            r.err = std::max(r.err, residual / (100.0 * opts.tol * h_try / t_end));
        }
        const double factor = r.err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(r.err, -0.2), 0.2, 5.0);
        if (r.err > 1.0) {
            h = h_try * std::max(0.2, factor);
            continue;
        }

        t = clipped ? target : t + h_try;
        y = r.y;
        k1 = r.k7;
        // A clipped step says nothing about the controller's preferred size.
        if (!clipped || factor < 1.0) h = h_try * factor;

        const bool at_sample = opts.sample_dt == 0.0 || clipped;
        if (at_sample) {
            record(tr, t, y);
            if (clipped) ++next_sample;
            if (tr.energies.back() > opts.energy_cap) {
                tr.truncated = true;
                break;
            }
        }
    }
    return tr;
}

Trajectory integrate(const Params& p, const State& z0, double t_end, double tol) {
    IntegrateOptions opts;
    opts.tol = tol;
    return integrate(p, z0, t_end, opts);
}

State explicit_solution_eps1_b1(const State& z0, double t) {
    const double u0 = z0.u, x0 = z0.x, v0 = z0.v, y0 = z0.y;
    const double c = std::cos(t), s = std::sin(t);

    const double pu = 2 * u0 - t * u0 + t * v0, dpu = -u0 + v0;
    const double qu = u0 - v0 + 2 * x0 - t * x0 + t * y0, dqu = -x0 + y0;
    const double pv = -t * u0 + 2 * v0 + t * v0, dpv = -u0 + v0;
    const double qv = u0 - v0 - t * x0 + 2 * y0 + t * y0, dqv = -x0 + y0;

    State out;
    out.u = 0.5 * (pu * c + qu * s);
    out.x = 0.5 * (dpu * c - pu * s + dqu * s + qu * c);
    out.v = 0.5 * (pv * c + qv * s);
    out.y = 0.5 * (dpv * c - pv * s + dqv * s + qv * c);
    return out;
}

Mat4 asymptotic_propagator(double b, double t) {
    if (!(b > 1.0)) throw std::invalid_argument("asymptotic_propagator: requires b > 1");
    if (!(t >= 0.0)) throw std::invalid_argument("asymptotic_propagator: requires t >= 0");
    const double cs = std::cos(t / b), ss = std::sin(t / b);
    const double cf = std::cos(b * t), sf = std::sin(b * t);
    Mat4 m;
    m(0, 0) = cs;
    m(0, 2) = -ss;
    m(1, 1) = cf;
    m(1, 3) = sf;
    m(2, 0) = ss;
    m(2, 2) = cs;
    m(3, 1) = -sf;
    m(3, 3) = cf;
    return m;
}

GrowthFit norm_growth_fit(const Params& p, double t_max, std::size_t samples) {
    if (samples < 10) throw std::invalid_argument("norm_growth_fit: need at least 10 samples");
    constexpr double overflow = 1e100;
    if (t_max <= 0.0) {
        t_max = 200.0;
        const double omega = growth_bound(p);
        if (omega > 0.0) t_max = std::min(t_max, 0.8 * std::log(overflow) / omega);
    }

    const Mat4 a = assemble_matrix(p).entries;
    Eigen::MatrixXd design(static_cast<Eigen::Index>(samples), 3);
    Eigen::VectorXd target(static_cast<Eigen::Index>(samples));
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = t_max / 2.0 + (t_max / 2.0) * static_cast<double>(k) / static_cast<double>(samples - 1);
        const double norm = propagator(a, t).operator_norm;
        if (!(norm <= overflow)) throw NumericalError("norm_growth_fit: ||S(t)|| overflowed 1e100 before t_max");
        const auto row = static_cast<Eigen::Index>(k);
        design(row, 0) = 1.0;
        design(row, 1) = std::log1p(t);
        design(row, 2) = t;
        target(row) = std::log(norm);
    }
    const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(target);
    const Eigen::VectorXd resid = target - design * coef;

    GrowthFit fit;
    fit.log_constant = coef(0);
    fit.poly_degree = coef(1);
    fit.rate = coef(2);
    fit.rms_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(samples));
    fit.t_max = t_max;
    if (fit.rms_residual > 0.5) throw NumericalError("norm_growth_fit: residual too large, fit rejected");
    return fit;
}

PortraitCheck portrait_frequencies(double b) {
    if (!(b > 1.0)) throw std::invalid_argument("periodic_portrait_check: requires b > 1");
    PortraitCheck out;
    const double fast = std::sqrt(b * b + 3.0);
    const double slow = std::sqrt(b * b - 1.0);
    out.omega_fast = (fast + slow) / 2.0;
    out.omega_slow = 2.0 / (fast + slow);  // the two frequencies multiply to 1
    const double ratio = out.omega_fast / out.omega_slow;

    constexpr long den_cap = 10'000;
    constexpr double rational_tol = 1e-9;
    long h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    double x = ratio;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(x);
        const long h = static_cast<long>(a) * h1 + h2;
        const long k = static_cast<long>(a) * k1 + k2;
        if (k > den_cap) break;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        if (std::abs(ratio - static_cast<double>(h) / static_cast<double>(k)) <= rational_tol * ratio) {
            out.rational = true;
            out.num = h;
            out.den = k;
            break;
        }
        const double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (out.rational) out.period = 2.0 * std::numbers::pi * static_cast<double>(out.num) / out.omega_fast;
    return out;
}

PortraitCheck periodic_portrait_check(double b, double t_max) {
    PortraitCheck out = portrait_frequencies(b);
    if (!(t_max > 1.0)) throw std::invalid_argument("periodic_portrait_check: t_max must exceed 1");

    const Params p(1.0, b);
    const State z0{1.0, 0.0, 0.0, 0.0};
    auto distance = [&z0](const State& z) {
        return norm_2({z.u - z0.u, z.x - z0.x, z.v - z0.v, z.y - z0.y});
    };

    if (out.rational) {
        if (out.period <= t_max) {
            const Trajectory tr = integrate(p, z0, out.period, 1e-12);
            out.recurrence_error = distance(tr.final_state());
            out.is_periodic = out.recurrence_error <= 1e-6;
            return out;
        }
    }

    IntegrateOptions opts;
    opts.tol = 1e-12;
    opts.sample_dt = 0.01;
    const Trajectory tr = integrate(p, z0, t_max, opts);
    out.recurrence_error = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < tr.size(); ++k)
        if (tr.times[k] >= 1.0) out.recurrence_error = std::min(out.recurrence_error, distance(tr.states[k]));
    out.is_periodic = false;
    return out;
}

}  // namespace antidamp
