#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "antidamp/core.hpp"

namespace antidamp {

/// S(t) = e^{tA} with its operator norm (largest singular value).
struct PropagatorSample {
    double t = 0.0;
    Mat4 matrix;
    double operator_norm = 0.0;
};

/// Scaling-and-squaring exponential of t * assemble_matrix(p). Requires finite t >= 0.
PropagatorSample propagator(const Params& p, double t);

/// Same for an arbitrary generator (used for modal matrices).
PropagatorSample propagator(const Mat4& generator, double t);

/// Time-sampled solution of z' = A z.
///
/// work[k] is the integral of eps*y^2 - x^2 from times[0] to times[k], integrated
/// alongside the state; E(t_k) - E(t_0) - work[k] is the energy-balance residual.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> energies;
    std::vector<double> work;
    bool truncated = false;  ///< stopped early because the energy cap was exceeded

    std::size_t size() const { return times.size(); }
    const State& final_state() const { return states.back(); }
    double max_balance_residual() const;
    double max_energy() const;
};

struct IntegrateOptions {
    double tol = 1e-10;  ///< absolute and relative tolerance
    /// > 0: record exactly at multiples of sample_dt (and t_end); 0: record every accepted step.
    double sample_dt = 0.0;
    /// Integration stops at the first sample whose energy exceeds this value.
    double energy_cap = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 50'000'000;
    /// Also reject steps whose energy-balance residual exceeds 100 * tol * h / t_end, so the
    /// cumulative |E(t) - E(0) - work(t)| stays within 100 * tol. An absolute budget cannot be
    /// met once rounding in E exceeds it (exponential blow-up); switch off there.
    bool enforce_balance = true;
};

/// Adaptive Dormand-Prince 5(4) integration from t = 0 to t_end.
/// Throws std::invalid_argument on bad arguments, NumericalError on step-size underflow.
Trajectory integrate(const Params& p, const State& z0, double t_end, const IntegrateOptions& opts);
Trajectory integrate(const Params& p, const State& z0, double t_end, double tol = 1e-10);

/// Closed-form solution at eps = 1, b = 1 (the Jordan case), derivatives included.
State explicit_solution_eps1_b1(const State& z0, double t);

/// Large-coupling limit of S(t) at eps = 1: a slow rotation by t/b in the (u, v)
/// plane and a fast rotation by b t in the (u', v') plane. Requires b > 1, t >= 0.
Mat4 asymptotic_propagator(double b, double t);

struct GrowthFit {
    double rate = 0.0;           ///< omega in C (1+t)^d e^{omega t}
    double poly_degree = 0.0;    ///< d
    double log_constant = 0.0;   ///< log C
    double rms_residual = 0.0;   ///< of log ||S(t)|| about the fit
    double t_max = 0.0;
};

/// Least-squares fit of log||S(t)|| ~ log C + d log(1+t) + omega t on `samples` equally
/// spaced times in [t_max/2, t_max].
///
/// t_max <= 0 selects 200, shortened in growing regimes so that ||S|| stays well below
/// 1e100. Throws NumericalError if ||S(t)|| exceeds 1e100 or the rms residual exceeds 0.5.
GrowthFit norm_growth_fit(const Params& p, double t_max = 0.0, std::size_t samples = 400);

struct PortraitCheck {
    double omega_fast = 0.0;  ///< (sqrt(b^2+3) + sqrt(b^2-1)) / 2
    double omega_slow = 0.0;  ///< 1 / omega_fast
    bool rational = false;    ///< omega_fast / omega_slow = num/den within 1e-9 relative
    long num = 0;
    long den = 0;
    double period = 0.0;           ///< common period 2 pi num / omega_fast when rational
    double recurrence_error = 0.0;  ///< ||z(period) - z0||, or min ||z(t) - z0|| over the window
    bool is_periodic = false;
};

/// Frequencies of the eps = 1, b > 1 system and rationality of their ratio
/// (continued fractions, denominators up to 1e4). Fills every field except
/// recurrence_error and is_periodic.
PortraitCheck portrait_frequencies(double b);

/// Periodicity of the eps = 1, b > 1 orbit from z0 = (1, 0, 0, 0).
///
/// The frequency ratio is tested for rationality by continued fractions (denominators
/// up to 1e4). A rational ratio with period <= t_max is confirmed by integrating to the
/// period and requiring ||z(T) - z0|| <= 1e-6; otherwise the orbit is scanned on
/// [1, t_max] for its closest return. Throws std::invalid_argument for b <= 1.
PortraitCheck periodic_portrait_check(double b, double t_max = 200.0);

}  // namespace antidamp
