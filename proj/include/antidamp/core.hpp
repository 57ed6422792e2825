#pragma once

#include <array>

#include "antidamp/linalg.hpp"

namespace antidamp {

/// Parameters of one coupled damped/antidamped oscillator pair.
///
///   u'' + u + u' = b v'
///   v'' + v - eps v' = -b u'
///
/// epsilon >= 0 is the antidamping coefficient, b > 0 the coupling constant.
/// The constructor rejects b <= 0; use normalized() to fold a signed coupling
/// onto |b| (the spectrum depends on b only through b^2).
class Params {
public:
    Params(double epsilon, double b);

    /// Accepts any nonzero coupling and stores |b|.
    static Params normalized(double epsilon, double b);

    double epsilon() const { return epsilon_; }
    double b() const { return b_; }

    friend bool operator==(const Params&, const Params&) = default;

private:
    double epsilon_;
    double b_;
};

/// Phase-space state z = (u, u', v, v').
struct State {
    double u = 0.0;
    double x = 0.0;  ///< u'
    double v = 0.0;
    double y = 0.0;  ///< v'

    Vec4 to_vec() const { return {u, x, v, y}; }
    static State from_vec(const Vec4& z) { return {z[0], z[1], z[2], z[3]}; }
    bool is_finite() const;

    friend bool operator==(const State&, const State&) = default;
};

/// The 4x4 generator of the first-order system z' = A z.
struct SystemMatrix {
    Mat4 entries;
};

SystemMatrix assemble_matrix(const Params& p);

/// Raw form without parameter validation; used for the b -> -b symmetry checks.
SystemMatrix assemble_matrix(double epsilon, double b);

/// E = (u^2 + u'^2 + v^2 + v'^2) / 2.
double energy(const State& s);

/// dE/dt along the flow: eps*y^2 - x^2. The coupling terms cancel.
double energy_rate(const State& s, const Params& p);

}  // namespace antidamp
