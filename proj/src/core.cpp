#include "antidamp/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace antidamp {

Params::Params(double epsilon, double b) : epsilon_(epsilon), b_(b) {
    if (!std::isfinite(epsilon) || epsilon < 0.0)
        throw std::invalid_argument("epsilon must be finite and >= 0, got " + std::to_string(epsilon));
    if (!std::isfinite(b) || b <= 0.0)
        throw std::invalid_argument("coupling b must be finite and > 0, got " + std::to_string(b));
}

Params Params::normalized(double epsilon, double b) { return Params(epsilon, std::abs(b)); }

bool State::is_finite() const {
    return std::isfinite(u) && std::isfinite(x) && std::isfinite(v) && std::isfinite(y);
}

SystemMatrix assemble_matrix(const Params& p) { return assemble_matrix(p.epsilon(), p.b()); }

SystemMatrix assemble_matrix(double epsilon, double b) {
    Mat4 m;
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    m(1, 1) = -1.0;
    m(1, 3) = b;
    m(2, 3) = 1.0;
    m(3, 1) = -b;
    m(3, 2) = -1.0;
    m(3, 3) = epsilon;
    return {m};
}

double energy(const State& s) { return 0.5 * (s.u * s.u + s.x * s.x + s.v * s.v + s.y * s.y); }

double energy_rate(const State& s, const Params& p) { return p.epsilon() * s.y * s.y - s.x * s.x; }

}  // namespace antidamp
