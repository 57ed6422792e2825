#include "antidamp/modal.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "antidamp/errors.hpp"
#include "antidamp/spectrum.hpp"

namespace antidamp {

ModeFamily::ModeFamily(std::vector<double> mu, std::string label) : mu_(std::move(mu)), label_(std::move(label)) {
    if (mu_.empty()) throw std::invalid_argument("ModeFamily: no modes");
    for (std::size_t k = 0; k < mu_.size(); ++k) {
        if (!std::isfinite(mu_[k]) || mu_[k] <= 0.0)
            throw std::invalid_argument("ModeFamily: mode values must be finite and > 0");
        if (k > 0 && !(mu_[k] > mu_[k - 1]))
            throw std::invalid_argument("ModeFamily: mode values must be strictly increasing");
    }
}

ModeFamily ModeFamily::from_values(std::vector<double> values, std::string label) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return ModeFamily(std::move(values), std::move(label));
}

ModeFamily ModeFamily::dirichlet(std::size_t count, double length) {
    if (count == 0 || !(length > 0.0)) throw std::invalid_argument("ModeFamily::dirichlet: bad arguments");
    std::vector<double> mu(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double w = static_cast<double>(k + 1) * std::numbers::pi / length;
        mu[k] = w * w;
    }
    std::ostringstream label;
    label << "Dirichlet Laplacian on (0," << length << "), " << count << " modes";
    return ModeFamily(std::move(mu), label.str());
}

ModeFamily ModeFamily::parse(std::istream& in, std::string label) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double v;
        if (!(ls >> v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw std::invalid_argument("mode file line " + std::to_string(line_no) + ": not a number");
        }
        std::string rest;
        if (ls >> rest)
            throw std::invalid_argument("mode file line " + std::to_string(line_no) + ": trailing text");
        values.push_back(v);
    }
    return from_values(std::move(values), std::move(label));
}

ModeFamily ModeFamily::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mode file: " + path);
    return parse(in, path);
}

Mat4 mode_matrix(double mu, const Params& p) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mode_matrix: mu must be > 0");
    Mat4 m = assemble_matrix(p).entries;
    m(1, 0) = -mu;
    m(3, 2) = -mu;
    return m;
}

std::array<double, 5> mode_poly_coeffs(double mu, const Params& p) {
    const double e = p.epsilon(), b = p.b();
    return {1.0, 1.0 - e, 2.0 * mu + b * b - e, mu * (1.0 - e), mu * mu};
}

std::array<Complex, 4> mode_eigenvalues(double mu, const Params& p) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mode_eigenvalues: mu must be > 0");
    return reciprocal_quartic_roots(p.epsilon(), p.b(), mu);
}

std::array<Complex, 4> mode_eigenvalues_dense(double mu, const Params& p) {
    const Mat4 m = mode_matrix(mu, p);
    Eigen::Matrix4d em;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) em(i, j) = m(i, j);
    Eigen::EigenSolver<Eigen::Matrix4d> solver(em, false);
    if (solver.info() != Eigen::Success) throw NumericalError("mode_eigenvalues_dense: no convergence");
    std::array<Complex, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

double mode_growth_bound(double mu, const Params& p) {
    const auto roots = mode_eigenvalues(mu, p);
    double best = roots[0].real();
    for (const auto& r : roots) best = std::max(best, r.real());
    return best;
}

FamilyBound family_growth_bound(const ModeFamily& f, const Params& p, std::size_t tail_check) {
    FamilyBound out;
    out.bounds.reserve(f.size());
    out.defects.reserve(f.size());
    for (double mu : f.mu()) {
        const auto roots = mode_eigenvalues(mu, p);
        std::size_t dom = 0;
        for (std::size_t i = 1; i < 4; ++i)
            if (roots[i].real() > roots[dom].real()) dom = i;
        out.bounds.push_back(roots[dom].real());
        out.defects.push_back(eigenvalue_defect(mode_matrix(mu, p), roots[dom], roots));
    }

    out.sup = out.bounds.front();
    for (std::size_t k = 1; k < out.bounds.size(); ++k)
        if (out.bounds[k] > out.sup) {
            out.sup = out.bounds[k];
            out.argmax = k;
        }

    // Differences across the tail must shrink (or vanish) for the truncation to be trusted.
    const std::size_t n = out.bounds.size();
    const std::size_t tail = std::min(tail_check, n);
    constexpr double slack = 1e-12;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = n - tail + 1; k < n; ++k) {
        const double gap = std::abs(out.bounds[k] - out.bounds[k - 1]);
        if (gap > prev_gap + slack)
            throw NumericalError("family_growth_bound: tail is not stabilizing at mode " + std::to_string(k));
        prev_gap = gap;
    }
    return out;
}

bool threshold_check(const ModeFamily& f, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("threshold_check: requires 0 <= eps < 1");
    const double r = 1.0 - epsilon;
    return f.first() >= r * r / 16.0;
}

}  // namespace antidamp
