/*
 * scalar_function.hpp — piecewise-linear functions on [0,1].
 *
 * These are the admissible functions of the projection calculus: f maps
 * [0,1] into [0,1] with f(0) = 0, and f(1) = 1 whenever 1 belongs to the
 * spectrum it is applied to.  A jump_at_zero flag models chi-type
 * functions that vanish at 0 but are piecewise linear on (0,1]; the first
 * breakpoint then carries the right-hand limit at 0.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"
#include "types.hpp"

namespace projcalc {

struct ScalarFunction {
    std::vector<std::pair<double, double>> breakpoints;  // sorted by x, in [0,1]x[0,1]
    bool jump_at_zero = false;

    ScalarFunction() = default;
    ScalarFunction(std::vector<std::pair<double, double>> bp, bool jump = false)
        : breakpoints(std::move(bp)), jump_at_zero(jump) {
        validate();
    }

    void validate() const {
        if (breakpoints.empty())
            throw DomainError("ScalarFunction: needs at least one breakpoint");
        double prev = -1.0;
        for (const auto& [x, y] : breakpoints) {
            if (x < -1e-12 || x > 1.0 + 1e-12 || y < -1e-12 || y > 1.0 + 1e-12)
                throw DomainError("ScalarFunction: breakpoints must lie in [0,1]x[0,1]");
            if (x < prev)
                throw DomainError("ScalarFunction: breakpoints must be sorted by x");
            prev = x;
        }
        if (std::abs(breakpoints.front().first) > 1e-12)
            throw DomainError("ScalarFunction: first breakpoint must sit at x = 0");
        if (!jump_at_zero && std::abs(breakpoints.front().second) > 1e-12)
            throw DomainError("ScalarFunction: f(0) must be 0");
    }

    // Pointwise evaluation; exactly 0 at 0 when jump_at_zero.
    double operator()(double s) const {
        if (jump_at_zero && s <= 0.0) return 0.0;
        if (s <= breakpoints.front().first) return breakpoints.front().second;
        if (s >= breakpoints.back().first) return breakpoints.back().second;
        for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
            double x0 = breakpoints[i].first, x1 = breakpoints[i + 1].first;
            if (s <= x1) {
                if (x1 - x0 <= 1e-15) return breakpoints[i + 1].second;
                double w = (s - x0) / (x1 - x0);
                return (1.0 - w) * breakpoints[i].second + w * breakpoints[i + 1].second;
            }
        }
        return breakpoints.back().second;
    }

    // Admissible against a spectrum: f(1) = 1 whenever 1 is present.
    bool admissible_for(const std::vector<double>& spectrum,
                        const Tolerances& tol = tolerances()) const {
        for (double s : spectrum)
            if (std::abs(s - 1.0) <= tol.tau_cluster && std::abs((*this)(1.0) - 1.0) > tol.tau_eq)
                return false;
        return true;
    }

    static ScalarFunction identity() { return ScalarFunction({{0.0, 0.0}, {1.0, 1.0}}); }

    // Characteristic function of (0, 1].
    static ScalarFunction chi() { return ScalarFunction({{0.0, 1.0}, {1.0, 1.0}}, true); }

    // f(s) = min(s, c).
    static ScalarFunction cap(double c) {
        c = std::clamp(c, 0.0, 1.0);
        if (c >= 1.0) return identity();
        return ScalarFunction({{0.0, 0.0}, {c, c}, {1.0, c}});
    }

    // t * chi: the constant-t function away from 0.
    static ScalarFunction constant(double t) {
        t = std::clamp(t, 0.0, 1.0);
        if (t == 0.0) return ScalarFunction({{0.0, 0.0}, {1.0, 0.0}});
        return ScalarFunction({{0.0, t}, {1.0, t}}, true);
    }

    // g(s) = max(s, c) away from 0 (used to push spectrum upward).
    static ScalarFunction floor_at(double c) {
        c = std::clamp(c, 0.0, 1.0);
        if (c <= 0.0) return identity();
        return ScalarFunction({{0.0, c}, {c, c}, {1.0, 1.0}}, true);
    }

    // f_t(s) = (1-t)s + t on (0,1], 0 at 0: the line from id to chi.
    static ScalarFunction homotopy_line(double t) {
        t = std::clamp(t, 0.0, 1.0);
        if (t == 0.0) return identity();
        return ScalarFunction({{0.0, t}, {1.0, 1.0}}, true);
    }

    // f_t(s) = (1-t)s: the line from id to 0.
    static ScalarFunction scale(double t) {
        t = std::clamp(t, 0.0, 1.0);
        return ScalarFunction({{0.0, 0.0}, {1.0, 1.0 - t}});
    }

    // Shorthand names accepted by the CLI: "id", "chi", "cap:c", "const:t".
    static ScalarFunction parse(const std::string& name) {
        if (name == "id") return identity();
        if (name == "chi") return chi();
        if (name.rfind("cap:", 0) == 0) return cap(std::stod(name.substr(4)));
        if (name.rfind("const:", 0) == 0) return constant(std::stod(name.substr(6)));
        throw DomainError("ScalarFunction: unknown shorthand '" + name + "'");
    }
};

// Functional calculus with a ScalarFunction: requires sigma(S) inside
// [0,1].  Cluster representatives are snapped exactly onto {0,1} so that
// jump-at-zero functions see true kernels as 0.
inline Mat apply_function(const Mat& s, const ScalarFunction& f,
                          const Tolerances& tol = tolerances()) {
    auto dec = hermitian_eig(s, tol);
    for (double v : dec.eigenvalues)
        if (v < -tol.tau_cluster || v > 1.0 + tol.tau_cluster)
            throw DomainError("apply_function: eigenvalue outside the function domain [0,1]");
    auto clusters = cluster_unit_spectrum(dec.eigenvalues, tol.tau_cluster);
    Eigen::VectorXd vals(static_cast<long>(dec.eigenvalues.size()));
    for (const auto& c : clusters) {
        double fv = f(std::clamp(c.value, 0.0, 1.0));
        for (int k = c.lo; k <= c.hi; ++k) vals(k) = fv;
    }
    return dec.eigenvectors * vals.asDiagonal() * dec.eigenvectors.adjoint();
}

} // namespace projcalc
