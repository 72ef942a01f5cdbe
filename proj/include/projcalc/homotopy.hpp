/*
 * homotopy.hpp — constructive projection homotopies, sampled.
 *
 * Close pairs (||Q - R|| < 1) are joined by P_{Q,R,f_t} along the line
 * f_t = (1-t) id + t chi.  Murray-von Neumann equivalent orthogonal pairs
 * are joined by conjugating with S_t = R' - e^{i pi t} Q', the +-1
 * spectral halves of S = U + U*.  The general MvN case first deforms R to
 * a projection orthogonal to Q via f_t = (1-t) id, then runs the
 * orthogonal path on the composed witness.
 *
 * Sample parameters are chord-equalized against the closed-form step
 * distance: the distance to the endpoint function degenerates like
 * sqrt(1-t), so a uniform grid cannot halve its mesh under refinement.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "calculus.hpp"
#include "numeric.hpp"
#include "support.hpp"
#include "types.hpp"

namespace projcalc {

struct HomotopyPath {
    std::vector<Mat>    steps;       // projections
    std::vector<double> parameters;  // ascending in [0,1]
    Mat                 start;
    Mat                 end;

    double max_adjacent_distance() const {
        double m = 0.0;
        for (size_t i = 0; i + 1 < steps.size(); ++i)
            m = std::max(m, operator_norm(steps[i + 1] - steps[i]));
        return m;
    }
};

namespace detail {

// Parameter grid with equal closed-form distance between neighbours.
inline std::vector<double> chord_equalized_grid(
    int n_steps, const std::function<double(double, double)>& dist) {
    constexpr int fine = 512;
    std::vector<double> ts(fine + 1), cum(fine + 1, 0.0);
    for (int i = 0; i <= fine; ++i) {
        double tau = static_cast<double>(i) / fine;
        ts[static_cast<size_t>(i)] = 1.0 - (1.0 - tau) * (1.0 - tau);
    }
    for (int i = 0; i < fine; ++i)
        cum[static_cast<size_t>(i + 1)] =
            cum[static_cast<size_t>(i)] +
            dist(ts[static_cast<size_t>(i)], ts[static_cast<size_t>(i + 1)]);

    std::vector<double> grid(static_cast<size_t>(n_steps));
    grid.front() = 0.0;
    grid.back() = 1.0;
    const double total = cum.back();
    if (total <= 1e-14) {
        for (int k = 0; k < n_steps; ++k)
            grid[static_cast<size_t>(k)] =
                static_cast<double>(k) / static_cast<double>(n_steps - 1);
        return grid;
    }
    for (int k = 1; k + 1 < n_steps; ++k) {
        double target = total * static_cast<double>(k) / static_cast<double>(n_steps - 1);
        auto it = std::lower_bound(cum.begin(), cum.end(), target);
        size_t j = std::min<size_t>(static_cast<size_t>(it - cum.begin()),
                                    static_cast<size_t>(fine));
        if (j == 0) j = 1;
        double c0 = cum[j - 1], c1 = cum[j];
        double w = c1 > c0 ? (target - c0) / (c1 - c0) : 0.0;
        grid[static_cast<size_t>(k)] = ts[j - 1] + w * (ts[j] - ts[j - 1]);
    }
    return grid;
}

inline double line_family_distance(const std::vector<double>& reps, double t0, double t1) {
    double best = 0.0;
    for (double s : reps) {
        if (s <= 0.0) continue;  // the whole family vanishes at 0
        double f0 = std::clamp(s + t0 * (1.0 - s), 0.0, 1.0);
        double f1 = std::clamp(s + t1 * (1.0 - s), 0.0, 1.0);
        double c = std::sqrt((1.0 - f0) * f1) - std::sqrt(f0 * (1.0 - f1));
        best = std::max(best, std::abs(c));
    }
    return best;
}

inline double scale_family_distance(const std::vector<double>& reps, double t0, double t1) {
    double best = 0.0;
    for (double s : reps) {
        if (s <= 0.0) continue;
        double f0 = std::clamp((1.0 - t0) * s, 0.0, 1.0);
        double f1 = std::clamp((1.0 - t1) * s, 0.0, 1.0);
        double c = std::sqrt((1.0 - f0) * f1) - std::sqrt(f0 * (1.0 - f1));
        best = std::max(best, std::abs(c));
    }
    return best;
}

} // namespace detail

// Path from R to Q along P_{Q,R,(1-t)id + t chi}; requires ||Q - R|| < 1.
inline HomotopyPath homotopy_close(const Mat& q, const Mat& r, int n_steps,
                                   const Tolerances& tol = tolerances()) {
    require_projection(q, "homotopy_close", tol);
    require_projection(r, "homotopy_close", tol);
    if (n_steps < 2) throw BadInterval("homotopy_close: need n_steps >= 2");
    if (operator_norm(q - r) >= 1.0 - tol.tau_cluster)
        throw PairTooFar("homotopy_close: ||Q - R|| too close to 1");
    HomotopyPath path;
    path.start = r;
    path.end = q;
    auto reps = detail::pair_spectrum_reps(q, r, tol);
    auto grid = detail::chord_equalized_grid(n_steps, [&reps](double a, double b) {
        return detail::line_family_distance(reps, a, b);
    });
    for (double t : grid) {
        path.parameters.push_back(t);
        path.steps.push_back(pc_build(q, r, ScalarFunction::homotopy_line(t), tol).P);
    }
    return path;
}

// Path from Q = U*U to R = UU* when QR = 0, via S_t R S_t* with
// S_t = R' - e^{i pi t} Q'.
inline HomotopyPath homotopy_orthogonal_mvn(const Mat& u, int n_steps,
                                            const Tolerances& tol = tolerances()) {
    if (!is_partial_isometry(u, tol))
        throw NotPartialIsometry("homotopy_orthogonal_mvn: not a partial isometry");
    if (n_steps < 2) throw BadInterval("homotopy_orthogonal_mvn: need n_steps >= 2");
    Mat q = hermitize(u.adjoint() * u);
    Mat r = hermitize(u * u.adjoint());
    if (operator_norm(q * r) > 10.0 * tol.tau_eq)
        throw NotOrthogonal("homotopy_orthogonal_mvn: QR != 0");

    HomotopyPath path;
    path.start = q;
    path.end = r;
    Mat s = hermitize(u + u.adjoint());  // spectrum inside {-1, 0, 1}
    Mat rp = spectral_projection_above(s, 0.5, false, tol);
    Mat qp = spectral_projection_above(Mat(-s), 0.5, false, tol);
    for (int i = 0; i < n_steps; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(n_steps - 1);
        path.parameters.push_back(t);
        cx phase = std::exp(cx(0.0, std::numbers::pi * t));
        Mat st = rp - phase * qp;
        path.steps.push_back(hermitize(st * r * st.adjoint()));
    }
    return path;
}

// General MvN case with ||QR|| < 1: R -> P (QPQ = 0) -> Q, concatenating
// the scale-down phase with the reversed orthogonal phase.
inline HomotopyPath homotopy_mvn(const Mat& u, int n_steps,
                                 const Tolerances& tol = tolerances()) {
    if (!is_partial_isometry(u, tol))
        throw NotPartialIsometry("homotopy_mvn: not a partial isometry");
    if (n_steps < 2) throw BadInterval("homotopy_mvn: need n_steps >= 2");
    Mat q = hermitize(u.adjoint() * u);
    Mat r = hermitize(u * u.adjoint());
    if (operator_norm(q * r) >= 1.0 - tol.tau_cluster)
        throw NormTooLarge("homotopy_mvn: ||QR|| too close to 1");

    HomotopyPath path;
    path.start = r;
    path.end = q;

    // Phase 1: P_{Q,R,(1-t)id} from R down to P with QPQ = 0.
    auto reps = detail::pair_spectrum_reps(q, r, tol);
    auto grid = detail::chord_equalized_grid(n_steps, [&reps](double a, double b) {
        return detail::scale_family_distance(reps, a, b);
    });
    CalculusResult last;
    for (int i = 0; i < n_steps; ++i) {
        path.parameters.push_back(0.5 * static_cast<double>(i) /
                                  static_cast<double>(n_steps - 1));
        last = pc_build(q, r, ScalarFunction::scale(grid[static_cast<size_t>(i)]), tol);
        path.steps.push_back(last.P);
    }

    // Composite witness V = U_1 U: V*V = Q, VV* = P.
    Mat v = last.U * u;
    HomotopyPath orth = homotopy_orthogonal_mvn(v, n_steps, tol);

    // Reverse: P (t = 1 of the orthogonal path) back to Q, skipping the
    // duplicated junction step.
    for (int i = n_steps - 2; i >= 0; --i) {
        path.parameters.push_back(0.5 + 0.5 * (1.0 - orth.parameters[static_cast<size_t>(i)]));
        path.steps.push_back(orth.steps[static_cast<size_t>(i)]);
    }
    return path;
}

} // namespace projcalc
