/*
 * calculus.hpp — the projection calculus.
 *
 * Given projections Q, R and an admissible f (f: sigma(QR) -> [0,1],
 * f(0) = 0, f(1) = 1 when 1 is in the spectrum), build
 *
 *   U = Q R x_f(RQR) + Qperp R y_f(RQR),
 *     x_f(s) = sqrt(f(s)/s)        (x_f(0) := 0)
 *     y_f(s) = sqrt((1-f(s))/(1-s))  (y_f(1) := 0)
 *
 * Then U*U = R, P = UU* is a projection Murray-von Neumann equivalent to
 * R, and Q P Q = f(QRQ).  Distances between results of different
 * functions have closed forms:
 *
 *   ||U_f - U_g|| = max sqrt(a_{f,g}),  a = 2(1 - sqrt(fg) - sqrt((1-f)(1-g)))
 *   ||P_f - P_g|| = max |c_{f,g}|,      c = sqrt((1-f)g) - sqrt(f(1-g))
 *   U_f* U_g      = b_{f,g}(RQR) R,     b = sqrt(fg) + sqrt((1-f)(1-g))
 *
 * all maxima over sigma(QR).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "numeric.hpp"
#include "scalar_function.hpp"
#include "types.hpp"

namespace projcalc {

// Pointwise x_f, y_f on a finite spectrum.
inline std::pair<std::vector<double>, std::vector<double>> xf_yf(
    const ScalarFunction& f, const std::vector<double>& spectrum,
    const Tolerances& tol = tolerances()) {
    if (!f.admissible_for(spectrum, tol))
        throw Inadmissible("xf_yf: f(1) != 1 while 1 lies in the spectrum");
    std::vector<double> xs, ys;
    xs.reserve(spectrum.size());
    ys.reserve(spectrum.size());
    for (double s : spectrum) {
        double fs = std::clamp(f(std::clamp(s, 0.0, 1.0)), 0.0, 1.0);
        xs.push_back(s <= 0.0 ? 0.0 : std::sqrt(fs / s));
        ys.push_back(s >= 1.0 ? 0.0 : std::sqrt((1.0 - fs) / (1.0 - s)));
    }
    return {xs, ys};
}

struct CalculusResult {
    Mat                 U;              // partial isometry, U*U = R
    Mat                 P;              // final projection UU*
    std::vector<double> used_spectrum;  // cluster representatives of sigma(QR)
};

namespace detail {

struct UnitSpectralData {
    SpectralDecomposition        dec;
    std::vector<SpectralCluster> clusters;
    std::vector<double>          reps;  // deduplicated, snapped to {0,1}

    UnitSpectralData(const Mat& s, const Tolerances& tol) : dec(hermitian_eig(s, tol)) {
        clusters = cluster_unit_spectrum(dec.eigenvalues, tol.tau_cluster);
        for (const auto& c : clusters)
            if (reps.empty() || std::abs(reps.back() - c.value) > tol.tau_cluster)
                reps.push_back(c.value);
    }

    Mat rebuild(const std::vector<double>& per_cluster) const {
        Eigen::VectorXd vals(static_cast<long>(dec.eigenvalues.size()));
        for (size_t ci = 0; ci < clusters.size(); ++ci)
            for (int k = clusters[ci].lo; k <= clusters[ci].hi; ++k)
                vals(k) = per_cluster[ci];
        return dec.eigenvectors * vals.asDiagonal() * dec.eigenvectors.adjoint();
    }
};

} // namespace detail

inline CalculusResult pc_build(const Mat& q, const Mat& r, const ScalarFunction& f,
                               const Tolerances& tol = tolerances()) {
    require_projection(q, "pc_build", tol);
    require_projection(r, "pc_build", tol);
    detail::UnitSpectralData sd(hermitize(r * q * r), tol);
    if (!f.admissible_for(sd.reps, tol))
        throw Inadmissible("pc_build: f(1) != 1 while 1 lies in sigma(QR)");

    std::vector<double> xs(sd.clusters.size()), ys(sd.clusters.size());
    for (size_t ci = 0; ci < sd.clusters.size(); ++ci) {
        double s = std::clamp(sd.clusters[ci].value, 0.0, 1.0);
        double fs = std::clamp(f(s), 0.0, 1.0);
        xs[ci] = s <= 0.0 ? 0.0 : std::sqrt(fs / s);
        ys[ci] = s >= 1.0 ? 0.0 : std::sqrt((1.0 - fs) / (1.0 - s));
    }
    Mat x = sd.rebuild(xs);
    Mat y = sd.rebuild(ys);

    CalculusResult out;
    out.U = q * r * x + perp(q) * r * y;
    out.P = hermitize(out.U * out.U.adjoint());
    out.used_spectrum = sd.reps;
    return out;
}

// P_{Q,R,t} = P_{Q,R,t*chi}; when [RQR] = R this gives P Q P = t P.
inline CalculusResult pc_constant(const Mat& q, const Mat& r, double t,
                                  const Tolerances& tol = tolerances()) {
    if (t < 0.0 || t > 1.0)
        throw Inadmissible("pc_constant: t must lie in [0,1]");
    return pc_build(q, r, ScalarFunction::constant(t), tol);
}

namespace detail {

inline std::vector<double> pair_spectrum_reps(const Mat& q, const Mat& r,
                                              const Tolerances& tol) {
    return UnitSpectralData(hermitize(r * q * r), tol).reps;
}

} // namespace detail

// max over sigma(QR) of sqrt(a_{f,g}); equals ||U_f - U_g||.
inline double pc_unitary_distance(const Mat& q, const Mat& r, const ScalarFunction& f,
                                  const ScalarFunction& g,
                                  const Tolerances& tol = tolerances()) {
    require_projection(q, "pc_unitary_distance", tol);
    require_projection(r, "pc_unitary_distance", tol);
    auto reps = detail::pair_spectrum_reps(q, r, tol);
    if (!f.admissible_for(reps, tol) || !g.admissible_for(reps, tol))
        throw Inadmissible("pc_unitary_distance: inadmissible function");
    double best = 0.0;
    for (double s : reps) {
        double fs = std::clamp(f(s), 0.0, 1.0), gs = std::clamp(g(s), 0.0, 1.0);
        double a = 2.0 * (1.0 - std::sqrt(fs * gs) - std::sqrt((1.0 - fs) * (1.0 - gs)));
        best = std::max(best, std::sqrt(std::max(a, 0.0)));
    }
    return best;
}

// max over sigma(QR) of |c_{f,g}|; equals ||P_f - P_g||.
inline double pc_projection_distance(const Mat& q, const Mat& r, const ScalarFunction& f,
                                     const ScalarFunction& g,
                                     const Tolerances& tol = tolerances()) {
    require_projection(q, "pc_projection_distance", tol);
    require_projection(r, "pc_projection_distance", tol);
    auto reps = detail::pair_spectrum_reps(q, r, tol);
    if (!f.admissible_for(reps, tol) || !g.admissible_for(reps, tol))
        throw Inadmissible("pc_projection_distance: inadmissible function");
    double best = 0.0;
    for (double s : reps) {
        double fs = std::clamp(f(s), 0.0, 1.0), gs = std::clamp(g(s), 0.0, 1.0);
        double c = std::sqrt((1.0 - fs) * gs) - std::sqrt(fs * (1.0 - gs));
        best = std::max(best, std::abs(c));
    }
    return best;
}

// b_{f,g}(RQR) R, the closed form of U_f* U_g.
inline Mat pc_b_product(const Mat& q, const Mat& r, const ScalarFunction& f,
                        const ScalarFunction& g, const Tolerances& tol = tolerances()) {
    detail::UnitSpectralData sd(hermitize(r * q * r), tol);
    std::vector<double> bs(sd.clusters.size());
    for (size_t ci = 0; ci < sd.clusters.size(); ++ci) {
        double s = std::clamp(sd.clusters[ci].value, 0.0, 1.0);
        double fs = std::clamp(f(s), 0.0, 1.0), gs = std::clamp(g(s), 0.0, 1.0);
        bs[ci] = std::sqrt(fs * gs) + std::sqrt((1.0 - fs) * (1.0 - gs));
    }
    return sd.rebuild(bs) * r;
}

} // namespace projcalc
