/*
 * support.hpp — support projections and quasi-inverses.
 *
 * For well-supported T the left support is [T] = chi(TT*) and the
 * quasi-inverse is T^{-1} = T*(TT*)^{-1}, the Moore-Penrose inverse.
 * The governing identities:
 *
 *   T T^{-1} = [T]        T^{-1} T = [T*] = [T^{-1}]
 *   T T^{-1} T = T        T^{-1} T T^{-1} = T^{-1}
 *   ||T^{-1}||^2 = 1 / min(sigma(TT*) \ {0})
 *
 * Conventions for T = 0: [0] = 0, 0^{-1} = 0, polar(0) = (0, 0).
 *
 * Zero / nonzero classification runs on the singular values of T, which
 * Jacobi SVD delivers with high relative accuracy; a singular value is an
 * exact zero when it falls below a machine-relative floor, and the input
 * is numerically degenerate when a genuinely nonzero eigenvalue of TT*
 * sits at or below tau_wellsup.
 */
#pragma once

#include <cmath>
#include <limits>

#include "numeric.hpp"
#include "types.hpp"

namespace projcalc {

namespace detail {

struct SvdParts {
    Eigen::JacobiSVD<Mat> svd;
    double                floor;  // singular values at or below this are exact zeros
    int                   rank;

    explicit SvdParts(const Mat& t)
        : svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV) {
        const auto& s = svd.singularValues();
        double smax = s.size() > 0 ? s(0) : 0.0;
        floor = 64.0 * std::numeric_limits<double>::epsilon() *
                static_cast<double>(std::max<long>(t.rows(), 1)) * std::max(smax, 0.0);
        rank = 0;
        for (long i = 0; i < s.size(); ++i)
            if (s(i) > floor) ++rank;
    }
};

} // namespace detail

struct SupportInfo {
    bool   well_supported;
    double gap;  // min(sigma(TT*) \ {0}), +inf for T = 0
};

inline SupportInfo is_well_supported(const Mat& t, const Tolerances& tol = tolerances()) {
    detail::SvdParts sv(t);
    double gap = std::numeric_limits<double>::infinity();
    const auto& s = sv.svd.singularValues();
    for (long i = 0; i < s.size(); ++i)
        if (s(i) > sv.floor) gap = std::min(gap, s(i) * s(i));
    return {gap > tol.tau_wellsup, gap};
}

inline void require_well_supported(const Mat& t, const char* where,
                                   const Tolerances& tol = tolerances()) {
    auto info = is_well_supported(t, tol);
    if (!info.well_supported)
        throw NumericallyDegenerate(std::string(where) +
                                    ": spectral gap above zero is below tau_wellsup");
}

inline int numeric_rank_svd(const Mat& t) { return detail::SvdParts(t).rank; }

// Support of a positive self-adjoint operator, chi_(0,inf)(S).
inline Mat support_of_positive(const Mat& s, const Tolerances& tol = tolerances()) {
    auto dec = hermitian_eig(s, tol);
    double floor = zero_floor(dec.eigenvalues);
    Eigen::VectorXd vals(static_cast<long>(dec.eigenvalues.size()));
    for (size_t i = 0; i < dec.eigenvalues.size(); ++i)
        vals(static_cast<long>(i)) = dec.eigenvalues[i] > floor ? 1.0 : 0.0;
    return dec.eigenvectors * vals.asDiagonal() * dec.eigenvectors.adjoint();
}

// Left support projection [T]: the projection onto the range of T.
inline Mat left_support(const Mat& t, const Tolerances& tol = tolerances()) {
    require_well_supported(t, "left_support", tol);
    detail::SvdParts sv(t);
    const Mat& u = sv.svd.matrixU();
    Mat ur = u.leftCols(sv.rank);
    Mat out = Mat::Zero(t.rows(), t.rows());
    out.noalias() = ur * ur.adjoint();
    return hermitize(out);
}

// Moore-Penrose quasi-inverse T^{-1} = T*(TT*)^{-1}.
inline Mat quasi_inverse(const Mat& t, const Tolerances& tol = tolerances()) {
    require_well_supported(t, "quasi_inverse", tol);
    detail::SvdParts sv(t);
    const auto& s = sv.svd.singularValues();
    Mat ur = sv.svd.matrixU().leftCols(sv.rank);
    Mat vr = sv.svd.matrixV().leftCols(sv.rank);
    Eigen::VectorXd inv(sv.rank);
    for (int i = 0; i < sv.rank; ++i) inv(i) = 1.0 / s(i);
    return vr * inv.asDiagonal() * ur.adjoint();
}

// Spectral projection of S for (t, inf), or [t, inf) when strict.
// The threshold must sit in a spectral gap unless strict deliberately
// includes the cluster at t.
inline Mat spectral_projection_above(const Mat& s, double t, bool strict = false,
                                     const Tolerances& tol = tolerances()) {
    auto dec = hermitian_eig(s, tol);
    auto clusters = cluster_eigenvalues(dec.eigenvalues, tol.tau_cluster);
    if (!strict) {
        for (const auto& c : clusters)
            if (std::abs(c.value - t) <= tol.tau_cluster)
                throw AmbiguousThreshold(
                    "spectral_projection_above: threshold lies inside an eigenvalue cluster");
    }
    Eigen::VectorXd vals = Eigen::VectorXd::Zero(static_cast<long>(dec.eigenvalues.size()));
    for (const auto& c : clusters) {
        bool in = strict ? (c.value >= t - tol.tau_cluster) : (c.value > t);
        if (in)
            for (int k = c.lo; k <= c.hi; ++k) vals(k) = 1.0;
    }
    return dec.eigenvectors * vals.asDiagonal() * dec.eigenvectors.adjoint();
}

struct PolarParts {
    Mat U;     // partial isometry with UU* = [T], U*U = [T*]
    Mat absT;  // |T| = sqrt(T*T)
};

// T = U |T| with U = T |T|^{-1}.
inline PolarParts polar(const Mat& t, const Tolerances& tol = tolerances()) {
    require_well_supported(t, "polar", tol);
    detail::SvdParts sv(t);
    const auto& s = sv.svd.singularValues();
    Mat ur = sv.svd.matrixU().leftCols(sv.rank);
    Mat vr = sv.svd.matrixV().leftCols(sv.rank);
    PolarParts out;
    out.U = ur * vr.adjoint();
    Mat v = sv.svd.matrixV();
    Eigen::VectorXd sd = Eigen::VectorXd::Zero(s.size());
    for (int i = 0; i < sv.rank; ++i) sd(i) = s(i);
    out.absT = hermitize(v * sd.asDiagonal() * v.adjoint());
    return out;
}

} // namespace projcalc
