/*
 * geometry.hpp — two-projection identities.
 *
 * Core facts used throughout:
 *
 *   ||P - Q|| = max(||P Qperp||, ||Pperp Q||)
 *   ||P - Q|| < 1  =>  ||P - Q|| = ||P Qperp|| = ||Pperp Q||
 *   ||P Qperp|| < 1  <=>  PQ well-supported and [PQ] = P
 *   ||Q - [PQ]|| = ||Pperp Q||                    (when ||Pperp Q|| < 1)
 *   ||(Pperp Q)^{-1}|| = 1 / sqrt(1 - ||PQ||^2)   (P, Q nonzero)
 *   (Pperp Q)^{-1} + (Qperp P)^{-1} = P v Q       (when ||PQ|| < 1)
 *
 * plus the idempotent bijection I = (PQ)^{-1}, the Murray-von Neumann
 * partial isometry U_{QP}, and the +/-/0 splitting of partial isometries
 * with self-adjoint U*U^2.
 */
#pragma once

#include <cmath>
#include <vector>

#include "numeric.hpp"
#include "support.hpp"
#include "types.hpp"

namespace projcalc {

struct PairReport {
    std::vector<double> spectrum;       // sigma(PQ)
    double norm_pq;                     // ||PQ||
    double norm_p_qperp;                // ||P Qperp||
    double norm_pperp_q;                // ||Pperp Q||
    double norm_diff;                   // ||P - Q||
    bool   has_join;                    // ||PQ|| < 1
    bool   pq_well_supported;           // ||Pperp Q|| < 1
    bool   pq_support_is_p;             // ||P Qperp|| < 1
};

inline PairReport pair_report(const Mat& p, const Mat& q,
                              const Tolerances& tol = tolerances()) {
    require_projection(p, "pair_report", tol);
    require_projection(q, "pair_report", tol);
    PairReport r;
    r.spectrum = spectrum_of_pair(p, q, tol);
    r.norm_pq = operator_norm(p * q);
    r.norm_p_qperp = operator_norm(p * perp(q));
    r.norm_pperp_q = operator_norm(perp(p) * q);
    r.norm_diff = operator_norm(p - q);
    r.has_join = r.norm_pq < 1.0 - tol.tau_cluster;
    r.pq_well_supported = r.norm_pperp_q < 1.0 - tol.tau_cluster;
    r.pq_support_is_p = r.norm_p_qperp < 1.0 - tol.tau_cluster;
    return r;
}

// P v Q = [1 - Pperp Qperp Pperp]: the projection onto range(P) + range(Q),
// defined when ||PQ|| < 1.
inline Mat sup_join(const Mat& p, const Mat& q, const Tolerances& tol = tolerances()) {
    require_projection(p, "sup_join", tol);
    require_projection(q, "sup_join", tol);
    if (operator_norm(p * q) >= 1.0 - tol.tau_cluster)
        throw JoinUndefined("sup_join: ||PQ|| too close to 1");
    Mat m = Mat::Identity(p.rows(), p.cols()) - perp(p) * perp(q) * perp(p);
    return support_of_positive(hermitize(m), tol);
}

// Lattice join [A + B] without the angle margin; coincides with sup_join
// whenever sup_join is defined.  Internal tool for recursions that may
// meet coincident projections.
inline Mat lattice_join(const Mat& a, const Mat& b, const Tolerances& tol = tolerances()) {
    return support_of_positive(hermitize(a + b), tol);
}

// Idempotent -> unique projection pair (P, Q) with ||P-Q|| < 1 and
// (PQ)^{-1} = I, via Q = [I], P = [I*].
//
// Remark: for ||PQ|| < 1 the element (Qperp P)^{-1} is an idempotent even
// when ||Qperp Pperp|| = 1; its canonical pair then has left projection
// (P v Q) Qperp rather than Qperp itself.
inline std::pair<Mat, Mat> idempotent_to_pair(const Mat& i,
                                              const Tolerances& tol = tolerances()) {
    if (!is_idempotent(i, tol))
        throw NotIdempotent("idempotent_to_pair: ||I^2 - I|| exceeds tau_eq");
    if (i.isZero(tol.tau_eq)) {
        Mat z = Mat::Zero(i.rows(), i.cols());
        return {z, z};
    }
    Mat q = left_support(i, tol);
    Mat p = left_support(i.adjoint(), tol);
    return {p, q};
}

// Projection pair -> idempotent (PQ)^{-1}.
inline Mat pair_to_idempotent(const Mat& p, const Mat& q,
                              const Tolerances& tol = tolerances()) {
    require_projection(p, "pair_to_idempotent", tol);
    require_projection(q, "pair_to_idempotent", tol);
    if (operator_norm(p - q) >= 1.0 - tol.tau_cluster)
        throw PairTooFar("pair_to_idempotent: ||P - Q|| too close to 1");
    if (p.isZero(tol.tau_eq) && q.isZero(tol.tau_eq)) return Mat::Zero(p.rows(), p.cols());
    return quasi_inverse(p * q, tol);
}

// The unique partial isometry U with U*U = P, UU* = Q and U*U^2 >= 0,
// realized as the polar isometry of QP.
inline Mat mvn_partial_isometry(const Mat& p, const Mat& q,
                                const Tolerances& tol = tolerances()) {
    require_projection(p, "mvn_partial_isometry", tol);
    require_projection(q, "mvn_partial_isometry", tol);
    if (operator_norm(p - q) >= 1.0 - tol.tau_cluster)
        throw PairTooFar("mvn_partial_isometry: ||P - Q|| too close to 1");
    if (p.isZero(tol.tau_eq) && q.isZero(tol.tau_eq)) return Mat::Zero(p.rows(), p.cols());
    return polar(q * p, tol).U;
}

struct UpqReport {
    bool   close;            // ||P - Q|| < 1
    bool   skew_small;       // ||U - U*|| < 1
    bool   square_support;   // U^2 well-supported with [U^2] = Q
    double norm_u_minus_ustar;
    double norm_p_minus_q;
};

// The three equivalent conditions for a partial isometry with
// self-adjoint U*U^2, plus the witnessed equality ||U - U*|| = ||P - Q||.
inline UpqReport upq_equivalences(const Mat& u, const Tolerances& tol = tolerances()) {
    if (!is_partial_isometry(u, tol))
        throw NotPartialIsometry("upq_equivalences: not a partial isometry");
    Mat k = u.adjoint() * u * u;
    if (operator_norm(k - k.adjoint()) > 10.0 * tol.tau_eq)
        throw CommutatorTooLarge("upq_equivalences: U*U^2 is not self-adjoint");
    Mat p = hermitize(u.adjoint() * u);
    Mat q = hermitize(u * u.adjoint());
    UpqReport r;
    r.norm_u_minus_ustar = operator_norm(u - u.adjoint());
    r.norm_p_minus_q = operator_norm(p - q);
    r.close = r.norm_p_minus_q < 1.0 - tol.tau_cluster;
    r.skew_small = r.norm_u_minus_ustar < 1.0 - tol.tau_cluster;
    Mat u2 = u * u;
    if (u2.isZero(tol.tau_eq)) {
        r.square_support = q.isZero(tol.tau_eq);
    } else {
        auto info = is_well_supported(u2, tol);
        // [U^2] <= Q always, so either equality or a norm-1 defect.
        r.square_support =
            info.well_supported && operator_norm(q - left_support(u2, tol)) < 0.5;
    }
    return r;
}

struct IsometrySplit {
    Mat U_plus, U_minus, U_zero;
    Mat P_plus, P_minus, P_zero;
};

// U = U_+ - U_- + U_0 with P_+ = [(U*U^2)_+], P_- = [(U*U^2)_-] and P_0
// the kernel part of U*U inside U*U; ranges of the pieces and their
// adjoints are mutually orthogonal.
inline IsometrySplit split_partial_isometry(const Mat& u,
                                            const Tolerances& tol = tolerances()) {
    if (!is_partial_isometry(u, tol))
        throw NotPartialIsometry("split_partial_isometry: not a partial isometry");
    Mat k = hermitize(u.adjoint() * u * u);
    if (operator_norm(u.adjoint() * u * u - (u.adjoint() * u * u).adjoint()) >
        10.0 * tol.tau_eq)
        throw CommutatorTooLarge("split_partial_isometry: U*U^2 is not self-adjoint");

    auto dec = hermitian_eig(k, tol);
    double floor = std::max(zero_floor(dec.eigenvalues), tol.tau_wellsup);
    Eigen::VectorXd plus = Eigen::VectorXd::Zero(static_cast<long>(dec.eigenvalues.size()));
    Eigen::VectorXd minus = plus;
    for (size_t i = 0; i < dec.eigenvalues.size(); ++i) {
        if (dec.eigenvalues[i] > floor) plus(static_cast<long>(i)) = 1.0;
        if (dec.eigenvalues[i] < -floor) minus(static_cast<long>(i)) = 1.0;
    }
    IsometrySplit s;
    s.P_plus = dec.eigenvectors * plus.asDiagonal() * dec.eigenvectors.adjoint();
    s.P_minus = dec.eigenvectors * minus.asDiagonal() * dec.eigenvectors.adjoint();
    s.P_zero = hermitize(u.adjoint() * u) - s.P_plus - s.P_minus;
    s.U_plus = u * s.P_plus;
    s.U_minus = -(u * s.P_minus);
    s.U_zero = u * s.P_zero;
    return s;
}

} // namespace projcalc
