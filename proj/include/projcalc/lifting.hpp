/*
 * lifting.hpp — lifting along block-dropping quotients.
 *
 * Finite block algebras model real rank zero exactly: spectral
 * projections lie in the algebra, so the sandwich E_S^perp(s) <= P <=
 * E_S^perp(t) is realized by choosing a threshold in a spectral gap.
 * On top of the sandwich sit four lifting algorithms:
 *
 *   lift_projection_norm       ||PQ|| = ||pi(PQ)||       (cap function)
 *   lift_projection_spectrum   sigma(PQ) = sigma(pi(PQ)) (gap clearing)
 *   lift_idempotent            sigma(I*I) = sigma(i*i)   (via (PQ)^{-1})
 *   lift_partial_isometry      ||U^2|| = ||u^2||         (polar + cap)
 *   lift_partial_isometry_spectrum  sigma(U) = sigma(u)  (split + pair lift)
 *
 * plus the special-case triple lifting (PQR = 0 = PR).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "block.hpp"
#include "calculus.hpp"
#include "geometry.hpp"
#include "numeric.hpp"
#include "support.hpp"
#include "types.hpp"

namespace projcalc {

namespace detail {

// Spectral projection of a decomposed operator for (c, inf).
inline Mat projection_above(const UnitSpectralData& sd, double c) {
    std::vector<double> vals(sd.clusters.size());
    for (size_t ci = 0; ci < sd.clusters.size(); ++ci)
        vals[ci] = sd.clusters[ci].value > c ? 1.0 : 0.0;
    return sd.rebuild(vals);
}

} // namespace detail

// Projection P with E_S^perp(s) <= P <= E_S^perp(t), via a threshold
// snapped into the widest spectral gap inside [t, s].
inline Mat sandwich_between(const Mat& s_op, double t, double s,
                            const Tolerances& tol = tolerances()) {
    require_self_adjoint(s_op, "spectral_sandwich", tol);
    if (!(s > t) || !(t > 0.0))
        throw BadInterval("spectral_sandwich: need s > t > 0");
    auto dec = hermitian_eig(s_op, tol);
    auto values = clustered_values(dec.eigenvalues, tol.tau_cluster);
    double c = snap_threshold_into(values, t, s, 2.0 * tol.tau_cluster);
    if (!std::isfinite(c))
        throw BadInterval("spectral_sandwich: no eigenvalue-free threshold inside [t, s]");
    return spectral_projection_above(s_op, c, false, tol);
}

inline BlockElement spectral_sandwich(const BlockElement& s_elem, double t, double s,
                                      const Tolerances& tol = tolerances()) {
    return BlockElement(s_elem.algebra, sandwich_between(s_elem.matrix, t, s, tol), tol);
}

// Thm-style norm lifting: P = P_{Q,R,f} with f capped at ||pi(QR)||^2.
inline BlockElement lift_projection_norm(const QuotientMap& pi, const BlockElement& r,
                                         const BlockElement& q,
                                         const Tolerances& tol = tolerances()) {
    require_projection(r.matrix, "lift_projection_norm", tol);
    require_projection(q.matrix, "lift_projection_norm", tol);
    if (operator_norm(q.matrix * r.matrix) >= 1.0 - tol.tau_cluster)
        throw NormTooLarge("lift_projection_norm: ||QR|| too close to 1");
    double cap = operator_norm(pi.apply_matrix(q.matrix) * pi.apply_matrix(r.matrix));
    cap = std::clamp(cap * cap, 0.0, 1.0);
    Mat p = pc_build(q.matrix, r.matrix, ScalarFunction::cap(cap), tol).P;
    BlockElement out(r.algebra, p, tol);
    if (operator_norm(pi.apply_matrix(out.matrix) - pi.apply_matrix(r.matrix)) >
        10.0 * tol.tau_eq)
        throw Error("lift_projection_norm: quotient image drifted from pi(R)");
    double achieved = operator_norm(out.matrix * q.matrix);
    if (std::abs(achieved * achieved - cap) > 10.0 * tol.tau_eq)
        throw Error("lift_projection_norm: ||PQ|| does not match the quotient norm");
    return out;
}

// One gap-clearing step of the spectrum lifting recursion.  Spectral mass
// of P_n Q P_n inside the quotient gap (s, t) is pushed onto the
// endpoints while pi(P) is preserved.  delta is halved until the moved
// part separates cleanly; boundary gaps (s = 0 or t = 1) are allowed.
inline BlockElement close_gap(const QuotientMap& pi, const BlockElement& pn,
                              const BlockElement& q, double s, double t, double delta,
                              const Tolerances& tol = tolerances()) {
    require_projection(pn.matrix, "close_gap", tol);
    require_projection(q.matrix, "close_gap", tol);
    if (!(0.0 <= s && s < t && t <= 1.0))
        throw BadInterval("close_gap: need 0 <= s < t <= 1");
    if (!(delta > 0.0) || delta >= (t - s) / 4.0)
        throw BadInterval("close_gap: need 0 < delta < (t-s)/4");

    // the quotient spectrum must stay clear of (s, t)
    {
        Mat pq = pi.apply_matrix(pn.matrix), qq = pi.apply_matrix(q.matrix);
        for (double v : spectrum_of_pair(pq, qq, tol))
            if (v > s + 2.0 * tol.tau_cluster && v < t - 2.0 * tol.tau_cluster)
                throw GapNotClean("close_gap: quotient spectrum intersects (s, t)");
    }

    const Mat& qm = q.matrix;
    const Mat id = Mat::Identity(qm.rows(), qm.cols());
    const double r_mid = 0.5 * (s + t);
    const double step_bound = std::sqrt((1.0 - s) * t) - std::sqrt(s * (1.0 - t));
    const double resid_target = std::min(0.5, std::max(step_bound, 10.0 * tol.tau_eq));

    detail::UnitSpectralData sd(hermitize(pn.matrix * qm * pn.matrix), tol);

    for (int attempt = 0; attempt < 48; ++attempt, delta *= 0.5) {
        if (delta < 8.0 * tol.tau_cluster) break;
        double c_hi = snap_threshold_into(sd.reps, r_mid + delta, r_mid + 2.0 * delta,
                                          2.0 * tol.tau_cluster);
        double c_md =
            snap_threshold_into(sd.reps, r_mid - delta, r_mid + delta, 2.0 * tol.tau_cluster);
        double c_lo = snap_threshold_into(sd.reps, r_mid - 2.0 * delta, r_mid - delta,
                                          2.0 * tol.tau_cluster);
        if (!std::isfinite(c_hi) || !std::isfinite(c_md) || !std::isfinite(c_lo)) continue;

        Mat e_hi = detail::projection_above(sd, c_hi);
        Mat e_md = detail::projection_above(sd, c_md);
        Mat e_lo = detail::projection_above(sd, c_lo);
        Mat pblk = hermitize(e_lo - e_hi);   // spectral chunk in (c_lo, c_hi]
        Mat rblk = hermitize(e_md - e_hi);   // upper half, handed to the floor function
        Mat low = hermitize(pn.matrix - e_lo);
        Mat stray = hermitize(pblk - rblk);  // lower half, to be moved off R and QR

        Mat s_proj;
        double resid = 0.0;
        if (stray.isZero(tol.tau_eq)) {
            s_proj = Mat::Zero(qm.rows(), qm.cols());
        } else {
            Mat join_r = rblk.isZero(tol.tau_eq)
                             ? Mat(Mat::Zero(qm.rows(), qm.cols()))
                             : lattice_join(rblk, support_of_positive(
                                                      hermitize(qm * rblk * qm.adjoint()), tol),
                                            tol);
            Mat moved = (id - join_r) * stray;
            if (numeric_rank(moved) < numeric_rank(stray)) continue;  // split degenerated
            s_proj = left_support(moved, tol);
            resid = operator_norm(s_proj - stray);
            if (resid > resid_target) continue;
        }

        Mat t_proj;
        if (s_proj.isZero(tol.tau_eq))
            t_proj = low;
        else if (low.isZero(tol.tau_eq))
            t_proj = s_proj;
        else
            t_proj = lattice_join(s_proj, low, tol);

        // the floor side rebuilds all of E = E_md: strays in (c_md, c_hi]
        // move up to t, the legitimate spectrum at or above t stays fixed
        Mat a = pc_build(qm, t_proj, ScalarFunction::cap(s), tol).P;
        Mat b = pc_build(qm, e_md, ScalarFunction::floor_at(t), tol).P;
        if (operator_norm(a * b) > 10.0 * tol.tau_eq)
            throw DegenerateSplit("close_gap: the two rebuilt projections overlap");
        Mat next = hermitize(a + b);
        BlockElement out(pn.algebra, next, tol);
        if (operator_norm(pi.apply_matrix(out.matrix) - pi.apply_matrix(pn.matrix)) >
            10.0 * tol.tau_eq)
            throw Error("close_gap: quotient image drifted");
        return out;
    }
    throw DegenerateSplit("close_gap: no usable delta; gap too narrow or spectrum too dense");
}

struct SpectrumLiftResult {
    BlockElement P;
    double       hausdorff;
    int          iterations;
    bool         stalled;
};

namespace detail {

inline std::vector<std::pair<double, double>> spectral_gaps(
    const std::vector<double>& sigma, double min_width) {
    std::vector<double> pts{0.0, 1.0};
    for (double v : sigma)
        if (v > 0.0 && v < 1.0) pts.push_back(v);
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<double, double>> gaps;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] - pts[i] > min_width) gaps.emplace_back(pts[i], pts[i + 1]);
    return gaps;
}

} // namespace detail

// Spectrum-exact projection lifting: iterate close_gap over the gaps of
// the quotient pair, widest first, then apply the endpoint fix-ups.
// Stalling (max_iters reached above tau_spec) is reported, not thrown.
inline SpectrumLiftResult lift_projection_spectrum(const QuotientMap& pi,
                                                   const BlockElement& r,
                                                   const BlockElement& q, int max_iters = 200,
                                                   const Tolerances& tol = tolerances()) {
    require_projection(r.matrix, "lift_projection_spectrum", tol);
    require_projection(q.matrix, "lift_projection_spectrum", tol);
    Mat p_t = pi.apply_matrix(r.matrix);
    Mat q_t = pi.apply_matrix(q.matrix);
    if (operator_norm(p_t - Mat::Identity(p_t.rows(), p_t.cols())) <= tol.tau_eq)
        throw Error("lift_projection_spectrum: pi(R) must differ from the identity");

    const std::vector<double> sigma_target = spectrum_of_pair(p_t, q_t, tol);
    const double margin = std::max(1e-6, 10.0 * tol.tau_cluster);
    auto gaps = detail::spectral_gaps(sigma_target, 4.0 * margin);

    Mat p = r.matrix;
    int iters = 0;
    while (iters < max_iters) {
        auto sigma = spectrum_of_pair(p, q.matrix, tol);
        double widest = 0.0;
        std::pair<double, double> pick{0.0, 0.0};
        for (const auto& g : gaps) {
            bool dirty = false;
            for (double v : sigma)
                if (v > g.first + margin && v < g.second - margin) dirty = true;
            if (dirty && g.second - g.first > widest) {
                widest = g.second - g.first;
                pick = g;
            }
        }
        if (widest == 0.0) break;
        BlockElement pe(r.algebra, p, tol);
        p = close_gap(pi, pe, q, pick.first, pick.second, (pick.second - pick.first) / 8.0,
                      tol)
                .matrix;
        ++iters;
    }

    // endpoint fix-ups: strip P ^ Q when 1 is absent from the quotient
    // spectrum, then P ^ Qperp when 1 is absent from the perp spectrum.
    const Mat id = Mat::Identity(p.rows(), p.cols());
    auto contains_one = [&](const std::vector<double>& v) {
        for (double x : v)
            if (std::abs(x - 1.0) <= tol.tau_cluster) return true;
        return false;
    };
    if (contains_one(spectrum_of_pair(p, q.matrix, tol)) && !contains_one(sigma_target)) {
        Mat pqp = p * (id - q.matrix);
        p = pqp.isZero(tol.tau_eq) ? Mat(Mat::Zero(p.rows(), p.cols()))
                                   : left_support(pqp, tol);
    }
    auto sigma_perp_target = spectrum_of_pair(p_t, Mat(Mat::Identity(q_t.rows(), q_t.cols()) - q_t), tol);
    if (contains_one(spectrum_of_pair(p, Mat(id - q.matrix), tol)) &&
        !contains_one(sigma_perp_target)) {
        Mat pq = p * q.matrix;
        p = pq.isZero(tol.tau_eq) ? Mat(Mat::Zero(p.rows(), p.cols())) : left_support(pq, tol);
    }

    SpectrumLiftResult out{BlockElement(r.algebra, p, tol), 0.0, iters, false};
    out.hausdorff =
        hausdorff_distance(spectrum_of_pair(out.P.matrix, q.matrix, tol), sigma_target);
    out.stalled = out.hausdorff > tol.tau_spec;
    return out;
}

struct IdempotentLiftResult {
    BlockElement I;
    double       hausdorff;  // sigma(I*I) vs sigma(i*i)
    bool         stalled;
};

// Cor-style idempotent lifting through the pair decomposition i = (pq)^{-1}.
inline IdempotentLiftResult lift_idempotent(const QuotientMap& pi, const BlockElement& i,
                                            int max_iters = 200,
                                            const Tolerances& tol = tolerances()) {
    if (!is_idempotent(i.matrix, tol))
        throw NotIdempotent("lift_idempotent: target element is not idempotent");
    if (i.matrix.isZero(tol.tau_eq)) {
        Mat z = Mat::Zero(pi.source.total_dim(), pi.source.total_dim());
        return {BlockElement(pi.source, z, tol), 0.0, false};
    }
    auto [p_t, q_t] = idempotent_to_pair(i.matrix, tol);
    Mat q_src = pi.embed_matrix(q_t);
    Mat p_src = pi.embed_matrix(p_t);
    auto lifted = lift_projection_spectrum(pi, BlockElement(pi.source, p_src, tol),
                                           BlockElement(pi.source, q_src, tol), max_iters, tol);
    Mat prod = lifted.P.matrix * q_src;
    Mat i_src = prod.isZero(tol.tau_eq) ? Mat(Mat::Zero(prod.rows(), prod.cols()))
                                        : quasi_inverse(prod, tol);
    IdempotentLiftResult out{BlockElement(pi.source, i_src, tol), 0.0, lifted.stalled};
    if (operator_norm(pi.apply_matrix(out.I.matrix) - i.matrix) > 10.0 * tol.tau_eq)
        throw Error("lift_idempotent: quotient image drifted from i");
    auto sig = [&](const Mat& m, const Tolerances& tl) {
        auto dec = hermitian_eig(hermitize(m.adjoint() * m), tl);
        std::vector<double> reps;
        for (const auto& c : cluster_eigenvalues(dec.eigenvalues, tl.tau_cluster))
            reps.push_back(std::max(c.value, 0.0));
        return reps;
    };
    out.hausdorff = hausdorff_distance(sig(out.I.matrix, tol), sig(i.matrix, tol));
    out.stalled = out.stalled || out.hausdorff > tol.tau_spec;
    return out;
}

// Norm-exact partial isometry lifting: sandwich the initial support of a
// preimage, take its polar isometry, lift the final projection with the
// cap construction, and compose the two polar isometries.
inline BlockElement lift_partial_isometry(const QuotientMap& pi, const BlockElement& u,
                                          const std::optional<BlockElement>& preimage = {},
                                          const Tolerances& tol = tolerances()) {
    if (!is_partial_isometry(u.matrix, tol))
        throw NotPartialIsometry("lift_partial_isometry: target is not a partial isometry");
    Mat t_src = preimage ? preimage->matrix : pi.embed_matrix(u.matrix);
    if (operator_norm(pi.apply_matrix(t_src) - u.matrix) > tol.tau_eq)
        throw AlgebraMismatch("lift_partial_isometry: preimage does not map onto u");

    const Mat id_src = Mat::Identity(pi.source.total_dim(), pi.source.total_dim());
    const double u2norm = operator_norm(u.matrix * u.matrix);

    if (t_src.isZero(tol.tau_eq))
        return BlockElement(pi.source, Mat(Mat::Zero(t_src.rows(), t_src.cols())), tol);

    Mat p = sandwich_between(hermitize(t_src.adjoint() * t_src), 1.0 / 3.0, 2.0 / 3.0, tol);
    Mat u1 = polar(t_src * p, tol).U;
    Mat q1 = hermitize(u1 * u1.adjoint());

    Mat r;
    const double lam = u2norm * u2norm;
    if (lam >= 1.0 - 10.0 * tol.tau_cluster) {
        r = q1;
    } else {
        // push ||R P|| under 1, then pin it to ||u^2|| with the cap lift
        double eps = 0.5 * (1.0 - lam);
        Mat m = hermitize(q1 * (id_src - p) * q1);
        Mat r1 = sandwich_between(m, 1.0 - lam - eps, 1.0 - lam - 0.5 * eps, tol);
        r = lift_projection_norm(pi, BlockElement(pi.source, r1, tol),
                                 BlockElement(pi.source, p, tol), tol)
                .matrix;
    }
    if (operator_norm((id_src - q1) * r) >= 1.0 - tol.tau_cluster)
        r = sandwich_between(hermitize(r * q1 * r), 1.0 / 3.0, 2.0 / 3.0, tol);

    Mat u2 = r.isZero(tol.tau_eq) ? Mat(Mat::Zero(r.rows(), r.cols()))
                                  : polar(r * q1, tol).U;
    Mat lifted = u2 * u1;

    BlockElement out(pi.source, lifted, tol);
    if (operator_norm(pi.apply_matrix(out.matrix) - u.matrix) > 10.0 * tol.tau_eq)
        throw Error("lift_partial_isometry: quotient image drifted from u");
    if (std::abs(operator_norm(lifted * lifted) - u2norm) > 10.0 * tol.tau_eq)
        throw Error("lift_partial_isometry: ||U^2|| does not match ||u^2||");
    return out;
}

struct IsometrySpectrumLiftResult {
    BlockElement U;
    double       hausdorff;  // sigma(U) vs sigma(u), complex
    bool         stalled;
};

inline std::vector<cx> matrix_spectrum(const Mat& m) {
    Eigen::ComplexEigenSolver<Mat> es(m);
    std::vector<cx> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    return out;
}

// Spectrum-exact partial isometry lifting for the positive case: split
// off the square-zero part, lift it with U0^2 = 0, and attach the polar
// isometry of a spectrum-exact pair lift.
inline IsometrySpectrumLiftResult lift_partial_isometry_spectrum(
    const QuotientMap& pi, const BlockElement& u, int max_iters = 200,
    const Tolerances& tol = tolerances()) {
    if (!is_partial_isometry(u.matrix, tol))
        throw NotPartialIsometry(
            "lift_partial_isometry_spectrum: target is not a partial isometry");
    const Mat id_t = Mat::Identity(pi.target.total_dim(), pi.target.total_dim());
    if (operator_norm(u.matrix - id_t) <= tol.tau_eq)
        throw Error("lift_partial_isometry_spectrum: u must differ from the identity");
    Mat k = u.matrix.adjoint() * u.matrix * u.matrix;
    if (operator_norm(k - k.adjoint()) > 10.0 * tol.tau_eq)
        throw NotPositiveCase("lift_partial_isometry_spectrum: u*u^2 is not self-adjoint");
    auto split = split_partial_isometry(u.matrix, tol);
    if (operator_norm(split.U_minus) > 10.0 * tol.tau_eq)
        throw NotPositiveCase("lift_partial_isometry_spectrum: u*u^2 has a negative part");

    BlockElement u0_t(pi.target, split.U_zero, tol);
    Mat u0 = lift_partial_isometry(pi, u0_t, {}, tol).matrix;
    if (operator_norm(u0 * u0) > 10.0 * tol.tau_eq)
        throw Error("lift_partial_isometry_spectrum: U0^2 is not zero");

    Mat up = split.U_plus;
    Mat result;
    bool stalled = false;
    if (up.isZero(tol.tau_eq)) {
        result = u0;
    } else {
        Mat p_t = hermitize(up.adjoint() * up);
        Mat q_t = hermitize(up * up.adjoint());
        BlockElement q_src(pi.source, pi.embed_matrix(q_t), tol);
        BlockElement p0_src(pi.source, pi.embed_matrix(p_t), tol);
        auto pair_lift = lift_projection_spectrum(pi, p0_src, q_src, max_iters, tol);
        stalled = pair_lift.stalled;
        Mat upl = mvn_partial_isometry(pair_lift.P.matrix, q_src.matrix, tol);
        Mat g = hermitize(u0 * u0.adjoint() + u0.adjoint() * u0);
        if (operator_norm(g * pair_lift.P.matrix) > 10.0 * tol.tau_eq ||
            operator_norm(g * q_src.matrix) > 10.0 * tol.tau_eq)
            throw Error("lift_partial_isometry_spectrum: pair lift is not orthogonal to U0");
        result = u0 + upl;
    }

    IsometrySpectrumLiftResult out{BlockElement(pi.source, result, tol), 0.0, stalled};
    if (operator_norm(pi.apply_matrix(out.U.matrix) - u.matrix) > 10.0 * tol.tau_eq)
        throw Error("lift_partial_isometry_spectrum: quotient image drifted from u");
    out.hausdorff =
        hausdorff_distance(matrix_spectrum(out.U.matrix), matrix_spectrum(u.matrix));
    out.stalled = out.stalled || out.hausdorff > tol.tau_spec;
    return out;
}

struct TripleLiftResult {
    BlockElement P, Q, R, S;
};

// Special case of the triple lifting question: p q r = 0 = p r with
// ||pq|| < 1 and ||p qperp|| < 1.  Lift S over p v [qp], then lift p and
// [qp] below S, and r, q - [qp] below Sperp.
inline TripleLiftResult lift_triple_special(const QuotientMap& pi, const BlockElement& p,
                                            const BlockElement& q, const BlockElement& r,
                                            const std::optional<BlockElement>& s_hint = {},
                                            const Tolerances& tol = tolerances()) {
    require_projection(p.matrix, "lift_triple_special", tol);
    require_projection(q.matrix, "lift_triple_special", tol);
    require_projection(r.matrix, "lift_triple_special", tol);
    if (operator_norm(p.matrix * q.matrix * r.matrix) > 10.0 * tol.tau_eq ||
        operator_norm(p.matrix * r.matrix) > 10.0 * tol.tau_eq)
        throw NotOrthogonal("lift_triple_special: need pqr = 0 = pr");
    const Mat id_t = Mat::Identity(pi.target.total_dim(), pi.target.total_dim());
    if (operator_norm(p.matrix * q.matrix) >= 1.0 - tol.tau_cluster ||
        operator_norm(p.matrix * (id_t - q.matrix)) >= 1.0 - tol.tau_cluster)
        throw NormTooLarge("lift_triple_special: need ||pq|| < 1 and ||p qperp|| < 1");

    Mat qp = q.matrix * p.matrix;
    Mat qp_supp = qp.isZero(tol.tau_eq) ? Mat(Mat::Zero(id_t.rows(), id_t.cols()))
                                        : left_support(qp, tol);
    Mat s_t = operator_norm(p.matrix * qp_supp) < 1.0 - tol.tau_cluster
                  ? sup_join(p.matrix, qp_supp, tol)
                  : lattice_join(p.matrix, qp_supp, tol);

    Mat s_src = s_hint ? s_hint->matrix : pi.embed_matrix(s_t);
    require_projection(s_src, "lift_triple_special (S)", tol);
    if (operator_norm(pi.apply_matrix(s_src) - s_t) > tol.tau_eq)
        throw AlgebraMismatch("lift_triple_special: S hint does not map onto p v [qp]");

    const Mat id_s = Mat::Identity(pi.source.total_dim(), pi.source.total_dim());
    auto lift_below = [&](const Mat& x_t, const Mat& roof) {
        if (x_t.isZero(tol.tau_eq)) return Mat(Mat::Zero(id_s.rows(), id_s.cols()));
        Mat t = hermitize(roof * pi.embed_matrix(x_t) * roof);
        return sandwich_between(t, 1.0 / 3.0, 2.0 / 3.0, tol);
    };

    Mat p_src = lift_below(p.matrix, s_src);
    Mat qp_src = lift_below(qp_supp, s_src);
    Mat r_src = lift_below(r.matrix, Mat(id_s - s_src));
    Mat qr_src = lift_below(Mat(q.matrix - qp_supp), Mat(id_s - s_src));
    Mat q_src = qp_src + qr_src;

    TripleLiftResult out{BlockElement(pi.source, p_src, tol),
                         BlockElement(pi.source, q_src, tol),
                         BlockElement(pi.source, r_src, tol),
                         BlockElement(pi.source, s_src, tol)};
    if (operator_norm(pi.apply_matrix(p_src) - p.matrix) > 10.0 * tol.tau_eq ||
        operator_norm(pi.apply_matrix(q_src) - q.matrix) > 10.0 * tol.tau_eq ||
        operator_norm(pi.apply_matrix(r_src) - r.matrix) > 10.0 * tol.tau_eq)
        throw Error("lift_triple_special: a quotient image drifted");
    if (operator_norm(p_src * q_src * r_src) > 10.0 * tol.tau_eq ||
        operator_norm(p_src * r_src) > 10.0 * tol.tau_eq)
        throw Error("lift_triple_special: lifted triple is not orthogonal");
    return out;
}

} // namespace projcalc
