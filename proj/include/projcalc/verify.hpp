/*
 * verify.hpp — executable verification suites.
 *
 * Every identity, bound and construction contract carries a check id and
 * runs over seeded random fixtures; a report collects (id, residual,
 * bound, pass) per check.  Suites: support, geometry, calculus, homotopy,
 * lifting, states.  Residuals for inequalities are the positive part of
 * lhs - rhs, so pass means residual <= bound for every check.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "block.hpp"
#include "calculus.hpp"
#include "fixtures.hpp"
#include "geometry.hpp"
#include "homotopy.hpp"
#include "lifting.hpp"
#include "numeric.hpp"
#include "states.hpp"
#include "support.hpp"
#include "types.hpp"

namespace projcalc {

struct CheckResult {
    std::string id;
    double      residual;
    double      bound;
    bool        pass;
    int         trials;
};

struct VerifyContext {
    std::uint64_t seed    = 42;
    int           trials  = 500;
    int           dim_max = 12;
    Tolerances    tol{};

    int n_trials(int spec_count) const { return std::min(spec_count, trials); }
    Rng trial_rng(const std::string& check_id, int trial) const {
        return Rng(mix_seed(mix_seed(seed, check_id), static_cast<std::uint64_t>(trial)));
    }
};

namespace verify_detail {

constexpr double pi_v = std::numbers::pi;

inline CheckResult make(const std::string& id, double residual, double bound, int trials) {
    return {id, residual, bound, residual <= bound, trials};
}

inline std::pair<Mat, Mat> angle_pair(Rng& rng, int dim_max, bool allow_extra_p = true,
                                      bool allow_extra_q = true, double margin = 0.2) {
    int pairs = rng.uniform_int(1, std::max(1, dim_max / 4));
    std::vector<double> angles(static_cast<size_t>(pairs));
    for (auto& a : angles) a = rng.uniform(margin, pi_v / 2 - margin);
    int budget = std::max(0, dim_max - 2 * pairs - 2);
    int ep = allow_extra_p && budget > 0 ? rng.uniform_int(0, std::min(2, budget)) : 0;
    int eq = allow_extra_q && budget - ep > 0 ? rng.uniform_int(0, std::min(2, budget - ep)) : 0;
    int ek = rng.uniform_int(0, 2);
    return pair_from_angles(angles, ep, eq, ek, rng.gen());
}

inline Mat small_rotation(int n, double eps, Rng& rng) {
    Mat h = hermitize(rng.gaussian_matrix(n));
    h *= eps / operator_norm(h);
    auto dec = hermitian_eig(h);
    Mat rot = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k)
        rot += std::exp(cx(0.0, dec.eigenvalues[static_cast<size_t>(k)])) *
               dec.eigenvectors.col(k) * dec.eigenvectors.col(k).adjoint();
    return rot;
}

// ----- support suite ------------------------------------------------------

inline CheckResult check_sigma_st_ts(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("fact:sigma-st-ts", t);
        auto [p, q] = random_pair(cx_.dim_max, rng);
        auto a = hermitian_eig(hermitize(p * q * p), cx_.tol).eigenvalues;
        auto b = hermitian_eig(hermitize(q * p * q), cx_.tol).eigenvalues;
        std::vector<double> na, nb;
        for (double v : a)
            if (v > 1e-9) na.push_back(v);
        for (double v : b)
            if (v > 1e-9) nb.push_back(v);
        if (na.size() != nb.size()) {
            worst = 1.0;
            continue;
        }
        for (size_t i = 0; i < na.size(); ++i)
            worst = std::max(worst, std::abs(na[i] - nb[i]));
    }
    return make("fact:sigma-st-ts", worst, cx_.tol.tau_cluster, n);
}

inline CheckResult check_norm_diff_max(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:norm-diff-max", t);
        auto [p, q] = random_pair(cx_.dim_max, rng);
        double lhs = operator_norm(p - q);
        double rhs = std::max(operator_norm(p * perp(q)), operator_norm(perp(p) * q));
        worst = std::max(worst, std::abs(lhs - rhs));
        if (lhs < 1.0 - 1e-6)
            worst = std::max(worst, std::abs(operator_norm(p * perp(q)) -
                                             operator_norm(perp(p) * q)));
    }
    return make("eq:norm-diff-max", worst, cx_.tol.tau_eq, n);
}

inline CheckResult check_sigma_complement(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("fact:sigma-complement", t);
        auto [p, q] = random_pair(cx_.dim_max, rng);
        auto inner = [](const std::vector<double>& spec) {
            std::vector<double> out;
            for (double v : spec)
                if (v > 1e-6 && v < 1.0 - 1e-6) out.push_back(v);
            return out;
        };
        auto s1 = inner(spectrum_of_pair(p, q, cx_.tol));
        auto s2 = inner(spectrum_of_pair(p, perp(q), cx_.tol));
        std::vector<double> mirrored;
        for (auto it = s2.rbegin(); it != s2.rend(); ++it) mirrored.push_back(1.0 - *it);
        worst = std::max(worst, hausdorff_distance(s1, mirrored));
    }
    return make("fact:sigma-complement", worst, cx_.tol.tau_cluster, n);
}

inline CheckResult check_angle_roundtrip(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("fixture:angle-roundtrip", t);
        int pairs = rng.uniform_int(1, std::max(1, cx_.dim_max / 4));
        std::vector<double> angles(static_cast<size_t>(pairs));
        for (auto& a : angles) a = rng.uniform(0.2, pi_v / 2 - 0.2);
        auto [p, q] = pair_from_angles(angles, rng.uniform_int(0, 1), rng.uniform_int(0, 1),
                                       rng.uniform_int(0, 1), rng.gen());
        auto spec = spectrum_of_pair(p, q, cx_.tol);
        std::vector<double> want;
        for (double a : angles) want.push_back(std::cos(a) * std::cos(a));
        std::sort(want.begin(), want.end());
        std::vector<double> got;
        for (double v : spec)
            if (v > 1e-6 && v < 1.0 - 1e-6) got.push_back(v);
        // merge coincidences in the request the same way clustering does
        std::vector<double> want_dedup;
        for (double v : want)
            if (want_dedup.empty() || v - want_dedup.back() > cx_.tol.tau_cluster)
                want_dedup.push_back(v);
        worst = std::max(worst, hausdorff_distance(got, want_dedup));
    }
    return make("fixture:angle-roundtrip", worst, cx_.tol.tau_cluster, n);
}

inline CheckResult check_intertwining(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    auto sqrt_fn = [](double s) { return std::sqrt(std::max(s, 0.0)); };
    auto square_fn = [](double s) { return s * s; };
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("cor:intertwining", t);
        int dim = rng.uniform_int(2, cx_.dim_max);
        Mat m = rng.gaussian_matrix(dim);
        m /= operator_norm(m);
        Mat tst = hermitize(m.adjoint() * m), tts = hermitize(m * m.adjoint());
        worst = std::max(worst, operator_norm(m * apply_function(tst, sqrt_fn, cx_.tol) -
                                              apply_function(tts, sqrt_fn, cx_.tol) * m));
        worst = std::max(worst, operator_norm(m * apply_function(tst, square_fn, cx_.tol) -
                                              apply_function(tts, square_fn, cx_.tol) * m));
        auto evs = hermitian_eig(tst, cx_.tol).eigenvalues;
        double c = snap_threshold_into(clustered_values(evs, cx_.tol.tau_cluster), 1e-4,
                                       evs.back() - 1e-6, cx_.tol.tau_cluster);
        if (std::isfinite(c)) {
            auto chi = [c](double s) { return s > c ? 1.0 : 0.0; };
            worst = std::max(worst, operator_norm(m * apply_function(tst, chi, cx_.tol) -
                                                  apply_function(tts, chi, cx_.tol) * m));
        }
    }
    return make("cor:intertwining", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_support_intertwine(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("prp:support-intertwine", t);
        int dim = rng.uniform_int(2, cx_.dim_max);
        Mat m = rng.gaussian_matrix(dim);
        m /= operator_norm(m);
        Mat tst = hermitize(m.adjoint() * m), tts = hermitize(m * m.adjoint());
        auto evs = hermitian_eig(tst, cx_.tol).eigenvalues;
        double c = snap_threshold_into(clustered_values(evs, cx_.tol.tau_cluster), 1e-4,
                                       evs.back() - 1e-6, cx_.tol.tau_cluster);
        if (!std::isfinite(c)) continue;
        Mat lhs = spectral_projection_above(tts, c, false, cx_.tol);
        Mat arg = m * spectral_projection_above(tst, c, false, cx_.tol);
        Mat rhs = arg.isZero(1e-12) ? Mat(Mat::Zero(dim, dim)) : left_support(arg, cx_.tol);
        worst = std::max(worst, operator_norm(lhs - rhs));
    }
    return make("prp:support-intertwine", worst, cx_.tol.tau_eq, n);
}

inline CheckResult check_qinv_equivalence(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double mismatches = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:qinv", t);
        int dim = rng.uniform_int(3, cx_.dim_max);
        Mat p = random_projection(dim, dim / 2 + 1, rng);
        Mat m = rng.gaussian_matrix(dim) * p;
        Mat mi = quasi_inverse(m, cx_.tol);
        Mat rt = left_support(m.adjoint(), cx_.tol);
        Mat lt = left_support(m, cx_.tol);
        Mat id = Mat::Identity(dim, dim);
        Mat g = rng.gaussian_matrix(dim);
        Mat s_good = mi + (id - rt) * g;
        bool l1 = operator_norm(m * s_good - lt) < cx_.tol.tau_eq;
        bool r1 = operator_norm(rt * s_good - mi) < 10.0 * cx_.tol.tau_eq;
        Mat s_bad = mi + rt * g * lt;
        bool l2 = operator_norm(m * s_bad - lt) < cx_.tol.tau_eq;
        bool r2 = operator_norm(rt * s_bad - mi) < 10.0 * cx_.tol.tau_eq;
        if (l1 != r1 || l2 != r2 || !l1) mismatches += 1.0;
    }
    return make("eq:qinv", mismatches, 0.0, n);
}

inline CheckResult check_qinv_norm(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:qinv-norm", t);
        int dim = rng.uniform_int(2, cx_.dim_max);
        Mat m = rng.gaussian_matrix(dim);
        if (t % 3 == 0) m = m * random_projection(dim, std::max(1, dim / 2), rng);
        double gap = is_well_supported(m, cx_.tol).gap;
        double nrm = operator_norm(quasi_inverse(m, cx_.tol));
        worst = std::max(worst, std::abs(nrm * nrm * gap - 1.0));
    }
    return make("eq:qinv-norm", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_qinv_laws(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:quasi-inverse", t);
        int dim = rng.uniform_int(2, cx_.dim_max);
        Mat m = rng.gaussian_matrix(dim);
        if (t % 3 == 0) m = m * random_projection(dim, std::max(1, dim / 2), rng);
        Mat mi = quasi_inverse(m, cx_.tol);
        Mat lt = left_support(m, cx_.tol), rt = left_support(m.adjoint(), cx_.tol);
        worst = std::max({worst, operator_norm(m * mi - lt), operator_norm(mi * m - rt),
                          operator_norm(m * mi * m - m), operator_norm(mi * m * mi - mi),
                          operator_norm(mi.adjoint() - quasi_inverse(Mat(m.adjoint()), cx_.tol))});
    }
    return make("law:quasi-inverse", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_qinv_involution(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:qinv-involution", t);
        int dim = rng.uniform_int(2, cx_.dim_max);
        Mat m = rng.gaussian_matrix(dim);
        if (t % 2 == 0) m = m * random_projection(dim, std::max(1, dim / 2), rng);
        worst = std::max(worst,
                         operator_norm(quasi_inverse(quasi_inverse(m, cx_.tol), cx_.tol) - m));
    }
    return make("law:qinv-involution", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_polar_laws(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:polar", t);
        int dim = rng.uniform_int(2, cx_.dim_max);
        Mat m = rng.gaussian_matrix(dim);
        if (t % 2 == 0) m = m * random_projection(dim, std::max(1, dim / 2), rng);
        auto pp = polar(m, cx_.tol);
        worst = std::max({worst, operator_norm(pp.U * pp.absT - m),
                          operator_norm(pp.U * pp.U.adjoint() * pp.U - pp.U),
                          operator_norm(pp.U * pp.U.adjoint() - left_support(m, cx_.tol)),
                          operator_norm(pp.U.adjoint() * pp.U -
                                        left_support(Mat(m.adjoint()), cx_.tol))});
        auto evs = hermitian_eig(hermitize(m.adjoint() * pp.U), cx_.tol).eigenvalues;
        worst = std::max(worst, std::max(0.0, -evs.front()));
    }
    return make("law:polar", worst, 10.0 * cx_.tol.tau_eq, n);
}

// ----- geometry suite -----------------------------------------------------

inline CheckResult check_support_distance(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:Q-suppPQ", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max, true, false);
        double npq = operator_norm(perp(p) * q);
        if (npq >= 1.0 - 1e-6) continue;
        Mat supp = left_support(p * q, cx_.tol);
        worst = std::max(worst, std::abs(operator_norm(q - supp) - npq));
        Mat tri = p - supp + q;
        worst = std::max(worst, operator_norm(tri * tri - tri));
    }
    return make("eq:Q-suppPQ", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_idnorm(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:idnorm", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max);
        double npq = operator_norm(p * q);
        if (npq >= 1.0 - 1e-6 || p.isZero(1e-10) || q.isZero(1e-10)) continue;
        double nrm = operator_norm(quasi_inverse(perp(p) * q, cx_.tol));
        worst = std::max(worst, std::abs(nrm - 1.0 / std::sqrt(1.0 - npq * npq)));
    }
    return make("eq:idnorm", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_idPveeQ(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:idPveeQ", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max);
        if (operator_norm(p * q) >= 1.0 - 1e-6) continue;
        Mat lhs = quasi_inverse(perp(p) * q, cx_.tol) + quasi_inverse(perp(q) * p, cx_.tol);
        worst = std::max(worst, operator_norm(lhs - sup_join(p, q, cx_.tol)));
    }
    return make("eq:idPveeQ", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_support_continuity(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("lem:suppcont", t);
        int dim = rng.uniform_int(4, cx_.dim_max);
        Mat p = random_projection(dim, rng.uniform_int(1, dim - 1), rng);
        Mat q = random_projection(dim, rng.uniform_int(1, dim - 1), rng);
        Mat rot = small_rotation(dim, rng.uniform(0.01, 0.2), rng);
        Mat r = hermitize(rot * q * rot.adjoint());
        double npq = operator_norm(perp(p) * q), npr = operator_norm(perp(p) * r);
        if (npq >= 1.0 - 1e-3 || npr >= 1.0 - 1e-3 || q.isZero(1e-9)) continue;
        double lhs = operator_norm(left_support(p * q, cx_.tol) - left_support(p * r, cx_.tol));
        double mod = operator_norm(q - r) / std::sqrt(1.0 - std::pow(std::max(npq, npr), 2));
        worst = std::max(worst, lhs - mod);
    }
    return make("lem:suppcont", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_join_continuity(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("lem:veecont", t);
        int dim = rng.uniform_int(4, cx_.dim_max);
        Mat p = random_projection(dim, rng.uniform_int(1, dim - 1), rng);
        Mat q = random_projection(dim, rng.uniform_int(1, dim - 1), rng);
        Mat rot = small_rotation(dim, rng.uniform(0.01, 0.2), rng);
        Mat r = hermitize(rot * q * rot.adjoint());
        double jpq = operator_norm(p * q), jpr = operator_norm(p * r);
        if (jpq >= 1.0 - 1e-3 || jpr >= 1.0 - 1e-3) continue;
        double lhs = operator_norm(sup_join(p, q, cx_.tol) - sup_join(p, r, cx_.tol));
        double mod = operator_norm(q - r) / std::sqrt(1.0 - std::pow(std::max(jpq, jpr), 2));
        worst = std::max(worst, lhs - mod);
    }
    return make("lem:veecont", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_corner_estimate(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:P-RQR", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max);
        Mat r = random_subprojection(p, rng, cx_.tol);
        double npq = operator_norm(p * q), npqp = operator_norm(p * perp(q));
        double lhs = operator_norm((p - r) * q * r);
        worst = std::max(worst, lhs - (npq * npq + npqp * npqp - 1.0));
    }
    return make("eq:P-RQR", worst, cx_.tol.tau_eq, n);
}

inline CheckResult check_split_bound(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:split", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max, true, true, 0.25);
        Mat r = random_subprojection(p, rng, cx_.tol);
        double npq = operator_norm(p * q), npqp = operator_norm(p * perp(q));
        if (npq >= 1.0 - 1e-6 || npqp >= 1.0 - 1e-6 || r.isZero(1e-10)) continue;
        Mat qr = q * r;
        Mat join = qr.isZero(1e-10) ? r : sup_join(r, left_support(qr, cx_.tol), cx_.tol);
        double lhs = operator_norm((p - r) * join);
        double bound = (npq * npq + npqp * npqp - 1.0) /
                       std::sqrt((1.0 - npqp * npqp) * (1.0 - npq * npq));
        worst = std::max(worst, lhs - bound);

        // exact flat corner: PQP = lambda P forces the product to vanish
        double th = rng.uniform(0.3, pi_v / 2 - 0.3);
        auto [pf, qf] = pair_from_angles({th, th, th}, 0, 0, 0, rng.gen());
        Mat rf = random_subprojection(pf, rng, cx_.tol);
        if (!rf.isZero(1e-10)) {
            Mat qrf = qf * rf;
            Mat joinf =
                qrf.isZero(1e-10) ? rf : sup_join(rf, left_support(qrf, cx_.tol), cx_.tol);
            worst = std::max(worst, operator_norm((pf - rf) * joinf) - 10.0 * cx_.tol.tau_eq);
        }
    }
    return make("eq:split", worst, cx_.tol.tau_eq, n);
}

inline CheckResult check_bigeq(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    int done = 0;
    for (int t = 0; t < 4 * n && done < n; ++t) {
        Rng rng = cx_.trial_rng("eq:bigeq", t);
        int dim = rng.uniform_int(6, std::max(6, cx_.dim_max));
        Mat w = haar_unitary(dim, rng);
        int r1 = rng.uniform_int(1, 2), r2 = rng.uniform_int(1, 2);
        Mat pp = w.leftCols(r1) * w.leftCols(r1).adjoint();
        Mat pm = w.middleCols(r1, r2) * w.middleCols(r1, r2).adjoint();
        Mat r = random_subprojection(Mat(hermitize(pp + pm)), rng, cx_.tol);
        if (r.isZero(1e-10)) continue;
        Mat q = random_projection(dim, rng.uniform_int(1, dim - 1), rng);
        double nqp = operator_norm(q * pp), nqm = operator_norm(q * pm);
        if (nqm >= nqp - 1e-3) continue;
        ++done;
        Mat id = Mat::Identity(dim, dim);
        double lhs = operator_norm(perp(pp) * r);
        double lhs2 = operator_norm(pm * r);
        worst = std::max(worst, std::abs(lhs * lhs - lhs2 * lhs2));
        double rhs = (nqp * nqp + std::pow(operator_norm((id - q) * r), 2) +
                      operator_norm(pp * (id - q) * pm) - 1.0) /
                     (nqp * nqp - nqm * nqm);
        worst = std::max(worst, lhs * lhs - rhs);
    }
    return make("eq:bigeq", worst, cx_.tol.tau_eq, done);
}

inline CheckResult check_pair_report(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:pair-report", t);
        auto [p, q] = random_pair(cx_.dim_max, rng);
        auto rep = pair_report(p, q, cx_.tol);
        worst = std::max(worst,
                         std::abs(rep.norm_diff - std::max(rep.norm_p_qperp, rep.norm_pperp_q)));
        if (rep.norm_diff < 1.0 - 1e-6)
            worst = std::max(worst, std::abs(rep.norm_p_qperp - rep.norm_pperp_q));
    }
    return make("law:pair-report", worst, cx_.tol.tau_eq, n);
}

inline CheckResult check_idin(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("prp:idin", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max, false, false);
        if (operator_norm(p - q) >= 1.0 - 1e-6) continue;
        Mat i = pair_to_idempotent(p, q, cx_.tol);
        worst = std::max(worst, operator_norm(i * i - i));
        auto [p2, q2] = idempotent_to_pair(i, cx_.tol);
        worst = std::max({worst, operator_norm(p - p2), operator_norm(q - q2)});
        worst = std::max(worst, operator_norm(quasi_inverse(p * q, cx_.tol) - i));
    }
    return make("prp:idin", worst, 100.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_join_laws(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("prp:PveeQ", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max);
        if (operator_norm(p * q) >= 1.0 - 1e-6) continue;
        Mat j = sup_join(p, q, cx_.tol);
        worst = std::max({worst, operator_norm(j * p - p), operator_norm(j * q - q)});
        if (numeric_rank(j) != numeric_rank(p) + numeric_rank(q)) worst = 1.0;
    }
    return make("prp:PveeQ", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_upq(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("prp:UPQ", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max, false, false);
        if (operator_norm(p - q) >= 1.0 - 1e-6) continue;
        auto rep = upq_equivalences(mvn_partial_isometry(p, q, cx_.tol), cx_.tol);
        if (rep.close != rep.skew_small || rep.close != rep.square_support) worst = 1.0;
        worst = std::max(worst, std::abs(rep.norm_u_minus_ustar - rep.norm_p_minus_q));
    }
    return make("prp:UPQ", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_mvn_unique(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("prp:U", t);
        auto [p, q] = angle_pair(rng, cx_.dim_max, false, false);
        if (operator_norm(p - q) >= 1.0 - 1e-6) continue;
        Mat u = mvn_partial_isometry(p, q, cx_.tol);
        worst = std::max({worst, operator_norm(u.adjoint() * u - p),
                          operator_norm(u * u.adjoint() - q)});
        auto evs = hermitian_eig(hermitize(u.adjoint() * u * u), cx_.tol).eigenvalues;
        worst = std::max(worst, std::max(0.0, -evs.front()));
        // independent route: the adjoint of U_{PQ} satisfies the same laws
        Mat v = mvn_partial_isometry(q, p, cx_.tol).adjoint();
        worst = std::max(worst, operator_norm(v - u) / 10.0);
    }
    // law residuals at 10 tau_eq; the uniqueness cross-check at 100 tau_eq
    return make("prp:U", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_split_isometry(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:isometry-split", t);
        std::vector<double> angles(static_cast<size_t>(rng.uniform_int(1, 2)));
        for (auto& a : angles) a = rng.uniform(0.25, pi_v / 2 - 0.25);
        auto [p, q] = pair_from_angles(angles, 0, 0, 2, rng.gen());
        Mat u = mvn_partial_isometry(p, q, cx_.tol);
        if (t % 2 == 1) u = -u;
        auto sp = split_partial_isometry(u, cx_.tol);
        worst = std::max(worst, operator_norm(sp.U_plus - sp.U_minus + sp.U_zero - u));
        worst = std::max(worst, operator_norm(sp.P_plus + sp.P_minus + sp.P_zero -
                                              hermitize(u.adjoint() * u)));
        worst = std::max(worst, operator_norm(sp.U_zero * sp.U_zero));
    }
    return make("law:isometry-split", worst, 10.0 * cx_.tol.tau_eq, n);
}

// ----- calculus suite -----------------------------------------------------

inline ScalarFunction random_function(Rng& rng) {
    switch (rng.uniform_int(0, 4)) {
        case 0: return ScalarFunction::identity();
        case 1: return ScalarFunction::chi();
        case 2: return ScalarFunction::cap(rng.uniform(0.1, 0.95));
        case 3: return ScalarFunction::constant(rng.uniform(0.0, 0.9));
        default: return ScalarFunction::homotopy_line(rng.uniform(0.0, 1.0));
    }
}

inline std::pair<Mat, Mat> calculus_pair(Rng& rng, int dim_max) {
    int pairs = rng.uniform_int(1, std::max(1, dim_max / 4));
    std::vector<double> angles(static_cast<size_t>(pairs));
    for (auto& a : angles) a = rng.uniform(0.2, pi_v / 2 - 0.2);
    return pair_from_angles(angles, rng.uniform_int(0, 1), rng.uniform_int(0, 1),
                            rng.uniform_int(0, 1), rng.gen());
}

inline CheckResult check_qpq(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:QPQ", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        ScalarFunction f = random_function(rng);
        auto res = pc_build(q, r, f, cx_.tol);
        worst = std::max(worst, operator_norm(q * res.P * q -
                                              apply_function(hermitize(q * r * q), f, cx_.tol)));
    }
    return make("eq:QPQ", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_initial_projection(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:initial-projection", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        auto res = pc_build(q, r, random_function(rng), cx_.tol);
        worst = std::max(worst, operator_norm(res.U.adjoint() * res.U - r));
        worst = std::max(worst, operator_norm(res.P * res.P - res.P));
    }
    return make("law:initial-projection", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_mvn_rank(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double bad = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:mvn-rank", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        auto res = pc_build(q, r, random_function(rng), cx_.tol);
        if (numeric_rank(res.P) != numeric_rank(r)) bad += 1.0;
    }
    return make("law:mvn-rank", bad, 0.0, n);
}

inline CheckResult check_unitary_distance(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:Uf-Ug", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        ScalarFunction f = random_function(rng), g = random_function(rng);
        auto rf = pc_build(q, r, f, cx_.tol), rg = pc_build(q, r, g, cx_.tol);
        worst = std::max(worst, std::abs(pc_unitary_distance(q, r, f, g, cx_.tol) -
                                         operator_norm(rf.U - rg.U)));
    }
    return make("eq:Uf-Ug", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_projection_distance(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:Pf-Pg", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        ScalarFunction f = random_function(rng), g = random_function(rng);
        auto rf = pc_build(q, r, f, cx_.tol), rg = pc_build(q, r, g, cx_.tol);
        worst = std::max(worst, std::abs(pc_projection_distance(q, r, f, g, cx_.tol) -
                                         operator_norm(rf.P - rg.P)));
    }
    return make("eq:Pf-Pg", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_b_formula(const VerifyContext& cx_) {
    const int n = cx_.n_trials(500);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:b-formula", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        ScalarFunction f = random_function(rng), g = random_function(rng);
        auto rf = pc_build(q, r, f, cx_.tol), rg = pc_build(q, r, g, cx_.tol);
        worst = std::max(worst, operator_norm(rf.U.adjoint() * rg.U -
                                              pc_b_product(q, r, f, g, cx_.tol)));
    }
    return make("eq:b-formula", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_p_r_norm(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("eq:P-Rnorm", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        ScalarFunction f = random_function(rng);
        auto res = pc_build(q, r, f, cx_.tol);
        worst = std::max(worst,
                         std::abs(operator_norm(res.P - r) -
                                  pc_projection_distance(q, r, f, ScalarFunction::identity(),
                                                         cx_.tol)));
    }
    return make("eq:P-Rnorm", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_calc_continuity(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double bad = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("prop:calc-continuity", t);
        auto [q, r] = calculus_pair(rng, cx_.dim_max);
        ScalarFunction f = ScalarFunction::cap(rng.uniform(0.3, 0.8));
        Mat p0 = pc_build(q, r, f, cx_.tol).P;
        Rng inner(mix_seed(rng.gen(), 1));
        Mat h = hermitize(inner.gaussian_matrix(static_cast<int>(r.rows())));
        h /= operator_norm(h);
        double prev = 0.0;
        bool monotone = true;
        for (double eps : {0.08, 0.04, 0.02, 0.01}) {
            auto hd = hermitian_eig(Mat(eps * h), cx_.tol);
            Mat rot = Mat::Zero(r.rows(), r.cols());
            for (int k = 0; k < r.rows(); ++k)
                rot += std::exp(cx(0.0, hd.eigenvalues[static_cast<size_t>(k)])) *
                       hd.eigenvectors.col(k) * hd.eigenvectors.col(k).adjoint();
            double moved =
                operator_norm(pc_build(q, Mat(hermitize(rot * r * rot.adjoint())), f, cx_.tol).P - p0);
            if (prev > 0.0 && moved > prev + 1e-9) monotone = false;
            prev = moved;
        }
        if (!monotone) bad += 1.0;
    }
    return make("prop:calc-continuity", bad, 0.0, n);
}

// ----- homotopy suite -----------------------------------------------------

inline CheckResult check_homotopy_close(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("thm:QRhomo", t);
        std::vector<double> angles(static_cast<size_t>(rng.uniform_int(1, 3)));
        for (auto& a : angles) a = rng.uniform(0.2, pi_v / 2 - 0.2);
        auto [q, r] = pair_from_angles(angles, 0, 0, rng.uniform_int(0, 2), rng.gen());
        auto path = homotopy_close(q, r, 8, cx_.tol);
        worst = std::max({worst, operator_norm(path.steps.front() - r),
                          operator_norm(path.steps.back() - q)});
        for (const auto& s : path.steps)
            worst = std::max(worst, operator_norm(s * s - s));
        for (size_t i = 0; i + 1 < path.steps.size(); ++i) {
            double predicted = pc_projection_distance(
                q, r, ScalarFunction::homotopy_line(path.parameters[i]),
                ScalarFunction::homotopy_line(path.parameters[i + 1]), cx_.tol);
            worst = std::max(worst,
                             operator_norm(path.steps[i + 1] - path.steps[i]) - predicted);
        }
    }
    return make("thm:QRhomo", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_homotopy_orth(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("thm:mvnhomo-orth", t);
        int dim = rng.uniform_int(4, cx_.dim_max);
        int rank = rng.uniform_int(1, dim / 2);
        Mat w = haar_unitary(dim, rng);
        Mat a = w.leftCols(rank), b = w.middleCols(rank, rank);
        Mat u = b * a.adjoint();
        auto path = homotopy_orthogonal_mvn(u, 7, cx_.tol);
        worst = std::max({worst,
                          operator_norm(path.steps.front() - hermitize(u.adjoint() * u)),
                          operator_norm(path.steps.back() - hermitize(u * u.adjoint()))});
        for (const auto& s : path.steps)
            worst = std::max(worst, operator_norm(s * s - s));
    }
    return make("thm:mvnhomo-orth", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_homotopy_mvn(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("thm:mvnhomo", t);
        std::vector<double> angles(static_cast<size_t>(rng.uniform_int(1, 2)));
        for (auto& a : angles) a = rng.uniform(0.25, pi_v / 2 - 0.25);
        auto [q, r] = pair_from_angles(angles, 0, 0, 2, rng.gen());
        Mat u = mvn_partial_isometry(q, r, cx_.tol);
        auto path = homotopy_mvn(u, 7, cx_.tol);
        worst = std::max({worst, operator_norm(path.steps.front() - r),
                          operator_norm(path.steps.back() - q)});
        for (const auto& s : path.steps)
            worst = std::max(worst, operator_norm(s * s - s));
        // midpoint of the concatenation satisfies QPQ = 0
        worst = std::max(worst, operator_norm(q * path.steps[6] * q));
    }
    return make("thm:mvnhomo", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_mesh_refinement(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double bad = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:mesh-refinement", t);
        std::vector<double> angles(static_cast<size_t>(rng.uniform_int(1, 3)));
        for (auto& a : angles) a = rng.uniform(0.2, pi_v / 2 - 0.2);
        auto [q, r] = pair_from_angles(angles, 0, 0, rng.uniform_int(0, 2), rng.gen());
        double coarse = homotopy_close(q, r, 6, cx_.tol).max_adjacent_distance();
        double fine = homotopy_close(q, r, 12, cx_.tol).max_adjacent_distance();
        if (fine > 0.5 * coarse + 1e-9) bad += 1.0;
    }
    return make("law:mesh-refinement", bad, 0.0, n);
}

// ----- lifting suite ------------------------------------------------------

inline BlockAlgebra random_algebra(Rng& rng, int dim_max) {
    int nblocks = rng.uniform_int(2, 3);
    std::vector<int> dims;
    int per = std::max(2, dim_max / nblocks);
    for (int b = 0; b < nblocks; ++b) dims.push_back(rng.uniform_int(2, per));
    return BlockAlgebra(dims);
}

inline QuotientMap random_quotient(const BlockAlgebra& alg, Rng& rng) {
    int keep = rng.uniform_int(1, alg.block_count() - 1);
    std::vector<int> idx(static_cast<size_t>(alg.block_count()));
    for (int i = 0; i < alg.block_count(); ++i) idx[static_cast<size_t>(i)] = i;
    for (int i = alg.block_count() - 1; i > 0; --i)
        std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(rng.uniform_int(0, i))]);
    idx.resize(static_cast<size_t>(keep));
    return QuotientMap(alg, idx);
}

inline CheckResult check_quotient_hom(const VerifyContext& cx_) {
    const int n = cx_.n_trials(300);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:quotient-hom", t);
        BlockAlgebra alg = random_algebra(rng, cx_.dim_max);
        QuotientMap pi = random_quotient(alg, rng);
        Mat s = alg.clean(rng.gaussian_matrix(alg.total_dim()));
        Mat u = alg.clean(rng.gaussian_matrix(alg.total_dim()));
        worst = std::max(worst, operator_norm(pi.apply_matrix(s * u) -
                                              pi.apply_matrix(s) * pi.apply_matrix(u)));
        worst = std::max(worst, operator_norm(pi.apply_matrix(Mat(s.adjoint())) -
                                              pi.apply_matrix(s).adjoint()));
        worst = std::max(worst, operator_norm(pi.apply_matrix(s + u) - pi.apply_matrix(s) -
                                              pi.apply_matrix(u)));
    }
    return make("law:quotient-hom", worst, cx_.tol.tau_eq, n);
}

inline CheckResult check_sandwich_approx(const VerifyContext& cx_) {
    const int n = cx_.n_trials(200);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("disc:sandwich-approx", t);
        BlockAlgebra alg = random_algebra(rng, cx_.dim_max);
        QuotientMap pi = random_quotient(alg, rng);
        auto [r, q] = random_block_pair(alg, rng, 0.25);
        Mat p_t = pi.apply_matrix(r), q_t = pi.apply_matrix(q);
        double lam = std::pow(operator_norm(p_t * q_t), 2);
        if (lam >= 0.9 || p_t.isZero(1e-12)) continue;
        double eps = 0.5 * (1.0 - lam);
        Mat m = hermitize(r * perp(q) * r);
        Mat p1 = sandwich_between(m, 1.0 - lam - eps, 1.0 - lam - 0.5 * eps, cx_.tol);
        worst = std::max(worst, operator_norm(pi.apply_matrix(p1) - p_t));
        worst = std::max(worst, std::pow(operator_norm(p1 * q), 2) - (lam + eps));
    }
    return make("disc:sandwich-approx", worst, cx_.tol.tau_eq, n);
}

inline CheckResult check_lift_norm(const VerifyContext& cx_) {
    const int n = cx_.n_trials(200);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("thm:liftnorm", t);
        BlockAlgebra alg({rng.uniform_int(2, std::max(2, cx_.dim_max / 2)),
                          rng.uniform_int(2, std::max(2, cx_.dim_max / 2))});
        QuotientMap pi(alg, {rng.uniform_int(0, 1)});
        auto [r, q] = random_block_pair(alg, rng, 0.2);
        if (operator_norm(q * r) >= 1.0 - 1e-6) continue;
        auto res = lift_projection_norm(pi, BlockElement(alg, r, cx_.tol),
                                        BlockElement(alg, q, cx_.tol), cx_.tol);
        double lhs = operator_norm(res.matrix * q);
        double rhs = operator_norm(pi.apply_matrix(res.matrix) * pi.apply_matrix(q));
        worst = std::max(worst, std::abs(lhs - rhs));
        worst = std::max(worst, operator_norm(pi.apply_matrix(res.matrix) -
                                              pi.apply_matrix(r)));
    }
    return make("thm:liftnorm", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_lift_norm_twoblock(const VerifyContext& cx_) {
    // analytic fixture: angles pi/6 (dropped) and pi/4 (kept): ||PQ||^2 = 1/2
    BlockAlgebra alg({2, 2});
    QuotientMap pi(alg, {1});
    auto mk = [](double th) {
        Mat p(2, 2), q(2, 2);
        p << 1.0, 0.0, 0.0, 0.0;
        q << std::cos(th) * std::cos(th), std::cos(th) * std::sin(th),
            std::cos(th) * std::sin(th), std::sin(th) * std::sin(th);
        return std::pair<Mat, Mat>(p, q);
    };
    auto [p1, q1] = mk(pi_v / 6);
    auto [p2, q2] = mk(pi_v / 4);
    Mat r = Mat::Zero(4, 4), q = Mat::Zero(4, 4);
    r.block(0, 0, 2, 2) = p1;
    r.block(2, 2, 2, 2) = p2;
    q.block(0, 0, 2, 2) = q1;
    q.block(2, 2, 2, 2) = q2;
    auto res = lift_projection_norm(pi, BlockElement(alg, r, cx_.tol),
                                    BlockElement(alg, q, cx_.tol), cx_.tol);
    double npq = operator_norm(res.matrix * q);
    return make("ex:liftnorm-twoblock", std::abs(npq * npq - 0.5), 10.0 * cx_.tol.tau_eq, 1);
}

inline CheckResult check_close_gap_contract(const VerifyContext& cx_) {
    const int n = cx_.n_trials(100);
    double worst = 0.0;
    int done = 0;
    for (int t = 0; t < 3 * n && done < n; ++t) {
        Rng rng = cx_.trial_rng("law:close-gap", t);
        BlockAlgebra alg({rng.uniform_int(2, 3), rng.uniform_int(2, 4)});
        QuotientMap pi(alg, {0});
        auto [rt, qt] = random_block_pair(alg, rng, 0.3);
        Mat p_t = pi.apply_matrix(rt);
        Mat r_src = noisy_lift_projection(pi, p_t, rng);
        Mat q_src = noisy_lift_projection(pi, pi.apply_matrix(qt), rng);
        auto sigma_t = spectrum_of_pair(p_t, pi.apply_matrix(q_src), cx_.tol);
        auto gaps = detail::spectral_gaps(sigma_t, 0.05);
        if (gaps.empty()) continue;
        auto sigma_s = spectrum_of_pair(r_src, q_src, cx_.tol);
        std::pair<double, double> pick{-1.0, -1.0};
        for (const auto& g : gaps)
            for (double v : sigma_s)
                if (v > g.first + 1e-3 && v < g.second - 1e-3) pick = g;
        if (pick.first < 0.0) continue;
        ++done;
        auto next = close_gap(pi, BlockElement(alg, r_src, cx_.tol),
                              BlockElement(alg, q_src, cx_.tol), pick.first, pick.second,
                              (pick.second - pick.first) / 8.0, cx_.tol);
        worst = std::max(worst, operator_norm(pi.apply_matrix(next.matrix) - p_t));
        double b = 2.0 * (std::sqrt((1.0 - pick.first) * pick.second) -
                          std::sqrt(pick.first * (1.0 - pick.second)));
        worst = std::max(worst, operator_norm(next.matrix - r_src) - b);
        // strays inside the open gap are gone
        for (double v : spectrum_of_pair(next.matrix, q_src, cx_.tol))
            if (v > pick.first + 1e-3 && v < pick.second - 1e-3) worst = std::max(worst, 1.0);
    }
    return make("law:close-gap", worst, 10.0 * cx_.tol.tau_eq, done);
}

inline CheckResult check_lift_spectrum(const VerifyContext& cx_) {
    const int n = cx_.n_trials(200);
    double worst = 0.0;
    int stalled = 0, done = 0;
    for (int t = 0; t < 2 * n && done < n; ++t) {
        Rng rng = cx_.trial_rng("thm:liftspectrum", t);
        BlockAlgebra alg({rng.uniform_int(2, 4), rng.uniform_int(2, 6)});
        QuotientMap pi(alg, {0});
        auto [rt, qt] = random_block_pair(alg, rng, 0.3);
        Mat p_t = pi.apply_matrix(rt);
        if (operator_norm(p_t - Mat::Identity(p_t.rows(), p_t.cols())) < 1e-9) continue;
        ++done;
        Mat r_src = noisy_lift_projection(pi, p_t, rng);
        Mat q_src = noisy_lift_projection(pi, pi.apply_matrix(qt), rng);
        auto res = lift_projection_spectrum(pi, BlockElement(alg, r_src, cx_.tol),
                                            BlockElement(alg, q_src, cx_.tol), 200, cx_.tol);
        if (res.stalled) ++stalled;
        worst = std::max(worst, res.hausdorff);
        worst = std::max(worst, operator_norm(pi.apply_matrix(res.P.matrix) - p_t));
    }
    if (stalled > 0) worst = std::max(worst, 1.0);
    return make("thm:liftspectrum", worst, cx_.tol.tau_spec, done);
}

inline CheckResult check_lift_spectrum_perp(const VerifyContext& cx_) {
    const int n = cx_.n_trials(100);
    double worst = 0.0;
    int done = 0;
    for (int t = 0; t < 2 * n && done < n; ++t) {
        Rng rng = cx_.trial_rng("rem:liftspectrum-perp", t);
        BlockAlgebra alg({rng.uniform_int(2, 4), rng.uniform_int(2, 5)});
        QuotientMap pi(alg, {0});
        auto [rt, qt] = random_block_pair(alg, rng, 0.3);
        Mat p_t = pi.apply_matrix(rt);
        if (operator_norm(p_t - Mat::Identity(p_t.rows(), p_t.cols())) < 1e-9) continue;
        ++done;
        Mat r_src = noisy_lift_projection(pi, p_t, rng);
        Mat q_src = noisy_lift_projection(pi, pi.apply_matrix(qt), rng);
        auto res = lift_projection_spectrum(pi, BlockElement(alg, r_src, cx_.tol),
                                            BlockElement(alg, q_src, cx_.tol), 200, cx_.tol);
        Mat id_s = Mat::Identity(alg.total_dim(), alg.total_dim());
        Mat id_t = Mat::Identity(pi.target.total_dim(), pi.target.total_dim());
        auto strip_one = [](const std::vector<double>& v) {
            std::vector<double> out;
            for (double x : v)
                if (x < 1.0 - 1e-6) out.push_back(x);
            return out;
        };
        auto ps = strip_one(spectrum_of_pair(res.P.matrix, Mat(id_s - q_src), cx_.tol));
        auto pt = strip_one(spectrum_of_pair(pi.apply_matrix(res.P.matrix),
                                             Mat(id_t - pi.apply_matrix(q_src)), cx_.tol));
        worst = std::max(worst, hausdorff_distance(ps, pt));
    }
    return make("rem:liftspectrum-perp", worst, cx_.tol.tau_spec, done);
}

inline CheckResult check_lift_idempotent(const VerifyContext& cx_) {
    const int n = cx_.n_trials(100);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("cor:liftidem", t);
        BlockAlgebra alg({rng.uniform_int(2, 3), rng.uniform_int(2, 4)});
        QuotientMap pi(alg, {1});
        int d = pi.target.total_dim();
        std::vector<double> angles(static_cast<size_t>(rng.uniform_int(1, d / 2)));
        for (auto& a : angles) a = rng.uniform(0.3, pi_v / 2 - 0.3);
        int rest = d - 2 * static_cast<int>(angles.size());
        auto [pp, qq] = pair_from_angles(angles, 0, 0, rest, rng.gen());
        Mat it = pair_to_idempotent(pp, qq, cx_.tol);
        auto res = lift_idempotent(pi, BlockElement(pi.target, it, cx_.tol), 200, cx_.tol);
        worst = std::max(worst, res.hausdorff);
        worst = std::max(worst, operator_norm(pi.apply_matrix(res.I.matrix) - it));
        worst = std::max(worst,
                         operator_norm(res.I.matrix * res.I.matrix - res.I.matrix));
    }
    return make("cor:liftidem", worst, cx_.tol.tau_spec, n);
}

inline CheckResult check_lift_isometry(const VerifyContext& cx_) {
    const int n = cx_.n_trials(100);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("thm:liftpisom", t);
        BlockAlgebra alg({rng.uniform_int(2, 4), rng.uniform_int(2, 4)});
        QuotientMap pi(alg, {0});
        int dt = pi.target.total_dim();
        Mat u_t = random_partial_isometry(dt, rng.uniform_int(1, dt - 1), rng);
        Mat t0 = pi.embed_matrix(u_t);
        int db = alg.block_dims[1];
        t0.block(alg.offset(1), alg.offset(1), db, db) = 0.8 * rng.gaussian_matrix(db);
        auto res = lift_partial_isometry(pi, BlockElement(pi.target, u_t, cx_.tol),
                                         BlockElement(alg, t0, cx_.tol), cx_.tol);
        worst = std::max(worst, operator_norm(pi.apply_matrix(res.matrix) - u_t));
        worst = std::max(worst, std::abs(operator_norm(res.matrix * res.matrix) -
                                         operator_norm(u_t * u_t)));
        worst = std::max(worst, operator_norm(res.matrix * res.matrix.adjoint() * res.matrix -
                                              res.matrix));
    }
    return make("thm:liftpisom", worst, 10.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_lift_isometry_spectrum(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("cor:liftpisom-spectrum", t);
        BlockAlgebra alg({rng.uniform_int(2, 3), 4});
        QuotientMap pi(alg, {1});
        // positive-case target: an MvN isometry on a 2-plane pair plus an
        // optional square-zero corner
        double th = rng.uniform(0.3, pi_v / 2 - 0.3);
        Mat p4(2, 2), q4(2, 2);
        p4 << 1.0, 0.0, 0.0, 0.0;
        q4 << std::cos(th) * std::cos(th), std::cos(th) * std::sin(th),
            std::cos(th) * std::sin(th), std::sin(th) * std::sin(th);
        Mat u_t = Mat::Zero(4, 4);
        u_t.block(0, 0, 2, 2) = mvn_partial_isometry(p4, q4, cx_.tol);
        if (t % 2 == 0) u_t(2, 3) = 1.0;
        auto res = lift_partial_isometry_spectrum(pi, BlockElement(pi.target, u_t, cx_.tol),
                                                  200, cx_.tol);
        worst = std::max(worst, res.hausdorff);
        worst = std::max(worst, operator_norm(pi.apply_matrix(res.U.matrix) - u_t));
    }
    return make("cor:liftpisom-spectrum", worst, cx_.tol.tau_spec, n);
}

inline CheckResult check_lift_triple(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("op:lift-triple", t);
        BlockAlgebra alg({5, rng.uniform_int(2, 3)});
        QuotientMap pi(alg, {0});
        double th = rng.uniform(0.3, pi_v / 2 - 0.3);
        Mat p = Mat::Zero(5, 5), q = Mat::Zero(5, 5), r = Mat::Zero(5, 5);
        p(0, 0) = 1.0;
        Vec w = Vec::Zero(5);
        w(0) = std::cos(th);
        w(1) = std::sin(th);
        q += w * w.adjoint();
        q(3, 3) = 1.0;
        r(4, 4) = 1.0;
        auto res = lift_triple_special(pi, BlockElement(pi.target, p, cx_.tol),
                                       BlockElement(pi.target, q, cx_.tol),
                                       BlockElement(pi.target, r, cx_.tol), {}, cx_.tol);
        worst = std::max({worst, operator_norm(res.P.matrix * res.Q.matrix * res.R.matrix),
                          operator_norm(res.P.matrix * res.R.matrix),
                          operator_norm(pi.apply_matrix(res.Q.matrix) - q)});
    }
    return make("op:lift-triple", worst, 10.0 * cx_.tol.tau_eq, n);
}

// ----- states suite -------------------------------------------------------

inline CheckResult check_aap_baseline(const VerifyContext& cx_) {
    const int n = cx_.n_trials(40);
    double worst = 0.0;
    for (double eps : {0.1, 0.01}) {
        for (int t = 0; t < n; ++t) {
            Rng rng = cx_.trial_rng("thm:AAP7eps", t + (eps < 0.05 ? 100000 : 0));
            int dim = rng.uniform_int(5, cx_.dim_max);
            Mat q = random_projection(dim, rng.uniform_int(1, dim - 1), rng);
            Vec v = random_unit_vector(dim, rng);
            double lam = PureState(v).evaluate_real(q);
            Mat shield = v * v.adjoint();
            Vec qv = q * v - lam * v;
            if (qv.norm() > 1e-9) {
                qv.normalize();
                shield += qv * qv.adjoint();
            }
            Mat id = Mat::Identity(dim, dim);
            Mat wbase = hermitize((id - shield) *
                                  random_projection(dim, rng.uniform_int(1, dim - 1), rng) *
                                  (id - shield));
            double c = 1.0 - eps;
            Mat r = v * v.adjoint() + c * wbase;
            double resid = operator_norm(r * q * r - lam * r);
            for (int halve = 0; halve < 80 && resid > eps; ++halve) {
                c *= 0.5;
                r = v * v.adjoint() + c * wbase;
                resid = operator_norm(r * q * r - lam * r);
            }
            if (resid > eps || operator_norm(r) > 1.0 + 1e-10) continue;
            Mat rp = sandwich_between(r, 1.0 - 2.0 * eps, 1.0 - eps, cx_.tol);
            worst = std::max(worst, operator_norm(rp * q * rp - lam * rp) - 7.0 * eps);
            worst = std::max(worst, (rp * v - v).norm());
        }
    }
    return make("thm:AAP7eps", worst, 10.0 * cx_.tol.tau_eq, 2 * n);
}

inline CheckResult check_excision(const VerifyContext& cx_) {
    const int n = cx_.n_trials(200);
    double worst = 0.0;
    int done = 0;
    for (int t = 0; t < 2 * n && done < n; ++t) {
        Rng rng = cx_.trial_rng("thm:excision", t);
        int dim = rng.uniform_int(4, cx_.dim_max);
        Mat q = random_projection(dim, rng.uniform_int(1, dim - 1), rng);
        Vec v = random_unit_vector(dim, rng);
        PureState phi(v, cx_.tol);
        int target = rng.uniform_int(1, std::max(1, dim / 2));
        Mat p;
        try {
            p = excise(q, phi, target, {}, {}, cx_.tol);
        } catch (const RankUnachievable&) {
            continue;
        }
        ++done;
        double lam = phi.evaluate_real(q);
        worst = std::max(worst, operator_norm(p * q * p - lam * p));
        worst = std::max(worst, 10.0 * (p * v - v).norm());
        if (numeric_rank(p) != target) worst = std::max(worst, 1.0);
    }
    return make("thm:excision", worst, 100.0 * cx_.tol.tau_eq, done);
}

inline CheckResult check_excision_step(const VerifyContext& cx_) {
    const int n = cx_.n_trials(100);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("law:excision-step", t);
        int dim = rng.uniform_int(6, cx_.dim_max);
        Mat q = random_projection(dim, rng.uniform_int(2, dim - 2), rng);
        Vec v = random_unit_vector(dim, rng);
        PureState phi(v, cx_.tol);
        double lam = phi.evaluate_real(q);
        Mat pn;
        try {
            pn = excise(q, phi, 2, {}, {}, cx_.tol);
        } catch (const RankUnachievable&) {
            continue;
        }
        // recycle the accumulated part against itself: a no-op step
        Mat again = excision_step(q, pn, pn, lam, cx_.tol);
        worst = std::max(worst, 10.0 * operator_norm(again - pn));
        worst = std::max(worst, operator_norm(again * q * again - lam * again));
    }
    return make("law:excision-step", worst, 100.0 * cx_.tol.tau_eq, n);
}

inline CheckResult check_transitivity(const VerifyContext& cx_) {
    double worst = 0.0;
    int trials = 0;
    for (bool fat : {false, true}) {
        for (int nsize = 2; nsize <= 5; ++nsize) {
            ++trials;
            const int ambient = fat ? 2 * nsize : nsize + 1;
            Rng rng = cx_.trial_rng("cor:transitivity", nsize + (fat ? 100 : 0));
            Mat w = haar_unitary(ambient, rng);
            std::vector<Vec> basis;
            for (int i = 0; i < nsize; ++i) basis.push_back(w.col(i));
            auto sys = transitivity_units(ambient, basis, fat, cx_.tol);
            Mat qn = sys.units.back().adjoint() * sys.units.back();
            for (int m = 0; m < nsize; ++m)
                worst = std::max(worst, operator_norm(sys.units[static_cast<size_t>(m)].adjoint() *
                                                          sys.units[static_cast<size_t>(m)] -
                                                      qn));
            for (int i = 0; i < nsize; ++i)
                for (int j = 0; j < nsize; ++j)
                    for (int k = 0; k < nsize; ++k)
                        for (int l = 0; l < nsize; ++l) {
                            Mat lhs = sys.unit_product(i, j) * sys.unit_product(k, l);
                            Mat want = j == k ? sys.unit_product(i, l)
                                              : Mat(Mat::Zero(ambient, ambient));
                            worst = std::max(worst, operator_norm(lhs - want));
                        }
            // faithfulness of the representation on the basis
            Mat gram(nsize * nsize, nsize * nsize);
            for (int i = 0; i < nsize; ++i)
                for (int j = 0; j < nsize; ++j)
                    for (int k = 0; k < nsize; ++k)
                        for (int l = 0; l < nsize; ++l)
                            gram(i * nsize + j, k * nsize + l) =
                                (basis[static_cast<size_t>(k)].adjoint() *
                                 sys.unit_product(i, j) * basis[static_cast<size_t>(l)])(0, 0);
            if (numeric_rank(gram) != nsize * nsize) worst = std::max(worst, 1.0);
        }
    }
    return make("cor:transitivity", worst, 10.0 * cx_.tol.tau_eq, trials);
}

inline CheckResult check_transitivity_hand(const VerifyContext& cx_) {
    std::vector<Vec> basis;
    for (int i = 0; i < 2; ++i) {
        Vec e = Vec::Zero(3);
        e(i) = 1.0;
        basis.push_back(e);
    }
    auto sys = transitivity_units(3, basis, false, cx_.tol);
    Mat e12 = Mat::Zero(3, 3), e22 = Mat::Zero(3, 3);
    e12(0, 1) = 1.0;
    e22(1, 1) = 1.0;
    double worst = std::max(operator_norm(sys.units[0] - e12),
                            operator_norm(sys.units[1] - e22));
    return make("ex:transitivity-hand", worst, 1e-9, 1);
}

inline CheckResult check_transitivity_multi(const VerifyContext& cx_) {
    const int n = cx_.n_trials(50);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) {
        Rng rng = cx_.trial_rng("cor:transitivity-multi", t);
        BlockAlgebra alg({3, rng.uniform_int(3, 4)});
        std::vector<std::vector<Vec>> bases(2);
        for (int b = 0; b < 2; ++b) {
            int d = alg.block_dims[static_cast<size_t>(b)];
            Mat w = haar_unitary(d, rng);
            for (int i = 0; i < 2; ++i) {
                Vec v = Vec::Zero(alg.total_dim());
                v.segment(alg.offset(b), d) = w.col(i);
                bases[static_cast<size_t>(b)].push_back(v);
            }
        }
        auto systems = transitivity_multi(alg, bases, false, cx_.tol);
        for (const auto& u1 : systems[0].units)
            for (const auto& u2 : systems[1].units) {
                worst = std::max(worst, operator_norm(u1 * u2));
                worst = std::max(worst, operator_norm(u1 * u2.adjoint()));
                worst = std::max(worst, operator_norm(u1.adjoint() * u2));
            }
    }
    return make("cor:transitivity-multi", worst, 10.0 * cx_.tol.tau_eq, n);
}

} // namespace verify_detail

struct VerificationReport {
    std::string              suite;
    std::uint64_t            seed;
    int                      trials;
    int                      dim_max;
    std::vector<CheckResult> checks;
    int                      passed = 0;
    int                      failed = 0;
    double                   wall_time = 0.0;

    bool all_pass() const { return failed == 0; }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"support",  "geometry", "calculus",
                                                "homotopy", "lifting",  "states"};
    return names;
}

inline std::vector<CheckResult> run_suite_checks(const std::string& suite,
                                                 const VerifyContext& cx_) {
    using namespace verify_detail;
    std::vector<CheckResult> out;
    if (suite == "support") {
        out = {check_sigma_st_ts(cx_),  check_norm_diff_max(cx_),
               check_sigma_complement(cx_), check_angle_roundtrip(cx_),
               check_intertwining(cx_), check_support_intertwine(cx_),
               check_qinv_equivalence(cx_), check_qinv_norm(cx_),
               check_qinv_laws(cx_),    check_qinv_involution(cx_),
               check_polar_laws(cx_)};
    } else if (suite == "geometry") {
        out = {check_support_distance(cx_), check_idnorm(cx_),
               check_idPveeQ(cx_),          check_support_continuity(cx_),
               check_join_continuity(cx_),  check_corner_estimate(cx_),
               check_split_bound(cx_),      check_bigeq(cx_),
               check_pair_report(cx_),      check_idin(cx_),
               check_join_laws(cx_),        check_upq(cx_),
               check_mvn_unique(cx_),       check_split_isometry(cx_)};
    } else if (suite == "calculus") {
        out = {check_qpq(cx_),
               check_initial_projection(cx_),
               check_mvn_rank(cx_),
               check_unitary_distance(cx_),
               check_projection_distance(cx_),
               check_b_formula(cx_),
               check_p_r_norm(cx_),
               check_calc_continuity(cx_)};
    } else if (suite == "homotopy") {
        out = {check_homotopy_close(cx_), check_homotopy_orth(cx_), check_homotopy_mvn(cx_),
               check_mesh_refinement(cx_)};
    } else if (suite == "lifting") {
        out = {check_quotient_hom(cx_),        check_sandwich_approx(cx_),
               check_lift_norm(cx_),           check_lift_norm_twoblock(cx_),
               check_close_gap_contract(cx_),  check_lift_spectrum(cx_),
               check_lift_spectrum_perp(cx_),  check_lift_idempotent(cx_),
               check_lift_isometry(cx_),       check_lift_isometry_spectrum(cx_),
               check_lift_triple(cx_)};
    } else if (suite == "states") {
        out = {check_aap_baseline(cx_),   check_excision(cx_),
               check_excision_step(cx_),  check_transitivity(cx_),
               check_transitivity_hand(cx_), check_transitivity_multi(cx_)};
    } else {
        throw UnknownSuite("verify: unknown suite '" + suite + "'");
    }
    return out;
}

inline VerificationReport run_verification(const std::string& suite, const VerifyContext& cx_) {
    VerificationReport rep;
    rep.suite = suite;
    rep.seed = cx_.seed;
    rep.trials = cx_.trials;
    rep.dim_max = cx_.dim_max;
    if (suite == "all") {
        for (const auto& s : suite_names()) {
            auto part = run_suite_checks(s, cx_);
            rep.checks.insert(rep.checks.end(), part.begin(), part.end());
        }
    } else {
        rep.checks = run_suite_checks(suite, cx_);
    }
    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    for (const auto& c : rep.checks)
        c.pass ? ++rep.passed : ++rep.failed;
    return rep;
}

} // namespace projcalc
