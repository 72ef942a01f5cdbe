/*
 * numeric.hpp — dense complex linear algebra substrate.
 *
 * Hermitian eigendecomposition, operator norms, spectral clustering and
 * gap handling for finite spectra.  Everything downstream (supports,
 * quasi-inverses, functional calculus, the projection calculus itself)
 * reduces to the utilities in this header.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "types.hpp"

namespace projcalc {

inline Mat adjoint(const Mat& m) { return m.adjoint(); }

inline Mat perp(const Mat& p) { return Mat::Identity(p.rows(), p.cols()) - p; }

inline Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

// Largest singular value.
inline double operator_norm(const Mat& t) {
    if (t.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(t);
    return svd.singularValues()(0);
}

inline bool is_self_adjoint(const Mat& m, const Tolerances& tol = tolerances()) {
    return operator_norm(m - m.adjoint()) <= tol.tau_eq;
}

inline bool is_projection(const Mat& p, const Tolerances& tol = tolerances()) {
    return is_self_adjoint(p, tol) && operator_norm(p * p - p) <= tol.tau_eq;
}

inline bool is_idempotent(const Mat& i, const Tolerances& tol = tolerances()) {
    return operator_norm(i * i - i) <= tol.tau_eq;
}

inline bool is_partial_isometry(const Mat& u, const Tolerances& tol = tolerances()) {
    return operator_norm(u * u.adjoint() * u - u) <= tol.tau_eq;
}

inline void require_self_adjoint(const Mat& m, const char* where,
                                 const Tolerances& tol = tolerances()) {
    if (!is_self_adjoint(m, tol))
        throw NotSelfAdjoint(std::string(where) + ": matrix is not self-adjoint");
}

inline void require_projection(const Mat& p, const char* where,
                               const Tolerances& tol = tolerances()) {
    if (!is_projection(p, tol))
        throw NotProjection(std::string(where) + ": matrix is not a projection");
}

// Eigenvalues ascending, eigenvectors as orthonormal columns.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    Mat                 eigenvectors;

    Mat reconstruct() const {
        Eigen::VectorXd lam(eigenvalues.size());
        for (size_t i = 0; i < eigenvalues.size(); ++i) lam(static_cast<long>(i)) = eigenvalues[i];
        return eigenvectors * lam.asDiagonal() * eigenvectors.adjoint();
    }
};

inline SpectralDecomposition hermitian_eig(const Mat& s,
                                           const Tolerances& tol = tolerances()) {
    require_self_adjoint(s, "hermitian_eig", tol);
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(s));
    SpectralDecomposition out;
    out.eigenvectors = es.eigenvectors();
    out.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

// Machine-level floor separating exact zeros of TT* from genuinely small
// eigenvalues.  Relative to the largest eigenvalue so that conjugated
// rank-deficient inputs are classified the same way as exact ones.
inline double zero_floor(const std::vector<double>& eigenvalues) {
    double mx = 0.0;
    for (double v : eigenvalues) mx = std::max(mx, std::abs(v));
    return std::max(mx, 1.0) * 64.0 * std::numeric_limits<double>::epsilon() *
           static_cast<double>(std::max<size_t>(eigenvalues.size(), 1));
}

inline int numeric_rank(const Mat& t) {
    if (t.rows() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(t);
    const auto& s = svd.singularValues();
    double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                   static_cast<double>(t.rows()) * (s.size() > 0 ? s(0) : 0.0);
    int r = 0;
    for (long i = 0; i < s.size(); ++i)
        if (s(i) > floor) ++r;
    return r;
}

// One spectral point after merging eigenvalues closer than the cluster
// width.  `lo..hi` index the ascending eigenvalue list.
struct SpectralCluster {
    double value;  // mean of merged eigenvalues
    int    lo;
    int    hi;     // inclusive
    int multiplicity() const { return hi - lo + 1; }
};

inline std::vector<SpectralCluster> cluster_eigenvalues(const std::vector<double>& sorted,
                                                        double width) {
    std::vector<SpectralCluster> out;
    const int n = static_cast<int>(sorted.size());
    int i = 0;
    while (i < n) {
        int j = i;
        double sum = sorted[static_cast<size_t>(i)];
        while (j + 1 < n &&
               sorted[static_cast<size_t>(j + 1)] - sorted[static_cast<size_t>(j)] <= width) {
            ++j;
            sum += sorted[static_cast<size_t>(j)];
        }
        out.push_back({sum / static_cast<double>(j - i + 1), i, j});
        i = j + 1;
    }
    return out;
}

// Cluster representatives for a [0,1]-valued spectrum, snapped exactly to
// the endpoints when they fall within the cluster width.
inline std::vector<SpectralCluster> cluster_unit_spectrum(const std::vector<double>& sorted,
                                                          double width) {
    auto cl = cluster_eigenvalues(sorted, width);
    for (auto& c : cl) {
        if (std::abs(c.value) <= width) c.value = 0.0;
        if (std::abs(c.value - 1.0) <= width) c.value = 1.0;
    }
    return cl;
}

// Deduplicated cluster representatives.
inline std::vector<double> clustered_values(const std::vector<double>& sorted, double width) {
    std::vector<double> out;
    for (const auto& c : cluster_eigenvalues(sorted, width)) out.push_back(c.value);
    return out;
}

// Midpoint of the widest spectral gap intersecting [lo, hi]; nan if no
// point of [lo, hi] is at least `width` away from every cluster value.
inline double snap_threshold_into(const std::vector<double>& cluster_values, double lo,
                                  double hi, double width) {
    std::vector<double> pts = cluster_values;
    std::sort(pts.begin(), pts.end());
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_len = -1.0;
    auto consider = [&](double a, double b) {
        double l = std::max(lo, a), r = std::min(hi, b);
        if (r >= l && r - l > best_len) {
            best_len = r - l;
            best = 0.5 * (l + r);
        }
    };
    if (pts.empty()) {
        consider(lo, hi);
    } else {
        consider(lo, pts.front() - width);
        for (size_t i = 0; i + 1 < pts.size(); ++i)
            consider(pts[i] + width, pts[i + 1] - width);
        consider(pts.back() + width, hi);
    }
    if (best_len < 0.0) return std::numeric_limits<double>::quiet_NaN();
    // reject midpoints still too close to a cluster
    for (double p : pts)
        if (std::abs(best - p) <= width) return std::numeric_limits<double>::quiet_NaN();
    return best;
}

// f(S) for self-adjoint S and continuous f, evaluated per spectral
// cluster (at the cluster mean).
inline Mat apply_function(const Mat& s, const std::function<double(double)>& f,
                          const Tolerances& tol = tolerances()) {
    auto dec = hermitian_eig(s, tol);
    auto clusters = cluster_eigenvalues(dec.eigenvalues, tol.tau_cluster);
    Eigen::VectorXd vals(static_cast<long>(dec.eigenvalues.size()));
    for (const auto& c : clusters) {
        double fv = f(c.value);
        for (int k = c.lo; k <= c.hi; ++k) vals(k) = fv;
    }
    return dec.eigenvectors * vals.asDiagonal() * dec.eigenvectors.adjoint();
}

// Hausdorff distance between finite point sets.
inline double hausdorff_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto one_sided = [](const std::vector<double>& x, const std::vector<double>& y) {
        double worst = 0.0;
        for (double xv : x) {
            double best = std::numeric_limits<double>::infinity();
            for (double yv : y) best = std::min(best, std::abs(xv - yv));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

inline double hausdorff_distance(const std::vector<cx>& a, const std::vector<cx>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto one_sided = [](const std::vector<cx>& x, const std::vector<cx>& y) {
        double worst = 0.0;
        for (const cx& xv : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const cx& yv : y) best = std::min(best, std::abs(xv - yv));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

// Spectrum of PQ as a set: the clustered eigenvalues of PQP, plus 0
// whenever PQ is singular.
inline std::vector<double> spectrum_of_pair(const Mat& p, const Mat& q,
                                            const Tolerances& tol = tolerances()) {
    require_projection(p, "spectrum_of_pair", tol);
    require_projection(q, "spectrum_of_pair", tol);
    auto dec = hermitian_eig(hermitize(p * q * p), tol);
    auto clusters = cluster_unit_spectrum(dec.eigenvalues, tol.tau_cluster);
    std::vector<double> out;
    for (const auto& c : clusters)
        if (out.empty() || std::abs(out.back() - c.value) > tol.tau_cluster)
            out.push_back(c.value);
    bool has_zero = !out.empty() && out.front() == 0.0;
    if (!has_zero && numeric_rank(p * q) < p.rows())
        out.insert(out.begin(), 0.0);
    return out;
}

} // namespace projcalc
