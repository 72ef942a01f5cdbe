/*
 * fixtures.hpp — reproducible random fixtures.
 *
 * Every generator is a pure function of an explicit 64-bit seed; fixtures
 * for trial k of a suite derive their seed as mix(seed, k) so that trials
 * are reproducible independently of evaluation order.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "block.hpp"
#include "numeric.hpp"
#include "types.hpp"

namespace projcalc {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step on the combined value
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return mix_seed(seed, h);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(gen);
    }
    int uniform_int(int lo, int hi) {  // inclusive
        std::uniform_int_distribution<int> d(lo, hi);
        return d(gen);
    }
    double gaussian() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(gen);
    }
    cx cgaussian() { return cx(gaussian(), gaussian()); }

    Mat gaussian_matrix(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = cgaussian();
        return m;
    }
};

// Haar-distributed unitary: QR of a complex Gaussian with the phase of R's
// diagonal absorbed into Q.
inline Mat haar_unitary(int n, Rng& rng) {
    Mat g = rng.gaussian_matrix(n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        cx d = r(i, i);
        cx phase = std::abs(d) > 0.0 ? d / std::abs(d) : cx(1.0, 0.0);
        q.col(i) *= phase;
    }
    return q;
}

inline Mat haar_unitary(int n, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(n, rng);
}

// Random rank-r projection, Haar-conjugated.
inline Mat random_projection(int n, int rank, Rng& rng) {
    Mat w = haar_unitary(n, rng);
    Mat cols = w.leftCols(rank);
    return hermitize(cols * cols.adjoint());
}

// Two projections in Halmos normal form conjugated by a seeded Haar
// unitary.  Per angle theta a 2x2 block carries P = e11 and Q the
// projection onto (cos t, sin t); sigma(PQP) \ {0,1} = {cos^2 t}.
// extra_p / extra_q / extra_kernel add dimensions with (P,Q) equal to
// (1,0) / (0,1) / (0,0).
inline std::pair<Mat, Mat> pair_from_angles(const std::vector<double>& angles, int extra_p,
                                            int extra_q, int extra_kernel,
                                            std::uint64_t seed) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (double a : angles)
        if (!(a > 0.0 && a < half_pi))
            throw InvalidAngle("pair_from_angles: every angle must lie in (0, pi/2)");
    if (extra_p < 0 || extra_q < 0 || extra_kernel < 0)
        throw InvalidAngle("pair_from_angles: extra dimension counts must be nonnegative");
    const int n = 2 * static_cast<int>(angles.size()) + extra_p + extra_q + extra_kernel;
    if (n == 0) throw InvalidAngle("pair_from_angles: total dimension is zero");

    Mat p = Mat::Zero(n, n), q = Mat::Zero(n, n);
    int at = 0;
    for (double a : angles) {
        double c = std::cos(a), s = std::sin(a);
        p(at, at) = 1.0;
        q(at, at) = c * c;
        q(at, at + 1) = c * s;
        q(at + 1, at) = c * s;
        q(at + 1, at + 1) = s * s;
        at += 2;
    }
    for (int i = 0; i < extra_p; ++i, ++at) p(at, at) = 1.0;
    for (int i = 0; i < extra_q; ++i, ++at) q(at, at) = 1.0;
    at += extra_kernel;

    Rng rng(mix_seed(seed, "pair_from_angles"));
    Mat w = haar_unitary(n, rng);
    return {hermitize(w * p * w.adjoint()), hermitize(w * q * w.adjoint())};
}

// Random projection pair with principal angles kept away from 0 and pi/2.
inline std::pair<Mat, Mat> random_pair(int dim_max, Rng& rng, double margin = 0.15,
                                       bool allow_extras = true) {
    int pairs = rng.uniform_int(1, std::max(1, dim_max / 2));
    int budget = dim_max - 2 * pairs;
    int ep = 0, eq = 0, ek = 0;
    if (allow_extras && budget > 0) {
        ep = rng.uniform_int(0, budget);
        eq = rng.uniform_int(0, budget - ep);
        ek = rng.uniform_int(0, budget - ep - eq);
    }
    std::vector<double> angles(static_cast<size_t>(pairs));
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (auto& a : angles) a = rng.uniform(margin, half_pi - margin);
    return pair_from_angles(angles, ep, eq, ek, rng.gen());
}

// Exact sub-projection R <= P: a rotated subset of an orthonormal basis of
// range(P).
inline Mat random_subprojection(const Mat& p, Rng& rng,
                                const Tolerances& tol = tolerances()) {
    auto dec = hermitian_eig(p, tol);
    std::vector<int> range_idx;
    for (size_t i = 0; i < dec.eigenvalues.size(); ++i)
        if (dec.eigenvalues[i] > 0.5) range_idx.push_back(static_cast<int>(i));
    const int r = static_cast<int>(range_idx.size());
    if (r == 0) return Mat::Zero(p.rows(), p.cols());
    Mat basis(p.rows(), r);
    for (int j = 0; j < r; ++j) basis.col(j) = dec.eigenvectors.col(range_idx[static_cast<size_t>(j)]);
    Mat w = haar_unitary(r, rng);
    int keep = rng.uniform_int(0, r);
    Mat rotated = basis * w;
    Mat sel = rotated.leftCols(keep);
    return hermitize(sel * sel.adjoint());
}

// Random partial isometry of the given rank.
inline Mat random_partial_isometry(int n, int rank, Rng& rng) {
    Mat a = haar_unitary(n, rng);
    Mat b = haar_unitary(n, rng);
    return b.leftCols(rank) * a.leftCols(rank).adjoint();
}

// Block-diagonal projection with random per-block ranks.
inline Mat random_block_projection(const BlockAlgebra& alg, Rng& rng) {
    Mat out = Mat::Zero(alg.total_dim(), alg.total_dim());
    for (int b = 0; b < alg.block_count(); ++b) {
        int d = alg.block_dims[static_cast<size_t>(b)];
        int rank = rng.uniform_int(0, d);
        if (rank > 0)
            out.block(alg.offset(b), alg.offset(b), d, d) = random_projection(d, rank, rng);
    }
    return out;
}

// Pair of block-diagonal projections with per-block principal angles kept
// away from 0 and pi/2.
inline std::pair<Mat, Mat> random_block_pair(const BlockAlgebra& alg, Rng& rng,
                                             double margin = 0.15) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    Mat p = Mat::Zero(alg.total_dim(), alg.total_dim());
    Mat q = p;
    for (int b = 0; b < alg.block_count(); ++b) {
        int d = alg.block_dims[static_cast<size_t>(b)];
        int pairs = d >= 2 ? rng.uniform_int(1, d / 2) : 0;
        int budget = d - 2 * pairs;
        int ep = budget > 0 ? rng.uniform_int(0, budget) : 0;
        int eq = budget - ep > 0 ? rng.uniform_int(0, budget - ep) : 0;
        int ek = budget - ep - eq;
        std::vector<double> angles(static_cast<size_t>(pairs));
        for (auto& a : angles) a = rng.uniform(margin, half_pi - margin);
        if (pairs + ep + eq + ek == 0) { ep = d; }
        auto [pb, qb] = pair_from_angles(angles, ep, eq, ek, rng.gen());
        p.block(alg.offset(b), alg.offset(b), d, d) = pb;
        q.block(alg.offset(b), alg.offset(b), d, d) = qb;
    }
    return {p, q};
}

// Lift of a target projection with independent junk on dropped blocks.
inline Mat noisy_lift_projection(const QuotientMap& pi, const Mat& target, Rng& rng) {
    Mat out = pi.embed_matrix(target);
    std::vector<bool> kept(static_cast<size_t>(pi.source.block_count()), false);
    for (int k : pi.kept_blocks) kept[static_cast<size_t>(k)] = true;
    for (int b = 0; b < pi.source.block_count(); ++b) {
        if (kept[static_cast<size_t>(b)]) continue;
        int d = pi.source.block_dims[static_cast<size_t>(b)];
        int rank = rng.uniform_int(0, d);
        if (rank > 0)
            out.block(pi.source.offset(b), pi.source.offset(b), d, d) =
                random_projection(d, rank, rng);
    }
    return out;
}

inline Vec random_unit_vector(int n, Rng& rng) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.cgaussian();
    v.normalize();
    return v;
}

} // namespace projcalc
