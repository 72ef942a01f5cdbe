/*
 * states.hpp — vector states, exact excision on projections, and the
 * constructive transitivity matrix-unit recursion.
 *
 * Excision: given a projection Q and the vector state phi = <. v, v>,
 * build P with P v = v and P Q P = phi(Q) P exactly.  The rank-1 seed
 * v v* excises on the nose; rank grows by adjoining fresh rank-1
 * excisers on 2-planes at angle arccos(sqrt(phi(Q))) and rebuilding the
 * old part with the constant projection calculus P_{Q,S,phi(Q)}.
 *
 * Transitivity: from orthonormal e_1..e_n the recursion
 *   Q_{m+1} = [Q_m^perp P_m],  U_n = Q_n,  U_m = 2 Q_m P_m U_{m+1}
 * with P_m Q_m P_m = 1/2 P_m and P_m f_m = f_m, f_m = (e_m+e_{m+1})/sqrt2,
 * yields partial isometries acting as e_m e_n* on the chosen basis, and
 * the E_ij = U_i U_j* form a full matrix unit system.
 */
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "block.hpp"
#include "calculus.hpp"
#include "geometry.hpp"
#include "lifting.hpp"
#include "numeric.hpp"
#include "support.hpp"
#include "types.hpp"

namespace projcalc {

struct PureState {
    Vec vector;

    PureState() = default;
    explicit PureState(Vec v, const Tolerances& tol = tolerances()) : vector(std::move(v)) {
        if (std::abs(vector.norm() - 1.0) > tol.tau_eq)
            throw DomainError("PureState: vector must have unit norm");
    }

    cx evaluate(const Mat& t) const { return (vector.adjoint() * t * vector)(0, 0); }
    double evaluate_real(const Mat& t) const { return evaluate(t).real(); }

    // For block algebras the vector must live in a single block.
    int block_of(const BlockAlgebra& alg, const Tolerances& tol = tolerances()) const {
        int found = -1;
        for (int b = 0; b < alg.block_count(); ++b) {
            double mass =
                vector.segment(alg.offset(b), alg.block_dims[static_cast<size_t>(b)]).norm();
            if (mass > tol.tau_eq) {
                if (found >= 0)
                    throw DomainError("PureState: vector is supported in more than one block");
                found = b;
            }
        }
        return found;
    }
};

namespace detail {

// Orthonormal collection with projection onto its span.
struct SpanTracker {
    std::vector<Vec> vecs;
    int              dim;

    explicit SpanTracker(int n) : dim(n) {}

    void add(const Vec& v) {
        Vec w = v;
        for (const auto& u : vecs) w -= u * (u.adjoint() * w)(0, 0);
        double nrm = w.norm();
        if (nrm > 1e-10) vecs.push_back(w / nrm);
    }

    void add_columns(const Mat& m) {
        for (long j = 0; j < m.cols(); ++j) add(m.col(j));
    }

    // Add an orthonormal basis of the range of a projection.
    void add_range(const Mat& proj, const Tolerances& tol) {
        auto dec = hermitian_eig(proj, tol);
        for (size_t i = 0; i < dec.eigenvalues.size(); ++i)
            if (dec.eigenvalues[i] > 0.5) add(dec.eigenvectors.col(static_cast<long>(i)));
    }

    Mat projection() const {
        Mat p = Mat::Zero(dim, dim);
        for (const auto& u : vecs) p += u * u.adjoint();
        return p;
    }
};

// Unit vector in range(space) orthogonal to range(avoid), if any.
inline std::optional<Vec> fresh_direction(const Mat& space, const Mat& avoid,
                                          const Tolerances& tol) {
    const Mat id = Mat::Identity(space.rows(), space.cols());
    Mat m = hermitize((id - space) + avoid);
    auto dec = hermitian_eig(m, tol);
    if (dec.eigenvalues.empty() || dec.eigenvalues.front() > 1e-9) return std::nullopt;
    Vec v = dec.eigenvectors.col(0);
    v = space * (v - avoid * v);
    double nrm = v.norm();
    if (nrm < 0.5) return std::nullopt;
    v /= nrm;
    if ((space * v - v).norm() > 1e-8 || (avoid * v).norm() > 1e-8) return std::nullopt;
    return v;
}

} // namespace detail

// One excision growth step:
//   S = [(Rnext v [Q Rnext])^perp (Pn - [Pn Rnext])],
//   P_{n+1} = Rnext + P_{Q,S,lambda}.
inline Mat excision_step(const Mat& q, const Mat& pn, const Mat& rnext, double lambda,
                         const Tolerances& tol = tolerances()) {
    require_projection(q, "excision_step", tol);
    require_projection(pn, "excision_step", tol);
    require_projection(rnext, "excision_step", tol);
    if (operator_norm(pn * q * pn - lambda * pn) > 10.0 * tol.tau_eq)
        throw NotExcising("excision_step: Pn does not excise at lambda");
    if (operator_norm(rnext * q * rnext - lambda * rnext) > 10.0 * tol.tau_eq)
        throw NotExcising("excision_step: Rnext does not excise at lambda");

    const Mat id = Mat::Identity(q.rows(), q.cols());
    Mat pr = pn * rnext;
    Mat a = pr.isZero(tol.tau_eq) ? Mat(Mat::Zero(q.rows(), q.cols())) : left_support(pr, tol);

    Mat qr = q * rnext;
    Mat qr_supp =
        qr.isZero(tol.tau_eq) ? Mat(Mat::Zero(q.rows(), q.cols())) : left_support(qr, tol);
    Mat g = rnext.isZero(tol.tau_eq) ? qr_supp : lattice_join(rnext, qr_supp, tol);

    Mat rem = hermitize(pn - a);
    Mat s = Mat::Zero(q.rows(), q.cols());
    if (!rem.isZero(tol.tau_eq)) {
        Mat moved = (id - g) * rem;
        if (moved.isZero(tol.tau_eq) || numeric_rank(moved) < numeric_rank(rem))
            throw DegenerateSplit("excision_step: moved part lost rank against the join");
        s = left_support(moved, tol);
    }

    Mat pprime = s.isZero(tol.tau_eq) ? s : pc_constant(q, s, lambda, tol).P;
    if (operator_norm(pprime * rnext) > 10.0 * tol.tau_eq)
        throw DegenerateSplit("excision_step: rebuilt part overlaps Rnext");
    Mat out = hermitize(rnext + pprime);
    if (operator_norm(out * q * out - lambda * out) > 100.0 * tol.tau_eq)
        throw NotExcising("excision_step: result does not excise at lambda");
    return out;
}

// Exact excision of the vector state on Q at the requested rank.  Fresh
// 2-planes are searched inside range(inside) and kept orthogonal to
// range(avoid) plus everything already used.
inline Mat excise(const Mat& q, const PureState& phi, int target_rank,
                  const std::optional<Mat>& avoid = {}, const std::optional<Mat>& inside = {},
                  const Tolerances& tol = tolerances()) {
    require_projection(q, "excise", tol);
    const int n = static_cast<int>(q.rows());
    if (phi.vector.size() != n) throw DomainError("excise: state dimension mismatch");
    if (target_rank < 1) throw RankUnachievable("excise: target_rank must be >= 1");
    const Mat id = Mat::Identity(n, n);
    const Mat space = inside ? *inside : id;
    const Vec& v = phi.vector;
    double lambda = phi.evaluate_real(q);

    detail::SpanTracker used(n);
    used.add(v);
    used.add(q * v);
    if (avoid) used.add_range(*avoid, tol);

    Mat p = v * v.adjoint();

    // phi(Q) in {0,1}: extend inside Q or Qperp.
    if (lambda >= 1.0 - tol.tau_cluster || lambda <= tol.tau_cluster) {
        Mat host = lambda >= 0.5 ? q : Mat(id - q);
        Mat host_in = hermitize(space * host * space);
        for (int k = 1; k < target_rank; ++k) {
            auto w = detail::fresh_direction(support_of_positive(host_in, tol),
                                             used.projection(), tol);
            if (!w) throw RankUnachievable("excise: no room left inside Q or Qperp");
            p += (*w) * w->adjoint();
            used.add(*w);
        }
        return hermitize(p);
    }

    const double alpha = std::acos(std::sqrt(lambda));
    for (int k = 1; k < target_rank; ++k) {
        auto a = detail::fresh_direction(q, used.projection(), tol);
        if (!a) throw RankUnachievable("excise: no fresh direction left inside Q");
        detail::SpanTracker with_a = used;
        with_a.add(*a);
        Mat qperp_in = hermitize(space * (id - q) * space);
        auto b = detail::fresh_direction(support_of_positive(qperp_in, tol),
                                         with_a.projection(), tol);
        if (!b) throw RankUnachievable("excise: no fresh direction left inside Qperp");
        Vec w = std::cos(alpha) * (*a) + std::sin(alpha) * (*b);
        Mat rnext = w * w.adjoint();
        p = excision_step(q, p, rnext, lambda, tol);
        used.add(*a);
        used.add(*b);
    }
    if ((p * v - v).norm() > 10.0 * tol.tau_eq)
        throw NotExcising("excise: state vector escaped the result");
    return hermitize(p);
}

struct MatrixUnitSystem {
    std::vector<Mat> units;  // U_1 .. U_n with U_m* U_m = U_n* U_n
    std::vector<Vec> basis;

    Mat unit_product(int i, int j) const {  // E_ij = U_i U_j*
        return units[static_cast<size_t>(i)] * units[static_cast<size_t>(j)].adjoint();
    }
};

namespace detail {

inline MatrixUnitSystem transitivity_units_impl(int ambient, const std::vector<Vec>& basis,
                                                bool fat, const Mat& inside,
                                                const Tolerances& tol) {
    const int n = static_cast<int>(basis.size());
    MatrixUnitSystem sys;
    sys.basis = basis;
    if (n == 0) return sys;
    const Mat id = Mat::Identity(ambient, ambient);

    for (const auto& e : basis)
        if ((inside * e - e).norm() > tol.tau_eq)
            throw BasisNotOrthonormal("transitivity_units: basis leaves the ambient subspace");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cx g = (basis[static_cast<size_t>(i)].adjoint() * basis[static_cast<size_t>(j)])(0, 0);
            if (std::abs(g - (i == j ? cx(1, 0) : cx(0, 0))) > tol.tau_eq)
                throw BasisNotOrthonormal("transitivity_units: basis is not orthonormal");
        }

    SpanTracker used(ambient);
    for (const auto& e : basis) used.add(e);

    // Q_1 fixes e_1 and kills e_2..e_n; the fat variant pads it with a
    // fresh direction so the excision path below runs at rank 2.  The
    // padding of the current Q_m stays out of the avoid set, since the
    // next exciser plane consumes one of its directions.
    Mat q = basis[0] * basis[0].adjoint();
    Mat qjunk_proj = Mat::Zero(ambient, ambient);
    if (fat && n >= 2) {
        Mat host = support_of_positive(hermitize(inside), tol);
        auto d = fresh_direction(host, used.projection(), tol);
        if (!d) throw DimensionTooSmall("transitivity_units: no room for the fat Q_1");
        q += (*d) * d->adjoint();
        qjunk_proj = (*d) * d->adjoint();
        used.add(*d);
    }

    std::vector<Mat> qs{q};
    std::vector<Mat> ps;
    for (int m = 0; m + 1 < n; ++m) {
        Vec f = (basis[static_cast<size_t>(m)] + basis[static_cast<size_t>(m + 1)]) /
                std::sqrt(2.0);
        Mat p;
        if (!fat) {
            p = f * f.adjoint();
        } else {
            Mat avoid = hermitize(used.projection() - qjunk_proj);
            p = excise(qs.back(), PureState(f, tol), 2, avoid, inside, tol);
            used.add_range(p, tol);
            used.add_columns(qs.back() * p);
        }
        ps.push_back(p);
        Mat qnext_raw = (id - qs.back()) * p;
        Mat qnext = qnext_raw.isZero(tol.tau_eq) ? Mat(Mat::Zero(ambient, ambient))
                                                 : left_support(qnext_raw, tol);
        // padding of Q_{m+1}: its range minus e_{m+1}
        qjunk_proj = hermitize(qnext - basis[static_cast<size_t>(m + 1)] *
                                           basis[static_cast<size_t>(m + 1)].adjoint());
        qs.push_back(qnext);
        used.add_range(qnext, tol);
    }

    sys.units.assign(static_cast<size_t>(n), Mat());
    sys.units[static_cast<size_t>(n - 1)] = qs.back();
    for (int m = n - 2; m >= 0; --m)
        sys.units[static_cast<size_t>(m)] =
            2.0 * qs[static_cast<size_t>(m)] * ps[static_cast<size_t>(m)] *
            sys.units[static_cast<size_t>(m + 1)];
    return sys;
}

} // namespace detail

// Matrix unit system over an orthonormal family in C^N.
inline MatrixUnitSystem transitivity_units(int ambient_dim, const std::vector<Vec>& basis,
                                           bool fat = false,
                                           const Tolerances& tol = tolerances()) {
    if (ambient_dim < static_cast<int>(basis.size()))
        throw DimensionTooSmall("transitivity_units: ambient dimension below basis size");
    for (const auto& e : basis)
        if (e.size() != ambient_dim)
            throw BasisNotOrthonormal("transitivity_units: basis vector dimension mismatch");
    Mat id = Mat::Identity(ambient_dim, ambient_dim);
    return detail::transitivity_units_impl(ambient_dim, basis, fat, id, tol);
}

// One unit system per block, built inside pairwise orthogonal block
// supports; cross-block unit products vanish.
inline std::vector<MatrixUnitSystem> transitivity_multi(
    const BlockAlgebra& algebra, const std::vector<std::vector<Vec>>& bases, bool fat = false,
    const Tolerances& tol = tolerances()) {
    if (static_cast<int>(bases.size()) != algebra.block_count())
        throw AlgebraMismatch("transitivity_multi: need one basis family per block");
    const int n = algebra.total_dim();
    const Mat id = Mat::Identity(n, n);

    std::vector<MatrixUnitSystem> out;
    Mat claimed = Mat::Zero(n, n);
    for (int b = 0; b < algebra.block_count(); ++b) {
        // I_b via the sandwich on T*T, T = J_b (1 - sum of earlier supports)
        Mat t = algebra.block_indicator(b) * (id - claimed);
        Mat tt = hermitize(t.adjoint() * t);
        Mat support = tt.isZero(tol.tau_eq)
                          ? Mat(Mat::Zero(n, n))
                          : sandwich_between(tt, 1.0 / 3.0, 2.0 / 3.0, tol);
        claimed = hermitize(claimed + support);

        const auto& fam = bases[static_cast<size_t>(b)];
        for (const auto& e : fam)
            if ((support * e - e).norm() > tol.tau_eq)
                throw BasisNotOrthonormal("transitivity_multi: basis vector outside its block");
        if (2 * static_cast<int>(fam.size()) > algebra.block_dims[static_cast<size_t>(b)] &&
            fat)
            throw DimensionTooSmall("transitivity_multi: block too small for the fat path");
        out.push_back(detail::transitivity_units_impl(n, fam, fat, support, tol));
    }
    return out;
}

} // namespace projcalc
