#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace projcalc {

using cx  = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Residual tolerances used by every predicate and post-condition check.
// tau_eq      : residual tolerance for exact operator identities.
// tau_cluster : clustering width for discrete spectra; eigenvalues closer
//               than this are treated as one spectral point.
// tau_wellsup : eigenvalues of TT* at or below this are numerically
//               degenerate (gray zone between exact zero and clean support).
// tau_spec    : Hausdorff tolerance for spectrum-exact lifting.
struct Tolerances {
    double tau_eq      = 1e-8;
    double tau_cluster = 1e-7;
    double tau_wellsup = 1e-9;
    double tau_spec    = 1e-4;

    void validate() const {
        if (!(0.0 < tau_wellsup && tau_wellsup < tau_cluster))
            throw std::invalid_argument("Tolerances: need 0 < tau_wellsup < tau_cluster");
        if (!(tau_eq < 1e-3 && tau_cluster < 1e-3 && tau_wellsup < 1e-3))
            throw std::invalid_argument("Tolerances: all tolerances must be < 1e-3");
    }
};

inline const Tolerances& tolerances() {
    static const Tolerances t{};
    return t;
}

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define PROJCALC_ERROR(NAME)                                        \
    struct NAME : Error {                                           \
        explicit NAME(const std::string& msg) : Error(msg) {}       \
    }

PROJCALC_ERROR(NotSelfAdjoint);
PROJCALC_ERROR(NotProjection);
PROJCALC_ERROR(NotIdempotent);
PROJCALC_ERROR(NotPartialIsometry);
PROJCALC_ERROR(NumericallyDegenerate);
PROJCALC_ERROR(InvalidAngle);
PROJCALC_ERROR(AmbiguousThreshold);
PROJCALC_ERROR(DomainError);
PROJCALC_ERROR(JoinUndefined);
PROJCALC_ERROR(PairTooFar);
PROJCALC_ERROR(CommutatorTooLarge);
PROJCALC_ERROR(Inadmissible);
PROJCALC_ERROR(NotOrthogonal);
PROJCALC_ERROR(NormTooLarge);
PROJCALC_ERROR(AlgebraMismatch);
PROJCALC_ERROR(BadInterval);
PROJCALC_ERROR(GapNotClean);
PROJCALC_ERROR(DegenerateSplit);
PROJCALC_ERROR(NotExcising);
PROJCALC_ERROR(RankUnachievable);
PROJCALC_ERROR(DimensionTooSmall);
PROJCALC_ERROR(BasisNotOrthonormal);
PROJCALC_ERROR(NotPositiveCase);
PROJCALC_ERROR(UnknownSuite);

#undef PROJCALC_ERROR

} // namespace projcalc
