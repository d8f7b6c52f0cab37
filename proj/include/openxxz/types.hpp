#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace openxxz {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

// Genericity threshold shared by all degeneracy rejections (relative).
inline constexpr double kGenericityTol = 1e-6;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define OPENXXZ_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                            \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

OPENXXZ_DEFINE_ERROR(ZeroParameter);
OPENXXZ_DEFINE_ERROR(DegenerateBoundary);
OPENXXZ_DEFINE_ERROR(SingularGamma);
OPENXXZ_DEFINE_ERROR(GenericityFailure);
OPENXXZ_DEFINE_ERROR(SingularParameter);
OPENXXZ_DEFINE_ERROR(CrossingSingularity);
OPENXXZ_DEFINE_ERROR(NonInvertibleTransfer);
OPENXXZ_DEFINE_ERROR(PoleAtRoot);
OPENXXZ_DEFINE_ERROR(IllConditioned);
OPENXXZ_DEFINE_ERROR(LiftFailure);
OPENXXZ_DEFINE_ERROR(ResidualTooLarge);
OPENXXZ_DEFINE_ERROR(PoleCollision);
OPENXXZ_DEFINE_ERROR(OffShellDual);
OPENXXZ_DEFINE_ERROR(DegenerateRoots);
OPENXXZ_DEFINE_ERROR(CrossCheckFailure);
OPENXXZ_DEFINE_ERROR(PochhammerZero);
OPENXXZ_DEFINE_ERROR(DegenerateDenominator);
OPENXXZ_DEFINE_ERROR(ConfigError);

#undef OPENXXZ_DEFINE_ERROR

inline double frob(const Matrix& m) { return m.norm(); }

// Relative residual of an identity LHS == RHS.  If a scale is supplied it is
// used as the denominator (e.g. product of operand norms), otherwise the
// larger of the two side norms.
inline double rel_residual(const Matrix& lhs, const Matrix& rhs, double scale = 0.0) {
    double d = scale > 0.0 ? scale : std::max(lhs.norm(), rhs.norm());
    if (d == 0.0) return 0.0;
    return (lhs - rhs).norm() / d;
}

inline double rel_diff(cplx a, cplx b) {
    double d = std::max(std::abs(a), std::abs(b));
    if (d == 0.0) return 0.0;
    return std::abs(a - b) / d;
}

}  // namespace openxxz
