#ifndef RES1D_TYPES_HPP
#define RES1D_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace res1d {

using Complex = std::complex<double>;
using VecXd = Eigen::VectorXd;
using VecXi = Eigen::VectorXi;
using VecXc = Eigen::VectorXcd;
using Mat2d = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;

inline constexpr double kDefaultTol = 1e-12;

enum class Geometry { halfline, line };
enum class Sheet { physical, second };

inline const char* to_string(Geometry g) {
  return g == Geometry::halfline ? "halfline" : "line";
}

// Complex number carried as mantissa * exp(exponent); keeps evaluations
// alive where a plain double would overflow (boundary weights and products
// of hundreds of spectral factors).
struct LogComplex {
  Complex m{0.0, 0.0};
  double e = 0.0;
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct BranchCutError : Error {
  using Error::Error;
};
struct OutOfDomainError : Error {
  using Error::Error;
};
struct PoleHitError : Error {
  using Error::Error;
};
struct DegenerateSpacingError : Error {
  using Error::Error;
};
struct ConditioningRefusedError : Error {
  using Error::Error;
};
struct ContourUnstableError : Error {
  using Error::Error;
};
struct ValidityViolatedError : Error {
  using Error::Error;
};
struct GridTooCoarseError : Error {
  using Error::Error;
};
struct AuxBoxTooSmallError : Error {
  using Error::Error;
};
struct BandEdgeError : Error {
  using Error::Error;
};
struct TooFewRealizationsError : Error {
  using Error::Error;
};
struct ConfigInvalidError : Error {
  using Error::Error;
};

}  // namespace res1d

#endif
