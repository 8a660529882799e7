#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace shapegeo {

using Complex = std::complex<double>;
using RealVec = std::vector<double>;
using ComplexVec = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Topology { Open, Closed };

enum class ErrorKind {
  DegenerateSpeed,
  UnwrapAmbiguous,
  NonZeroMean,
  GridMismatch,
  ParityMismatch,
  AntipodalPair,
  DegenerateAlignment,
  NotTangent,
  NotOrthonormal,
  NotHorizontal,
  DegeneratePlane,
  CircleSingular,
  TooCoarse,
  DegenerateReparametrization,
  BadSetReached,
  InvalidInput,
  Parse,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Uniform parameter grid on [0, 2pi]. Closed curves use N nodes with spacing 2pi/N
// (node N coincides with node 0); open curves use N nodes including both endpoints.
struct Grid {
  std::size_t n = 0;
  Topology topology = Topology::Closed;

  double spacing() const;
  double theta(std::size_t i) const { return spacing() * static_cast<double>(i); }
  RealVec thetas() const;
  // Trapezoid weights in theta; they sum to 2pi.
  RealVec weights() const;
};

double trapezoid(const RealVec& values, const Grid& grid);
double dot(const RealVec& a, const RealVec& b, const Grid& grid);

}  // namespace shapegeo
