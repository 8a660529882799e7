#include "shapegeo/common.hpp"

namespace shapegeo {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSpeed: return "DegenerateSpeed";
    case ErrorKind::UnwrapAmbiguous: return "UnwrapAmbiguous";
    case ErrorKind::NonZeroMean: return "NonZeroMean";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::AntipodalPair: return "AntipodalPair";
    case ErrorKind::DegenerateAlignment: return "DegenerateAlignment";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::NotHorizontal: return "NotHorizontal";
    case ErrorKind::DegeneratePlane: return "DegeneratePlane";
    case ErrorKind::CircleSingular: return "CircleSingular";
    case ErrorKind::TooCoarse: return "TooCoarse";
    case ErrorKind::DegenerateReparametrization: return "DegenerateReparametrization";
    case ErrorKind::BadSetReached: return "BadSetReached";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

double Grid::spacing() const {
  if (topology == Topology::Closed) return kTwoPi / static_cast<double>(n);
  return kTwoPi / static_cast<double>(n - 1);
}

RealVec Grid::thetas() const {
  RealVec t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = theta(i);
  return t;
}

RealVec Grid::weights() const {
  RealVec w(n, spacing());
  if (topology == Topology::Open && n > 0) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

double trapezoid(const RealVec& values, const Grid& grid) {
  const RealVec w = grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += w[i] * values[i];
  return s;
}

double dot(const RealVec& a, const RealVec& b, const Grid& grid) {
  const RealVec w = grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

}  // namespace shapegeo
