#pragma once

#include "shapegeo/geodesy.hpp"

namespace shapegeo {

/// Base pair e + i f = exp(i theta / 2) / sqrt(pi), the lift of the unit-length circle
/// (exp(i theta) - 1) / (2 pi i).
LiftPair fig3_base(std::size_t n);
/// Horizontal direction exp(i theta / 2) / sqrt(pi) * (cos(2 theta) / 2 - i sin(2 theta)).
/// Its squared norm is 5/4.
LiftDirection fig3_direction(std::size_t n);
/// Point at sphere angle tau on the great circle through fig3_base along fig3_direction.
LiftPair fig3_point(std::size_t n, double tau);

struct ExampleFrame {
  double parameter = 0.0;
  LiftPair pair;
  PlaneCurve curve;
  int rotation_index = 0;
  ZeroSetReport zeros;
  bool bad_set = false;
};

struct Fig3Example {
  std::vector<ExampleFrame> frames;     ///< uniform sphere angles on [0, pi)
  std::vector<ExampleFrame> crossings;  ///< refined bad-set crossings
};

/// Samples the shape loop of the great circle (p(tau + pi) = -p(tau) has the same image)
/// and locates the parameters where the path leaves the immersions. n must be divisible by 4.
Fig3Example example_great_circle_fig3(std::size_t frames, std::size_t n);

/// The genbifurc family for the given s values; n odd.
std::vector<ExampleFrame> example_genbifurc_fig1(const RealVec& s_values, std::size_t n);

/// Initial data (c, c_t) for integrating the geodesic equation.
struct GeodesicInitialData {
  PlaneCurve curve;
  ComplexVec velocity;
};

/// Unit circle moving along fig3_direction.
GeodesicInitialData fig3_initial_data(std::size_t n);
/// Genbifurc curve at s0 with velocity -d/ds of the lift, towards the double zero at s = 0.
GeodesicInitialData genbifurc_initial_data(std::size_t n, double s0);

}  // namespace shapegeo
