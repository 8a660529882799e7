#pragma once

#include <string>

#include "shapegeo/curvature.hpp"
#include "shapegeo/dynamics.hpp"
#include "shapegeo/matching.hpp"

namespace shapegeo::io {

/// Rounds to 12 significant digits, the precision of all written numbers.
double round12(double x);
std::string format_number(double x);

/// Curve files: JSON {"topology": "open"|"closed", "points": [[x,y],...]} or CSV with a
/// "# topology=..." header line and x,y rows. Parse errors carry line numbers.
PlaneCurve parse_curve_json(const std::string& text);
PlaneCurve parse_curve_csv(const std::string& text);
/// Chooses the format by extension (.csv) or first non-blank character.
PlaneCurve read_curve(const std::string& path);
std::string curve_to_json(const PlaneCurve& c);
std::string curve_to_csv(const PlaneCurve& c);

/// Complex sample files (tangent fields, velocities): JSON {"values": [[re,im],...]}
/// (a "points" key is accepted too) or two-column CSV.
ComplexVec read_field(const std::string& path);
std::string field_to_json(const ComplexVec& v);

/// {"parity": ..., "e": [...], "f": [...]}, optionally with the zero-set report.
std::string lift_to_json(const LiftPair& p, const ZeroSetReport* zeros = nullptr);
LiftPair parse_lift_json(const std::string& text);

/// {"times": [...], "curves": [curve, ...]}
std::string path_to_json(const RealVec& times, const std::vector<PlaneCurve>& curves);

std::string match_to_json(const MatchResult& m, const BoundResult* bounds = nullptr);
std::string curvature_report_to_json(const CurvatureReport& r);

/// CSV columns t, energy, angular, scaling, sup_reparam.
std::string momenta_csv(const Trajectory& traj);
std::string trajectory_to_json(const Trajectory& traj);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace shapegeo::io
