#include "shapegeo/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

namespace shapegeo::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + e.what());
  }
}

Topology topology_from(const std::string& s) {
  if (s == "open") return Topology::Open;
  if (s == "closed") return Topology::Closed;
  throw Error(ErrorKind::Parse, "unknown topology '" + s + "'");
}

const char* topology_name(Topology t) { return t == Topology::Open ? "open" : "closed"; }

ComplexVec points_from(const json& arr, const char* what) {
  if (!arr.is_array()) throw Error(ErrorKind::Parse, std::string(what) + " must be an array");
  ComplexVec pts;
  pts.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw Error(ErrorKind::Parse, std::string(what) + "[" + std::to_string(i) + "] must be [x, y]");
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return pts;
}

json points_json(const ComplexVec& v) {
  json arr = json::array();
  for (const Complex& z : v) arr.push_back({round12(z.real()), round12(z.imag())});
  return arr;
}

json reals_json(const RealVec& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(round12(x));
  return arr;
}

json curve_json(const PlaneCurve& c) {
  return json{{"topology", topology_name(c.topology)}, {"points", points_json(c.points)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

bool looks_like_csv(const std::string& path, const std::string& text) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return true;
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] != '{';
}

// Parses "x,y" rows; lines starting with '#' are comments, header key=value pairs are
// returned through the callback.
ComplexVec parse_xy_rows(const std::string& text, const std::function<void(const std::string&)>& on_comment) {
  std::istringstream in(text);
  std::string line;
  ComplexVec pts;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      on_comment(line.substr(first + 1));
      continue;
    }
    double x = 0.0, y = 0.0;
    char tail = 0;
    std::string row = line.substr(first);
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream rs(row);
    if (!(rs >> x >> y) || (rs >> tail))
      throw Error(ErrorKind::Parse, "line " + std::to_string(lineno) + ": expected two numbers");
    pts.emplace_back(x, y);
  }
  return pts;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

PlaneCurve parse_curve_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("points")) throw Error(ErrorKind::Parse, "curve needs a \"points\" array");
  const Topology topo = topology_from(j.value("topology", std::string("closed")));
  return PlaneCurve(points_from(j["points"], "points"), topo);
}

PlaneCurve parse_curve_csv(const std::string& text) {
  Topology topo = Topology::Closed;
  const ComplexVec pts = parse_xy_rows(text, [&](const std::string& comment) {
    std::string v = comment;
    v.erase(std::remove_if(v.begin(), v.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }),
            v.end());
    const auto eq = v.find("topology=");
    if (eq == std::string::npos) return;
    topo = topology_from(v.substr(eq + 9));
  });
  return PlaneCurve(pts, topo);
}

PlaneCurve read_curve(const std::string& path) {
  const std::string text = read_text(path);
  return looks_like_csv(path, text) ? parse_curve_csv(text) : parse_curve_json(text);
}

std::string curve_to_json(const PlaneCurve& c) { return dump(curve_json(c)); }

std::string curve_to_csv(const PlaneCurve& c) {
  std::ostringstream out;
  out << "# topology=" << topology_name(c.topology) << "\n";
  for (const Complex& z : c.points) out << format_number(z.real()) << "," << format_number(z.imag()) << "\n";
  return out.str();
}

ComplexVec read_field(const std::string& path) {
  const std::string text = read_text(path);
  if (looks_like_csv(path, text)) return parse_xy_rows(text, [](const std::string&) {});
  const json j = parse_json(text);
  if (j.is_object() && j.contains("values")) return points_from(j["values"], "values");
  if (j.is_object() && j.contains("points")) return points_from(j["points"], "points");
  throw Error(ErrorKind::Parse, "field needs a \"values\" array");
}

std::string field_to_json(const ComplexVec& v) { return dump(json{{"values", points_json(v)}}); }

std::string lift_to_json(const LiftPair& p, const ZeroSetReport* zeros) {
  json j{{"parity", parity_name(p.parity)}, {"e", reals_json(p.e)}, {"f", reals_json(p.f)}};
  if (zeros) {
    j["zero_set"] = json{{"zero_nodes", zeros->zero_nodes},
                         {"min_value", round12(zeros->min_value)},
                         {"crosses_bad_set", zeros->crosses_bad_set}};
  }
  return dump(j);
}

LiftPair parse_lift_json(const std::string& text) {
  const json j = parse_json(text);
  try {
    const Parity parity = parity_from_name(j.at("parity").get<std::string>());
    RealVec e = j.at("e").get<RealVec>(), f = j.at("f").get<RealVec>();
    const Grid g{e.size(), parity == Parity::OpenFree ? Topology::Open : Topology::Closed};
    return make_lift_pair(g, std::move(e), std::move(f), parity);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::Parse, ex.what());
  }
}

std::string path_to_json(const RealVec& times, const std::vector<PlaneCurve>& curves) {
  json arr = json::array();
  for (const PlaneCurve& c : curves) arr.push_back(curve_json(c));
  return dump(json{{"times", reals_json(times)}, {"curves", arr}});
}

std::string match_to_json(const MatchResult& m, const BoundResult* bounds) {
  json bp = json::array();
  for (const auto& [u, phi] : m.map.breakpoints) bp.push_back({round12(u), round12(phi)});
  const auto s = m.map.summary();
  json j{{"breakpoints", bp},
         {"offset", round12(m.map.offset)},
         {"offset_segments", m.offset_segments},
         {"rotation", round12(m.rotation)},
         {"U_value", round12(m.U_value)},
         {"lower_bound_distance", round12(m.lower_bound_distance)},
         {"segments", {m.n0, m.n1}},
         {"map_summary",
          {{"flat_segments", s.flat_segments},
           {"flat_measure", round12(s.flat_measure)},
           {"jump_segments", s.jump_segments},
           {"jump_measure", round12(s.jump_measure)}}}};
  if (bounds) {
    j["bounds"] = json{{"lower", round12(bounds->lower)},
                       {"lower_scaled", round12(bounds->lower_scaled)},
                       {"upper", round12(bounds->upper)},
                       {"gap", round12(bounds->upper - bounds->lower)},
                       {"lost_mass", round12(bounds->lost_mass)},
                       {"degenerate", bounds->degenerate}};
  }
  return dump(j);
}

std::string curvature_report_to_json(const CurvatureReport& r) {
  return dump(json{{"k_gr", round12(r.k_gr)},
                   {"k_st", round12(r.k_st)},
                   {"k_imm_sim", round12(r.k_imm_sim)},
                   {"rho", round12(r.rho)},
                   {"k_b_sim", round12(r.k_b_sim)},
                   {"upper_bound", round12(r.upper_bound)}});
}

std::string momenta_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,energy,angular,scaling,sup_reparam\n";
  for (const GeodesicState& s : traj.states) {
    double sup = 0.0;
    for (double x : s.reparam) sup = std::max(sup, std::abs(x));
    out << format_number(s.t) << "," << format_number(s.energy) << "," << format_number(s.angular) << ","
        << format_number(s.scaling) << "," << format_number(sup) << "\n";
  }
  return out.str();
}

std::string trajectory_to_json(const Trajectory& traj) {
  json times = json::array(), curves = json::array();
  for (const GeodesicState& s : traj.states) {
    times.push_back(round12(s.t));
    curves.push_back(curve_json(s.c));
  }
  json j{{"times", times}, {"curves", curves}, {"bad_set_reached", traj.bad_set_reached}};
  if (traj.bad_set_reached) {
    j["bad_set_time"] = round12(traj.bad_set_time);
    j["reason"] = traj.reason;
  }
  return dump(j);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
}

}  // namespace shapegeo::io
