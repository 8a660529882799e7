#include "shapegeo/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "shapegeo/shapegeo.hpp"
#include "shapegeo/svg.hpp"

namespace shapegeo::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json config_json(const RunConfig& c) {
  return json{{"N", c.N},
              {"segments", c.segments},
              {"n_offsets", c.n_offsets},
              {"n_rot", c.n_rot},
              {"window_open", c.window_open},
              {"window_closed", c.window_closed},
              {"frames", c.frames},
              {"eps_speed", io::round12(c.eps_speed)},
              {"eps_z", io::round12(c.eps_z)},
              {"seed", c.seed},
              {"T", io::round12(c.T)},
              {"steps", c.steps},
              {"threads", c.threads}};
}

void load_config(const std::string& path, RunConfig& c) {
  json j;
  try {
    j = json::parse(io::read_text(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::remove_reference_t<decltype(field)>>();
  };
  get("N", c.N);
  get("segments", c.segments);
  get("n_offsets", c.n_offsets);
  get("n_rot", c.n_rot);
  get("window_open", c.window_open);
  get("window_closed", c.window_closed);
  get("frames", c.frames);
  get("eps_speed", c.eps_speed);
  get("eps_z", c.eps_z);
  get("seed", c.seed);
  get("T", c.T);
  get("steps", c.steps);
  get("threads", c.threads);
  get("out", c.out);
  get("out_dir", c.out_dir);
}

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;

  void emit(json report) const {
    report["config"] = config_json(cfg);
    const std::string text = report.dump(2) + "\n";
    if (cfg.out.empty())
      out << text;
    else
      io::write_text(cfg.out, text);
  }
  fs::path dir() const {
    fs::path d = cfg.out_dir.empty() ? fs::path(".") : fs::path(cfg.out_dir);
    fs::create_directories(d);
    return d;
  }
};

PlaneCurve prepared(const PlaneCurve& c, std::size_t n) { return normalize(resample_by_arclength(c, n)); }

// Phi of a pair drawn as an open polyline including the point at theta = 2 pi.
svg::StripFrame open_frame(const LiftPair& p, bool marked, const std::string& label) {
  const PlaneCurve c = apply_phi(p);
  svg::StripFrame f{c.points, false, marked, label};
  if (p.grid.topology == Topology::Closed) {
    const Complex zl(p.e.back(), p.f.back());
    const Complex z0 = (p.parity == Parity::OddAntiperiodic ? -1.0 : 1.0) * Complex(p.e.front(), p.f.front());
    f.points.push_back(c.points.back() + 0.25 * p.grid.spacing() * (zl * zl + z0 * z0));
  }
  return f;
}

std::string label(const char* name, double v) { return std::string(name) + "=" + io::format_number(io::round12(v)); }

RealVec unit_times(std::size_t frames) {
  RealVec t(frames);
  for (std::size_t k = 0; k < frames; ++k) t[k] = frames == 1 ? 0.0 : static_cast<double>(k) / (frames - 1);
  return t;
}

// ---- lift ----

int cmd_lift(const Context& ctx, const std::string& input) {
  const PlaneCurve c = io::read_curve(input);
  const LiftPair p = lift_curve(c);
  const ZeroSetReport z = zero_set(p, ctx.cfg.eps_z);
  json report = json::parse(io::lift_to_json(p, &z));
  ctx.emit(report);
  if (z.crosses_bad_set) {
    ctx.err << "warning: lift vanishes at " << z.zero_nodes.size() << " node(s)\n";
    return kLiftWarning;
  }
  return kOk;
}

// ---- dist ----

int cmd_dist(const Context& ctx, const std::string& f0, const std::string& f1, bool mod_rot, bool elastic,
             bool closed) {
  const PlaneCurve c0 = io::read_curve(f0), c1 = io::read_curve(f1);
  if (c0.topology != c1.topology) throw Error(ErrorKind::InvalidInput, "curves have different topologies");
  if (closed && c0.topology != Topology::Closed) throw Error(ErrorKind::InvalidInput, "--closed needs closed curves");
  const RunConfig& cfg = ctx.cfg;
  const PlaneCurve r0 = prepared(c0, cfg.N), r1 = prepared(c1, cfg.N);
  const LiftPair p0 = lift_curve(r0), p1 = lift_curve(r1);

  json report;
  report["topology"] = c0.topology == Topology::Closed ? "closed" : "open";
  if (p0.parity == p1.parity) {
    report["distance"] = io::round12(distance_lifted(p0, p1, false));
    report["distance_mod_rot"] = io::round12(c0.topology == Topology::Closed ? distance_grassmann(p0, p1)
                                                                             : distance_lifted(p0, p1, true));
  } else {
    report["distance"] = nullptr;
    report["note"] = "rotation indices differ in parity; the curves lie in different components";
  }
  if (elastic) {
    MatchOptions opts;
    opts.n0 = opts.n1 = cfg.segments;
    opts.n_rot = cfg.n_rot;
    opts.threads = cfg.threads;
    if (c0.topology == Topology::Closed) {
      opts.window = cfg.window_closed;
      opts.n_offsets = cfg.n_offsets;
      const MatchResult m = dp_match_closed(c0, c1, opts);
      const BoundResult b = upper_bound_pipeline(c0, c1, m, cfg.N);
      report["match"] = json::parse(io::match_to_json(m, &b));
    } else {
      opts.window = cfg.window_open;
      opts.mod_rotation = mod_rot;
      const MatchResult m = dp_match(c0, c1, opts);
      report["match"] = json::parse(io::match_to_json(m));
    }
  }
  ctx.emit(report);
  return kOk;
}

// ---- geodesic ----

json frame_json(const ExampleFrame& f) {
  return json{{"parameter", io::round12(f.parameter)},
              {"rotation_index", f.rotation_index},
              {"bad_set", f.bad_set},
              {"zero_nodes", f.zeros.zero_nodes.size()},
              {"min_modulus2", io::round12(f.zeros.min_value)}};
}

int cmd_geodesic_fig3(const Context& ctx) {
  const std::size_t n = std::max<std::size_t>(8, ctx.cfg.N / 4 * 4);
  const Fig3Example ex = example_great_circle_fig3(std::max<std::size_t>(ctx.cfg.frames, 4), n);
  std::vector<ExampleFrame> all = ex.frames;
  all.insert(all.end(), ex.crossings.begin(), ex.crossings.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.parameter < b.parameter; });

  std::vector<svg::StripFrame> strip;
  json frames = json::array(), crossings = json::array();
  for (const ExampleFrame& f : all) {
    svg::StripFrame s{f.curve.points, true, f.bad_set, label("tau", f.parameter)};
    strip.push_back(std::move(s));
  }
  for (const ExampleFrame& f : ex.frames) frames.push_back(frame_json(f));
  for (const ExampleFrame& f : ex.crossings) crossings.push_back(frame_json(f));
  const fs::path svg_path = ctx.dir() / "fig3.svg";
  io::write_text(svg_path.string(), svg::strip(strip));

  json indices = json::array();
  for (const ExampleFrame& f : ex.frames)
    if (indices.empty() || indices.back() != f.rotation_index) indices.push_back(f.rotation_index);
  ctx.emit(json{{"example", "fig3"},
                {"frames", frames},
                {"crossings", crossings},
                {"rotation_indices", indices},
                {"svg", svg_path.string()}});
  return kOk;
}

int cmd_geodesic_fig1(const Context& ctx) {
  const std::size_t n = ctx.cfg.N | 1;
  const std::size_t k = std::max<std::size_t>(ctx.cfg.frames, 3) | 1;  // odd so that s = 0 is a frame
  RealVec s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = -1.0 + 2.0 * static_cast<double>(i) / (k - 1);
  s[k / 2] = 0.0;
  const std::vector<ExampleFrame> fam = example_genbifurc_fig1(s, n);

  std::vector<svg::StripFrame> strip;
  json frames = json::array();
  for (const ExampleFrame& f : fam) {
    strip.push_back(svg::StripFrame{f.curve.points, false, f.bad_set, label("s", f.parameter)});
    json j = frame_json(f);
    j["zero_at_center"] = std::find(f.zeros.zero_nodes.begin(), f.zeros.zero_nodes.end(), n / 2) !=
                          f.zeros.zero_nodes.end();
    frames.push_back(j);
  }
  const fs::path svg_path = ctx.dir() / "fig1.svg";
  io::write_text(svg_path.string(), svg::strip(strip));
  ctx.emit(json{{"example", "fig1"}, {"frames", frames}, {"svg", svg_path.string()}});
  return kOk;
}

int cmd_geodesic(const Context& ctx, const std::vector<std::string>& files, const std::string& example) {
  if (example == "fig3") return cmd_geodesic_fig3(ctx);
  if (example == "fig1") return cmd_geodesic_fig1(ctx);
  if (!example.empty()) throw Error(ErrorKind::InvalidInput, "unknown example '" + example + "'");
  if (files.size() != 2) throw Error(ErrorKind::InvalidInput, "geodesic needs two curve files");
  const PlaneCurve c0 = io::read_curve(files[0]), c1 = io::read_curve(files[1]);
  if (c0.topology != c1.topology) throw Error(ErrorKind::InvalidInput, "curves have different topologies");
  const LiftPair p0 = lift_curve(prepared(c0, ctx.cfg.N)), p1 = lift_curve(prepared(c1, ctx.cfg.N));
  const RealVec times = unit_times(std::max<std::size_t>(ctx.cfg.frames, 2));
  const fs::path dir = ctx.dir();

  json report;
  const GreatCirclePath gc = great_circle(p0, p1);
  std::vector<PlaneCurve> gc_curves;
  std::vector<svg::StripFrame> gc_strip;
  json gc_bad = json::array();
  for (double t : times) {
    const LiftPair p = gc.evaluate(t);
    const bool bad = zero_set(p, ctx.cfg.eps_z).crosses_bad_set;
    svg::StripFrame f = open_frame(p, bad, label("t", t));
    gc_curves.emplace_back(f.points, Topology::Open, true);
    gc_strip.push_back(std::move(f));
    gc_bad.push_back(bad);
  }
  io::write_text((dir / "great_circle.json").string(), io::path_to_json(times, gc_curves));
  io::write_text((dir / "great_circle.svg").string(), svg::strip(gc_strip));
  report["great_circle"] = json{{"length", io::round12(gc.D)}, {"bad_set_frames", gc_bad}};

  if (c0.topology == Topology::Closed && p0.parity == p1.parity) {
    const JordanFrame fr = align_frames(p0, p1);
    const NeretinPath np = neretin_path(fr);
    std::vector<PlaneCurve> curves;
    std::vector<svg::StripFrame> strip;
    for (double t : times) {
      const LiftPair p = np.evaluate(t);
      const PlaneCurve c = apply_phi(p);
      strip.push_back(svg::StripFrame{c.points, true, zero_set(p, ctx.cfg.eps_z).crosses_bad_set, label("t", t)});
      curves.push_back(c);
    }
    io::write_text((dir / "neretin.json").string(), io::path_to_json(times, curves));
    io::write_text((dir / "neretin.svg").string(), svg::strip(strip));
    report["neretin"] = json{{"length", io::round12(np.length())},
                             {"psi_e", io::round12(fr.psi_e)},
                             {"psi_f", io::round12(fr.psi_f)},
                             {"degenerate_plus", fr.degenerate_plus},
                             {"degenerate_minus", fr.degenerate_minus}};
  }
  report["out_dir"] = dir.string();
  ctx.emit(report);
  return kOk;
}

// ---- curvature ----

int cmd_curvature(const Context& ctx, const std::string& curve_file, const std::vector<std::string>& fields) {
  const PlaneCurve raw = io::read_curve(curve_file);
  if (raw.topology != Topology::Closed) throw Error(ErrorKind::InvalidInput, "curvature needs a closed curve");
  json report;
  PlaneCurve c;
  ComplexVec h1, h2;
  if (fields.empty()) {
    c = prepared(raw, ctx.cfg.N);
    std::tie(h1, h2) = generated_horizontal_pair(c, ctx.cfg.seed);
    report["fields"] = json{{"generated", true}, {"seed", ctx.cfg.seed}};
  } else {
    if (fields.size() != 2) throw Error(ErrorKind::InvalidInput, "curvature needs two direction files");
    c = raw;
    const LTopOperator op = build_ltop(c);
    std::tie(h1, h2) = orthonormalize_g(op.arc(), make_horizontal(op, io::read_field(fields[0])),
                                        make_horizontal(op, io::read_field(fields[1])));
    report["fields"] = json{{"generated", false}, {"files", fields}};
  }
  report["curvature"] = json::parse(io::curvature_report_to_json(curvature_report(c, h1, h2)));
  ctx.emit(report);
  return kOk;
}

// ---- integrate ----

int cmd_integrate(const Context& ctx, const std::vector<std::string>& files, const std::string& example) {
  GeodesicInitialData init;
  if (example == "fig3") {
    init = fig3_initial_data(std::max<std::size_t>(8, ctx.cfg.N / 4 * 4));
  } else if (example == "fig1") {
    init = genbifurc_initial_data(ctx.cfg.N | 1, 0.5);
  } else if (!example.empty()) {
    throw Error(ErrorKind::InvalidInput, "unknown example '" + example + "'");
  } else {
    if (files.size() != 2) throw Error(ErrorKind::InvalidInput, "integrate needs a curve and a velocity file");
    init.curve = io::read_curve(files[0]);
    init.velocity = io::read_field(files[1]);
  }
  IntegrateOptions opts;
  opts.eps_speed = ctx.cfg.eps_speed;
  const Trajectory traj = integrate_geodesic(init.curve, init.velocity, ctx.cfg.T, ctx.cfg.steps, opts);

  const fs::path dir = ctx.dir();
  io::write_text((dir / "trajectory.json").string(), io::trajectory_to_json(traj));
  io::write_text((dir / "momenta.csv").string(), io::momenta_csv(traj));
  std::vector<svg::StripFrame> strip;
  const std::size_t frames = std::max<std::size_t>(ctx.cfg.frames, 2);
  const std::size_t stride = std::max<std::size_t>(1, (traj.states.size() + frames - 2) / (frames - 1));
  for (std::size_t i = 0; i < traj.states.size(); i += stride) {
    const GeodesicState& s = traj.states[i];
    strip.push_back(svg::StripFrame{s.c.points, s.c.topology == Topology::Closed, false, label("t", s.t)});
  }
  if (traj.bad_set_reached && !traj.states.empty()) {
    const GeodesicState& s = traj.states.back();
    strip.push_back(svg::StripFrame{s.c.points, s.c.topology == Topology::Closed, true, label("t", s.t)});
  }
  io::write_text((dir / "trajectory.svg").string(), svg::strip(strip));

  json report{{"steps_taken", traj.states.empty() ? 0 : traj.states.size() - 1},
              {"bad_set_reached", traj.bad_set_reached},
              {"out_dir", dir.string()}};
  if (!traj.states.empty()) {
    const GeodesicState &a = traj.states.front(), &b = traj.states.back();
    report["energy"] = {io::round12(a.energy), io::round12(b.energy)};
    report["angular"] = {io::round12(a.angular), io::round12(b.angular)};
    report["scaling"] = {io::round12(a.scaling), io::round12(b.scaling)};
  }
  if (traj.bad_set_reached) {
    report["bad_set_time"] = io::round12(traj.bad_set_time);
    report["reason"] = traj.reason;
  }
  ctx.emit(report);
  if (traj.bad_set_reached) {
    ctx.err << "bad set reached at t=" << io::format_number(traj.bad_set_time) << ": " << traj.reason << "\n";
    return kBadSet;
  }
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::CircleSingular:
      return kSingular;
    case ErrorKind::BadSetReached:
      return kBadSet;
    default:
      return kFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    for (std::size_t i = 1; i + 1 < args.size(); ++i)
      if (args[i] == "--config") load_config(args[i + 1], cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }

  CLI::App app{"Shape distances, geodesics and curvature for plane curves"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_file;
  app.add_option("--config", config_file, "RunConfig JSON file");
  app.add_option("-o,--out", cfg.out, "Report file (stdout when omitted)");
  app.add_option("--out-dir", cfg.out_dir, "Directory for frames, SVG strips and trajectories");
  app.add_option("-N,--resample", cfg.N, "Resample count")->check(CLI::Range(8, 1 << 16));
  app.add_option("--segments", cfg.segments, "DP segments per curve")->check(CLI::Range(3, 1 << 14));
  app.add_option("--n-offsets", cfg.n_offsets, "Closed matching offsets");
  app.add_option("--n-rot", cfg.n_rot, "Rotation samples")->check(CLI::Range(1, 1 << 12));
  app.add_option("--window", cfg.window_closed, "DP move window for closed matching")->check(CLI::Range(1, 16));
  app.add_option("--window-open", cfg.window_open, "DP move window for open matching")->check(CLI::Range(1, 16));
  app.add_option("--frames", cfg.frames, "Path samples")->check(CLI::Range(2, 4096));
  app.add_option("--eps-speed", cfg.eps_speed, "Immersion threshold");
  app.add_option("--eps-z", cfg.eps_z, "Zero-set threshold on e^2 + f^2");
  app.add_option("--seed", cfg.seed, "Seed for generated fields");
  app.add_option("--threads", cfg.threads, "Worker threads (0 reads SHAPEGEO_THREADS)");

  std::string input;
  auto* lift = app.add_subcommand("lift", "Square-root lift of a curve with its zero-set report");
  lift->add_option("curve", input, "Curve file")->required();

  std::vector<std::string> files;
  bool mod_rot = false, elastic = false, closed = false;
  auto* dist = app.add_subcommand("dist", "Distances between two curves");
  dist->add_option("curves", files, "Two curve files")->required()->expected(2);
  dist->add_flag("--mod-rot", mod_rot, "Quotient by rotations in the elastic search");
  dist->add_flag("--elastic", elastic, "Elastic matching with lower and upper bounds");
  dist->add_flag("--closed", closed, "Require closed curves");

  std::string example;
  auto* geo = app.add_subcommand("geodesic", "Great-circle and Neretin paths, or a figure example");
  geo->add_option("curves", files, "Two curve files");
  geo->add_option("--example", example, "fig1 or fig3")->check(CLI::IsMember({"fig1", "fig3"}));

  auto* curv = app.add_subcommand("curvature", "Sectional curvature report");
  curv->add_option("curve", input, "Closed curve file")->required();
  curv->add_option("fields", files, "Two tangent field files (generated when omitted)");

  auto* integ = app.add_subcommand("integrate", "Integrate the geodesic equation");
  integ->add_option("files", files, "Curve file and velocity file");
  integ->add_option("--T", cfg.T, "Final time");
  integ->add_option("--steps", cfg.steps, "RK4 steps")->check(CLI::Range(1, 1000000));
  integ->add_option("--example", example, "fig1 or fig3")->check(CLI::IsMember({"fig1", "fig3"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const Context ctx{cfg, out, err};
  try {
    if (*lift) return cmd_lift(ctx, input);
    if (*dist) return cmd_dist(ctx, files[0], files[1], mod_rot, elastic, closed);
    if (*geo) return cmd_geodesic(ctx, files, example);
    if (*curv) return cmd_curvature(ctx, input, files);
    if (*integ) return cmd_integrate(ctx, files, example);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace shapegeo::cli
