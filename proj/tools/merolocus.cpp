// merolocus: command-line front end for evaluation, angle fans, locus tracing,
// oracle scans and the acceptance suite.
//
// Exit status: 0 success, 1 verification failure, 2 invalid input,
// 3 numeric failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "merolocus/merolocus.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace merolocus;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CorrectorDivergence:
    case ErrorCode::OutOfValidityRegion:
    case ErrorCode::UnwrapAliasing:
      return kExitNumeric;
    default:
      return kExitInvalid;
  }
}

using Function = std::variant<FactoredFunction, BlackBoxFunction>;

struct Source {
  std::string id;
  Function function;
  std::optional<MeromorphicSpec> spec;  // present for factored sources
};

Source load_source(const std::string& id) {
  if (is_named_rational(id)) {
    MeromorphicSpec spec = named_rational(id);
    return {id, FactoredFunction(spec), spec};
  }
  if (is_builtin(id)) return {id, as_black_box(id), std::nullopt};
  MeromorphicSpec spec = load_spec(id);
  return {id, FactoredFunction(spec), spec};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidSpec, "cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

json point_json(ComplexPoint s) { return json::array({s.real(), s.imag()}); }

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string_view kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::Regular: return "Regular";
    case ValueKind::Zero: return "Zero";
    case ValueKind::Pole: return "Pole";
  }
  return "?";
}

struct Options {
  std::string source = "single_pole";
  std::string out_dir = ".";
  std::uint64_t seed = kDefaultSeed;
  TraceConfig trace;
  double tol = kDefaultPhaseTolerance;
};

void add_trace_options(CLI::App* app, Options& o) {
  auto flag = [&](const char* name, double& value, const char* env, const char* help) {
    app->add_option(name, value, help)->envname(env)->capture_default_str();
  };
  flag("--launch-radius", o.trace.launch_radius, "MEROLOCUS_LAUNCH_RADIUS", "Initial offset from the anchor");
  flag("--step-init", o.trace.step_init, "MEROLOCUS_STEP_INIT", "Initial predictor step");
  flag("--step-min", o.trace.step_min, "MEROLOCUS_STEP_MIN", "Smallest predictor step");
  flag("--step-max", o.trace.step_max, "MEROLOCUS_STEP_MAX", "Largest predictor step");
  flag("--corrector-tol", o.trace.corrector_tol, "MEROLOCUS_CORRECTOR_TOL", "Newton corrector tolerance (rad)");
  flag("--capture-radius", o.trace.capture_radius, "MEROLOCUS_CAPTURE_RADIUS", "Zero capture radius");
  flag("--escape-radius", o.trace.escape_radius, "MEROLOCUS_ESCAPE_RADIUS", "Exit-to-infinity radius");
  flag("--saddle-threshold", o.trace.saddle_threshold, "MEROLOCUS_SADDLE_THRESHOLD",
       "Saddle threshold on |W'/W| times local scale");
  app->add_option("--max-points", o.trace.max_points, "Point budget per curve")
      ->envname("MEROLOCUS_MAX_POINTS")
      ->capture_default_str();
}

std::vector<PhaseTarget> degrees_from_pi(const std::vector<double>& in_pi) {
  std::vector<PhaseTarget> out;
  for (double d : in_pi) out.push_back(PhaseTarget::from_degree(d * kPi));
  return out;
}

// ---------------------------------------------------------------- eval / gain

int run_eval(const Options& o, ComplexPoint s, bool gain_only) {
  const Source src = load_source(o.source);
  const FunctionValue v = std::visit([&](const auto& f) { return f.evaluate(s); }, src.function);
  json report;
  report["spec"] = src.id;
  report["s"] = point_json(s);
  report["kind"] = kind_name(v.kind);
  report["K"] = number_or_string(gain_from(v).k);
  if (!gain_only) {
    report["log_magnitude"] = number_or_string(v.log_magnitude);
    if (v.regular()) {
      report["phase"] = v.phase;
      report["value"] = point_json(v.value());
    }
  }
  const fs::path path = fs::path(o.out_dir) / (gain_only ? "gain.json" : "eval.json");
  write_json(path, report);
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- angles / fan

double raw_angle(const Source& src, AnchorRef ref, const PhaseTarget& d) {
  if (src.spec) {
    return ref.kind == AnchorKind::Pole ? departure_angle(*src.spec, ref.index, d).raw
                                        : arrival_angle(*src.spec, ref.index, d).raw;
  }
  return std::get<BlackBoxFunction>(src.function).anchor_angle_raw(ref, d);
}

int run_angles(const Options& o, AnchorRef ref, const std::vector<PhaseTarget>& degrees, const char* file) {
  if (degrees.empty()) throw Error(ErrorCode::EmptyInput, "no degrees given");
  const Source src = load_source(o.source);
  AngleFan fan{ref.index, ref.kind == AnchorKind::Pole ? AngleKind::Departure : AngleKind::Arrival, {}};
  for (const PhaseTarget& d : degrees) {
    const double raw = raw_angle(src, ref, d);
    fan.entries.push_back({d, {normalize_2pi(raw), raw, fan.kind, ref.index, d}});
  }
  std::stable_sort(fan.entries.begin(), fan.entries.end(),
                   [](const FanEntry& a, const FanEntry& b) { return a.degree.degree() < b.degree.degree(); });
  const std::string csv = fan_csv(fan);
  write_file(fs::path(o.out_dir) / file, csv);
  std::cout << csv;
  return kExitOk;
}

double anchor_exponent(const Source& src, AnchorRef ref) {
  const auto anchors = std::visit(
      [&](const auto& f) { return ref.kind == AnchorKind::Pole ? f.poles() : f.zeros(); }, src.function);
  if (ref.index >= anchors.size()) {
    throw Error(ErrorCode::InvalidIndex, "anchor index " + std::to_string(ref.index) + " out of range");
  }
  return anchors[ref.index].exponent;
}

// ---------------------------------------------------------------- trace

json curve_summary(const LocusCurve& c, const CurveReport& rep, const std::string& file) {
  json j;
  j["file"] = file;
  j["degree_pi"] = c.degree.degree() / kPi;
  j["origin"] = to_string(c.origin.kind);
  if (c.origin.kind == OriginKind::Pole) j["origin_index"] = c.origin.index;
  j["terminus"] = to_string(c.terminus.kind);
  if (c.terminus.kind == TerminusKind::Zero) j["terminus_index"] = c.terminus.index;
  j["points"] = c.points.size();
  j["first_point"] = point_json(c.points.front().s);
  j["last_point"] = point_json(c.points.back().s);
  j["max_abs_residual"] = rep.max_abs_residual;
  j["k_monotone"] = rep.k_monotone;
  j["start_k"] = number_or_string(rep.start_k);
  j["end_k"] = number_or_string(rep.end_k);
  if (rep.initial_direction) j["initial_direction"] = *rep.initial_direction;
  j["verified"] = rep.pass;
  if (c.saddle) {
    json s;
    s["location"] = point_json(c.saddle->location);
    s["incoming_direction"] = c.saddle->incoming_direction;
    s["outgoing_directions"] = c.saddle->outgoing_directions;
    j["saddle"] = s;
  }
  return j;
}

struct TraceRequest {
  std::optional<std::size_t> pole;
  std::optional<std::size_t> zero;
  std::vector<PhaseTarget> degrees;
  bool continue_saddles = false;
  bool plot = false;
};

int run_trace(const Options& o, const TraceRequest& req) {
  if (req.degrees.empty()) throw Error(ErrorCode::EmptyInput, "no degrees given");
  if (req.pole.has_value() == req.zero.has_value()) {
    throw Error(ErrorCode::InvalidSpec, "give exactly one of --pole or --into-zero");
  }
  o.trace.validate();
  const Source src = load_source(o.source);

  return std::visit(
      [&](const auto& f) {
        std::vector<LocusCurve> curves;
        json errors = json::array();
        int status = kExitOk;
        auto record_error = [&](std::size_t i, const Error& e) {
          errors.push_back({{"degree_pi", req.degrees[i].degree() / kPi},
                            {"code", to_string(e.code())},
                            {"message", e.what()}});
          status = std::max(status, exit_code_for(e.code()));
        };
        if (req.pole) {
          const auto results = trace_fan(f, *req.pole, std::span<const PhaseTarget>(req.degrees), o.trace);
          for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].curve) curves.push_back(*results[i].curve);
            else record_error(i, *results[i].error);
          }
        } else {
          for (std::size_t i = 0; i < req.degrees.size(); ++i) {
            try {
              curves.push_back(trace_into_zero(f, *req.zero, req.degrees[i], o.trace));
            } catch (const Error& e) {
              record_error(i, e);
            }
          }
        }
        if (req.continue_saddles) {
          const std::size_t base = curves.size();
          for (std::size_t i = 0; i < base; ++i) {
            if (!curves[i].saddle) continue;
            try {
              for (LocusCurve& b : continue_through_saddle(f, curves[i], *curves[i].saddle, o.trace)) {
                curves.push_back(std::move(b));
              }
            } catch (const Error& e) {
              errors.push_back({{"degree_pi", curves[i].degree.degree() / kPi},
                                {"code", to_string(e.code())},
                                {"message", e.what()}});
              status = std::max(status, exit_code_for(e.code()));
            }
          }
        }

        json summary;
        summary["spec"] = src.id;
        summary["curves"] = json::array();
        for (std::size_t i = 0; i < curves.size(); ++i) {
          const std::string file = "curve_" + std::to_string(i) + ".csv";
          write_file(fs::path(o.out_dir) / file, curve_csv(curves[i]));
          const CurveReport rep = verify_curve(f, curves[i], o.tol);
          summary["curves"].push_back(curve_summary(curves[i], rep, file));
          if (!rep.pass) status = std::max(status, kExitVerification);
        }
        summary["errors"] = errors;
        if (req.plot && !curves.empty()) {
          const auto poles = f.poles();
          const auto zeros = f.zeros();
          write_file(fs::path(o.out_dir) / "plot.svg", emit_plot(curves, poles, zeros));
          summary["plot"] = "plot.svg";
        }
        write_json(fs::path(o.out_dir) / "summary.json", summary);
        std::cout << summary.dump(2) << "\n";
        return status;
      },
      src.function);
}

// ---------------------------------------------------------------- scan

int run_scan(const Options& o, const std::vector<double>& window, int resolution, double degree_pi, double delta,
             bool crossings) {
  if (window.size() != 4) throw Error(ErrorCode::InvalidSpec, "--window needs sigma_min,sigma_max,t_min,t_max");
  const Source src = load_source(o.source);
  const Window w{window[0], window[1], window[2], window[3]};
  if (!(w.sigma_min < w.sigma_max) || !(w.t_min < w.t_max)) {
    throw Error(ErrorCode::InvalidSpec, "empty scan window");
  }
  const PhaseTarget target = PhaseTarget::from_degree(degree_pi * kPi);
  const auto points = std::visit(
      [&](const auto& f) { return grid_scan_oracle(f, w, resolution, target, delta, crossings); }, src.function);
  write_file(fs::path(o.out_dir) / "scan.csv", points_csv(points));
  std::cout << "scan.csv: " << points.size() << " points\n";
  return kExitOk;
}

// ---------------------------------------------------------------- verify / catalog

int run_verify(const Options& o) {
  const auto results = run_acceptance(o.seed);
  json report;
  report["seed"] = o.seed;
  report["criteria"] = json::array();
  bool all = true;
  for (const CriterionResult& r : results) {
    report["criteria"].push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << "\n";
  }
  report["pass"] = all;
  write_json(fs::path(o.out_dir) / "verify.json", report);
  return all ? kExitOk : kExitVerification;
}

json anchors_json(const std::vector<Anchor>& anchors) {
  json out = json::array();
  for (const Anchor& a : anchors) out.push_back({{"location", point_json(a.location)}, {"exponent", a.exponent}});
  return out;
}

int run_catalog(const Options& o) {
  json j;
  j["named_rationals"] = json::object();
  for (std::string_view n : kNamedRationals) j["named_rationals"][std::string(n)] = spec_to_json(named_rational(n));
  j["builtins"] = json::object();
  for (std::string_view id : kBuiltinFunctions) {
    const BlackBoxFunction f = as_black_box(id);
    json b;
    b["validity_region"] = {{"sigma_min", f.region().sigma_min},
                            {"sigma_max", f.region().sigma_max},
                            {"t_max", f.region().t_max}};
    b["zeros"] = anchors_json(f.zeros());
    b["poles"] = anchors_json(f.poles());
    j["builtins"][std::string(id)] = b;
  }
  j["zeta_zero_ordinates"] = kZetaZeroOrdinates;
  write_json(fs::path(o.out_dir) / "catalog.json", j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-degree root loci of meromorphic functions"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out-dir", o.out_dir, "Directory for output files")
      ->envname("MEROLOCUS_OUT_DIR")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for randomized checks")->envname("MEROLOCUS_SEED")->capture_default_str();
  app.add_option("--tol", o.tol, "Phase-condition tolerance (rad)")->envname("MEROLOCUS_TOL")->capture_default_str();

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", o.source, "Catalog id or path to a spec JSON file")->required();
  };

  double sigma = 0.0;
  double t = 0.0;
  auto* eval = app.add_subcommand("eval", "Evaluate W(s)");
  auto* gain = app.add_subcommand("gain", "Gain K = 1/|W(s)|");
  for (auto* sub : {eval, gain}) {
    add_spec(sub);
    sub->add_option("--sigma", sigma, "Real part of s")->required();
    sub->add_option("--t", t, "Imaginary part of s")->capture_default_str();
  }

  std::string anchor_kind = "pole";
  std::size_t anchor_index = 0;
  std::vector<double> degrees_pi;
  auto* angles = app.add_subcommand("angles", "Departure or arrival angles for given degrees");
  add_spec(angles);
  angles->add_option("--anchor", anchor_kind, "pole or zero")
      ->check(CLI::IsMember({"pole", "zero"}))
      ->capture_default_str();
  angles->add_option("--index", anchor_index, "Anchor index")->capture_default_str();
  angles->add_option("--degree", degrees_pi, "Degrees in units of pi")->delimiter(',')->required();

  int fan_count = 16;
  long fan_q = 0;
  auto* fan = app.add_subcommand("fan", "Equally spaced degrees over one full window at an anchor");
  add_spec(fan);
  fan->add_option("--anchor", anchor_kind, "pole or zero")
      ->check(CLI::IsMember({"pole", "zero"}))
      ->capture_default_str();
  fan->add_option("--index", anchor_index, "Anchor index")->capture_default_str();
  fan->add_option("--count", fan_count, "Number of degrees")->check(CLI::PositiveNumber)->capture_default_str();
  fan->add_option("--q", fan_q, "Branch index of the window start")->capture_default_str();

  TraceRequest req;
  std::size_t pole_index = 0;
  std::size_t zero_index = 0;
  auto* trace = app.add_subcommand("trace", "Trace loci from a pole (or into a zero)");
  add_spec(trace);
  auto* pole_opt = trace->add_option("--pole", pole_index, "Pole index to launch from");
  auto* zero_opt = trace->add_option("--into-zero", zero_index, "Trace backwards out of this zero");
  pole_opt->excludes(zero_opt);
  trace->add_option("--degree", degrees_pi, "Degrees in units of pi")->delimiter(',')->required();
  trace->add_flag("--continue-saddles", req.continue_saddles, "Relaunch along every saddle branch");
  trace->add_flag("--plot", req.plot, "Also write plot.svg");
  add_trace_options(trace, o);

  std::vector<double> window;
  int resolution = 200;
  double scan_degree = 1.0;
  double delta = 0.05;
  bool crossings = false;
  auto* scan = app.add_subcommand("scan", "Brute-force grid oracle for one degree");
  add_spec(scan);
  scan->add_option("--window", window, "sigma_min,sigma_max,t_min,t_max")->delimiter(',')->expected(4)->required();
  scan->add_option("--resolution", resolution, "Grid points per side")->capture_default_str();
  scan->add_option("--degree", scan_degree, "Degree in units of pi")->capture_default_str();
  scan->add_option("--delta", delta, "Residual threshold (rad)")->envname("MEROLOCUS_DELTA")->capture_default_str();
  scan->add_flag("--crossings", crossings, "Keep only points where the residual changes sign");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite over the catalog");
  auto* catalog = app.add_subcommand("catalog", "List built-in functions, named examples and zero tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    fs::create_directories(o.out_dir);
    const AnchorRef ref{anchor_kind == "pole" ? AnchorKind::Pole : AnchorKind::Zero, anchor_index};
    if (eval->parsed()) return run_eval(o, {sigma, t}, false);
    if (gain->parsed()) return run_eval(o, {sigma, t}, true);
    if (angles->parsed()) return run_angles(o, ref, degrees_from_pi(degrees_pi), "angles.csv");
    if (fan->parsed()) {
      const double e = anchor_exponent(load_source(o.source), ref);
      std::vector<PhaseTarget> ds;
      for (int j = 0; j < fan_count; ++j) {
        ds.push_back(PhaseTarget::from_degree(kTwoPi * static_cast<double>(fan_q) + 2.0 * e * kPi * j / fan_count));
      }
      return run_angles(o, ref, ds, "fan.csv");
    }
    if (trace->parsed()) {
      if (pole_opt->count() > 0) req.pole = pole_index;
      if (zero_opt->count() > 0) req.zero = zero_index;
      if (!req.pole && !req.zero) req.pole = 0;
      req.degrees = degrees_from_pi(degrees_pi);
      return run_trace(o, req);
    }
    if (scan->parsed()) return run_scan(o, window, resolution, scan_degree, delta, crossings);
    if (verify->parsed()) return run_verify(o);
    if (catalog->parsed()) return run_catalog(o);
  } catch (const Error& e) {
    std::cerr << "merolocus: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "merolocus: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
