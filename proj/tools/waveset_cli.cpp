// waveset: exact verification and construction of wavelet sets and
// translation/dilation tilings of the real line.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "waveset/json_io.hpp"
#include "waveset/measure_match.hpp"
#include "waveset/waveset.hpp"

namespace {

using waveset::Json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string input_file;
  std::string example;
  std::string report = "text";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
  if (with_input) {
    cmd->add_option("--input", opts.input_file, "JSON input file");
    cmd->add_option("--example", opts.example, "built-in fixture name");
  }
  cmd->add_option("--report", opts.report, "report format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw waveset::ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Json::parse(buf.str(), nullptr, true);
}

waveset::IntervalSet load_set(const CommonOpts& opts) {
  if (!opts.example.empty()) {
    auto fx = waveset::fixtures::load(opts.example);
    if (auto* s = std::get_if<waveset::IntervalSet>(&fx)) return *s;
    throw waveset::ParseError("fixture " + opts.example +
                              " is not an interval set");
  }
  if (opts.input_file.empty())
    throw waveset::ParseError("need --input or --example");
  return waveset::interval_set_from_json(load_json_file(opts.input_file));
}

waveset::StepFunction load_function(const CommonOpts& opts) {
  if (!opts.example.empty()) {
    auto fx = waveset::fixtures::load(opts.example);
    if (auto* f = std::get_if<waveset::StepFunction>(&fx)) return *f;
    if (auto* s = std::get_if<waveset::IntervalSet>(&fx))
      return waveset::StepFunction::indicator(*s);
    throw waveset::ParseError("fixture " + opts.example +
                              " is not a function");
  }
  if (opts.input_file.empty())
    throw waveset::ParseError("need --input or --example");
  return waveset::step_function_from_json(load_json_file(opts.input_file));
}

waveset::ComplexProfile load_profile(const CommonOpts& opts) {
  if (!opts.example.empty()) {
    auto fx = waveset::fixtures::load(opts.example);
    if (auto* s = std::get_if<waveset::IntervalSet>(&fx))
      return waveset::ComplexProfile::indicator(*s);
    throw waveset::ParseError("fixture " + opts.example +
                              " is not usable as a profile");
  }
  if (opts.input_file.empty())
    throw waveset::ParseError("need --input or --example");
  return waveset::profile_from_json(load_json_file(opts.input_file));
}

std::vector<waveset::Rational> load_points(const CommonOpts& opts) {
  if (!opts.example.empty()) {
    auto fx = waveset::fixtures::load(opts.example);
    if (auto* p = std::get_if<std::vector<waveset::Rational>>(&fx)) return *p;
    throw waveset::ParseError("fixture " + opts.example +
                              " is not a point list");
  }
  if (opts.input_file.empty())
    throw waveset::ParseError("need --input or --example");
  return waveset::points_from_json(load_json_file(opts.input_file));
}

void emit(const CommonOpts& opts, const Json& report,
          const std::string& text) {
  if (opts.report == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

std::string describe(const waveset::TilingReport& rep) {
  std::string s = std::string(rep.action == waveset::TilingAction::Translation
                                  ? "translation"
                                  : "dilation") +
                  ": " + to_string(rep.verdict);
  for (const auto& w : rep.witnesses)
    s += "\n    multiplicity " + w.value.to_string() + " on (" +
         w.lo.to_string() + ", " + w.hi.to_string() + "]";
  return s + "\n";
}

// ---- command handlers ------------------------------------------------------

int run_verify_set(const CommonOpts& opts) {
  waveset::IntervalSet e = load_set(opts);
  waveset::WaveletSetReport rep = waveset::is_wavelet_set(e);
  Json j;
  j["input"] = to_json(e);
  j["lebesgue"] = e.lebesgue().to_string();
  j["nu"] = to_json(waveset::nu(e));
  j["result"] = to_json(rep);
  std::string text = std::string("wavelet set: ") +
                     (rep.is_wavelet_set ? "yes" : "no") + "\n";
  text += "  lebesgue = " + e.lebesgue().to_string() +
          ", nu = " + waveset::nu(e).to_string() + "\n";
  if (rep.translation) text += "  " + describe(*rep.translation);
  if (rep.dilation) text += "  " + describe(*rep.dilation);
  if (!rep.diagnostic.empty()) text += "  " + rep.diagnostic + "\n";
  emit(opts, j, text);
  return rep.is_wavelet_set ? kExitHolds : kExitFails;
}

int run_verify_function(const CommonOpts& opts) {
  waveset::StepFunction f = load_function(opts);
  waveset::StepFunction tmult = periodize_translation(f);
  bool t_ok = tmult.equals_on(waveset::Rational(1), waveset::unit_window());
  bool d_ok = false;
  std::string d_note;
  try {
    waveset::StepFunction dmult = periodize_dilation(f);
    d_ok = dmult.equals_on(waveset::Rational(1),
                           waveset::fundamental_domain());
  } catch (const waveset::ContainsOrigin& e) {
    d_note = e.what();
  }
  Json j;
  j["input"] = to_json(f);
  j["tiles_by_translations"] = t_ok;
  j["tiles_by_dilations"] = d_ok;
  j["integral_dm"] = f.integral_dm().to_string();
  j["integral_dnu"] = to_json(f.integral_dnu());
  if (!d_note.empty()) j["note"] = d_note;
  std::string text =
      std::string("tiles by translations: ") + (t_ok ? "yes" : "no") +
      "\ntiles by dilations: " + (d_ok ? "yes" : "no") + "\n" +
      "integral dm = " + f.integral_dm().to_string() +
      ", integral dnu = " + f.integral_dnu().to_string() + "\n";
  if (!d_note.empty()) text += d_note + "\n";
  emit(opts, j, text);
  return (t_ok && d_ok) ? kExitHolds : kExitFails;
}

int run_certify(const CommonOpts& opts, long window) {
  waveset::ComplexProfile psi = load_profile(opts);
  waveset::CertificationReport rep = waveset::certify_wavelet(psi, window);
  Json j = to_json(rep);
  std::string text = std::string("verdict: ") +
                     (rep.wavelet ? "wavelet" : "not-wavelet") + "\n";
  auto line = [&](const waveset::EquationReport& r) {
    text += "  eq" + std::to_string(r.equation) + ": " + to_string(r.status);
    if (r.shift_q) text += " (q = " + std::to_string(*r.shift_q) + ")";
    text += "\n";
    for (const auto& w : r.witnesses)
      text += "    residual " + w.residual.to_string() + " on (" +
              w.lo.to_string() + ", " + w.hi.to_string() + "]" +
              (w.level ? " at j = " + std::to_string(w.level) : "") + "\n";
  };
  line(rep.eq1);
  line(rep.eq2);
  line(rep.eq4);
  for (const auto& r : rep.eq3) line(r);
  emit(opts, j, text);
  return rep.wavelet ? kExitHolds : kExitFails;
}

int run_geom_check(const CommonOpts& opts, long window) {
  waveset::IntervalSet e = load_set(opts);
  waveset::GeomReport rep = waveset::geom_support_check(e, window);
  Json j = to_json(rep);
  std::string text;
  if (rep.ok) {
    text = "no violations found (window " + std::to_string(window) + ")\n";
  } else {
    text = "necessary condition violated (within window):\n";
    for (const auto& v : rep.violations)
      text += "  condition " + std::to_string(v.condition) +
              (v.condition == 1 ? ", k = " : ", j = ") +
              std::to_string(v.parameter) + " on " + v.cells.to_string() +
              "\n";
  }
  emit(opts, j, text);
  return rep.ok ? kExitHolds : kExitFails;
}

int run_extract(const CommonOpts& opts, const std::string& action) {
  waveset::IntervalSet e = load_set(opts);
  try {
    waveset::IntervalSet g =
        action == "trans" ? waveset::greedy_translation_subset(e)
                          : waveset::greedy_dilation_subset(e);
    waveset::TilingReport check = waveset::tiling_verdict(
        g, action == "trans" ? waveset::TilingAction::Translation
                             : waveset::TilingAction::Dilation);
    Json j;
    j["input"] = to_json(e);
    j["subset"] = to_json(g);
    j["verdict"] = to_string(check.verdict);
    emit(opts, j,
         "extracted subset: " + g.to_string() + "\nverdict: " +
             to_string(check.verdict) + "\n");
    return check.tiles() ? kExitHolds : kExitFails;
  } catch (const waveset::Undercovered& err) {
    Json j;
    j["error"] = "Undercovered";
    j["witness"] = err.what();
    emit(opts, j, std::string("undercovered: ") + err.what() + "\n");
    return kExitFails;
  }
}

int run_speegle(const CommonOpts& opts) {
  auto xs = load_points(opts);
  waveset::SpeegleResult res = waveset::check_speegle_conditions(xs);
  Json j;
  Json pts = Json::array();
  for (const auto& x : xs) pts.push_back(x.to_string());
  j["points"] = pts;
  j["ok"] = res.ok;
  if (res.ok)
    j["delta"] = res.delta.to_string();
  else
    j["reason"] = res.reason;
  std::string text = res.ok ? "conditions hold; certified delta = " +
                                  res.delta.to_string() + "\n"
                            : "conditions fail: " + res.reason + "\n";
  emit(opts, j, text);
  return res.ok ? kExitHolds : kExitFails;
}

int run_build_uv(const CommonOpts& opts, const std::string& eps_arg) {
  auto xs = load_points(opts);
  std::vector<waveset::Rational> eps;
  {
    std::stringstream ss(eps_arg);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) eps.push_back(waveset::Rational::parse(item));
  }
  if (eps.size() == 1) eps.assign(xs.size(), eps.front());
  waveset::UVConstruction uv = waveset::build_U_V(xs, eps);
  waveset::IpConditionReport ip =
      waveset::check_ip_conditions(uv.f, uv.u, uv.v);
  Json j;
  j["f"] = to_json(uv.f);
  j["u"] = to_json(uv.u);
  j["v"] = to_json(uv.v);
  j["delta"] = uv.delta.to_string();
  j["dilation_exponent"] = uv.dilation_exponent;
  j["translation_shift"] = uv.translation_shift;
  j["conditions"] = Json{{"f_packs_translations", ip.f_packs_translations},
                         {"f_packs_dilations", ip.f_packs_dilations},
                         {"u_valid", ip.u_valid},
                         {"v_valid", ip.v_valid}};
  std::string text = "F = " + uv.f.to_string() + "\nU = " + uv.u.to_string() +
                     "\nV = " + uv.v.to_string() +
                     "\nJ = " + std::to_string(uv.dilation_exponent) +
                     ", k = " + std::to_string(uv.translation_shift) +
                     ", delta = " + uv.delta.to_string() + "\n" +
                     (ip.all() ? "all four conditions verified\n"
                               : "conditions FAILED: " + ip.detail + "\n");
  emit(opts, j, text);
  return ip.all() ? kExitHolds : kExitFails;
}

int run_ip_check(const CommonOpts& opts) {
  if (opts.input_file.empty())
    throw waveset::ParseError("ip-check needs --input with f, u, v");
  Json in = load_json_file(opts.input_file);
  waveset::IntervalSet f = waveset::interval_set_from_json(in.at("f"));
  waveset::IntervalSet u = waveset::interval_set_from_json(in.at("u"));
  waveset::IntervalSet v = waveset::interval_set_from_json(in.at("v"));
  waveset::IpConditionReport ip = waveset::check_ip_conditions(f, u, v);
  Json j{{"f_packs_translations", ip.f_packs_translations},
         {"f_packs_dilations", ip.f_packs_dilations},
         {"u_valid", ip.u_valid},
         {"v_valid", ip.v_valid}};
  if (!ip.detail.empty()) j["detail"] = ip.detail;
  std::string text =
      std::string("F packs by translations: ") +
      (ip.f_packs_translations ? "yes" : "no") +
      "\nF packs by dilations: " + (ip.f_packs_dilations ? "yes" : "no") +
      "\nU valid (contains F, packs tt, tiles dt): " +
      (ip.u_valid ? "yes" : "no") +
      "\nV valid (contains F, packs dt, tiles tt): " +
      (ip.v_valid ? "yes" : "no") + "\n";
  emit(opts, j, text);
  return ip.all() ? kExitHolds : kExitFails;
}

int run_diagonal(const CommonOpts& opts) {
  if (opts.input_file.empty())
    throw waveset::ParseError("diagonal needs --input with a matrix");
  waveset::Matrix m = waveset::matrix_from_json(load_json_file(opts.input_file));
  waveset::StochasticCheck ds = waveset::is_doubly_stochastic(m);
  auto diag = waveset::positive_diagonal(m);
  Json j;
  j["doubly_stochastic"] = ds.ok;
  if (!ds.ok)
    j["witness"] = Json{{"line", ds.row ? "row" : "column"},
                        {"index", ds.index},
                        {"sum", ds.sum.to_string()}};
  if (diag) j["diagonal"] = to_json(*diag);
  if (m.size() <= 8) {
    Json all = Json::array();
    for (const auto& d : waveset::brute_force_diagonals(m))
      all.push_back(to_json(d));
    j["all_positive_diagonals"] = all;
  }
  std::string text = std::string("doubly stochastic: ") +
                     (ds.ok ? "yes" : "no") + "\n";
  if (!ds.ok)
    text += std::string("  ") + (ds.row ? "row " : "column ") +
            std::to_string(ds.index) + " sums to " + ds.sum.to_string() + "\n";
  if (diag) {
    text += "positive diagonal:";
    for (auto c : diag->sigma) text += " " + std::to_string(c);
    text += "\n";
  } else {
    text += "no positive diagonal\n";
  }
  emit(opts, j, text);
  return diag ? kExitHolds : kExitFails;
}

int run_dar_select(const CommonOpts& opts, bool refine,
                   const std::vector<long>& refine_kj) {
  waveset::StepFunction f = load_function(opts);
  std::vector<waveset::Cell> cells =
      refine ? waveset::refine_breakpoints(f, refine_kj[0], refine_kj[1])
             : f.cells();
  try {
    waveset::DarSelection sel = waveset::dar_select(cells);
    Json j;
    j["matrix"] = to_json(sel.matrix);
    j["diagonal"] = to_json(sel.diagonal);
    j["selected_set"] = to_json(sel.g);
    j["tau_multiplicity_one"] = sel.tau_multiplicity_one;
    j["d_multiplicity_one"] = sel.d_multiplicity_one;
    j["wavelet_check"] = to_json(sel.wavelet_check);
    std::string text = "selected set G = " + sel.g.to_string() + "\n";
    text += "matrix is doubly stochastic; diagonal:";
    for (auto c : sel.diagonal.sigma) text += " " + std::to_string(c);
    text += "\nrelative multiplicities: tau = 1: yes, d = 1: yes\n";
    text += std::string("G is a wavelet set: ") +
            (sel.wavelet_check.is_wavelet_set ? "yes" : "no") + "\n";
    emit(opts, j, text);
    return kExitHolds;
  } catch (const waveset::PartialCongruence& e) {
    Json j{{"error", "PartialCongruence"}, {"message", e.what()}};
    emit(opts, j,
         std::string(e.what()) + "\n(hint: rerun with --refine K J)\n");
    return kExitFails;
  } catch (const waveset::RaggedComplex& e) {
    Json j{{"error", "RaggedComplex"}, {"message", e.what()}};
    emit(opts, j, std::string(e.what()) + "\n");
    return kExitFails;
  } catch (const waveset::NotDoublyStochastic& e) {
    Json j{{"error", "NotDoublyStochastic"}, {"message", e.what()}};
    emit(opts, j, std::string(e.what()) + "\n");
    return kExitFails;
  }
}

int run_orbit(const CommonOpts& opts, const std::string& xi_str, long window) {
  waveset::StepFunction f = load_function(opts);
  waveset::Quad xi = waveset::quad_from_string(xi_str);
  waveset::OrbitReport rep = waveset::orbit_explore(f, xi, window);
  Json j;
  j["xi"] = to_json(xi);
  j["window"] = window;
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back(Json{{"d", to_json(r.d_value)},
                        {"q", r.q.to_string()},
                        {"complete", r.complete},
                        {"sum", r.sum.to_string()}});
  Json cols = Json::array();
  for (const auto& c : rep.columns)
    cols.push_back(Json{{"tau", to_json(c.t_value)},
                        {"j", c.j},
                        {"sum", c.sum.to_string()}});
  j["rows"] = rows;
  j["columns"] = cols;
  j["entries"] = to_json(rep.entries);
  j["pairing_unique"] = rep.pairing_unique;
  j["complete_sums_are_one"] = rep.complete_sums_are_one;
  if (rep.block_diagonal) {
    j["block_rows"] = rep.block_rows;
    j["block_columns"] = rep.block_columns;
    j["block_diagonal"] = to_json(*rep.block_diagonal);
  }
  std::size_t complete = 0;
  for (const auto& r : rep.rows)
    if (r.complete) ++complete;
  std::string text =
      "orbit matrix: " + std::to_string(rep.rows.size()) + " rows (" +
      std::to_string(complete) + " complete), " +
      std::to_string(rep.columns.size()) + " columns\n";
  text += std::string("pairing uniqueness: ") +
          (rep.pairing_unique ? "holds" : "VIOLATED") + "\n";
  text += std::string("complete line sums are exactly 1: ") +
          (rep.complete_sums_are_one ? "yes" : "no") + "\n";
  if (rep.block_diagonal) {
    text += "positive diagonal on the complete " +
            std::to_string(rep.block_rows.size()) + "x" +
            std::to_string(rep.block_columns.size()) + " sub-block:";
    for (auto c : rep.block_diagonal->sigma) text += " " + std::to_string(c);
    text += "\n";
  }
  emit(opts, j, text);
  bool ok = rep.pairing_unique && rep.complete_sums_are_one;
  return ok ? kExitHolds : kExitFails;
}

int run_measure_match(const CommonOpts& opts, const std::string& tol_str) {
  waveset::StepFunction f = load_function(opts);
  waveset::Rational tol = waveset::Rational::parse(tol_str);
  waveset::MeasureMatchResult res = waveset::find_set_with_measures(f, tol);
  Json j;
  j["c1"] = res.c1.to_string();
  j["c2"] = to_json(res.c2);
  j["set"] = to_json(res.set);
  j["achieved_m"] = res.achieved_m.to_string();
  j["achieved_nu"] = to_json(res.achieved_nu);
  Json trace = Json::array();
  for (const auto& s : res.trace.steps)
    trace.push_back(Json{{"t", s.t.to_string()},
                         {"nu", s.nu_value.to_string()},
                         {"bisection", s.from_bisection}});
  j["bracket_trace"] = trace;
  std::string text = "c1 = " + res.c1.to_string() +
                     ", c2 = " + res.c2.to_string() + "\n";
  text += "W = " + res.set.to_string() + "\n";
  text += "m(W) = " + res.achieved_m.to_string() +
          " (exact), nu(W) = " + res.achieved_nu.to_string() + "\n";
  text += "trace: " + std::to_string(res.trace.steps.size()) + " steps\n";
  emit(opts, j, text);
  return kExitHolds;
}

int run_dimension(const CommonOpts& opts, long window) {
  waveset::ComplexProfile psi = load_profile(opts);
  waveset::DimensionFunction dim =
      waveset::compute_dimension_function(psi, window);
  Json j;
  j["domain"] = to_json(dim.domain);
  j["values"] = to_json(dim.values);
  j["complete"] = dim.complete;
  j["max_value"] = dim.values.max_value().to_string();
  std::string text =
      "dimension function on " + dim.domain.to_string() + ":\n";
  for (const auto& c : dim.values.cells())
    text += "  " + c.to_string() + "\n";
  text += std::string("complete: ") + (dim.complete ? "yes" : "no") + "\n";
  emit(opts, j, text);
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "waveset: exact arithmetic for wavelet sets and dyadic tilings"};
  app.require_subcommand(1);

  CommonOpts o_verify, o_vfun, o_cert, o_geom, o_extract, o_speegle, o_uv,
      o_ip, o_diag, o_dar, o_orbit, o_mm, o_dim;
  long cert_window = 20, geom_window = 20, orbit_window = 4, dim_window = 20;
  std::string extract_action, eps_arg = "1/1000", orbit_xi,
                              mm_tol = "1e-9";
  std::vector<long> refine_kj{8, 8};
  bool do_refine = false;

  auto* c_verify = app.add_subcommand("verify-set",
                                      "decide whether a set is a wavelet set");
  add_common(c_verify, o_verify);

  auto* c_vfun = app.add_subcommand(
      "verify-function", "check that a step function tiles both ways");
  add_common(c_vfun, o_vfun);

  auto* c_cert = app.add_subcommand(
      "certify-wavelet", "certify a complex frequency profile as a wavelet");
  add_common(c_cert, o_cert);
  c_cert->add_option("--window", cert_window, "eq3 window J (default 20)");

  auto* c_geom = app.add_subcommand(
      "geom-check", "scan the support geometry necessary conditions");
  add_common(c_geom, o_geom);
  c_geom->add_option("--window", geom_window, "search window J (default 20)");

  auto* c_extract = app.add_subcommand(
      "extract", "greedy extraction of a tiling subset");
  add_common(c_extract, o_extract);
  c_extract
      ->add_option("--action", extract_action, "trans or dil")
      ->required()
      ->check(CLI::IsMember({"trans", "dil"}));

  auto* c_speegle = app.add_subcommand(
      "speegle-check", "check the point-set conditions and certify delta");
  add_common(c_speegle, o_speegle);

  auto* c_uv = app.add_subcommand(
      "build-uv", "build the F, U, V triple from a point set");
  add_common(c_uv, o_uv);
  c_uv->add_option("--eps", eps_arg,
                   "ball radius (single rational or comma list)");

  auto* c_ip = app.add_subcommand(
      "ip-check", "check the four containment conditions for F, U, V");
  add_common(c_ip, o_ip);

  auto* c_diag = app.add_subcommand(
      "diagonal", "doubly stochastic check and positive diagonal");
  add_common(c_diag, o_diag);

  auto* c_dar = app.add_subcommand(
      "dar-select", "cell-matrix selection of a tiling subset");
  add_common(c_dar, o_dar);
  c_dar->add_option("--refine", refine_kj,
                    "refine breakpoints with K J before building")
      ->expected(2);

  auto* c_orbit = app.add_subcommand(
      "orbit", "exact orbit matrix around an irrational point");
  add_common(c_orbit, o_orbit);
  c_orbit->add_option("--xi", orbit_xi, "point, e.g. \"1/2√2\"")
      ->required();
  c_orbit->add_option("--window", orbit_window, "j window (default 4)");

  auto* c_mm = app.add_subcommand(
      "measure-match", "build a subset with prescribed m and nu");
  add_common(c_mm, o_mm);
  c_mm->add_option("--tol", mm_tol, "nu tolerance (default 1e-9)");

  auto* c_dim = app.add_subcommand(
      "dimension", "evaluate the wavelet dimension function");
  add_common(c_dim, o_dim);
  c_dim->add_option("--window", dim_window, "window J (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help output, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  do_refine = c_dar->count("--refine") > 0;

  try {
    if (c_verify->parsed()) return run_verify_set(o_verify);
    if (c_vfun->parsed()) return run_verify_function(o_vfun);
    if (c_cert->parsed()) return run_certify(o_cert, cert_window);
    if (c_geom->parsed()) return run_geom_check(o_geom, geom_window);
    if (c_extract->parsed()) return run_extract(o_extract, extract_action);
    if (c_speegle->parsed()) return run_speegle(o_speegle);
    if (c_uv->parsed()) return run_build_uv(o_uv, eps_arg);
    if (c_ip->parsed()) return run_ip_check(o_ip);
    if (c_diag->parsed()) return run_diagonal(o_diag);
    if (c_dar->parsed()) return run_dar_select(o_dar, do_refine, refine_kj);
    if (c_orbit->parsed()) return run_orbit(o_orbit, orbit_xi, orbit_window);
    if (c_mm->parsed()) return run_measure_match(o_mm, mm_tol);
    if (c_dim->parsed()) return run_dimension(o_dim, dim_window);
  } catch (const waveset::TargetOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFails;
  } catch (const waveset::Undercovered& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFails;
  } catch (const Json::parse_error& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const waveset::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
