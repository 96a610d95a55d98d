#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/extraction.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/matching.hpp"
#include "waveset/measure.hpp"
#include "waveset/profile.hpp"
#include "waveset/quadratic.hpp"
#include "waveset/step_function.hpp"
#include "waveset/tiling.hpp"

namespace waveset {

// Insertion-ordered JSON so that identical inputs produce byte-identical
// reports.
using Json = nlohmann::ordered_json;

// ---- serialization --------------------------------------------------------

inline Json to_json(const Rational& r) { return r.to_string(); }

inline Json to_json(const Quad& x) {
  return Json{{"a", x.rational_part().to_string()},
              {"b", x.sqrt2_part().to_string()}};
}

inline Json to_json(const NuValue& v) {
  Json j;
  if (v.is_infinite()) {
    j["kind"] = "infinite";
  } else if (v.is_exact()) {
    j["kind"] = "exact";
    j["value"] = v.exact_value().to_string();
  } else {
    j["kind"] = "approx";
    j["value"] = v.approx().to_string();
    j["error_bound"] = "1e-39";
  }
  return j;
}

inline Json to_json(const IntervalSet& e) {
  Json parts = Json::array();
  for (const auto& iv : e.parts())
    parts.push_back(
        Json{{"lo", iv.lo.to_string()}, {"hi", iv.hi.to_string()}});
  return Json{{"intervals", parts}};
}

inline Json to_json(const StepFunction& f) {
  Json cells = Json::array();
  for (const auto& c : f.cells())
    cells.push_back(Json{{"lo", c.lo.to_string()},
                         {"hi", c.hi.to_string()},
                         {"value", c.value.to_string()}});
  return Json{{"cells", cells}};
}

inline Json to_json(const ComplexProfile& p) {
  Json cells = Json::array();
  for (const auto& c : p.cells())
    cells.push_back(Json{{"lo", c.lo.to_string()},
                         {"hi", c.hi.to_string()},
                         {"re", c.value.re.to_string()},
                         {"im", c.value.im.to_string()}});
  return Json{{"cells", cells}};
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    rows.push_back(r);
  }
  return rows;
}

inline Json to_json(const TilingReport& rep) {
  Json witnesses = Json::array();
  for (const auto& w : rep.witnesses)
    witnesses.push_back(Json{{"lo", w.lo.to_string()},
                             {"hi", w.hi.to_string()},
                             {"multiplicity", w.value.to_string()}});
  return Json{{"action", rep.action == TilingAction::Translation
                             ? "translation"
                             : "dilation"},
              {"verdict", to_string(rep.verdict)},
              {"multiplicity", to_json(rep.multiplicity)},
              {"witnesses", witnesses}};
}

inline Json to_json(const WaveletSetReport& rep) {
  Json j;
  j["wavelet_set"] = rep.is_wavelet_set;
  if (rep.translation) j["translation"] = to_json(*rep.translation);
  if (rep.dilation) j["dilation"] = to_json(*rep.dilation);
  if (!rep.diagnostic.empty()) j["diagnostic"] = rep.diagnostic;
  return j;
}

inline Json to_json(const EquationReport& rep) {
  Json j;
  j["equation"] = rep.equation;
  j["status"] = to_string(rep.status);
  if (rep.window) j["window"] = *rep.window;
  if (rep.shift_q) j["q"] = *rep.shift_q;
  Json witnesses = Json::array();
  for (const auto& w : rep.witnesses) {
    Json wj{{"lo", w.lo.to_string()},
            {"hi", w.hi.to_string()},
            {"re", w.residual.re.to_string()},
            {"im", w.residual.im.to_string()}};
    if (w.level != 0) wj["j"] = w.level;
    witnesses.push_back(wj);
  }
  j["witnesses"] = witnesses;
  return j;
}

inline Json to_json(const CertificationReport& rep) {
  Json eq3 = Json::array();
  for (const auto& r : rep.eq3) eq3.push_back(to_json(r));
  return Json{{"verdict", rep.wavelet ? "wavelet" : "not-wavelet"},
              {"eq1", to_json(rep.eq1)},
              {"eq2", to_json(rep.eq2)},
              {"eq4", to_json(rep.eq4)},
              {"eq3", eq3}};
}

inline Json to_json(const GeomReport& rep) {
  Json violations = Json::array();
  for (const auto& v : rep.violations)
    violations.push_back(Json{{"condition", v.condition},
                              {v.condition == 1 ? "k" : "j", v.parameter},
                              {"cells", to_json(v.cells)}});
  return Json{{"ok", rep.ok}, {"violations", violations}};
}

inline Json to_json(const CellMatrix& cm) {
  auto classes_json = [](const std::vector<std::vector<Interval>>& classes) {
    Json out = Json::array();
    for (const auto& cls : classes) {
      Json c = Json::array();
      for (const auto& iv : cls)
        c.push_back(
            Json{{"lo", iv.lo.to_string()}, {"hi", iv.hi.to_string()}});
      out.push_back(c);
    }
    return out;
  };
  return Json{{"entries", to_json(cm.entries)},
              {"row_classes", classes_json(cm.row_classes)},
              {"col_classes", classes_json(cm.col_classes)}};
}

inline Json to_json(const Diagonal& d) {
  Json j = Json::array();
  for (auto c : d.sigma) j.push_back(c);
  return j;
}

// ---- parsing ------------------------------------------------------------------

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("expected a rational string, got " + j.dump());
}

inline IntervalSet interval_set_from_json(const Json& j) {
  if (!j.contains("intervals") || !j["intervals"].is_array())
    throw ParseError("interval set needs an \"intervals\" array");
  std::vector<Interval> parts;
  for (const auto& p : j["intervals"])
    parts.push_back(
        {rational_from_json(p.at("lo")), rational_from_json(p.at("hi"))});
  return IntervalSet::normalize(std::move(parts));
}

inline StepFunction step_function_from_json(const Json& j) {
  if (!j.contains("cells") || !j["cells"].is_array())
    throw ParseError("step function needs a \"cells\" array");
  std::vector<Cell> cells;
  for (const auto& c : j["cells"])
    cells.push_back({rational_from_json(c.at("lo")),
                     rational_from_json(c.at("hi")),
                     rational_from_json(c.at("value"))});
  return StepFunction::from_cells(std::move(cells));
}

inline ComplexProfile profile_from_json(const Json& j) {
  if (!j.contains("cells") || !j["cells"].is_array())
    throw ParseError("profile needs a \"cells\" array");
  std::vector<ProfileCell> cells;
  for (const auto& c : j["cells"])
    cells.push_back({rational_from_json(c.at("lo")),
                     rational_from_json(c.at("hi")),
                     {rational_from_json(c.at("re")),
                      rational_from_json(c.at("im"))}});
  return ComplexProfile::from_cells(std::move(cells));
}

inline Matrix matrix_from_json(const Json& j) {
  const Json& rows = j.contains("entries") ? j["entries"] : j;
  if (!rows.is_array()) throw ParseError("matrix needs an array of rows");
  Matrix m;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    std::vector<Rational> r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    m.push_back(std::move(r));
  }
  return m;
}

inline std::vector<Rational> points_from_json(const Json& j) {
  const Json& arr = j.contains("points") ? j["points"] : j;
  if (!arr.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : arr) out.push_back(rational_from_json(x));
  return out;
}

//! Parses "a/b+c/d√2" (also accepts sqrt2/sqrt(2)/s2 spellings, a lone
//! rational, or a lone multiple of sqrt 2, e.g. "1/2√2").
inline Quad quad_from_string(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  // normalize the radical spelling
  const std::vector<std::string> radicals{"√2", "sqrt(2)", "sqrt2", "s2"};
  std::string radical;
  std::size_t pos = std::string::npos;
  for (const auto& r : radicals) {
    pos = t.find(r);
    if (pos != std::string::npos) {
      radical = r;
      break;
    }
  }
  if (pos == std::string::npos) return Quad(Rational::parse(t));
  if (pos + radical.size() != t.size())
    throw ParseError("sqrt2 must end the literal: " + s);
  std::string head = t.substr(0, pos);
  // split head into rational part and sqrt2 coefficient
  std::string a = "0", b;
  if (head.empty() || head == "+") {
    b = "1";
  } else if (head == "-") {
    b = "-1";
  } else {
    // find the +/- separating the two parts (not leading, not inside e-exp)
    std::size_t split = std::string::npos;
    for (std::size_t i = head.size(); i-- > 1;) {
      if ((head[i] == '+' || head[i] == '-') && head[i - 1] != 'e' &&
          head[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) {
      b = head;
      if (b == "+") b = "1";
      if (b == "-") b = "-1";
      if (b.back() == '*') b.pop_back();
    } else {
      a = head.substr(0, split);
      b = head.substr(split);
      if (b.back() == '*') b.pop_back();
      if (b == "+") b = "1";
      if (b == "-") b = "-1";
    }
  }
  return Quad(Rational::parse(a), Rational::parse(b));
}

inline Quad quad_from_json(const Json& j) {
  if (j.is_string()) return quad_from_string(j.get<std::string>());
  return Quad(rational_from_json(j.at("a")), rational_from_json(j.at("b")));
}

}  // namespace waveset
