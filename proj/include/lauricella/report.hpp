#pragma once

/**
 * @file report.hpp
 * @brief Analysis reports and their JSON form.
 *
 * Rationals are always rendered as "p/q" strings. Sub-analyses that do not
 * apply to a case are kept as "n/a: <reason>" strings, never dropped.
 */

#include <json.hpp>

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lauricella/cover.hpp"
#include "lauricella/hermitian.hpp"
#include "lauricella/monodromy.hpp"
#include "lauricella/periods.hpp"
#include "lauricella/weights.hpp"

namespace lauricella {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kAnalysisSchema = "lauricella.analysis/1";

struct NotApplicable {
  std::string reason;
};

template <class T>
using Maybe = std::variant<T, NotApplicable>;

struct GramSummary {
  std::size_t dimension = 0;
  int conductor = 1;
  Signature signature;
  std::vector<std::vector<cplx>> approx;
  std::vector<std::vector<std::optional<Rational>>> rational;  ///< entries that happen to lie in Q
  std::optional<std::vector<std::vector<CyclotomicNumber>>> exact;
};

struct EpsilonSummary {
  Signature statement;
  Signature proof;
};

struct GeneratorSummary {
  std::size_t k = 0;
  Rational pair_sum;
  Rational eigenvalue_turns;  ///< nontrivial eigenvalue exp(2 pi i t), t in [0, 1)
  std::size_t unit_multiplicity = 0;
  bool unipotent = false;
  bool preserves_form = false;
  std::optional<long> order;  ///< absent when of infinite order
  std::optional<std::vector<std::vector<CyclotomicNumber>>> exact;
};

struct AnalysisReport {
  std::vector<Rational> weights;
  Rational total;
  Rational complement;
  CaseLabel label = CaseLabel::Elliptic;
  ConditionReport finite;
  Maybe<ConditionReport> with_infinity;
  Maybe<std::vector<std::vector<std::size_t>>> cusps;
  Maybe<ArithmeticityReport> arithmetic;
  GramSummary gram;
  Maybe<EpsilonSummary> epsilon;
  std::vector<GeneratorSummary> generators;
  Maybe<std::vector<long>> eigendims;
  Maybe<long> genus;
};

namespace detail {

inline std::vector<std::vector<CyclotomicNumber>> rows_of(const CycMatrix& m) {
  std::vector<std::vector<CyclotomicNumber>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(m(r, c));
  return out;
}

inline GramSummary summarize(const HermitianGram& g, bool exact) {
  GramSummary s;
  s.dimension = g.dimension();
  s.conductor = g.conductor();
  s.signature = signature(g);
  Eigen::MatrixXcd e = g.embed();
  s.approx.assign(g.dimension(), {});
  s.rational.assign(g.dimension(), {});
  for (std::size_t r = 0; r < g.dimension(); ++r)
    for (std::size_t c = 0; c < g.dimension(); ++c) {
      s.approx[r].push_back(e(r, c));
      Rational q;
      s.rational[r].push_back(g.entry(r, c).as_rational(q) ? std::optional<Rational>(q) : std::nullopt);
    }
  if (exact) s.exact = rows_of(g.matrix());
  return s;
}

}  // namespace detail

inline AnalysisReport analyze(const WeightSystem& ws, bool exact = false) {
  if (classify(ws) == CaseLabel::OutOfRange)
    throw Error(ErrorKind::Validation, "total weight |mu| = " + ws.total().str() + " is not below 2 (OutOfRange)");
  AnalysisReport rep;
  rep.weights = ws.weights();
  rep.total = ws.total();
  rep.complement = ws.complement();
  rep.label = classify(ws);
  const bool hyper = rep.label == CaseLabel::Hyperbolic;
  const NotApplicable not_hyper{"requires the hyperbolic case (1 < |mu| < 2)"};

  rep.finite = check_conditions(ws, IndexRange::FiniteOnly);
  rep.with_infinity = hyper ? Maybe<ConditionReport>(check_conditions(ws, IndexRange::IncludeInfinity))
                            : Maybe<ConditionReport>(not_hyper);
  rep.cusps = hyper ? Maybe<std::vector<std::vector<std::size_t>>>(cusp_splittings(ws))
                    : Maybe<std::vector<std::vector<std::size_t>>>(not_hyper);
  rep.arithmetic = hyper ? Maybe<ArithmeticityReport>(is_arithmetic(ws)) : Maybe<ArithmeticityReport>(not_hyper);
  rep.eigendims = hyper ? Maybe<std::vector<long>>(eigenspace_dims(ws)) : Maybe<std::vector<long>>(not_hyper);
  rep.genus = hyper ? Maybe<long>(genus(ws)) : Maybe<long>(not_hyper);

  const HermitianGram form = form_on_period_coordinates(ws);
  rep.gram = detail::summarize(form, exact);

  if (!hyper) {
    rep.epsilon = not_hyper;
  } else if (ws.n() < 2) {
    rep.epsilon = NotApplicable{"requires n >= 2"};
  } else {
    rep.epsilon = EpsilonSummary{signature(epsilon_gram(ws, EpsilonConvention::Statement)),
                                 signature(epsilon_gram(ws, EpsilonConvention::Proof))};
  }

  for (std::size_t k = 1; k <= ws.n(); ++k) {
    auto m = dehn_twist_generator(ws, k);
    GeneratorSummary g;
    g.k = k;
    g.pair_sum = ws.weight(k - 1) + ws.weight(k);
    g.eigenvalue_turns = g.pair_sum.frac();
    g.unit_multiplicity = ws.n() - 1;
    g.unipotent = g.pair_sum == Rational(1);
    g.preserves_form = preserves_form(m, form);
    if (!g.unipotent) g.order = g.eigenvalue_turns.denominator().get_si();
    if (exact) g.exact = detail::rows_of(m.matrix());
    rep.generators.push_back(std::move(g));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline ordered_json na_json(const NotApplicable& na) { return "n/a: " + na.reason; }

inline bool is_na(const nlohmann::json& j) {
  return j.is_string() && j.get<std::string>().rfind("n/a: ", 0) == 0;
}
inline NotApplicable na_from(const nlohmann::json& j) { return {j.get<std::string>().substr(5)}; }

inline ordered_json rationals_json(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& q : v) a.push_back(q.str());
  return a;
}

inline ordered_json cyclotomic_json(const CyclotomicNumber& x) {
  ordered_json coeffs = ordered_json::array();
  for (int j = 0; j < x.degree(); ++j) coeffs.push_back(x.coefficient(j).str());
  return {{"conductor", x.order()}, {"coefficients", coeffs}};
}

inline CyclotomicNumber cyclotomic_from(const nlohmann::json& j) {
  std::vector<Rational> c;
  for (const auto& s : j.at("coefficients")) c.push_back(Rational::parse(s.get<std::string>()));
  return CyclotomicNumber::from_coefficients(j.at("conductor").get<int>(), c);
}

inline ordered_json exact_matrix_json(const std::vector<std::vector<CyclotomicNumber>>& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : m) {
    ordered_json row = ordered_json::array();
    for (const auto& x : r) row.push_back(cyclotomic_json(x));
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<std::vector<CyclotomicNumber>> exact_matrix_from(const nlohmann::json& j) {
  std::vector<std::vector<CyclotomicNumber>> m;
  for (const auto& r : j) {
    m.emplace_back();
    for (const auto& x : r) m.back().push_back(cyclotomic_from(x));
  }
  return m;
}

inline ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }
inline cplx complex_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline ordered_json signature_json(const Signature& s) {
  return {{"positive", s.positive}, {"negative", s.negative}, {"null", s.null}};
}
inline Signature signature_from(const nlohmann::json& j) {
  return {j.at("positive").get<std::size_t>(), j.at("negative").get<std::size_t>(), j.at("null").get<std::size_t>()};
}

inline ordered_json conditions_json(const ConditionReport& c) {
  ordered_json pairs = ordered_json::array();
  for (const auto& p : c.pairs) {
    ordered_json o;
    o["k"] = p.k;
    o["l"] = p.l;
    o["pair_sum"] = p.pair_sum.str();
    o["applicable"] = p.applicable;
    o["reciprocal"] = p.reciprocal ? ordered_json(p.reciprocal->str()) : ordered_json(nullptr);
    o["int"] = p.passes_int;
    o["half_int"] = p.passes_half_int;
    pairs.push_back(o);
  }
  return {{"range", c.range == IndexRange::FiniteOnly ? "finite" : "include-infinity"},
          {"int_ok", c.int_ok},
          {"half_int_ok", c.half_int_ok},
          {"pairs", pairs}};
}

inline ConditionReport conditions_from(const nlohmann::json& j) {
  ConditionReport c;
  c.range = j.at("range").get<std::string>() == "finite" ? IndexRange::FiniteOnly : IndexRange::IncludeInfinity;
  c.int_ok = j.at("int_ok").get<bool>();
  c.half_int_ok = j.at("half_int_ok").get<bool>();
  for (const auto& o : j.at("pairs")) {
    PairRecord p;
    p.k = o.at("k").get<std::size_t>();
    p.l = o.at("l").get<std::size_t>();
    p.pair_sum = Rational::parse(o.at("pair_sum").get<std::string>());
    p.applicable = o.at("applicable").get<bool>();
    if (!o.at("reciprocal").is_null()) p.reciprocal = Rational::parse(o.at("reciprocal").get<std::string>());
    p.passes_int = o.at("int").get<bool>();
    p.passes_half_int = o.at("half_int").get<bool>();
    c.pairs.push_back(std::move(p));
  }
  return c;
}

inline ordered_json gram_json(const GramSummary& g) {
  ordered_json approx = ordered_json::array();
  for (std::size_t r = 0; r < g.approx.size(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < g.approx[r].size(); ++c)
      row.push_back(g.rational[r][c] ? ordered_json(g.rational[r][c]->str()) : complex_json(g.approx[r][c]));
    approx.push_back(row);
  }
  ordered_json o;
  o["dimension"] = g.dimension;
  o["conductor"] = g.conductor;
  o["signature"] = signature_json(g.signature);
  o["float"] = approx;
  if (g.exact) o["exact"] = exact_matrix_json(*g.exact);
  return o;
}

inline GramSummary gram_from(const nlohmann::json& j) {
  GramSummary g;
  g.dimension = j.at("dimension").get<std::size_t>();
  g.conductor = j.at("conductor").get<int>();
  g.signature = signature_from(j.at("signature"));
  for (const auto& r : j.at("float")) {
    g.approx.emplace_back();
    g.rational.emplace_back();
    for (const auto& z : r) {
      if (z.is_string()) {
        Rational q = Rational::parse(z.get<std::string>());
        g.approx.back().push_back(q.to_double());
        g.rational.back().push_back(q);
      } else {
        g.approx.back().push_back(complex_from(z));
        g.rational.back().push_back(std::nullopt);
      }
    }
  }
  if (j.contains("exact")) g.exact = exact_matrix_from(j.at("exact"));
  return g;
}

template <class T, class F>
ordered_json maybe_json(const Maybe<T>& m, F&& render) {
  if (auto* na = std::get_if<NotApplicable>(&m)) return na_json(*na);
  return render(std::get<T>(m));
}

template <class T, class F>
Maybe<T> maybe_from(const nlohmann::json& j, F&& parse) {
  if (is_na(j)) return na_from(j);
  return parse(j);
}

inline CaseLabel case_from(const std::string& s) {
  for (auto c : {CaseLabel::Elliptic, CaseLabel::Parabolic, CaseLabel::Hyperbolic, CaseLabel::OutOfRange})
    if (to_string(c) == s) return c;
  throw Error(ErrorKind::Parse, "unknown case label '" + s + "'");
}

}  // namespace detail

inline ordered_json to_json(const AnalysisReport& r) {
  using namespace detail;
  ordered_json o;
  o["schema"] = kAnalysisSchema;
  o["weights"] = rationals_json(r.weights);
  o["total"] = r.total.str();
  o["complement"] = r.complement.str();
  o["case"] = to_string(r.label);
  o["conditions"] = {{"finite", conditions_json(r.finite)},
                     {"include_infinity", maybe_json(r.with_infinity, conditions_json)}};
  o["cusps"] = maybe_json(r.cusps, [](const auto& cs) {
    ordered_json a = ordered_json::array();
    for (const auto& s : cs) a.push_back(s);
    return a;
  });
  o["arithmetic"] = maybe_json(r.arithmetic, [](const ArithmeticityReport& a) {
    ordered_json w = ordered_json::array();
    for (const auto& x : a.witnesses)
      w.push_back({{"r", x.r}, {"sum", x.sum.str()}, {"opposite_sum", x.opposite_sum.str()}});
    return ordered_json{{"arithmetic", a.arithmetic}, {"witnesses", w}};
  });
  o["gram"] = gram_json(r.gram);
  o["epsilon_gram"] = maybe_json(r.epsilon, [](const EpsilonSummary& e) {
    return ordered_json{{"statement", signature_json(e.statement)}, {"proof", signature_json(e.proof)}};
  });
  ordered_json gens = ordered_json::array();
  for (const auto& g : r.generators) {
    ordered_json x;
    x["k"] = g.k;
    x["pair_sum"] = g.pair_sum.str();
    x["eigenvalue_turns"] = g.eigenvalue_turns.str();
    x["unit_multiplicity"] = g.unit_multiplicity;
    x["unipotent"] = g.unipotent;
    x["preserves_form"] = g.preserves_form;
    x["order"] = g.order ? ordered_json(*g.order) : ordered_json("infinite");
    if (g.exact) x["exact"] = exact_matrix_json(*g.exact);
    gens.push_back(x);
  }
  o["generators"] = gens;
  o["eigendims"] = maybe_json(r.eigendims, [](const std::vector<long>& d) { return ordered_json(d); });
  o["genus"] = maybe_json(r.genus, [](long g) { return ordered_json(g); });
  return o;
}

inline AnalysisReport report_from_json(const nlohmann::json& j) {
  using namespace detail;
  if (!j.is_object() || j.value("schema", "") != std::string(kAnalysisSchema))
    throw Error(ErrorKind::Parse, std::string("not a ") + kAnalysisSchema + " document");
  try {
    AnalysisReport r;
    for (const auto& s : j.at("weights")) r.weights.push_back(Rational::parse(s.get<std::string>()));
    r.total = Rational::parse(j.at("total").get<std::string>());
    r.complement = Rational::parse(j.at("complement").get<std::string>());
    r.label = case_from(j.at("case").get<std::string>());
    r.finite = conditions_from(j.at("conditions").at("finite"));
    r.with_infinity = maybe_from<ConditionReport>(j.at("conditions").at("include_infinity"), conditions_from);
    r.cusps = maybe_from<std::vector<std::vector<std::size_t>>>(
        j.at("cusps"), [](const nlohmann::json& a) { return a.get<std::vector<std::vector<std::size_t>>>(); });
    r.arithmetic = maybe_from<ArithmeticityReport>(j.at("arithmetic"), [](const nlohmann::json& a) {
      ArithmeticityReport rep;
      rep.arithmetic = a.at("arithmetic").get<bool>();
      for (const auto& w : a.at("witnesses"))
        rep.witnesses.push_back({w.at("r").get<long>(), Rational::parse(w.at("sum").get<std::string>()),
                                 Rational::parse(w.at("opposite_sum").get<std::string>())});
      return rep;
    });
    r.gram = gram_from(j.at("gram"));
    r.epsilon = maybe_from<EpsilonSummary>(j.at("epsilon_gram"), [](const nlohmann::json& e) {
      return EpsilonSummary{signature_from(e.at("statement")), signature_from(e.at("proof"))};
    });
    for (const auto& x : j.at("generators")) {
      GeneratorSummary g;
      g.k = x.at("k").get<std::size_t>();
      g.pair_sum = Rational::parse(x.at("pair_sum").get<std::string>());
      g.eigenvalue_turns = Rational::parse(x.at("eigenvalue_turns").get<std::string>());
      g.unit_multiplicity = x.at("unit_multiplicity").get<std::size_t>();
      g.unipotent = x.at("unipotent").get<bool>();
      g.preserves_form = x.at("preserves_form").get<bool>();
      if (!x.at("order").is_string()) g.order = x.at("order").get<long>();
      if (x.contains("exact")) g.exact = exact_matrix_from(x.at("exact"));
      r.generators.push_back(std::move(g));
    }
    r.eigendims = maybe_from<std::vector<long>>(j.at("eigendims"),
                                                [](const nlohmann::json& a) { return a.get<std::vector<long>>(); });
    r.genus = maybe_from<long>(j.at("genus"), [](const nlohmann::json& a) { return a.get<long>(); });
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed analysis report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Periods and monodromy output

inline ordered_json periods_json(const WeightSystem& ws, const Configuration& cfg, int nodes) {
  auto pv = lauricella_periods(ws, cfg, nodes);
  ordered_json o;
  ordered_json f = ordered_json::array();
  for (const auto& v : pv.values) f.push_back(detail::complex_json(v));
  o["weights"] = detail::rationals_json(ws.weights());
  o["case"] = to_string(classify(ws));
  o["nodes"] = nodes;
  o["F"] = f;
  o["F_inf"] = pv.f_inf ? detail::complex_json(*pv.f_inf) : ordered_json("n/a: requires |mu| > 1");
  o["quadrature_error"] = pv.error;

  const double h = std::min(1e-4, 0.1 * cfg.min_gap());
  ordered_json res;
  const CaseLabel label = classify(ws);
  res["parabolic_pi"] = label == CaseLabel::Parabolic ? ordered_json(parabolic_residual(ws, pv))
                                                      : ordered_json("n/a: parabolic case only");
  res["closure"] = pv.f_inf ? ordered_json(closure_residual(ws, pv)) : ordered_json("n/a: requires |mu| > 1");
  if (cfg.is_real()) {
    auto ids = identity_checks(ws, cfg, h, nodes);
    res["pde"] = ids.pde;
    res["translation"] = ids.translation;
  } else {
    res["pde"] = "n/a: real configurations only";
    res["translation"] = "n/a: real configurations only";
  }
  o["residuals"] = res;
  if (label == CaseLabel::Hyperbolic) {
    auto sp = schwarz_point(ws, pv);
    o["ball_radius"] = sp.ball_radius ? ordered_json(*sp.ball_radius) : ordered_json("n/a: undefined");
  } else {
    o["ball_radius"] = "n/a: hyperbolic case only";
  }
  return o;
}

inline ordered_json generator_json(const MonodromyElement& m, bool exact) {
  ordered_json o;
  ordered_json approx = ordered_json::array();
  Eigen::MatrixXcd e = m.matrix().embed();
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < e.cols(); ++c) row.push_back(detail::complex_json(e(r, c)));
    approx.push_back(row);
  }
  if (m.word()) o["word"] = *m.word();
  o["conductor"] = m.conductor();
  o["float"] = approx;
  if (exact) o["exact"] = detail::exact_matrix_json(detail::rows_of(m.matrix()));
  return o;
}

}  // namespace lauricella
