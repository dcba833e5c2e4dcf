// Acceptance suite. Each criterion prints one PASS/FAIL line.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run one; exit status 0 iff it passes

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <numbers>
#include <sstream>
#include <thread>

#include "lauricella/report.hpp"
#include "lauricella/scanner.hpp"

using namespace lauricella;

namespace {

namespace tol {
constexpr double beta = 1e-10;
constexpr double parabolic_pi = 1e-8;
constexpr double closure = 1e-8;
constexpr double form_vs_n = 1e-3;
constexpr double pde = 1e-5;
constexpr double fd_step = 1e-4;
constexpr double min_singular = 1e-3;
constexpr double rank_cutoff = 1e-6;  // relative to the largest singular value
constexpr double oracle_grid = 1e-7;
}  // namespace tol

namespace budget {
constexpr double c1 = 1.0, c2 = 1.0, c6 = 60.0, c7 = 1.0, c8 = 1.0, c9 = 120.0, c10 = 10.0, c11 = 600.0;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string weights_str(const WeightSystem& ws) {
  std::string s;
  for (std::size_t k = 0; k <= ws.n(); ++k) s += (k ? "," : "") + ws.weight(k).str();
  return s;
}

WeightSystem uniform(std::size_t count, Rational w) { return WeightSystem(std::vector<Rational>(count, w)); }

/// Random system with n+1 finite weights d_k / D, total numerator T chosen for the class.
WeightSystem random_system(std::mt19937_64& rng, CaseLabel label, std::size_t min_n = 1, std::size_t max_n = 5) {
  while (true) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(min_n, max_n)(rng);
    const long parts = static_cast<long>(n + 1);
    const long denom = std::uniform_int_distribution<long>(std::max(2L, parts + 1), 30)(rng);
    long lo = parts, hi = denom - 1;
    if (label == CaseLabel::Parabolic) lo = hi = denom;
    if (label == CaseLabel::Hyperbolic) lo = denom + 1, hi = std::min(2 * denom - 1, parts * (denom - 1));
    if (lo > hi) continue;
    const long total = std::uniform_int_distribution<long>(lo, hi)(rng);
    // rejection-sample a composition of `total` into parts in [1, denom-1]
    std::vector<long> d(parts);
    bool ok = false;
    for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
      long left = total;
      ok = true;
      for (long k = 0; k + 1 < parts; ++k) {
        const long rest = parts - k - 1;
        const long a = std::max(1L, left - rest * (denom - 1)), b = std::min(denom - 1, left - rest);
        if (a > b) {
          ok = false;
          break;
        }
        d[k] = std::uniform_int_distribution<long>(a, b)(rng);
        left -= d[k];
      }
      if (ok) {
        d.back() = left;
        ok = left >= 1 && left <= denom - 1;
      }
    }
    if (!ok) continue;
    std::shuffle(d.begin(), d.end(), rng);
    std::vector<Rational> w;
    for (long x : d) w.emplace_back(x, denom);
    WeightSystem ws(std::move(w));
    if (classify(ws) != label) continue;
    if (std::lcm(4L, 2 * ws.common_denominator()) > max_conductor()) continue;
    return ws;
  }
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  std::ostringstream bad;
  for (std::size_t n = 1; n <= 10; ++n) {
    auto ws = uniform(n + 1, Rational(1, 6));
    const CaseLabel want = n <= 4 ? CaseLabel::Elliptic : (n == 5 ? CaseLabel::Parabolic : CaseLabel::Hyperbolic);
    if (classify(ws) != want) bad << " n=" << n << " case " << to_string(classify(ws));
    if (!check_conditions(ws, IndexRange::FiniteOnly).half_int_ok) bad << " n=" << n << " half_int";
    if (want == CaseLabel::Hyperbolic && !check_conditions(ws, IndexRange::IncludeInfinity).half_int_ok)
      bad << " n=" << n << " half_int(with infinity)";
  }
  if (classify(uniform(12, Rational(1, 6))) != CaseLabel::OutOfRange) bad << " n=11 not OutOfRange";
  return {bad.str().empty(), bad.str().empty() ? "E n<=4, P n=5, H n=6..10, half-INT throughout, n=11 OutOfRange"
                                                : "mismatch:" + bad.str()};
}

Outcome criterion2() {
  auto ws = WeightSystem::parse("3/12,3/12,3/12,7/12");
  std::ostringstream bad;
  if (classify(ws) != CaseLabel::Hyperbolic) bad << " case";
  if (!check_conditions(ws, IndexRange::IncludeInfinity).int_ok) bad << " int_ok";
  if (!cusp_splittings(ws).empty()) bad << " cusps";
  auto ar = is_arithmetic(ws);
  if (ar.arithmetic) bad << " arithmetic";
  bool r5 = false;
  for (const auto& w : ar.witnesses)
    if (w.r == 5 && w.sum == Rational(5, 3) && w.opposite_sum == Rational(7, 3)) r5 = true;
  if (!r5) bad << " witness r=5";
  return {bad.str().empty(), bad.str().empty() ? "Hyperbolic, INT with infinity, no cusps, non-arithmetic, r=5 -> (5/3, 7/3)"
                                                : "mismatch:" + bad.str()};
}

Outcome criterion3() {
  auto ws = WeightSystem::parse("3/12,3/12,3/12,7/12");
  auto dims = eigenspace_dims(ws);
  const std::vector<long> want{1, 1, 2, 0, 1, 1, 2, 0, 0, 2, 2};
  std::vector<long> got(dims.begin() + 1, dims.end());
  auto prof = cover_profile(ws);
  // Riemann-Hurwitz from the ramification alone
  long ram = 0;
  for (long mk : prof.ramification) ram += prof.m - prof.m / mk;
  const long rh_genus = (-2 * prof.m + ram) / 2 + 1;
  long sum = 0;
  for (long d : got) sum += d;
  std::ostringstream bad;
  if (got != want) bad << " eigendims";
  if (sum != 12 || rh_genus != 12 || genus(ws) != 12) bad << " genus (sum " << sum << ", RH " << rh_genus << ")";
  std::mt19937_64 rng(3);
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    auto s = random_system(rng, CaseLabel::Hyperbolic);
    auto d = eigenspace_dims(s);
    long total = 0;
    for (long x : d) total += x;
    if (total != genus(s)) ++failures;
  }
  if (failures) bad << " property failures " << failures << "/100";
  return {bad.str().empty(), bad.str().empty() ? "eigendims match, genus 12 by both counts, 100/100 random systems sum to genus"
                                                : "mismatch:" + bad.str()};
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  std::map<CaseLabel, int> failures;
  for (auto label : {CaseLabel::Elliptic, CaseLabel::Parabolic, CaseLabel::Hyperbolic}) {
    for (int i = 0; i < 200; ++i) {
      auto ws = random_system(rng, label);
      const std::size_t n = ws.n();
      Signature want = label == CaseLabel::Elliptic    ? Signature{n, 0, 0}
                       : label == CaseLabel::Parabolic ? Signature{n - 1, 0, 0}
                                                       : Signature{n - 1, 1, 0};
      if (!(signature(form_on_period_coordinates(ws)) == want)) ++failures[label];
    }
  }
  const int total = failures[CaseLabel::Elliptic] + failures[CaseLabel::Parabolic] + failures[CaseLabel::Hyperbolic];
  std::ostringstream d;
  d << "600 exact signatures, failures E/P/H = " << failures[CaseLabel::Elliptic] << "/"
    << failures[CaseLabel::Parabolic] << "/" << failures[CaseLabel::Hyperbolic];
  return {total == 0, d.str()};
}

Outcome criterion5() {
  std::mt19937_64 rng(5);
  const CaseLabel labels[] = {CaseLabel::Elliptic, CaseLabel::Parabolic, CaseLabel::Hyperbolic};
  int checked = 0, unipotent_seen = 0;
  std::ostringstream bad;
  for (int i = 0; i < 50; ++i) {
    auto ws = random_system(rng, labels[i % 3], 2, 5);
    const std::size_t n = ws.n();
    const int order = ambient_conductor(ws);
    auto h = form_on_period_coordinates(ws);
    auto gens = dehn_twist_generators(ws);
    const auto id = CycMatrix::identity(n, order);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto& m = gens[k - 1].matrix();
      const CycMatrix a = m - id;
      if (!preserves_form(gens[k - 1], h)) bad << " [" << weights_str(ws) << "] M_" << k << " form";
      // M - I has rank <= 1, so the spectrum is 1^{n-1} plus 1 + tr(M - I)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s)
          for (std::size_t c = 0; c < n; ++c)
            for (std::size_t e = c + 1; e < n; ++e)
              if (!(a(r, c) * a(s, e) - a(r, e) * a(s, c)).is_zero()) bad << " rank";
      auto tr = CyclotomicNumber::zero(order);
      for (std::size_t r = 0; r < n; ++r) tr += a(r, r);
      const Rational pair = ws.weight(k - 1) + ws.weight(k);
      const auto lambda = exp_i_pi(Rational(2) * pair, order);
      if (!(CyclotomicNumber::one(order) + tr == lambda)) bad << " [" << weights_str(ws) << "] M_" << k << " spectrum";
      const bool unipotent = (a * a).is_zero() && !a.is_zero();
      if (unipotent != (pair == Rational(1))) bad << " [" << weights_str(ws) << "] M_" << k << " unipotence";
      unipotent_seen += unipotent;
      for (std::size_t l = k + 2; l <= n; ++l) {
        const auto& b = gens[l - 1].matrix();
        if (!(m * b == b * m)) bad << " [" << weights_str(ws) << "] M_" << k << ",M_" << l << " commute";
      }
      ++checked;
    }
  }
  std::ostringstream d;
  d << checked << " generators over 50 systems (" << unipotent_seen << " unipotent)";
  if (!bad.str().empty()) d << "; failures:" << bad.str().substr(0, 300);
  return {bad.str().empty(), d.str()};
}

/// Floating-point BFS over embedded generators, elements keyed on a rounded grid.
std::size_t float_closure_order(const std::vector<MonodromyElement>& gens, std::size_t bound) {
  std::vector<Eigen::MatrixXcd> g;
  for (const auto& x : gens) g.push_back(x.matrix().embed());
  const Eigen::Index n = g.front().rows();
  auto key = [](const Eigen::MatrixXcd& m) {
    std::vector<long long> k;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      k.push_back(std::llround(m.data()[i].real() / tol::oracle_grid));
      k.push_back(std::llround(m.data()[i].imag() / tol::oracle_grid));
    }
    return k;
  };
  std::vector<Eigen::MatrixXcd> seen{Eigen::MatrixXcd::Identity(n, n)};
  std::map<std::vector<long long>, std::size_t> index{{key(seen[0]), 0}};
  for (std::size_t head = 0; head < seen.size() && seen.size() <= bound; ++head)
    for (const auto& x : g) {
      Eigen::MatrixXcd next = seen[head] * x;
      if (index.emplace(key(next), seen.size()).second) seen.push_back(next);
    }
  return seen.size();
}

Outcome criterion6() {
  auto ws = WeightSystem::parse("1/3,1/3,1/6");
  auto gens = dehn_twist_generators(ws);
  const std::size_t oracle = float_closure_order(gens, 100000);
  auto res = group_closure(gens, 100000);
  auto* fin = std::get_if<ClosureFinite>(&res);
  std::ostringstream d;
  if (!fin) return {false, "exact closure exceeded the bound"};
  d << "exact order " << fin->order << ", floating BFS oracle " << oracle;
  return {fin->order == oracle, d.str()};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  auto half = WeightSystem::parse("1/2,1/2");
  const double pi_err = std::abs(lauricella_periods(half, Configuration::real({0, 1}), 32).values[0] - std::numbers::pi);
  for (int i = 0; i < 50; ++i) {
    Rational w[2];
    for (auto& x : w) {
      do {
        long q = std::uniform_int_distribution<long>(2, 24)(rng);
        x = Rational(std::uniform_int_distribution<long>(1, q - 1)(rng), q);
      } while (x < Rational(1, 12) || x > Rational(11, 12));
    }
    WeightSystem ws({w[0], w[1]});
    if (std::lcm(4L, 2 * ws.common_denominator()) > max_conductor()) continue;
    const cplx f = lauricella_periods(ws, Configuration::real({0, 1}), 32).values[0];
    const double ref = std::beta(1.0 - w[0].to_double(), 1.0 - w[1].to_double());
    worst = std::max(worst, std::abs(f - ref) / std::abs(ref));
  }
  std::ostringstream d;
  d << "worst relative error " << worst << ", (1/2,1/2) error " << pi_err;
  return {worst <= tol::beta && pi_err <= tol::beta, d.str()};
}

Outcome criterion8() {
  auto ws = WeightSystem::parse("1/4,1/4,1/4,1/4");
  const double r = parabolic_residual(ws, lauricella_periods(ws, Configuration::real({0, 1, 2, 3}), 64));
  std::ostringstream d;
  d << "|sum Im(w_k) F_k - pi| = " << r;
  return {r <= tol::parabolic_pi, d.str()};
}

Outcome criterion9() {
  auto ws = WeightSystem::parse("3/12,3/12,3/12,7/12");
  auto cfg = Configuration::real({0, 1, 2, 3});
  auto pv = lauricella_periods(ws, cfg, 64);
  const double closure = closure_residual(ws, pv);
  const double h = lifted_form_value(ws, pv);
  const auto n = n_integral(ws, cfg);
  const double rel = std::abs(h - n.value) / std::abs(n.value);
  std::ostringstream d;
  d << "closure " << closure << ", H(F,F) = " << h << ", N(z) = " << n.value << ", relative gap " << rel;
  return {closure <= tol::closure && h < 0 && rel <= tol::form_vs_n, d.str()};
}

Outcome criterion10() {
  auto cfg = Configuration::real({0, 1, 2, 3});
  auto hyp = identity_checks(WeightSystem::parse("3/12,3/12,3/12,7/12"), cfg, tol::fd_step);
  auto par = identity_checks(WeightSystem::parse("1/4,1/4,1/4,1/4"), cfg, tol::fd_step);
  std::size_t rank = 0;
  for (double s : par.singular_values)
    if (s > tol::rank_cutoff * par.singular_values.front()) ++rank;
  const double smin = hyp.singular_values.back();
  std::ostringstream d;
  d << "pde " << std::max(hyp.pde, par.pde) << ", hyperbolic sigma_min " << smin << ", parabolic rank " << rank
    << " of " << par.singular_values.size();
  return {hyp.pde <= tol::pde && par.pde <= tol::pde && smin > tol::min_singular &&
              rank + 1 == par.singular_values.size(),
          d.str()};
}

Outcome criterion11() {
  auto csv = [](std::size_t n) {
    ScanOptions opt;
    opt.n = n;
    opt.max_denominator = 12;
    opt.filters = {ScanFilter::HalfInt, ScanFilter::Hyperbolic};
    opt.threads = std::max(1u, std::thread::hardware_concurrency());
    auto entries = enumerate(opt);
    std::ostringstream os;
    write_census_csv(os, entries);
    return std::make_pair(entries, os.str());
  };
  auto [a, a_text] = csv(10);
  auto [b, b_text] = csv(10);
  auto [c, c_text] = csv(11);
  bool only_sixth = a.size() == 1;
  if (only_sixth) {
    const auto w = a[0].weights().weights();
    only_sixth = w.size() == 11 && std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == Rational(1, 6); });
  }
  std::ostringstream d;
  d << "n=10: " << a.size() << " system(s)" << (only_sixth ? " (all 1/6)" : "") << ", n=11: " << c.size()
    << ", repeat " << (a_text == b_text ? "byte-identical" : "differs");
  return {only_sixth && c.empty() && a_text == b_text, d.str()};
}

Outcome criterion12() {
  std::mt19937_64 rng(12);
  int both = 0, statement_only = 0, proof_only = 0, neither = 0;
  auto hyperbolic = [](const Signature& s, std::size_t n) {
    return s == Signature{n - 1, 1, 0} || s == Signature{1, n - 1, 0};
  };
  for (int i = 0; i < 50; ++i) {
    auto ws = random_system(rng, CaseLabel::Hyperbolic, 2, 5);
    const bool st = hyperbolic(signature(epsilon_gram(ws, EpsilonConvention::Statement)), ws.n());
    const bool pr = hyperbolic(signature(epsilon_gram(ws, EpsilonConvention::Proof)), ws.n());
    (st && pr ? both : st ? statement_only : pr ? proof_only : neither)++;
  }
  const bool statement_consistent = statement_only + both == 50 && proof_only + both < 50;
  const bool proof_consistent = proof_only + both == 50 && statement_only + both < 50;
  std::ostringstream d;
  d << "hyperbolic signature under both " << both << ", statement only " << statement_only << ", proof only "
    << proof_only << ", neither " << neither << "; pinned convention: "
    << (statement_consistent ? "statement" : proof_consistent ? "proof" : "none");
  return {statement_consistent || proof_consistent, d.str()};
}

struct Criterion {
  Outcome (*run)();
  double budget_s;  // <= 0: no runtime bound
};

const std::map<int, Criterion> kCriteria{
    {1, {criterion1, budget::c1}},  {2, {criterion2, budget::c2}},   {3, {criterion3, 0}},
    {4, {criterion4, 0}},           {5, {criterion5, 0}},            {6, {criterion6, budget::c6}},
    {7, {criterion7, budget::c7}},  {8, {criterion8, budget::c8}},   {9, {criterion9, budget::c9}},
    {10, {criterion10, budget::c10}}, {11, {criterion11, budget::c11}}, {12, {criterion12, 0}},
};

bool run_one(int id) {
  const auto& c = kCriteria.at(id);
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.budget_s > 0 && secs > c.budget_s) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(c.budget_s) + " s budget";
  }
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << std::fixed
            << std::setprecision(3) << secs << " s) " << std::defaultfloat << o.detail << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  configure_conductor_cap_from_env();
  if (only) return run_one(only) ? 0 : 1;
  int failed = 0;
  for (const auto& [id, c] : kCriteria) failed += !run_one(id);
  std::cout << (kCriteria.size() - failed) << "/" << kCriteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
