#pragma once

/**
 * @file scanner.hpp
 * @brief Exhaustive census of weight systems with a bounded denominator.
 *
 * Every multiset {mu_0, ..., mu_n} with mu_k = d_k / D, 0 < d_k < D, is
 * visited once as a non-decreasing numerator tuple, in lexicographic order.
 * Cheap integer tests decide the case and the INT conditions; cusp counts
 * and arithmeticity are computed only for entries that pass the filters.
 */

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <mutex>
#include <exception>
#include <vector>

#include <json.hpp>

#include "lauricella/cover.hpp"
#include "lauricella/weights.hpp"

namespace lauricella {

inline constexpr long kDefaultMaxScanDenominator = 120;

enum class ScanFilter { Int, HalfInt, Hyperbolic, Elliptic, Parabolic, NonArithmetic };

inline ScanFilter parse_scan_filter(const std::string& s) {
  if (s == "int") return ScanFilter::Int;
  if (s == "half-int") return ScanFilter::HalfInt;
  if (s == "hyperbolic") return ScanFilter::Hyperbolic;
  if (s == "elliptic") return ScanFilter::Elliptic;
  if (s == "parabolic") return ScanFilter::Parabolic;
  if (s == "nonarithmetic") return ScanFilter::NonArithmetic;
  throw Error(ErrorKind::Validation, "unknown scan filter '" + s + "'");
}

struct ScanOptions {
  std::size_t n = 1;
  long max_denominator = 12;
  std::vector<ScanFilter> filters;
  unsigned threads = 1;
  long denominator_cap = kDefaultMaxScanDenominator;
};

struct CensusEntry {
  std::vector<long> numerators;  ///< sorted d_0..d_n over `denominator`
  long denominator = 1;
  CaseLabel label = CaseLabel::Elliptic;
  bool int_ok = false;           ///< finite indices
  bool half_int_ok = false;
  std::optional<bool> int_inf_ok;       ///< with infinity; hyperbolic only
  std::optional<bool> half_int_inf_ok;
  std::optional<std::size_t> cusps;     ///< hyperbolic only
  std::optional<ArithmeticityReport> arithmetic;
  std::optional<std::vector<long>> eigendims;

  WeightSystem weights() const {
    std::vector<Rational> w;
    for (long d : numerators) w.emplace_back(d, denominator);
    return WeightSystem(std::move(w));
  }
  /// INT with infinity for hyperbolic systems, finite-only otherwise.
  bool natural_int() const { return int_inf_ok.value_or(int_ok); }
  bool natural_half_int() const { return half_int_inf_ok.value_or(half_int_ok); }
};

namespace detail {

struct IntFlags {
  bool int_ok = true;
  bool half_ok = true;
};

inline IntFlags integer_conditions(const std::vector<long>& d, long denom) {
  IntFlags f;
  for (std::size_t k = 0; k < d.size(); ++k) {
    for (std::size_t l = k + 1; l < d.size(); ++l) {
      const long s = d[k] + d[l];
      if (s >= denom) continue;
      const long gap = denom - s;
      const bool integral = denom % gap == 0;
      f.int_ok = f.int_ok && integral;
      f.half_ok = f.half_ok && (integral || (d[k] == d[l] && (2 * denom) % gap == 0));
      if (!f.half_ok) return f;
    }
  }
  return f;
}

/// Subsets of {0..n+1} containing 0 whose numerators sum to denom.
inline std::size_t count_cusps(const std::vector<long>& d_with_inf, long denom) {
  std::vector<std::size_t> ways(static_cast<std::size_t>(denom) + 1, 0);
  ways[static_cast<std::size_t>(d_with_inf[0])] = 1;
  for (std::size_t j = 1; j < d_with_inf.size(); ++j)
    for (long s = denom; s >= d_with_inf[j]; --s) ways[s] += ways[s - d_with_inf[j]];
  return ways[static_cast<std::size_t>(denom)];
}

inline bool passes_cheap(const CensusEntry& e, const std::vector<ScanFilter>& filters) {
  for (auto f : filters) {
    switch (f) {
      case ScanFilter::Int: if (!e.natural_int()) return false; break;
      case ScanFilter::HalfInt: if (!e.natural_half_int()) return false; break;
      case ScanFilter::Hyperbolic:
      case ScanFilter::NonArithmetic: if (e.label != CaseLabel::Hyperbolic) return false; break;
      case ScanFilter::Elliptic: if (e.label != CaseLabel::Elliptic) return false; break;
      case ScanFilter::Parabolic: if (e.label != CaseLabel::Parabolic) return false; break;
    }
  }
  return true;
}

inline std::optional<CensusEntry> analyze_tuple(const std::vector<long>& d, long denom,
                                                const std::vector<ScanFilter>& filters) {
  CensusEntry e;
  e.numerators = d;
  e.denominator = denom;
  long total = 0;
  for (long x : d) total += x;
  e.label = total < denom ? CaseLabel::Elliptic
            : total == denom ? CaseLabel::Parabolic
            : total < 2 * denom ? CaseLabel::Hyperbolic
                                : CaseLabel::OutOfRange;
  auto fin = integer_conditions(d, denom);
  e.int_ok = fin.int_ok;
  e.half_int_ok = fin.half_ok;
  std::vector<long> with_inf;
  if (e.label == CaseLabel::Hyperbolic) {
    with_inf = d;
    with_inf.push_back(2 * denom - total);
    auto inf = integer_conditions(with_inf, denom);
    e.int_inf_ok = inf.int_ok;
    e.half_int_inf_ok = inf.half_ok;
  }
  if (!passes_cheap(e, filters)) return std::nullopt;
  if (e.label == CaseLabel::Hyperbolic) {
    e.cusps = count_cusps(with_inf, denom);
    auto ws = e.weights();
    e.arithmetic = is_arithmetic(ws);
    e.eigendims = eigenspace_dims(ws);
    if (std::find(filters.begin(), filters.end(), ScanFilter::NonArithmetic) != filters.end() &&
        e.arithmetic->arithmetic)
      return std::nullopt;
  }
  return e;
}

/// All non-decreasing tuples of length len over [lo, hi], lexicographic.
template <class Visit>
void walk_tuples(std::vector<long>& prefix, std::size_t len, long lo, long hi, Visit&& visit) {
  if (prefix.size() == len) {
    visit(prefix);
    return;
  }
  for (long v = lo; v <= hi; ++v) {
    prefix.push_back(v);
    walk_tuples(prefix, len, v, hi, visit);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Entries in lexicographic canonical order; independent of `threads`.
inline std::vector<CensusEntry> enumerate(const ScanOptions& opt) {
  if (opt.n < 1) throw Error(ErrorKind::Validation, "scan: n must be at least 1");
  if (opt.max_denominator < 2) throw Error(ErrorKind::Validation, "scan: max denominator must be at least 2");
  if (opt.max_denominator > opt.denominator_cap)
    throw Error(ErrorKind::ResourceCap, "scan: max denominator " + std::to_string(opt.max_denominator) +
                                            " exceeds cap " + std::to_string(opt.denominator_cap));
  const long denom = opt.max_denominator;
  const std::size_t len = opt.n + 1;
  const long first_values = denom - 1;
  std::vector<std::vector<CensusEntry>> buckets(static_cast<std::size_t>(first_values));
  std::atomic<long> next{1};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed) {
      const long d0 = next.fetch_add(1);
      if (d0 > first_values) return;
      try {
        std::vector<long> prefix{d0};
        auto& out = buckets[static_cast<std::size_t>(d0 - 1)];
        detail::walk_tuples(prefix, len, d0, denom - 1, [&](const std::vector<long>& d) {
          if (auto e = detail::analyze_tuple(d, denom, opt.filters)) out.push_back(std::move(*e));
        });
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<CensusEntry> all;
  for (auto& b : buckets)
    for (auto& e : b) all.push_back(std::move(e));
  return all;
}

// ---------------------------------------------------------------------------
// Reports

namespace detail {

inline std::string weights_text(const CensusEntry& e) {
  std::string s;
  for (std::size_t k = 0; k < e.numerators.size(); ++k) {
    if (k) s += ",";
    s += Rational(e.numerators[k], e.denominator).str();
  }
  return s;
}

inline std::string bool_text(std::optional<bool> b) { return b ? (*b ? "true" : "false") : "n/a"; }

inline std::string witnesses_text(const ArithmeticityReport& rep) {
  std::string s;
  for (const auto& w : rep.witnesses) {
    if (!s.empty()) s += "; ";
    s += "r=" + std::to_string(w.r) + ": " + w.sum.str() + ", " + w.opposite_sum.str();
  }
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace detail

inline const char* census_csv_header() {
  return "weights,case,int,int_inf,half_int,half_int_inf,cusps,arithmetic,witnesses";
}

inline void write_census_csv(std::ostream& os, const std::vector<CensusEntry>& entries) {
  os << census_csv_header() << "\n";
  for (const auto& e : entries) {
    os << detail::csv_field(detail::weights_text(e)) << ',' << case_letter(e.label) << ','
       << detail::bool_text(e.int_ok) << ',' << detail::bool_text(e.int_inf_ok) << ','
       << detail::bool_text(e.half_int_ok) << ',' << detail::bool_text(e.half_int_inf_ok) << ','
       << (e.cusps ? std::to_string(*e.cusps) : "n/a") << ','
       << (e.arithmetic ? (e.arithmetic->arithmetic ? "true" : "false") : "n/a") << ','
       << detail::csv_field(e.arithmetic ? detail::witnesses_text(*e.arithmetic) : "n/a") << "\n";
  }
  if (!os) throw Error(ErrorKind::ResourceCap, "failed writing census report");
}

inline nlohmann::ordered_json census_json(const std::vector<CensusEntry>& entries) {
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  auto opt_bool = [](std::optional<bool> b) -> ordered_json {
    return b ? ordered_json(*b) : ordered_json("n/a");
  };
  for (const auto& e : entries) {
    ordered_json row;
    ordered_json w = ordered_json::array();
    for (long d : e.numerators) w.push_back(Rational(d, e.denominator).str());
    row["weights"] = w;
    row["case"] = std::string(1, case_letter(e.label));
    row["int"] = e.int_ok;
    row["int_inf"] = opt_bool(e.int_inf_ok);
    row["half_int"] = e.half_int_ok;
    row["half_int_inf"] = opt_bool(e.half_int_inf_ok);
    row["cusps"] = e.cusps ? ordered_json(*e.cusps) : ordered_json("n/a");
    if (e.arithmetic) {
      row["arithmetic"] = e.arithmetic->arithmetic;
      ordered_json ws = ordered_json::array();
      for (const auto& x : e.arithmetic->witnesses)
        ws.push_back({{"r", x.r}, {"sum", x.sum.str()}, {"opposite_sum", x.opposite_sum.str()}});
      row["witnesses"] = ws;
      row["eigendims"] = *e.eigendims;
    } else {
      row["arithmetic"] = "n/a";
      row["witnesses"] = "n/a";
      row["eigendims"] = "n/a";
    }
    rows.push_back(std::move(row));
  }
  return {{"schema", "lauricella.census/1"}, {"entries", rows}};
}

}  // namespace lauricella
