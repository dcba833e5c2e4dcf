#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lauricella/report.hpp"
#include "lauricella/scanner.hpp"

using namespace lauricella;

namespace {

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string piece;
    while (std::getline(ss, piece, ','))
      if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

std::vector<double> parse_points(const std::string& text) {
  std::vector<double> xs;
  for (const auto& piece : split_commas({text})) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != piece.size()) throw Error(ErrorKind::Parse, "bad point '" + piece + "'");
    xs.push_back(x);
  }
  return xs;
}

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Validation, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

void print_conditions(const ConditionReport& c, const char* name) {
  std::cout << "  " << name << ": int " << (c.int_ok ? "yes" : "no") << ", half-int "
            << (c.half_int_ok ? "yes" : "no") << "\n";
}

void print_report(const AnalysisReport& r) {
  std::cout << "weights     ";
  for (std::size_t k = 0; k < r.weights.size(); ++k) std::cout << (k ? "," : "") << r.weights[k];
  std::cout << "\ntotal       " << r.total << "  (mu_inf = " << r.complement << ")\n";
  std::cout << "case        " << to_string(r.label) << "\n";
  std::cout << "conditions\n";
  print_conditions(r.finite, "finite          ");
  if (auto* c = std::get_if<ConditionReport>(&r.with_infinity)) print_conditions(*c, "include-infinity");
  if (auto* c = std::get_if<std::vector<std::vector<std::size_t>>>(&r.cusps))
    std::cout << "cusps       " << c->size() << "\n";
  if (auto* a = std::get_if<ArithmeticityReport>(&r.arithmetic)) {
    std::cout << "arithmetic  " << (a->arithmetic ? "yes" : "no");
    for (const auto& w : a->witnesses) std::cout << "  [r=" << w.r << ": " << w.sum << ", " << w.opposite_sum << "]";
    std::cout << "\n";
  }
  std::cout << "gram        dim " << r.gram.dimension << ", signature " << r.gram.signature.str() << "\n";
  if (auto* e = std::get_if<EpsilonSummary>(&r.epsilon))
    std::cout << "eps-gram    statement " << e->statement.str() << ", proof " << e->proof.str() << "\n";
  for (const auto& g : r.generators)
    std::cout << "M_" << g.k << "         pair sum " << g.pair_sum << ", eigenvalue exp(2 pi i " << g.eigenvalue_turns
              << "), order " << (g.order ? std::to_string(*g.order) : "infinite")
              << (g.preserves_form ? ", preserves H" : ", DOES NOT preserve H") << "\n";
  if (auto* d = std::get_if<std::vector<long>>(&r.eigendims)) {
    std::cout << "eigendims  ";
    for (long x : *d) std::cout << " " << x;
    std::cout << "\n";
  }
  if (auto* g = std::get_if<long>(&r.genus)) std::cout << "genus       " << *g << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lauricella hypergeometric monodromy toolkit"};
  app.require_subcommand(1);

  std::string weights, input, points, out;
  bool exact = false, as_json = false, closure = false;
  int nodes = 64;
  std::size_t bound = 100000, n = 1;
  long max_denom = 12;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::string> filters;

  auto* analyze_cmd = app.add_subcommand("analyze", "classify a weight system and report its invariants");
  auto* w_opt = analyze_cmd->add_option("-w,--weights", weights, "comma-separated rationals, e.g. 3/12,3/12,3/12,7/12");
  analyze_cmd->add_option("--input", input, "re-ingest a JSON report (- for stdin)")->excludes(w_opt);
  analyze_cmd->add_flag("--exact", exact, "include exact cyclotomic coefficients");
  analyze_cmd->add_flag("--json", as_json, "emit JSON");

  auto* periods_cmd = app.add_subcommand("periods", "evaluate Lauricella periods at a configuration");
  periods_cmd->add_option("-w,--weights", weights)->required();
  periods_cmd->add_option("--points", points, "real points z_0 < ... < z_n")->required();
  periods_cmd->add_option("--nodes", nodes)->check(CLI::Range(2, 4096));
  periods_cmd->add_flag("--json", as_json);

  auto* mono_cmd = app.add_subcommand("monodromy", "exact monodromy generators");
  mono_cmd->add_option("-w,--weights", weights)->required();
  mono_cmd->add_flag("--closure", closure, "enumerate the generated group");
  mono_cmd->add_option("--bound", bound, "element bound for --closure");
  mono_cmd->add_flag("--exact", exact);
  mono_cmd->add_flag("--json", as_json);

  auto* scan_cmd = app.add_subcommand("scan", "enumerate weight systems with bounded denominators");
  scan_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--max-denom", max_denom)->check(CLI::Range(1L, 1000000L));
  scan_cmd->add_option("--filter", filters, "int, half-int, hyperbolic, elliptic, parabolic, nonarithmetic");
  scan_cmd->add_option("--out", out, "output file (.csv or .json); stdout CSV when absent");
  scan_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    configure_conductor_cap_from_env();

    if (*analyze_cmd) {
      AnalysisReport rep;
      if (!input.empty()) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(read_all(input));
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
        }
        rep = report_from_json(j);
      } else if (!weights.empty()) {
        rep = analyze(WeightSystem::parse(weights), exact);
      } else {
        throw Error(ErrorKind::Validation, "analyze needs --weights or --input");
      }
      if (as_json) std::cout << to_json(rep).dump(2) << "\n";
      else print_report(rep);
    } else if (*periods_cmd) {
      auto ws = WeightSystem::parse(weights);
      auto cfg = Configuration::real(parse_points(points));
      auto j = periods_json(ws, cfg, nodes);
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        for (std::size_t k = 0; k < j["F"].size(); ++k)
          std::cout << "F_" << k + 1 << " = " << j["F"][k][0].get<double>() << " + " << j["F"][k][1].get<double>()
                    << "i\n";
        std::cout << "F_inf = " << j["F_inf"].dump() << "\nresiduals " << j["residuals"].dump()
                  << "\nball_radius " << j["ball_radius"].dump() << "\n";
      }
    } else if (*mono_cmd) {
      auto ws = WeightSystem::parse(weights);
      auto gens = dehn_twist_generators(ws);
      ordered_json j;
      j["weights"] = detail::rationals_json(ws.weights());
      j["conductor"] = ambient_conductor(ws);
      ordered_json gj = ordered_json::array();
      for (const auto& g : gens) gj.push_back(generator_json(g, exact));
      j["generators"] = gj;
      if (closure) {
        auto res = group_closure(gens, bound);
        if (auto* over = std::get_if<ClosureBoundExceeded>(&res))
          throw Error(ErrorKind::ResourceCap, "group closure exceeded the bound of " + std::to_string(bound) +
                                                  " elements (explored " + std::to_string(over->explored) + ")");
        j["closure"] = {{"finite", true}, {"order", std::get<ClosureFinite>(res).order}};
      }
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& g : j["generators"]) std::cout << "M_" << g["word"][0] << " " << g["float"].dump() << "\n";
        if (closure) std::cout << "closure: finite, order " << j["closure"]["order"] << "\n";
      }
    } else if (*scan_cmd) {
      ScanOptions opt;
      opt.n = n;
      opt.max_denominator = max_denom;
      opt.threads = threads;
      for (const auto& f : split_commas(filters)) opt.filters.push_back(parse_scan_filter(f));
      auto entries = enumerate(opt);
      const bool json_out = out.size() >= 5 && out.substr(out.size() - 5) == ".json";
      if (out.empty()) {
        write_census_csv(std::cout, entries);
      } else {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw Error(ErrorKind::Validation, "cannot write '" + out + "'");
        if (json_out) os << census_json(entries).dump(2) << "\n";
        else write_census_csv(os, entries);
        std::cerr << entries.size() << " systems written to " << out << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
