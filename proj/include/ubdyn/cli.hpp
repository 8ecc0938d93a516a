#pragma once

// The `ubdyn` command line: one binary, one subcommand per pipeline stage.
// Arbitrary-precision values are emitted as decimal strings; machine-sized
// counts, degrees and primes as JSON integers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ubdyn/dynamics.hpp"
#include "ubdyn/family.hpp"
#include "ubdyn/primesearch.hpp"
#include "ubdyn/psi_parser.hpp"
#include "ubdyn/ratfunc.hpp"

namespace ubdyn {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kHypothesis = 2;
inline constexpr int kViolation = 3;
}  // namespace exit_code

using Json = nlohmann::ordered_json;

inline Json to_json(const HomogPoly& form) {
  Json terms = Json::array();
  for (const auto& [coeff, xdeg, ydeg] : form.terms()) terms.push_back(Json::array({coeff.get_str(), xdeg, ydeg}));
  return terms;
}

inline Json to_json(const IrreducibilityResult& r) {
  Json j;
  j["irreducible"] = r.irreducible;
  j["method"] = to_string(r.method);
  j["primes"] = r.primes;
  j["searched_degrees"] = r.searched_degrees;
  Json factors = Json::array();
  for (const auto& f : r.factors) factors.push_back(f.to_string());
  j["factors"] = factors;
  return j;
}

inline Json to_json(const RatFuncQ& psi, const HypothesisReport& rep) {
  Json j;
  j["psi"] = psi.to_string();
  if (rep.decomposition) {
    const auto& d = *rep.decomposition;
    j["A"] = d.A.get_str();
    j["G"] = to_json(d.G);
    j["H"] = to_json(d.H);
    j["n"] = d.n;
  } else {
    j["A"] = nullptr;
    j["G"] = nullptr;
    j["H"] = nullptr;
    j["n"] = nullptr;
  }
  j["passes"] = rep.passes;
  j["failure_reason"] = rep.failure_reason ? Json(to_string(*rep.failure_reason)) : Json(nullptr);
  if (rep.decomposition) j["irreducibility"] = to_json(rep.decomposition->irreducibility);
  return j;
}

inline Json to_json(const GoodPrimeReport& r) {
  Json j;
  j["scanned_bound"] = r.scanned_bound;
  j["good_primes"] = r.good_primes;
  j["skipped_degenerate"] = r.skipped_degenerate;
  j["eligible_scanned"] = r.eligible_scanned;
  j["empirical_density"] = r.empirical_density.to_string();
  j["complete"] = r.complete;
  return j;
}

inline Json to_json(const PreperGraph& g) {
  Json j;
  j["d"] = g.map.d;
  j["alpha"] = g.map.alpha.to_string();
  Json pts = Json::array();
  for (const auto& p : g.points) {
    pts.push_back({{"z", p.z.to_string()}, {"tail", p.tail}, {"period", p.period}, {"image", p.image.to_string()}});
  }
  j["points"] = pts;
  j["affine_count"] = g.affine_count();
  j["total_count"] = g.total_count();
  j["max_period"] = g.max_period();
  j["certificates"] = {{"denominator", g.denominator ? g.denominator->get_str() : std::string("none")},
                       {"escape_radius", g.radius.to_string()}};
  return j;
}

inline Json to_json(const FamilyCertificate& c) {
  return {{"d", c.d},
          {"psi", c.psi.to_string()},
          {"hypothesis", to_json(c.psi, c.hypothesis)},
          {"p", c.p},
          {"q", c.q},
          {"N", c.N.get_str()}};
}

inline Json to_json(const ScanRow& r) {
  return {{"c", r.c.to_string()},
          {"alpha", r.alpha.to_string()},
          {"affine_count", r.affine_count},
          {"total_count", r.total_count},
          {"max_period", r.max_period},
          {"max_tail", r.max_tail},
          {"has_affine_fixed_point", r.has_affine_fixed_point}};
}

inline Json to_json(const std::vector<Rat>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.to_string());
  return a;
}

namespace detail {

struct CliState {
  std::string psi;
  std::string psi_file;
  unsigned long d = 2;
  std::string alpha;
  long height = 0;
  std::uint64_t bound = 100;
  std::size_t count = 2;
  std::uint64_t ell = 0;
  std::string out = "json";
  unsigned workers = 0;
};

inline void write_error(std::ostream& err, const std::string& code, const std::string& detail) {
  err << Json{{"error", code}, {"detail", detail}}.dump() << '\n';
}

inline void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline void write_text(std::ostream& out, const Json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      write_text(out, *it, prefix + it.key() + ".");
    } else {
      out << prefix << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
    }
  }
}

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& detail) : Error("usage", detail) {}
};

inline RatFuncQ load_psi(const CliState& s) {
  if (!s.psi.empty() && !s.psi_file.empty()) throw UsageError("give either --psi or --psi-file, not both");
  std::string text = s.psi;
  if (!s.psi_file.empty()) {
    std::ifstream in(s.psi_file);
    if (!in) throw UsageError("cannot read " + s.psi_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  if (text.empty()) throw UsageError("--psi is required");
  return parse_psi(text);
}

inline unsigned resolve_workers(unsigned flag) {
  if (flag != 0) return flag;
  if (const char* env = std::getenv("UBDYN_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("UBDYN_WORKERS must be a positive integer, got '") + env + "'");
  }
  return available_workers();
}

inline void emit(std::ostream& out, const CliState& s, const Json& j) {
  if (s.out == "text") {
    write_text(out, j);
  } else {
    write_json(out, j);
  }
}

inline void require_format(const CliState& s, bool csv_allowed) {
  if (s.out == "json" || s.out == "text" || (csv_allowed && s.out == "csv")) return;
  throw UsageError("unsupported --out '" + s.out + "' for this subcommand");
}

}  // namespace detail

/// Runs one invocation; argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  using detail::CliState;
  CliState s;
  CLI::App app{"Uniform boundedness toolkit for families z^d + psi(c)", "ubdyn"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", s.workers, "Worker threads (default: $UBDYN_WORKERS or hardware concurrency)")
      ->check(CLI::PositiveNumber);

  auto add_psi = [&](CLI::App* sub) {
    sub->add_option("--psi", s.psi, "psi(t) as an expression in t");
    sub->add_option("--psi-file", s.psi_file, "File holding the psi expression");
  };
  auto add_out = [&](CLI::App* sub, const std::string& formats) {
    sub->add_option("--out", s.out, "Output format: " + formats);
  };

  CLI::App* analyze = app.add_subcommand("analyze-psi", "Pole decomposition and hypothesis check");
  add_psi(analyze);
  add_out(analyze, "json (default) or text");

  CLI::App* find = app.add_subcommand("find-primes", "Search for good primes");
  add_psi(find);
  find->add_option("--count", s.count, "Number of good primes")->check(CLI::PositiveNumber);
  find->add_option("--bound", s.bound, "Largest prime examined")->check(CLI::PositiveNumber);
  add_out(find, "json (default) or text");

  CLI::App* preper = app.add_subcommand("preper", "Rational preperiodic points of z^d + alpha");
  preper->add_option("--d", s.d, "Degree")->required()->check(CLI::Range(2UL, 64UL));
  preper->add_option("--alpha", s.alpha, "alpha as num/den")->required();
  add_out(preper, "json (default) or text");

  CLI::App* scan = app.add_subcommand("scan-family", "Scan z^d + psi(c) over c of bounded height");
  add_psi(scan);
  scan->add_option("--d", s.d, "Degree")->required()->check(CLI::Range(2UL, 64UL));
  scan->add_option("--height", s.height, "Height bound on c")->required()->check(CLI::PositiveNumber);
  scan->add_option("--prime-bound,--bound", s.bound, "Bound for the good-prime search")->check(CLI::PositiveNumber);
  add_out(scan, "csv (default), json or text");

  CLI::App* lemma = app.add_subcommand("verify-lemma1", "Check ell-integrality of psi(c) for one prime");
  add_psi(lemma);
  lemma->add_option("--ell", s.ell, "Prime")->required();
  lemma->add_option("--height", s.height, "Height bound on c")->required()->check(CLI::PositiveNumber);
  add_out(lemma, "json (default) or text");

  CLI::App* example = app.add_subcommand("verify-example", "Fixed points of z^2 + 2/(c^2+8)");
  example->add_option("--height", s.height, "Height bound on c")->required()->check(CLI::PositiveNumber);
  add_out(example, "json (default) or text");

  // scan-family defaults to csv, everything else to json.
  for (CLI::App* sub : {analyze, find, preper, scan, lemma, example}) {
    sub->preparse_callback([&s, sub, scan](std::size_t) { s.out = sub == scan ? "csv" : "json"; });
  }

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    detail::write_error(err, "usage", e.what());
    return exit_code::kUsage;
  }

  try {
    const unsigned workers = detail::resolve_workers(s.workers);

    if (analyze->parsed()) {
      detail::require_format(s, false);
      const RatFuncQ psi = detail::load_psi(s);
      const HypothesisReport rep = check_hypothesis(psi);
      detail::emit(out, s, to_json(psi, rep));
      return rep.passes ? exit_code::kOk : exit_code::kHypothesis;
    }

    if (find->parsed()) {
      detail::require_format(s, false);
      const RatFuncQ psi = detail::load_psi(s);
      const HypothesisReport rep = check_hypothesis(psi);
      if (!rep.passes) throw HypothesisFailure(rep);
      Json j;
      j["psi"] = psi.to_string();
      j["count"] = s.count;
      j["bound"] = s.bound;
      j.update(to_json(find_good_primes(*rep.decomposition, s.count, s.bound, workers)));
      detail::emit(out, s, j);
      return exit_code::kOk;
    }

    if (preper->parsed()) {
      detail::require_format(s, false);
      const MapSpec m(s.d, Rat::parse(s.alpha));
      EnumerationOptions opt;
      opt.workers = workers;
      detail::emit(out, s, to_json(enumerate_preperiodic(m, opt)));
      return exit_code::kOk;
    }

    if (scan->parsed()) {
      detail::require_format(s, true);
      const RatFuncQ psi = detail::load_psi(s);
      const FamilyCertificate cert = build_certificate(s.d, psi, s.bound, workers);
      const ScanResult res = scan_family(cert, s.height, workers);
      if (s.out == "csv") {
        out << scan_csv(res);
        return exit_code::kOk;
      }
      Json rows = Json::array();
      for (const auto& r : res.rows) rows.push_back(to_json(r));
      Json hist = Json::object();
      for (const auto& [total, n] : res.summary.histogram) hist[std::to_string(total)] = n;
      Json j;
      j["height"] = s.height;
      j["rows"] = rows;
      j["summary"] = {{"rows", res.summary.rows},
                      {"empirical_max_total", res.summary.empirical_max_total},
                      {"empirical_max_period", res.summary.empirical_max_period},
                      {"histogram", hist},
                      {"certificate", to_json(cert)}};
      detail::emit(out, s, j);
      return exit_code::kOk;
    }

    if (lemma->parsed()) {
      detail::require_format(s, false);
      require_word_prime(s.ell);
      const RatFuncQ psi = detail::load_psi(s);
      const HypothesisReport rep = check_hypothesis(psi);
      if (!rep.passes) throw HypothesisFailure(rep);
      const Lemma1Record rec = verify_lemma1(psi, *rep.decomposition, s.ell, s.height);
      Json j;
      j["psi"] = psi.to_string();
      j["ell"] = rec.ell;
      j["ell_is_good"] = classify_prime(*rep.decomposition, s.ell) == PrimeStatus::Good;
      j["height"] = rec.height_bound;
      j["checked"] = rec.checked;
      j["violations"] = rec.violations;
      j["witnesses"] = to_json(rec.witnesses);
      detail::emit(out, s, j);
      if (rec.violations == 0) return exit_code::kOk;
      detail::write_error(err, "certificate_violation",
                          std::to_string(rec.violations) + " values of c violate ell-integrality, first c = " +
                              rec.witnesses.front().to_string());
      return exit_code::kViolation;
    }

    if (example->parsed()) {
      detail::require_format(s, false);
      const ExampleRecord rec = verify_example(s.height);
      Json j;
      j["psi"] = kExamplePsi;
      j["height"] = rec.height_bound;
      j["checked"] = rec.checked;
      j["square_count"] = rec.square_count;
      j["fixed_point_count"] = rec.fixed_point_count;
      j["equivalence_failures"] = to_json(rec.equivalence_failures);
      j["implication_failures"] = to_json(rec.implication_failures);
      j["parametrized"] = {{"seed", "(1,3)"},
                           {"target", rec.parametrized_target},
                           {"found", rec.parametrized.size()},
                           {"failures", to_json(rec.parametrized_failures)}};
      detail::emit(out, s, j);
      if (rec.equivalence_failures.empty() && rec.implication_failures.empty() && rec.parametrized_failures.empty()) {
        return exit_code::kOk;
      }
      const Rat& first =
          !rec.equivalence_failures.empty() ? rec.equivalence_failures.front()
          : !rec.implication_failures.empty() ? rec.implication_failures.front()
                                              : rec.parametrized_failures.front();
      detail::write_error(err, "certificate_violation", "equivalence fails at c = " + first.to_string());
      return exit_code::kViolation;
    }
  } catch (const HypothesisFailure& e) {
    detail::write_error(err, e.code(), e.what());
    return exit_code::kHypothesis;
  } catch (const CertificateViolation& e) {
    detail::write_error(err, e.code(), e.what());
    return exit_code::kViolation;
  } catch (const BudgetExceededError& e) {
    detail::write_error(err, e.code(), e.what());
    return exit_code::kViolation;
  } catch (const Error& e) {
    detail::write_error(err, e.code(), e.what());
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace ubdyn
