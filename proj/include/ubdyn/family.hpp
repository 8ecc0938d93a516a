#pragma once

// The family pipeline for z^d + psi(c): a certificate (hypothesis, two good
// primes p < q, N = (p^2 - 1)(q^2 - 1)) bounding every exact period, and scans
// of the rational preperiodic sets over c of bounded height.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ubdyn/dynamics.hpp"
#include "ubdyn/exact_arith.hpp"
#include "ubdyn/parallel.hpp"
#include "ubdyn/primesearch.hpp"
#include "ubdyn/psi_parser.hpp"
#include "ubdyn/ratfunc.hpp"

namespace ubdyn {

class HypothesisFailure : public Error {
 public:
  explicit HypothesisFailure(HypothesisReport report)
      : Error("hypothesis_failed",
              "pole support hypothesis fails: " +
                  (report.failure_reason ? to_string(*report.failure_reason) : std::string("unknown"))),
        report_(std::move(report)) {}
  const HypothesisReport& report() const noexcept { return report_; }

 private:
  HypothesisReport report_;
};

class CertificateViolation : public Error {
 public:
  explicit CertificateViolation(const std::string& detail) : Error("certificate_violation", detail) {}
};

struct FamilyCertificate {
  unsigned long d = 2;
  RatFuncQ psi;
  HypothesisReport hypothesis;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  BigInt N;
};

/// Uses the two smallest good primes below prime_bound.
inline FamilyCertificate build_certificate(unsigned long d, const RatFuncQ& psi, std::uint64_t prime_bound,
                                           unsigned workers = 1) {
  if (d < 2) throw Error("invalid_argument", "degree must be at least 2");
  HypothesisReport hyp = check_hypothesis(psi);
  if (!hyp.passes) throw HypothesisFailure(std::move(hyp));
  const GoodPrimeReport primes = find_good_primes(*hyp.decomposition, 2, prime_bound, workers);
  if (!primes.complete) {
    throw Error("insufficient_primes", "found " + std::to_string(primes.good_primes.size()) +
                                           " good primes below " + std::to_string(prime_bound) +
                                           "; raise the prime bound");
  }
  FamilyCertificate cert{d, psi, std::move(hyp), primes.good_primes[0], primes.good_primes[1], {}};
  const BigInt p(static_cast<unsigned long>(cert.p));
  const BigInt q(static_cast<unsigned long>(cert.q));
  cert.N = (p * p - 1) * (q * q - 1);
  return cert;
}

struct ScanRow {
  Rat c;
  Rat alpha;
  std::size_t affine_count = 0;
  std::size_t total_count = 0;
  std::size_t max_period = 0;
  std::size_t max_tail = 0;
  bool has_affine_fixed_point = false;
};

struct ScanSummary {
  std::size_t rows = 0;
  std::size_t empirical_max_total = 0;
  std::size_t empirical_max_period = 0;
  /// total_count -> number of rows
  std::map<std::size_t, std::size_t> histogram;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  ScanSummary summary;
};

inline ScanRow scan_row(const FamilyCertificate& cert, const Rat& c) {
  const ProjRat value = cert.psi.eval(c);
  if (value.is_infinity()) {
    throw CertificateViolation("psi has a pole at c = " + c.to_string() + " despite a passing hypothesis");
  }
  const MapSpec m(cert.d, value.value());
  const PreperGraph g = enumerate_preperiodic(m);
  ScanRow row{c, m.alpha, g.affine_count(), g.total_count(), g.max_period(), g.max_tail(),
              !affine_fixed_points(m).empty()};
  bool graph_has_fixed = false;
  for (const auto& pt : g.points) graph_has_fixed = graph_has_fixed || (!pt.z.is_infinity() && pt.image == pt.z);
  if (graph_has_fixed != row.has_affine_fixed_point) {
    throw Error("internal", "fixed-point search disagrees with the preperiodic graph at c = " + c.to_string());
  }
  if (BigInt(static_cast<unsigned long>(row.max_period)) > cert.N) {
    throw CertificateViolation("period " + std::to_string(row.max_period) + " exceeds N = " + cert.N.get_str() +
                               " at c = " + c.to_string());
  }
  return row;
}

/// Every c with height <= height_bound, in (height, numerator) order. Rows are
/// computed concurrently into fixed slots, so output does not depend on workers.
inline ScanResult scan_family(const FamilyCertificate& cert, long height_bound, unsigned workers = 1) {
  if (height_bound < 1) throw Error("invalid_argument", "height bound must be at least 1");
  const auto cs = rationals_of_height_at_most(height_bound);
  ScanResult res;
  res.rows.resize(cs.size());
  parallel_for(cs.size(), workers, [&](std::size_t i) { res.rows[i] = scan_row(cert, cs[i]); });
  res.summary.rows = res.rows.size();
  for (const auto& r : res.rows) {
    res.summary.empirical_max_total = std::max(res.summary.empirical_max_total, r.total_count);
    res.summary.empirical_max_period = std::max(res.summary.empirical_max_period, r.max_period);
    ++res.summary.histogram[r.total_count];
  }
  return res;
}

inline std::string scan_csv(const ScanResult& res) {
  std::ostringstream os;
  os << "c,alpha,affine_count,total_count,max_period,max_tail,has_affine_fixed_point\n";
  for (const auto& r : res.rows) {
    os << r.c.to_string() << ',' << r.alpha.to_string() << ',' << r.affine_count << ',' << r.total_count << ','
       << r.max_period << ',' << r.max_tail << ',' << (r.has_affine_fixed_point ? "true" : "false") << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// The example family z^2 + 2/(t^2 + 8)

inline const char* const kExamplePsi = "2/(t^2+8)";

struct ExampleRecord {
  long height_bound = 0;
  std::size_t checked = 0;
  std::size_t square_count = 0;       // c with c^2 + 8 a rational square
  std::size_t fixed_point_count = 0;  // c with an affine rational fixed point
  /// c where exactly one side of (c^2 + 8 square) <=> (fixed point) holds.
  std::vector<Rat> equivalence_failures;
  /// c with c^2 + 8 square but no fixed point.
  std::vector<Rat> implication_failures;
  /// Points on x^2 + 8 = y^2 from chords through (1, 3).
  std::size_t parametrized_target = 0;
  std::vector<Rat> parametrized;
  std::vector<Rat> parametrized_failures;
};

/// Second intersection of the line of slope s through (1, 3) with x^2 + 8 = y^2.
inline Rat chord_point(const Rat& slope) {
  const Rat s2 = slope * slope;
  return (s2 - Rat(6) * slope + Rat(1)) / (s2 - Rat(1));
}

inline ExampleRecord verify_example(long height_bound) {
  if (height_bound < 1) throw Error("invalid_argument", "height bound must be at least 1");
  const RatFuncQ psi = parse_psi(kExamplePsi);
  auto has_fixed_point = [&](const Rat& c) {
    return !affine_fixed_points(MapSpec(2, psi.eval(c).value())).empty();
  };
  ExampleRecord rec;
  rec.height_bound = height_bound;
  for (const Rat& c : rationals_of_height_at_most(height_bound)) {
    ++rec.checked;
    const bool square = is_square_rat(c * c + Rat(8)).has_value();
    const bool fixed = has_fixed_point(c);
    rec.square_count += square ? 1 : 0;
    rec.fixed_point_count += fixed ? 1 : 0;
    if (square != fixed) rec.equivalence_failures.push_back(c);
    if (square && !fixed) rec.implication_failures.push_back(c);
  }

  rec.parametrized_target = static_cast<std::size_t>(height_bound);
  std::set<Rat> found;
  for (long h = 1; found.size() < rec.parametrized_target; ++h) {
    for (const Rat& s : rationals_of_height_at_most(h)) {
      if (rat_height(s) != BigInt(h) || s == Rat(1) || s == Rat(-1)) continue;
      const Rat c = chord_point(s);
      if (!found.insert(c).second) continue;
      rec.parametrized.push_back(c);
      if (!is_square_rat(c * c + Rat(8)) || !has_fixed_point(c)) rec.parametrized_failures.push_back(c);
      if (found.size() == rec.parametrized_target) break;
    }
  }
  return rec;
}

}  // namespace ubdyn
