#include "wrank/bounds.hpp"

#include <algorithm>
#include <random>

#include "wrank/errors.hpp"
#include "wrank/linalg.hpp"

namespace wrank {

Integer w_power_lower_bound(int n) {
  if (n < 1) throw input_error("power must be >= 1");
  return integer_pow(2, (unsigned long)(n + 1)) - 1;
}

Integer w_power_upper_bound(int n) {
  if (n < 1) throw input_error("power must be >= 1");
  if (n % 2 == 0) return integer_pow(7, (unsigned long)(n / 2));
  return 3 * integer_pow(7, (unsigned long)((n - 1) / 2));
}

int flattening_lower_bound(const Tensor& t) {
  int best = 0;
  for (Party p : {Party::A, Party::B, Party::C}) {
    best = std::max(best, schmidt_rank(t, p));
  }
  return best;
}

namespace {

// Nonzero positions of the n-fold product whose k-th factor is |00> when
// bit k of i (copy 1 = most significant bit) is 0 and |01>+|10> when it
// is 1, as a matrix on (2^n) x (2^n).
std::vector<std::pair<int, int>> witness_positions(int n, int i) {
  std::vector<std::pair<int, int>> pos{{0, 0}};
  for (int k = n - 1; k >= 0; --k) {
    const bool mixed = (i >> k) & 1;
    std::vector<std::pair<int, int>> next;
    next.reserve(pos.size() * (mixed ? 2 : 1));
    for (const auto& [r, c] : pos) {
      if (mixed) {
        next.emplace_back(r * 2 + 0, c * 2 + 1);
        next.emplace_back(r * 2 + 1, c * 2 + 0);
      } else {
        next.emplace_back(r * 2, c * 2);
      }
    }
    pos = std::move(next);
  }
  return pos;
}

}  // namespace

WitnessReport lemma2_witness_check(int n, int trials, unsigned long long seed) {
  if (n < 1) throw input_error("witness check requires n >= 1");
  if (trials < 1) throw input_error("witness check requires trials >= 1");
  const Integer entries = integer_pow(2, (unsigned long)(2 * n));
  if (entries > Integer(static_cast<unsigned long>(size_cap()))) {
    throw resource_error("witness matrix for n = " + std::to_string(n) +
                         " exceeds size cap");
  }
  const int dim = 1 << n;

  std::vector<std::vector<std::pair<int, int>>> positions(dim);
  for (int i = 0; i < dim; ++i) positions[i] = witness_positions(n, i);

  WitnessReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;

  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed + (unsigned long long)trial);
    std::vector<long> coeffs(dim - 1);
    for (long& a : coeffs) a = long(rng() % 19) - 9;

    ExactMatrix m(dim, dim);
    for (const auto& [r, c] : positions[dim - 1]) m.at(r, c) += CRational(1);
    for (int i = 0; i < dim - 1; ++i) {
      if (coeffs[i] == 0) continue;
      const CRational alpha(coeffs[i]);
      for (const auto& [r, c] : positions[i]) m.at(r, c) += alpha;
    }

    const int rank = exact_matrix_rank(std::move(m));
    if (rank != dim) report.failures.push_back({std::move(coeffs), rank});
  }
  report.verdict = report.failures.empty();
  return report;
}

void finalize_report(BoundReport& report) {
  report.resolved.reset();
  if (report.lower.empty() || report.upper.empty()) return;
  Integer best_lower = report.lower[0].value;
  for (const BoundEntry& e : report.lower) best_lower = std::max(best_lower, e.value);
  Integer best_upper = report.upper[0].value;
  for (const BoundEntry& e : report.upper) best_upper = std::min(best_upper, e.value);
  if (best_lower == best_upper) report.resolved = best_lower;
}

BoundReport w_power_report(int n) {
  if (n < 1) throw input_error("power must be >= 1");
  BoundReport report;
  report.state = "w-power-" + std::to_string(n);
  report.lower.push_back({w_power_lower_bound(n), "lemma2-closed-form"});
  report.upper.push_back({w_power_upper_bound(n), "theorem-a-closed-form"});

  const Integer entries = integer_pow(8, (unsigned long)n);
  if (entries <= Integer(static_cast<unsigned long>(size_cap()))) {
    const Tensor t = tensor_power(w_state(), n);
    report.lower.push_back(
        {Integer(flattening_lower_bound(t)), "flattening"});
    if (n == 2) {
      const SpanCertificate cert = certify_tensor_span(
          t, Party::A, seven_product_spanning_set(), "w2-seven");
      if (cert.verdict) {
        report.upper.push_back({Integer(cert.upper_bound()),
                                "span-certificate:" + cert.id});
      }
    }
  }
  finalize_report(report);
  return report;
}

BoundReport ghz_power_report(int n) {
  if (n < 1) throw input_error("power must be >= 1");
  const Integer entries = integer_pow(8, (unsigned long)n);
  if (entries > Integer(static_cast<unsigned long>(size_cap()))) {
    throw resource_error("ghz power " + std::to_string(n) +
                         " exceeds size cap");
  }
  BoundReport report;
  report.state = "ghz-power-" + std::to_string(n);
  const Tensor t = tensor_power(ghz_state(), n);
  report.lower.push_back({Integer(flattening_lower_bound(t)), "flattening"});

  const int dim = t.shape()[1];
  std::vector<ProductPair> spanning;
  spanning.reserve(dim);
  for (int x = 0; x < dim; ++x) {
    ExactVector e(dim);
    e[x] = CRational(1);
    spanning.push_back({e, e});
  }
  const std::string id = "ghz-power-" + std::to_string(n);
  const SpanCertificate cert = certify_tensor_span(t, Party::A, spanning, id);
  if (cert.verdict) {
    report.upper.push_back(
        {Integer(cert.upper_bound()), "span-certificate:" + cert.id});
  }
  finalize_report(report);
  return report;
}

}  // namespace wrank
