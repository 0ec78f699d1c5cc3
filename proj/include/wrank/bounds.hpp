#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wrank/span_cert.hpp"
#include "wrank/tensor.hpp"

namespace wrank {

struct BoundEntry {
  Integer value;
  // One of: "lemma2-closed-form", "theorem-a-closed-form", "flattening",
  // "span-certificate:<id>".
  std::string provenance;
};

struct BoundReport {
  std::string state;
  std::vector<BoundEntry> lower;
  std::vector<BoundEntry> upper;
  // Present iff the best lower and upper bounds coincide.
  std::optional<Integer> resolved;
};

// 2^(n+1) - 1.
Integer w_power_lower_bound(int n);

// 7^(n/2) for even n, 3 * 7^((n-1)/2) for odd n.
Integer w_power_upper_bound(int n);

// Largest of the three single-party Schmidt ranks; a rank lower bound.
int flattening_lower_bound(const Tensor& t);

struct WitnessFailure {
  std::vector<long> coeffs;
  int rank = 0;
};

// Samples integer coefficient vectors and checks that the perturbed
// maximally-mixing combination keeps full Schmidt rank 2^n. Coefficients
// are drawn uniformly from [-9, 9]; trial k uses generator seed `seed + k`.
struct WitnessReport {
  int n = 0;
  int trials = 0;
  unsigned long long seed = 0;
  std::vector<WitnessFailure> failures;
  bool verdict = false;
};

WitnessReport lemma2_witness_check(int n, int trials, unsigned long long seed);

BoundReport w_power_report(int n);
BoundReport ghz_power_report(int n);

void finalize_report(BoundReport& report);

}  // namespace wrank
