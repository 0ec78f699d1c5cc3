#pragma once

#include <string>
#include <vector>

#include "wrank/rational.hpp"

namespace wrank {

// One exact integer comparison backing a convertibility statement.
// verdict means: lhs <relation> rhs holds.
struct RateVerdict {
  std::string kind;  // "theorem-b-sufficient" | "theorem-c-necessary" | "rank-comparison"
  int m = 0;
  int n = 0;
  bool verdict = false;
  Integer lhs;
  Integer rhs;
  std::string relation;  // ">=" or "<="
};

// Sufficient condition for converting m GHZ copies into n W copies:
// 4^m >= 7^(n+1).
RateVerdict theorem_b_sufficient(int m, int n);

// Necessary condition for converting m W copies into n GHZ copies:
// 2^n <= the closed-form rank upper bound for m W copies. A false verdict
// excludes the transformation.
RateVerdict theorem_c_necessary(int m, int n);

// Sharper sufficient condition for GHZ^m -> target: 2^m >= rank_upper_bound,
// where rank_upper_bound is any proven rank upper bound for the target.
RateVerdict ghz_feasible_by_rank(int m, const Integer& rank_upper_bound);

struct RateRow {
  int m = 0;
  int n = 0;
  RateVerdict theorem_b;   // GHZ^m -> W^n, closed form
  RateVerdict rank_based;  // GHZ^m -> W^n via 2^m vs the W^n upper bound
  RateVerdict theorem_c;   // W^m -> GHZ^n necessity
};

std::vector<RateRow> rate_table(int max_m, int max_n);

struct MinimalM {
  int rank_based = 0;  // smallest m with 2^m >= upper bound for n W copies
  int theorem_b = 0;   // smallest m with 4^m >= 7^(n+1)
};

// Smallest GHZ copy counts sufficient for n W copies under each criterion.
MinimalM minimal_m_for_w_power(int n);

}  // namespace wrank
