#include "wrank/slocc.hpp"

#include "wrank/bounds.hpp"
#include "wrank/errors.hpp"

namespace wrank {

namespace {

void check_copy_count(int value, const char* what) {
  if (value < 1) {
    throw input_error(std::string(what) + " must be >= 1");
  }
}

}  // namespace

RateVerdict theorem_b_sufficient(int m, int n) {
  check_copy_count(m, "m");
  check_copy_count(n, "n");
  RateVerdict v;
  v.kind = "theorem-b-sufficient";
  v.m = m;
  v.n = n;
  v.lhs = integer_pow(4, (unsigned long)m);
  v.rhs = integer_pow(7, (unsigned long)(n + 1));
  v.relation = ">=";
  v.verdict = v.lhs >= v.rhs;
  return v;
}

RateVerdict theorem_c_necessary(int m, int n) {
  check_copy_count(m, "m");
  check_copy_count(n, "n");
  RateVerdict v;
  v.kind = "theorem-c-necessary";
  v.m = m;
  v.n = n;
  v.lhs = integer_pow(2, (unsigned long)n);
  v.rhs = w_power_upper_bound(m);
  v.relation = "<=";
  v.verdict = v.lhs <= v.rhs;
  return v;
}

RateVerdict ghz_feasible_by_rank(int m, const Integer& rank_upper_bound) {
  check_copy_count(m, "m");
  if (rank_upper_bound < 1) {
    throw input_error("rank upper bound must be >= 1");
  }
  RateVerdict v;
  v.kind = "rank-comparison";
  v.m = m;
  v.lhs = integer_pow(2, (unsigned long)m);
  v.rhs = rank_upper_bound;
  v.relation = ">=";
  v.verdict = v.lhs >= v.rhs;
  return v;
}

std::vector<RateRow> rate_table(int max_m, int max_n) {
  check_copy_count(max_m, "max-m");
  check_copy_count(max_n, "max-n");
  std::vector<RateRow> rows;
  rows.reserve(std::size_t(max_m) * max_n);
  for (int m = 1; m <= max_m; ++m) {
    for (int n = 1; n <= max_n; ++n) {
      RateRow row;
      row.m = m;
      row.n = n;
      row.theorem_b = theorem_b_sufficient(m, n);
      row.rank_based = ghz_feasible_by_rank(m, w_power_upper_bound(n));
      row.rank_based.n = n;
      row.theorem_c = theorem_c_necessary(m, n);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

MinimalM minimal_m_for_w_power(int n) {
  check_copy_count(n, "n");
  MinimalM out;
  const Integer ub = w_power_upper_bound(n);
  Integer pow2 = 2;
  out.rank_based = 1;
  while (pow2 < ub) {
    pow2 *= 2;
    ++out.rank_based;
  }
  const Integer target = integer_pow(7, (unsigned long)(n + 1));
  Integer pow4 = 4;
  out.theorem_b = 1;
  while (pow4 < target) {
    pow4 *= 4;
    ++out.theorem_b;
  }
  return out;
}

}  // namespace wrank
