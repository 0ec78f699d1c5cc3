#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "wrank/span_cert.hpp"
#include "wrank/tensor.hpp"

namespace wrank {

// Knobs for the alternating least squares search. residual_target and
// blowup_threshold only feed the suspicion diagnostic; neither stops a run.
struct AlsConfig {
  int max_sweeps = 2000;
  int restarts = 8;
  unsigned long long seed = 0;
  double conv_tol = 1e-12;          // relative residual-change stop rule
  double residual_target = 1e-10;   // "converged numerically" threshold
  double regularization = 1e-12;    // ridge added to the Gram diagonal
  double blowup_threshold = 1e6;    // factor-norm threshold for suspicion

  void validate() const;  // throws input_error
};

struct FloatTerm {
  std::complex<double> weight{1.0, 0.0};
  std::array<std::vector<std::complex<double>>, 3> factors;
};

struct FloatDecomposition {
  Shape shape{0, 0, 0};
  std::vector<FloatTerm> terms;
};

FloatDecomposition to_float(const Decomposition& d);
FloatTensor expand_decomposition(const FloatDecomposition& d);

struct VerificationResult {
  bool exact_mode = false;
  bool ok = false;
  // Frobenius norm of (expansion - target); exact in exact mode via
  // residual_norm2, rounded for display.
  double residual = 0.0;
  Rational residual_norm2{0};
  // Lexicographically first index attaining the largest entry deviation;
  // absent when the expansion matches everywhere.
  std::optional<std::array<int, 3>> worst_entry;
  CRational worst_value_exact;
  std::complex<double> worst_value{0.0, 0.0};
};

// Entrywise exact comparison; ok iff the expansion reproduces t exactly.
VerificationResult verify_decomposition(const Tensor& t, const Decomposition& d);

// Floating comparison; ok iff the Frobenius residual is <= tol.
VerificationResult verify_decomposition(const FloatTensor& t,
                                        const FloatDecomposition& d,
                                        double tol);

struct AlsResult {
  FloatDecomposition best;
  double residual = 0.0;
  double max_factor_norm = 0.0;
  // residual < residual_target while max_factor_norm > blowup_threshold:
  // the signature of chasing a limit of rank-r surrogates rather than an
  // actual rank-r decomposition. Diagnostic, never a certificate.
  bool suspicion = false;
  int restart = -1;  // index of the winning restart
  int sweeps = 0;    // sweeps the winning restart used
  std::vector<double> trajectory;  // winning restart's residual per sweep
};

// Multi-restart ALS fit of a rank-`rank` model. Restart k draws its factors
// from a generator seeded with (cfg.seed, k); restarts run concurrently and
// the reduction is deterministic (best residual, ties to the lowest index).
AlsResult als_search(const FloatTensor& t, int rank, const AlsConfig& cfg);
AlsResult als_search(const Tensor& t, int rank, const AlsConfig& cfg);

// Single ALS run initialized from `start` (weights folded into the first
// factor); otherwise behaves like als_search.
AlsResult warm_start_search(const FloatTensor& t,
                            const FloatDecomposition& start,
                            const AlsConfig& cfg);

struct ProbeRow {
  int r = 0;
  double residual = 0.0;
  bool suspicion = false;
  int restart = -1;
  double max_factor_norm = 0.0;
};

// als_search for every rank 1..max_rank. Non-certifying: a small residual
// here proves nothing; only exact verification certifies a rank.
std::vector<ProbeRow> numeric_rank_probe(const FloatTensor& t, int max_rank,
                                         const AlsConfig& cfg);

}  // namespace wrank
