#include "wrank/als.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

#include "wrank/errors.hpp"

namespace wrank {

void AlsConfig::validate() const {
  if (max_sweeps < 1) throw input_error("max_sweeps must be >= 1");
  if (restarts < 1) throw input_error("restarts must be >= 1");
  if (conv_tol <= 0) throw input_error("conv_tol must be positive");
  if (residual_target <= 0) throw input_error("residual_target must be positive");
  if (regularization <= 0) throw input_error("regularization must be positive");
  if (blowup_threshold <= 0) throw input_error("blowup_threshold must be positive");
}

FloatDecomposition to_float(const Decomposition& d) {
  FloatDecomposition out;
  out.shape = d.shape;
  out.terms.reserve(d.terms.size());
  for (const Term& term : d.terms) {
    FloatTerm ft;
    ft.weight = {term.weight.re.get_d(), term.weight.im.get_d()};
    for (int p = 0; p < 3; ++p) {
      ft.factors[p].reserve(term.state.factors[p].size());
      for (const CRational& z : term.state.factors[p]) {
        ft.factors[p].push_back({z.re.get_d(), z.im.get_d()});
      }
    }
    out.terms.push_back(std::move(ft));
  }
  return out;
}

FloatTensor expand_decomposition(const FloatDecomposition& d) {
  FloatTensor t(d.shape);
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    const FloatTerm& term = d.terms[k];
    for (int p = 0; p < 3; ++p) {
      if (int(term.factors[p].size()) != d.shape[p]) {
        throw input_error("term " + std::to_string(k) + " party " +
                          party_name(Party(p)) +
                          " factor length does not match shape");
      }
    }
    for (int a = 0; a < d.shape[0]; ++a) {
      const std::complex<double> wa = term.weight * term.factors[0][a];
      if (wa == std::complex<double>{}) continue;
      for (int b = 0; b < d.shape[1]; ++b) {
        const std::complex<double> wab = wa * term.factors[1][b];
        if (wab == std::complex<double>{}) continue;
        for (int c = 0; c < d.shape[2]; ++c) {
          t.at(a, b, c) += wab * term.factors[2][c];
        }
      }
    }
  }
  return t;
}

VerificationResult verify_decomposition(const Tensor& t,
                                        const Decomposition& d) {
  if (t.shape() != d.shape) {
    throw input_error("decomposition shape does not match target");
  }
  const Tensor expanded = expand_decomposition(d);
  VerificationResult res;
  res.exact_mode = true;
  Rational worst{0};
  for (int a = 0; a < t.shape()[0]; ++a)
    for (int b = 0; b < t.shape()[1]; ++b)
      for (int c = 0; c < t.shape()[2]; ++c) {
        const CRational diff = expanded.at(a, b, c) - t.at(a, b, c);
        if (diff.is_zero()) continue;
        const Rational mag = diff.norm2();
        res.residual_norm2 += mag;
        if (mag > worst) {
          worst = mag;
          res.worst_entry = {{a, b, c}};
          res.worst_value_exact = diff;
        }
      }
  res.ok = res.residual_norm2 == 0;
  res.residual = std::sqrt(res.residual_norm2.get_d());
  res.worst_value = {res.worst_value_exact.re.get_d(),
                     res.worst_value_exact.im.get_d()};
  return res;
}

VerificationResult verify_decomposition(const FloatTensor& t,
                                        const FloatDecomposition& d,
                                        double tol) {
  if (tol < 0) throw input_error("tolerance must be nonnegative");
  if (t.shape != d.shape) {
    throw input_error("decomposition shape does not match target");
  }
  const FloatTensor expanded = expand_decomposition(d);
  VerificationResult res;
  res.exact_mode = false;
  double total = 0.0;
  double worst = 0.0;
  for (int a = 0; a < t.shape[0]; ++a)
    for (int b = 0; b < t.shape[1]; ++b)
      for (int c = 0; c < t.shape[2]; ++c) {
        const std::complex<double> diff = expanded.at(a, b, c) - t.at(a, b, c);
        const double mag = std::norm(diff);
        total += mag;
        if (mag > worst) {
          worst = mag;
          res.worst_entry = {{a, b, c}};
          res.worst_value = diff;
        }
      }
  res.residual = std::sqrt(total);
  res.ok = res.residual <= tol;
  return res;
}

namespace {

using Mat = Eigen::MatrixXcd;

struct RunOutcome {
  Mat a, b, c;
  double residual = 0.0;
  double max_factor_norm = 0.0;
  int sweeps = 0;
  std::vector<double> trajectory;
};

double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

std::complex<double> standard_gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Mat random_factor(int rows, int cols, std::mt19937_64& rng) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = standard_gaussian(rng);
  return m;
}

// Row-wise Khatri-Rao product: row (i * y.rows() + j) = x.row(i) .* y.row(j),
// matching the unfolding column order.
Mat khatri_rao(const Mat& x, const Mat& y) {
  Mat z(x.rows() * y.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < y.rows(); ++j)
      z.row(i * y.rows() + j) = x.row(i).cwiseProduct(y.row(j));
  return z;
}

std::array<Mat, 3> unfoldings(const FloatTensor& t) {
  const int dA = t.shape[0], dB = t.shape[1], dC = t.shape[2];
  Mat t0(dA, dB * dC), t1(dB, dA * dC), t2(dC, dA * dB);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b)
      for (int c = 0; c < dC; ++c) {
        const std::complex<double> v = t.at(a, b, c);
        t0(a, b * dC + c) = v;
        t1(b, a * dC + c) = v;
        t2(c, a * dB + b) = v;
      }
  return {std::move(t0), std::move(t1), std::move(t2)};
}

// Solves X * (G^T + eps I) = M for X given Hermitian G.
Mat ridge_solve(const Mat& m, const Mat& g, double eps) {
  Mat lhs = g;
  lhs.diagonal().array() += eps;
  return lhs.llt().solve(m.transpose()).transpose();
}

void rebalance(Mat& a, Mat& b, Mat& c) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double na = a.col(j).norm();
    const double nb = b.col(j).norm();
    const double nc = c.col(j).norm();
    if (na == 0.0 || nb == 0.0 || nc == 0.0) continue;
    const double g = std::cbrt(na * nb * nc);
    a.col(j) *= g / na;
    b.col(j) *= g / nb;
    c.col(j) *= g / nc;
  }
}

double max_column_norm(const Mat& a, const Mat& b, const Mat& c) {
  double best = 0.0;
  for (const Mat* m : {&a, &b, &c}) {
    for (Eigen::Index j = 0; j < m->cols(); ++j) {
      best = std::max(best, m->col(j).norm());
    }
  }
  return best;
}

RunOutcome run_als(const std::array<Mat, 3>& t, Mat a, Mat b, Mat c,
                   const AlsConfig& cfg) {
  RunOutcome out;
  out.trajectory.reserve(std::min(cfg.max_sweeps, 1 << 20));
  const double eps = cfg.regularization;
  double prev = -1.0;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    {
      const Mat z = khatri_rao(b, c);
      const Mat g = (b.adjoint() * b).cwiseProduct(c.adjoint() * c);
      a = ridge_solve(t[0] * z.conjugate(), g, eps);
    }
    {
      const Mat z = khatri_rao(a, c);
      const Mat g = (a.adjoint() * a).cwiseProduct(c.adjoint() * c);
      b = ridge_solve(t[1] * z.conjugate(), g, eps);
    }
    {
      const Mat z = khatri_rao(a, b);
      const Mat g = (a.adjoint() * a).cwiseProduct(b.adjoint() * b);
      c = ridge_solve(t[2] * z.conjugate(), g, eps);
    }
    rebalance(a, b, c);
    const double residual = (t[0] - a * khatri_rao(b, c).transpose()).norm();
    out.trajectory.push_back(residual);
    out.sweeps = sweep + 1;
    if (prev >= 0.0 &&
        std::abs(prev - residual) <= cfg.conv_tol * std::max(1.0, prev)) {
      break;
    }
    prev = residual;
  }
  out.residual = out.trajectory.back();
  out.max_factor_norm = max_column_norm(a, b, c);
  out.a = std::move(a);
  out.b = std::move(b);
  out.c = std::move(c);
  return out;
}

FloatDecomposition factors_to_decomposition(const Shape& shape, const Mat& a,
                                            const Mat& b, const Mat& c) {
  FloatDecomposition d;
  d.shape = shape;
  const int rank = int(a.cols());
  d.terms.resize(rank);
  for (int j = 0; j < rank; ++j) {
    FloatTerm& term = d.terms[j];
    term.factors[0].resize(shape[0]);
    term.factors[1].resize(shape[1]);
    term.factors[2].resize(shape[2]);
    for (int i = 0; i < shape[0]; ++i) term.factors[0][i] = a(i, j);
    for (int i = 0; i < shape[1]; ++i) term.factors[1][i] = b(i, j);
    for (int i = 0; i < shape[2]; ++i) term.factors[2][i] = c(i, j);
  }
  return d;
}

AlsResult finish_result(const FloatTensor& t, const AlsConfig& cfg,
                        RunOutcome outcome, int restart) {
  AlsResult res;
  res.best = factors_to_decomposition(t.shape, outcome.a, outcome.b, outcome.c);
  res.residual = outcome.residual;
  res.max_factor_norm = outcome.max_factor_norm;
  res.restart = restart;
  res.sweeps = outcome.sweeps;
  res.trajectory = std::move(outcome.trajectory);
  res.suspicion = res.residual < cfg.residual_target &&
                  res.max_factor_norm > cfg.blowup_threshold;
  return res;
}

void check_target(const FloatTensor& t) {
  if (t.data.empty()) throw input_error("target tensor is empty");
  if (t.data.size() !=
      std::size_t(t.shape[0]) * t.shape[1] * t.shape[2]) {
    throw input_error("target tensor data does not match its shape");
  }
}

}  // namespace

AlsResult als_search(const FloatTensor& t, int rank, const AlsConfig& cfg) {
  cfg.validate();
  check_target(t);
  if (rank < 1) throw input_error("rank must be >= 1");

  const std::array<Mat, 3> unfolded = unfoldings(t);
  auto run_one = [&](int k) {
    std::seed_seq seq{unsigned(cfg.seed & 0xffffffffu),
                      unsigned(cfg.seed >> 32), unsigned(k)};
    std::mt19937_64 rng(seq);
    Mat a = random_factor(t.shape[0], rank, rng);
    Mat b = random_factor(t.shape[1], rank, rng);
    Mat c = random_factor(t.shape[2], rank, rng);
    return run_als(unfolded, std::move(a), std::move(b), std::move(c), cfg);
  };

  std::vector<std::future<RunOutcome>> futures;
  futures.reserve(cfg.restarts);
  for (int k = 0; k < cfg.restarts; ++k) {
    futures.push_back(std::async(std::launch::async, run_one, k));
  }
  std::vector<RunOutcome> outcomes;
  outcomes.reserve(cfg.restarts);
  for (auto& f : futures) outcomes.push_back(f.get());

  int best = 0;
  for (int k = 1; k < cfg.restarts; ++k) {
    if (outcomes[k].residual < outcomes[best].residual) best = k;
  }
  return finish_result(t, cfg, std::move(outcomes[best]), best);
}

AlsResult als_search(const Tensor& t, int rank, const AlsConfig& cfg) {
  return als_search(to_float(t), rank, cfg);
}

AlsResult warm_start_search(const FloatTensor& t,
                            const FloatDecomposition& start,
                            const AlsConfig& cfg) {
  cfg.validate();
  check_target(t);
  if (start.terms.empty()) throw input_error("warm start has no terms");
  if (start.shape != t.shape) {
    throw input_error("warm start shape does not match target");
  }
  const int rank = int(start.terms.size());
  Mat a(t.shape[0], rank), b(t.shape[1], rank), c(t.shape[2], rank);
  for (int j = 0; j < rank; ++j) {
    const FloatTerm& term = start.terms[j];
    for (int p = 0; p < 3; ++p) {
      if (int(term.factors[p].size()) != t.shape[p]) {
        throw input_error("warm start factor length does not match shape");
      }
    }
    for (int i = 0; i < t.shape[0]; ++i)
      a(i, j) = term.weight * term.factors[0][i];
    for (int i = 0; i < t.shape[1]; ++i) b(i, j) = term.factors[1][i];
    for (int i = 0; i < t.shape[2]; ++i) c(i, j) = term.factors[2][i];
  }
  RunOutcome outcome = run_als(unfoldings(t), std::move(a), std::move(b),
                               std::move(c), cfg);
  return finish_result(t, cfg, std::move(outcome), 0);
}

std::vector<ProbeRow> numeric_rank_probe(const FloatTensor& t, int max_rank,
                                         const AlsConfig& cfg) {
  if (max_rank < 1) throw input_error("max rank must be >= 1");
  std::vector<ProbeRow> rows;
  rows.reserve(max_rank);
  for (int r = 1; r <= max_rank; ++r) {
    const AlsResult res = als_search(t, r, cfg);
    rows.push_back(
        {r, res.residual, res.suspicion, res.restart, res.max_factor_norm});
  }
  return rows;
}

}  // namespace wrank
