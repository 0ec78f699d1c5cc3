#include "wrank/span_cert.hpp"

#include <algorithm>
#include <utility>

#include "wrank/errors.hpp"

namespace wrank {

namespace {

ExactVector basis_vec(int dim, int idx) {
  ExactVector v(dim);
  v[idx] = CRational(1);
  return v;
}

ExactVector from_ints(std::initializer_list<long> vals) {
  ExactVector v;
  v.reserve(vals.size());
  for (long x : vals) v.emplace_back(x);
  return v;
}

int pivot_index(const ExactVector& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_zero()) return int(i);
  }
  return -1;
}

std::array<int, 2> remaining_parties(Party traced) {
  switch (traced) {
    case Party::A: return {1, 2};
    case Party::B: return {0, 2};
    case Party::C: return {0, 1};
  }
  return {1, 2};
}

}  // namespace

std::vector<ExactVector> support_basis(const Tensor& t, Party traced) {
  ExactMatrix m = unfold(t, traced);
  const std::vector<int> pivots = rref_in_place(m);
  std::vector<ExactVector> basis(pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    basis[k].assign(m.data.begin() + std::size_t(k) * m.cols,
                    m.data.begin() + std::size_t(k + 1) * m.cols);
  }
  return basis;
}

std::vector<ProductPair> seven_product_spanning_set() {
  const ExactVector p1 = from_ints({1, 1, 1, 0});
  const ExactVector p2 = from_ints({1, 1, -1, 0});
  const ExactVector p3 = from_ints({0, 1, 1, 0});
  const ExactVector p4 = from_ints({0, 1, -1, 0});
  const ExactVector e0 = basis_vec(4, 0);
  const ExactVector e3 = basis_vec(4, 3);
  return {{e0, e0}, {e0, e3}, {e3, e0}, {p1, p1}, {p2, p2}, {p3, p3}, {p4, p4}};
}

std::vector<ProductPair> seven_product_spanning_set_printed() {
  std::vector<ProductPair> set = seven_product_spanning_set();
  set[5].right = from_ints({0, 1, -1, 0});
  return set;
}

SpanCertificate check_span_containment(
    const std::vector<ProductPair>& spanning,
    const std::vector<ExactVector>& support) {
  if (spanning.empty()) throw input_error("spanning set is empty");
  if (support.empty()) throw input_error("support set is empty");
  const std::size_t lf = spanning[0].left.size();
  const std::size_t rf = spanning[0].right.size();
  if (lf == 0 || rf == 0) {
    throw input_error("spanning product has an empty factor");
  }
  for (const ProductPair& p : spanning) {
    if (p.left.size() != lf || p.right.size() != rf) {
      throw input_error("spanning products have inconsistent factor sizes");
    }
  }
  const std::size_t dim = lf * rf;
  for (const ExactVector& s : support) {
    if (s.size() != dim) {
      throw input_error("support vector length does not match product size");
    }
  }

  const int m_count = int(spanning.size());
  ExactMatrix lhs(int(dim), m_count);
  for (int m = 0; m < m_count; ++m) {
    const ExactVector flat = kron(spanning[m].left, spanning[m].right);
    for (std::size_t i = 0; i < dim; ++i) lhs.at(int(i), m) = flat[i];
  }

  SpanCertificate cert;
  cert.spanning = spanning;
  cert.support = support;
  cert.coords = ExactMatrix(int(support.size()), m_count);
  for (std::size_t j = 0; j < support.size(); ++j) {
    const LinearSolve sol = solve_exact(lhs, support[j]);
    if (!sol.consistent) {
      cert.missed.push_back(int(j));
      continue;
    }
    for (int m = 0; m < m_count; ++m) cert.coords.at(int(j), m) = sol.solution[m];
  }
  cert.verdict = cert.missed.empty();
  return cert;
}

SpanCertificate certify_tensor_span(const Tensor& t, Party traced,
                                    const std::vector<ProductPair>& spanning,
                                    std::string id) {
  SpanCertificate cert =
      check_span_containment(spanning, support_basis(t, traced));
  cert.id = std::move(id);
  return cert;
}

Decomposition decomposition_from_certificate(const Tensor& t, Party traced,
                                             const SpanCertificate& cert) {
  if (!cert.verdict) {
    throw contract_error("cannot build a decomposition from a negative certificate");
  }
  if (support_basis(t, traced) != cert.support) {
    throw contract_error("certificate support does not match this tensor and cut");
  }
  const Shape& shape = t.shape();
  const auto [first, second] = remaining_parties(traced);
  for (const ProductPair& p : cert.spanning) {
    if (int(p.left.size()) != shape[first] ||
        int(p.right.size()) != shape[second]) {
      throw contract_error("spanning factor sizes do not match tensor shape");
    }
  }

  const std::vector<ExactVector> slices = slice_states(t, traced);
  const int n_slices = int(slices.size());
  const int n_support = int(cert.support.size());
  const int m_count = int(cert.spanning.size());

  ExactMatrix slice_coords(n_slices, n_support);
  for (int j = 0; j < n_support; ++j) {
    const int pivot = pivot_index(cert.support[j]);
    for (int i = 0; i < n_slices; ++i) slice_coords.at(i, j) = slices[i][pivot];
  }

  ExactMatrix weights(n_slices, m_count);
  for (int i = 0; i < n_slices; ++i)
    for (int m = 0; m < m_count; ++m) {
      CRational acc;
      for (int j = 0; j < n_support; ++j)
        acc += slice_coords.at(i, j) * cert.coords.at(j, m);
      weights.at(i, m) = acc;
    }

  Decomposition d;
  d.shape = shape;
  const int traced_idx = party_index(traced);
  for (int m = 0; m < m_count; ++m) {
    ExactVector traced_factor(n_slices);
    bool zero = true;
    for (int i = 0; i < n_slices; ++i) {
      traced_factor[i] = weights.at(i, m);
      zero = zero && traced_factor[i].is_zero();
    }
    if (zero) continue;
    Term term;
    term.state.factors[traced_idx] = std::move(traced_factor);
    term.state.factors[first] = cert.spanning[m].left;
    term.state.factors[second] = cert.spanning[m].right;
    d.terms.push_back(std::move(term));
  }
  return d;
}

Decomposition w_basis_decomposition() {
  Decomposition d;
  d.shape = {2, 2, 2};
  for (int p = 0; p < 3; ++p) {
    Term term;
    for (int k = 0; k < 3; ++k) term.state.factors[k] = basis_vec(2, k == p ? 1 : 0);
    d.terms.push_back(std::move(term));
  }
  return d;
}

Decomposition w2_seven_term_decomposition() {
  const Tensor t = tensor_power(w_state(), 2);
  const SpanCertificate cert =
      certify_tensor_span(t, Party::A, seven_product_spanning_set(), "w2-seven");
  return decomposition_from_certificate(t, Party::A, cert);
}

Decomposition w2_seven_term_printed() {
  const ExactVector p1 = from_ints({1, 1, 1, 0});
  const ExactVector p2 = from_ints({1, 1, -1, 0});
  const ExactVector p3 = from_ints({0, 1, 1, 0});
  const ExactVector p4 = from_ints({0, 1, -1, 0});
  const CRational half{Rational(1, 2)};

  Decomposition d;
  d.shape = {4, 4, 4};
  auto add = [&](CRational w, ExactVector a, ExactVector b, ExactVector c) {
    Term term;
    term.weight = std::move(w);
    term.state.factors = {std::move(a), std::move(b), std::move(c)};
    d.terms.push_back(std::move(term));
  };
  add(CRational(1), basis_vec(4, 3), basis_vec(4, 0), basis_vec(4, 0));
  add(CRational(1), basis_vec(4, 0), basis_vec(4, 3), basis_vec(4, 0));
  add(CRational(1), basis_vec(4, 0), basis_vec(4, 0), from_ints({0, 0, -1, 1}));
  add(half, p1, p1, from_ints({1, -1, -1, 0}));
  add(half, p2, p2, from_ints({-1, 1, -1, 0}));
  add(half, p3, p3, from_ints({0, 1, 1, 0}));
  add(half, p4, p4, from_ints({0, -1, 1, 0}));
  return d;
}

Decomposition ghz_power_decomposition(int n) {
  if (n < 1) throw input_error("ghz power requires n >= 1");
  const Integer dim = integer_pow(2, (unsigned long)n);
  const Integer total = dim * dim * dim;
  if (!dim.fits_sint_p() ||
      total > Integer(static_cast<unsigned long>(size_cap()))) {
    throw resource_error("ghz power " + std::to_string(n) +
                         " exceeds size cap " + std::to_string(size_cap()));
  }
  const int d2 = int(dim.get_si());
  Decomposition d;
  d.shape = {d2, d2, d2};
  for (int x = 0; x < d2; ++x) {
    Term term;
    for (int k = 0; k < 3; ++k) term.state.factors[k] = basis_vec(d2, x);
    d.terms.push_back(std::move(term));
  }
  return d;
}

Tensor expand_decomposition(const Decomposition& d) {
  Tensor t(d.shape);
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    const Term& term = d.terms[k];
    for (int p = 0; p < 3; ++p) {
      if (int(term.state.factors[p].size()) != d.shape[p]) {
        throw input_error("term " + std::to_string(k) + " party " +
                          party_name(Party(p)) +
                          " factor length does not match shape");
      }
    }
    if (term.weight.is_zero()) continue;
    const auto& fa = term.state.factors[0];
    const auto& fb = term.state.factors[1];
    const auto& fc = term.state.factors[2];
    for (int a = 0; a < d.shape[0]; ++a) {
      if (fa[a].is_zero()) continue;
      const CRational wa = term.weight * fa[a];
      for (int b = 0; b < d.shape[1]; ++b) {
        if (fb[b].is_zero()) continue;
        const CRational wab = wa * fb[b];
        for (int c = 0; c < d.shape[2]; ++c) {
          if (fc[c].is_zero()) continue;
          t.at(a, b, c) += wab * fc[c];
        }
      }
    }
  }
  return t;
}

Decomposition permute_parties(const Decomposition& d,
                              const std::array<int, 3>& perm) {
  std::array<bool, 3> seen{false, false, false};
  for (int p : perm) {
    if (p < 0 || p > 2 || seen[p]) {
      throw contract_error("permute_parties: not a permutation of {0,1,2}");
    }
    seen[p] = true;
  }
  Decomposition out;
  out.shape = {d.shape[perm[0]], d.shape[perm[1]], d.shape[perm[2]]};
  out.terms.reserve(d.terms.size());
  for (const Term& term : d.terms) {
    Term t2;
    t2.weight = term.weight;
    for (int slot = 0; slot < 3; ++slot) {
      t2.state.factors[slot] = term.state.factors[perm[slot]];
    }
    out.terms.push_back(std::move(t2));
  }
  return out;
}

}  // namespace wrank
