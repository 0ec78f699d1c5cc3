#pragma once

#include <string>
#include <vector>

#include "wrank/linalg.hpp"
#include "wrank/tensor.hpp"

namespace wrank {

// Rank-one tensor: one vector per party.
struct ProductState {
  std::array<ExactVector, 3> factors;
};

struct Term {
  CRational weight{1};
  ProductState state;
};

struct Decomposition {
  Shape shape{0, 0, 0};
  std::vector<Term> terms;
};

// Product vector on the two parties remaining after a cut, kept in
// A-before-B-before-C order: left belongs to the lower-indexed party.
// Its flattening is kron(left, right), matching the unfolding column order.
struct ProductPair {
  ExactVector left;
  ExactVector right;
};

// Outcome of an exact span-containment check: every support vector is
// expressed over the spanning products, or the misses are recorded.
// A positive certificate proves rank <= spanning.size() for any tensor
// whose support basis (for some cut) equals `support`.
struct SpanCertificate {
  std::string id;
  bool verdict = false;
  std::vector<ExactVector> support;
  std::vector<ProductPair> spanning;
  // coords.at(j, m): coefficient of spanning[m] in support[j]; rows of
  // failed solves are zero.
  ExactMatrix coords;
  std::vector<int> missed;  // indices of support vectors not in the span

  int upper_bound() const { return int(spanning.size()); }
};

// Reduced-echelon basis of the span of the slice states for the given cut,
// rows ordered by pivot column.
std::vector<ExactVector> support_basis(const Tensor& t, Party traced);

// The seven products on the two remaining four-dimensional parties that
// witness rank(W tensor-squared) <= 7, built from e0, e3 and the four
// vectors P1 = e0+e1+e2, P2 = e0+e1-e2, P3 = e1+e2, P4 = e1-e2:
// (e0,e0), (e0,e3), (e3,e0), (P1,P1), (P2,P2), (P3,P3), (P4,P4).
std::vector<ProductPair> seven_product_spanning_set();

// Variant with (P3,P4) in place of (P3,P3). Does not span the support of
// the squared W state; kept for auditability.
std::vector<ProductPair> seven_product_spanning_set_printed();

SpanCertificate check_span_containment(const std::vector<ProductPair>& spanning,
                                       const std::vector<ExactVector>& support);

// support_basis + check_span_containment with an id attached.
SpanCertificate certify_tensor_span(const Tensor& t, Party traced,
                                    const std::vector<ProductPair>& spanning,
                                    std::string id);

// Turns a positive certificate into an explicit decomposition of t with
// spanning.size() or fewer terms (terms whose traced-party factor vanishes
// are dropped). Preconditions (contract_error): cert.verdict is true and
// cert.support equals support_basis(t, traced).
Decomposition decomposition_from_certificate(const Tensor& t, Party traced,
                                             const SpanCertificate& cert);

// W = |100> + |010> + |001> as three product terms.
Decomposition w_basis_decomposition();

// The certificate-derived seven-term decomposition of the squared W state.
Decomposition w2_seven_term_decomposition();

// Defective variant of the seven-term data: the same products with the
// traced-party factors attached to the wrong quadratic terms. It does not
// reproduce the tensor under any party ordering; kept as an audit fixture.
Decomposition w2_seven_term_printed();

// 2^n terms |x>|x>|x> summing to the n-fold GHZ power.
Decomposition ghz_power_decomposition(int n);

Tensor expand_decomposition(const Decomposition& d);

// perm[slot] = party whose factor moves into that slot.
Decomposition permute_parties(const Decomposition& d,
                              const std::array<int, 3>& perm);

}  // namespace wrank
