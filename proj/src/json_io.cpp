#include "wrank/json_io.hpp"

#include <fstream>
#include <sstream>

#include "wrank/errors.hpp"

namespace wrank {

namespace {

const json& require_field(const json& j, const char* key,
                          const std::string& ctx) {
  if (!j.is_object()) throw input_error(ctx + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw input_error(ctx + "." + key + ": missing");
  return *it;
}

int require_int(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw input_error(ctx + ": expected an integer");
  return j.get<int>();
}

double require_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw input_error(ctx + ": expected a number");
  return j.get<double>();
}

std::string require_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw input_error(ctx + ": expected a string");
  return j.get<std::string>();
}

const json& require_array(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw input_error(ctx + ": expected an array");
  return j;
}

Shape shape_from_json(const json& j, const std::string& ctx) {
  const json& arr = require_array(j, ctx);
  if (arr.size() != 3) throw input_error(ctx + ": expected three dimensions");
  Shape s;
  for (int k = 0; k < 3; ++k) {
    s[k] = require_int(arr[k], ctx + "[" + std::to_string(k) + "]");
    if (s[k] <= 0) {
      throw input_error(ctx + "[" + std::to_string(k) + "]: must be positive");
    }
  }
  return s;
}

Rational rational_from_json(const json& j, const std::string& ctx) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const input_error& e) {
      throw input_error(ctx + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw input_error(ctx + ": expected a rational string");
}

json crational_to_json(const CRational& z) {
  return json{{"re", rational_str(z.re)}, {"im", rational_str(z.im)}};
}

CRational crational_from_json(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw input_error(ctx + ": expected an object");
  CRational z;
  z.re = rational_from_json(require_field(j, "re", ctx), ctx + ".re");
  if (j.contains("im")) z.im = rational_from_json(j["im"], ctx + ".im");
  return z;
}

json complex_to_json(const std::complex<double>& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

std::complex<double> complex_from_json(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw input_error(ctx + ": expected an object");
  const double re = require_number(require_field(j, "re", ctx), ctx + ".re");
  double im = 0.0;
  if (j.contains("im")) im = require_number(j["im"], ctx + ".im");
  return {re, im};
}

json exact_vector_to_json(const ExactVector& v) {
  json arr = json::array();
  for (const CRational& z : v) arr.push_back(crational_to_json(z));
  return arr;
}

ExactVector exact_vector_from_json(const json& j, const std::string& ctx) {
  const json& arr = require_array(j, ctx);
  ExactVector v;
  v.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v.push_back(
        crational_from_json(arr[i], ctx + "[" + std::to_string(i) + "]"));
  }
  return v;
}

}  // namespace

json tensor_to_json(const Tensor& t) {
  json entries = json::array();
  const Shape& s = t.shape();
  for (int a = 0; a < s[0]; ++a)
    for (int b = 0; b < s[1]; ++b)
      for (int c = 0; c < s[2]; ++c) {
        const CRational& z = t.at(a, b, c);
        if (z.is_zero()) continue;
        entries.push_back(json{{"idx", {a, b, c}},
                               {"re", rational_str(z.re)},
                               {"im", rational_str(z.im)}});
      }
  return json{{"shape", {s[0], s[1], s[2]}},
              {"mode", "exact"},
              {"entries", std::move(entries)}};
}

json tensor_to_json(const FloatTensor& t) {
  json entries = json::array();
  for (int a = 0; a < t.shape[0]; ++a)
    for (int b = 0; b < t.shape[1]; ++b)
      for (int c = 0; c < t.shape[2]; ++c) {
        const std::complex<double> z = t.at(a, b, c);
        if (z == std::complex<double>{}) continue;
        entries.push_back(
            json{{"idx", {a, b, c}}, {"re", z.real()}, {"im", z.imag()}});
      }
  return json{{"shape", {t.shape[0], t.shape[1], t.shape[2]}},
              {"mode", "float"},
              {"entries", std::move(entries)}};
}

std::string tensor_mode(const json& j) {
  const std::string mode =
      require_string(require_field(j, "mode", "tensor"), "tensor.mode");
  if (mode != "exact" && mode != "float") {
    throw input_error("tensor.mode: expected \"exact\" or \"float\"");
  }
  return mode;
}

namespace {

std::array<int, 3> entry_idx(const json& e, const Shape& s,
                             const std::string& ctx) {
  const json& idx = require_array(require_field(e, "idx", ctx), ctx + ".idx");
  if (idx.size() != 3) throw input_error(ctx + ".idx: expected three indices");
  std::array<int, 3> out;
  for (int k = 0; k < 3; ++k) {
    out[k] = require_int(idx[k], ctx + ".idx[" + std::to_string(k) + "]");
    if (out[k] < 0 || out[k] >= s[k]) {
      throw input_error(ctx + ".idx[" + std::to_string(k) +
                        "]: out of range for shape");
    }
  }
  return out;
}

}  // namespace

Tensor exact_tensor_from_json(const json& j) {
  if (tensor_mode(j) != "exact") {
    throw input_error("tensor.mode: this operation requires mode \"exact\"");
  }
  const Shape s = shape_from_json(require_field(j, "shape", "tensor"),
                                  "tensor.shape");
  Tensor t(s);
  const json& entries =
      require_array(require_field(j, "entries", "tensor"), "tensor.entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ctx = "tensor.entries[" + std::to_string(i) + "]";
    const auto [a, b, c] = entry_idx(entries[i], s, ctx);
    if (!t.at(a, b, c).is_zero()) throw input_error(ctx + ".idx: duplicate");
    t.at(a, b, c) = crational_from_json(entries[i], ctx);
  }
  return t;
}

FloatTensor float_tensor_from_json(const json& j) {
  if (tensor_mode(j) != "float") {
    throw input_error("tensor.mode: this parser requires mode \"float\"");
  }
  const Shape s = shape_from_json(require_field(j, "shape", "tensor"),
                                  "tensor.shape");
  FloatTensor t(s);
  const json& entries =
      require_array(require_field(j, "entries", "tensor"), "tensor.entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ctx = "tensor.entries[" + std::to_string(i) + "]";
    const auto [a, b, c] = entry_idx(entries[i], s, ctx);
    if (t.at(a, b, c) != std::complex<double>{}) {
      throw input_error(ctx + ".idx: duplicate");
    }
    t.at(a, b, c) = complex_from_json(entries[i], ctx);
  }
  return t;
}

json decomposition_to_json(const Decomposition& d) {
  json terms = json::array();
  for (const Term& term : d.terms) {
    json factors = json::array();
    for (int p = 0; p < 3; ++p) {
      factors.push_back(exact_vector_to_json(term.state.factors[p]));
    }
    terms.push_back(json{{"weight", crational_to_json(term.weight)},
                         {"factors", std::move(factors)}});
  }
  return json{{"shape", {d.shape[0], d.shape[1], d.shape[2]}},
              {"mode", "exact"},
              {"terms", std::move(terms)}};
}

json decomposition_to_json(const FloatDecomposition& d) {
  json terms = json::array();
  for (const FloatTerm& term : d.terms) {
    json factors = json::array();
    for (int p = 0; p < 3; ++p) {
      json vec = json::array();
      for (const std::complex<double>& z : term.factors[p]) {
        vec.push_back(complex_to_json(z));
      }
      factors.push_back(std::move(vec));
    }
    terms.push_back(json{{"weight", complex_to_json(term.weight)},
                         {"factors", std::move(factors)}});
  }
  return json{{"shape", {d.shape[0], d.shape[1], d.shape[2]}},
              {"mode", "float"},
              {"terms", std::move(terms)}};
}

std::string decomposition_mode(const json& j) {
  if (!j.is_object()) throw input_error("decomposition: expected an object");
  if (!j.contains("mode")) return "exact";
  const std::string mode = require_string(j["mode"], "decomposition.mode");
  if (mode != "exact" && mode != "float") {
    throw input_error("decomposition.mode: expected \"exact\" or \"float\"");
  }
  return mode;
}

Decomposition decomposition_from_json(const json& j) {
  if (decomposition_mode(j) != "exact") {
    throw input_error(
        "decomposition.mode: this operation requires mode \"exact\"");
  }
  Decomposition d;
  d.shape = shape_from_json(require_field(j, "shape", "decomposition"),
                            "decomposition.shape");
  const json& terms = require_array(require_field(j, "terms", "decomposition"),
                                    "decomposition.terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string ctx = "decomposition.terms[" + std::to_string(i) + "]";
    const json& jt = terms[i];
    Term term;
    if (jt.contains("weight")) {
      term.weight = crational_from_json(jt["weight"], ctx + ".weight");
    }
    const json& factors =
        require_array(require_field(jt, "factors", ctx), ctx + ".factors");
    if (factors.size() != 3) {
      throw input_error(ctx + ".factors: expected three party factors");
    }
    for (int p = 0; p < 3; ++p) {
      term.state.factors[p] = exact_vector_from_json(
          factors[p], ctx + ".factors[" + std::to_string(p) + "]");
      if (int(term.state.factors[p].size()) != d.shape[p]) {
        throw input_error(ctx + ".factors[" + std::to_string(p) +
                          "]: length does not match shape");
      }
    }
    d.terms.push_back(std::move(term));
  }
  return d;
}

FloatDecomposition float_decomposition_from_json(const json& j) {
  if (decomposition_mode(j) != "float") {
    throw input_error(
        "decomposition.mode: this parser requires mode \"float\"");
  }
  FloatDecomposition d;
  d.shape = shape_from_json(require_field(j, "shape", "decomposition"),
                            "decomposition.shape");
  const json& terms = require_array(require_field(j, "terms", "decomposition"),
                                    "decomposition.terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string ctx = "decomposition.terms[" + std::to_string(i) + "]";
    const json& jt = terms[i];
    FloatTerm term;
    if (jt.contains("weight")) {
      term.weight = complex_from_json(jt["weight"], ctx + ".weight");
    }
    const json& factors =
        require_array(require_field(jt, "factors", ctx), ctx + ".factors");
    if (factors.size() != 3) {
      throw input_error(ctx + ".factors: expected three party factors");
    }
    for (int p = 0; p < 3; ++p) {
      const std::string fctx = ctx + ".factors[" + std::to_string(p) + "]";
      const json& vec = require_array(factors[p], fctx);
      if (int(vec.size()) != d.shape[p]) {
        throw input_error(fctx + ": length does not match shape");
      }
      term.factors[p].reserve(vec.size());
      for (std::size_t q = 0; q < vec.size(); ++q) {
        term.factors[p].push_back(complex_from_json(
            vec[q], fctx + "[" + std::to_string(q) + "]"));
      }
    }
    d.terms.push_back(std::move(term));
  }
  return d;
}

json spanning_set_to_json(const std::vector<ProductPair>& spanning) {
  json arr = json::array();
  for (const ProductPair& p : spanning) {
    arr.push_back(json{{"left", exact_vector_to_json(p.left)},
                       {"right", exact_vector_to_json(p.right)}});
  }
  return json{{"spanning", std::move(arr)}};
}

std::vector<ProductPair> spanning_set_from_json(const json& j) {
  const json& arr = require_array(require_field(j, "spanning", "spanning-set"),
                                  "spanning-set.spanning");
  std::vector<ProductPair> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string ctx = "spanning-set.spanning[" + std::to_string(i) + "]";
    ProductPair p;
    p.left = exact_vector_from_json(require_field(arr[i], "left", ctx),
                                    ctx + ".left");
    p.right = exact_vector_from_json(require_field(arr[i], "right", ctx),
                                     ctx + ".right");
    out.push_back(std::move(p));
  }
  return out;
}

json certificate_to_json(const SpanCertificate& cert) {
  json support = json::array();
  for (const ExactVector& v : cert.support) {
    support.push_back(exact_vector_to_json(v));
  }
  json spanning = json::array();
  for (const ProductPair& p : cert.spanning) {
    spanning.push_back(json{{"left", exact_vector_to_json(p.left)},
                            {"right", exact_vector_to_json(p.right)}});
  }
  json coords = json::array();
  for (int r = 0; r < cert.coords.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < cert.coords.cols; ++c) {
      row.push_back(crational_to_json(cert.coords.at(r, c)));
    }
    coords.push_back(std::move(row));
  }
  return json{{"id", cert.id},
              {"verdict", cert.verdict},
              {"upper_bound", cert.verdict ? json(cert.upper_bound()) : json()},
              {"support", std::move(support)},
              {"spanning", std::move(spanning)},
              {"coords", std::move(coords)},
              {"missed", cert.missed}};
}

SpanCertificate certificate_from_json(const json& j) {
  SpanCertificate cert;
  cert.id = require_string(require_field(j, "id", "certificate"),
                           "certificate.id");
  const json& verdict = require_field(j, "verdict", "certificate");
  if (!verdict.is_boolean()) {
    throw input_error("certificate.verdict: expected a boolean");
  }
  cert.verdict = verdict.get<bool>();
  const json& support = require_array(require_field(j, "support", "certificate"),
                                      "certificate.support");
  for (std::size_t i = 0; i < support.size(); ++i) {
    cert.support.push_back(exact_vector_from_json(
        support[i], "certificate.support[" + std::to_string(i) + "]"));
  }
  const json& spanning = require_array(
      require_field(j, "spanning", "certificate"), "certificate.spanning");
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    const std::string ctx = "certificate.spanning[" + std::to_string(i) + "]";
    ProductPair p;
    p.left = exact_vector_from_json(require_field(spanning[i], "left", ctx),
                                    ctx + ".left");
    p.right = exact_vector_from_json(require_field(spanning[i], "right", ctx),
                                     ctx + ".right");
    cert.spanning.push_back(std::move(p));
  }
  const json& coords = require_array(require_field(j, "coords", "certificate"),
                                     "certificate.coords");
  cert.coords = ExactMatrix(int(coords.size()), int(cert.spanning.size()));
  for (std::size_t r = 0; r < coords.size(); ++r) {
    const std::string ctx = "certificate.coords[" + std::to_string(r) + "]";
    const json& row = require_array(coords[r], ctx);
    if (int(row.size()) != cert.coords.cols) {
      throw input_error(ctx + ": expected one entry per spanning product");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      cert.coords.at(int(r), int(c)) = crational_from_json(
          row[c], ctx + "[" + std::to_string(c) + "]");
    }
  }
  if (j.contains("missed")) {
    const json& missed = require_array(j["missed"], "certificate.missed");
    for (std::size_t i = 0; i < missed.size(); ++i) {
      cert.missed.push_back(require_int(
          missed[i], "certificate.missed[" + std::to_string(i) + "]"));
    }
  }
  return cert;
}

json bound_report_to_json(const BoundReport& report) {
  auto entries = [](const std::vector<BoundEntry>& v) {
    json arr = json::array();
    for (const BoundEntry& e : v) {
      arr.push_back(json{{"value", e.value.get_str()},
                         {"provenance", e.provenance}});
    }
    return arr;
  };
  return json{{"state", report.state},
              {"lower", entries(report.lower)},
              {"upper", entries(report.upper)},
              {"resolved",
               report.resolved ? json(report.resolved->get_str()) : json()}};
}

json witness_report_to_json(const WitnessReport& report) {
  json failures = json::array();
  for (const WitnessFailure& f : report.failures) {
    failures.push_back(json{{"coeffs", f.coeffs}, {"rank", f.rank}});
  }
  return json{{"n", report.n},
              {"trials", report.trials},
              {"seed", report.seed},
              {"expected_rank", 1 << report.n},
              {"failures", std::move(failures)},
              {"verdict", report.verdict}};
}

json rate_verdict_to_json(const RateVerdict& v) {
  return json{{"kind", v.kind},        {"m", v.m},
              {"n", v.n},              {"verdict", v.verdict},
              {"lhs", v.lhs.get_str()}, {"rhs", v.rhs.get_str()},
              {"relation", v.relation}};
}

json rate_table_to_json(const std::vector<RateRow>& rows) {
  json arr = json::array();
  for (const RateRow& row : rows) {
    arr.push_back(json{{"m", row.m},
                       {"n", row.n},
                       {"theorem_b", rate_verdict_to_json(row.theorem_b)},
                       {"rank_based", rate_verdict_to_json(row.rank_based)},
                       {"theorem_c", rate_verdict_to_json(row.theorem_c)}});
  }
  return json{{"rows", std::move(arr)}};
}

json minimal_m_to_json(int n, const MinimalM& m) {
  return json{{"n", n},
              {"rank_based", m.rank_based},
              {"theorem_b", m.theorem_b}};
}

json verification_to_json(const VerificationResult& res) {
  json out{{"mode", res.exact_mode ? "exact" : "approx"},
           {"ok", res.ok},
           {"residual", res.residual}};
  if (res.exact_mode) {
    out["residual_norm2"] = rational_str(res.residual_norm2);
  }
  if (res.worst_entry) {
    const auto& w = *res.worst_entry;
    out["worst_entry"] = {w[0], w[1], w[2]};
    out["worst_value"] = res.exact_mode
                             ? crational_to_json(res.worst_value_exact)
                             : complex_to_json(res.worst_value);
  } else {
    out["worst_entry"] = json();
  }
  return out;
}

json als_result_to_json(const AlsResult& res) {
  return json{{"rank", int(res.best.terms.size())},
              {"residual", res.residual},
              {"max_factor_norm", res.max_factor_norm},
              {"suspicion", res.suspicion},
              {"restart", res.restart},
              {"sweeps", res.sweeps},
              {"decomposition", decomposition_to_json(res.best)}};
}

std::string probe_rows_to_lines(const std::vector<ProbeRow>& rows) {
  std::string out;
  for (const ProbeRow& row : rows) {
    const json line{{"r", row.r},
                    {"residual", row.residual},
                    {"suspicion", row.suspicion},
                    {"restart", row.restart}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot open file for writing: " + path);
  out << content;
  if (!out) throw input_error("failed writing file: " + path);
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

}  // namespace wrank
