#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <sstream>
#include <string>

#include "doctest.h"
#include "wrank/errors.hpp"
#include "wrank/json_io.hpp"
#include "wrank/span_cert.hpp"

using namespace wrank;

namespace {

bool throws_mentioning(const std::function<void()>& f, const std::string& what) {
  try {
    f();
  } catch (const input_error& e) {
    return std::string(e.what()).find(what) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("exact tensor roundtrip is byte stable") {
  const Tensor w2 = tensor_power(w_state(), 2);
  const json j = tensor_to_json(w2);
  CHECK(j.at("mode") == "exact");
  CHECK(tensor_mode(j) == "exact");
  const std::string once = pretty(j);
  const Tensor back = exact_tensor_from_json(j);
  CHECK(back == w2);
  CHECK(pretty(tensor_to_json(back)) == once);

  // Entries are emitted sparsely in row-major order.
  const auto& entries = j.at("entries");
  REQUIRE(entries.size() == 9);
  long prev = -1;
  for (const auto& e : entries) {
    const auto& idx = e.at("idx");
    const long flat = idx[0].get<long>() * 16 + idx[1].get<long>() * 4 +
                      idx[2].get<long>();
    CHECK(flat > prev);
    prev = flat;
  }
}

TEST_CASE("float tensor roundtrip") {
  FloatTensor t;
  t.shape = {2, 2, 2};
  t.data.assign(8, 0.0);
  t.data[1] = 0.5;
  t.data[6] = -2.0;
  const json j = tensor_to_json(t);
  CHECK(tensor_mode(j) == "float");
  const FloatTensor back = float_tensor_from_json(j);
  CHECK(back.shape == t.shape);
  CHECK(back.data == t.data);
}

TEST_CASE("tensor parsing rejects malformed documents") {
  const Tensor w = w_state();
  json j = tensor_to_json(w);

  json missing = j;
  missing.erase("shape");
  CHECK(throws_mentioning([&] { exact_tensor_from_json(missing); },
                          "tensor.shape"));

  json bad_entry = j;
  bad_entry["entries"][0]["re"] = "1.5";
  CHECK(throws_mentioning([&] { exact_tensor_from_json(bad_entry); },
                          "tensor.entries[0].re"));

  json dup = j;
  dup["entries"].push_back(dup["entries"][0]);
  CHECK_THROWS_AS(exact_tensor_from_json(dup), input_error);

  json oob = j;
  oob["entries"][0]["idx"][0] = 5;
  CHECK_THROWS_AS(exact_tensor_from_json(oob), input_error);

  // Mode mismatches are rejected in both directions.
  CHECK_THROWS_AS(float_tensor_from_json(j), input_error);
  FloatTensor f = to_float(w);
  CHECK_THROWS_AS(exact_tensor_from_json(tensor_to_json(f)), input_error);
}

TEST_CASE("exact decomposition roundtrip") {
  const Decomposition seven = w2_seven_term_decomposition();
  const json j = decomposition_to_json(seven);
  const Decomposition back = decomposition_from_json(j);
  REQUIRE(back.terms.size() == seven.terms.size());
  CHECK(expand_decomposition(back) == expand_decomposition(seven));
  CHECK(pretty(decomposition_to_json(back)) == pretty(j));
}

TEST_CASE("float decomposition roundtrip") {
  const FloatDecomposition d = to_float(w_basis_decomposition());
  const json j = decomposition_to_json(d);
  const FloatDecomposition back = float_decomposition_from_json(j);
  REQUIRE(back.terms.size() == d.terms.size());
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    CHECK(back.terms[k].weight == d.terms[k].weight);
    for (int p = 0; p < 3; ++p) {
      CHECK(back.terms[k].factors[p] == d.terms[k].factors[p]);
    }
  }
}

TEST_CASE("decomposition parsing validates factors") {
  json j = decomposition_to_json(w_basis_decomposition());
  j["terms"][0]["factors"][1] = json::array({"1", "0", "0"});
  CHECK_THROWS_AS(decomposition_from_json(j), input_error);

  json no_weight = decomposition_to_json(w_basis_decomposition());
  no_weight["terms"][0].erase("weight");
  const Decomposition back = decomposition_from_json(no_weight);
  CHECK(back.terms[0].weight == CRational(Rational(1)));
}

TEST_CASE("spanning set and certificate roundtrip") {
  const std::vector<ProductPair> seven = seven_product_spanning_set();
  const json js = spanning_set_to_json(seven);
  const std::vector<ProductPair> back = spanning_set_from_json(js);
  REQUIRE(back.size() == seven.size());
  for (std::size_t m = 0; m < seven.size(); ++m) {
    CHECK(back[m].left == seven[m].left);
    CHECK(back[m].right == seven[m].right);
  }

  const Tensor w2 = tensor_power(w_state(), 2);
  const SpanCertificate cert =
      certify_tensor_span(w2, Party::A, seven, "w2-seven");
  const json jc = certificate_to_json(cert);
  CHECK(jc.at("verdict") == true);
  CHECK(jc.at("upper_bound") == 7);
  const SpanCertificate cback = certificate_from_json(jc);
  CHECK(cback.verdict);
  CHECK(cback.id == "w2-seven");
  CHECK(cback.support.size() == cert.support.size());
  CHECK(pretty(certificate_to_json(cback)) == pretty(jc));

  const SpanCertificate neg = certify_tensor_span(
      w2, Party::A, seven_product_spanning_set_printed(), "printed");
  const json jn = certificate_to_json(neg);
  CHECK(jn.at("verdict") == false);
  CHECK(jn.at("upper_bound").is_null());
  CHECK(jn.at("missed") == json::array({1, 2, 3}));
}

TEST_CASE("report serializers") {
  const json br = bound_report_to_json(w_power_report(2));
  CHECK(br.at("state") == "w-power-2");
  CHECK(br.at("resolved") == "7");
  bool saw_cert = false;
  for (const auto& e : br.at("upper")) {
    if (e.at("provenance") == "span-certificate:w2-seven") {
      saw_cert = true;
      CHECK(e.at("value") == "7");
    }
  }
  CHECK(saw_cert);

  const json ur = bound_report_to_json(w_power_report(3));
  CHECK(ur.at("resolved").is_null());

  const json wr = witness_report_to_json(lemma2_witness_check(2, 10, 1));
  CHECK(wr.at("n") == 2);
  CHECK(wr.at("trials") == 10);
  CHECK(wr.at("expected_rank") == 4);
  CHECK(wr.at("verdict") == true);
  CHECK(wr.at("failures").empty());

  const json rv = rate_verdict_to_json(theorem_b_sufficient(3, 2));
  CHECK(rv.at("verdict") == false);
  CHECK(rv.at("lhs") == "64");
  CHECK(rv.at("rhs") == "343");

  const json rt = rate_table_to_json(rate_table(2, 2));
  REQUIRE(rt.at("rows").size() == 4);
  CHECK(rt.at("rows")[0].at("m") == 1);

  const json mm = minimal_m_to_json(2, minimal_m_for_w_power(2));
  CHECK(mm.at("n") == 2);
  CHECK(mm.at("rank_based") == 3);
  CHECK(mm.at("theorem_b") == 5);
}

TEST_CASE("verification and als serializers") {
  const Tensor w2 = tensor_power(w_state(), 2);
  const json ok =
      verification_to_json(verify_decomposition(w2, w2_seven_term_decomposition()));
  CHECK(ok.at("mode") == "exact");
  CHECK(ok.at("ok") == true);
  CHECK(ok.at("residual_norm2") == "0");
  CHECK(ok.at("worst_entry").is_null());

  const json bad = verification_to_json(
      verify_decomposition(w2, w2_seven_term_printed()));
  CHECK(bad.at("ok") == false);
  CHECK(bad.at("residual_norm2") == "22");
  CHECK(bad.at("worst_entry") == json::array({0, 0, 2}));
  CHECK(bad.at("worst_value").at("re") == "-2");

  AlsConfig cfg;
  cfg.restarts = 2;
  cfg.max_sweeps = 200;
  const AlsResult res = als_search(w_state(), 2, cfg);
  const json ja = als_result_to_json(res);
  CHECK(ja.at("rank") == 2);
  CHECK(ja.at("suspicion").is_boolean());
  CHECK(ja.at("decomposition").at("terms").size() == 2);
  CHECK_FALSE(ja.contains("trajectory"));

  std::istringstream lines(
      probe_rows_to_lines(numeric_rank_probe(to_float(w_state()), 2, cfg)));
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const json row = json::parse(line);
    ++rows;
    CHECK(row.size() == 4);
    CHECK(row.at("r") == rows);
    CHECK(row.contains("residual"));
    CHECK(row.contains("suspicion"));
    CHECK(row.contains("restart"));
  }
  CHECK(rows == 2);
}

TEST_CASE("file io") {
  const std::string path = "tmp_json_io_test.json";
  save_text_file(path, pretty(tensor_to_json(w_state())));
  const json j = load_json_file(path);
  CHECK(exact_tensor_from_json(j) == w_state());
  std::remove(path.c_str());

  CHECK(throws_mentioning([] { load_json_file("no_such_file_here.json"); },
                          "no_such_file_here.json"));

  save_text_file(path, "{ not json");
  CHECK_THROWS_AS(load_json_file(path), input_error);
  std::remove(path.c_str());
}
