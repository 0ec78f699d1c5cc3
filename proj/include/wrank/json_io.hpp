#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "wrank/als.hpp"
#include "wrank/bounds.hpp"
#include "wrank/slocc.hpp"
#include "wrank/span_cert.hpp"
#include "wrank/tensor.hpp"

namespace wrank {

using json = nlohmann::json;

// All from_json parsers throw input_error naming the offending field.
// All to_json writers are deterministic: object keys are emitted sorted,
// tensor entries in row-major index order, rationals in canonical form.

json tensor_to_json(const Tensor& t);
json tensor_to_json(const FloatTensor& t);
Tensor exact_tensor_from_json(const json& j);
FloatTensor float_tensor_from_json(const json& j);
// "exact" or "float".
std::string tensor_mode(const json& j);

json decomposition_to_json(const Decomposition& d);
json decomposition_to_json(const FloatDecomposition& d);
Decomposition decomposition_from_json(const json& j);
FloatDecomposition float_decomposition_from_json(const json& j);
std::string decomposition_mode(const json& j);

json spanning_set_to_json(const std::vector<ProductPair>& spanning);
std::vector<ProductPair> spanning_set_from_json(const json& j);

json certificate_to_json(const SpanCertificate& cert);
SpanCertificate certificate_from_json(const json& j);

json bound_report_to_json(const BoundReport& report);
json witness_report_to_json(const WitnessReport& report);
json rate_verdict_to_json(const RateVerdict& v);
json rate_table_to_json(const std::vector<RateRow>& rows);
json minimal_m_to_json(int n, const MinimalM& m);
json verification_to_json(const VerificationResult& res);
json als_result_to_json(const AlsResult& res);
// One compact JSON object per line: {"r","residual","restart","suspicion"}.
std::string probe_rows_to_lines(const std::vector<ProbeRow>& rows);

json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);
// dump with 2-space indent and trailing newline.
std::string pretty(const json& j);

}  // namespace wrank
