#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wrank/als.hpp"
#include "wrank/bounds.hpp"
#include "wrank/errors.hpp"
#include "wrank/json_io.hpp"
#include "wrank/slocc.hpp"
#include "wrank/span_cert.hpp"
#include "wrank/tensor.hpp"

namespace {

using namespace wrank;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;

struct Output {
  std::string format = "json";
  std::string out;

  void emit(const json& j, const std::string& text) const {
    const std::string payload = format == "json" ? pretty(j) : text;
    if (out.empty()) {
      std::cout << payload;
    } else {
      save_text_file(out, payload);
    }
  }
};

Tensor resolve_exact_state(const std::string& name, int power) {
  Tensor base = [&] {
    if (name == "builtin:w") return w_state();
    if (name == "builtin:ghz") return ghz_state();
    if (name.rfind("builtin:", 0) == 0) {
      throw input_error("unknown builtin state \"" + name +
                        "\" (have builtin:w, builtin:ghz)");
    }
    return exact_tensor_from_json(load_json_file(name));
  }();
  return power == 1 ? std::move(base) : tensor_power(base, power);
}

FloatTensor resolve_float_target(const std::string& name, int power) {
  if (name.rfind("builtin:", 0) != 0) {
    const json j = load_json_file(name);
    if (tensor_mode(j) == "float") {
      if (power != 1) {
        throw input_error("--power requires an exact-mode tensor");
      }
      return float_tensor_from_json(j);
    }
    const Tensor t = exact_tensor_from_json(j);
    return to_float(power == 1 ? t : tensor_power(t, power));
  }
  return to_float(resolve_exact_state(name, power));
}

std::vector<ProductPair> resolve_spanning(const std::string& name) {
  if (name == "builtin:w2-seven") return seven_product_spanning_set();
  if (name == "builtin:w2-seven-printed") {
    return seven_product_spanning_set_printed();
  }
  if (name.rfind("builtin:", 0) == 0) {
    throw input_error(
        "unknown builtin spanning set \"" + name +
        "\" (have builtin:w2-seven, builtin:w2-seven-printed)");
  }
  return spanning_set_from_json(load_json_file(name));
}

Decomposition resolve_exact_decomposition(const std::string& name) {
  if (name == "builtin:w2-seven") return w2_seven_term_decomposition();
  if (name == "builtin:w2-seven-printed") return w2_seven_term_printed();
  if (name == "builtin:w-basis") return w_basis_decomposition();
  const std::string ghz_prefix = "builtin:ghz-power-";
  if (name.rfind(ghz_prefix, 0) == 0) {
    const std::string suffix = name.substr(ghz_prefix.size());
    try {
      return ghz_power_decomposition(std::stoi(suffix));
    } catch (const std::logic_error&) {
      throw input_error("bad builtin decomposition \"" + name + "\"");
    }
  }
  if (name.rfind("builtin:", 0) == 0) {
    throw input_error("unknown builtin decomposition \"" + name +
                      "\" (have builtin:w2-seven, builtin:w2-seven-printed, "
                      "builtin:w-basis, builtin:ghz-power-<n>)");
  }
  return decomposition_from_json(load_json_file(name));
}

FloatDecomposition resolve_float_decomposition(const std::string& name) {
  if (name.rfind("builtin:", 0) != 0) {
    const json j = load_json_file(name);
    if (decomposition_mode(j) == "float") {
      return float_decomposition_from_json(j);
    }
  }
  return to_float(resolve_exact_decomposition(name));
}

std::string bound_report_text(const BoundReport& r) {
  std::ostringstream os;
  os << "state: " << r.state << "\n";
  for (const BoundEntry& e : r.lower) {
    os << "  lower " << e.value.get_str() << "  (" << e.provenance << ")\n";
  }
  for (const BoundEntry& e : r.upper) {
    os << "  upper " << e.value.get_str() << "  (" << e.provenance << ")\n";
  }
  os << "  resolved: "
     << (r.resolved ? r.resolved->get_str() : std::string("unresolved"))
     << "\n";
  return os.str();
}

std::string certificate_text(const SpanCertificate& cert) {
  std::ostringstream os;
  os << "certificate " << cert.id << ": "
     << (cert.verdict ? "positive" : "negative") << "\n"
     << "  spanning products: " << cert.spanning.size() << "\n"
     << "  support vectors:   " << cert.support.size() << "\n";
  if (cert.verdict) {
    os << "  rank upper bound:  " << cert.upper_bound() << "\n";
  } else {
    os << "  support vectors outside the span:";
    for (int i : cert.missed) os << " " << i;
    os << "\n";
  }
  return os.str();
}

std::string verification_text(const VerificationResult& res) {
  std::ostringstream os;
  os << (res.exact_mode ? "exact" : "approx") << " verification: "
     << (res.ok ? "ok" : "FAILED") << "\n";
  os << "  residual: " << res.residual << "\n";
  if (res.worst_entry) {
    const auto& w = *res.worst_entry;
    os << "  worst entry: (" << w[0] << "," << w[1] << "," << w[2]
       << ") off by "
       << (res.exact_mode ? crational_str(res.worst_value_exact)
                          : std::to_string(res.worst_value.real()) + " + " +
                                std::to_string(res.worst_value.imag()) + "i")
       << "\n";
  }
  return os.str();
}

std::string witness_text(const WitnessReport& r) {
  std::ostringstream os;
  os << "witness n=" << r.n << " trials=" << r.trials << " seed=" << r.seed
     << " expected-rank=" << (1 << r.n) << "\n";
  if (r.verdict) {
    os << "  all trials kept full Schmidt rank\n";
  } else {
    for (const WitnessFailure& f : r.failures) {
      os << "  rank " << f.rank << " for coeffs";
      for (long a : f.coeffs) os << " " << a;
      os << "\n";
    }
  }
  return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string rate_table_text(const std::vector<RateRow>& rows) {
  std::ostringstream os;
  os << "m  n  ghz->w(thm-b)  ghz->w(rank)  w->ghz(thm-c-necessary)\n";
  for (const RateRow& row : rows) {
    os << row.m << "  " << row.n << "  " << yes_no(row.theorem_b.verdict)
       << " (" << row.theorem_b.lhs.get_str() << ">="
       << row.theorem_b.rhs.get_str() << ")  "
       << yes_no(row.rank_based.verdict) << " ("
       << row.rank_based.lhs.get_str() << ">=" << row.rank_based.rhs.get_str()
       << ")  " << yes_no(row.theorem_c.verdict) << " ("
       << row.theorem_c.lhs.get_str() << "<=" << row.theorem_c.rhs.get_str()
       << ")\n";
  }
  return os.str();
}

std::string als_result_text(const AlsResult& res) {
  std::ostringstream os;
  os << "als rank=" << res.best.terms.size() << " residual=" << res.residual
     << " max-factor-norm=" << res.max_factor_norm
     << " suspicion=" << yes_no(res.suspicion) << " restart=" << res.restart
     << " sweeps=" << res.sweeps << "\n";
  return os.str();
}

std::string probe_text(const std::vector<ProbeRow>& rows) {
  std::ostringstream os;
  for (const ProbeRow& row : rows) {
    os << "r=" << row.r << " residual=" << row.residual
       << " suspicion=" << yes_no(row.suspicion) << " restart=" << row.restart
       << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact tensor-rank bounds, span certificates, and numeric "
      "decomposition search for tripartite states"};
  app.require_subcommand(1);
  app.fallthrough();

  Output output;
  std::uint64_t cap_override = 0;
  app.add_option("--format", output.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", output.out, "Write the report to a file");
  app.add_option("--size-cap", cap_override,
                 "Entry-count cap for tensor allocation (default 2^24; also "
                 "via WRANK_SIZE_CAP)");

  std::function<int()> action;

  // state build
  auto* state_cmd = app.add_subcommand("state", "Construct states");
  state_cmd->require_subcommand(1);
  {
    auto* build = state_cmd->add_subcommand("build", "Emit a state as JSON");
    auto name = std::make_shared<std::string>();
    auto power = std::make_shared<int>(1);
    build->add_option("state", *name, "w or ghz")
        ->required()
        ->check(CLI::IsMember({"w", "ghz"}));
    build->add_option("--power", *power, "Tensor power")
        ->check(CLI::PositiveNumber);
    build->callback([&, name, power] {
      action = [&, name, power] {
        const Tensor t = resolve_exact_state("builtin:" + *name, *power);
        output.emit(tensor_to_json(t), pretty(tensor_to_json(t)));
        return kExitOk;
      };
    });
  }

  // rank bounds
  auto* rank_cmd = app.add_subcommand("rank", "Rank bound reports");
  rank_cmd->require_subcommand(1);
  {
    auto* bounds = rank_cmd->add_subcommand(
        "bounds", "Lower/upper rank bounds with provenance");
    auto name = std::make_shared<std::string>();
    auto power = std::make_shared<int>(1);
    bounds->add_option("state", *name, "w or ghz")
        ->required()
        ->check(CLI::IsMember({"w", "ghz"}));
    bounds->add_option("--power", *power, "Tensor power")
        ->check(CLI::PositiveNumber);
    bounds->callback([&, name, power] {
      action = [&, name, power] {
        const BoundReport report =
            *name == "w" ? w_power_report(*power) : ghz_power_report(*power);
        output.emit(bound_report_to_json(report), bound_report_text(report));
        return kExitOk;
      };
    });
  }

  // cert span
  auto* cert_cmd = app.add_subcommand("cert", "Span certificates");
  cert_cmd->require_subcommand(1);
  {
    auto* span = cert_cmd->add_subcommand(
        "span", "Check that products span a state's support");
    auto state = std::make_shared<std::string>();
    auto spanning = std::make_shared<std::string>();
    auto traced = std::make_shared<std::string>("A");
    auto power = std::make_shared<int>(1);
    auto id = std::make_shared<std::string>("user");
    span->add_option("--state", *state, "State file or builtin:w, builtin:ghz")
        ->required();
    span->add_option("--power", *power, "Tensor power applied to the state")
        ->check(CLI::PositiveNumber);
    span->add_option("--spanning", *spanning,
                     "Spanning-set file or builtin:w2-seven, "
                     "builtin:w2-seven-printed")
        ->required();
    span->add_option("--traced", *traced, "Separated party: A, B, or C");
    span->add_option("--id", *id, "Certificate id");
    span->callback([&, state, spanning, traced, power, id] {
      action = [&, state, spanning, traced, power, id] {
        const Tensor t = resolve_exact_state(*state, *power);
        const SpanCertificate cert =
            certify_tensor_span(t, party_from_string(*traced),
                                resolve_spanning(*spanning), *id);
        output.emit(certificate_to_json(cert), certificate_text(cert));
        return cert.verdict ? kExitOk : kExitNegative;
      };
    });
  }

  // decomp verify / from-cert / search / probe
  auto* decomp_cmd = app.add_subcommand("decomp", "Product decompositions");
  decomp_cmd->require_subcommand(1);
  {
    auto* verify = decomp_cmd->add_subcommand(
        "verify", "Check a decomposition against a target tensor");
    auto target = std::make_shared<std::string>();
    auto decomp = std::make_shared<std::string>();
    auto power = std::make_shared<int>(1);
    auto exact = std::make_shared<bool>(false);
    auto audit = std::make_shared<bool>(false);
    auto tol = std::make_shared<double>(1e-9);
    verify->add_option("--target", *target,
                       "Target tensor file or builtin:w, builtin:ghz")
        ->required();
    verify->add_option("--power", *power, "Tensor power applied to the target")
        ->check(CLI::PositiveNumber);
    verify->add_option("--decomp", *decomp,
                       "Decomposition file or builtin:w2-seven, "
                       "builtin:w2-seven-printed, builtin:w-basis, "
                       "builtin:ghz-power-<n>")
        ->required();
    verify->add_flag("--exact", *exact, "Entrywise exact comparison");
    verify->add_flag("--audit-orderings", *audit,
                     "Exact mode: try all six party orderings");
    verify->add_option("--tol", *tol, "Frobenius tolerance in approx mode")
        ->check(CLI::NonNegativeNumber);
    verify->callback([&, target, decomp, power, exact, audit, tol] {
      action = [&, target, decomp, power, exact, audit, tol] {
        if (*audit && !*exact) {
          throw input_error("--audit-orderings requires --exact");
        }
        if (*exact) {
          const Tensor t = resolve_exact_state(*target, *power);
          const Decomposition d = resolve_exact_decomposition(*decomp);
          if (!*audit) {
            const VerificationResult res = verify_decomposition(t, d);
            output.emit(verification_to_json(res), verification_text(res));
            return res.ok ? kExitOk : kExitNegative;
          }
          static constexpr std::array<std::array<int, 3>, 6> kPerms{
              {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
          json orderings = json::array();
          std::string text;
          bool any_ok = false;
          for (const auto& perm : kPerms) {
            const VerificationResult res =
                verify_decomposition(t, permute_parties(d, perm));
            any_ok = any_ok || res.ok;
            json row = verification_to_json(res);
            row["perm"] = {perm[0], perm[1], perm[2]};
            orderings.push_back(std::move(row));
            text += "perm " + std::to_string(perm[0]) +
                    std::to_string(perm[1]) + std::to_string(perm[2]) + ": " +
                    verification_text(res);
          }
          output.emit(json{{"orderings", std::move(orderings)},
                           {"ok_any", any_ok}},
                      text);
          return any_ok ? kExitOk : kExitNegative;
        }
        const FloatTensor t = resolve_float_target(*target, *power);
        const FloatDecomposition d = resolve_float_decomposition(*decomp);
        const VerificationResult res = verify_decomposition(t, d, *tol);
        output.emit(verification_to_json(res), verification_text(res));
        return res.ok ? kExitOk : kExitNegative;
      };
    });

    auto* from_cert = decomp_cmd->add_subcommand(
        "from-cert", "Derive a decomposition from a positive span certificate");
    auto fc_state = std::make_shared<std::string>();
    auto fc_spanning = std::make_shared<std::string>();
    auto fc_traced = std::make_shared<std::string>("A");
    auto fc_power = std::make_shared<int>(1);
    auto fc_id = std::make_shared<std::string>("user");
    from_cert->add_option("--state", *fc_state,
                          "State file or builtin:w, builtin:ghz")
        ->required();
    from_cert->add_option("--power", *fc_power, "Tensor power")
        ->check(CLI::PositiveNumber);
    from_cert->add_option("--spanning", *fc_spanning,
                          "Spanning-set file or builtin:w2-seven")
        ->required();
    from_cert->add_option("--traced", *fc_traced, "Separated party: A, B, or C");
    from_cert->add_option("--id", *fc_id, "Certificate id");
    from_cert->callback([&, fc_state, fc_spanning, fc_traced, fc_power, fc_id] {
      action = [&, fc_state, fc_spanning, fc_traced, fc_power, fc_id] {
        const Tensor t = resolve_exact_state(*fc_state, *fc_power);
        const Party cut = party_from_string(*fc_traced);
        const SpanCertificate cert =
            certify_tensor_span(t, cut, resolve_spanning(*fc_spanning), *fc_id);
        if (!cert.verdict) {
          std::cerr << "certificate is negative; no decomposition exists "
                       "over this spanning set\n";
          output.emit(certificate_to_json(cert), certificate_text(cert));
          return kExitNegative;
        }
        const Decomposition d = decomposition_from_certificate(t, cut, cert);
        output.emit(decomposition_to_json(d), pretty(decomposition_to_json(d)));
        return kExitOk;
      };
    });

    auto als_options = [](CLI::App* cmd, std::shared_ptr<AlsConfig> cfg) {
      cmd->add_option("--restarts", cfg->restarts, "Independent restarts")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      cmd->add_option("--seed", cfg->seed, "Base seed")
          ->capture_default_str();
      cmd->add_option("--sweeps", cfg->max_sweeps, "Max sweeps per restart")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      cmd->add_option("--conv-tol", cfg->conv_tol,
                      "Relative residual-change stop tolerance")
          ->capture_default_str();
      cmd->add_option("--residual-target", cfg->residual_target,
                      "Residual threshold used by the suspicion diagnostic")
          ->capture_default_str();
      cmd->add_option("--regularization", cfg->regularization,
                      "Ridge added to the Gram diagonal")
          ->capture_default_str();
      cmd->add_option("--blowup", cfg->blowup_threshold,
                      "Factor-norm threshold used by the suspicion diagnostic")
          ->capture_default_str();
    };

    auto* search = decomp_cmd->add_subcommand(
        "search", "Numeric ALS decomposition search (non-certifying)");
    auto s_target = std::make_shared<std::string>();
    auto s_power = std::make_shared<int>(1);
    auto s_rank = std::make_shared<int>(0);
    auto s_warm = std::make_shared<std::string>();
    auto s_cfg = std::make_shared<AlsConfig>();
    search->add_option("--target", *s_target,
                       "Target tensor file or builtin:w, builtin:ghz")
        ->required();
    search->add_option("--power", *s_power, "Tensor power")
        ->check(CLI::PositiveNumber);
    search->add_option("--rank", *s_rank, "Number of product terms")
        ->check(CLI::PositiveNumber);
    search->add_option("--warm-start", *s_warm,
                       "Decomposition file or builtin used as the initial "
                       "point (overrides --rank and --restarts)");
    als_options(search, s_cfg);
    search->callback([&, s_target, s_power, s_rank, s_warm, s_cfg] {
      action = [&, s_target, s_power, s_rank, s_warm, s_cfg] {
        const FloatTensor t = resolve_float_target(*s_target, *s_power);
        AlsResult res;
        if (!s_warm->empty()) {
          res = warm_start_search(t, resolve_float_decomposition(*s_warm),
                                  *s_cfg);
        } else {
          if (*s_rank < 1) {
            throw input_error("--rank is required unless --warm-start is given");
          }
          res = als_search(t, *s_rank, *s_cfg);
        }
        output.emit(als_result_to_json(res), als_result_text(res));
        return kExitOk;
      };
    });

    auto* probe = decomp_cmd->add_subcommand(
        "probe", "ALS residual probe over ranks 1..R (non-certifying)");
    auto p_target = std::make_shared<std::string>();
    auto p_power = std::make_shared<int>(1);
    auto p_max_rank = std::make_shared<int>(0);
    auto p_cfg = std::make_shared<AlsConfig>();
    probe->add_option("--target", *p_target,
                      "Target tensor file or builtin:w, builtin:ghz")
        ->required();
    probe->add_option("--power", *p_power, "Tensor power")
        ->check(CLI::PositiveNumber);
    probe->add_option("--max-rank", *p_max_rank, "Probe ranks 1..R")
        ->required()
        ->check(CLI::PositiveNumber);
    als_options(probe, p_cfg);
    probe->callback([&, p_target, p_power, p_max_rank, p_cfg] {
      action = [&, p_target, p_power, p_max_rank, p_cfg] {
        const FloatTensor t = resolve_float_target(*p_target, *p_power);
        const std::vector<ProbeRow> rows =
            numeric_rank_probe(t, *p_max_rank, *p_cfg);
        const std::string lines = probe_rows_to_lines(rows);
        const std::string payload =
            output.format == "json" ? lines : probe_text(rows);
        if (output.out.empty()) {
          std::cout << payload;
        } else {
          save_text_file(output.out, payload);
        }
        return kExitOk;
      };
    });
  }

  // slocc
  auto* slocc_cmd = app.add_subcommand("slocc", "Copy-rate predicates");
  slocc_cmd->require_subcommand(1);
  {
    auto* table = slocc_cmd->add_subcommand(
        "table", "Verdict table over copy counts 1..M x 1..N");
    auto max_m = std::make_shared<int>(0);
    auto max_n = std::make_shared<int>(0);
    table->add_option("--max-m", *max_m, "Largest source copy count")
        ->required()
        ->check(CLI::PositiveNumber);
    table->add_option("--max-n", *max_n, "Largest target copy count")
        ->required()
        ->check(CLI::PositiveNumber);
    table->callback([&, max_m, max_n] {
      action = [&, max_m, max_n] {
        const std::vector<RateRow> rows = rate_table(*max_m, *max_n);
        output.emit(rate_table_to_json(rows), rate_table_text(rows));
        return kExitOk;
      };
    });

    auto* minimal = slocc_cmd->add_subcommand(
        "minimal-m", "Smallest sufficient GHZ copy count for n W copies");
    auto n = std::make_shared<int>(0);
    minimal->add_option("--n", *n, "W copy count")
        ->required()
        ->check(CLI::PositiveNumber);
    minimal->callback([&, n] {
      action = [&, n] {
        const MinimalM m = minimal_m_for_w_power(*n);
        std::ostringstream os;
        os << "n=" << *n << " rank-based m=" << m.rank_based
           << " theorem-b m=" << m.theorem_b << "\n";
        output.emit(minimal_m_to_json(*n, m), os.str());
        return kExitOk;
      };
    });
  }

  // lemma2 witness
  auto* lemma2_cmd = app.add_subcommand("lemma2", "Lower-bound witness checks");
  lemma2_cmd->require_subcommand(1);
  {
    auto* witness = lemma2_cmd->add_subcommand(
        "witness", "Sample coefficient vectors and verify full Schmidt rank");
    auto n = std::make_shared<int>(0);
    auto trials = std::make_shared<int>(100);
    auto seed = std::make_shared<std::uint64_t>(0);
    witness->add_option("--n", *n, "Copy count")
        ->required()
        ->check(CLI::PositiveNumber);
    witness->add_option("--trials", *trials, "Number of sampled vectors")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    witness->add_option("--seed", *seed, "Base seed")->capture_default_str();
    witness->callback([&, n, trials, seed] {
      action = [&, n, trials, seed] {
        const WitnessReport report = lemma2_witness_check(*n, *trials, *seed);
        output.emit(witness_report_to_json(report), witness_text(report));
        return report.verdict ? kExitOk : kExitNegative;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (cap_override != 0) set_size_cap(std::size_t(cap_override));
    return action ? action() : kExitInputError;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
