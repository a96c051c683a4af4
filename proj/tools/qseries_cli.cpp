// Command-line front end: catalog listing, coefficientwise verification,
// series expansion, and positivity scans, with optional JSON output.
//
// Exit codes are a total function of the outcome: 0 pass, 1 coefficient
// mismatch or negative sum, 2 usage/domain/precision error.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qseries/identities.hpp"
#include "qseries/positivity.hpp"

using nlohmann::ordered_json;
using namespace qseries;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

long long parse_int(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw domain_error(what + ": cannot parse integer '" + text + "'");
  }
  if (pos != text.size())
    throw domain_error(what + ": cannot parse integer '" + text + "'");
  return v;
}

// Accepts the rendered monomial forms: 1, -1, q, -q, q^E, -q^E.
Monomial parse_monomial(const std::string& text) {
  std::string t = text;
  int sign = 1;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    if (t[0] == '-') sign = -1;
    t.erase(0, 1);
  }
  if (t == "1") return Monomial(sign, 0);
  if (t == "q") return Monomial(sign, 1);
  if (t.rfind("q^", 0) == 0)
    return Monomial(sign, parse_int(t.substr(2), "monomial exponent"));
  throw domain_error("cannot parse monomial '" + text +
                     "' (expected 1, -1, q, -q, q^E, or -q^E)");
}

std::pair<std::string, std::string> split_key_value(const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw domain_error("--param expects key=value, got '" + kv + "'");
  return {kv.substr(0, eq), kv.substr(eq + 1)};
}

Params parse_params(const IdentityDescriptor& d,
                    const std::vector<std::string>& kvs) {
  Params p;
  for (const auto& kv : kvs) {
    auto [key, value] = split_key_value(kv);
    const ParamSpec* spec = nullptr;
    for (const auto& s : d.schema)
      if (s.name == key) spec = &s;
    if (!spec)
      throw domain_error("identity '" + d.id + "' does not take parameter '" +
                         key + "'");
    if (spec->kind == ParamSpec::Kind::integer)
      p.set(key, static_cast<exp_t>(parse_int(value, "parameter " + key)));
    else
      p.set(key, parse_monomial(value));
  }
  return p;
}

std::pair<exp_t, exp_t> parse_window(const std::string& text) {
  auto colon = text.find(':', 1);  // allow a leading minus sign
  if (colon == std::string::npos)
    throw domain_error("--window expects lo:hi, got '" + text + "'");
  exp_t lo = parse_int(text.substr(0, colon), "window lo");
  exp_t hi = parse_int(text.substr(colon + 1), "window hi");
  if (lo >= hi)
    throw domain_error("--window requires lo < hi, got [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + ")");
  return {lo, hi};
}

ordered_json report_json(const VerificationReport& rep) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  ordered_json mismatch;
  if (rep.mismatch)
    mismatch = ordered_json{{"exponent", rep.mismatch->exponent},
                            {"lhs", rep.mismatch->lhs},
                            {"rhs", rep.mismatch->rhs}};
  return ordered_json{{"identity", rep.identity},
                      {"params", params},
                      {"window", ordered_json::array({rep.window_lo, rep.window_hi})},
                      {"status", rep.pass ? "pass" : "fail"},
                      {"first_mismatch", std::move(mismatch)}};
}

void print_report_text(const VerificationReport& rep) {
  std::string head = rep.identity;
  if (!rep.params.empty()) {
    head += " (";
    bool first = true;
    for (const auto& [k, v] : rep.params) {
      if (!first) head += ", ";
      head += k + "=" + v;
      first = false;
    }
    head += ")";
  }
  std::printf("%s [%lld, %lld): %s\n", head.c_str(),
              static_cast<long long>(rep.window_lo),
              static_cast<long long>(rep.window_hi),
              rep.pass ? "pass" : "FAIL");
  if (rep.mismatch)
    std::printf("  first mismatch at q^%lld: lhs %s, rhs %s\n",
                static_cast<long long>(rep.mismatch->exponent),
                rep.mismatch->lhs.c_str(), rep.mismatch->rhs.c_str());
}

struct WindowChoice {
  long long order = -1;       // -1: use the identity's default order
  std::string window_text;    // "lo:hi" overrides the order entirely
};

std::pair<exp_t, exp_t> resolve_window(const WindowChoice& wc,
                                       exp_t default_order) {
  if (!wc.window_text.empty()) return parse_window(wc.window_text);
  exp_t order = wc.order >= 0 ? wc.order : default_order;
  if (order < 1) throw domain_error("order must be >= 1");
  return {0, order};
}

int run_verify(const std::string& id, bool all,
               const std::vector<std::string>& param_kvs,
               const WindowChoice& wc, bool json_out) {
  std::vector<VerificationReport> reports;
  auto run_grid = [&](const IdentityDescriptor& d) {
    auto [lo, hi] = resolve_window(wc, d.default_order);
    if (!param_kvs.empty())
      reports.push_back(verify(d.id, parse_params(d, param_kvs), lo, hi));
    else
      for (const auto& p : d.grid) reports.push_back(verify(d.id, p, lo, hi));
  };

  if (all) {
    if (!id.empty())
      throw domain_error("verify: give an identity id or --all, not both");
    if (!param_kvs.empty())
      throw domain_error("verify: --param cannot be combined with --all");
    std::vector<const IdentityDescriptor*> catalog;
    for (const auto& d : list_identities()) catalog.push_back(&d);
    std::sort(catalog.begin(), catalog.end(),
              [](const IdentityDescriptor* a, const IdentityDescriptor* b) {
                return a->id < b->id;
              });
    for (const auto* d : catalog) run_grid(*d);
  } else {
    if (id.empty())
      throw domain_error("verify: an identity id (or --all) is required");
    run_grid(find_identity(id));
  }

  bool all_pass = true;
  for (const auto& rep : reports) all_pass = all_pass && rep.pass;

  if (json_out) {
    if (reports.size() == 1) {
      std::cout << report_json(reports.front()).dump() << "\n";
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& rep : reports) arr.push_back(report_json(rep));
      std::cout << arr.dump() << "\n";
    }
  } else {
    for (const auto& rep : reports) print_report_text(rep);
  }
  return all_pass ? kPass : kFail;
}

int run_expand(const std::string& id, const std::string& side_text,
               const std::vector<std::string>& param_kvs,
               const WindowChoice& wc, bool json_out) {
  const auto& d = find_identity(id);
  if (side_text.empty())
    throw domain_error("expand: --side lhs|rhs is required");
  Side side = side_from_string(side_text);
  if (param_kvs.empty() && !d.schema.empty()) {
    std::string names;
    for (const auto& s : d.schema) {
      if (!names.empty()) names += ", ";
      names += s.name;
    }
    throw domain_error("expand: identity '" + d.id +
                       "' needs --param for: " + names);
  }
  Params p = parse_params(d, param_kvs);
  auto [lo, hi] = resolve_window(wc, d.default_order);
  auto series = build_side(d.id, side, p, hi);

  if (json_out) {
    ordered_json arr = ordered_json::array();
    for (exp_t e = lo; e < hi; ++e)
      arr.push_back(
          ordered_json::array({e, series.coeff_or_zero(e).get_str()}));
    std::cout << arr.dump() << "\n";
  } else {
    for (exp_t e = lo; e < hi; ++e)
      std::printf("%lld %s\n", static_cast<long long>(e),
                  series.coeff_or_zero(e).get_str().c_str());
  }
  return kPass;
}

int run_positivity(const std::string& id,
                   const std::vector<std::string>& param_kvs, long long max_n,
                   bool json_out) {
  if (max_n < 0) throw domain_error("positivity: --max-n must be >= 0");

  exp_t k = -1;
  for (const auto& kv : param_kvs) {
    auto [key, value] = split_key_value(kv);
    if (key != "k")
      throw domain_error("positivity: unexpected parameter '" + key + "'");
    k = parse_int(value, "parameter k");
  }

  std::vector<Coeff> sums;
  exp_t scan_from = 0;
  std::vector<std::pair<std::string, std::string>> params;
  if (id == "cor1" || id == "cor2" || id == "cor3" || id == "cor4") {
    if (k != -1)
      throw domain_error("positivity: '" + id + "' does not take k");
    sums = corollary_sums(id[3] - '0', max_n);
  } else if (id == "andmer-k" || id == "guozeng-k") {
    if (k == -1)
      throw domain_error("positivity: '" + id + "' requires --param k=N");
    params.emplace_back("k", std::to_string(k));
    if (id == "andmer-k") {
      // The pentagonal truncation's raw n = 0 value is (-1)^{k-1}; the
      // inequality it witnesses runs over n >= 1.
      sums = truncated_pentagonal_sum(k, max_n);
      scan_from = 1;
    } else {
      sums = overpartition_square_sum(k, max_n);
    }
  } else {
    throw domain_error("positivity: unknown target '" + id +
                       "' (expected cor1..cor4, andmer-k, or guozeng-k)");
  }

  std::optional<exp_t> argmin, first_negative;
  for (exp_t n = scan_from; n <= max_n; ++n) {
    const Coeff& v = sums[static_cast<std::size_t>(n)];
    if (!argmin || v < sums[static_cast<std::size_t>(*argmin)]) argmin = n;
    if (!first_negative && v < 0) first_negative = n;
  }
  bool pass = !first_negative.has_value();

  if (json_out) {
    ordered_json params_json = ordered_json::object();
    for (const auto& [key, value] : params) params_json[key] = value;
    ordered_json out{{"id", id},
                     {"params", std::move(params_json)},
                     {"max_n", max_n},
                     {"scan_from", scan_from},
                     {"status", pass ? "pass" : "fail"}};
    out["min"] =
        argmin ? ordered_json(sums[static_cast<std::size_t>(*argmin)].get_str())
               : ordered_json();
    out["argmin"] = argmin ? ordered_json(*argmin) : ordered_json();
    out["first_negative"] =
        first_negative
            ? ordered_json{{"n", *first_negative},
                           {"value",
                            sums[static_cast<std::size_t>(*first_negative)]
                                .get_str()}}
            : ordered_json();
    std::cout << out.dump() << "\n";
  } else {
    std::string head = id;
    if (!params.empty()) head += " (k=" + params.front().second + ")";
    if (pass) {
      std::printf("%s: S(n) >= 0 for %lld <= n <= %lld", head.c_str(),
                  static_cast<long long>(scan_from), max_n);
      if (argmin)
        std::printf(" (min %s at n = %lld)",
                    sums[static_cast<std::size_t>(*argmin)].get_str().c_str(),
                    static_cast<long long>(*argmin));
      std::printf("\n");
    } else {
      std::printf(
          "%s: first negative S(%lld) = %s\n", head.c_str(),
          static_cast<long long>(*first_negative),
          sums[static_cast<std::size_t>(*first_negative)].get_str().c_str());
    }
  }
  return pass ? kPass : kFail;
}

int run_list(bool json_out) {
  std::vector<const IdentityDescriptor*> catalog;
  for (const auto& d : list_identities()) catalog.push_back(&d);
  std::sort(catalog.begin(), catalog.end(),
            [](const IdentityDescriptor* a, const IdentityDescriptor* b) {
              return a->id < b->id;
            });

  auto kind_name = [](ParamSpec::Kind kind) {
    return kind == ParamSpec::Kind::integer ? "integer" : "monomial";
  };

  if (json_out) {
    ordered_json arr = ordered_json::array();
    for (const auto* d : catalog) {
      ordered_json schema = ordered_json::array();
      for (const auto& s : d->schema)
        schema.push_back(ordered_json{{"name", s.name},
                                      {"kind", kind_name(s.kind)},
                                      {"description", s.description}});
      arr.push_back(ordered_json{{"id", d->id},
                                 {"summary", d->summary},
                                 {"reference", d->reference},
                                 {"default_order", d->default_order},
                                 {"params", std::move(schema)}});
    }
    std::cout << arr.dump() << "\n";
  } else {
    for (const auto* d : catalog) {
      std::printf("%s — %s\n", d->id.c_str(), d->summary.c_str());
      std::printf("    reference: %s\n", d->reference.c_str());
      for (const auto& s : d->schema)
        std::printf("    %s: %s %s\n", s.name.c_str(), kind_name(s.kind),
                    s.description.c_str());
      std::printf("    default order: %lld\n",
                  static_cast<long long>(d->default_order));
    }
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series identity verification and positivity scans"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand(
      "list", "print the identity catalog with parameter schemas");
  bool list_json = false;
  list_cmd->add_flag("--json", list_json, "emit a JSON array of descriptors");

  auto* verify_cmd = app.add_subcommand(
      "verify", "compare both sides of an identity coefficientwise");
  std::string verify_id;
  bool verify_all = false;
  WindowChoice verify_wc;
  std::vector<std::string> verify_params;
  bool verify_json = false;
  verify_cmd->add_option("id", verify_id, "identity id (see `list`)");
  verify_cmd->add_flag("--all", verify_all,
                       "verify the whole catalog at default orders");
  verify_cmd->add_option("--order", verify_wc.order,
                         "verify on [0, order) (default per identity)");
  verify_cmd->add_option("--window", verify_wc.window_text,
                         "verify on [lo, hi) given as lo:hi");
  verify_cmd->add_option("--param", verify_params,
                         "key=value; repeat to fix every parameter "
                         "(default: the identity's sample grid)");
  verify_cmd->add_flag("--json", verify_json, "emit the report as JSON");

  auto* expand_cmd = app.add_subcommand(
      "expand", "print coefficients of one side of an identity");
  std::string expand_id, expand_side;
  WindowChoice expand_wc;
  std::vector<std::string> expand_params;
  bool expand_json = false;
  expand_cmd->add_option("id", expand_id, "identity id (see `list`)")
      ->required();
  expand_cmd->add_option("--side", expand_side, "lhs or rhs");
  expand_cmd->add_option("--order", expand_wc.order,
                         "expand on [0, order) (default per identity)");
  expand_cmd->add_option("--window", expand_wc.window_text,
                         "expand on [lo, hi) given as lo:hi");
  expand_cmd->add_option("--param", expand_params, "key=value; repeatable");
  expand_cmd->add_flag("--json", expand_json,
                       "emit a JSON array of [exponent, coefficient] pairs");

  auto* positivity_cmd = app.add_subcommand(
      "positivity", "scan an alternating partition sum for negative values");
  std::string positivity_id;
  long long positivity_max_n = 500;
  std::vector<std::string> positivity_params;
  bool positivity_json = false;
  positivity_cmd
      ->add_option("id", positivity_id,
                   "cor1..cor4, andmer-k, or guozeng-k")
      ->required();
  positivity_cmd->add_option("--max-n", positivity_max_n,
                             "scan S(n) for n <= max-n (default 500)");
  positivity_cmd->add_option("--param", positivity_params,
                             "k=N for the truncated families");
  positivity_cmd->add_flag("--json", positivity_json,
                           "emit the scan report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (list_cmd->parsed()) return run_list(list_json);
    if (verify_cmd->parsed())
      return run_verify(verify_id, verify_all, verify_params, verify_wc,
                        verify_json);
    if (expand_cmd->parsed())
      return run_expand(expand_id, expand_side, expand_params, expand_wc,
                        expand_json);
    if (positivity_cmd->parsed())
      return run_positivity(positivity_id, positivity_params,
                            positivity_max_n, positivity_json);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
