#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "format.hpp"
#include "instance_io.hpp"
#include "inverse.hpp"
#include "random_instances.hpp"

namespace specband {

using nlohmann::json;

namespace {

json complex_array(std::span<const cplx> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(complex_to_json(v));
  return out;
}

json poly_json(const ComplexPolynomial& p) { return complex_array(p.coeffs()); }

json conditions_json(const NecessaryConditions& c, std::span<const double> chi_prime = {}) {
  json rows = json::array();
  for (const auto& row : c.rows) {
    json r{{"k", row.k + 1},
           {"chi_n_at_mu", complex_to_json(row.chi)},
           {"sign_margin", row.sign_margin},
           {"bound_margin", row.bound_margin},
           {"sign_equality", row.sign_equality},
           {"bound_equality", row.bound_equality},
           {"pass", row.pass}};
    if (!chi_prime.empty()) r["chi_prime_at_mu"] = chi_prime[row.k];
    rows.push_back(std::move(r));
  }
  json out{{"tau_eq", c.tau_eq}, {"rows", rows}, {"pass", c.pass}};
  if (c.beta_real) {
    out["m1"] = c.m1;
    out["m2"] = c.m2;
  } else {
    out["m"] = c.m;
  }
  return out;
}

json feasibility_json(const FeasibilityReport& r) {
  json out{{"regime", to_string(r.regime)},
           {"pass", r.pass},
           {"beta", complex_to_json(r.beta.value)},
           {"a_hat_n", complex_to_json(r.a_hat_n)},
           {"branch_count", r.branch_count},
           {"spectral_scale", r.spectral_scale},
           {"conditions", conditions_json(r.conditions, r.chi_prime)}};
  return out;
}

json solution_json(const BranchSolution& s) {
  return json{{"selector", s.selector},
              {"choice", s.choice},
              {"X", s.X},
              {"Y", s.Y},
              {"b_n_abs", s.b_n_abs},
              {"b_n_minus_1_abs_from_sum", s.b_n_minus_1_abs_formula},
              {"weights", s.weights},
              {"matrix", to_json(s.matrix)},
              {"verification",
               {{"lambda_distance", s.verification.lambda_distance},
                {"mu_distance", s.verification.mu_distance},
                {"beta_residual", s.verification.beta_residual},
                {"worst", s.verification.worst}}}};
}

void add(RunReport& r, std::string name, bool pass, std::string witness = {}) {
  r.checks.push_back({std::move(name), pass, std::move(witness)});
}

void add_all(RunReport& r, const std::vector<Check>& checks, const std::string& prefix = {}) {
  for (const auto& c : checks) r.checks.push_back({prefix + c.name, c.pass, c.witness});
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InstanceFile load(const std::string& path, const std::string& bytes) {
  try {
    return parse_instance(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

double tol_base_for(const CommandOptions& o, const InstanceFile* f = nullptr) {
  if (o.tol) return *o.tol;
  if (f && f->tol) return *f->tol;
  return kTolBase;
}

unsigned thread_count(const CommandOptions& o) {
  if (o.threads > 0) return o.threads;
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECBAND_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

double hat_scale(const PeriodicMatrixHat& m) {
  double s = 1.0;
  for (double v : m.c_hat) s = std::max(s, std::abs(v));
  for (double v : m.b_hat) s = std::max(s, std::abs(v));
  return std::max({s, std::abs(m.b_hat_n), std::abs(m.a_hat_n)});
}

PeriodicMatrixHat as_hat(const InstanceFile& f) {
  if (f.kind == InstanceKind::MatrixHat) return std::get<PeriodicMatrixHat>(f.payload);
  if (f.kind == InstanceKind::MatrixGeneral) return canonicalize(std::get<PeriodicMatrixGeneral>(f.payload));
  fail(ErrorKind::InvalidArgument, "expected a matrix instance, got " + std::string(to_string(f.kind)));
}

DirectReport direct_of(const InstanceFile& f, double tol_base) {
  if (f.kind == InstanceKind::MatrixGeneral) return full_spectrum(std::get<PeriodicMatrixGeneral>(f.payload), tol_base);
  if (f.kind == InstanceKind::MatrixHat) return full_spectrum(std::get<PeriodicMatrixHat>(f.payload), tol_base);
  fail(ErrorKind::InvalidArgument, "expected a matrix instance, got " + std::string(to_string(f.kind)));
}

const SpectralData& as_data(const InstanceFile& f) {
  if (f.kind != InstanceKind::SpectralData)
    fail(ErrorKind::InvalidArgument, "expected spectral-data, got " + std::string(to_string(f.kind)));
  return std::get<SpectralData>(f.payload);
}

void need_inputs(const std::vector<std::string>& inputs, std::size_t lo, std::size_t hi, const std::string& usage) {
  if (inputs.size() < lo || inputs.size() > hi) fail(ErrorKind::InvalidArgument, "usage: " + usage);
}

// Checks attached to one reconstructed branch.
void branch_checks(RunReport& r, const BranchSolution& s, const SpectralData& d, const std::string& prefix) {
  double weight_sum = 0.0;
  for (double w : s.weights) weight_sum += w;
  add(r, prefix + "weights_sum", std::abs(weight_sum - 1.0) <= 1e-10, "sum=" + fmt_num(weight_sum, 17));
  const double b_last = std::abs(s.matrix.b_hat.back());
  const double rel = std::abs(b_last - s.b_n_minus_1_abs_formula) / b_last;
  add(r, prefix + "complementary_sum", rel <= 1e-8, "relative=" + fmt_num(rel));
  const double beta_rel = std::abs(beta_of(s.matrix).value - d.beta) / std::abs(d.beta);
  add(r, prefix + "beta", beta_rel <= 1e-10, "relative=" + fmt_num(beta_rel));
  add(r, prefix + "verify", s.verification.worst <= kVerifyTol, "worst=" + fmt_num(s.verification.worst));
}

void cmd_direct(RunReport& r, const std::vector<std::string>& inputs, const CommandOptions& o) {
  need_inputs(inputs, 1, 1, "direct <matrix.json>");
  const std::string bytes = read_bytes(inputs[0]);
  r.input_digest = fnv1a_hex(bytes);
  const InstanceFile f = load(inputs[0], bytes);
  const DirectReport d = direct_of(f, tol_base_for(o, &f));
  r.outputs = direct_to_json(d);
  if (f.kind == InstanceKind::MatrixGeneral) r.outputs["canonical"] = to_json(as_hat(f));
  add_all(r, d.checks);
}

void cmd_inverse(RunReport& r, const std::vector<std::string>& inputs, const CommandOptions& o) {
  need_inputs(inputs, 1, 1, "inverse <data.json>");
  const std::string bytes = read_bytes(inputs[0]);
  r.input_digest = fnv1a_hex(bytes);
  const InstanceFile f = load(inputs[0], bytes);
  const SpectralData& d = as_data(f);
  const double tol_base = tol_base_for(o, &f);

  const FeasibilityReport report = feasibility_check(d, tol_base);
  r.outputs["feasibility"] = feasibility_json(report);
  add_all(r, report.checks, "feasibility.");
  if (!report.pass) return;

  const auto candidates = branch_candidates(d, report);
  json cand = json::array();
  for (std::size_t k = 0; k < candidates.size(); ++k)
    cand.push_back({{"k", k + 1},
                    {"plus", candidates[k].plus},
                    {"minus", candidates[k].minus},
                    {"degenerate", candidates[k].degenerate}});
  r.outputs["candidates"] = cand;

  json solutions = json::array();
  if (o.all_branches) {
    EnumerateOptions eo;
    eo.tol_base = tol_base;
    eo.threads = thread_count(o);
    const Enumeration e = enumerate_solutions(d, eo);
    for (const auto& s : e.solutions) {
      solutions.push_back(solution_json(s));
      branch_checks(r, s, d, "branch[" + std::to_string(s.selector) + "].");
    }
    add(r, "enumeration.count", e.solutions.size() == report.branch_count,
        std::to_string(e.solutions.size()) + " of " + std::to_string(report.branch_count));
    if (e.distinctness_checked)
      add(r, "enumeration.distinct", e.pairwise_distinct || e.solutions.size() < 2,
          e.solutions.size() < 2 ? "" : "min_distance=" + fmt_num(e.min_pairwise_distance));
  } else {
    BranchSolution s = reconstruct_branch(d, report, candidates, o.branch.value_or(0));
    s.verification = reconstruction_residual(s.matrix, d, tol_base);
    solutions.push_back(solution_json(s));
    branch_checks(r, s, d, "branch[" + std::to_string(s.selector) + "].");
  }
  r.outputs["solutions"] = solutions;
}

void cmd_verify(RunReport& r, const std::vector<std::string>& inputs, const CommandOptions& o) {
  need_inputs(inputs, 2, 2, "verify <matrix.json> <data.json>");
  const std::string matrix_bytes = read_bytes(inputs[0]);
  const std::string data_bytes = read_bytes(inputs[1]);
  r.input_digest = fnv1a_hex(matrix_bytes + std::string(1, '\0') + data_bytes);
  const InstanceFile mf = load(inputs[0], matrix_bytes);
  const InstanceFile df = load(inputs[1], data_bytes);
  const PeriodicMatrixHat m = as_hat(mf);
  const SpectralData& d = as_data(df);
  const VerificationResidual v = reconstruction_residual(m, d, tol_base_for(o, &mf));
  r.outputs["residual"] = {{"lambda_distance", v.lambda_distance},
                           {"mu_distance", v.mu_distance},
                           {"beta_residual", v.beta_residual},
                           {"worst", v.worst},
                           {"tolerance", kVerifyTol}};
  add(r, "verify.lambda", v.lambda_distance <= kVerifyTol, "distance=" + fmt_num(v.lambda_distance));
  add(r, "verify.mu", v.mu_distance <= kVerifyTol, "distance=" + fmt_num(v.mu_distance));
  add(r, "verify.beta", v.beta_residual <= kVerifyTol, "residual=" + fmt_num(v.beta_residual));
}

struct RoundtripItem {
  json summary;
  bool direct_ok = false;
  bool matched = false;
  bool count_ok = false;
  bool verified = false;
  double match = 0.0;
  double residual = 0.0;
  std::string error;
};

constexpr double kMatchTol = 1e-7;

RoundtripItem roundtrip_one(const PeriodicMatrixHat& source, double tol_base, unsigned threads) {
  RoundtripItem item;
  item.summary["n"] = source.n;
  try {
    const DirectReport direct = full_spectrum(source, tol_base);
    item.summary["regime"] = to_string(direct.regime);
    item.direct_ok = direct.pass();
    const SpectralData data = spectral_data_of(direct);
    EnumerateOptions eo;
    eo.tol_base = tol_base;
    eo.threads = threads;
    const Enumeration e = enumerate_solutions(data, eo);
    const std::size_t free = direct.necessary.rows.size() - direct.necessary.degenerate_count();
    const std::uint64_t expected = std::uint64_t{1} << free;
    item.count_ok = e.solutions.size() == expected;
    item.match = std::numeric_limits<double>::infinity();
    std::uint64_t best = 0;
    for (const auto& s : e.solutions) {
      const double rel = max_entry_difference(s.matrix, source) / hat_scale(source);
      if (rel < item.match) {
        item.match = rel;
        best = s.selector;
      }
      item.residual = std::max(item.residual, s.verification.worst);
    }
    item.matched = item.match <= kMatchTol;
    item.verified = item.residual <= kVerifyTol;
    item.summary["branch_count"] = e.solutions.size();
    item.summary["expected_count"] = expected;
    item.summary["matching_selector"] = best;
    item.summary["match_distance"] = item.match;
    item.summary["max_residual"] = item.residual;
  } catch (const Error& err) {
    item.error = std::string(to_string(err.kind())) + ": " + err.what();
    item.summary["error"] = item.error;
  }
  return item;
}

void cmd_roundtrip(RunReport& r, const std::vector<std::string>& inputs, const CommandOptions& o) {
  need_inputs(inputs, 0, 1, "roundtrip [matrix.json] [--seed S] [--count N]");
  std::vector<PeriodicMatrixHat> sources;
  double tol_base = tol_base_for(o);
  if (inputs.size() == 1) {
    if (o.seed) fail(ErrorKind::InvalidArgument, "roundtrip takes either a file or --seed, not both");
    const std::string bytes = read_bytes(inputs[0]);
    r.input_digest = fnv1a_hex(bytes);
    const InstanceFile f = load(inputs[0], bytes);
    tol_base = tol_base_for(o, &f);
    sources.push_back(as_hat(f));
  } else {
    const std::uint64_t seed = o.seed.value_or(1);
    if (o.count == 0) fail(ErrorKind::InvalidArgument, "--count must be positive");
    r.input_digest = fnv1a_hex("roundtrip seed=" + std::to_string(seed) + " count=" + std::to_string(o.count));
    r.outputs["seed"] = seed;
    Rng rng(seed);
    for (std::size_t i = 0; i < o.count; ++i) sources.push_back(random_hat(rng, size_for_index(i), regime_for_index(i)));
  }

  const unsigned threads = thread_count(o);
  json items = json::array();
  std::size_t direct_ok = 0, matched = 0, counted = 0, verified = 0;
  double worst_match = 0.0, worst_residual = 0.0;
  std::string first_bad;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    RoundtripItem item = roundtrip_one(sources[i], tol_base, threads);
    direct_ok += item.direct_ok;
    matched += item.matched;
    counted += item.count_ok;
    verified += item.verified;
    if (item.error.empty()) {
      worst_match = std::max(worst_match, item.match);
      worst_residual = std::max(worst_residual, item.residual);
    } else if (first_bad.empty()) {
      first_bad = "instance " + std::to_string(i) + ": " + item.error;
    }
    items.push_back(std::move(item.summary));
  }
  const std::size_t total = sources.size();
  r.outputs["instances"] = items;
  r.outputs["count"] = total;
  r.outputs["max_match_distance"] = worst_match;
  r.outputs["max_residual"] = worst_residual;
  auto tally = [&](std::size_t ok) { return std::to_string(ok) + "/" + std::to_string(total); };
  add(r, "roundtrip.no_errors", first_bad.empty(), first_bad);
  add(r, "roundtrip.direct_checks", direct_ok == total, tally(direct_ok));
  add(r, "roundtrip.branch_count", counted == total, tally(counted));
  add(r, "roundtrip.source_recovered", matched == total, tally(matched) + " max=" + fmt_num(worst_match));
  add(r, "roundtrip.verified", verified == total, tally(verified) + " max=" + fmt_num(worst_residual));
}

void selftest_case(RunReport& r, const std::string& name, const std::function<std::string()>& body) {
  // body returns an empty string on success, otherwise the witness.
  try {
    const std::string witness = body();
    add(r, "selftest." + name, witness.empty(), witness);
  } catch (const Error& e) {
    add(r, "selftest." + name, false, std::string(to_string(e.kind())) + ": " + e.what());
  }
}

void cmd_selftest(RunReport& r, const std::vector<std::string>& inputs, const CommandOptions& o) {
  need_inputs(inputs, 0, 0, "selftest");
  r.input_digest = fnv1a_hex("selftest");
  const double tol_base = tol_base_for(o);
  const double s3 = std::sqrt(3.0);
  const PeriodicMatrixHat worked{3, {0.0, 0.0}, {1.0, 1.0}, cplx(0.0, 1.0), 0.0};
  const SpectralData golden{{-s3, 0.0, s3}, {-1.0, 1.0}, cplx(0.0, 1.0)};

  selftest_case(r, "direct.worked_spectrum", [&]() -> std::string {
    const DirectReport d = full_spectrum(worked, tol_base);
    const cplx want[] = {-s3, 0.0, s3};
    for (std::size_t j = 0; j < 3; ++j)
      if (std::abs(d.lambda[j] - want[j]) > 1e-10) return "lambda=" + fmt_num(d.lambda[j]);
    if (!d.pass()) return "direct checks failed";
    return {};
  });
  selftest_case(r, "direct.nonreal_corner", [&]() -> std::string {
    PeriodicMatrixHat m = worked;
    m.a_hat_n = cplx(0.0, 1.0);
    const DirectReport d = full_spectrum(m, tol_base);
    const cplx want[] = {1.0, cplx(0.0, -1.0), -3.0, cplx(0.0, 1.0)};
    for (std::size_t p = 0; p < 4; ++p)
      if (std::abs(d.chi_n.coeffs()[p] - want[p]) > 1e-12) return "coefficient " + std::to_string(p);
    if (!d.pass()) return "direct checks failed";
    return {};
  });
  selftest_case(r, "inverse.golden", [&]() -> std::string {
    const Enumeration e = enumerate_solutions(golden, {});
    if (e.solutions.size() != 1) return std::to_string(e.solutions.size()) + " solutions";
    const double diff = max_entry_difference(e.solutions[0].matrix, worked);
    if (diff > 1e-10) return "distance=" + fmt_num(diff);
    return {};
  });
  selftest_case(r, "inverse.infeasible", [&]() -> std::string {
    SpectralData d = golden;
    d.beta = cplx(0.0, 2.0);
    const FeasibilityReport f = feasibility_check(d, tol_base);
    if (f.pass) return "accepted";
    for (const auto& row : f.conditions.rows)
      if (std::abs(row.bound_margin + 2.0) > 1e-10) return "margin=" + fmt_num(row.bound_margin);
    return {};
  });
  selftest_case(r, "inverse.real_beta_branches", [&]() -> std::string {
    const SpectralData d{{-2.0, 0.0, 2.0}, {-1.0, 1.0}, -0.25};
    const Enumeration e = enumerate_solutions(d, {});
    if (e.solutions.size() != 4) return std::to_string(e.solutions.size()) + " solutions";
    if (!e.pairwise_distinct) return "min_distance=" + fmt_num(e.min_pairwise_distance);
    return {};
  });
  selftest_case(r, "measure.path_graph", [&]() -> std::string {
    const double nodes[] = {-std::numbers::sqrt2, 0.0, std::numbers::sqrt2};
    const double weights[] = {0.25, 0.5, 0.25};
    const RealTridiag t = jacobi_from_measure(nodes, weights);
    for (double c : t.diag)
      if (std::abs(c) > 1e-12) return "c=" + fmt_num(c);
    for (double b : t.offdiag)
      if (std::abs(b - 1.0) > 1e-12) return "b=" + fmt_num(b);
    return {};
  });
  selftest_case(r, "canonicalize.spectral_data", [&]() -> std::string {
    const PeriodicMatrixGeneral g{3, {0.0, 0.0}, {cplx(0.0, 1.0), cplx(0.0, -1.0), cplx(0.0, 1.0)}, 0.0};
    const DirectReport a = full_spectrum(g, tol_base);
    const DirectReport b = full_spectrum(canonicalize(g), tol_base);
    for (std::size_t j = 0; j < 3; ++j)
      if (std::abs(a.lambda[j] - b.lambda[j]) > 1e-9) return "lambda mismatch";
    return {};
  });
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

json direct_to_json(const DirectReport& d) {
  json residues{{"alpha", d.residues.alpha}, {"zero_set", json::array()}};
  for (std::size_t k : d.residues.zero_set) residues["zero_set"].push_back(k + 1);
  return json{{"n", d.n},
              {"regime", to_string(d.regime)},
              {"beta", complex_to_json(d.beta.value)},
              {"a_n", complex_to_json(d.a_n)},
              {"lambda", complex_array(d.lambda)},
              {"multiplicity", d.multiplicity},
              {"mu", d.submatrix.mu},
              {"chi_prime_at_mu", d.submatrix.chi_prime_at_mu},
              {"u_first", complex_array(d.u_first)},
              {"u_last", complex_array(d.u_last)},
              {"residues", residues},
              {"chi_n", poly_json(d.chi_n)},
              {"chi_n_minus_1", poly_json(d.chi_n_minus_1)},
              {"necessary_conditions", conditions_json(d.necessary)},
              {"spectral_scale", d.spectral_scale},
              {"root_residual", d.root_residual},
              {"spectral_data", to_json(spectral_data_of(d))}};
}

json RunReport::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  json out{{"command", command},
           {"input_digest", input_digest},
           {"outputs", outputs},
           {"checks", checks_json},
           {"pass", pass},
           {"exit_code", exit_code}};
  if (!error_kind.empty()) out["error"] = {{"kind", error_kind}, {"message", error_message}};
  if (elapsed_ms) out["timing"] = {{"elapsed_ms", *elapsed_ms}};
  return out;
}

std::string RunReport::render_json() const { return canonical_dump(to_json()); }

namespace {

bool is_complex(const json& j) { return j.is_object() && j.size() == 2 && j.contains("re") && j.contains("im"); }

std::string scalar_text(const json& j) {
  if (is_complex(j)) return fmt_num(cplx(j["re"].get<double>(), j["im"].get<double>()), 10);
  if (j.is_number_float()) return fmt_num(j.get<double>(), 10);
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_flat_array(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return !e.is_structured() || is_complex(e); });
}

void flatten(const json& j, const std::string& key, std::vector<std::pair<std::string, std::string>>& out) {
  if (is_complex(j) || !j.is_structured()) {
    out.emplace_back(key, scalar_text(j));
  } else if (is_flat_array(j)) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    out.emplace_back(key, s + "]");
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", out);
  } else {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), key.empty() ? it.key() : key + "." + it.key(), out);
  }
}

}  // namespace

std::string RunReport::render_text() const {
  std::string out;
  out += "command  " + command + "\n";
  out += "input    " + input_digest + "\n";
  if (!error_kind.empty()) out += "error    " + error_kind + ": " + error_message + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(outputs, "", rows);
  if (!rows.empty()) {
    out += "\noutputs\n";
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) out += "  " + k + std::string(width - k.size() + 2, ' ') + v + "\n";
  }
  if (!checks.empty()) {
    out += "\nchecks\n";
    std::size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
      out += std::string("  ") + (c.pass ? "PASS  " : "FAIL  ") + c.name;
      if (!c.witness.empty()) out += std::string(width - c.name.size() + 2, ' ') + c.witness;
      out += "\n";
    }
  }
  if (elapsed_ms) out += "\nelapsed  " + fmt_num(*elapsed_ms, 6) + " ms\n";
  out += std::string("\nresult   ") + (pass ? "PASS" : "FAIL") + " (exit " + std::to_string(exit_code) + ")\n";
  return out;
}

RunReport run_command(const std::string& command, const std::vector<std::string>& inputs,
                      const CommandOptions& options) {
  RunReport r;
  r.command = command;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (command == "direct")
      cmd_direct(r, inputs, options);
    else if (command == "inverse")
      cmd_inverse(r, inputs, options);
    else if (command == "verify")
      cmd_verify(r, inputs, options);
    else if (command == "roundtrip")
      cmd_roundtrip(r, inputs, options);
    else if (command == "selftest")
      cmd_selftest(r, inputs, options);
    else
      fail(ErrorKind::InvalidArgument, "unknown command \"" + command + "\"");
    r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
    r.exit_code = r.pass ? kExitPass : kExitFailed;
  } catch (const Error& e) {
    r.error_kind = to_string(e.kind());
    r.error_message = e.what();
    r.pass = false;
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::Parse:
      case ErrorKind::InvalidMatrix:
      case ErrorKind::InvalidData:
        r.exit_code = kExitInputError;
        break;
      default:
        r.exit_code = kExitFailed;
    }
  } catch (const std::exception& e) {
    r.error_kind = "InternalError";
    r.error_message = e.what();
    r.pass = false;
    r.exit_code = kExitFailed;
  }
  if (options.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace specband
