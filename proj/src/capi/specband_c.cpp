#include "specband/specband.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <variant>

#include "commands.hpp"
#include "direct.hpp"
#include "errors.hpp"
#include "instance_io.hpp"
#include "inverse.hpp"
#include "matrix.hpp"

using namespace specband;

struct sb_matrix {
  std::variant<PeriodicMatrixGeneral, PeriodicMatrixHat> value;
};

struct sb_spectral_data {
  SpectralData value;
};

struct sb_options {
  CommandOptions command;
};

struct sb_direct_result {
  DirectReport value;
};

struct sb_inverse_result {
  FeasibilityReport report;
  std::vector<BranchSolution> solutions;
  bool distinctness_checked = false;
  bool pairwise_distinct = false;
};

struct sb_report {
  RunReport value;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string last_error;

sb_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return SB_ERR_INVALID_ARGUMENT;
    case ErrorKind::Parse: return SB_ERR_PARSE;
    case ErrorKind::InvalidMatrix: return SB_ERR_INVALID_MATRIX;
    case ErrorKind::InvalidData: return SB_ERR_INVALID_DATA;
    case ErrorKind::InvalidMeasure: return SB_ERR_INVALID_MEASURE;
    case ErrorKind::NonConvergence: return SB_ERR_NON_CONVERGENCE;
    case ErrorKind::OracleOverflow: return SB_ERR_ORACLE_OVERFLOW;
    case ErrorKind::InfeasibleBranch: return SB_ERR_INFEASIBLE;
    case ErrorKind::Breakdown: return SB_ERR_BREAKDOWN;
    case ErrorKind::VerificationFailed: return SB_ERR_VERIFICATION_FAILED;
  }
  return SB_ERR_INTERNAL;
}

sb_status failure(sb_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
sb_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return SB_OK;
  } catch (const Error& e) {
    return failure(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return failure(SB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return failure(SB_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

CommandOptions options_or_default(const sb_options* o) { return o ? o->command : CommandOptions{}; }

double tol_of(const sb_options* o) { return o && o->command.tol ? *o->command.tol : kTolBase; }

}  // namespace

extern "C" {

const char* sb_version(void) { return "1.0.0"; }

const char* sb_status_name(sb_status status) {
  switch (status) {
    case SB_OK: return "OK";
    case SB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SB_ERR_PARSE: return "ParseError";
    case SB_ERR_INVALID_MATRIX: return "InvalidMatrix";
    case SB_ERR_INVALID_DATA: return "InvalidData";
    case SB_ERR_INVALID_MEASURE: return "InvalidMeasure";
    case SB_ERR_NON_CONVERGENCE: return "NonConvergence";
    case SB_ERR_ORACLE_OVERFLOW: return "OracleOverflow";
    case SB_ERR_INFEASIBLE: return "InfeasibleBranch";
    case SB_ERR_BREAKDOWN: return "Breakdown";
    case SB_ERR_VERIFICATION_FAILED: return "VerificationFailed";
    case SB_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* sb_last_error(void) { return last_error.c_str(); }

void sb_string_free(char* s) { delete[] s; }

sb_status sb_matrix_general_create(size_t n, const double* c, const double* b_re, const double* b_im,
                                   double a_n_re, double a_n_im, sb_matrix** out) {
  return guard([&] {
    require(out && c && b_re && b_im, "null argument");
    require(n >= 3, "n must be at least 3");
    PeriodicMatrixGeneral m;
    m.n = n;
    m.c.assign(c, c + n - 1);
    for (size_t k = 0; k < n; ++k) m.b.emplace_back(b_re[k], b_im[k]);
    m.a_n = {a_n_re, a_n_im};
    validate_general(m);
    *out = new sb_matrix{std::move(m)};
  });
}

sb_status sb_matrix_hat_create(size_t n, const double* c_hat, const double* b_hat, double b_n_re, double b_n_im,
                               double a_n_re, double a_n_im, sb_matrix** out) {
  return guard([&] {
    require(out && c_hat && b_hat, "null argument");
    require(n >= 3, "n must be at least 3");
    PeriodicMatrixHat m;
    m.n = n;
    m.c_hat.assign(c_hat, c_hat + n - 1);
    m.b_hat.assign(b_hat, b_hat + n - 1);
    m.b_hat_n = {b_n_re, b_n_im};
    m.a_hat_n = {a_n_re, a_n_im};
    validate_hat(m);
    *out = new sb_matrix{std::move(m)};
  });
}

sb_status sb_matrix_parse(const char* json, sb_matrix** out) {
  return guard([&] {
    require(out && json, "null argument");
    InstanceFile f = parse_instance(json);
    if (f.kind == InstanceKind::MatrixGeneral)
      *out = new sb_matrix{std::get<PeriodicMatrixGeneral>(f.payload)};
    else if (f.kind == InstanceKind::MatrixHat)
      *out = new sb_matrix{std::get<PeriodicMatrixHat>(f.payload)};
    else
      fail(ErrorKind::InvalidArgument, "document is not a matrix instance");
  });
}

sb_status sb_matrix_to_json(const sb_matrix* m, char** out) {
  return guard([&] {
    require(m && out, "null argument");
    std::visit([&](const auto& v) { *out = copy_string(serialize_instance(make_instance(v))); }, m->value);
  });
}

size_t sb_matrix_size(const sb_matrix* m) {
  if (!m) return 0;
  return std::visit([](const auto& v) { return v.n; }, m->value);
}

int sb_matrix_is_hat(const sb_matrix* m) { return m && std::holds_alternative<PeriodicMatrixHat>(m->value); }

sb_status sb_matrix_canonicalize(const sb_matrix* m, sb_matrix** out) {
  return guard([&] {
    require(m && out, "null argument");
    if (const auto* hat = std::get_if<PeriodicMatrixHat>(&m->value))
      *out = new sb_matrix{*hat};
    else
      *out = new sb_matrix{canonicalize(std::get<PeriodicMatrixGeneral>(m->value))};
  });
}

void sb_matrix_free(sb_matrix* m) { delete m; }

sb_status sb_spectral_data_create(size_t n, const double* lambda_re, const double* lambda_im, const double* mu,
                                  double beta_re, double beta_im, sb_spectral_data** out) {
  return guard([&] {
    require(out && lambda_re && lambda_im && mu, "null argument");
    SpectralData d;
    for (size_t j = 0; j < n; ++j) d.lambda.emplace_back(lambda_re[j], lambda_im[j]);
    if (n > 0) d.mu.assign(mu, mu + n - 1);
    d.beta = {beta_re, beta_im};
    validate_data(d);
    *out = new sb_spectral_data{std::move(d)};
  });
}

sb_status sb_spectral_data_parse(const char* json, sb_spectral_data** out) {
  return guard([&] {
    require(out && json, "null argument");
    InstanceFile f = parse_instance(json);
    if (f.kind != InstanceKind::SpectralData) fail(ErrorKind::InvalidArgument, "document is not spectral-data");
    *out = new sb_spectral_data{std::get<SpectralData>(f.payload)};
  });
}

sb_status sb_spectral_data_to_json(const sb_spectral_data* d, char** out) {
  return guard([&] {
    require(d && out, "null argument");
    *out = copy_string(serialize_instance(make_instance(d->value)));
  });
}

size_t sb_spectral_data_size(const sb_spectral_data* d) { return d ? d->value.n() : 0; }

void sb_spectral_data_free(sb_spectral_data* d) { delete d; }

sb_options* sb_options_create(void) { return new (std::nothrow) sb_options{}; }

void sb_options_free(sb_options* o) { delete o; }

sb_status sb_options_set_tol(sb_options* o, double tol) {
  return guard([&] {
    require(o, "null argument");
    require(tol > 0.0 && tol < 1.0, "tol must lie in (0, 1)");
    o->command.tol = tol;
  });
}

sb_status sb_options_set_branch(sb_options* o, uint64_t selector) {
  return guard([&] {
    require(o, "null argument");
    o->command.branch = selector;
  });
}

sb_status sb_options_set_all_branches(sb_options* o, int enabled) {
  return guard([&] {
    require(o, "null argument");
    o->command.all_branches = enabled != 0;
  });
}

sb_status sb_options_set_seed(sb_options* o, uint64_t seed) {
  return guard([&] {
    require(o, "null argument");
    o->command.seed = seed;
  });
}

sb_status sb_options_set_count(sb_options* o, size_t count) {
  return guard([&] {
    require(o, "null argument");
    require(count > 0, "count must be positive");
    o->command.count = count;
  });
}

sb_status sb_options_set_threads(sb_options* o, unsigned threads) {
  return guard([&] {
    require(o, "null argument");
    o->command.threads = threads;
  });
}

sb_status sb_options_set_timing(sb_options* o, int enabled) {
  return guard([&] {
    require(o, "null argument");
    o->command.timing = enabled != 0;
  });
}

sb_status sb_direct(const sb_matrix* m, const sb_options* options, sb_direct_result** out) {
  return guard([&] {
    require(m && out, "null argument");
    const double tol = tol_of(options);
    DirectReport r = std::visit([&](const auto& v) { return full_spectrum(v, tol); }, m->value);
    *out = new sb_direct_result{std::move(r)};
  });
}

size_t sb_direct_result_size(const sb_direct_result* r) { return r ? r->value.n : 0; }

sb_status sb_direct_result_eigenvalue(const sb_direct_result* r, size_t j, double* re, double* im) {
  return guard([&] {
    require(r && re && im, "null argument");
    require(j < r->value.lambda.size(), "index out of range");
    *re = r->value.lambda[j].real();
    *im = r->value.lambda[j].imag();
  });
}

sb_status sb_direct_result_submatrix_eigenvalue(const sb_direct_result* r, size_t k, double* mu) {
  return guard([&] {
    require(r && mu, "null argument");
    require(k < r->value.submatrix.mu.size(), "index out of range");
    *mu = r->value.submatrix.mu[k];
  });
}

sb_status sb_direct_result_beta(const sb_direct_result* r, double* re, double* im) {
  return guard([&] {
    require(r && re && im, "null argument");
    *re = r->value.beta.value.real();
    *im = r->value.beta.value.imag();
  });
}

int sb_direct_result_pass(const sb_direct_result* r) { return r && r->value.pass(); }

sb_status sb_direct_result_spectral_data(const sb_direct_result* r, sb_spectral_data** out) {
  return guard([&] {
    require(r && out, "null argument");
    *out = new sb_spectral_data{spectral_data_of(r->value)};
  });
}

sb_status sb_direct_result_to_json(const sb_direct_result* r, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    *out = copy_string(canonical_dump(direct_to_json(r->value)));
  });
}

void sb_direct_result_free(sb_direct_result* r) { delete r; }

sb_status sb_inverse(const sb_spectral_data* d, const sb_options* options, sb_inverse_result** out) {
  return guard([&] {
    require(d && out, "null argument");
    const CommandOptions o = options_or_default(options);
    auto result = std::make_unique<sb_inverse_result>();
    const double tol = tol_of(options);
    result->report = feasibility_check(d->value, tol);
    if (result->report.pass) {
      if (o.branch && !o.all_branches) {
        BranchSolution s = reconstruct_branch(d->value, *o.branch, tol);
        s.verification = verify_reconstruction(s.matrix, d->value, kVerifyTol, tol);
        result->solutions.push_back(std::move(s));
      } else {
        EnumerateOptions eo;
        eo.tol_base = tol;
        eo.threads = o.threads > 0 ? o.threads : 1;
        Enumeration e = enumerate_solutions(d->value, eo);
        result->solutions = std::move(e.solutions);
        result->distinctness_checked = e.distinctness_checked;
        result->pairwise_distinct = e.pairwise_distinct;
      }
    }
    *out = result.release();
  });
}

int sb_inverse_result_feasible(const sb_inverse_result* r) { return r && r->report.pass; }

uint64_t sb_inverse_result_branch_count(const sb_inverse_result* r) { return r ? r->report.branch_count : 0; }

size_t sb_inverse_result_solution_count(const sb_inverse_result* r) { return r ? r->solutions.size() : 0; }

sb_status sb_inverse_result_solution(const sb_inverse_result* r, size_t i, sb_matrix** out) {
  return guard([&] {
    require(r && out, "null argument");
    require(i < r->solutions.size(), "index out of range");
    *out = new sb_matrix{r->solutions[i].matrix};
  });
}

sb_status sb_inverse_result_residual(const sb_inverse_result* r, size_t i, double* worst) {
  return guard([&] {
    require(r && worst, "null argument");
    require(i < r->solutions.size(), "index out of range");
    *worst = r->solutions[i].verification.worst;
  });
}

sb_status sb_inverse_result_to_json(const sb_inverse_result* r, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    nlohmann::json j;
    j["feasible"] = r->report.pass;
    j["branch_count"] = r->report.branch_count;
    j["regime"] = to_string(r->report.regime);
    nlohmann::json sols = nlohmann::json::array();
    for (const auto& s : r->solutions)
      sols.push_back({{"selector", s.selector}, {"matrix", to_json(s.matrix)}, {"residual", s.verification.worst}});
    j["solutions"] = sols;
    *out = copy_string(canonical_dump(j));
  });
}

void sb_inverse_result_free(sb_inverse_result* r) { delete r; }

sb_status sb_run(const char* command, const char* const* inputs, size_t n_inputs, const sb_options* options,
                 sb_report** out) {
  return guard([&] {
    require(command && out, "null argument");
    require(n_inputs == 0 || inputs, "null inputs");
    std::vector<std::string> paths;
    for (size_t i = 0; i < n_inputs; ++i) {
      require(inputs[i], "null input path");
      paths.emplace_back(inputs[i]);
    }
    auto report = std::make_unique<sb_report>();
    report->value = run_command(command, paths, options_or_default(options));
    report->json = report->value.render_json();
    report->text = report->value.render_text();
    *out = report.release();
  });
}

int sb_report_exit_code(const sb_report* r) { return r ? r->value.exit_code : 1; }

int sb_report_pass(const sb_report* r) { return r && r->value.pass; }

const char* sb_report_json(const sb_report* r) { return r ? r->json.c_str() : ""; }

const char* sb_report_text(const sb_report* r) { return r ? r->text.c_str() : ""; }

const char* sb_report_error(const sb_report* r) { return r ? r->value.error_message.c_str() : ""; }

void sb_report_free(sb_report* r) { delete r; }

}  // extern "C"
