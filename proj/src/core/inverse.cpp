#include "inverse.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

#include "errors.hpp"
#include "format.hpp"

namespace specband {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double hausdorff(std::span<const cplx> a, std::span<const cplx> b) {
  auto one_side = [](std::span<const cplx> from, std::span<const cplx> to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

void add(FeasibilityReport& r, std::string name, bool pass, std::string witness = {}) {
  r.checks.push_back({std::move(name), pass, std::move(witness)});
}

bool matches_some_mu(const SpectralData& d, double x, double slack) {
  return std::any_of(d.mu.begin(), d.mu.end(), [&](double mu) { return std::abs(mu - x) <= slack; });
}

void location_checks(FeasibilityReport& r, const SpectralData& d) {
  const double slack = r.tol_base * r.spectral_scale;
  const bool real_a = a_n_is_real(r.regime);
  if (!real_a) {
    // Eigenvalues sit on the side of Im a_n: open half-plane for nonreal beta,
    // closed with real members drawn from mu for real beta.
    const double side = r.a_hat_n.imag() > 0.0 ? 1.0 : -1.0;
    const bool open = !beta_is_real(r.regime);
    bool ok = true;
    std::string witness;
    for (const auto& l : d.lambda) {
      const double height = side * l.imag();
      const bool good = open ? height > slack : height >= -slack;
      if (!good) {
        ok = false;
        witness = "lambda=" + fmt_num(l);
        break;
      }
    }
    add(r, open ? "location.open_half_plane" : "location.closed_half_plane", ok, witness);
    if (!open) {
      ok = true;
      witness.clear();
      for (const auto& l : d.lambda) {
        if (std::abs(l.imag()) <= slack && !matches_some_mu(d, l.real(), slack)) {
          ok = false;
          witness = "real lambda=" + fmt_num(l) + " is not among mu";
          break;
        }
      }
      add(r, "location.real_members_in_mu", ok, witness);
    }
    return;
  }

  bool ok = true;
  std::string witness;
  for (const auto& l : d.lambda) {
    if (std::abs(l.imag()) > slack) {
      ok = false;
      witness = "lambda=" + fmt_num(l);
      break;
    }
  }
  add(r, "location.real", ok, witness);

  std::vector<double> lr;
  for (const auto& l : d.lambda) lr.push_back(l.real());
  std::sort(lr.begin(), lr.end());
  if (!beta_is_real(r.regime)) {
    ok = true;
    witness.clear();
    for (std::size_t j = 1; j < lr.size(); ++j)
      if (lr[j] - lr[j - 1] <= slack) {
        ok = false;
        witness = "lambda=" + fmt_num(lr[j]) + " repeated";
        break;
      }
    add(r, "location.distinct", ok, witness);
    ok = true;
    witness.clear();
    for (double x : lr)
      if (matches_some_mu(d, x, slack)) {
        ok = false;
        witness = "lambda=" + fmt_num(x) + " coincides with a mu";
        break;
      }
    add(r, "location.disjoint_from_mu", ok, witness);
  } else {
    // At most double, and only at a submatrix eigenvalue.
    ok = true;
    witness.clear();
    std::size_t j = 0;
    while (j < lr.size()) {
      std::size_t run = 1;
      while (j + run < lr.size() && lr[j + run] - lr[j] <= slack) ++run;
      if (run > 2 || (run == 2 && !matches_some_mu(d, lr[j], slack))) {
        ok = false;
        witness = "lambda=" + fmt_num(lr[j]) + " multiplicity=" + std::to_string(run);
        break;
      }
      j += run;
    }
    add(r, "location.multiplicity", ok, witness);
  }
}

}  // namespace

void validate_data(const SpectralData& d) {
  const std::size_t n = d.lambda.size();
  if (n < 3) fail(ErrorKind::InvalidData, "lambda must have at least 3 entries");
  if (d.mu.size() + 1 != n) fail(ErrorKind::InvalidData, "mu must have n-1 = " + std::to_string(n - 1) + " entries");
  for (std::size_t j = 0; j < n; ++j)
    if (!finite(d.lambda[j])) fail(ErrorKind::InvalidData, "lambda[" + std::to_string(j) + "] is not finite");
  for (std::size_t k = 0; k < d.mu.size(); ++k) {
    if (!std::isfinite(d.mu[k])) fail(ErrorKind::InvalidData, "mu[" + std::to_string(k) + "] is not finite");
    if (k > 0 && !(d.mu[k] > d.mu[k - 1])) fail(ErrorKind::InvalidData, "mu not strictly increasing");
  }
  if (!finite(d.beta)) fail(ErrorKind::InvalidData, "beta is not finite");
  if (d.beta == 0.0) fail(ErrorKind::InvalidData, "beta is zero");
}

SpectralData spectral_data_of(const DirectReport& report) {
  return {report.lambda, report.submatrix.mu, report.beta.value};
}

FeasibilityReport feasibility_check(const SpectralData& d, double tol_base) {
  validate_data(d);
  const std::size_t n = d.n();
  FeasibilityReport r;
  r.tol_base = tol_base;
  r.beta = {d.beta, std::abs(d.beta.imag()) <= tol_base * std::abs(d.beta)};

  r.spectral_scale = 1.0;
  for (const auto& l : d.lambda) r.spectral_scale = std::max(r.spectral_scale, std::abs(l));
  for (double mu : d.mu) r.spectral_scale = std::max(r.spectral_scale, std::abs(mu));

  cplx trace = 0.0;
  for (const auto& l : d.lambda) trace += l;
  for (double mu : d.mu) trace -= mu;
  r.a_hat_n = trace;
  const bool a_real = std::abs(trace.imag()) <= tol_base * r.spectral_scale;
  r.regime = classify_regime(r.beta.is_real, a_real);

  std::vector<cplx> chi(n - 1);
  for (std::size_t k = 0; k < n - 1; ++k) {
    cplx product = 1.0;
    for (const auto& l : d.lambda) product *= d.mu[k] - l;
    chi[k] = product;
  }
  r.chi_prime = derivative_at_nodes(d.mu);
  r.conditions = check_necessary_conditions(chi, r.beta, tol_base);

  location_checks(r, d);
  {
    bool ok = true;
    std::string witness;
    for (const auto& row : r.conditions.rows) {
      if (!row.pass) {
        ok = false;
        witness = "k=" + std::to_string(row.k + 1) + " sign_margin=" + fmt_num(row.sign_margin) +
                  " bound_margin=" + fmt_num(row.bound_margin) + (row.chi_real ? "" : " chi_n(mu_k) not real");
        break;
      }
    }
    add(r, "conditions", ok, witness);
  }

  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  if (r.pass) {
    const std::size_t free = r.free_indices();
    if (free > 63) fail(ErrorKind::InvalidData, "too many branches to count (" + std::to_string(free) + " free indices)");
    r.branch_count = std::uint64_t{1} << free;
  }
  return r;
}

std::vector<BranchPair> branch_candidates(const SpectralData& d, const FeasibilityReport& report) {
  if (!report.pass) fail(ErrorKind::InfeasibleBranch, "spectral data failed the feasibility check");
  const std::size_t n = d.n();
  const double abs_beta = std::abs(d.beta);
  const double beta_sq = abs_beta * abs_beta;
  const double tau = report.conditions.tau_eq;
  std::vector<BranchPair> out(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double chi = report.conditions.rows[k].chi.real();
    const double abs_prime = std::abs(report.chi_prime[k]);
    const int sign = parity_sign(n, k);
    double shifted, disc;
    if (report.beta.is_real) {
      const double beta = std::copysign(abs_beta, d.beta.real());
      shifted = chi + 2.0 * beta;
      disc = chi * (chi + 4.0 * beta);
    } else {
      shifted = chi + 2.0 * d.beta.real();
      disc = shifted * shifted - 4.0 * beta_sq;
    }
    const double lead = sign * shifted;
    BranchPair& pair = out[k];
    pair.degenerate = report.conditions.is_degenerate(k);
    if (pair.degenerate) {
      disc = 0.0;
    } else if (disc < 0.0) {
      if (disc >= -tau * (std::abs(shifted) + 2.0 * abs_beta))
        disc = 0.0;
      else
        fail(ErrorKind::InfeasibleBranch, "negative discriminant at k=" + std::to_string(k + 1));
    }
    if (!(lead > 0.0)) fail(ErrorKind::InfeasibleBranch, "nonpositive root at k=" + std::to_string(k + 1));
    pair.plus = (lead + std::sqrt(disc)) / (2.0 * abs_prime);
    // product of the roots is |beta|^2 / chi'^2; avoids cancellation in the minus root
    pair.minus = pair.degenerate ? pair.plus : beta_sq / (abs_prime * abs_prime * pair.plus);
  }
  return out;
}

RealTridiag jacobi_from_measure(std::span<const double> nodes, std::span<const double> weights) {
  const std::size_t size = nodes.size();
  if (size == 0 || weights.size() != size)
    fail(ErrorKind::InvalidMeasure, "nodes and weights must be non-empty and of equal length");
  double total = 0.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < size; ++k) {
    if (!std::isfinite(nodes[k]) || !(weights[k] > 0.0) || !std::isfinite(weights[k]))
      fail(ErrorKind::InvalidMeasure, "invalid node or weight at index " + std::to_string(k));
    if (k > 0 && !(nodes[k] > nodes[k - 1]))
      fail(ErrorKind::InvalidMeasure, "nodes not strictly increasing at index " + std::to_string(k));
    total += weights[k];
    scale = std::max(scale, std::abs(nodes[k]));
  }
  if (std::abs(total - 1.0) > 1e-10) fail(ErrorKind::InvalidMeasure, "weights do not sum to 1");

  RealTridiag out;
  out.diag.resize(size);
  out.offdiag.resize(size - 1);
  std::vector<std::vector<double>> basis;
  basis.reserve(size);
  std::vector<double> q(size);
  for (std::size_t i = 0; i < size; ++i) q[i] = std::sqrt(weights[i] / total);
  basis.push_back(q);

  std::vector<double> v(size);
  for (std::size_t j = 0; j < size; ++j) {
    const auto& qj = basis[j];
    for (std::size_t i = 0; i < size; ++i) v[i] = nodes[i] * qj[i];
    const double a = std::inner_product(qj.begin(), qj.end(), v.begin(), 0.0);
    out.diag[j] = a;
    if (j + 1 == size) break;
    for (std::size_t i = 0; i < size; ++i) v[i] -= a * qj[i];
    if (j > 0)
      for (std::size_t i = 0; i < size; ++i) v[i] -= out.offdiag[j - 1] * basis[j - 1][i];
    for (const auto& prev : basis) {
      const double overlap = std::inner_product(prev.begin(), prev.end(), v.begin(), 0.0);
      for (std::size_t i = 0; i < size; ++i) v[i] -= overlap * prev[i];
    }
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (!(norm >= 1e-13 * scale))
      fail(ErrorKind::Breakdown, "recurrence norm " + fmt_num(norm) + " at step " + std::to_string(j + 1));
    out.offdiag[j] = norm;
    for (std::size_t i = 0; i < size; ++i) q[i] = v[i] / norm;
    basis.push_back(q);
  }
  return out;
}

BranchSolution reconstruct_branch(const SpectralData& d, const FeasibilityReport& report,
                                  std::span<const BranchPair> candidates, std::uint64_t selector) {
  if (!report.pass) fail(ErrorKind::InfeasibleBranch, "spectral data failed the feasibility check");
  if (selector >= report.branch_count)
    fail(ErrorKind::InvalidArgument,
         "selector " + std::to_string(selector) + " out of range (" + std::to_string(report.branch_count) + " branches)");
  const std::size_t n = d.n();
  const std::size_t size = n - 1;

  BranchSolution s;
  s.selector = selector;
  s.choice.resize(size);
  s.X.resize(size);
  s.Y.resize(size);
  std::size_t bit = 0;
  for (std::size_t k = 0; k < size; ++k) {
    const BranchPair& pair = candidates[k];
    if (pair.degenerate) {
      s.choice[k] = -1;
      s.X[k] = s.Y[k] = pair.plus;
      continue;
    }
    const bool minus = (selector >> bit) & 1U;
    ++bit;
    s.choice[k] = minus ? 1 : 0;
    s.X[k] = minus ? pair.minus : pair.plus;
    s.Y[k] = minus ? pair.plus : pair.minus;
  }

  const double sum_x = std::accumulate(s.X.begin(), s.X.end(), 0.0);
  const double sum_y = std::accumulate(s.Y.begin(), s.Y.end(), 0.0);
  s.b_n_abs = std::sqrt(sum_x);
  s.b_n_minus_1_abs_formula = std::sqrt(sum_y);
  s.weights.resize(size);
  for (std::size_t k = 0; k < size; ++k) s.weights[k] = s.X[k] / sum_x;

  const RealTridiag jacobi = jacobi_from_measure(d.mu, s.weights);

  PeriodicMatrixHat& m = s.matrix;
  m.n = n;
  m.c_hat = jacobi.diag;
  m.b_hat = jacobi.offdiag;
  cplx phase = d.beta / std::abs(d.beta);
  if (report.beta.is_real) phase = cplx(phase.real() > 0.0 ? 1.0 : -1.0, 0.0);
  m.b_hat_n = s.b_n_abs * phase;
  cplx denominator = m.b_hat_n;
  for (double b : m.b_hat) denominator *= b;
  m.b_hat.push_back((d.beta / denominator).real());
  m.a_hat_n = report.a_hat_n;
  if (a_n_is_real(report.regime)) m.a_hat_n = cplx(m.a_hat_n.real(), 0.0);
  return s;
}

BranchSolution reconstruct_branch(const SpectralData& d, std::uint64_t selector, double tol_base) {
  const FeasibilityReport report = feasibility_check(d, tol_base);
  const auto candidates = branch_candidates(d, report);
  return reconstruct_branch(d, report, candidates, selector);
}

VerificationResidual reconstruction_residual(const PeriodicMatrixHat& m, const SpectralData& d, double tol_base) {
  validate_data(d);
  if (m.n != d.n()) fail(ErrorKind::InvalidArgument, "matrix size does not match spectral data");
  const DirectReport direct = full_spectrum(m, tol_base);

  double scale = 1.0;
  for (const auto& l : d.lambda) scale = std::max(scale, std::abs(l));
  for (double mu : d.mu) scale = std::max(scale, std::abs(mu));

  VerificationResidual out;
  out.lambda_distance = hausdorff(direct.lambda, d.lambda) / scale;
  std::vector<cplx> mu_a(direct.submatrix.mu.begin(), direct.submatrix.mu.end());
  std::vector<cplx> mu_b(d.mu.begin(), d.mu.end());
  out.mu_distance = hausdorff(mu_a, mu_b) / scale;
  out.beta_residual = std::abs(beta_of(m).value - d.beta) / std::abs(d.beta);
  out.worst = std::max({out.lambda_distance, out.mu_distance, out.beta_residual});
  return out;
}

VerificationResidual verify_reconstruction(const PeriodicMatrixHat& m, const SpectralData& d, double tol,
                                           double tol_base) {
  VerificationResidual out = reconstruction_residual(m, d, tol_base);
  if (!(out.worst <= tol))
    fail(ErrorKind::VerificationFailed, "worst residual " + fmt_num(out.worst) + " exceeds " + fmt_num(tol) +
                                            " (lambda " + fmt_num(out.lambda_distance) + ", mu " +
                                            fmt_num(out.mu_distance) + ", beta " + fmt_num(out.beta_residual) + ")");
  return out;
}

double max_entry_difference(const PeriodicMatrixHat& a, const PeriodicMatrixHat& b) {
  if (a.n != b.n) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < a.c_hat.size(); ++k) worst = std::max(worst, std::abs(a.c_hat[k] - b.c_hat[k]));
  for (std::size_t k = 0; k < a.b_hat.size(); ++k) worst = std::max(worst, std::abs(a.b_hat[k] - b.b_hat[k]));
  worst = std::max(worst, std::abs(a.b_hat_n - b.b_hat_n));
  worst = std::max(worst, std::abs(a.a_hat_n - b.a_hat_n));
  return worst;
}

Enumeration enumerate_solutions(const SpectralData& d, const EnumerateOptions& options) {
  Enumeration out;
  out.report = feasibility_check(d, options.tol_base);
  const FeasibilityReport& report = out.report;
  if (!report.pass) {
    std::string why;
    for (const auto& c : report.checks)
      if (!c.pass) {
        why = c.name + (c.witness.empty() ? "" : " (" + c.witness + ")");
        break;
      }
    fail(ErrorKind::InfeasibleBranch, "spectral data infeasible: " + why);
  }
  if (report.branch_count > options.max_branches)
    fail(ErrorKind::InvalidArgument, std::to_string(report.branch_count) +
                                         " branches exceed the enumeration cap; select a single branch instead");
  const auto candidates = branch_candidates(d, report);
  const std::size_t count = static_cast<std::size_t>(report.branch_count);
  out.solutions.resize(count);

  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < count; i += stride) {
      try {
        BranchSolution s = reconstruct_branch(d, report, candidates, i);
        s.verification = verify_reconstruction(s.matrix, d, options.verify_tol, options.tol_base);
        out.solutions[i] = std::move(s);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, count));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  constexpr std::size_t kPairwiseCap = 4096;
  if (count <= kPairwiseCap) {
    out.distinctness_checked = true;
    out.min_pairwise_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j)
        out.min_pairwise_distance =
            std::min(out.min_pairwise_distance, max_entry_difference(out.solutions[i].matrix, out.solutions[j].matrix));
    out.pairwise_distinct = out.min_pairwise_distance > options.distinct_tol;
  }
  return out;
}

}  // namespace specband
