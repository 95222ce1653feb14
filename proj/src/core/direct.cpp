#include "direct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "format.hpp"

namespace specband {

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::BetaNonrealAnReal: return "beta-nonreal/a_n-real";
    case Regime::BetaNonrealAnNonreal: return "beta-nonreal/a_n-nonreal";
    case Regime::BetaRealAnReal: return "beta-real/a_n-real";
    case Regime::BetaRealAnNonreal: return "beta-real/a_n-nonreal";
  }
  return "unknown";
}

Regime classify_regime(bool beta_real, bool a_n_real) noexcept {
  if (beta_real) return a_n_real ? Regime::BetaRealAnReal : Regime::BetaRealAnNonreal;
  return a_n_real ? Regime::BetaNonrealAnReal : Regime::BetaNonrealAnNonreal;
}

bool NecessaryConditions::is_degenerate(std::size_t k) const noexcept {
  const auto& row = rows[k];
  return beta_real ? (row.sign_equality || row.bound_equality) : row.bound_equality;
}

double equality_tolerance(std::span<const cplx> chi_at_mu, cplx beta, double tol_base) {
  double scale = std::max(1.0, 2.0 * std::abs(beta));
  for (const auto& chi : chi_at_mu) scale = std::max(scale, std::abs(chi));
  return tol_base * scale;
}

NecessaryConditions check_necessary_conditions(std::span<const cplx> chi_at_mu, const Beta& beta,
                                               double tol_base, std::span<const double> imag_scale) {
  NecessaryConditions out;
  const std::size_t n = chi_at_mu.size() + 1;
  out.beta_real = beta.is_real;
  out.tau_eq = equality_tolerance(chi_at_mu, beta.value, tol_base);
  const double tau = out.tau_eq;
  const double re_beta = beta.is_real ? std::copysign(std::abs(beta.value), beta.value.real()) : beta.value.real();
  const double abs_beta = std::abs(beta.value);
  out.pass = true;
  for (std::size_t k = 0; k < chi_at_mu.size(); ++k) {
    ConditionRow row;
    row.k = k;
    row.chi = chi_at_mu[k];
    const double chi = row.chi.real();
    const int sign = parity_sign(n, k);
    row.sign_margin = sign * chi;
    if (beta.is_real)
      row.bound_margin = std::abs(chi) + 4.0 * sign * re_beta;  // |chi| - 4(-1)^{n-k-1} beta
    else
      row.bound_margin = std::abs(chi + 2.0 * re_beta) - 2.0 * abs_beta;
    row.sign_equality = std::abs(row.sign_margin) <= tau;
    row.bound_equality = std::abs(row.bound_margin) <= tau;
    double imag_tol = tau;
    if (!imag_scale.empty()) imag_tol = std::max(imag_tol, tol_base * imag_scale[k]);
    row.chi_real = std::abs(row.chi.imag()) <= imag_tol;

    const bool sign_ok = beta.is_real ? row.sign_margin >= -tau : row.sign_margin > tau;
    const bool bound_ok = row.bound_margin >= -tau;
    row.pass = sign_ok && bound_ok && row.chi_real;
    out.pass = out.pass && row.pass;
    if (beta.is_real) {
      out.m1 += row.sign_equality ? 1 : 0;
      out.m2 += row.bound_equality ? 1 : 0;
    } else {
      out.m += row.bound_equality ? 1 : 0;
    }
    out.rows.push_back(row);
  }
  return out;
}

bool DirectReport::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Residues residues_alpha(const PeriodicMatrixGeneral& m, const SubmatrixSpectrum& s, double tol_base) {
  const PhaseReduction reduction = phase_reduce(m);
  const std::size_t size = m.n - 1;
  const cplx corner = m.b[m.n - 1];
  const cplx last_coupling = std::conj(m.b[m.n - 2]);
  const cplx last_phase = reduction.phases[size - 1];
  Residues out;
  out.alpha.resize(s.mu.size());
  for (std::size_t k = 0; k < s.mu.size(); ++k) {
    const cplx first_term = corner * s.u_first[k];  // first phase is 1
    const cplx last_term = last_coupling * (last_phase * s.u_last[k]);
    const cplx amplitude = first_term + last_term;
    out.alpha[k] = std::norm(amplitude);
    if (std::abs(amplitude) <= tol_base * (std::abs(first_term) + std::abs(last_term))) out.zero_set.push_back(k);
  }
  return out;
}

ComplexPolynomial assemble_charpoly(std::span<const double> mu, std::span<const double> alpha, cplx a_n) {
  std::vector<cplx> nodes(mu.begin(), mu.end());
  ComplexPolynomial chi = poly_from_roots(nodes) * ComplexPolynomial::monomial_root(a_n);
  std::vector<cplx> others;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (alpha[k] == 0.0) continue;
    others.clear();
    for (std::size_t j = 0; j < mu.size(); ++j)
      if (j != k) others.emplace_back(mu[j]);
    chi = chi - poly_from_roots(others) * cplx(alpha[k]);
  }
  return chi;
}

namespace {

void add(DirectReport& r, std::string name, bool pass, std::string witness = {}) {
  r.checks.push_back({std::move(name), pass, std::move(witness)});
}

std::vector<double> sorted_real_parts(const std::vector<cplx>& lambda) {
  std::vector<double> out;
  out.reserve(lambda.size());
  for (const auto& l : lambda) out.push_back(l.real());
  std::sort(out.begin(), out.end());
  return out;
}

// Interlacing lambda_k <> mu_k <> lambda_{k+1}; strict[k] selects < over <=.
void interlacing_check(DirectReport& r, const std::string& name, const std::vector<bool>& strict) {
  const auto lr = sorted_real_parts(r.lambda);
  const auto& mu = r.submatrix.mu;
  const double slack = r.tol_base * r.spectral_scale;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double left = mu[k] - lr[k];
    const double right = lr[k + 1] - mu[k];
    const bool ok = strict[k] ? (left > 0.0 && right > 0.0) : (left >= -slack && right >= -slack);
    if (!ok) {
      add(r, name, false,
          "k=" + std::to_string(k + 1) + (strict[k] ? " strict" : " weak") + ": lambda=" + fmt_num(lr[k]) +
              " mu=" + fmt_num(mu[k]) + " lambda=" + fmt_num(lr[k + 1]));
      return;
    }
  }
  add(r, name, true);
}

void real_spectrum_check(DirectReport& r) {
  const double slack = r.tol_base * r.spectral_scale;
  for (std::size_t j = 0; j < r.lambda.size(); ++j) {
    if (std::abs(r.lambda[j].imag()) > slack) {
      add(r, "localization.real_spectrum", false, "lambda=" + fmt_num(r.lambda[j]));
      return;
    }
  }
  add(r, "localization.real_spectrum", true);
}

bool matches_some_mu(const DirectReport& r, double x) {
  const double slack = r.tol_base * r.spectral_scale;
  return std::any_of(r.submatrix.mu.begin(), r.submatrix.mu.end(),
                     [&](double mu) { return std::abs(mu - x) <= slack; });
}

void sign_pattern_check(DirectReport& r) {
  // Real beta: strict sign where (-1)^{n-k} beta < 0, weak elsewhere.
  const double tau = r.necessary.tau_eq;
  for (const auto& row : r.necessary.rows) {
    const bool strict = parity_sign(r.n, row.k) * r.beta.value.real() < 0.0;
    const bool ok = strict ? row.sign_margin > tau : row.sign_margin >= -tau;
    if (!ok) {
      add(r, "localization.sign_pattern", false,
          "k=" + std::to_string(row.k + 1) + ": (-1)^(n-k) chi_n(mu_k)=" + fmt_num(row.sign_margin));
      return;
    }
  }
  add(r, "localization.sign_pattern", true);
}

void half_plane_check(DirectReport& r, bool open) {
  const double side = r.a_n.imag() > 0.0 ? 1.0 : -1.0;
  const double floor = open ? 1e-12 * r.spectral_scale : -1e-10 * r.spectral_scale;
  const std::string name = open ? "localization.open_half_plane" : "localization.closed_half_plane";
  for (const auto& l : r.lambda) {
    const double height = side * l.imag();
    if (open ? !(height > floor) : !(height >= floor)) {
      add(r, name, false, "lambda=" + fmt_num(l));
      return;
    }
  }
  add(r, name, true);
}

}  // namespace

void classify_and_verify(DirectReport& r) {
  const std::size_t size = r.submatrix.mu.size();
  switch (r.regime) {
    case Regime::BetaNonrealAnReal: {
      real_spectrum_check(r);
      const bool simple = std::all_of(r.multiplicity.begin(), r.multiplicity.end(), [](int m) { return m == 1; });
      add(r, "localization.simple_spectrum", simple);
      interlacing_check(r, "localization.strict_interlacing", std::vector<bool>(size, true));
      break;
    }
    case Regime::BetaNonrealAnNonreal:
      half_plane_check(r, true);
      break;
    case Regime::BetaRealAnReal: {
      real_spectrum_check(r);
      bool ok = true;
      std::string witness;
      for (std::size_t j = 0; j < r.lambda.size(); ++j) {
        if (r.multiplicity[j] > 2 || (r.multiplicity[j] == 2 && !matches_some_mu(r, r.lambda[j].real()))) {
          ok = false;
          witness = "lambda=" + fmt_num(r.lambda[j]) + " multiplicity=" + std::to_string(r.multiplicity[j]);
          break;
        }
      }
      add(r, "localization.multiplicity", ok, witness);
      std::vector<bool> strict(size);
      for (std::size_t k = 0; k < size; ++k) strict[k] = parity_sign(r.n, k) * r.beta.value.real() < 0.0;
      interlacing_check(r, "localization.weak_interlacing", strict);
      sign_pattern_check(r);
      break;
    }
    case Regime::BetaRealAnNonreal: {
      half_plane_check(r, false);
      const double real_floor = 1e-10 * r.spectral_scale;
      bool ok = true;
      std::string witness;
      for (const auto& l : r.lambda) {
        if (std::abs(l.imag()) <= real_floor && !matches_some_mu(r, l.real())) {
          ok = false;
          witness = "real lambda=" + fmt_num(l) + " is not a submatrix eigenvalue";
          break;
        }
      }
      add(r, "localization.real_eigenvalues_in_submatrix_spectrum", ok, witness);
      sign_pattern_check(r);
      break;
    }
  }
}

DirectReport full_spectrum(const PeriodicMatrixGeneral& m, double tol_base) {
  validate_general(m);
  DirectReport r;
  r.n = m.n;
  r.tol_base = tol_base;
  r.beta = beta_of(m, tol_base);
  r.a_n = m.a_n;
  const bool a_n_real = std::abs(m.a_n.imag()) <= tol_base * std::max(1.0, std::abs(m.a_n));
  r.regime = classify_regime(r.beta.is_real, a_n_real);

  const PhaseReduction reduction = phase_reduce(m);
  r.submatrix = eig_endpoints(reduction.real);
  const std::size_t size = r.submatrix.mu.size();
  for (std::size_t k = 0; k < size; ++k) {
    r.u_first.push_back(reduction.phases[0] * r.submatrix.u_first[k]);
    r.u_last.push_back(reduction.phases[size - 1] * r.submatrix.u_last[k]);
  }
  r.residues = residues_alpha(m, r.submatrix, tol_base);

  // Exact zero residues keep the common roots with chi_{n-1} exact.
  std::vector<double> alpha = r.residues.alpha;
  for (std::size_t k : r.residues.zero_set) alpha[k] = 0.0;
  r.chi_n = assemble_charpoly(r.submatrix.mu, alpha, m.a_n);
  std::vector<cplx> nodes(r.submatrix.mu.begin(), r.submatrix.mu.end());
  r.chi_n_minus_1 = poly_from_roots(nodes);

  const RootSet roots = poly_roots(r.chi_n);
  r.lambda = roots.roots;
  r.multiplicity = roots.multiplicity;
  r.root_residual = roots.residual;

  r.spectral_scale = 1.0;
  for (const auto& l : r.lambda) r.spectral_scale = std::max(r.spectral_scale, std::abs(l));
  for (double mu : r.submatrix.mu) r.spectral_scale = std::max(r.spectral_scale, std::abs(mu));

  std::vector<double> eval_scale(size);
  r.chi_n_at_mu.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    r.chi_n_at_mu[k] = poly_eval(r.chi_n, r.submatrix.mu[k]).value;
    eval_scale[k] = poly_abs_bound(r.chi_n, r.submatrix.mu[k]);
  }
  r.necessary = check_necessary_conditions(r.chi_n_at_mu, r.beta, tol_base, eval_scale);

  // Generic checks shared by every regime.
  {
    bool ok = true;
    std::string witness;
    for (std::size_t k = 0; k < size; ++k) {
      const int expected = -parity_sign(r.n, k);  // (-1)^{n-k-1}
      const int got = r.submatrix.chi_prime_at_mu[k] > 0.0 ? 1 : -1;
      if (got != expected) {
        ok = false;
        witness = "k=" + std::to_string(k + 1);
        break;
      }
    }
    add(r, "submatrix.sign_law", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (std::size_t k = 0; k < size; ++k) {
      const double scale = std::max(1.0, eval_scale[k]);
      const double defect = std::abs(r.residues.alpha[k] * r.submatrix.chi_prime_at_mu[k] + r.chi_n_at_mu[k]);
      if (!(defect <= 1e-9 * scale)) {
        ok = false;
        witness = "k=" + std::to_string(k + 1) + " defect=" + fmt_num(defect);
        break;
      }
    }
    add(r, "residues.consistency", ok, witness);
  }
  if (!r.beta.is_real)
    add(r, "residues.nonzero_for_nonreal_beta", r.residues.zero_set.empty(),
        r.residues.zero_set.empty() ? "" : "k=" + std::to_string(r.residues.zero_set.front() + 1));
  {
    cplx lambda_sum = 0.0;
    double lambda_abs = 0.0;
    for (const auto& l : r.lambda) {
      lambda_sum += l;
      lambda_abs += std::abs(l);
    }
    cplx trace = m.a_n;
    for (double c : m.c) trace += c;
    const double defect = std::abs(lambda_sum - trace);
    add(r, "charpoly.trace", defect <= 1e-10 * std::max(1.0, lambda_abs), "defect=" + fmt_num(defect));
  }
  if (!a_n_is_real(r.regime)) {
    double worst = 0.0;
    for (std::size_t p = 0; p <= r.n; ++p) {
      const double want = -m.a_n.imag() * r.chi_n_minus_1.coeff_of_power(p).real();
      worst = std::max(worst, std::abs(r.chi_n.coeff_of_power(p).imag() - want));
    }
    const double scale = std::max(1.0, std::abs(m.a_n.imag()) * r.chi_n_minus_1.scale());
    add(r, "charpoly.imaginary_part", worst <= 1e-10 * scale, "defect=" + fmt_num(worst));
  }
  {
    std::string real_witness, sign_witness, bound_witness;
    bool real_ok = true, sign_ok = true, bound_ok = true;
    const double tau = r.necessary.tau_eq;
    for (const auto& row : r.necessary.rows) {
      const std::string k = "k=" + std::to_string(row.k + 1) + " ";
      if (!row.chi_real && real_ok) {
        real_ok = false;
        real_witness = k + "Im chi_n(mu_k)=" + fmt_num(row.chi.imag());
      }
      const bool s = r.beta.is_real ? row.sign_margin >= -tau : row.sign_margin > tau;
      if (!s && sign_ok) {
        sign_ok = false;
        sign_witness = k + "margin=" + fmt_num(row.sign_margin);
      }
      if (!(row.bound_margin >= -tau) && bound_ok) {
        bound_ok = false;
        bound_witness = k + "margin=" + fmt_num(row.bound_margin);
      }
    }
    add(r, "necessary.chi_real", real_ok, real_witness);
    add(r, "necessary.sign", sign_ok, sign_witness);
    add(r, "necessary.bound", bound_ok, bound_witness);
  }

  classify_and_verify(r);
  return r;
}

DirectReport full_spectrum(const PeriodicMatrixHat& m, double tol_base) {
  validate_hat(m);
  return full_spectrum(m.to_general(), tol_base);
}

}  // namespace specband
