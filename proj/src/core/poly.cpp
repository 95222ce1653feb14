#include "poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "errors.hpp"
#include "format.hpp"

namespace specband {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Raw Aberth iteration on coefficients with a nonzero constant term.
std::vector<cplx> aberth(const std::vector<cplx>& coeffs, int& iterations) {
  const std::size_t degree = coeffs.size() - 1;
  std::vector<cplx> monic(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / coeffs[0];
  std::vector<double> abs_coeffs(monic.size());
  for (std::size_t i = 0; i < monic.size(); ++i) abs_coeffs[i] = std::abs(monic[i]);

  double radius = 0.0;
  for (std::size_t i = 1; i < monic.size(); ++i) radius = std::max(radius, abs_coeffs[i]);
  radius += 1.0;

  std::mt19937_64 rng(0x5eedULL + degree);
  std::vector<cplx> z(degree);
  const double sector = 2.0 * std::numbers::pi / static_cast<double>(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    const double angle = sector * (static_cast<double>(k) + 0.25 + 0.5 * uniform01(rng)) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  std::vector<bool> done(degree, false);
  iterations = 0;
  while (iterations < kRootMaxIterations) {
    ++iterations;
    bool all_done = true;
    for (std::size_t i = 0; i < degree; ++i) {
      if (done[i]) continue;
      cplx value = monic[0];
      cplx deriv = 0.0;
      double bound = abs_coeffs[0];
      const double az = std::abs(z[i]);
      for (std::size_t k = 1; k < monic.size(); ++k) {
        deriv = deriv * z[i] + value;
        value = value * z[i] + monic[k];
        bound = bound * az + abs_coeffs[k];
      }
      if (std::abs(value) <= kEps * bound) {
        done[i] = true;
        continue;
      }
      all_done = false;
      if (deriv == 0.0) {
        z[i] *= cplx(1.0 + 1e-3, 1e-3);
        continue;
      }
      const cplx ratio = value / deriv;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < degree; ++j) {
        if (j == i) continue;
        const cplx diff = z[i] - z[j];
        if (diff != 0.0) repulsion += 1.0 / diff;
      }
      const cplx step = ratio / (1.0 - ratio * repulsion);
      z[i] -= step;
      if (std::abs(step) <= kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) break;
  }
  return z;
}

std::vector<cplx> derivative_coeffs(const std::vector<cplx>& c, std::size_t order) {
  std::vector<cplx> d = c;
  for (std::size_t o = 0; o < order && d.size() > 1; ++o) {
    const std::size_t deg = d.size() - 1;
    std::vector<cplx> next(deg);
    for (std::size_t i = 0; i < deg; ++i) next[i] = d[i] * static_cast<double>(deg - i);
    d = std::move(next);
  }
  return d;
}

// A root of multiplicity m is a simple root of the (m-1)-th derivative, where
// Newton converges quadratically instead of stalling near sqrt(eps).
cplx polish_multiple(const std::vector<cplx>& coeffs, std::size_t multiplicity, cplx start, double reach) {
  const std::vector<cplx> d = derivative_coeffs(coeffs, multiplicity - 1);
  cplx z = start;
  for (int it = 0; it < 20; ++it) {
    cplx value = d[0], deriv = 0.0;
    for (std::size_t k = 1; k < d.size(); ++k) {
      deriv = deriv * z + value;
      value = value * z + d[k];
    }
    if (deriv == 0.0) break;
    const cplx step = value / deriv;
    z -= step;
    if (std::abs(z - start) > reach) return start;
    if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

ComplexPolynomial::ComplexPolynomial() : coeffs_{cplx(0.0)} {}

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

ComplexPolynomial ComplexPolynomial::constant(cplx value) {
  return ComplexPolynomial({value});
}

ComplexPolynomial ComplexPolynomial::monomial_root(cplx root) {
  return ComplexPolynomial({cplx(1.0), -root});
}

void ComplexPolynomial::trim() {
  if (coeffs_.empty()) {
    coeffs_.push_back(0.0);
    return;
  }
  std::size_t lead = 0;
  while (lead + 1 < coeffs_.size() && coeffs_[lead] == 0.0) ++lead;
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
}

bool ComplexPolynomial::is_zero() const noexcept {
  return coeffs_.size() == 1 && coeffs_[0] == 0.0;
}

cplx ComplexPolynomial::coeff_of_power(std::size_t power) const noexcept {
  if (power > degree()) return 0.0;
  return coeffs_[degree() - power];
}

double ComplexPolynomial::scale() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& other) const {
  const std::size_t deg = std::max(degree(), other.degree());
  std::vector<cplx> out(deg + 1);
  for (std::size_t p = 0; p <= deg; ++p) out[deg - p] = coeff_of_power(p) + other.coeff_of_power(p);
  return ComplexPolynomial(std::move(out));
}

ComplexPolynomial ComplexPolynomial::operator-(const ComplexPolynomial& other) const {
  return *this + other * cplx(-1.0);
}

ComplexPolynomial ComplexPolynomial::operator*(const ComplexPolynomial& other) const {
  std::vector<cplx> out(coeffs_.size() + other.coeffs_.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  return ComplexPolynomial(std::move(out));
}

ComplexPolynomial ComplexPolynomial::operator*(cplx factor) const {
  std::vector<cplx> out(coeffs_);
  for (auto& c : out) c *= factor;
  return ComplexPolynomial(std::move(out));
}

ComplexPolynomial poly_from_roots(std::span<const cplx> roots) {
  std::vector<cplx> coeffs{cplx(1.0)};
  coeffs.reserve(roots.size() + 1);
  for (const cplx& r : roots) {
    coeffs.push_back(0.0);
    for (std::size_t i = coeffs.size() - 1; i > 0; --i) coeffs[i] -= r * coeffs[i - 1];
  }
  return ComplexPolynomial(std::move(coeffs));
}

PolyValue poly_eval(const ComplexPolynomial& p, cplx z) {
  const auto& c = p.coeffs();
  cplx value = c[0];
  cplx deriv = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    deriv = deriv * z + value;
    value = value * z + c[k];
  }
  return {value, deriv};
}

double poly_abs_bound(const ComplexPolynomial& p, cplx z) {
  const double az = std::abs(z);
  double bound = 0.0;
  for (const auto& c : p.coeffs()) bound = bound * az + std::abs(c);
  return bound;
}

RootSet poly_roots(const ComplexPolynomial& p, double tol) {
  if (p.degree() < 1) fail(ErrorKind::InvalidArgument, "poly_roots: degree must be at least 1");
  for (const auto& c : p.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorKind::InvalidArgument, "poly_roots: non-finite coefficient");

  std::vector<cplx> coeffs = p.coeffs();
  std::size_t zero_roots = 0;
  while (coeffs.size() > 1 && coeffs.back() == 0.0) {
    coeffs.pop_back();
    ++zero_roots;
  }

  RootSet out;
  if (coeffs.size() > 1) out.roots = aberth(coeffs, out.iterations);
  out.roots.insert(out.roots.end(), zero_roots, cplx(0.0));

  double largest = 1.0;
  for (const auto& r : out.roots) largest = std::max(largest, std::abs(r));
  const double threshold = kRootClusterRel * largest;

  std::sort(out.roots.begin(), out.roots.end(), lex_less);
  const std::size_t count = out.roots.size();
  std::vector<int> cluster(count, -1);
  int clusters = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = clusters;
    std::vector<std::size_t> frontier{i};
    while (!frontier.empty()) {
      const std::size_t a = frontier.back();
      frontier.pop_back();
      for (std::size_t b = 0; b < count; ++b) {
        if (cluster[b] < 0 && std::abs(out.roots[a] - out.roots[b]) <= threshold) {
          cluster[b] = clusters;
          frontier.push_back(b);
        }
      }
    }
    ++clusters;
  }
  std::vector<cplx> mean(static_cast<std::size_t>(clusters), cplx(0.0));
  std::vector<int> size(static_cast<std::size_t>(clusters), 0);
  for (std::size_t i = 0; i < count; ++i) {
    mean[static_cast<std::size_t>(cluster[i])] += out.roots[i];
    ++size[static_cast<std::size_t>(cluster[i])];
  }
  for (std::size_t c = 0; c < mean.size(); ++c) {
    if (size[c] < 2) continue;
    mean[c] /= static_cast<double>(size[c]);
    mean[c] = polish_multiple(p.coeffs(), static_cast<std::size_t>(size[c]), mean[c], threshold);
  }
  out.multiplicity.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto c = static_cast<std::size_t>(cluster[i]);
    if (size[c] > 1) out.roots[i] = mean[c];
    out.multiplicity[i] = size[c];
  }
  // Re-sort so that the averaged members stay adjacent and ordered.
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(out.roots[a], out.roots[b]); });
  std::vector<cplx> sorted_roots(count);
  std::vector<int> sorted_mult(count);
  for (std::size_t i = 0; i < count; ++i) {
    sorted_roots[i] = out.roots[order[i]];
    sorted_mult[i] = out.multiplicity[order[i]];
  }
  // Real parts within rounding of each other count as ties, ordered by imaginary part.
  const double tie = 64.0 * std::numeric_limits<double>::epsilon() * largest;
  for (std::size_t i = 0; i < count;) {
    std::size_t j = i + 1;
    while (j < count && sorted_roots[j].real() - sorted_roots[i].real() <= tie) ++j;
    std::vector<std::size_t> group(j - i);
    for (std::size_t g = 0; g < group.size(); ++g) group[g] = i + g;
    std::stable_sort(group.begin(), group.end(),
                     [&](std::size_t a, std::size_t b) { return sorted_roots[a].imag() < sorted_roots[b].imag(); });
    std::vector<cplx> roots_part;
    std::vector<int> mult_part;
    for (std::size_t g : group) {
      roots_part.push_back(sorted_roots[g]);
      mult_part.push_back(sorted_mult[g]);
    }
    std::copy(roots_part.begin(), roots_part.end(), sorted_roots.begin() + static_cast<std::ptrdiff_t>(i));
    std::copy(mult_part.begin(), mult_part.end(), sorted_mult.begin() + static_cast<std::ptrdiff_t>(i));
    i = j;
  }
  out.roots = std::move(sorted_roots);
  out.multiplicity = std::move(sorted_mult);

  for (const auto& r : out.roots) {
    const double bound = poly_abs_bound(p, r);
    if (bound > 0.0) out.residual = std::max(out.residual, std::abs(poly_eval(p, r).value) / bound);
  }
  if (!(out.residual <= tol))
    fail(ErrorKind::NonConvergence, "poly_roots: residual " + fmt_num(out.residual) +
                                        " above tolerance after " + std::to_string(out.iterations) +
                                        " iterations");
  return out;
}

ComplexPolynomial numerator_from_partial_fractions(std::span<const double> nodes,
                                                   std::span<const double> weights) {
  if (nodes.empty() || nodes.size() != weights.size())
    fail(ErrorKind::InvalidMeasure, "nodes and weights must be non-empty and of equal length");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!std::isfinite(nodes[k]) || !std::isfinite(weights[k]))
      fail(ErrorKind::InvalidMeasure, "non-finite node or weight at index " + std::to_string(k));
    if (!(weights[k] > 0.0))
      fail(ErrorKind::InvalidMeasure, "weight " + std::to_string(k) + " is not positive");
    if (k > 0 && !(nodes[k] > nodes[k - 1]))
      fail(ErrorKind::InvalidMeasure, "nodes not strictly increasing at index " + std::to_string(k));
  }
  ComplexPolynomial psi;
  std::vector<cplx> others;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    others.clear();
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != k) others.emplace_back(nodes[j]);
    psi = psi + poly_from_roots(others) * cplx(weights[k]);
  }
  return psi;
}

}  // namespace specband
