#include "premetric/quartic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace premetric {

namespace {

using C = Complex;

C eval(const std::array<C, 5>& c, int degree, C x) {
  C acc = 0;
  for (int k = degree; k >= 0; --k) acc = acc * x + c[static_cast<std::size_t>(k)];
  return acc;
}

double eval_scale(const std::array<C, 5>& c, int degree, double r) {
  double s = 0;
  for (int k = degree; k >= 0; --k) s = s * r + std::abs(c[static_cast<std::size_t>(k)]);
  return s;
}

std::vector<C> solve_quadratic(C a, C b, C c) {
  const C disc = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation.
  const C q = -0.5 * (std::real(std::conj(b) * disc) >= 0 ? b + disc : b - disc);
  if (q == C(0)) return {C(0), C(0)};
  return {q / a, c / q};
}

std::vector<C> solve_cubic_monic(C a, C b, C c) {
  const C p = b - a * a / 3.0;
  const C q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const C root = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  C u3 = -q / 2.0 + root;
  const C alt = -q / 2.0 - root;
  if (std::abs(alt) > std::abs(u3)) u3 = alt;
  std::vector<C> out;
  const C shift = -a / 3.0;
  if (std::abs(u3) == 0.0) {
    for (int k = 0; k < 3; ++k) out.push_back(shift);
    return out;
  }
  const C u = std::pow(u3, 1.0 / 3.0);
  const C omega(-0.5, std::sqrt(3.0) / 2.0);
  C w = 1.0;
  for (int k = 0; k < 3; ++k) {
    const C uk = u * w;
    out.push_back(uk - p / (3.0 * uk) + shift);
    w *= omega;
  }
  return out;
}

std::vector<C> ferrari_monic(C a, C b, C c, C d) {
  const C p = b - 3.0 * a * a / 8.0;
  const C q = c - a * b / 2.0 + a * a * a / 8.0;
  const C r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
  const C shift = -a / 4.0;
  std::vector<C> ys;
  const double scale = std::max({1.0, std::abs(p), std::sqrt(std::abs(r)), std::cbrt(std::abs(q))});
  if (std::abs(q) <= 1e-14 * scale * scale * scale) {
    for (const C z : solve_quadratic(1.0, p, r)) {
      const C s = std::sqrt(z);
      ys.push_back(s);
      ys.push_back(-s);
    }
  } else {
    // 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0, largest root for stability.
    auto ms = solve_cubic_monic(p, (2.0 * p * p - 8.0 * r) / 8.0, -q * q / 8.0);
    const C m = *std::max_element(ms.begin(), ms.end(), [](C x, C y) { return std::abs(x) < std::abs(y); });
    const C w = std::sqrt(2.0 * m);
    for (double s : {1.0, -1.0}) {
      const C inner = std::sqrt(-(2.0 * p + 2.0 * m + s * 2.0 * q / w));
      ys.push_back((s * w + inner) / 2.0);
      ys.push_back((s * w - inner) / 2.0);
    }
  }
  for (auto& y : ys) y += shift;
  return ys;
}

std::vector<C> companion_roots(const std::array<C, 5>& c, int degree) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) m(i, degree - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(degree)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<C> out;
  for (int i = 0; i < degree; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

void polish(const std::array<C, 5>& c, int degree, std::vector<C>& roots) {
  std::array<C, 5> dc{};
  for (int k = 1; k <= degree; ++k) dc[static_cast<std::size_t>(k - 1)] = c[static_cast<std::size_t>(k)] * double(k);
  for (auto& x : roots)
    for (int it = 0; it < 3; ++it) {
      const C f = eval(c, degree, x);
      const C df = eval(dc, degree - 1, x);
      if (df == C(0)) break;
      const C next = x - f / df;
      if (std::abs(eval(c, degree, next)) < std::abs(f))
        x = next;
      else
        break;
    }
}

double max_residual(const std::array<C, 5>& c, int degree, const std::vector<C>& roots) {
  double worst = 0;
  for (const auto& r : roots)
    worst = std::max(worst, std::abs(eval(c, degree, r)) / std::max(1e-300, eval_scale(c, degree, std::abs(r))));
  return worst;
}

double normalized_discriminant(const std::vector<C>& roots) {
  double big = 1.0;
  for (const auto& r : roots) big = std::max(big, std::abs(r));
  double d = 1.0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) d *= std::norm(roots[i] - roots[j]) / (big * big);
  return d;
}

bool root_less(C a, C b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<Complex> solve_quartic(const std::array<Complex, 5>& c) {
  int degree = 4;
  while (degree >= 0 && c[static_cast<std::size_t>(degree)] == C(0)) --degree;
  if (degree < 0) throw Error(ErrorCode::DegeneratePolynomial, "all coefficients vanish");
  std::vector<C> roots;
  const C lead = c[static_cast<std::size_t>(degree)];
  switch (degree) {
    case 0:
      break;
    case 1:
      roots = {-c[0] / lead};
      break;
    case 2:
      roots = solve_quadratic(c[2], c[1], c[0]);
      break;
    case 3:
      roots = solve_cubic_monic(c[2] / lead, c[1] / lead, c[0] / lead);
      break;
    default:
      roots = ferrari_monic(c[3] / lead, c[2] / lead, c[1] / lead, c[0] / lead);
      break;
  }
  if (degree >= 3 && normalized_discriminant(roots) < 1e-12) {
    auto alt = companion_roots(c, degree);
    polish(c, degree, alt);
    polish(c, degree, roots);
    if (max_residual(c, degree, alt) < max_residual(c, degree, roots)) roots = alt;
  } else {
    polish(c, degree, roots);
  }
  std::sort(roots.begin(), roots.end(), root_less);
  return roots;
}

std::vector<RootCluster> cluster_roots(const std::array<Complex, 5>& c, const std::vector<Complex>& roots, double tol) {
  int degree = 4;
  while (degree >= 0 && c[static_cast<std::size_t>(degree)] == C(0)) --degree;
  std::vector<C> rest = roots;
  std::sort(rest.begin(), rest.end(), root_less);
  std::vector<RootCluster> out;
  std::vector<bool> used(rest.size(), false);
  const bool real_coeffs = std::all_of(c.begin(), c.end(), [](C x) { return x.imag() == 0.0; });
  auto binom = [](int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  // Taylor coefficient j of p at x, relative to its natural magnitude.
  auto deriv_small = [&](C x, int j) {
    C acc = 0;
    double scale = 0;
    for (int k = j; k <= degree; ++k) {
      const double b = binom(k, j);
      acc += b * c[static_cast<std::size_t>(k)] * std::pow(x, k - j);
      scale += b * std::abs(c[static_cast<std::size_t>(k)]) * std::pow(std::abs(x), k - j);
    }
    return std::abs(acc) <= tol * std::max(scale, 1e-300);
  };
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (used[i]) continue;
    const double spread = 1e-3 * std::max(1.0, std::abs(rest[i]));
    std::vector<std::size_t> near;
    for (std::size_t j = i; j < rest.size(); ++j)
      if (!used[j] && std::abs(rest[j] - rest[i]) <= spread) near.push_back(j);
    std::sort(near.begin(), near.end(),
              [&](std::size_t x, std::size_t y) { return std::abs(rest[x] - rest[i]) < std::abs(rest[y] - rest[i]); });
    std::size_t m = near.size();
    C mean = rest[i];
    for (; m >= 2; --m) {
      C s = 0;
      for (std::size_t t = 0; t < m; ++t) s += rest[near[t]];
      mean = s / double(m);
      bool ok = true;
      for (int j = 0; j < static_cast<int>(m) && ok; ++j) ok = deriv_small(mean, j);
      if (ok) break;
    }
    if (m < 2) {
      m = 1;
      mean = rest[i];
    }
    for (std::size_t t = 0; t < m; ++t) used[near[t]] = true;
    if (real_coeffs && std::fabs(mean.imag()) <= 1e-9 * std::max(1.0, std::abs(mean))) mean = C(mean.real(), 0.0);
    out.push_back({mean, static_cast<int>(m)});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) { return root_less(a.value, b.value); });
  return out;
}

std::vector<RootCluster> exact_root_clusters(const UPoly<Rational>& p) {
  if (p.is_zero()) throw Error(ErrorCode::DegeneratePolynomial, "all coefficients vanish");
  std::vector<RootCluster> out;
  for (const auto& f : square_free_factorization(p)) {
    std::array<C, 5> c{};
    for (int k = 0; k <= f.factor.degree(); ++k) c[static_cast<std::size_t>(k)] = f.factor.coeff(static_cast<std::size_t>(k)).get_d();
    for (const auto& r : solve_quartic(c)) out.push_back({r, f.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) { return root_less(a.value, b.value); });
  return out;
}

}  // namespace premetric
