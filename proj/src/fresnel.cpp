#include "premetric/fresnel.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace premetric {

namespace {

// The quartic restricted to xi_0 = 1 with its gradient and Hessian in q.
struct SliceQuartic {
  std::array<double, 35> coeff;
  std::array<std::array<int, 4>, 35> powers;  // exponents of xi_0..xi_3

  explicit SliceQuartic(const TammRubilar<double>& g) {
    coeff = quartic_coefficients(g);
    for (std::size_t n = 0; n < 35; ++n) {
      powers[n] = {0, 0, 0, 0};
      for (int v : sorted_quads()[n]) ++powers[n][static_cast<std::size_t>(v)];
    }
  }

  static double ipow(double x, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  }

  // Value, gradient and Hessian at q.
  void eval(const Eigen::Vector3d& q, double& f, Eigen::Vector3d& grad, Eigen::Matrix3d& hess) const {
    f = 0;
    grad.setZero();
    hess.setZero();
    for (std::size_t n = 0; n < 35; ++n) {
      if (coeff[n] == 0.0) continue;
      const auto& p = powers[n];
      const int e[3] = {p[1], p[2], p[3]};
      auto mono = [&](int d0, int d1, int d2) {
        const int d[3] = {d0, d1, d2};
        double r = coeff[n];
        for (int a = 0; a < 3; ++a) {
          if (e[a] < d[a]) return 0.0;
          double fall = 1;
          for (int t = 0; t < d[a]; ++t) fall *= e[a] - t;
          r *= fall * ipow(q(a), e[a] - d[a]);
        }
        return r;
      };
      f += mono(0, 0, 0);
      for (int a = 0; a < 3; ++a) {
        int d[3] = {0, 0, 0};
        d[a] = 1;
        grad(a) += mono(d[0], d[1], d[2]);
        for (int b = 0; b < 3; ++b) {
          int dd[3] = {d[0], d[1], d[2]};
          dd[b] += 1;
          hess(a, b) += mono(dd[0], dd[1], dd[2]);
        }
      }
    }
  }

  double scale() const {
    double s = 0;
    for (double c : coeff) s = std::max(s, std::fabs(c));
    return s;
  }
};

bool lex_less(const Vec<double, 3>& a, const Vec<double, 3>& b) {
  for (std::size_t i = 0; i < 3; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

SingularReport singular_points(const TammRubilar<double>& g, const QuadrantSpec& quadrant) {
  SingularReport report;
  const SliceQuartic sq(g);
  const double cscale = sq.scale();
  if (cscale == 0.0) return report;
  const int n = std::max(2, quadrant.grid);
  const double edge_tol = 1e-9;

  std::vector<Vec<double, 3>> found;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Eigen::Vector3d q;
        const int idx[3] = {i, j, k};
        for (int a = 0; a < 3; ++a)
          q(a) = quadrant.signs[static_cast<std::size_t>(a)] * quadrant.extent * (idx[a] + 0.5) / n;

        // Levenberg-Marquardt on r = (f, grad f), Jacobian (grad f; Hess f).
        double mu = 1e-3;
        double f;
        Eigen::Vector3d grad;
        Eigen::Matrix3d hess;
        sq.eval(q, f, grad, hess);
        auto resid = [&](double ff, const Eigen::Vector3d& gg) { return ff * ff + gg.squaredNorm(); };
        double r = resid(f, grad);
        for (int it = 0; it < 200 && r > 0; ++it) {
          Eigen::Matrix<double, 4, 3> jac;
          jac.row(0) = grad.transpose();
          jac.bottomRows(3) = hess;
          Eigen::Vector4d rv;
          rv << f, grad;
          const Eigen::Matrix3d jtj = jac.transpose() * jac;
          const Eigen::Vector3d step = (jtj + mu * Eigen::Matrix3d::Identity()).ldlt().solve(-jac.transpose() * rv);
          const Eigen::Vector3d trial = q + step;
          double f2;
          Eigen::Vector3d g2;
          Eigen::Matrix3d h2;
          sq.eval(trial, f2, g2, h2);
          const double r2 = resid(f2, g2);
          if (r2 < r) {
            q = trial;
            f = f2;
            grad = g2;
            hess = h2;
            r = r2;
            mu = std::max(mu / 10, 1e-15);
            if (step.norm() < 1e-15 * std::max(1.0, q.norm())) break;
          } else {
            mu *= 10;
            if (mu > 1e12) break;
          }
        }
        // Newton polish on grad f = 0 where the Hessian allows it.
        for (int it = 0; it < 5; ++it) {
          Eigen::FullPivLU<Eigen::Matrix3d> lu(hess);
          if (lu.rank() < 3) break;
          const Eigen::Vector3d trial = q - lu.solve(grad);
          double f2;
          Eigen::Vector3d g2;
          Eigen::Matrix3d h2;
          sq.eval(trial, f2, g2, h2);
          if (g2.norm() >= grad.norm()) break;
          q = trial;
          f = f2;
          grad = g2;
          hess = h2;
        }
        const double tol = 1e-10 * cscale * std::pow(std::max(1.0, q.norm()), 4);
        if (std::fabs(f) > tol || grad.norm() > tol) continue;
        bool inside = true;
        for (int a = 0; a < 3; ++a)
          if (quadrant.signs[static_cast<std::size_t>(a)] * q(a) < -edge_tol) inside = false;
        if (!inside) continue;
        Vec<double, 3> p{q(0), q(1), q(2)};
        for (auto& x : p)
          if (std::fabs(x) < edge_tol) x = 0.0;
        bool dup = false;
        for (const auto& other : found) {
          double d = 0;
          for (std::size_t a = 0; a < 3; ++a) d = std::max(d, std::fabs(other[a] - p[a]));
          if (d < 1e-7) dup = true;
        }
        if (dup) continue;
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(hess);
        const auto& s = svd.singularValues();
        if (s(0) == 0.0 || s(2) <= 1e-6 * s(0))
          report.non_isolated = true;
        else
          report.isolated.push_back(p);
        found.push_back(p);
      }
  std::sort(found.begin(), found.end(), lex_less);
  std::sort(report.isolated.begin(), report.isolated.end(), lex_less);
  report.points = std::move(found);
  return report;
}

namespace {

std::string component_failure(const char* what, std::size_t n) {
  return std::string(what) + " at component " + quad_key(sorted_quads()[n]);
}

bool first_mismatch(const TammRubilar<Rational>& a, const TammRubilar<Rational>& b, std::size_t& where) {
  for (std::size_t n = 0; n < 35; ++n)
    if (a[n] != b[n]) {
      where = n;
      return true;
    }
  return false;
}

}  // namespace

InvarianceReport invariance_suite(const AreaOperator<Rational>& kappa, const Rational& f) {
  InvarianceReport rep;
  const auto g = tamm_rubilar(kappa);
  std::size_t where = 0;
  auto note = [&](bool& flag, const char* what) {
    flag = false;
    if (rep.failure.empty()) rep.failure = component_failure(what, where);
  };

  const Rational f3 = f * f * f;
  if (first_mismatch(tamm_rubilar(scale(kappa, f)), scale(g, f3), where)) note(rep.scaling, "scaling");

  const auto skew = decompose(kappa).skewon;
  if (first_mismatch(tamm_rubilar(skew), TammRubilar<Rational>(), where)) note(rep.skewon, "skewon");

  if (first_mismatch(tamm_rubilar(add_identity(kappa, f)), g, where)) note(rep.axion, "axion");

  const Rational d = det6(kappa);
  const auto lhs = add(scale(g, Rational(d * d)), tamm_rubilar(adjugate(kappa)));
  if (first_mismatch(lhs, TammRubilar<Rational>(), where)) note(rep.adjugate, "adjugate");
  return rep;
}

}  // namespace premetric
