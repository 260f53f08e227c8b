#include "fracbubble/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace fracbubble {

namespace {

GaussLegendre compute_gl(int order) {
  GaussLegendre r;
  r.x.resize(order);
  r.w.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

std::map<int, GaussLegendre> g_gl_cache;
std::mutex g_gl_mutex;

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  std::lock_guard<std::mutex> lock(g_gl_mutex);
  auto it = g_gl_cache.find(order);
  if (it == g_gl_cache.end()) it = g_gl_cache.emplace(order, compute_gl(order)).first;
  return it->second;
}

double gl_integrate(const Fn1D& f, double a, double b, int order) {
  const GaussLegendre& gl = gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < order; ++i) s += gl.w[i] * f(mid + half * gl.x[i]);
  return s * half;
}

double gl_composite(const Fn1D& f, const std::vector<double>& breaks, int order) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    s += gl_integrate(f, breaks[i], breaks[i + 1], order);
  return s;
}

std::vector<double> uniform_breaks(double a, double b, int n) {
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = a + (b - a) * i / n;
  return v;
}

std::vector<double> graded_breaks(double a, double b, int n, double grading) {
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) {
    double t = static_cast<double>(i) / n;
    v[i] = a + (b - a) * std::pow(t, grading);
  }
  return v;
}

double power_weighted_end(const Fn1D& g, double b, double alpha, int order) {
  // t = b e^{-xi} turns the weight into e^{-(alpha+1) xi}; truncation at
  // xi_max leaves a remainder below 2e-15 relative.
  const double q = alpha + 1.0;
  const double xi_max = 34.0 / q;
  const int panels = 24;
  const GaussLegendre& gl = gauss_legendre(order);
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a0 = xi_max * p / panels, a1 = xi_max * (p + 1) / panels;
    double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
    for (int i = 0; i < order; ++i) {
      double xi = mid + half * gl.x[i];
      double t = b * std::exp(-xi);
      s += half * gl.w[i] * std::exp(-q * xi) * g(t);
    }
  }
  return s * std::pow(b, q);
}

namespace {

struct Seg {
  double a, b;
  int depth;
};

}  // namespace

double adaptive_integrate(const Fn1D& f, double a, double b, double rel_tol,
                          double abs_floor, int max_depth) {
  if (a == b) return 0.0;
  const double total_scale = std::max(std::abs(gl_integrate(f, a, b, 15)), abs_floor);

  std::vector<Seg> stack;
  stack.push_back({a, b, 0});
  double sum = 0.0;
  double err_accum = 0.0;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    double fine = gl_integrate(f, s.a, s.b, 15);
    double coarse = gl_integrate(f, s.a, s.b, 7);
    double err = std::abs(fine - coarse);
    double tol_here = rel_tol * std::max(total_scale, std::abs(sum)) *
                      std::max(1e-3, (s.b - s.a) / (b - a));
    if (err <= tol_here || s.depth >= max_depth) {
      sum += fine;
      err_accum += err;
    } else {
      double mid = 0.5 * (s.a + s.b);
      // push right first so the left half is processed next (deterministic order)
      stack.push_back({mid, s.b, s.depth + 1});
      stack.push_back({s.a, mid, s.depth + 1});
    }
  }
  if (err_accum > 50.0 * rel_tol * std::max(total_scale, std::abs(sum)) && err_accum > 1e-14)
    throw NumericError("adaptive quadrature: error budget exceeded", sum, err_accum);
  return sum;
}

double adaptive_integrate_to_inf(const Fn1D& f, double a, double rel_tol,
                                 double abs_floor, int max_depth) {
  auto g = [&](double t) {
    double om = 1.0 - t;
    double x = a + t / om;
    return f(x) / (om * om);
  };
  return adaptive_integrate(g, 0.0, 1.0, rel_tol, abs_floor, max_depth);
}

double riemann_zeta(double tau) {
  if (tau <= 1.0) throw std::domain_error("riemann_zeta: requires tau > 1");
  const int M = tau < 1.5 ? 96 : 48;
  double s = 0.0;
  for (int j = 1; j < M; ++j) s += std::pow(j, -tau);
  const double Md = M;
  // Euler-Maclaurin tail at M through the B_6 term
  double t = std::pow(Md, 1.0 - tau) / (tau - 1.0) + 0.5 * std::pow(Md, -tau) +
             tau / 12.0 * std::pow(Md, -tau - 1.0) -
             tau * (tau + 1.0) * (tau + 2.0) / 720.0 * std::pow(Md, -tau - 3.0) +
             tau * (tau + 1.0) * (tau + 2.0) * (tau + 3.0) * (tau + 4.0) / 30240.0 *
                 std::pow(Md, -tau - 5.0);
  return s + t;
}

}  // namespace fracbubble
