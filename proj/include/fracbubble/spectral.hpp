#pragma once

#include <cmath>
#include <stdexcept>

#include "fracbubble/common.hpp"

namespace fracbubble {

// Dimension / fractional-order bundle with the derived exponents and the
// bubble normalization constant.
struct SpectralParams {
  int N;
  double s;
  double p_crit;    // 2N/(N-2s)
  double gamma;     // Gamma((N+2s)/2) / Gamma((N-2s)/2)
  double c_norm;    // (4^s gamma)^{(N-2s)/(4s)}, the Sobolev-extremal constant
  double beta_ext;  // kernel normalizer: int P_s(x,1) dx = 1

  double tau() const { return N - 2.0 * s; }  // N - 2s, used everywhere

  // Neumann constant of the mass-one Poisson kernel:
  //   -lim_{t->0} t^{1-2s} d_t (P_s[u]) = kappa_s (-Delta)^s u,
  // with kappa_s = 2^{1-2s} Gamma(1-s)/Gamma(s) (equals 1 at s = 1/2).
  double kappa_trace() const {
    return std::pow(2.0, 1.0 - 2.0 * s) * std::exp(std::lgamma(1.0 - s) - std::lgamma(s));
  }

  static SpectralParams make(int N, double s) {
    if (N < 3) throw std::invalid_argument("SpectralParams: N must be >= 3");
    if (N == 3) {
      if (!(s > 0.0 && s < 0.5))
        throw std::invalid_argument("SpectralParams: N=3 requires 0 < s < 1/2");
    } else if (!(s > 0.0 && s < 1.0)) {
      throw std::invalid_argument("SpectralParams: requires 0 < s < 1");
    }
    SpectralParams p;
    p.N = N;
    p.s = s;
    p.p_crit = 2.0 * N / (N - 2.0 * s);
    p.gamma = std::exp(std::lgamma(0.5 * (N + 2.0 * s)) - std::lgamma(0.5 * (N - 2.0 * s)));
    p.c_norm = std::pow(std::pow(4.0, s) * p.gamma, 0.25 * (N - 2.0 * s) / s);
    p.beta_ext = std::exp(std::lgamma(0.5 * (N + 2.0 * s)) - std::lgamma(s)) /
                 std::pow(M_PI, 0.5 * N);
    return p;
  }
};

struct BubbleSpec {
  Point center;
  double lambda = 1.0;

  static BubbleSpec make(Point center, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("BubbleSpec: lambda must be > 0");
    return BubbleSpec{std::move(center), lambda};
  }
};

// Selects Z_0 = dU/dLambda |_{Lambda=1} (index 0) or Z_i = dU/dy_i (1..N).
struct KernelIndex {
  int index;
  static KernelIndex make(const SpectralParams& p, int i) {
    if (i < 0 || i > p.N) throw std::out_of_range("KernelIndex: index must be in 0..N");
    return KernelIndex{i};
  }
};

}  // namespace fracbubble
