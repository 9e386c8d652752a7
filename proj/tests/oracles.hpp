#pragma once

// Brute-force reference values for the unit and acceptance tests. Nothing
// here calls into the library: quadrature is plain composite Simpson and
// closed forms are written out directly.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

inline double simpson(const Fn& f, double a, double b, int panels = 20000) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  long double s = static_cast<long double>(f(a)) + f(b);
  for (int i = 1; i < panels; ++i) s += static_cast<long double>(f(a + i * h)) * (i % 2 ? 4.0L : 2.0L);
  return static_cast<double>(s * h / 3.0L);
}

// Integral of f over (lo, hi) with lo > 0, in the coordinate s = log y.
inline double simpson_log(const Fn& f, double lo, double hi, int panels = 20000) {
  return simpson([&](double s) { const double y = std::exp(s); return f(y) * y; },
                 std::log(lo), std::log(hi), panels);
}

// Integral over (0, upper), split at the given points; each piece is
// integrated on the log scale so that both y -> 0 and long tails are
// resolved. Pieces start just above their left cut, so a left-continuous
// integrand is sampled from the right there. The mass below 1e-14 is ignored.
inline double halfline(const Fn& f, std::vector<double> cuts = {}, double upper = 120.0,
                       int panels = 20000) {
  cuts.push_back(1e-14);
  cuts.push_back(upper);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] <= 0.0 || cuts[i + 1] > upper) continue;
    total += simpson_log(f, std::nextafter(cuts[i], upper), cuts[i + 1], panels);
  }
  return total;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// psi(n) = -gamma + sum_{k<n} 1/k.
inline double digamma_int(int n) {
  double s = -0.57721566490153286061;
  for (int k = 1; k < n; ++k) s += 1.0 / k;
  return s;
}

// sum_{k=0}^{n-2} e^{k^2/2} / (k+1)!.
inline double lognormal_family_rho(int n) {
  double s = 0.0;
  for (int k = 0; k <= n - 2; ++k) s += std::exp(0.5 * k * k) / factorial(k + 1);
  return s;
}

inline double lognormal_density(double lambda, double t) {
  if (t <= 0.0) return 0.0;
  const double l = std::log(t);
  return (1.0 + lambda * std::sin(std::numbers::pi * l)) * std::exp(-0.5 * l * l) /
         (t * std::sqrt(2.0 * std::numbers::pi));
}

// G_lambda(u) = int_1^{L(u)} (e^y/y) f dy + int_0^1 ((e^t - 1)/t) f dt - int_1^inf f/t dt.
inline double lognormal_family_quantile(double lambda, double u) {
  const auto f = [lambda](double t) { return lognormal_density(lambda, t); };
  const double y = -std::log1p(-u);
  const auto kernel = [&](double x) { return std::exp(x) / x * f(x); };
  const double a = y >= 1.0 ? simpson_log(kernel, 1.0, y, 4000) : -simpson_log(kernel, y, 1.0, 4000);
  const double b = simpson_log([&](double t) { return std::expm1(t) / t * f(t); }, 1e-12, 1.0);
  const double c = simpson_log([&](double t) { return f(t) / t; }, 1.0, 1e8);
  return a + b - c;
}

inline double gamma_pdf(double shape, double rate, double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(t) - rate * t -
                  std::lgamma(shape));
}

// Pr(Erlang(k,1) <= t), by direct summation.
inline double erlang_cdf(int k, double t) {
  double term = std::exp(-t);
  double s = 0.0;
  for (int j = 0; j < k; ++j) {
    s += term;
    term *= t / (j + 1);
  }
  return 1.0 - s;
}

// g(t) = 1/t for t > 1 and (1 + e t - e^t)/t for t <= 1.
inline double ct_kernel(double t) {
  if (t > 1.0) return 1.0 / t;
  return (1.0 + std::numbers::e * t - std::exp(t)) / t;
}

// Integral over (0, inf) of e^{-y} H(y), where H is built directly from the
// law of T without any centring constant:
//   y <= 1: H(y) = (e^y/y) F(y-) + int_y^1 ((x-1)/x^2) e^x F(x) dx - e F(1-)
//   y >  1: H(y) = e - (e^y/y) S(y-) + int_1^y ((x-1)/x^2) e^x S(x) dx - e F(1-)
// with S = 1 - F. The second branch is carried in the scaled form e^{-y} H
// so that heavy T tails do not overflow. `cuts` are the jumps of F.
struct TLaw {
  Fn cdf, cdf_left, sf, sf_left;
};

inline double centering_integral(const TLaw& t, std::vector<double> cuts, double upper = 1e4,
                                 int panels = 8000) {
  constexpr double e = std::numbers::e;
  const double f1_left = t.cdf_left(1.0);
  std::sort(cuts.begin(), cuts.end());
  auto pieces = [&](double lo, double hi) {
    std::vector<double> p{lo};
    for (double c : cuts) {
      if (c > lo && c < hi) p.push_back(c);
    }
    p.push_back(hi);
    return p;
  };
  auto kernel = [](double x) { return (x - 1.0) / (x * x); };
  double total = 0.0;

  // (0, 1], accumulated from y = 1 downwards.
  {
    const std::vector<double> p = pieces(1e-12, 1.0);
    double inner = 0.0;  // int_y^1 kernel e^x F dx
    for (std::size_t k = p.size() - 1; k-- > 0;) {
      const double a = std::log(p[k]), b = std::log(p[k + 1]);
      const double h = (b - a) / panels;
      // Piece ends are the cuts themselves so jumps are read from the correct side.
      const auto node = [&](int i) { return i == 0 ? p[k] : i == panels ? p[k + 1] : std::exp(a + i * h); };
      std::vector<double> q(panels + 1);
      for (int i = panels; i >= 0; --i) {
        const double s = a + i * h;
        const double y = node(i);
        if (i < panels) {
          const auto g = [&](double x, bool left) {
            return kernel(x) * std::exp(x) * (left ? t.cdf_left(x) : t.cdf(x)) * x;
          };
          inner += h / 6.0 * (g(y, false) + 4.0 * g(std::exp(s + 0.5 * h), false) + g(node(i + 1), i + 1 == panels));
        }
        const double f = i == 0 ? t.cdf(y) : t.cdf_left(y);
        const double H = std::exp(y) / y * f + inner - e * f1_left;
        q[i] = std::exp(-y) * H * y;
      }
      double sum = q[0] + q[panels];
      for (int i = 1; i < panels; ++i) sum += q[i] * (i % 2 ? 4.0 : 2.0);
      total += sum * h / 3.0;
    }
  }

  // (1, upper), with scaled inner integral e^{-y} int_1^y kernel e^x S dx.
  {
    const std::vector<double> p = pieces(1.0, upper);
    double scaled_inner = 0.0;
    double y_prev = 1.0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      const double a = std::log(p[k]), b = std::log(p[k + 1]);
      const double h = (b - a) / panels;
      // Piece ends are the cuts themselves so jumps are read from the correct side.
      const auto node = [&](int i) { return i == 0 ? p[k] : i == panels ? p[k + 1] : std::exp(a + i * h); };
      std::vector<double> q(panels + 1);
      for (int i = 0; i <= panels; ++i) {
        const double s = a + i * h;
        const double y = node(i);
        if (i > 0) {
          const auto g = [&](double x, bool left) {
            return kernel(x) * std::exp(x - y) * (left ? t.sf_left(x) : t.sf(x)) * x;
          };
          scaled_inner = scaled_inner * std::exp(y_prev - y) +
                         h / 6.0 * (g(node(i - 1), false) + 4.0 * g(std::exp(s - 0.5 * h), false) + g(y, i == panels));
        }
        y_prev = y;
        const double surv = i == 0 ? t.sf(y) : t.sf_left(y);
        const double scaled_h = (e - e * f1_left) * std::exp(-y) - surv / y + scaled_inner;
        q[i] = scaled_h * y;
      }
      double sum = q[0] + q[panels];
      for (int i = 1; i < panels; ++i) sum += q[i] * (i % 2 ? 4.0 : 2.0);
      total += sum * h / 3.0;
    }
  }
  return total;
}

}  // namespace oracle
