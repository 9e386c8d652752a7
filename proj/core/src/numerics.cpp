#include "recseq/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "recseq/errors.hpp"

namespace recseq {

namespace {

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  bool operator<(const Segment& other) const { return error < other.error; }
};

class Refiner {
 public:
  Refiner(const RealFn& f, const Tolerance& tol) : f_(f), tol_(tol) {}

  const Segment& add(double a, double b) {
    Segment s = evaluate(a, b);
    value_ += s.value;
    error_ += s.error;
    push(s);
    last_ = s;
    return last_;
  }

  // Bisects the worst segment until the summed error estimate plus `reserved`
  // meets the tolerance. Returns true on success.
  bool refine(double reserved) {
    while (true) {
      if (!finite_) return false;
      if (error_ + reserved <= tol_.target(value_)) {
        resum();
        if (error_ + reserved <= tol_.target(value_)) return true;
      }
      if (heap_.size() >= tol_.max_subdivisions) {
        diagnostic_ = "maximum number of subdivisions reached";
        return false;
      }
      std::pop_heap(heap_.begin(), heap_.end());
      const Segment worst = heap_.back();
      const double mid = worst.a + 0.5 * (worst.b - worst.a);
      if (!(mid > worst.a && mid < worst.b)) {
        std::push_heap(heap_.begin(), heap_.end());
        diagnostic_ = "segment too small to subdivide";
        return false;
      }
      heap_.pop_back();
      const Segment left = evaluate(worst.a, mid);
      const Segment right = evaluate(mid, worst.b);
      push(left);
      push(right);
      value_ += left.value + right.value - worst.value;
      error_ += left.error + right.error - worst.error;
    }
  }

  QuadResult result(bool converged, double extra_error) {
    resum();
    QuadResult r;
    r.value = value_;
    r.abs_error_estimate = error_ + extra_error;
    r.evaluations = evaluations_;
    r.converged = converged && finite_ && r.abs_error_estimate <= tol_.target(r.value);
    if (!finite_) {
      r.diagnostic = "integrand returned a non-finite value";
    } else if (!r.converged && diagnostic_.empty()) {
      r.diagnostic = "requested accuracy not reached";
    } else if (!r.converged) {
      r.diagnostic = diagnostic_;
    }
    return r;
  }

  double value() {
    resum();
    return value_;
  }

 private:
  Segment evaluate(double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f_(center);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::abs(resk);
    for (std::size_t j = 0; j < 10; ++j) {
      const double dx = half * kXgk[j];
      const double f1 = f_(center - dx);
      const double f2 = f_(center + dx);
      resk += kWgk[j] * (f1 + f2);
      resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    evaluations_ += 21;
    Segment s;
    s.a = a;
    s.b = b;
    s.value = resk * half;
    s.l1 = resabs * std::abs(half);
    s.error = std::abs((resk - resg) * half);
    s.error = std::max(s.error, 50.0 * kEps * s.l1);
    if (!std::isfinite(s.value) || !std::isfinite(s.error)) finite_ = false;
    return s;
  }

  void push(const Segment& s) {
    heap_.push_back(s);
    std::push_heap(heap_.begin(), heap_.end());
  }

  void resum() {
    double v = 0.0;
    double e = 0.0;
    for (const Segment& s : heap_) {
      v += s.value;
      e += s.error;
    }
    value_ = v;
    error_ = e;
  }

  const RealFn& f_;
  Tolerance tol_;
  std::vector<Segment> heap_;
  Segment last_;
  double value_ = 0.0;
  double error_ = 0.0;
  std::size_t evaluations_ = 0;
  bool finite_ = true;
  std::string diagnostic_;
};

std::vector<double> interior_points(std::span<const double> pts, double a, double b) {
  std::vector<double> out;
  for (double p : pts) {
    if (p > a && p < b) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double tail_bound(const GrowthBound& g, double y) {
  const double c = 1.0 - g.theta;
  if (!(c > 0.0)) return kInf;
  // scale * Gamma(power + 1, c y) / c^(power + 1)
  const double a = g.power + 1.0;
  return g.scale * boost::math::tgamma(a, c * y) / std::pow(c, a);
}

}  // namespace

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions == 0) {
    throw InputError("tolerance fields must be strictly positive");
  }
}

double Tolerance::target(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

Tolerance Tolerance::scaled(double factor) const {
  Tolerance t = *this;
  t.abs_tol *= factor;
  t.rel_tol *= factor;
  return t;
}

QuadResult integrate_interval(const RealFn& f, double a, double b, const Tolerance& tol,
                              std::span<const double> breakpoints) {
  tol.validate();
  if (a == b) return QuadResult{0.0, 0.0, 0, true, {}};
  if (a > b) {
    QuadResult r = integrate_interval(f, b, a, tol, breakpoints);
    r.value = -r.value;
    return r;
  }
  Refiner refiner(f, tol);
  double left = a;
  for (double p : interior_points(breakpoints, a, b)) {
    refiner.add(left, p);
    left = p;
  }
  refiner.add(left, b);
  const bool ok = refiner.refine(0.0);
  return refiner.result(ok, 0.0);
}

QuadResult integrate_halfline(const RealFn& f, const Tolerance& tol,
                              const HalflineOptions& options) {
  tol.validate();
  Refiner refiner(f, tol);
  const double upper = options.upper;
  if (!(upper > 0.0)) return QuadResult{0.0, 0.0, 0, true, {}};

  std::vector<double> panel_l1;
  double edge = 0.0;
  auto add_panel = [&](double lo, double hi) {
    double l1 = 0.0;
    double left = lo;
    for (double p : interior_points(options.breakpoints, lo, hi)) {
      l1 += refiner.add(left, p).l1;
      left = p;
    }
    l1 += refiner.add(left, hi).l1;
    panel_l1.push_back(l1);
    edge = hi;
  };
  auto next_edge = [](double e) { return e < 1.0 ? 1.0 : 2.0 * e; };

  if (std::isfinite(upper)) {
    while (edge < upper) add_panel(edge, std::min(next_edge(edge), upper));
    const bool ok = refiner.refine(0.0);
    return refiner.result(ok, 0.0);
  }

  while (edge < options.min_extent) add_panel(edge, next_edge(edge));

  double tail = 0.0;
  while (true) {
    bool done = false;
    if (options.growth && edge >= options.growth->from) {
      tail = tail_bound(*options.growth, edge);
      done = tail <= 0.25 * tol.abs_tol;
    } else if (!options.growth) {
      const std::size_t k = panel_l1.size();
      const double v0 = panel_l1[k - 3];
      const double v1 = panel_l1[k - 2];
      const double v2 = panel_l1[k - 1];
      if (v1 == 0.0 && v2 == 0.0) {
        tail = 0.0;
        done = true;
      } else if (v0 > 0.0 && v1 > 0.0) {
        const double r = std::max(v2 / v1, v1 / v0);
        if (r < 0.5) {
          tail = v2 * r / (1.0 - r);
          done = tail <= 0.25 * tol.target(refiner.value());
        }
      }
    }
    if (done) break;
    if (edge >= options.max_extent) {
      QuadResult r = refiner.result(false, kInf);
      r.diagnostic = "tail bound could not be established by y = " + std::to_string(edge);
      return r;
    }
    add_panel(edge, next_edge(edge));
  }
  const bool ok = refiner.refine(tail);
  return refiner.result(ok, tail);
}

QuadResult integrate_unit(const RealFn& f, const Tolerance& tol, const UnitOptions& options) {
  if (!(options.upper > 0.0 && options.upper <= 1.0)) {
    throw DomainError("integrate_unit: upper limit must lie in (0, 1]");
  }
  if (!options.log_singular_at_one) {
    return integrate_interval(f, 0.0, options.upper, tol, options.breakpoints);
  }
  HalflineOptions h;
  h.upper = options.upper >= 1.0 ? kInf : exp_coordinate(options.upper);
  for (double u : options.breakpoints) {
    if (u > 0.0 && u < 1.0) h.breakpoints.push_back(exp_coordinate(u));
  }
  RealFn g = [&f](double y) {
    const double w = std::exp(-y);
    if (w == 0.0) return 0.0;
    const double u = std::min(-std::expm1(-y), std::nextafter(1.0, 0.0));
    return f(u) * w;
  };
  return integrate_halfline(g, tol, h);
}

double bisect_level(const RealFn& g, double level, Interval bracket, double x_tol, int max_iter) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi)) throw DomainError("bisection bracket must satisfy lo < hi");
  if (g(hi) < level) throw DomainError("level lies above the range of the function on the bracket");
  if (g(lo) >= level) throw DomainError("level lies below the range of the function on the bracket");
  for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (g(mid) >= level) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double invert_monotone(const RealFn& F, double u, Interval bracket, double x_tol, int max_iter) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("invert_monotone: u must lie in (0, 1)");
  return bisect_level(F, u, bracket, x_tol, max_iter);
}

double central_difference(const RealFn& f, double x, double h) {
  auto d = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial of a negative integer");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double erlang_survival(int n, double t) {
  if (n < 1) throw DomainError("erlang_survival: shape must be >= 1");
  if (t <= 0.0) return 1.0;
  if (!std::isfinite(t)) return 0.0;
  const double log_t = std::log(t);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += std::exp(-t + j * log_t - log_factorial(j));
  }
  return std::min(sum, 1.0);
}

double upper_gamma_integer(int k, double t) {
  if (k < 0) throw DomainError("upper_gamma_integer: k must be >= 0");
  return std::exp(log_factorial(k)) * erlang_survival(k + 1, t);
}

double expm1_over_x(double t) {
  if (std::abs(t) < 1e-4) {
    // 1 + t/2! + t^2/3! + ... (8 terms)
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 8; ++k) {
      term *= t / static_cast<double>(k + 1);
      sum += term;
    }
    return sum;
  }
  return std::expm1(t) / t;
}

double exp_coordinate(double u) { return -std::log1p(-u); }

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

std::vector<double> geomspace(double a, double b, std::size_t n) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("geomspace endpoints must be positive");
  std::vector<double> out = linspace(std::log(a), std::log(b), n);
  for (double& v : out) v = std::exp(v);
  if (!out.empty()) {
    out.front() = a;
    out.back() = b;
  }
  return out;
}

}  // namespace recseq
