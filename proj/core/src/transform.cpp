#include "recseq/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "recseq/ers.hpp"
#include "recseq/errors.hpp"

namespace recseq {

namespace {

constexpr double kE = std::numbers::e;

Tolerance inner(const Tolerance& tol) {
  Tolerance t = tol.scaled(0.01);
  t.max_subdivisions = std::max<std::size_t>(tol.max_subdivisions, 4000);
  return t;
}

double checked(const QuadResult& r, const char* what, double at) {
  if (!r.converged) {
    throw ConvergenceError(std::string(what) + " did not converge at " + std::to_string(at) +
                           ": " + r.diagnostic);
  }
  return r.value;
}

// g(t) of the centring constant.
double g_center(double t) {
  if (t > 1.0) return 1.0 / t;
  return kE - expm1_over_x(t);
}

double g_center_derivative(double t) {
  if (t > 1.0) return -1.0 / (t * t);
  if (t < 0.1) {
    // -sum_{k>=2} (k-1)/k! t^{k-2}
    double sum = 0.0;
    double inv_fact = 0.5;  // 1/k!
    double power = 1.0;
    for (int k = 2; k < 24; ++k) {
      sum += (k - 1) * inv_fact * power;
      inv_fact /= (k + 1);
      power *= t;
    }
    return -sum;
  }
  return (std::exp(t) * (1.0 - t) - 1.0) / (t * t);
}

// Contribution of a unit atom at t to H0 + c_T, left-continuous in y.
double atom_kernel(double y, double t) {
  if (y <= 1.0) {
    if (t < y) return kE;
    if (t <= 1.0) return kE - std::exp(t) / t;
    return 0.0;
  }
  if (t < y) return t <= 1.0 ? kE : std::exp(t) / t;
  return 0.0;
}

double atom_kernel_right(double y, double t) {
  if (y < 1.0) {
    if (t <= y) return kE;
    if (t <= 1.0) return kE - std::exp(t) / t;
    return 0.0;
  }
  if (t <= y) return t <= 1.0 ? kE : std::exp(t) / t;
  return 0.0;
}

double atom_sum(const std::vector<Atom>& atoms, double y, bool right) {
  double s = 0.0;
  for (const Atom& a : atoms) {
    s += a.mass * (right ? atom_kernel_right(y, a.location) : atom_kernel(y, a.location));
  }
  return s;
}

std::vector<double> shifted_breaks(std::span<const double> breaks, double t) {
  std::vector<double> out;
  for (double b : breaks) {
    if (b > t) out.push_back(b - t);
  }
  return out;
}

// Pieces of phi(d) evaluated on the standardised H0 of a non-discrete source.
struct PhiKernel {
  HRep h0;
  Tolerance tol;
  std::vector<double> breaks;  // jump points of H0 plus 1

  double level(double t, bool right) const { return right ? h0.right(t) : h0(t); }

  // F_T(t) (right) or F_T(t-) (left) for t <= 1 from the direct integral.
  double lower(double t, bool right) const {
    if (t <= 0.0) return 0.0;
    const double c = level(t, right);
    auto f = [this, c](double y) { return (1.0 - y) * std::exp(-y) * (c - h0(y)); };
    return checked(integrate_interval(f, 0.0, t, tol, breaks), "F_T", t);
  }

  // e^t (1 - F_T(t)) (right) or e^t (1 - F_T(t-)) (left).
  double scaled_survival(double t, bool right) const {
    const double c = level(t, right);
    auto f = [this, t, c](double s) {
      const double w = std::exp(-s);
      if (w == 0.0) return 0.0;
      return (t + s - 1.0) * w * (h0(t + s) - c);
    };
    HalflineOptions opts;
    opts.breakpoints = shifted_breaks(breaks, t);
    return checked(integrate_halfline(f, tol, opts), "scaled survival", t);
  }

  double cdf(double t, bool right) const {
    if (t <= 0.0) return 0.0;
    if (t <= 1.0) return lower(t, right);
    return 1.0 - std::exp(-t) * scaled_survival(t, right);
  }
};

// phi' pieces for the density form (with optional atoms).
struct DensityInverse {
  std::vector<Atom> atoms;
  RealFn f;
  std::vector<double> breaks;
  Tolerance tol;
  double fc1 = 0.0;  // continuous mass on (0,1]
  double c = 0.0;

  // D(y) - e F_c(1) for y <= 1
  double low_part(double y) const {
    auto g = [this](double t) { return std::exp(t) / t * f(t); };
    return -checked(integrate_interval(g, y, 1.0, tol, breaks), "phi' density part", y);
  }

  // e^{-y} (D(y) - e F_c(1)) for y > 1, through s = y - t.
  double high_part_damped(double y) const {
    auto g = [this, y](double s) {
      const double w = std::exp(-s);
      if (w == 0.0) return 0.0;
      return w * f(y - s) / (y - s);
    };
    HalflineOptions opts;
    opts.upper = y - 1.0;
    for (double b : breaks) {
      if (b < y && b > 1.0) opts.breakpoints.push_back(y - b);
    }
    // Absolute accuracy is demanded of e^y times this integral.
    Tolerance scaled = tol;
    scaled.abs_tol = std::max(tol.abs_tol * std::exp(-y), 1e-300);
    return checked(integrate_halfline(g, scaled, opts), "phi' density part", y);
  }

  double value(double y, bool right) const {
    const double base = atom_sum(atoms, y, right) + kE * fc1 - c;
    if (y <= 1.0) return base + low_part(y);
    return base + std::exp(y) * high_part_damped(y);
  }

  double damped(double y) const {
    const double w = std::exp(-y);
    if (y <= 1.0) return w * value(y, false);
    return w * (atom_sum(atoms, y, false) + kE * fc1 - c) + high_part_damped(y);
  }
};

// phi' pieces for the c.d.f. form.
struct CdfInverse {
  TDist t;
  Tolerance tol;
  std::vector<double> breaks;
  double c = 0.0;

  double value(double y, bool right) const {
    if (y < 1.0) {
      const double edge = right ? t.cdf(y) : t.cdf_left(y);
      auto g = [this](double x) { return (x - 1.0) / (x * x) * std::exp(x) * t.cdf(x); };
      const double tail = checked(integrate_interval(g, y, 1.0, tol, breaks), "phi' c.d.f. part", y);
      return std::exp(y) / y * edge + tail - c;
    }
    const double es = right ? t.scaled_survival(y) : t.scaled_survival_left(y);
    auto g = [this](double x) { return (x - 1.0) / (x * x) * t.scaled_survival(x); };
    const double mid = checked(integrate_interval(g, 1.0, y, tol, breaks), "phi' c.d.f. part", y);
    return -es / y + mid + kE - c;
  }
};

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Atom> normalized_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().location == a.location) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

// Doubling breakpoints keep the adaptive rule from stepping over mass near 0 when t is large.
double density_mass(const TDist& d, double t) {
  std::vector<double> breaks = d.breakpoints;
  for (double b = 1.0; b < t; b *= 2.0) breaks.push_back(b);
  return checked(integrate_interval(d.density, 0.0, t, d.quad_tol, sorted_unique(breaks)), "F_T", t);
}

}  // namespace

double TDist::atom_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.mass;
  return s;
}

double TDist::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (form == Form::cdf) return cdf_fn(t);
  double s = 0.0;
  for (const Atom& a : atoms) {
    if (a.location <= t) s += a.mass;
  }
  if (form == Form::density) {
    s += density_mass(*this, t);
  }
  return std::min(s, 1.0);
}

double TDist::cdf_left(double t) const {
  if (t <= 0.0) return 0.0;
  if (form == Form::cdf) return cdf_left_fn(t);
  double s = 0.0;
  for (const Atom& a : atoms) {
    if (a.location < t) s += a.mass;
  }
  if (form == Form::density) {
    s += density_mass(*this, t);
  }
  return std::min(s, 1.0);
}

double TDist::survival(double t) const {
  if (t <= 0.0) return 1.0;
  if (form == Form::cdf) {
    return t > 1.0 ? std::exp(-t) * scaled_survival_fn(t) : 1.0 - cdf_fn(t);
  }
  double s = 0.0;
  for (const Atom& a : atoms) {
    if (a.location > t) s += a.mass;
  }
  if (form == Form::density) {
    auto tail = [this, t](double x) { return density(t + x); };
    HalflineOptions opts;
    opts.breakpoints = shifted_breaks(breakpoints, t);
    s += checked(integrate_halfline(tail, quad_tol, opts), "survival of T", t);
  }
  return s;
}

double TDist::scaled_survival(double t) const {
  if (form == Form::cdf) return t > 1.0 ? scaled_survival_fn(t) : std::exp(t) * (1.0 - cdf_fn(t));
  return std::exp(t) * survival(t);
}

double TDist::scaled_survival_left(double t) const {
  if (form == Form::cdf) {
    return t > 1.0 ? scaled_survival_left_fn(t) : std::exp(t) * (1.0 - cdf_left_fn(t));
  }
  double s = survival(t);
  for (const Atom& a : atoms) {
    if (a.location == t) s += a.mass;
  }
  return std::exp(t) * s;
}

double TDist::moment(int n, const Tolerance& tol) const {
  if (n < 0) throw DomainError("moment order must be >= 0");
  if (n == 0) return 1.0;
  if (static_cast<std::size_t>(n) < moments_cache.size()) return moments_cache[n];
  if (form == Form::cdf) return moment_from_cdf(n, tol);
  double s = 0.0;
  for (const Atom& a : atoms) s += a.mass * std::pow(a.location, n);
  if (form == Form::density) {
    auto f = [this, n](double t) { return std::pow(t, n) * density(t); };
    HalflineOptions opts;
    opts.breakpoints = breakpoints;
    s += checked(integrate_halfline(f, tol, opts), "moment of T", n);
  }
  return s;
}

double TDist::moment_from_cdf(int n, const Tolerance& tol) const {
  if (n < 0) throw DomainError("moment order must be >= 0");
  if (n == 0) return 1.0;
  auto f = [this, n](double t) {
    const double s = t > 1.0 ? std::exp(-t) * scaled_survival(t) : 1.0 - cdf(t);
    return n * std::pow(t, n - 1) * s;
  };
  HalflineOptions opts;
  opts.breakpoints = breakpoints;
  opts.breakpoints.push_back(1.0);
  return checked(integrate_halfline(f, tol, opts), "moment of T from its c.d.f.", n);
}

TDist t_atoms(std::vector<Atom> atoms, std::string label) {
  TDist t;
  t.form = TDist::Form::atoms;
  t.atoms = normalized_atoms(std::move(atoms));
  for (const Atom& a : t.atoms) t.breakpoints.push_back(a.location);
  t.label = std::move(label);
  return t;
}

TDist t_density(RealFn f, std::string label, std::vector<Atom> atoms,
                std::vector<double> breakpoints) {
  if (!f) throw InputError("density form needs a density function");
  TDist t;
  t.form = TDist::Form::density;
  t.density = std::move(f);
  t.atoms = normalized_atoms(std::move(atoms));
  for (const Atom& a : t.atoms) breakpoints.push_back(a.location);
  t.breakpoints = sorted_unique(std::move(breakpoints));
  t.label = std::move(label);
  return t;
}

double gamma_density(double shape, double rate, double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(t) - rate * t -
                  std::lgamma(shape));
}

TDist t_family(std::string_view name, std::span<const double> p) {
  auto param = [p](std::size_t i, double fallback) { return i < p.size() ? p[i] : fallback; };
  if (name == "gamma" || name == "erlang" || name == "exponential") {
    double shape = 1.0;
    double rate = 1.0;
    if (name == "exponential") {
      rate = param(0, 1.0);
    } else {
      shape = param(0, name == "erlang" ? 2.0 : 1.0);
      rate = param(1, 1.0);
    }
    if (!(shape > 0.0 && rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
      throw InputError(std::string(name) + ": shape and rate must be positive");
    }
    if (name == "erlang" && std::floor(shape) != shape) {
      throw InputError("erlang: shape must be a positive integer");
    }
    TDist t = t_density([shape, rate](double x) { return gamma_density(shape, rate, x); },
                        std::string(name));
    return t;
  }
  if (name == "lognormal") {
    const double mu = param(0, 0.0);
    const double sigma = param(1, 1.0);
    if (!(sigma > 0.0) || !std::isfinite(mu)) throw InputError("lognormal: sigma must be positive");
    return t_density(
        [mu, sigma](double x) {
          if (x <= 0.0) return 0.0;
          const double z = (std::log(x) - mu) / sigma;
          return std::exp(-0.5 * z * z) / (x * sigma * std::sqrt(2.0 * std::numbers::pi));
        },
        "lognormal");
  }
  throw InputError("unknown T family '" + std::string(name) + "'");
}

TDist t_stieltjes(double lambda) {
  if (!(std::abs(lambda) <= 1.0)) throw DomainError("stieltjes family needs |lambda| <= 1");
  return t_density(
      [lambda](double x) {
        if (x <= 0.0) return 0.0;
        const double l = std::log(x);
        return (1.0 + lambda * std::sin(std::numbers::pi * l)) * std::exp(-0.5 * l * l) /
               (x * std::sqrt(2.0 * std::numbers::pi));
      },
      "stieltjes_lambda(" + std::to_string(lambda) + ")");
}

TDist t_dense_support_example(int poisson_terms, int rationals) {
  if (poisson_terms < 1 || rationals < 1) throw InputError("dense-support example needs sizes >= 1");
  std::vector<double> r;
  for (int q = 1; static_cast<int>(r.size()) < rationals; ++q) {
    for (int p = 1; p <= q && static_cast<int>(r.size()) < rationals; ++p) {
      if (std::gcd(p, q) == 1) r.push_back(static_cast<double>(p) / q);
    }
  }
  std::vector<Atom> atoms;
  double total = 0.0;
  for (int k = 0; k < poisson_terms; ++k) {
    const double pk = std::exp(-1.0 - log_factorial(k));
    for (int n = 1; n <= rationals; ++n) {
      const double mass = pk * std::ldexp(1.0, -n);
      atoms.push_back({k + r[n - 1], mass});
      total += mass;
    }
  }
  for (Atom& a : atoms) a.mass /= total;
  return t_atoms(std::move(atoms), "poisson_plus_rationals");
}

void validate_tdist(const TDist& t, const Tolerance& tol) {
  for (const Atom& a : t.atoms) {
    if (!(a.location > 0.0) || !std::isfinite(a.location)) {
      throw DomainError("T must be positive: atom at " + std::to_string(a.location));
    }
    if (!(a.mass > 0.0 && a.mass <= 1.0)) throw InputError("atom masses must lie in (0,1]");
  }
  switch (t.form) {
    case TDist::Form::atoms:
      if (t.atoms.empty()) throw InputError("atom form needs at least one atom");
      if (std::abs(t.atom_mass() - 1.0) > 1e-12) throw InputError("atom masses must sum to 1");
      return;
    case TDist::Form::density: {
      if (!t.density) throw InputError("density form needs a density");
      HalflineOptions opts;
      opts.breakpoints = t.breakpoints;
      const QuadResult total = integrate_halfline(t.density, tol, opts);
      if (!total.converged) throw DomainError("density of T is not integrable");
      if (std::abs(total.value + t.atom_mass() - 1.0) > 1e-8) {
        throw InputError("density and atoms of T must carry total mass 1 (got " +
                         std::to_string(total.value + t.atom_mass()) + ")");
      }
      for (int n = 1; n <= 4; ++n) {
        auto f = [&t, n](double x) { return std::pow(x, n) * t.density(x); };
        if (!integrate_halfline(f, tol, opts).converged) {
          throw DomainError("T lacks a finite moment of order " + std::to_string(n));
        }
      }
      return;
    }
    case TDist::Form::cdf:
      if (!t.cdf_fn || !t.cdf_left_fn || !t.scaled_survival_fn || !t.scaled_survival_left_fn) {
        throw InputError("c.d.f. form needs F, F(-) and the scaled survival views");
      }
      return;
  }
}

VDensity v_density(const QuantileRep& d, const Tolerance& tol) {
  if (!d.has_cdf()) throw DomainError("the density of V needs a c.d.f. view");
  const ErsSeq rho = ers_compute(to_h_rep(d), 2, tol);
  VDensity v;
  v.normalizer = rho.rho[1] - rho.rho[0];
  if (!(v.normalizer > 0.0)) throw DomainError("degenerate source: rho_2 must exceed rho_1");
  auto src = std::make_shared<const QuantileRep>(d);
  const double norm = v.normalizer;
  v.f_v = [src, norm](double x) {
    const double sf = src->survival(x);
    if (sf <= 0.0 || sf >= 1.0) return 0.0;
    return sf * -std::log(sf) / norm;
  };
  return v;
}

HRep standardized_h(const QuantileRep& d, const Tolerance& tol) {
  const HRep h = to_h_rep(d);
  const ErsSeq rho = ers_compute(h, 2, tol);
  return to_h_rep(standardize(d, rho.rho[0], rho.rho[1]));
}

TDist phi(const QuantileRep& d, const Tolerance& tol, const PhiOptions& options) {
  tol.validate();
  if (d.is_discrete()) {
    const auto& xs = d.atoms;
    if (xs.size() < 2) throw MembershipError("not in H*: non-constant required");
    std::vector<Atom> atoms;
    double tail = 1.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      tail -= xs[i].mass;
      const double ti = -std::log(tail);
      const double w = tail * ti * (xs[i + 1].location - xs[i].location);
      atoms.push_back({ti, w});
      total += w;
    }
    for (Atom& a : atoms) a.mass /= total;
    TDist t = t_atoms(std::move(atoms), "phi(" + d.label + ")");
    t.quad_tol = tol;
    for (int n = 0; n <= options.moment_order; ++n) t.moments_cache.push_back(t.moment(n));
    return t;
  }

  const HRep h = to_h_rep(d);
  const ErsSeq rho = ers_compute(h, options.moment_order + 2, tol);
  const MomentSeq m = ers_to_t_moments(rho);
  auto kernel = std::make_shared<PhiKernel>();
  kernel->h0 = to_h_rep(standardize(d, rho.rho[0], rho.rho[1]));
  kernel->tol = inner(tol);
  std::vector<double> jumps;
  for (double b : kernel->h0.breakpoints) {
    if (kernel->h0.right(b) > kernel->h0(b)) jumps.push_back(b);
  }
  kernel->breaks = kernel->h0.breakpoints;
  kernel->breaks.push_back(1.0);
  kernel->breaks = sorted_unique(kernel->breaks);

  TDist t;
  t.form = TDist::Form::cdf;
  t.cdf_fn = [kernel](double x) { return kernel->cdf(x, true); };
  t.cdf_left_fn = [kernel](double x) { return kernel->cdf(x, false); };
  t.scaled_survival_fn = [kernel](double x) { return kernel->scaled_survival(x, true); };
  t.scaled_survival_left_fn = [kernel](double x) { return kernel->scaled_survival(x, false); };
  t.breakpoints = sorted_unique(jumps);
  t.moments_cache = m.m;
  t.quad_tol = tol;
  t.label = "phi(" + d.label + ")";
  return t;
}

double c_T(const TDist& t, const Tolerance& tol) {
  double s = 0.0;
  switch (t.form) {
    case TDist::Form::atoms:
      for (const Atom& a : t.atoms) s += a.mass * g_center(a.location);
      return s;
    case TDist::Form::density: {
      for (const Atom& a : t.atoms) s += a.mass * g_center(a.location);
      auto f = [&t](double x) { return g_center(x) * t.density(x); };
      HalflineOptions opts;
      opts.breakpoints = t.breakpoints;
      opts.breakpoints.push_back(1.0);
      return s + checked(integrate_halfline(f, tol, opts), "c_T", 0.0);
    }
    case TDist::Form::cdf: {
      auto f = [&t](double x) {
        const double surv = x > 1.0 ? std::exp(-x) * t.scaled_survival(x) : 1.0 - t.cdf(x);
        return g_center_derivative(x) * surv;
      };
      HalflineOptions opts;
      opts.breakpoints = t.breakpoints;
      opts.breakpoints.push_back(1.0);
      return (kE - 1.0) + checked(integrate_halfline(f, tol, opts), "c_T", 0.0);
    }
  }
  return s;
}

double centering_offset(const TDist& t, const Tolerance& tol) {
  return c_T(t, tol) - kE * t.cdf_left(1.0);
}

HRep phi_inverse(const TDist& t, const Tolerance& tol) {
  tol.validate();
  validate_tdist(t, tol);
  const double c = c_T(t, tol);
  HRep h;

  if (t.form == TDist::Form::atoms) {
    // H0 is a step function with jumps at the atoms of T.
    std::vector<double> cuts;
    for (const Atom& a : t.atoms) cuts.push_back(a.location);
    std::vector<double> levels;
    std::vector<Atom> law;
    double prev = 0.0;
    for (std::size_t j = 0; j <= cuts.size(); ++j) {
      const double y = j < cuts.size() ? cuts[j] : cuts.back() + 1.0;
      const double level = atom_sum(t.atoms, y, false) - c;
      const double next = j < cuts.size() ? cuts[j] : kInf;
      const double mass = std::isfinite(next) ? std::exp(-prev) * -std::expm1(prev - next)
                                              : std::exp(-prev);
      levels.push_back(level);
      // Equal consecutive levels are merged.
      if (!law.empty() && law.back().location >= level) {
        law.back().mass += mass;
      } else if (mass > 0.0) {
        law.push_back({level, mass});
      }
      prev = next;
    }
    double total = 0.0;
    for (const Atom& a : law) total += a.mass;
    for (Atom& a : law) a.mass /= total;
    auto shared_cuts = std::make_shared<const std::vector<double>>(cuts);
    auto shared_levels = std::make_shared<const std::vector<double>>(levels);
    h.h = [shared_cuts, shared_levels](double y) {
      auto it = std::lower_bound(shared_cuts->begin(), shared_cuts->end(), y);
      return (*shared_levels)[static_cast<std::size_t>(it - shared_cuts->begin())];
    };
    h.h_right = [shared_cuts, shared_levels](double y) {
      auto it = std::upper_bound(shared_cuts->begin(), shared_cuts->end(), y);
      return (*shared_levels)[static_cast<std::size_t>(it - shared_cuts->begin())];
    };
    h.breakpoints = cuts;
    h.source = std::make_shared<const QuantileRep>(make_discrete(law, "phi'(" + t.label + ")"));
    return h;
  }

  if (t.form == TDist::Form::density) {
    auto inv = std::make_shared<DensityInverse>();
    inv->atoms = t.atoms;
    inv->f = t.density;
    inv->breaks = t.breakpoints;
    inv->tol = inner(tol);
    inv->c = c;
    inv->fc1 = checked(integrate_interval(t.density, 0.0, 1.0, inv->tol, t.breakpoints),
                       "continuous mass below 1", 1.0);
    h.h = [inv](double y) { return inv->value(y, false); };
    h.h_right = [inv](double y) { return inv->value(y, true); };
    h.damped = [inv](double y) { return inv->damped(y); };
    h.breakpoints = t.breakpoints;
    h.breakpoints.push_back(1.0);
    h.breakpoints = sorted_unique(h.breakpoints);
    return h;
  }

  auto inv = std::make_shared<CdfInverse>();
  inv->t = t;
  inv->tol = inner(tol);
  inv->c = c;
  inv->breaks = t.breakpoints;
  h.h = [inv](double y) { return inv->value(y, false); };
  h.h_right = [inv](double y) { return inv->value(y, true); };
  h.breakpoints = t.breakpoints;
  h.breakpoints.push_back(1.0);
  h.breakpoints = sorted_unique(h.breakpoints);
  return h;
}

GridComparison roundtrip(const QuantileRep& d, const Tolerance& tol, std::span<const double> grid) {
  const HRep original = standardized_h(d, tol);
  const TDist t = phi(d, tol);
  const HRep rebuilt = phi_inverse(t, tol);
  std::vector<double> ys(grid.begin(), grid.end());
  if (ys.empty()) ys = geomspace(0.02, 8.0, 41);
  GridComparison out;
  for (double y : ys) {
    bool near_jump = false;
    for (double b : original.breakpoints) {
      if (std::abs(y - b) <= 1e-6 * std::max(1.0, b)) near_jump = true;
    }
    if (near_jump) continue;
    const double a = original(y);
    const double r = rebuilt(y);
    out.grid.push_back(y);
    out.expected.push_back(a);
    out.actual.push_back(r);
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(a - r));
  }
  return out;
}

GridComparison invariance_check(const QuantileRep& d, double c, double lambda,
                                const Tolerance& tol, std::span<const double> grid) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  const TDist a = phi(d, tol);
  const TDist b = phi(affine(d, c, lambda), tol);
  std::vector<double> ts(grid.begin(), grid.end());
  if (ts.empty()) ts = geomspace(0.05, 10.0, 40);
  GridComparison out;
  for (double x : ts) {
    const double fa = a.cdf(x);
    const double fb = b.cdf(x);
    const double la = a.cdf_left(x);
    const double lb = b.cdf_left(x);
    out.grid.push_back(x);
    out.expected.push_back(fa);
    out.actual.push_back(fb);
    out.max_discrepancy =
        std::max({out.max_discrepancy, std::abs(fa - fb), std::abs(la - lb)});
  }
  return out;
}

}  // namespace recseq
