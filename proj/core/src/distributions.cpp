#include "recseq/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/erf.hpp>

#include "recseq/errors.hpp"

namespace recseq {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;

double param(std::span<const double> p, std::size_t i, double fallback) {
  return i < p.size() ? p[i] : fallback;
}

void require(bool ok, std::string_view family, std::string_view what) {
  if (!ok) throw InputError(std::string(family) + ": " + std::string(what));
}

// Thresholds y_i = -log Pr(X > x_i) and levels x_i of a discrete law, so that
// H(y) = x_i on (y_{i-1}, y_i]. The last threshold is +inf.
struct StepTable {
  std::vector<double> thresholds;
  std::vector<double> levels;
};

StepTable step_table(const QuantileRep& d) {
  StepTable t;
  const auto& atoms = d.atoms;
  double tail = std::accumulate(atoms.begin(), atoms.end(), 0.0,
                                [](double s, const Atom& a) { return s + a.mass; });
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    tail -= atoms[i].mass;
    const bool last = i + 1 == atoms.size() || tail <= 1e-15;
    t.levels.push_back(atoms[i].location);
    t.thresholds.push_back(last ? kInf : -std::log(tail));
    if (last) break;
  }
  return t;
}

double step_value(const StepTable& t, double y) {
  // first threshold >= y (left-continuous steps)
  auto it = std::lower_bound(t.thresholds.begin(), t.thresholds.end(), y);
  if (it == t.thresholds.end()) return t.levels.back();
  return t.levels[static_cast<std::size_t>(it - t.thresholds.begin())];
}

double step_value_right(const StepTable& t, double y) {
  auto it = std::upper_bound(t.thresholds.begin(), t.thresholds.end(), y);
  if (it == t.thresholds.end()) return t.levels.back();
  return t.levels[static_cast<std::size_t>(it - t.thresholds.begin())];
}

QuantileRep exponential_family(double rate) {
  require(rate > 0.0 && std::isfinite(rate), "exponential", "rate must be positive");
  QuantileRep d;
  d.quantile = [rate](double u) { return -std::log1p(-u) / rate; };
  d.tail_quantile = [rate](double q) { return -std::log(q) / rate; };
  d.cdf = [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
  d.sf = [rate](double x) { return x <= 0.0 ? 1.0 : std::exp(-rate * x); };
  d.pdf = [rate](double x) { return x < 0.0 ? 0.0 : rate * std::exp(-rate * x); };
  d.support_hint = {0.0, kInf};
  d.label = "exponential(" + std::to_string(rate) + ")";
  return d;
}

QuantileRep uniform_family(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform", "need finite a < b");
  QuantileRep d;
  const double w = b - a;
  d.quantile = [a, w](double u) { return a + w * u; };
  d.tail_quantile = [b, w](double q) { return b - w * q; };
  d.cdf = [a, w](double x) { return std::clamp((x - a) / w, 0.0, 1.0); };
  d.sf = [b, w](double x) { return std::clamp((b - x) / w, 0.0, 1.0); };
  d.pdf = [a, b, w](double x) { return (x >= a && x <= b) ? 1.0 / w : 0.0; };
  d.support_hint = {a, b};
  d.label = "uniform";
  return d;
}

QuantileRep log_record_family() {
  QuantileRep d;
  d.quantile = [](double u) { return std::log(-std::log1p(-u)); };
  d.tail_quantile = [](double q) { return std::log(-std::log(q)); };
  d.cdf = [](double x) { return -std::expm1(-std::exp(x)); };
  d.sf = [](double x) { return std::exp(-std::exp(x)); };
  d.pdf = [](double x) { return std::exp(x - std::exp(x)); };
  d.label = "log_record";
  return d;
}

QuantileRep gumbel_family(double mu, double beta) {
  require(beta > 0.0 && std::isfinite(mu), "gumbel", "scale must be positive");
  QuantileRep d;
  d.quantile = [mu, beta](double u) { return mu - beta * std::log(-std::log(u)); };
  d.tail_quantile = [mu, beta](double q) { return mu - beta * std::log(-std::log1p(-q)); };
  d.cdf = [mu, beta](double x) { return std::exp(-std::exp(-(x - mu) / beta)); };
  d.sf = [mu, beta](double x) { return -std::expm1(-std::exp(-(x - mu) / beta)); };
  d.pdf = [mu, beta](double x) {
    const double z = (x - mu) / beta;
    return std::exp(-z - std::exp(-z)) / beta;
  };
  d.label = "gumbel";
  return d;
}

QuantileRep lognormal_family(double mu, double sigma) {
  require(sigma > 0.0 && std::isfinite(mu), "lognormal", "sigma must be positive");
  QuantileRep d;
  using boost::math::erfc_inv;
  d.quantile = [mu, sigma](double u) { return std::exp(mu - sigma * kSqrt2 * erfc_inv(2.0 * u)); };
  d.tail_quantile = [mu, sigma](double q) {
    return std::exp(mu + sigma * kSqrt2 * erfc_inv(2.0 * q));
  };
  d.cdf = [mu, sigma](double x) {
    return x <= 0.0 ? 0.0 : 0.5 * std::erfc(-(std::log(x) - mu) / (sigma * kSqrt2));
  };
  d.sf = [mu, sigma](double x) {
    return x <= 0.0 ? 1.0 : 0.5 * std::erfc((std::log(x) - mu) / (sigma * kSqrt2));
  };
  d.pdf = [mu, sigma](double x) {
    if (x <= 0.0) return 0.0;
    const double z = (std::log(x) - mu) / sigma;
    return std::exp(-0.5 * z * z) / (x * sigma * std::sqrt(2.0 * M_PI));
  };
  d.support_hint = {0.0, kInf};
  d.label = "lognormal";
  return d;
}

QuantileRep erlang_family(double k_real, double rate) {
  require(k_real >= 1.0 && std::floor(k_real) == k_real && k_real <= 1000.0, "erlang",
          "shape must be a positive integer");
  require(rate > 0.0 && std::isfinite(rate), "erlang", "rate must be positive");
  const int k = static_cast<int>(k_real);
  QuantileRep d;
  d.sf = [k, rate](double x) { return x <= 0.0 ? 1.0 : erlang_survival(k, rate * x); };
  d.cdf = [k, rate](double x) { return x <= 0.0 ? 0.0 : 1.0 - erlang_survival(k, rate * x); };
  d.pdf = [k, rate](double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return k == 1 ? rate : 0.0;
    return rate * std::exp((k - 1) * std::log(rate * x) - rate * x - log_factorial(k - 1));
  };
  auto upper_bracket = [k, rate](double level_neglog_sf) {
    double hi = (k + 10.0) / rate;
    while (-std::log(erlang_survival(k, rate * hi)) < level_neglog_sf) hi *= 2.0;
    return hi;
  };
  auto cdf = d.cdf;
  d.quantile = [k, rate, cdf, upper_bracket](double u) {
    if (u > 0.5) {
      const double level = -std::log1p(-u);
      const double hi = upper_bracket(level);
      return bisect_level([k, rate](double x) { return -std::log(erlang_survival(k, rate * x)); },
                          level, {0.0, hi});
    }
    return bisect_level(cdf, u, {0.0, upper_bracket(1.0)});
  };
  d.tail_quantile = [k, rate, upper_bracket](double q) {
    const double level = -std::log(q);
    return bisect_level([k, rate](double x) { return -std::log(erlang_survival(k, rate * x)); },
                        level, {0.0, upper_bracket(level)});
  };
  d.support_hint = {0.0, kInf};
  d.label = "erlang";
  return d;
}

}  // namespace

double QuantileRep::upper(double q) const {
  if (tail_quantile) return tail_quantile(q);
  const double u = 1.0 - q;
  return quantile(u < 1.0 ? u : std::nextafter(1.0, 0.0));
}

double QuantileRep::survival(double x) const {
  if (sf) return sf(x);
  if (cdf) return 1.0 - cdf(x);
  throw DomainError("distribution '" + label + "' has no c.d.f. view");
}

bool QuantileRep::is_discrete() const {
  if (atoms.empty()) return false;
  double total = 0.0;
  for (const Atom& a : atoms) total += a.mass;
  return std::abs(total - 1.0) <= 1e-12;
}

double HRep::damped_at(double y) const {
  if (damped) return damped(y);
  const double w = std::exp(-y);
  if (w == 0.0) return 0.0;
  return w * h(y);
}

QuantileRep make_discrete(std::vector<Atom> atoms, std::string label) {
  if (atoms.empty()) throw InputError("discrete distribution needs at least one atom");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.mass > 0.0 && a.mass <= 1.0) || !std::isfinite(a.location)) {
      throw InputError("atom masses must lie in (0,1] and locations must be finite");
    }
    total += a.mass;
  }
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].location == atoms[i - 1].location) throw InputError("duplicate atom location");
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("atom masses must sum to 1");

  std::vector<double> cumulative;
  double c = 0.0;
  for (const Atom& a : atoms) {
    c += a.mass;
    cumulative.push_back(c);
  }
  cumulative.back() = 1.0;

  QuantileRep d;
  d.atoms = atoms;
  d.label = std::move(label);
  d.quantile = [atoms, cumulative](double u) {
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) return atoms.back().location;
    return atoms[static_cast<std::size_t>(it - cumulative.begin())].location;
  };
  d.quantile_right = [atoms, cumulative](double u) {
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) return atoms.back().location;
    return atoms[static_cast<std::size_t>(it - cumulative.begin())].location;
  };
  // upper tail masses for G(1-q)
  std::vector<double> tails;
  double t = 1.0;
  for (const Atom& a : atoms) {
    t -= a.mass;
    tails.push_back(std::max(t, 0.0));
  }
  tails.back() = 0.0;
  d.tail_quantile = [atoms, tails](double q) {
    // G(1-q) = x_i where tails_i <= q < tails_{i-1}
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (tails[i] <= q) return atoms[i].location;
    }
    return atoms.back().location;
  };
  d.cdf = [atoms, cumulative](double x) {
    auto it = std::upper_bound(atoms.begin(), atoms.end(), x,
                               [](double v, const Atom& a) { return v < a.location; });
    if (it == atoms.begin()) return 0.0;
    return cumulative[static_cast<std::size_t>(it - atoms.begin()) - 1];
  };
  d.sf = [atoms, tails](double x) {
    auto it = std::upper_bound(atoms.begin(), atoms.end(), x,
                               [](double v, const Atom& a) { return v < a.location; });
    if (it == atoms.begin()) return 1.0;
    return tails[static_cast<std::size_t>(it - atoms.begin()) - 1];
  };
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) d.breaks.push_back(cumulative[i]);
  d.support_hint = {atoms.front().location, atoms.back().location};
  return d;
}

QuantileRep make_piecewise_quantile(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw InputError("piecewise_quantile: need at least two knots");
  if (knots.front().first != 0.0 || knots.back().first != 1.0) {
    throw InputError("piecewise_quantile: knots must start at u = 0 and end at u = 1");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second)) {
      throw InputError("piecewise_quantile: knots must be finite");
    }
    if (i > 0 && (knots[i].first < knots[i - 1].first || knots[i].second < knots[i - 1].second)) {
      throw InputError("piecewise_quantile: knots must be non-decreasing in u and x");
    }
    if (i > 0 && knots[i] == knots[i - 1]) throw InputError("piecewise_quantile: repeated knot");
  }
  if (knots.front().second == knots.back().second) {
    // a single level; represent as a point mass
    return make_discrete({{knots.front().second, 1.0}}, "piecewise_quantile");
  }

  auto left_value = [knots](double u) {
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const auto [u0, x0] = knots[j];
      const auto [u1, x1] = knots[j + 1];
      if (u1 > u0 && u > u0 && u <= u1) return x0 + (x1 - x0) * (u - u0) / (u1 - u0);
    }
    return u <= 0.0 ? knots.front().second : knots.back().second;
  };
  auto right_value = [knots](double u) {
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const auto [u0, x0] = knots[j];
      const auto [u1, x1] = knots[j + 1];
      if (u1 > u0 && u >= u0 && u < u1) return x0 + (x1 - x0) * (u - u0) / (u1 - u0);
    }
    return knots.back().second;
  };

  QuantileRep d;
  d.quantile = left_value;
  d.quantile_right = right_value;
  d.tail_quantile = [left_value](double q) { return left_value(1.0 - q); };
  d.cdf = [knots](double x) {
    double best = 0.0;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const auto [u0, x0] = knots[j];
      const auto [u1, x1] = knots[j + 1];
      if (!(u1 > u0)) continue;
      if (x >= x1) {
        best = std::max(best, u1);
      } else if (x >= x0 && x1 > x0) {
        best = std::max(best, u0 + (u1 - u0) * (x - x0) / (x1 - x0));
      }
    }
    return best;
  };
  auto cdf = d.cdf;
  d.sf = [cdf](double x) { return 1.0 - cdf(x); };
  d.pdf = [knots](double x) {
    double dens = 0.0;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const auto [u0, x0] = knots[j];
      const auto [u1, x1] = knots[j + 1];
      if (u1 > u0 && x1 > x0 && x > x0 && x < x1) dens += (u1 - u0) / (x1 - x0);
    }
    return dens;
  };
  for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
    const auto [u0, x0] = knots[j];
    const auto [u1, x1] = knots[j + 1];
    if (u1 > u0 && x1 == x0) {
      if (!d.atoms.empty() && d.atoms.back().location == x0) {
        d.atoms.back().mass += u1 - u0;
      } else {
        d.atoms.push_back({x0, u1 - u0});
      }
    }
    if (j > 0 && u0 > 0.0 && u0 < 1.0) d.breaks.push_back(u0);
  }
  d.breaks.erase(std::unique(d.breaks.begin(), d.breaks.end()), d.breaks.end());
  d.support_hint = {knots.front().second, knots.back().second};
  d.label = "piecewise_quantile";
  if (d.is_discrete()) return make_discrete(d.atoms, d.label);
  return d;
}

QuantileRep make_family(std::string_view name, std::span<const double> p) {
  if (name == "exponential") return exponential_family(param(p, 0, 1.0));
  if (name == "uniform") return uniform_family(param(p, 0, 0.0), param(p, 1, 1.0));
  if (name == "log_record") return log_record_family();
  if (name == "gumbel") return gumbel_family(param(p, 0, 0.0), param(p, 1, 1.0));
  if (name == "lognormal") return lognormal_family(param(p, 0, 0.0), param(p, 1, 1.0));
  if (name == "erlang") return erlang_family(param(p, 0, 2.0), param(p, 1, 1.0));
  if (name == "bernoulli") {
    const double prob = param(p, 0, 0.5);
    require(prob > 0.0 && prob < 1.0, "bernoulli", "p must lie in (0,1)");
    return make_discrete({{0.0, 1.0 - prob}, {1.0, prob}}, "bernoulli");
  }
  if (name == "two_point") {
    const double x1 = param(p, 0, -1.0);
    const double prob = param(p, 1, -std::expm1(-1.0));
    const double x2 = param(p, 2, std::exp(1.0) - 1.0);
    require(prob > 0.0 && prob < 1.0, "two_point", "p must lie in (0,1)");
    require(x1 < x2, "two_point", "need x1 < x2");
    return make_discrete({{x1, prob}, {x2, 1.0 - prob}}, "two_point");
  }
  if (name == "constant") return make_discrete({{param(p, 0, 0.0), 1.0}}, "constant");
  if (name == "piecewise_quantile") {
    require(p.size() >= 4 && p.size() % 2 == 0, "piecewise_quantile",
            "parameters are flattened (u, x) pairs");
    std::vector<std::pair<double, double>> knots;
    for (std::size_t i = 0; i < p.size(); i += 2) knots.emplace_back(p[i], p[i + 1]);
    return make_piecewise_quantile(std::move(knots));
  }
  throw InputError("unknown distribution family '" + std::string(name) + "'");
}

HRep to_h_rep(const QuantileRep& d) {
  HRep h;
  auto src = std::make_shared<const QuantileRep>(d);
  h.source = src;
  if (d.is_discrete()) {
    auto table = std::make_shared<const StepTable>(step_table(d));
    h.h = [table](double y) { return step_value(*table, y); };
    h.h_right = [table](double y) { return step_value_right(*table, y); };
    for (double t : table->thresholds) {
      if (std::isfinite(t)) h.breakpoints.push_back(t);
    }
    return h;
  }
  h.h = [src](double y) {
    if (y > 1.0 && src->tail_quantile) return src->tail_quantile(std::exp(-y));
    const double u = -std::expm1(-y);
    return src->upper(1.0 - u) == 0.0 ? 0.0 : src->quantile(u < 1.0 ? u : std::nextafter(1.0, 0.0));
  };
  if (d.quantile_right) {
    h.h_right = [src](double y) { return src->right_at(-std::expm1(-y)); };
  }
  for (double u : d.breaks) h.breakpoints.push_back(exp_coordinate(u));
  return h;
}

QuantileRep from_h_rep(const HRep& h, std::string label) {
  if (h.source) {
    QuantileRep d = *h.source;
    if (!label.empty()) d.label = std::move(label);
    return d;
  }
  QuantileRep d;
  auto fn = h.h;
  auto right = h.h_right ? h.h_right : h.h;
  d.quantile = [fn](double u) { return fn(exp_coordinate(u)); };
  d.quantile_right = [right](double u) { return right(exp_coordinate(u)); };
  d.tail_quantile = [fn](double q) { return fn(-std::log(q)); };
  for (double y : h.breakpoints) d.breaks.push_back(-std::expm1(-y));
  d.label = std::move(label);
  return d;
}

QuantileRep affine(const QuantileRep& d, double c, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(c)) {
    throw DomainError("affine map needs finite c and lambda > 0");
  }
  QuantileRep out = d;
  auto map = [c, lambda](double x) { return c + lambda * x; };
  auto back = [c, lambda](double x) { return (x - c) / lambda; };
  out.quantile = [q = d.quantile, map](double u) { return map(q(u)); };
  if (d.quantile_right) out.quantile_right = [q = d.quantile_right, map](double u) { return map(q(u)); };
  if (d.tail_quantile) out.tail_quantile = [q = d.tail_quantile, map](double v) { return map(q(v)); };
  if (d.cdf) out.cdf = [f = d.cdf, back](double x) { return f(back(x)); };
  if (d.sf) out.sf = [f = d.sf, back](double x) { return f(back(x)); };
  if (d.pdf) out.pdf = [f = d.pdf, back, lambda](double x) { return f(back(x)) / lambda; };
  for (Atom& a : out.atoms) a.location = map(a.location);
  out.support_hint = {map(d.support_hint.lo), map(d.support_hint.hi)};
  out.label = d.label + " (affine)";
  if (d.is_discrete()) {
    QuantileRep rebuilt = make_discrete(out.atoms, out.label);
    return rebuilt;
  }
  return out;
}

QuantileRep standardize(const QuantileRep& d, double rho1, double rho2) {
  if (!(rho2 > rho1)) throw DomainError("standardize: degenerate input, rho2 must exceed rho1");
  const double scale = rho2 - rho1;
  QuantileRep out = d;
  auto map = [rho1, scale](double x) { return (x - rho1) / scale; };
  auto back = [rho1, scale](double x) { return rho1 + scale * x; };
  out.quantile = [q = d.quantile, map](double u) { return map(q(u)); };
  if (d.quantile_right) out.quantile_right = [q = d.quantile_right, map](double u) { return map(q(u)); };
  if (d.tail_quantile) out.tail_quantile = [q = d.tail_quantile, map](double v) { return map(q(v)); };
  if (d.cdf) out.cdf = [f = d.cdf, back](double x) { return f(back(x)); };
  if (d.sf) out.sf = [f = d.sf, back](double x) { return f(back(x)); };
  if (d.pdf) out.pdf = [f = d.pdf, back, scale](double x) { return f(back(x)) * scale; };
  for (Atom& a : out.atoms) a.location = map(a.location);
  out.support_hint = {map(d.support_hint.lo), map(d.support_hint.hi)};
  out.label = d.label + " (standardized)";
  if (d.is_discrete()) return make_discrete(out.atoms, out.label);
  return out;
}

QuadResult weighted_h_integral(const HRep& h, int m, bool absolute, const Tolerance& tol) {
  if (m < 0) throw DomainError("weighted_h_integral: order must be >= 0");
  if (h.source && h.source->is_discrete()) {
    const StepTable table = step_table(*h.source);
    double value = 0.0;
    double scale = 0.0;
    double prev = 1.0;  // Pr(S_{m+1} > y_{i-1})
    for (std::size_t i = 0; i < table.levels.size(); ++i) {
      const double next = std::isfinite(table.thresholds[i])
                              ? erlang_survival(m + 1, table.thresholds[i])
                              : 0.0;
      const double level = absolute ? std::abs(table.levels[i]) : table.levels[i];
      value += level * (prev - next);
      scale += std::abs(level);
      prev = next;
    }
    return QuadResult{value, 1e-15 * (1.0 + scale), table.levels.size(), true, {}};
  }
  const double log_fact = log_factorial(m);
  const double fact = std::exp(log_fact);
  RealFn integrand = [&h, m, absolute, log_fact, fact](double y) {
    double w;
    if (m == 0) {
      w = 1.0;
    } else if (m <= 20) {
      w = std::pow(y, m) / fact;
    } else {
      w = y > 0.0 ? std::exp(m * std::log(y) - log_fact) : 0.0;
    }
    if (w == 0.0) return 0.0;
    const double v = h.damped_at(y);
    return w * (absolute ? std::abs(v) : v);
  };
  HalflineOptions opts;
  opts.breakpoints = h.breakpoints;
  return integrate_halfline(integrand, tol, opts);
}

double h_zero_tolerance(const Tolerance& tol) { return std::max(1e-7, 1e3 * tol.abs_tol); }

MembershipReport membership_check(const HRep& h, int max_order, const Tolerance& tol) {
  if (max_order < 2) throw InputError("membership_check: max_order must be >= 2");
  MembershipReport report;
  report.max_order_checked = max_order;

  std::vector<double> probe = geomspace(1e-4, 60.0, 241);
  for (double b : h.breakpoints) {
    probe.push_back(b);
    probe.push_back(b * (1.0 + 1e-9) + 1e-12);
  }
  std::sort(probe.begin(), probe.end());
  double lo = kInf;
  double hi = -kInf;
  bool monotone = true;
  double prev = -kInf;
  for (double y : probe) {
    const double v = h(y);
    if (!std::isfinite(v)) {
      report.diagnostic = "H is not finite at y = " + std::to_string(y);
      return report;
    }
    if (v < prev - 1e-9 * (1.0 + std::abs(prev))) monotone = false;
    prev = std::max(prev, v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool constant = hi - lo <= 1e-14 * (1.0 + std::abs(hi));

  bool all_converged = true;
  for (int m = 0; m <= max_order; ++m) {
    const QuadResult r = weighted_h_integral(h, m, true, tol);
    const double fact = std::exp(log_factorial(m));
    report.moment_integrals.push_back({m, r.value * fact, r.abs_error_estimate * fact, r.converged});
    if (!r.converged) {
      all_converged = false;
      report.failing_order = m;
      report.diagnostic = "not in H*: integral of y^" + std::to_string(m) +
                          " e^{-y} |H(y)| did not converge (" + r.diagnostic + ")";
      break;
    }
  }
  if (all_converged) {
    report.rho1 = weighted_h_integral(h, 0, false, tol).value;
    report.rho2 = weighted_h_integral(h, 1, false, tol).value;
  }
  if (constant) {
    report.diagnostic = "not in H*: non-constant required";
  } else if (!monotone) {
    report.diagnostic = "not in H*: H must be non-decreasing";
  }
  report.in_H_star = all_converged && !constant && monotone;
  const double z = h_zero_tolerance(tol);
  report.in_H_zero =
      report.in_H_star && std::abs(report.rho1) <= z && std::abs(report.rho2 - 1.0) <= z;
  return report;
}

double quantile_sup_distance(const QuantileRep& a, const QuantileRep& b,
                             std::span<const double> u_grid) {
  double worst = 0.0;
  for (double u : u_grid) worst = std::max(worst, std::abs(a.at(u) - b.at(u)));
  return worst;
}

}  // namespace recseq
