#include "recseq/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "recseq/errors.hpp"

namespace recseq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RecordSample blank_sample(RecordNotion notion, int n_max, std::size_t reps, std::uint64_t seed) {
  if (n_max < 1) throw InputError("record index n must be >= 1");
  if (reps < 1) throw InputError("reps must be >= 1");
  RecordSample s;
  s.notion = notion;
  s.seed = seed;
  s.n_max = n_max;
  s.reps = reps;
  s.values.assign(reps * static_cast<std::size_t>(n_max), std::numeric_limits<double>::quiet_NaN());
  s.realized.assign(reps, 0);
  return s;
}

double sample_quantile(const std::vector<double>& sorted, double level) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return sorted[lo] + w * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view notion_name(RecordNotion notion) {
  switch (notion) {
    case RecordNotion::ordinary: return "ordinary";
    case RecordNotion::weak: return "weak";
    case RecordNotion::quantile_uniform: return "quantile_uniform";
  }
  return "unknown";
}

RecordNotion parse_notion(std::string_view name) {
  if (name == "ordinary") return RecordNotion::ordinary;
  if (name == "weak") return RecordNotion::weak;
  if (name == "quantile_uniform" || name == "quantile") return RecordNotion::quantile_uniform;
  throw InputError("unknown record notion '" + std::string(name) + "'");
}

double uniform_record_pdf(int n, double u) {
  if (n < 1) throw DomainError("uniform_record_pdf: n must be >= 1");
  if (!(u > 0.0 && u < 1.0)) throw DomainError("uniform_record_pdf: u must lie in (0,1)");
  if (n == 1) return 1.0;
  const double l = exp_coordinate(u);
  return std::exp((n - 1) * std::log(l) - log_factorial(n - 1));
}

double record_cdf(const QuantileRep& d, int n, double x) {
  if (n < 1) throw DomainError("record_cdf: n must be >= 1");
  if (!d.has_cdf()) throw DomainError("record_cdf: distribution has no c.d.f. view");
  const double sf = d.survival(x);
  if (sf >= 1.0) return 0.0;
  if (sf <= 0.0) return 1.0;
  // (1 - F) sum_{k<n} L^k/k! = Pr(Erlang(n) > L) with L = -log(1 - F)
  return 1.0 - erlang_survival(n, -std::log(sf));
}

std::vector<double> RecordSample::column(int n) const {
  std::vector<double> out;
  out.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const double v = at(r, n);
    if (!std::isnan(v)) out.push_back(v);
  }
  return out;
}

std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t rep) {
  return std::mt19937_64(splitmix64(seed ^ rep));
}

double open_uniform(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

RecordSample simulate_quantile_records(const QuantileRep& d, int n_max, std::size_t reps,
                                       std::uint64_t seed) {
  RecordSample s = blank_sample(RecordNotion::quantile_uniform, n_max, reps, seed);
  const HRep h = to_h_rep(d);
  for (std::size_t r = 0; r < reps; ++r) {
    auto gen = replication_engine(seed, r);
    double sum = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      sum += -std::log(open_uniform(gen));
      s.values[r * n_max + (n - 1)] = h(sum);
    }
    s.realized[r] = n_max;
  }
  return s;
}

RecordSample simulate_stream_records(const QuantileRep& d, RecordNotion notion, int n_max,
                                     std::size_t stream_len, std::size_t reps,
                                     std::uint64_t seed) {
  if (notion == RecordNotion::quantile_uniform) {
    throw InputError("quantile records are simulated with simulate_quantile_records");
  }
  if (stream_len < 1) throw InputError("stream length must be >= 1");
  RecordSample s = blank_sample(notion, n_max, reps, seed);
  const bool strict = notion == RecordNotion::ordinary;
  const bool top_atom = !d.atoms.empty() && d.atoms.back().location == d.support_hint.hi;
  const double top = d.support_hint.hi;
  for (std::size_t r = 0; r < reps; ++r) {
    auto gen = replication_engine(seed, r);
    int count = 0;
    double current = 0.0;
    for (std::size_t i = 0; i < stream_len && count < n_max; ++i) {
      const double x = d.at(open_uniform(gen));
      if (count == 0 || (strict ? x > current : x >= current)) {
        current = x;
        s.values[r * n_max + count] = x;
        ++count;
      }
      if (strict && top_atom && current == top) break;
    }
    s.realized[r] = count;
  }
  return s;
}

std::vector<RecordSummaryRow> summarize(const RecordSample& sample) {
  std::vector<RecordSummaryRow> rows;
  for (int n = 1; n <= sample.n_max; ++n) {
    RecordSummaryRow row;
    row.n = n;
    std::vector<double> col = sample.column(n);
    row.count = col.size();
    if (!col.empty()) {
      double mean = 0.0;
      for (double v : col) mean += v;
      mean /= static_cast<double>(col.size());
      double ss = 0.0;
      for (double v : col) ss += (v - mean) * (v - mean);
      row.mean = mean;
      row.se = col.size() > 1 ? std::sqrt(ss / static_cast<double>(col.size() - 1) /
                                          static_cast<double>(col.size()))
                              : 0.0;
      std::sort(col.begin(), col.end());
      for (double level : kSummaryLevels) row.quantiles.push_back(sample_quantile(col, level));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(const RecordSample& sample, std::ostream& out) {
  out << "rep,n,value,notion\n";
  const std::string_view name = notion_name(sample.notion);
  char buf[64];
  for (std::size_t r = 0; r < sample.reps; ++r) {
    for (int n = 1; n <= sample.realized[r]; ++n) {
      std::snprintf(buf, sizeof buf, "%.17g", sample.at(r, n));
      out << r << ',' << n << ',' << buf << ',' << name << '\n';
    }
  }
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t n1, std::size_t n2, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return c * std::sqrt((a + b) / (a * b));
}

double dkw_epsilon(std::size_t n, double alpha) {
  if (n == 0) throw DomainError("dkw_epsilon: empty sample");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double empirical_cdf_distance(std::vector<double> sample, const RealFn& cdf,
                              const RealFn& cdf_left) {
  if (sample.empty()) throw DomainError("empirical_cdf_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sample.size()) {
    const double x = sample[i];
    const double below = static_cast<double>(i) / n;
    while (i < sample.size() && sample[i] == x) ++i;
    const double at = static_cast<double>(i) / n;
    d = std::max(d, std::abs(below - cdf_left(x)));
    d = std::max(d, std::abs(at - cdf(x)));
  }
  return d;
}

}  // namespace recseq
