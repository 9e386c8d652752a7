#pragma once

// Record-value laws and record simulators for the three record notions:
// ordinary (strict) records of an i.i.d. stream, weak records (ties count)
// and quantile-of-uniform records G(U_n) = H(S_n), S_n ~ Erlang(n, 1).

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "recseq/distributions.hpp"

namespace recseq {

enum class RecordNotion { ordinary, weak, quantile_uniform };

std::string_view notion_name(RecordNotion notion);
RecordNotion parse_notion(std::string_view name);

// L(u)^{n-1} / (n-1)!, the density of the n-th record of a uniform stream.
double uniform_record_pdf(int n, double u);

// Pr(R_n <= x) = 1 - (1 - F(x)) sum_{k<n} L(F(x))^k / k!.
double record_cdf(const QuantileRep& d, int n, double x);

struct RecordSample {
  RecordNotion notion = RecordNotion::quantile_uniform;
  std::uint64_t seed = 0;
  int n_max = 0;
  std::size_t reps = 0;
  // Row-major reps x n_max; NaN where a replication ran out of records.
  std::vector<double> values;
  // Number of records realised per replication.
  std::vector<int> realized;

  double at(std::size_t rep, int n) const { return values[rep * n_max + (n - 1)]; }
  // Realised values of R_n across replications.
  std::vector<double> column(int n) const;
};

// Per-replication generator: mt19937_64 seeded with splitmix64(seed ^ rep).
std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t rep);
// Uniform on the open interval (0,1).
double open_uniform(std::mt19937_64& gen);

RecordSample simulate_quantile_records(const QuantileRep& d, int n_max, std::size_t reps,
                                       std::uint64_t seed);

// Scans `stream_len` i.i.d. draws per replication and keeps the first n_max
// records. Ordinary records of a law with an atom at its upper end point stop
// once that atom is reached.
RecordSample simulate_stream_records(const QuantileRep& d, RecordNotion notion, int n_max,
                                     std::size_t stream_len, std::size_t reps,
                                     std::uint64_t seed);

struct RecordSummaryRow {
  int n = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double se = 0.0;
  std::vector<double> quantiles;  // at kSummaryLevels
};

inline constexpr double kSummaryLevels[] = {0.05, 0.25, 0.5, 0.75, 0.95};

std::vector<RecordSummaryRow> summarize(const RecordSample& sample);

// CSV with header rep,n,value,notion; unrealised records are omitted.
void write_csv(const RecordSample& sample, std::ostream& out);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);
// Asymptotic critical value of the two-sample statistic at level alpha.
double ks_critical(std::size_t n1, std::size_t n2, double alpha);

// Half-width of the Dvoretzky-Kiefer-Wolfowitz band for n observations.
double dkw_epsilon(std::size_t n, double alpha);

// sup_x |F_emp(x) - F(x)| for a sample against a c.d.f., checking both sides
// of every jump of the empirical c.d.f. (F is evaluated at x and x-).
double empirical_cdf_distance(std::vector<double> sample, const RealFn& cdf,
                              const RealFn& cdf_left);

}  // namespace recseq
