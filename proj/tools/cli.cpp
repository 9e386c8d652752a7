#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "recseq/distributions.hpp"
#include "recseq/ers.hpp"
#include "recseq/errors.hpp"
#include "recseq/json_io.hpp"
#include "recseq/moments.hpp"
#include "recseq/records.hpp"
#include "recseq/transform.hpp"

namespace recseq::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;
constexpr long kMaxReps = 10'000'000;

struct Config {
  std::string dist;
  std::string t;
  std::string m;
  std::string rho;
  std::string out_path;
  std::string format = "json";
  std::string notion = "quantile_uniform";
  std::string direction;
  std::string demo;
  int n = 5;
  long reps = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t stream_len = 64;
  std::optional<double> tol;
};

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Tolerance resolve_tolerance(const Config& cfg) {
  Tolerance tol;
  std::optional<double> value = cfg.tol;
  if (!value) {
    if (const char* env = std::getenv("RECORD_MOMENTS_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0') throw InputError("RECORD_MOMENTS_TOL is not a number");
      value = v;
    }
  }
  if (value) {
    if (!(*value > 0.0) || !std::isfinite(*value)) throw InputError("tolerance must be positive");
    tol.abs_tol = *value;
    tol.rel_tol = 10.0 * *value;
  }
  return tol;
}

void check_n(int n) {
  if (n < 1 || n > kMaxErsTerms) {
    throw InputError("--n must lie in [1, " + std::to_string(kMaxErsTerms) + "]");
  }
}

void check_reps(long reps) {
  if (reps < 1 || reps > kMaxReps) throw InputError("--reps must lie in [1, 10^7]");
}

std::string require_arg(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string(flag) + " is required");
  return value;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --- ers -------------------------------------------------------------------

std::string cmd_ers(const Config& cfg) {
  check_n(cfg.n);
  const Tolerance tol = resolve_tolerance(cfg);
  const QuantileRep d = distribution_from_json(load_json_arg(require_arg(cfg.dist, "--dist")));
  const ErsSeq rho = ers_compute(to_h_rep(d), cfg.n, tol);
  if (cfg.format == "csv") {
    std::string s = "n,rho,error\n";
    for (int n = 1; n <= rho.size(); ++n) {
      s += std::to_string(n) + "," + fmt(rho.at(n), "%.17g") + "," +
           fmt(rho.error[n - 1], "%.3g") + "\n";
    }
    return s;
  }
  return dump(to_json(rho));
}

// --- check -----------------------------------------------------------------

std::string cmd_check(const Config& cfg) {
  const Tolerance tol = resolve_tolerance(cfg);
  const QuantileRep d = distribution_from_json(load_json_arg(require_arg(cfg.dist, "--dist")));
  if (cfg.n < 2 || cfg.n > kMaxErsTerms) throw InputError("--n (maximum order) must lie in [2, 30]");
  return dump(to_json(membership_check(to_h_rep(d), cfg.n, tol)));
}

// --- transform -------------------------------------------------------------

std::string cmd_transform(const Config& cfg) {
  const Tolerance tol = resolve_tolerance(cfg);
  Json j;
  if (cfg.direction == "phi") {
    if (cfg.n < 1 || cfg.n > kMaxErsTerms - 2) throw InputError("--n (moment order) must lie in [1, 28]");
    const QuantileRep d = distribution_from_json(load_json_arg(require_arg(cfg.dist, "--dist")));
    const TDist t = phi(d, tol, PhiOptions{cfg.n});
    j["direction"] = "phi";
    j["source"] = d.label;
    Json grid = Json::array();
    for (double x : geomspace(0.05, 10.0, 25)) {
      grid.push_back({{"t", x}, {"F_T", t.cdf(x)}, {"F_T_left", t.cdf_left(x)}});
    }
    j["grid"] = grid;
    Json moments = Json::array();
    for (int k = 1; k <= cfg.n; ++k) moments.push_back(t.moment(k, tol));
    j["moments"] = moments;
    j["c_T"] = c_T(t, tol);
    if (t.form == TDist::Form::atoms) {
      Json atoms = Json::array();
      for (const Atom& a : t.atoms) atoms.push_back({a.location, a.mass});
      j["atoms"] = atoms;
    }
    return dump(j);
  }
  if (cfg.direction == "inverse") {
    const TDist t = tdist_from_json(load_json_arg(require_arg(cfg.t, "--t")));
    const HRep h0 = phi_inverse(t, tol);
    j["direction"] = "inverse";
    j["t"] = t.label;
    j["c_T"] = c_T(t, tol);
    j["centering_offset"] = centering_offset(t, tol);
    Json grid = Json::array();
    for (double y : geomspace(0.05, 10.0, 25)) grid.push_back({{"y", y}, {"H0", h0(y)}});
    j["grid"] = grid;
    Json table = Json::array();
    for (int k = 1; k <= 19; ++k) {
      const double u = 0.05 * k;
      table.push_back({{"u", u}, {"x", h0(exp_coordinate(u))}});
    }
    j["quantile"] = table;
    return dump(j);
  }
  throw InputError("transform direction must be 'phi' or 'inverse'");
}

// --- simulate --------------------------------------------------------------

std::string cmd_simulate(const Config& cfg) {
  check_n(cfg.n);
  check_reps(cfg.reps);
  const QuantileRep d = distribution_from_json(load_json_arg(require_arg(cfg.dist, "--dist")));
  const RecordNotion notion = parse_notion(cfg.notion);
  const auto reps = static_cast<std::size_t>(cfg.reps);
  const RecordSample s = notion == RecordNotion::quantile_uniform
                             ? simulate_quantile_records(d, cfg.n, reps, cfg.seed)
                             : simulate_stream_records(d, notion, cfg.n, cfg.stream_len, reps, cfg.seed);
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_csv(s, os);
    return os.str();
  }
  Json j = summary_json(s);
  j["source"] = d.label;
  return dump(j);
}

// --- moments ---------------------------------------------------------------

std::string cmd_moments(const Config& cfg) {
  const Tolerance tol = resolve_tolerance(cfg);
  MomentSeq m;
  if (!cfg.m.empty()) {
    m = moments_from_json(load_json_arg(cfg.m));
  } else if (!cfg.rho.empty()) {
    m = ers_to_t_moments(ers_from_json(load_json_arg(cfg.rho)));
  } else {
    check_n(cfg.n);
    if (cfg.n < 3) throw InputError("--n must be >= 3 to derive moments");
    const QuantileRep d = distribution_from_json(load_json_arg(require_arg(cfg.dist, "--dist")));
    m = ers_to_t_moments(ers_compute(to_h_rep(d), cfg.n, tol));
  }
  m = stieltjes_feasibility(std::move(m));
  carleman_diagnostic(m);
  return dump(to_json(m));
}

// --- demo ------------------------------------------------------------------

struct DemoOutput {
  std::string report;
  Json json;
};

DemoOutput demo_table1(const Config& cfg) {
  check_reps(cfg.reps);
  const auto reps = static_cast<std::size_t>(cfg.reps);
  const QuantileRep d = make_family("bernoulli");
  const RecordSample q = simulate_quantile_records(d, 2, reps, cfg.seed);
  const RecordSample w = simulate_stream_records(d, RecordNotion::weak, 2, cfg.stream_len, reps, cfg.seed);
  const RecordSample o =
      simulate_stream_records(d, RecordNotion::ordinary, 2, cfg.stream_len, reps, cfg.seed);

  auto share = [](const std::vector<double>& col, double value) {
    double k = 0.0;
    for (double v : col) k += v == value ? 1.0 : 0.0;
    const double n = static_cast<double>(col.size());
    const double p = col.empty() ? 0.0 : k / n;
    return std::pair{p, col.empty() ? 0.0 : std::sqrt(p * (1.0 - p) / n)};
  };
  const auto [pq, sq] = share(q.column(2), 0.0);
  const auto [pw, sw] = share(w.column(2), 0.0);
  const auto [po, so] = share(o.column(2), 1.0);
  const std::size_t exists = o.column(2).size();
  const double closed = 0.5 - 0.5 * std::log(2.0);

  std::string r = "bernoulli(1/2) records, reps = " + std::to_string(reps) +
                  ", seed = " + std::to_string(cfg.seed) + "\n";
  r += "  Pr(G(U_2) = 0)          = " + fmt(pq) + " +- " + fmt(sq) + "   (1/2 - log(2)/2 = " + fmt(closed) + ")\n";
  r += "  Pr(W_2 = 0)             = " + fmt(pw) + " +- " + fmt(sw) + "   (Pr(X_1 = X_2 = 0) = 0.250000)\n";
  r += "  Pr(R_2 = 1 | R_2 exists) = " + fmt(po) + " +- " + fmt(so) + "   (" +
       std::to_string(exists) + " replications with R_2)\n";

  Json j;
  j["demo"] = "table1";
  j["reps"] = reps;
  j["seed"] = cfg.seed;
  j["quantile_R2_zero"] = {{"p", pq}, {"se", sq}, {"closed_form", closed}};
  j["weak_W2_zero"] = {{"p", pw}, {"se", sw}, {"closed_form", 0.25}};
  j["ordinary_R2_one_given_exists"] = {{"p", po}, {"se", so}, {"replications", exists}};
  return {r, j};
}

DemoOutput demo_stieltjes(const Config& cfg) {
  const Tolerance tol = resolve_tolerance(cfg);
  const double lambdas[] = {-1.0, 0.0, 1.0};
  const int n_max = 6;
  std::vector<HRep> hs;
  std::vector<ErsSeq> seqs;
  for (double lambda : lambdas) {
    hs.push_back(phi_inverse(t_stieltjes(lambda), tol));
    seqs.push_back(ers_compute(hs.back(), n_max, tol));
  }
  std::vector<double> closed;
  for (int n = 1; n <= n_max; ++n) {
    double s = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= n - 2; ++k) {
      fact *= (k + 1);
      s += std::exp(0.5 * k * k) / fact;
    }
    closed.push_back(s);
  }
  const std::vector<double> us = linspace(0.001, 0.999, 999);
  auto quantile_gap = [&](std::size_t a, std::size_t b) {
    double gap = 0.0;
    for (double u : us) {
      const double y = exp_coordinate(u);
      gap = std::max(gap, std::abs(hs[a](y) - hs[b](y)));
    }
    return gap;
  };

  std::string r = "Lognormal T with density (1 + lambda sin(pi log t)) f(t)\n";
  r += "  n   lambda=-1      lambda=0       lambda=1       closed form\n";
  for (int n = 1; n <= n_max; ++n) {
    char line[160];
    std::snprintf(line, sizeof line, "  %d   %-13.8f  %-13.8f  %-13.8f  %-13.8f\n", n,
                  seqs[0].at(n), seqs[1].at(n), seqs[2].at(n), closed[n - 1]);
    r += line;
  }
  const double g01 = quantile_gap(0, 1);
  const double g02 = quantile_gap(0, 2);
  const double g12 = quantile_gap(1, 2);
  r += "  max quantile difference: (-1,0) " + fmt(g01, "%.4g") + ", (-1,1) " + fmt(g02, "%.4g") +
       ", (0,1) " + fmt(g12, "%.4g") + "\n";

  Json j;
  j["demo"] = "stieltjes";
  j["lambda"] = {-1.0, 0.0, 1.0};
  Json rows = Json::array();
  for (const ErsSeq& s : seqs) rows.push_back(s.rho);
  j["rho"] = rows;
  j["closed_form"] = closed;
  j["max_quantile_difference"] = {{"-1,0", g01}, {"-1,1", g02}, {"0,1", g12}};
  return {r, j};
}

DemoOutput demo_roundtrip(const Config& cfg) {
  const Tolerance tol = resolve_tolerance(cfg);
  const char* fixtures[] = {"exponential", "log_record", "two_point", "lognormal",
                            "gumbel",      "uniform",    "bernoulli"};
  std::string r = "phi' o phi on standardised fixtures (sup over y in [0.02, 8])\n";
  Json rows = Json::array();
  for (const char* name : fixtures) {
    const GridComparison cmp = roundtrip(make_family(name), tol);
    r += "  " + std::string(name) + std::string(14 - std::string(name).size(), ' ') +
         fmt(cmp.max_discrepancy, "%.3e") + "\n";
    rows.push_back({{"fixture", name}, {"sup_distance", cmp.max_discrepancy}, {"points", cmp.grid.size()}});
  }
  Json j;
  j["demo"] = "roundtrip";
  j["fixtures"] = rows;
  return {r, j};
}

std::string cmd_demo(const Config& cfg, std::string& report) {
  DemoOutput d;
  if (cfg.demo == "table1") {
    d = demo_table1(cfg);
  } else if (cfg.demo == "stieltjes") {
    d = demo_stieltjes(cfg);
  } else if (cfg.demo == "roundtrip") {
    d = demo_roundtrip(cfg);
  } else {
    throw InputError("demo must be one of table1, stieltjes, roundtrip");
  }
  report = d.report;
  return dump(d.json);
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + path);
    f << text;
    if (!f) throw InputError("cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot write " + path);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Expected record sequences, the phi transform and its inverse"};
  app.require_subcommand(1);

  auto add_tol = [&cfg](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "absolute quadrature tolerance (relative is 10x)");
  };
  auto add_output = [&cfg](CLI::App* sub, bool csv) {
    sub->add_option("--out", cfg.out_path, "write the output to this path");
    if (csv) {
      sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    } else {
      sub->add_option("--format", cfg.format, "json")->check(CLI::IsMember({"json"}));
    }
  };

  CLI::App* ers = app.add_subcommand("ers", "expected record sequence rho_1..rho_n");
  ers->add_option("--dist", cfg.dist, "distribution JSON, file or family name")->required();
  ers->add_option("--n", cfg.n, "number of terms (<= 30)");
  add_tol(ers);
  add_output(ers, true);

  CLI::App* check = app.add_subcommand("check", "membership report for H* and H0");
  check->add_option("--dist", cfg.dist, "distribution JSON, file or family name")->required();
  check->add_option("--n", cfg.n, "highest moment order checked");
  add_tol(check);
  add_output(check, false);

  CLI::App* transform = app.add_subcommand("transform", "phi (X -> T) or its inverse (T -> H0)");
  transform->add_option("direction", cfg.direction, "phi or inverse")
      ->required()
      ->check(CLI::IsMember({"phi", "inverse"}));
  transform->add_option("--dist", cfg.dist, "source distribution (phi)");
  transform->add_option("--t", cfg.t, "law of T (inverse)");
  transform->add_option("--n", cfg.n, "number of moments reported (phi)");
  add_tol(transform);
  add_output(transform, false);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo record samples");
  simulate->add_option("--dist", cfg.dist, "distribution JSON, file or family name")->required();
  simulate->add_option("--notion", cfg.notion, "quantile_uniform, ordinary or weak");
  simulate->add_option("--n", cfg.n, "records per replication");
  simulate->add_option("--reps", cfg.reps, "replications");
  simulate->add_option("--seed", cfg.seed, "base seed");
  simulate->add_option("--stream-len", cfg.stream_len, "draws scanned per replication");
  add_output(simulate, true);

  CLI::App* moments = app.add_subcommand("moments", "moments of T with Stieltjes diagnostics");
  moments->add_option("--m", cfg.m, "raw moment list m_0..m_K");
  moments->add_option("--rho", cfg.rho, "expected record sequence JSON");
  moments->add_option("--dist", cfg.dist, "distribution; its ERS is computed first");
  moments->add_option("--n", cfg.n, "ERS terms used with --dist");
  add_tol(moments);
  add_output(moments, false);

  CLI::App* demo = app.add_subcommand("demo", "table1, stieltjes or roundtrip");
  demo->add_option("name", cfg.demo, "demo name")
      ->required()
      ->check(CLI::IsMember({"table1", "stieltjes", "roundtrip"}));
  demo->add_option("--reps", cfg.reps, "replications (table1)");
  demo->add_option("--seed", cfg.seed, "base seed (table1)");
  add_tol(demo);
  add_output(demo, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::string text;
    std::string report;
    if (ers->parsed()) {
      text = cmd_ers(cfg);
    } else if (check->parsed()) {
      text = cmd_check(cfg);
    } else if (transform->parsed()) {
      text = cmd_transform(cfg);
    } else if (simulate->parsed()) {
      text = cmd_simulate(cfg);
    } else if (moments->parsed()) {
      text = cmd_moments(cfg);
    } else if (demo->parsed()) {
      text = cmd_demo(cfg, report);
    }
    if (!cfg.out_path.empty()) {
      write_atomically(cfg.out_path, text);
      out << report;
    } else if (!report.empty() && demo->count("--format") == 0) {
      out << report;
    } else {
      out << text;
    }
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace recseq::cli
