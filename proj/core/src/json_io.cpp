#include "recseq/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "recseq/errors.hpp"
#include "recseq/moments.hpp"

namespace recseq {

namespace {

class Fields {
 public:
  Fields(const Json& j, std::string kind, std::initializer_list<std::string_view> allowed)
      : j_(j), kind_(std::move(kind)) {
    for (const auto& item : j.items()) {
      const std::string& key = item.key();
      if (key == "kind") continue;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw InputError("unknown key '" + key + "' for kind '" + kind_ + "'");
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key, double fallback) const {
    if (!j_.contains(key)) return fallback;
    return number(key);
  }

  double number(const char* key) const {
    if (!j_.contains(key)) throw InputError("'" + kind_ + "' needs the key '" + key + "'");
    const Json& v = j_.at(key);
    if (!v.is_number()) throw InputError("'" + std::string(key) + "' must be a number");
    return v.get<double>();
  }

  std::string text(const char* key) const {
    if (!j_.contains(key) || !j_.at(key).is_string()) {
      throw InputError("'" + kind_ + "' needs the string key '" + key + "'");
    }
    return j_.at(key).get<std::string>();
  }

  std::vector<std::pair<double, double>> pairs(const char* key) const {
    if (!j_.contains(key) || !j_.at(key).is_array()) {
      throw InputError("'" + std::string(key) + "' must be an array of [a, b] pairs");
    }
    std::vector<std::pair<double, double>> out;
    for (const Json& p : j_.at(key)) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw InputError("'" + std::string(key) + "' must be an array of [a, b] pairs");
      }
      out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
  }

  const Json& raw(const char* key) const { return j_.at(key); }

 private:
  const Json& j_;
  std::string kind_;
};

std::string kind_of(const Json& j) {
  if (!j.is_object()) throw InputError("expected a JSON object or a family name");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError("missing string key 'kind'");
  return j.at("kind").get<std::string>();
}

std::vector<Atom> to_atoms(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<Atom> atoms;
  for (const auto& [x, p] : pairs) atoms.push_back({x, p});
  return atoms;
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const Json& v : j) {
    if (!v.is_number()) throw InputError(std::string(what) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

RealFn component_density(const Json& c) {
  if (!c.is_object()) throw InputError("mixture components must be objects");
  if (!c.contains("family") || !c.at("family").is_string()) {
    throw InputError("mixture components need a string 'family'");
  }
  const std::string family = c.at("family").get<std::string>();
  Fields f(c, "component", {"family", "weight", "shape", "rate", "k", "mu", "sigma"});
  TDist t;
  if (family == "gamma") {
    const double p[] = {f.number("shape"), f.number("rate", 1.0)};
    t = t_family(family, p);
  } else if (family == "erlang") {
    const double p[] = {f.number("k"), f.number("rate", 1.0)};
    t = t_family(family, p);
  } else if (family == "exponential") {
    const double p[] = {f.number("rate", 1.0)};
    t = t_family(family, p);
  } else if (family == "lognormal") {
    const double p[] = {f.number("mu", 0.0), f.number("sigma", 1.0)};
    t = t_family(family, p);
  } else {
    throw InputError("unknown T family '" + family + "'");
  }
  return t.density;
}

}  // namespace

Json load_json_arg(std::string_view text_or_path) {
  std::string text(text_or_path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError("empty JSON argument");
  const char c = text[first];
  if (c == '{' || c == '[' || c == '"' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
      throw InputError("malformed JSON in " + text + ": " + e.what());
    }
  }
  const bool name = std::all_of(text.begin(), text.end(), [](char ch) {
    return std::islower(static_cast<unsigned char>(ch)) || std::isdigit(static_cast<unsigned char>(ch)) || ch == '_';
  });
  if (!name) throw InputError("'" + text + "' is neither JSON, a readable file nor a family name");
  return Json(text);
}

QuantileRep distribution_from_json(const Json& j) {
  if (j.is_string()) return make_family(j.get<std::string>());
  const std::string kind = kind_of(j);
  if (kind == "exponential") {
    Fields f(j, kind, {"rate"});
    const double p[] = {f.number("rate", 1.0)};
    return make_family(kind, p);
  }
  if (kind == "uniform") {
    Fields f(j, kind, {"a", "b"});
    const double p[] = {f.number("a", 0.0), f.number("b", 1.0)};
    return make_family(kind, p);
  }
  if (kind == "log_record") {
    Fields f(j, kind, {});
    return make_family(kind);
  }
  if (kind == "gumbel") {
    Fields f(j, kind, {"mu", "beta"});
    const double p[] = {f.number("mu", 0.0), f.number("beta", 1.0)};
    return make_family(kind, p);
  }
  if (kind == "lognormal") {
    Fields f(j, kind, {"mu", "sigma"});
    const double p[] = {f.number("mu", 0.0), f.number("sigma", 1.0)};
    return make_family(kind, p);
  }
  if (kind == "bernoulli") {
    Fields f(j, kind, {"p"});
    const double p[] = {f.number("p", 0.5)};
    return make_family(kind, p);
  }
  if (kind == "two_point") {
    Fields f(j, kind, {"x1", "p", "x2"});
    const double p[] = {f.number("x1", -1.0), f.number("p", -std::expm1(-1.0)),
                        f.number("x2", std::exp(1.0) - 1.0)};
    return make_family(kind, p);
  }
  if (kind == "erlang") {
    Fields f(j, kind, {"k", "rate"});
    const double p[] = {f.number("k", 2.0), f.number("rate", 1.0)};
    return make_family(kind, p);
  }
  if (kind == "constant") {
    Fields f(j, kind, {"value"});
    const double p[] = {f.number("value", 0.0)};
    return make_family(kind, p);
  }
  if (kind == "piecewise_quantile") {
    Fields f(j, kind, {"knots"});
    return make_piecewise_quantile(f.pairs("knots"));
  }
  if (kind == "discrete") {
    Fields f(j, kind, {"atoms"});
    return make_discrete(to_atoms(f.pairs("atoms")), "discrete");
  }
  throw InputError("unknown distribution kind '" + kind + "'");
}

TDist tdist_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "atoms") {
    Fields f(j, kind, {"atoms"});
    std::vector<Atom> atoms = to_atoms(f.pairs("atoms"));
    for (const Atom& a : atoms) {
      if (!(a.location > 0.0)) throw DomainError("T must be positive: atom at " + std::to_string(a.location));
    }
    return t_atoms(std::move(atoms));
  }
  if (kind == "density") {
    Json component = j;
    component.erase("kind");
    component["weight"] = 1.0;
    Fields check(j, kind, {"family", "shape", "rate", "k", "mu", "sigma"});
    return t_density(component_density(component), j.value("family", std::string("density")));
  }
  if (kind == "stieltjes_lambda") {
    Fields f(j, kind, {"lambda"});
    const double lambda = f.number("lambda", 0.0);
    if (!(std::abs(lambda) <= 1.0)) throw InputError("stieltjes_lambda needs |lambda| <= 1");
    return t_stieltjes(lambda);
  }
  if (kind == "mixture") {
    Fields f(j, kind, {"atoms", "components"});
    std::vector<Atom> atoms;
    if (f.has("atoms")) atoms = to_atoms(f.pairs("atoms"));
    if (!f.has("components") || !f.raw("components").is_array()) {
      throw InputError("mixture needs an array of components");
    }
    std::vector<std::pair<double, RealFn>> parts;
    for (const Json& c : f.raw("components")) {
      if (!c.contains("weight") || !c.at("weight").is_number()) {
        throw InputError("mixture components need a numeric 'weight'");
      }
      const double w = c.at("weight").get<double>();
      if (!(w > 0.0)) throw InputError("mixture weights must be positive");
      parts.emplace_back(w, component_density(c));
    }
    for (const Atom& a : atoms) {
      if (!(a.location > 0.0)) throw DomainError("T must be positive: atom at " + std::to_string(a.location));
    }
    RealFn density = [parts](double t) {
      double s = 0.0;
      for (const auto& [w, f] : parts) s += w * f(t);
      return s;
    };
    return t_density(std::move(density), "mixture", std::move(atoms));
  }
  if (kind == "dense_support") {
    Fields f(j, kind, {"poisson_terms", "rationals"});
    return t_dense_support_example(static_cast<int>(f.number("poisson_terms", 21)),
                                   static_cast<int>(f.number("rationals", 40)));
  }
  throw InputError("unknown T kind '" + kind + "'");
}

Json to_json(const ErsSeq& rho) {
  Json j;
  j["rho"] = rho.rho;
  j["error"] = rho.error;
  if (!rho.source_label.empty()) j["source"] = rho.source_label;
  return j;
}

ErsSeq ers_from_json(const Json& j) {
  ErsSeq out;
  if (j.is_array()) {
    out.rho = numbers(j, "rho");
  } else if (j.is_object() && j.contains("rho")) {
    out.rho = numbers(j.at("rho"), "rho");
    if (j.contains("error")) out.error = numbers(j.at("error"), "error");
    if (j.contains("source") && j.at("source").is_string()) out.source_label = j.at("source");
  } else {
    throw InputError("an expected record sequence is an array or {\"rho\": [...]}");
  }
  if (out.error.empty()) out.error.assign(out.rho.size(), 0.0);
  if (out.error.size() != out.rho.size()) throw InputError("'rho' and 'error' differ in length");
  return out;
}

Json to_json(const MomentSeq& m) {
  Json j;
  j["m"] = m.m;
  j["feasible"] = m.feasible_stieltjes;
  Json hints;
  hints["hankel_min_eig_plain"] = m.hankel_min_eig_plain;
  hints["hankel_min_eig_shifted"] = m.hankel_min_eig_shifted;
  hints["carleman_partial_sum"] = m.carleman_partial_sum;
  hints["carleman_raabe"] = m.carleman_raabe;
  hints["determinacy_hint"] = std::string(hint_name(m.determinacy_hint));
  j["hints"] = hints;
  return j;
}

MomentSeq moments_from_json(const Json& j) {
  if (j.is_array()) return make_moment_seq(numbers(j, "m"));
  if (j.is_object() && j.contains("m")) return make_moment_seq(numbers(j.at("m"), "m"));
  throw InputError("a moment sequence is an array or {\"m\": [...]}");
}

Json to_json(const MembershipReport& report) {
  Json j;
  j["max_order_checked"] = report.max_order_checked;
  Json integrals = Json::array();
  for (const MomentIntegral& m : report.moment_integrals) {
    integrals.push_back({{"m", m.order}, {"value", m.value}, {"converged", m.converged}});
  }
  j["moment_integrals"] = integrals;
  j["in_H_star"] = report.in_H_star;
  j["in_H_zero"] = report.in_H_zero;
  j["rho1"] = report.rho1;
  j["rho2"] = report.rho2;
  if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
  return j;
}

Json summary_json(const RecordSample& sample) {
  Json j;
  j["notion"] = std::string(notion_name(sample.notion));
  j["seed"] = sample.seed;
  j["reps"] = sample.reps;
  Json levels = Json::array();
  for (double l : kSummaryLevels) levels.push_back(l);
  j["quantile_levels"] = levels;
  Json rows = Json::array();
  for (const RecordSummaryRow& r : summarize(sample)) {
    Json row;
    row["n"] = r.n;
    row["count"] = r.count;
    row["mean"] = r.mean;
    row["se"] = r.se;
    row["quantiles"] = r.quantiles;
    rows.push_back(row);
  }
  j["records"] = rows;
  return j;
}

}  // namespace recseq
