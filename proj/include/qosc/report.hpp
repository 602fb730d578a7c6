#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qosc/algebra.hpp"
#include "qosc/coherent.hpp"

namespace qosc {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// FNV-1a over the serialized config; stable across runs and platforms,
/// used as the report provenance hash.
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

enum class OutputFormat { json_fmt, csv, md };

struct SweepConfig {
  std::vector<double> q_values{0.5, 0.9, 1.1};
  std::vector<HalfInt> k0_values{HalfInt::from_twice(1), HalfInt::from_twice(2),
                                 HalfInt::from_twice(3)};
  std::vector<int> J_values{1, 2, 3, 4, 5, 6};
  int n_max = 30;
  double algebra_tol = 1e-11;
  double unity_tol = 1e-6;
  std::vector<std::string> realizations{"D/B", "HP/B", "D/M", "HP/M", "anyonHP",
                                        "FBsym", "FBasym"};
  std::vector<std::string> families{"GlauberE", "GlauberEE", "Perelomov11", "su2"};
  OutputFormat format = OutputFormat::json_fmt;

  void validate_for_algebra() const {
    if (q_values.empty() || k0_values.empty() || realizations.empty())
      throw std::invalid_argument("config: empty grid");
    if (!(algebra_tol > 0.0)) throw std::invalid_argument("config: tolerances must be > 0");
    for (double q : q_values)
      if (q == 1.0)
        throw std::invalid_argument(
            "config: q = 1 is the classical point; use the limit-scan command");
  }

  json to_json() const {
    json j;
    j["q"] = q_values;
    json k0s = json::array();
    for (HalfInt k : k0_values) k0s.push_back(k.value());
    j["k0"] = k0s;
    j["J"] = J_values;
    j["nmax"] = n_max;
    j["tol_algebra"] = algebra_tol;
    j["tol_unity"] = unity_tol;
    j["realizations"] = realizations;
    j["families"] = families;
    return j;
  }
};

inline RealizationType realization_type_from_string(const std::string& s, OscChoice& osc) {
  osc = OscChoice::B;
  if (s == "D/B") return RealizationType::D;
  if (s == "HP/B") return RealizationType::HP;
  if (s == "D/M") {
    osc = OscChoice::M;
    return RealizationType::D;
  }
  if (s == "HP/M") {
    osc = OscChoice::M;
    return RealizationType::HP;
  }
  if (s == "anyonHP") return RealizationType::anyonHP;
  if (s == "FBsym") return RealizationType::FBsym;
  if (s == "FBasym") return RealizationType::FBasym;
  throw std::invalid_argument("unknown realization: " + s);
}

inline json algebra_report_to_json(const AlgebraReport& r) {
  json j;
  j["realization"] = r.realization;
  j["q"] = r.q;
  json res;
  res["q0_qplus"] = r.residual_q0_qplus;
  res["q0_qminus"] = r.residual_q0_qminus;
  res["ladder"] = r.residual_ladder;
  res["conjugation"] = r.residual_conjugation;
  res["casimir"] = r.residual_casimir;
  j["residuals"] = res;
  j["pass"] = r.pass;
  return j;
}

inline json unity_report_to_json(const UnityReport& r) {
  json j;
  j["family"] = r.family;
  j["q"] = r.q;
  j["rule"] = r.rule_description;
  json ms = json::array();
  for (const MomentEntry& e : r.moments) {
    json m;
    m["n"] = e.n;
    m["M"] = e.value;
    m["converged"] = e.converged;
    m["diverged"] = e.diverged;
    ms.push_back(m);
  }
  j["moments"] = ms;
  j["max_deviation"] = r.max_deviation;
  j["divergence"] = r.any_divergence;
  j["pass"] = r.pass;
  return j;
}

struct RunReport {
  json body;        // full structured report
  bool all_pass = false;
};

/// verify-algebra sweep: every realization at every (q, k0) plus the su2
/// D/HP pairs at every (q, J).  Points are independent; they are evaluated
/// concurrently and merged in deterministic grid order.
inline RunReport run_algebra_sweep(const SweepConfig& cfg) {
  cfg.validate_for_algebra();
  struct Point {
    RealizationSpec spec;
    bool su2;
  };
  std::vector<Point> points;
  for (double q : cfg.q_values)
    for (HalfInt k0 : cfg.k0_values)
      for (const std::string& r : cfg.realizations) {
        RealizationSpec s;
        s.algebra = AlgebraKind::su11;
        s.rtype = realization_type_from_string(r, s.osc);
        s.k0 = k0;
        s.q = q;
        points.push_back({s, false});
      }
  for (double q : cfg.q_values)
    for (int J : cfg.J_values)
      for (RealizationType t : {RealizationType::D, RealizationType::HP}) {
        RealizationSpec s;
        s.algebra = AlgebraKind::su2;
        s.rtype = t;
        s.J = J;
        s.q = q;
        points.push_back({s, true});
      }

  std::vector<std::future<AlgebraReport>> futures;
  futures.reserve(points.size());
  for (const Point& p : points)
    futures.push_back(std::async(std::launch::async | std::launch::deferred, [p, &cfg]() {
      GeneratorTriple t = p.su2 ? su2_deformed(p.spec) : su11_deformed(p.spec, cfg.n_max);
      return verify_algebra(t, cfg.algebra_tol);
    }));

  RunReport rep;
  rep.all_pass = true;
  json pts = json::array();
  int pass_count = 0;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    AlgebraReport r = futures[i].get();
    json j = algebra_report_to_json(r);
    json params;
    params["realization"] = r.realization;
    params["q"] = points[i].spec.q;
    if (points[i].su2)
      params["J"] = points[i].spec.J;
    else
      params["k0"] = points[i].spec.k0.value();
    json point;
    point["params"] = params;
    point["residuals"] = j["residuals"];
    point["pass"] = r.pass;
    pts.push_back(point);
    rep.all_pass = rep.all_pass && r.pass;
    pass_count += r.pass ? 1 : 0;
  }

  json body;
  body["config"] = cfg.to_json();
  body["points"] = pts;
  json summary;
  summary["total"] = points.size();
  summary["passed"] = pass_count;
  summary["failed"] = points.size() - pass_count;
  summary["all_pass"] = rep.all_pass;
  body["summary"] = summary;
  body["provenance"] = {{"version", kVersion}, {"config_hash", fnv1a_hex(cfg.to_json().dump())}};
  rep.body = std::move(body);
  return rep;
}

/// verify-unity sweep over the requested families, with the two
/// convention adjudications appended for q < 1 points.
inline RunReport run_unity_sweep(const SweepConfig& cfg) {
  if (cfg.q_values.empty() || cfg.families.empty())
    throw std::invalid_argument("config: empty grid");
  if (!(cfg.unity_tol > 0.0)) throw std::invalid_argument("config: tolerances must be > 0");
  for (double q : cfg.q_values)
    if (q == 1.0)
      throw std::invalid_argument(
          "config: q = 1 is the classical point; use the limit-scan command");

  RunReport rep;
  rep.all_pass = true;
  json pts = json::array();
  int pass_count = 0, total = 0;
  auto add = [&](const UnityReport& r, json params) {
    json j = unity_report_to_json(r);
    json point;
    params["family"] = r.family;
    point["params"] = params;
    point["moments"] = j["moments"];
    point["max_deviation"] = r.max_deviation;
    point["pass"] = r.pass;
    pts.push_back(point);
    rep.all_pass = rep.all_pass && r.pass;
    pass_count += r.pass ? 1 : 0;
    ++total;
  };

  int n_upper = std::max(4, cfg.n_max - 5);
  for (double q : cfg.q_values) {
    for (const std::string& fam : cfg.families) {
      json params;
      params["q"] = q;
      if (fam == "GlauberE") {
        add(resolve_unity(CoherentFamily::glauber_e(q), n_upper, cfg.unity_tol), params);
      } else if (fam == "GlauberEE") {
        if (q < 1.0)
          add(resolve_unity(CoherentFamily::glauber_ee(q), n_upper, cfg.unity_tol), params);
      } else if (fam == "Perelomov11") {
        for (HalfInt k0 : cfg.k0_values) {
          if (k0.twice < 2) continue;  // no disk measure below k0 = 1
          json p2 = params;
          p2["k0"] = k0.value();
          add(resolve_unity(CoherentFamily::perelomov11(k0, q), n_upper, cfg.unity_tol), p2);
        }
      } else if (fam == "su2") {
        for (int J : cfg.J_values) {
          json p2 = params;
          p2["J"] = J;
          add(resolve_unity(CoherentFamily::perelomov2(J, q), J, cfg.unity_tol), p2);
        }
      } else {
        throw std::invalid_argument("unknown family: " + fam);
      }
    }
  }

  json adjud = json::array();
  for (double q : cfg.q_values) {
    if (q >= 1.0) continue;
    AdjudicationReport a = adjudicate_conventions(q, std::min(n_upper, 10), cfg.unity_tol);
    json ja;
    ja["q"] = q;
    ja["glauber_operator_dev"] = a.glauber_operator_dev;
    ja["glauber_printed_dev"] = a.glauber_printed_dev;
    ja["glauber_operator_diverged"] = a.glauber_operator_diverged;
    ja["glauber_printed_diverged"] = a.glauber_printed_diverged;
    ja["glauber_verdict"] = a.glauber_verdict;
    ja["k0_one_general_dev"] = a.k0_one_general_dev;
    ja["k0_one_printed_dev"] = a.k0_one_printed_dev;
    ja["k0_one_verdict"] = a.k0_one_verdict;
    adjud.push_back(ja);
  }

  json body;
  body["config"] = cfg.to_json();
  body["points"] = pts;
  body["adjudications"] = adjud;
  json summary;
  summary["total"] = total;
  summary["passed"] = pass_count;
  summary["failed"] = total - pass_count;
  summary["all_pass"] = rep.all_pass;
  body["summary"] = summary;
  body["provenance"] = {{"version", kVersion}, {"config_hash", fnv1a_hex(cfg.to_json().dump())}};
  rep.body = std::move(body);
  return rep;
}

// ---------------------------------------------------------------------------
// renderings
// ---------------------------------------------------------------------------

inline void flatten_json(const json& j, const std::string& prefix,
                         std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline std::string render_csv(const json& body) {
  std::ostringstream os;
  os << "key,value\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_json(body, "", rows);
  for (const auto& [k, v] : rows) {
    std::string vv = v;
    if (vv.find(',') != std::string::npos) vv = "\"" + vv + "\"";
    os << k << "," << vv << "\n";
  }
  return os.str();
}

inline std::string render_md(const json& body) {
  std::ostringstream os;
  os << "| key | value |\n|---|---|\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_json(body, "", rows);
  for (const auto& [k, v] : rows) os << "| " << k << " | " << v << " |\n";
  return os.str();
}

inline std::string render(const json& body, OutputFormat f) {
  switch (f) {
    case OutputFormat::json_fmt: return body.dump(2) + "\n";
    case OutputFormat::csv: return render_csv(body);
    case OutputFormat::md: return render_md(body);
  }
  return {};
}

}  // namespace qosc
