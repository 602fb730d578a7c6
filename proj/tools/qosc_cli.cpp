// Command-line verification harness: algebra and resolution-of-unity sweeps,
// q-number / norm / measure tables, and classical-limit scans.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qosc/qosc.hpp"
#include "qosc/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

qosc::OutputFormat parse_format(const std::string& s) {
  if (s == "json") return qosc::OutputFormat::json_fmt;
  if (s == "csv") return qosc::OutputFormat::csv;
  if (s == "md") return qosc::OutputFormat::md;
  throw std::invalid_argument("format must be json, csv or md");
}

qosc::HalfInt parse_half(double v) {
  double t = v * 2.0;
  double r = std::round(t);
  if (std::fabs(t - r) > 1e-9)
    throw std::invalid_argument("k0 values must be integers or half odd integers");
  return qosc::HalfInt::from_twice(static_cast<int>(r));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

// Flat "key = value" config file; lists are comma-separated. Flags override.
void load_config_file(const std::string& path, std::map<std::string, std::string>& kv) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      auto e = s.find_last_not_of(" \t\r");
      s.erase(e == std::string::npos ? 0 : e + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) v.push_back(std::stod(item));
  }
  return v;
}

std::vector<std::string> parse_string_list(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    auto e = item.find_last_not_of(" \t");
    if (e != std::string::npos) item.erase(e + 1);
    if (!item.empty()) v.push_back(item);
  }
  return v;
}

struct CommonOpts {
  std::vector<double> q, k0;
  std::vector<int> J;
  int nmax = 0;
  double tol_algebra = 0.0, tol_unity = 0.0;
  std::vector<std::string> realizations, families;
  std::string format = "json", out, config;
};

qosc::SweepConfig build_config(const CommonOpts& o) {
  qosc::SweepConfig cfg;
  std::map<std::string, std::string> kv;
  if (!o.config.empty()) load_config_file(o.config, kv);
  auto kv_list = [&](const char* key) -> std::vector<double> {
    auto it = kv.find(key);
    return it == kv.end() ? std::vector<double>{} : parse_list(it->second);
  };
  std::vector<double> q = !o.q.empty() ? o.q : kv_list("q");
  std::vector<double> k0 = !o.k0.empty() ? o.k0 : kv_list("k0");
  std::vector<double> J = o.J.empty() ? kv_list("J") : std::vector<double>(o.J.begin(), o.J.end());
  if (!q.empty()) cfg.q_values = q;
  if (!k0.empty()) {
    cfg.k0_values.clear();
    for (double v : k0) cfg.k0_values.push_back(parse_half(v));
  }
  if (!J.empty()) {
    cfg.J_values.clear();
    for (double v : J) cfg.J_values.push_back(static_cast<int>(std::round(v)));
  }
  if (o.nmax > 0)
    cfg.n_max = o.nmax;
  else if (kv.count("nmax"))
    cfg.n_max = std::stoi(kv.at("nmax"));
  if (o.tol_algebra > 0.0)
    cfg.algebra_tol = o.tol_algebra;
  else if (kv.count("tol_algebra"))
    cfg.algebra_tol = std::stod(kv.at("tol_algebra"));
  if (o.tol_unity > 0.0)
    cfg.unity_tol = o.tol_unity;
  else if (kv.count("tol_unity"))
    cfg.unity_tol = std::stod(kv.at("tol_unity"));
  if (!o.realizations.empty())
    cfg.realizations = o.realizations;
  else if (kv.count("realizations"))
    cfg.realizations = parse_string_list(kv.at("realizations"));
  if (!o.families.empty())
    cfg.families = o.families;
  else if (kv.count("families"))
    cfg.families = parse_string_list(kv.at("families"));
  cfg.format = parse_format(o.format);
  return cfg;
}

int cmd_verify_algebra(const CommonOpts& o) {
  qosc::SweepConfig cfg = build_config(o);
  if (cfg.realizations.empty()) throw std::invalid_argument("empty realization list");
  qosc::RunReport rep = qosc::run_algebra_sweep(cfg);
  emit(qosc::render(rep.body, cfg.format), o.out);
  return rep.all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_verify_unity(const CommonOpts& o) {
  qosc::SweepConfig cfg = build_config(o);
  qosc::RunReport rep = qosc::run_unity_sweep(cfg);
  emit(qosc::render(rep.body, cfg.format), o.out);
  return rep.all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_limit_scan(const CommonOpts& o, const std::string& realization) {
  qosc::SweepConfig cfg = build_config(o);
  if (cfg.q_values.size() < 2)
    throw std::invalid_argument("limit-scan needs at least two q grid points");
  qosc::json body;
  body["config"] = cfg.to_json();
  qosc::json pts = qosc::json::array();
  bool all_ok = true;

  std::vector<std::string> reals =
      realization.empty() ? cfg.realizations : std::vector<std::string>{realization};
  for (const std::string& r : reals) {
    for (qosc::HalfInt k0 : cfg.k0_values) {
      qosc::RealizationSpec s;
      s.algebra = qosc::AlgebraKind::su11;
      s.rtype = qosc::realization_type_from_string(r, s.osc);
      s.k0 = k0;
      s.q = cfg.q_values.front();
      qosc::LimitScanReport rep = qosc::classical_limit_scan(s, cfg.q_values, cfg.n_max);
      qosc::json p;
      p["realization"] = r;
      p["k0"] = k0.value();
      p["fitted_order"] = rep.fitted_order;
      qosc::json ds = qosc::json::array();
      for (auto& pt : rep.points) ds.push_back({{"q", pt.q}, {"distance", pt.distance}});
      p["points"] = ds;
      pts.push_back(p);
    }
  }
  body["points"] = pts;
  body["provenance"] = {{"version", qosc::kVersion},
                        {"config_hash", qosc::fnv1a_hex(cfg.to_json().dump())}};
  emit(qosc::render(body, cfg.format), o.out);
  return all_ok ? kExitPass : kExitCheckFailed;
}

int cmd_table(const std::string& kind, const CommonOpts& o, const std::string& realization,
              const std::string& measure, int n_upper) {
  qosc::json body;
  double q = o.q.empty() ? 0.9 : o.q.front();
  qosc::json rows = qosc::json::array();
  if (kind == "qnumbers") {
    for (int n = 0; n <= n_upper; ++n) {
      qosc::json row;
      row["n"] = n;
      row["bracket_exact"] = qosc::q_bracket_poly(n).str();
      row["bracket"] = qosc::q_bracket(n, q);
      row["brace_exact"] = qosc::q_brace_poly(n).str();
      row["brace"] = qosc::q_brace(n, q);
      row["bracket_factorial_exact"] = qosc::q_factorial_poly(n).str();
      row["bracket_factorial"] = qosc::q_factorial(n, q);
      rows.push_back(row);
    }
  } else if (kind == "norms") {
    qosc::RealizationSpec s;
    s.q = q;
    if (realization.rfind("su2", 0) == 0) {
      s.algebra = qosc::AlgebraKind::su2;
      s.rtype = realization == "su2:HP" ? qosc::RealizationType::HP : qosc::RealizationType::D;
      s.J = o.J.empty() ? 4 : o.J.front();
      n_upper = std::min(n_upper, s.J);
    } else {
      s.rtype = qosc::realization_type_from_string(realization.empty() ? "D/B" : realization,
                                                   s.osc);
      s.k0 = parse_half(o.k0.empty() ? 1.0 : o.k0.front());
    }
    for (int n = 0; n <= n_upper; ++n) {
      qosc::LaurentFrac f = qosc::norm_exact(s, n);
      qosc::json row;
      row["n"] = n;
      row["norm_exact"] = f.str();
      row["norm"] = static_cast<double>(f.eval((long double)q));
      rows.push_back(row);
    }
    body["realization"] = s.label();
  } else if (kind == "measures") {
    qosc::MeasureSpec m;
    m.q = q;
    if (measure == "g")
      m.name = qosc::MeasureName::g;
    else if (measure == "h")
      m.name = qosc::MeasureName::h;
    else if (measure == "H") {
      m.name = qosc::MeasureName::H;
      m.J = o.J.empty() ? 2 : o.J.front();
    } else if (measure == "G") {
      m.name = qosc::MeasureName::G;
      m.k0 = parse_half(o.k0.empty() ? 1.5 : o.k0.front());
    } else {
      throw std::invalid_argument("measure must be one of G, g, h, H");
    }
    double xmax = (m.name == qosc::MeasureName::G) ? 1.0 : 4.0;
    for (int i = 0; i <= n_upper; ++i) {
      double x = xmax * i / std::max(1, n_upper);
      qosc::json row;
      row["x"] = x;
      row["value"] = qosc::measure_eval(m, x);
      rows.push_back(row);
    }
  } else {
    throw std::invalid_argument("table kind must be qnumbers, norms or measures");
  }
  body["kind"] = kind;
  body["q"] = q;
  body["rows"] = rows;
  emit(qosc::render(body, parse_format(o.format)), o.out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed oscillator algebra verification harness"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string realization, measure, table_kind;
  int table_n = 5;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--q", o.q, "deformation parameter grid")->delimiter(',');
    c->add_option("--k0", o.k0, "k0 grid (integers or half odd integers)")->delimiter(',');
    c->add_option("--J", o.J, "su2 J grid")->delimiter(',');
    c->add_option("--nmax", o.nmax, "Fock truncation");
    c->add_option("--tol-algebra", o.tol_algebra, "algebra residual tolerance");
    c->add_option("--tol-unity", o.tol_unity, "resolution-of-unity tolerance");
    c->add_option("--realization", o.realizations, "realization list")->delimiter(',');
    c->add_option("--family", o.families, "coherent family list")->delimiter(',');
    c->add_option("--format", o.format, "json | csv | md");
    c->add_option("--out", o.out, "output path (default stdout)");
    c->add_option("--config", o.config, "flat key = value config file");
  };

  CLI::App* va = app.add_subcommand("verify-algebra", "commutator/conjugation/Casimir sweep");
  add_common(va);
  CLI::App* vu = app.add_subcommand("verify-unity", "resolution-of-unity moment sweep");
  add_common(vu);
  CLI::App* ls = app.add_subcommand("limit-scan", "classical q -> 1 convergence scan");
  add_common(ls);
  ls->add_option("--one-realization", realization, "restrict to a single realization");
  CLI::App* tb = app.add_subcommand("table", "q-number / norm / measure tables");
  add_common(tb);
  tb->add_option("kind", table_kind, "qnumbers | norms | measures")->required();
  tb->add_option("--n", table_n, "rows (levels or grid points)");
  tb->add_option("--one-realization", realization, "realization for norm tables");
  tb->add_option("--measure", measure, "measure name for measure tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (va->parsed()) return cmd_verify_algebra(o);
    if (vu->parsed()) return cmd_verify_unity(o);
    if (ls->parsed()) return cmd_limit_scan(o, realization);
    if (tb->parsed()) return cmd_table(table_kind, o, realization, measure, table_n);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitConfigError;
}
