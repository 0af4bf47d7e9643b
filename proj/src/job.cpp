#include "heunred/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace heunred {

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> make_grid(double start, double stop, int count) {
  std::vector<double> g;
  if (count == 1) {
    g.push_back(start);
    return g;
  }
  for (int i = 0; i < count; ++i)
    g.push_back(start + (stop - start) * i / (count - 1));
  return g;
}

// free parameters per family; gamma plays the role delta has for A
void require_params(const JobConfig& cfg) {
  auto need = [](bool has, const char* name) {
    if (!has)
      throw std::invalid_argument(std::string("missing parameter --") + name);
  };
  switch (cfg.family) {
    case ExpansionFamily::A:
      need(cfg.has_delta, "delta");
      need(cfg.has_epsilon, "epsilon");
      need(cfg.has_alpha, "alpha");
      if (cfg.epsilon == 0.0)
        throw std::invalid_argument("family A requires epsilon != 0");
      break;
    case ExpansionFamily::C:
      need(cfg.has_gamma, "gamma");
      need(cfg.has_epsilon, "epsilon");
      need(cfg.has_alpha, "alpha");
      if (cfg.epsilon == 0.0)
        throw std::invalid_argument("family C requires epsilon != 0");
      break;
    case ExpansionFamily::D:
      need(cfg.has_delta, "delta");
      need(cfg.has_alpha, "alpha");
      if (cfg.alpha == 0.0)
        throw std::invalid_argument("family D requires alpha != 0");
      if (cfg.has_epsilon && cfg.epsilon != 0.0)
        throw std::invalid_argument("family D requires epsilon = 0");
      break;
    case ExpansionFamily::B:
      throw std::invalid_argument(
          "family B admits no two-term reduction; choose A, C or D");
  }
}

CheParams free_params(const JobConfig& cfg) {
  CheParams p;
  p.gamma = cfg.gamma;
  p.delta = cfg.delta;
  p.epsilon = (cfg.family == ExpansionFamily::D) ? 0.0 : cfg.epsilon;
  p.alpha = cfg.alpha;
  return p;
}

ReductionResult solve_for(const JobConfig& cfg, const CheParams& p) {
  if (cfg.N <= 2) return solve_reduction(cfg.family, p, cfg.N);
  return solve_reduction_general(cfg.family, p, cfg.N, cfg.starts, cfg.seed);
}

void echo_meta(const JobConfig& cfg, JobReport& rep, const char* command) {
  rep.meta.emplace_back("version", kVersion);
  rep.meta.emplace_back("command", command);
  rep.meta.emplace_back("family", family_name(cfg.family));
  rep.meta.emplace_back("N", std::to_string(cfg.N));
  if (cfg.has_gamma) rep.meta.emplace_back("gamma", num17(cfg.gamma));
  if (cfg.has_delta) rep.meta.emplace_back("delta", num17(cfg.delta));
  if (cfg.has_epsilon) rep.meta.emplace_back("epsilon", num17(cfg.epsilon));
  if (cfg.has_alpha) rep.meta.emplace_back("alpha", num17(cfg.alpha));
  rep.meta.emplace_back("seed", std::to_string(cfg.seed));
  rep.meta.emplace_back("nmax", std::to_string(cfg.nmax));
}

void spec_columns(const JobConfig& cfg, JobReport& rep) {
  rep.columns = {"root_index", "q"};
  for (int k = 1; k <= cfg.N; ++k)
    rep.columns.push_back("e" + std::to_string(k));
  rep.columns.insert(rep.columns.end(),
                     {"gamma", "delta", "epsilon", "alpha", "residual"});
}

std::vector<double> spec_row(int idx, const ReductionSpec& s) {
  std::vector<double> row{static_cast<double>(idx), s.q};
  row.insert(row.end(), s.e.begin(), s.e.end());
  row.insert(row.end(), {s.params.gamma, s.params.delta, s.params.epsilon,
                         s.params.alpha, reduction_residual(s)});
  return row;
}

void reject_diagnostics(const ReductionResult& r, JobReport& rep) {
  for (const auto& rj : r.rejected) {
    std::ostringstream os;
    os.precision(17);
    os << "rejected root q = " << rj.q.real();
    if (rj.q.imag() != 0.0) os << " + " << rj.q.imag() << "i";
    os << ": " << rj.reason;
    rep.diagnostics.push_back(os.str());
  }
  for (const auto& n : r.notes) rep.diagnostics.push_back(n);
}

JobReport run_reduce(const JobConfig& cfg) {
  JobReport rep;
  echo_meta(cfg, rep, "reduce");
  CheParams p = free_params(cfg);
  ReductionResult r = solve_for(cfg, p);
  spec_columns(cfg, rep);
  int idx = 0;
  for (const auto& s : r.specs) rep.rows.push_back(spec_row(idx++, s));
  reject_diagnostics(r, rep);
  rep.exit_code = r.specs.empty() ? 2 : 0;
  return rep;
}

const ReductionSpec& pick_spec(const ReductionResult& r, int root_index) {
  if (root_index < 0 || root_index >= static_cast<int>(r.specs.size()))
    throw std::runtime_error("root index out of range: " +
                             std::to_string(root_index) + " (found " +
                             std::to_string(r.specs.size()) + " specs)");
  return r.specs[static_cast<size_t>(root_index)];
}

JobReport run_eval(const JobConfig& cfg) {
  JobReport rep;
  echo_meta(cfg, rep, "eval");
  CheParams p = free_params(cfg);
  ReductionResult r = solve_for(cfg, p);
  if (r.specs.empty()) {
    reject_diagnostics(r, rep);
    rep.columns = {"z", "u", "du", "n_used", "converged"};
    rep.exit_code = 2;
    return rep;
  }
  const ReductionSpec& spec = pick_spec(r, cfg.root_index);
  SeriesSolution sol = make_solution(spec, cfg.nmax);
  EvalOptions opt;
  opt.nmax = cfg.nmax;
  opt.basis.tol = cfg.tol_series;
  rep.columns = {"z", "u", "du", "n_used", "converged"};
  for (double z : make_grid(cfg.z_start, cfg.z_stop, cfg.z_count)) {
    EvalPoint pt = evaluate_solution(sol, z, opt);
    rep.rows.push_back({z, pt.u, pt.du, static_cast<double>(pt.n_used),
                        pt.converged ? 1.0 : 0.0});
  }
  rep.meta.emplace_back("q", num17(spec.q));
  rep.exit_code = 0;
  return rep;
}

JobReport run_verify(const JobConfig& cfg) {
  JobReport rep;
  echo_meta(cfg, rep, "verify");
  CheParams p = free_params(cfg);
  ReductionResult r = solve_for(cfg, p);
  if (r.specs.empty()) {
    reject_diagnostics(r, rep);
    rep.columns = {"z", "residual"};
    rep.exit_code = 2;
    return rep;
  }
  const ReductionSpec& spec = pick_spec(r, cfg.root_index);
  SeriesSolution sol = make_solution(spec, cfg.nmax);
  EvalOptions opt;
  opt.nmax = cfg.nmax;
  opt.basis.tol = cfg.tol_series;
  rep.columns = {"z", "residual"};
  double worst = 0.0;
  for (double z : make_grid(cfg.z_start, cfg.z_stop, cfg.z_count)) {
    double res = verify_solution(sol, std::span<const double>(&z, 1), opt);
    worst = std::max(worst, res);
    rep.rows.push_back({z, res});
  }
  rep.meta.emplace_back("q", num17(spec.q));
  rep.meta.emplace_back("max_residual", num17(worst));
  rep.exit_code = worst <= 1e-6 ? 0 : 2;
  return rep;
}

JobReport run_sweep(const JobConfig& cfg) {
  JobReport rep;
  echo_meta(cfg, rep, "sweep");
  rep.meta.emplace_back("sweep_param", cfg.sweep_param);
  rep.meta.emplace_back("sweep_start", num17(cfg.sweep_start));
  rep.meta.emplace_back("sweep_stop", num17(cfg.sweep_stop));
  rep.meta.emplace_back("sweep_count", std::to_string(cfg.sweep_count));

  rep.columns = {"param_value", "root_index", "q"};
  for (int k = 1; k <= cfg.N; ++k)
    rep.columns.push_back("e" + std::to_string(k));
  rep.columns.push_back("residual");

  EvalOptions opt;
  opt.nmax = cfg.nmax;
  opt.basis.tol = cfg.tol_series;
  std::vector<double> zs = make_grid(cfg.z_start, cfg.z_stop, cfg.z_count);
  int admissible = 0;
  for (double v : make_grid(cfg.sweep_start, cfg.sweep_stop, cfg.sweep_count)) {
    JobConfig point = cfg;
    if (cfg.sweep_param == "delta") point.delta = v;
    else if (cfg.sweep_param == "epsilon") point.epsilon = v;
    else if (cfg.sweep_param == "alpha") point.alpha = v;
    else if (cfg.sweep_param == "gamma") point.gamma = v;
    CheParams p = free_params(point);
    ReductionResult r;
    try {
      r = solve_for(point, p);
    } catch (const std::exception& err) {
      rep.diagnostics.push_back("sweep point " + num17(v) + ": " + err.what());
      continue;
    }
    int idx = 0;
    for (const auto& s : r.specs) {
      double res;
      try {
        SeriesSolution sol = make_solution(s, cfg.nmax);
        res = verify_solution(sol, zs, opt);
      } catch (const std::exception& err) {
        rep.diagnostics.push_back("sweep point " + num17(v) + " root " +
                                  std::to_string(idx) + ": " + err.what());
        ++idx;
        continue;
      }
      std::vector<double> row{v, static_cast<double>(idx), s.q};
      row.insert(row.end(), s.e.begin(), s.e.end());
      row.push_back(res);
      rep.rows.push_back(std::move(row));
      ++admissible;
      ++idx;
    }
  }
  // rows are generated in (param value, root index) order already
  rep.exit_code = admissible > 0 ? 0 : 2;
  return rep;
}

}  // namespace

Command parse_command(const std::string& s) {
  if (s == "reduce") return Command::reduce;
  if (s == "eval") return Command::eval;
  if (s == "verify") return Command::verify;
  if (s == "sweep") return Command::sweep;
  throw std::invalid_argument("unknown command: " + s);
}

ExpansionFamily parse_family(const std::string& s) {
  if (s == "A") return ExpansionFamily::A;
  if (s == "B") return ExpansionFamily::B;
  if (s == "C") return ExpansionFamily::C;
  if (s == "D") return ExpansionFamily::D;
  throw std::invalid_argument("unknown family: " + s);
}

void validate_config(const JobConfig& cfg) {
  if (cfg.N < 0) throw std::invalid_argument("order N must be >= 0");
  JobConfig eff = cfg;  // the swept parameter counts as provided;
  if (cfg.command == Command::sweep) {  // its value is set per grid point
    if (cfg.sweep_param == "delta") eff.has_delta = true;
    if (cfg.sweep_param == "epsilon") {
      eff.has_epsilon = true;
      eff.epsilon = 1.0;
    }
    if (cfg.sweep_param == "alpha") {
      eff.has_alpha = true;
      eff.alpha = 1.0;
    }
    if (cfg.sweep_param == "gamma") eff.has_gamma = true;
  }
  require_params(eff);
  if (cfg.command == Command::eval || cfg.command == Command::verify ||
      cfg.command == Command::sweep) {
    if (!(cfg.z_start > 0.0 && cfg.z_stop < 1.0 && cfg.z_start <= cfg.z_stop))
      throw std::invalid_argument("z grid must lie inside (0, 1)");
    if (cfg.z_count < 1) throw std::invalid_argument("z-count must be >= 1");
  }
  if (cfg.command == Command::sweep) {
    static const char* allowed[] = {"delta", "epsilon", "alpha", "gamma"};
    if (std::find(std::begin(allowed), std::end(allowed), cfg.sweep_param) ==
        std::end(allowed))
      throw std::invalid_argument(
          "sweep-param must be one of delta, epsilon, alpha, gamma");
    if (cfg.sweep_count < 1)
      throw std::invalid_argument("sweep-count must be >= 1");
    if (cfg.family == ExpansionFamily::D && cfg.sweep_param == "epsilon")
      throw std::invalid_argument("family D has no epsilon to sweep");
    if (cfg.family != ExpansionFamily::C && cfg.sweep_param == "gamma")
      throw std::invalid_argument("gamma is free only for family C");
  }
  if (cfg.format != "json" && cfg.format != "csv")
    throw std::invalid_argument("format must be json or csv");
  if (cfg.nmax < 1) throw std::invalid_argument("nmax must be >= 1");
  if (cfg.root_index < 0)
    throw std::invalid_argument("root-index must be >= 0");
  if (cfg.starts < 1) throw std::invalid_argument("starts must be >= 1");
}

JobReport run_job(const JobConfig& cfg) {
  validate_config(cfg);
  switch (cfg.command) {
    case Command::reduce: return run_reduce(cfg);
    case Command::eval: return run_eval(cfg);
    case Command::verify: return run_verify(cfg);
    case Command::sweep: return run_sweep(cfg);
  }
  throw std::logic_error("unreachable");
}

void write_csv(const JobReport& rep, std::ostream& os) {
  for (size_t i = 0; i < rep.columns.size(); ++i)
    os << (i ? "," : "") << rep.columns[i];
  os << "\n";
  for (const auto& row : rep.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << num17(row[i]);
    os << "\n";
  }
}

void write_json(const JobReport& rep, std::ostream& os) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : rep.meta) meta[k] = v;
  if (!rep.diagnostics.empty()) meta["diagnostics"] = rep.diagnostics;
  j["meta"] = meta;
  j["columns"] = rep.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double v : row) r.push_back(v);
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  os << j.dump(2) << "\n";
}

}  // namespace heunred
