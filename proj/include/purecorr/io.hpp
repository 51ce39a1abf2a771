#pragma once

// JSON and CSV forms of results, the density-matrix file format and atomic
// file output.
//
// Density-matrix file: {"dims": [d1, ...], "re": [...], "im": [...]} with
// the real and imaginary parts in row-major order.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "purecorr/inequality_lab.hpp"

namespace purecorr {

using nlohmann::json;

/// Shortest text that round-trips a double (17 significant digits).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json to_json(const Dims& d) { return d.factors(); }

inline json to_json(const StateDescriptor& s) {
  return json{{"family", s.family}, {"params", s.params}, {"n_parties", s.n_parties}, {"dims", to_json(s.dims)}};
}

inline json to_json(const Tolerances& t) {
  return json{{"hermiticity", t.hermiticity}, {"psd", t.psd},
              {"trace", t.trace},             {"pure_norm", t.pure_norm},
              {"eig_input", t.eig_input},     {"eig_cutoff", t.eig_cutoff},
              {"log_floor", t.log_floor},     {"structure", t.structure},
              {"bracket", t.bracket},         {"analytic_audit", t.analytic_audit},
              {"stacked_audit", t.stacked_audit}};
}

inline std::string to_string(GradientMode m) {
  return m == GradientMode::analytic ? "analytic" : "central-difference";
}

inline json to_json(const EpConfig& c) {
  return json{{"restarts", c.restarts},
              {"max_iterations", c.max_iterations},
              {"objective_tolerance", c.objective_tolerance},
              {"gradient_step", c.gradient_step},
              {"seed", c.seed},
              {"ancilla", c.ancilla.label()},
              {"gradient", to_string(c.gradient)}};
}

inline json to_json(const DcConfig& c) {
  return json{{"restarts", c.restarts},
              {"max_iterations", c.max_iterations},
              {"objective_tolerance", c.objective_tolerance},
              {"gradient_step", c.gradient_step},
              {"seed", c.seed},
              {"d_env", c.d_env},
              {"gradient", to_string(c.gradient)}};
}

inline json to_json(const Bracket& b) {
  return json{{"lower", b.lower},
              {"lower_source", b.lower_source},
              {"upper", b.upper},
              {"upper_source", b.upper_source},
              {"gap", b.gap}};
}

inline json to_json(const EpResult& r) {
  json j{{"estimate", r.estimate},
         {"estimate_kind", "upper estimate"},
         {"bracket", to_json(r.bracket)},
         {"per_restart_values", r.per_restart_values},
         {"start_labels", r.start_labels},
         {"config", to_json(r.config)},
         {"converged", r.converged},
         {"d_aprime", r.d_aprime},
         {"d_bprime", r.d_bprime}};
  j["certificate"] = r.certificate ? json{{"kind", to_string(r.certificate->kind)}, {"value", r.certificate->value}}
                                   : json(nullptr);
  return j;
}

inline json to_json(const DcResult& r) {
  return json{{"estimate", r.estimate},
              {"estimate_kind", "lower estimate"},
              {"identity_baseline", r.identity_baseline},
              {"upper", r.upper},
              {"per_restart_values", r.per_restart_values},
              {"start_labels", r.start_labels},
              {"config", to_json(r.config)},
              {"d_env", r.d_env},
              {"converged", r.converged}};
}

inline json to_json(const AuditRecord& r) {
  return json{{"claim_id", r.claim_id},
              {"state", to_json(r.state)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"relation", to_string(r.relation)},
              {"margin", r.margin},
              {"verdict", to_string(r.verdict)},
              {"certification", to_string(r.certification)},
              {"tolerance", r.tolerance},
              {"seed", r.seed},
              {"details", r.details}};
}

inline json to_json(const SweepResult& s) {
  json axes = json::array();
  for (const auto& a : s.grid.axes) axes.push_back(json{{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
  json rows = json::array();
  for (const auto& r : s.rows) rows.push_back(json{{"params", r.params}, {"delta_lb", r.value}});
  return json{{"family", s.family}, {"axes", axes}, {"rows", rows}, {"min", s.min_value}, {"argmin", s.argmin}};
}

inline json density_matrix_to_json(const DensityMatrix& rho) {
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(rho.dim() * rho.dim()));
  im.reserve(re.capacity());
  for (Eigen::Index i = 0; i < rho.dim(); ++i)
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      re.push_back(rho.matrix()(i, j).real());
      im.push_back(rho.matrix()(i, j).imag());
    }
  return json{{"dims", to_json(rho.dims())}, {"re", re}, {"im", im}};
}

/// Parses and validates the density-matrix format. Errors name the
/// offending field or the failed invariant.
inline DensityMatrix density_matrix_from_json(const json& j) {
  if (!j.is_object()) throw ContractViolation("density matrix file: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "dims" && key != "re" && key != "im")
      throw ContractViolation("density matrix file: unknown field '" + key + "'");
  for (const char* key : {"dims", "re", "im"})
    if (!j.contains(key) || !j[key].is_array())
      throw ContractViolation(std::string("density matrix file: field '") + key + "' missing or not an array");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      throw ContractViolation("density matrix file: field 'dims' must hold positive integers");
    dims.push_back(d.get<int>());
  }
  if (dims.empty()) throw ContractViolation("density matrix file: field 'dims' is empty");
  const Dims dd(dims);
  check_dimension_cap(dd.total());
  const auto n = static_cast<std::size_t>(dd.total());
  for (const char* key : {"re", "im"}) {
    if (j[key].size() != n * n)
      throw ContractViolation(std::string("density matrix file: field '") + key + "' needs " +
                              std::to_string(n * n) + " entries");
    for (const auto& v : j[key])
      if (!v.is_number()) throw ContractViolation(std::string("density matrix file: field '") + key + "' is not numeric");
  }
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n * n; ++k)
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) =
        cplx(j["re"][k].get<double>(), j["im"][k].get<double>());
  const auto why = DensityMatrix::invariant_failure(m);
  if (!why.empty()) throw ContractViolation("density matrix file violates " + why);
  return DensityMatrix(std::move(m), dd);
}

inline DensityMatrix load_density_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open density matrix file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ContractViolation("density matrix file is not valid JSON: " + std::string(e.what()));
  }
  return density_matrix_from_json(j);
}

/// CSV with the stable columns claim_id, family, params..., lhs, rhs,
/// margin, verdict, certification, seed. Parameter columns are named by
/// `param_names` or numbered.
inline void write_records_csv(std::ostream& out, const std::vector<AuditRecord>& records,
                              const std::vector<std::string>& param_names = {}) {
  std::size_t n_params = param_names.size();
  for (const auto& r : records) n_params = std::max(n_params, r.state.params.size());
  out << "claim_id,family";
  for (std::size_t k = 0; k < n_params; ++k)
    out << ',' << (k < param_names.size() ? param_names[k] : "param_" + std::to_string(k + 1));
  out << ",lhs,rhs,margin,verdict,certification,seed\n";
  for (const auto& r : records) {
    out << r.claim_id << ',' << r.state.family;
    for (std::size_t k = 0; k < n_params; ++k) {
      out << ',';
      if (k < r.state.params.size()) out << format_double(r.state.params[k]);
    }
    out << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.margin) << ','
        << to_string(r.verdict) << ',' << to_string(r.certification) << ',' << r.seed << '\n';
  }
}

inline std::string records_csv(const std::vector<AuditRecord>& records,
                               const std::vector<std::string>& param_names = {}) {
  std::ostringstream s;
  write_records_csv(s, records, param_names);
  return s.str();
}

/// Writes through a temporary file in the same directory and renames it.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace purecorr
