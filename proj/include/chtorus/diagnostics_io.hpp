#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chtorus/conservation.hpp"
#include "chtorus/curvature.hpp"
#include "chtorus/errors.hpp"
#include "chtorus/field.hpp"
#include "chtorus/state.hpp"

// File output: flat CSV diagnostics (17 significant digits, deterministic
// row order) and JSON summaries.  No binary formats.

namespace chtorus {

// Shortest fixed-precision form that round-trips an IEEE double.
inline std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

// Create the output directory and prove it is writable before any compute
// starts; throws ConfigError otherwise.
inline void ensure_writable_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " +
                            ec.message());
  const fs::path probe = fs::path(dir) / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok\n"))
      throw ConfigError("output directory not writable: " + dir);
  }
  fs::remove(probe, ec);
}

inline std::string diagnostics_csv_header(int ncomps, bool with_residual) {
  std::string h = "t,hs_energy";
  for (int i = 1; i <= ncomps; ++i) h += ",mu_u_" + std::to_string(i);
  h += ",metric_norm,consv1_dev,rho_mass_dev";
  if (with_residual) h += ",geo_residual";
  return h;
}

// Diagnostics time series; optional trailing marker row (for truncated runs)
// starts with '#' so tabular readers can skip it.
inline void write_diagnostics_csv(const std::string& path,
                                  const std::vector<DiagnosticsRecord<double>>& records,
                                  int ncomps, bool with_residual,
                                  const std::optional<std::string>& truncation = {}) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << diagnostics_csv_header(ncomps, with_residual) << "\n";
  for (const auto& r : records) {
    out << g17(r.t) << ',' << g17(r.hs_energy);
    for (int i = 0; i < ncomps; ++i)
      out << ',' << g17(i < static_cast<int>(r.mu_u.size()) ? r.mu_u[i] : 0.0);
    out << ',' << g17(r.metric_norm) << ',' << g17(r.lagr_momentum_dev) << ','
        << g17(r.rho_mass_dev);
    if (with_residual) out << ',' << g17(r.geo_residual.value_or(0.0));
    out << "\n";
  }
  if (truncation) out << "# truncated: " << *truncation << "\n";
  if (!out) throw ConfigError("write failed: " + path);
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw ConfigError("write failed: " + path);
}

// Final state as JSON arrays (component-major, grid order).
template <class Real>
nlohmann::json state_to_json(const EulerState<Real>& s, double t_final) {
  nlohmann::json j;
  j["t"] = t_final;
  j["dim"] = s.u.grid.dim();
  j["grid"] = s.u.grid.n();
  auto block = [](const TorusField<Real>& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (int c = 0; c < f.comps; ++c) {
      nlohmann::json comp = nlohmann::json::array();
      for (std::size_t p = 0; p < f.npts(); ++p)
        comp.push_back(static_cast<double>(f.at(c, p)));
      arr.push_back(std::move(comp));
    }
    return arr;
  };
  j["u"] = block(s.u);
  if (s.rho)
    j["rho"] = block(*s.rho);
  else
    j["rho"] = nullptr;
  return j;
}

inline void write_scan_csv(const std::string& path,
                           const std::vector<SectionalScanRow<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << "k1,k2,S_e1,S_e2,closed_form_e1,closed_form_e2\n";
  for (const auto& r : rows)
    out << g17(r.k1) << ',' << g17(r.k2) << ',' << g17(r.s_e1) << ','
        << g17(r.s_e2) << ',' << g17(r.closed_e1) << ',' << g17(r.closed_e2)
        << "\n";
  if (!out) throw ConfigError("write failed: " + path);
}

struct BResidualRow {
  double b = 0;
  double gl1_residual = 0;         // two-sided convective mismatch on the mode
  double gl3_branch_residual = 0;  // residual of the printed per-mode solution
};

inline void write_b_residual_csv(const std::string& path,
                                 const std::vector<BResidualRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << "b,gl1_residual,gl3_branch_residual\n";
  for (const auto& r : rows)
    out << g17(r.b) << ',' << g17(r.gl1_residual) << ','
        << g17(r.gl3_branch_residual) << "\n";
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace chtorus
