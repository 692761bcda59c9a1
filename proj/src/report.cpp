#include "dkg/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dkg {

nlohmann::json config_json(const RunConfig& cfg) {
  // Flat dotted keys, mirroring the file grammar, all defaults materialized.
  return nlohmann::json{
      {"grid.n", cfg.n},
      {"grid.L", cfg.L},
      {"mass.M", cfg.solver.M},
      {"mass.m", cfg.solver.m},
      {"coupling.g", cfg.solver.g},
      {"time.dt", cfg.solver.dt},
      {"time.T", cfg.solver.T},
      {"integrator", integrator_name(cfg.solver.integrator)},
      {"seed", cfg.seed},
      {"dealias", cfg.solver.dealias},
  };
}

nlohmann::json manifest_json(const RunManifest& man) {
  return nlohmann::json{
      {"command", man.command},
      {"version", kToolVersion},
      {"config", config_json(man.config)},
      {"config_path", man.config_path},
      {"seed", man.config.seed},
      {"outputs", man.outputs},
  };
}

std::string render_report(const RunManifest& man, const nlohmann::json& body) {
  nlohmann::json report = body;
  report["manifest"] = manifest_json(man);
  return report.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

std::string trajectory_csv(const std::vector<SampleRecord>& records) {
  std::string out =
      "t,charge,energy,density_min,density_max,"
      "psi_plus_h1,psi_minus_h1,phi_h1,phi_t_l2\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.charge,
                  r.energy, r.density_min, r.density_max, r.psi_plus_h1, r.psi_minus_h1,
                  r.phi_h1, r.phi_t_l2);
    out += buf;
  }
  return out;
}

}  // namespace dkg
