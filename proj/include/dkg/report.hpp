#pragma once

#include <string>
#include <vector>

#include "dkg/config.hpp"
#include "dkg/solver.hpp"
#include "json.hpp"

namespace dkg {

inline constexpr const char* kToolVersion = "0.1.0";

/**
 * Provenance block embedded in every report: the command, the fully resolved
 * configuration, the seed, the tool version, and the file paths involved.
 * Wall-clock timings are deliberately not part of the report; they go to
 * stderr so that reruns with an identical manifest produce identical bytes.
 */
struct RunManifest {
  std::string command;
  RunConfig config;
  std::string config_path;            // empty when running on defaults
  std::vector<std::string> outputs;   // paths this run writes
};

nlohmann::json config_json(const RunConfig& cfg);
nlohmann::json manifest_json(const RunManifest& man);

/** Report body + embedded manifest, rendered with a stable 2-space indent. */
std::string render_report(const RunManifest& man, const nlohmann::json& body);

void write_text_file(const std::string& path, const std::string& content);

/** Diagnostic time series; every number printed with %.17g. */
std::string trajectory_csv(const std::vector<SampleRecord>& records);

}  // namespace dkg
