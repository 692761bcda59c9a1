#pragma once

#include <string>

#include "dkg/fields.hpp"

namespace dkg {

/**
 * Binary state snapshot, format "DKG1":
 *   magic "DKG1" | u32 version | u32 n | f64 L | payload
 * payload (little-endian f64): the 4 complex spinor components interleaved as
 * (re, im) per grid point in row-major order, then phi, then dt phi.
 */
struct Snapshot {
  Field psi;        // 4 components, physical space
  ScalarState scalar;
};

void write_snapshot(const std::string& path, const Field& psi_physical,
                    const ScalarState& scalar);
Snapshot read_snapshot(const std::string& path);

}  // namespace dkg
