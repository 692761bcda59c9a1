#pragma once

#include <string>
#include <vector>

#include "dkg/solver.hpp"

namespace dkg {

struct IterationRecord {
  int k = 0;
  double psi_plus_norm = 0.0;   // sup over sample times of the H^eps norm
  double psi_minus_norm = 0.0;  // same for the minus half
  double phi_norm = 0.0;        // sup over sample times of the H^{1/2+eps} norm
  double diff_norm = 0.0;       // distance to the previous iterate, zero reference at k = 0
};

struct PicardReport {
  std::vector<IterationRecord> records;
  bool non_contraction = false;
  std::string message;
  double T = 0.0;
  int n_t = 0;
  double eps = 0.0;
};

/**
 * Paper-style iteration: each iterate solves the massless half-wave and wave
 * equations by Duhamel with sources built from the previous iterate (the mass
 * terms stay on the right-hand side), all iterates sharing the t = 0 data.
 * Iterate 0 is the homogeneous flow; diff_norm is the sup over the n_t + 1
 * sample times of the H^eps spinor norms plus the H^{1/2+eps} scalar norm of
 * the difference to the previous iterate. Three consecutive growths of
 * diff_norm stop the run and set non_contraction. Requires 0 < T <= 1.
 */
PicardReport picard_iterate(const SolverConfig& cfg, const Field& psi0,
                            const ScalarState& scalar0, int k_max, int n_t = 64,
                            double eps = 0.1);

}  // namespace dkg
