#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dkg/fields.hpp"

namespace dkg {

enum class Integrator { etd_rk4, strang };

Integrator integrator_from_name(const std::string& name);
std::string integrator_name(Integrator it);

struct SolverConfig {
  double M = 1.0;
  double m = 1.0;
  double g = 1.0;
  double dt = 1e-3;
  double T = 1.0;
  Integrator integrator = Integrator::etd_rk4;
  bool dealias = true;
};

/**
 * Rejects negative masses or coupling, non-positive dt or T, and time steps
 * that under-resolve the fastest linear frequency (dt * w_max > 1).
 */
void validate_config(const SolverConfig& cfg, const Grid3& grid);

/**
 * Evolution state: the spinor halves live in frequency space, the scalar
 * pair (phi, dt phi) in physical space. Away from the zero mode each half
 * stays in the range of its eigenprojection.
 */
struct DKGState {
  double t = 0.0;
  Field psi_plus;
  Field psi_minus;
  ScalarState scalar;
};

/**
 * Eigenprojection split of spinor data, returned in frequency space. The
 * minus half is computed as the complement psi0 - plus, so the two halves
 * sum back to the input within one rounding of each coefficient.
 */
std::pair<Field, Field> split_data(const Field& psi0);

/** Assembles the t = 0 state; dealiasing (when enabled) band-limits the data. */
DKGState make_state(const Field& psi0, const ScalarState& scalar0, const SolverConfig& cfg);

/** psi_plus + psi_minus in frequency space. */
Field total_spinor(const DKGState& st);

/**
 * Dirac source of the requested half in frequency space:
 * F_s = -M beta psi_{-s} + g P_s(D)(phi beta psi), psi = psi_+ + psi_-.
 */
Field dirac_rhs(Sign s, const DKGState& st, const SolverConfig& cfg);

/** Scalar source g <beta psi, psi> as a real physical field. */
std::vector<double> kg_rhs(const DKGState& st, const SolverConfig& cfg);

/** Discrete integral of |psi|^2, evaluated in whichever space the field holds. */
double charge(const Field& psi);

/**
 * Pointwise density <beta psi, psi> = |psi_1|^2 + |psi_2|^2 - |psi_3|^2 - |psi_4|^2,
 * grouped as (|psi_1|^2 - |psi_4|^2) + (|psi_2|^2 - |psi_3|^2) so that data on
 * the charge-free constraint surface gives exact floating-point zeros.
 */
std::vector<double> density(const Field& psi);

/**
 * Discrete integral of the textbook density
 *   e = Im(psi^dag alpha^j d_j psi) - (M - g phi) <beta psi, psi>
 *       - (1/2)((dt phi)^2 + |grad phi|^2 + m^2 phi^2)
 * with spectral derivatives. Not a constant of motion for coupled fields;
 * see invariant_energy.
 */
double energy(const DKGState& st, const SolverConfig& cfg);

/**
 * Sign-adjusted companion
 *   Im(psi^dag alpha^j d_j psi) + (M - g phi) <beta psi, psi>
 *       + (1/2)((dt phi)^2 + |grad phi|^2 + m^2 phi^2)
 * which is conserved by the flow and refines at the integrator order.
 */
double invariant_energy(const DKGState& st, const SolverConfig& cfg);

/**
 * One-step integrator with cached per-mode propagator coefficients. The
 * linear flow is exact in Fourier space; nonlinear stages are 4th order
 * (etd_rk4) or 2nd order (strang).
 */
class Stepper {
 public:
  Stepper(const Grid3& grid, const SolverConfig& cfg);
  void advance(DKGState& st);

 private:
  struct Quad {
    std::vector<cdouble> p, q, a, b;
  };

  void eval_sources(const Quad& u, Quad& out);
  void etd_step(Quad& u);
  void strang_step(Quad& u);

  Grid3 grid_;
  SolverConfig cfg_;
  std::vector<double> kabs_, omega_;
  std::vector<char> mask_;
  std::vector<Matrix4> proj_plus_;
  // spinor-plus coefficients at z = -i dt |k|; the minus half conjugates them
  std::vector<cdouble> sp_e_, sp_e2_, sp_h_, sp_fa_, sp_fb_, sp_fc_;
  // scalar coefficients at z = -i dt w; the mirror variable conjugates them
  std::vector<cdouble> sc_e_, sc_e2_, sc_h_, sc_fa_, sc_fb_, sc_fc_;
  std::vector<cdouble> buf_spinor_, buf_scalar_, prod_;
  Quad n1_, n2_, n3_, n4_, ua_, ub_, uc_;
};

/** Functional single step; builds the coefficient tables on every call. */
DKGState step(const DKGState& st, const SolverConfig& cfg);

struct SampleRecord {
  double t = 0.0;
  double charge = 0.0;
  double energy = 0.0;
  double density_min = 0.0;
  double density_max = 0.0;
  double psi_plus_h1 = 0.0;
  double psi_minus_h1 = 0.0;
  double phi_h1 = 0.0;
  double phi_t_l2 = 0.0;
};

SampleRecord sample_state(const DKGState& st, const SolverConfig& cfg);

struct Trajectory {
  std::vector<SampleRecord> records;
  DKGState final_state;
  bool blow_up = false;
  std::string message;
};

/**
 * Integrates to T = steps * dt, recording diagnostics every sample_stride
 * steps (plus the endpoints). Non-finite values or charge growth beyond
 * 1e6 times the initial charge stop the run and return the last healthy
 * state with blow_up set.
 */
Trajectory solve(const SolverConfig& cfg, const Field& psi0, const ScalarState& scalar0,
                 int sample_stride = 0);

struct ScalingReport {
  double l_factor = 1.0;
  double discrepancy = 0.0;
  double base_time = 0.0;
  double scaled_time = 0.0;
  int steps = 0;
};

/**
 * Massless scale symmetry probe: evolves the data on the original box to
 * time T and the pointwise-rescaled data (psi / Lf^{3/2}, phi / Lf,
 * dt phi / Lf^2) on the box Lf L to time Lf T with step Lf dt, then reports
 * the relative discrepancy between the rescaled endpoints. Requires
 * M = m = 0; Lf must be positive.
 */
ScalingReport scaling_check(const SolverConfig& cfg, const Field& psi0,
                            const ScalarState& scalar0, double l_factor);

}  // namespace dkg
