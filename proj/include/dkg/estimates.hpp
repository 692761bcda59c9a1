#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dkg/spacetime.hpp"

namespace dkg {

/**
 * One point in the bilinear interaction geometry: output frequency (tau, xi)
 * and input frequency (lambda, eta), with the second input frequency
 * (lambda - tau, eta - xi) implicit.
 */
struct FrequencyTuple {
  double tau = 0.0;
  double lambda = 0.0;
  Vec3 xi{};
  Vec3 eta{};
};

/** Log-uniform magnitudes in [0.1, 10] with uniform directions and signs. */
std::vector<FrequencyTuple> random_frequency_tuples(std::uint64_t seed, long count);

/**
 * Sweep of the angular-weight laws. With theta_pm the angle between eta and
 * +-(eta - xi), r_plus = |xi| - ||eta| - |eta-xi||, and r_minus =
 * |eta| + |eta-xi| - |xi|, each tuple is checked against
 *   (a) 2(1 - cos theta_+) |eta||eta-xi| = |xi|^2 - (|eta| - |eta-xi|)^2,
 *   (b) 2(1 - cos theta_-) |eta||eta-xi| = (|eta| + |eta-xi|)^2 - |xi|^2,
 *   (c) the quotients |xi| r_+ / (|eta||eta-xi| theta_+^2) and
 *       (|eta|+|eta-xi|) r_- / (|eta||eta-xi| theta_-^2) lie in [2/pi^2, 1],
 *   (d) r_pm <= ||tau|-|xi|| + |lambda+|eta|| + |lambda-tau+-|eta-xi|| with
 *       constant one,
 *   (e) r_pm <= 2 min(|eta|, |eta-xi|).
 * Tuples with |eta| or |eta-xi| below 1e-9 are skipped; quotient checks are
 * additionally skipped when the angle is below 1e-3.
 */
struct WeightReport {
  long checked = 0;
  long skipped = 0;                  // degenerate tuples
  long skipped_angle = 0;            // quotient evaluations below the angle cutoff
  std::array<long, 5> violations{};  // per law (a) through (e)
  double worst_identity = 0.0;       // largest relative deviation seen in (a), (b)
  double quotient_low = 0.0;         // observed range of the law (c) quotients
  double quotient_high = 0.0;
  bool pass = false;
};

WeightReport weight_checks(const std::vector<FrequencyTuple>& tuples);

/**
 * Discretized ||U_pm(t) f||_{L^4([0,T_win) x box)} / ||f||_{Hdot^{1/2}} with
 * bare Riemann sums in time (no taper). The quadrature is exact when f is
 * band-limited to under a quarter of the grid.
 */
double strichartz_ratio(const Field& f, Sign sign, double T_win, int n_t = 64);

/**
 * Ratio ||W |box|^{-1/2} <beta psi_{s1}, psi_{s2}>||_{L^2} / ||psi0||_{L^2}^2
 * where psi_s is the free flow of psi0 of sign s sampled bare over the
 * window, and the symbol |tau^2 - |xi|^2|^{-1/2} is capped at floor^{-1/2}.
 * Default floor: the square of one temporal grid spacing.
 */
struct KeyBilinearResult {
  double ratio = 0.0;
  double floor = 0.0;
};

KeyBilinearResult key_bilinear_ratio(const Field& psi0, Sign s1, Sign s2, double T_win,
                                     int n_t, double floor = -1.0);

/** Product estimate X * Y -> Z recorded as three norm descriptors. */
struct EstimateSpec {
  std::string id;
  NormSpec u, v, target;
};

/**
 * The built-in table: five interpolated estimates (interp1..5 at parameters
 * eps, delta = eps_prime), six sign-split reductions (redplus1..3 with both
 * inputs of the plus sign, redminus1..3 with mixed signs), their six
 * duality-flattened forms (dual1..6), and the nine second-family reductions
 * (aux1..9), all at b = 1/2 + eps_prime.
 */
std::vector<EstimateSpec> estimate_registry(double eps = 0.1, double eps_prime = 0.01);

/**
 * The base product estimate H^{s1,b} * H^{s2,b} -> H^{-s3,0}. The exponent
 * triple must satisfy the sharp free-wave conditions: s1+s2+s3 = 1,
 * s1, s2, s3 < 1, s1+s2 > 1/2, and the transference form additionally needs
 * s1, s2, s3 >= 0 and b > 1/2; the violated condition is named.
 */
EstimateSpec km_estimate(double s1, double s2, double s3, double b = 0.51);

/** ||uv||_target / (||u||_u ||v||_v) for scalar fields on one grid. */
double product_estimate_ratio(const EstimateSpec& est, const SpacetimeField& u,
                              const SpacetimeField& v);

/** One boundedness sweep: the empirical sup of a ratio over seeded samples. */
struct ProbeReport {
  std::string test_id;
  std::string estimate_id;
  int n = 0;
  int n_t = 0;
  double L = 0.0;
  double T_win = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
  std::uint64_t argmax_seed = 0;
  double floor = 0.0;
  long violations = 0;
};

/**
 * Ratio sweeps over random band-limited data. Inputs are confined to the
 * quarter band (n/4 - 1 per axis) so products and fourth powers stay
 * alias-free on the grid.
 */
ProbeReport probe_strichartz(const Grid3& g, int n_t, double T_win, int samples,
                             std::uint64_t seed0);
ProbeReport probe_key_bilinear(const Grid3& g, int n_t, double T_win, Sign s1, Sign s2,
                               int samples, std::uint64_t seed0, double floor = -1.0);
ProbeReport probe_product(const EstimateSpec& est, const Grid3& g, int n_t, double T_win,
                          int samples, std::uint64_t seed0);

}  // namespace dkg
