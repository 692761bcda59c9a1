#pragma once

#include <cstdint>
#include <vector>

#include "dkg/fields.hpp"

namespace dkg {

/**
 * Time taper applied before periodizing the time axis. The bump is the
 * compactly supported profile w(v) = exp(2 - 2/(1 - v^2)) on v in (-1, 1),
 * sampled at v_j = 2(j + 1/2)/n_t - 1; its spectrum keeps all but 4e-4 of
 * the mass of a pure tone within 3 bins of the peak.
 */
enum class Window { rectangular, bump };

const char* window_name(Window w);
std::vector<double> window_samples(Window w, int n_t);

/**
 * Complex field sampled on a space-time grid: n_t uniform times on
 * [0, T_win) times a periodic spatial box. Physical data holds samples
 * (with the window already applied); frequency data holds coefficients of
 * the expansion u = sum u~(tau, k) exp(i(tau t + k.x)). Storage is
 * component-major, then time, then space.
 */
struct SpacetimeField {
  Grid3 grid;
  int n_t = 0;
  double T_win = 0.0;
  int ncomp = 1;
  Space space = Space::physical;
  Window window = Window::rectangular;
  double window_energy = 1.0;  // mean squared taper sample
  std::vector<cdouble> data;

  SpacetimeField() = default;
  SpacetimeField(const Grid3& g, int nt, double Tw, int nc, Space sp);

  cdouble& at(int c, int j, long i) {
    return data[(static_cast<std::size_t>(c) * n_t + j) * grid.size() + i];
  }
  const cdouble& at(int c, int j, long i) const {
    return data[(static_cast<std::size_t>(c) * n_t + j) * grid.size() + i];
  }

  int signed_bin(int r) const { return r < n_t / 2 ? r : r - n_t; }
  double tau(int r) const;            // temporal frequency of bin r
  double time(int j) const;           // sample time j * T_win / n_t
};

/** In-place joint transform; the field must hold the opposite representation. */
void st_transform(SpacetimeField& u, FftDir dir);

SpacetimeField to_st_frequency(const SpacetimeField& u);
SpacetimeField to_st_physical(const SpacetimeField& u);

/** Space-time L^2 norm by physical quadrature. */
double spacetime_l2(const SpacetimeField& u);

/**
 * Tapers uniform time samples on [0, T_win) and transforms to the joint
 * frequency representation. All samples must share one grid and component
 * count; fewer than 8 samples cannot resolve a modulation band.
 */
SpacetimeField spacetime_transform(const std::vector<Field>& samples, double T_win,
                                   Window window = Window::bump);

/** Samples of the half-wave flow exp(-+ i t |D|) f over the window, tapered. */
SpacetimeField free_wave(const Field& f, Sign s, double T_win, int n_t,
                         Window window = Window::bump);

/**
 * Space-time norm descriptor. X_pm weighs modes by <k>^s <tau +- |k|>^b
 * (the sign picks the branch), H_sb by <k>^s <|tau| - |k|>^b, and H_script
 * adds the norm of the time derivative one spatial order down. Here
 * <r> = 1 + |r|.
 */
struct NormSpec {
  enum class Variant { X_pm, H_sb, H_script };
  Variant variant = Variant::H_sb;
  double s = 0.0;
  double b = 0.0;
  Sign sign = Sign::plus;  // consulted only by X_pm
};

NormSpec x_norm(Sign sign, double s, double b);
NormSpec h_norm(double s, double b);
NormSpec script_h_norm(double s, double b);

/**
 * Weighted l^2 norm sqrt(T_win L^3 sum W |u~|^2 / window_energy) over all
 * components and space-time modes. The division by the taper's mean square
 * makes rectangular and tapered measurements agree on time-stationary
 * signals.
 */
double st_norm(const SpacetimeField& u, const NormSpec& spec);

/**
 * Random superposition of modulated half-wave flows with prescribed unit
 * X norm: for every spatial mode in the band and every modulation index
 * |r| <= mod_band, one Gaussian coefficient is placed at the temporal bin
 * nearest the dispersive phase, so the synthesis is exact on the grid
 * (the dispersion |k| is snapped to the bin width). Coefficients are drawn
 * white with respect to the norm weight, then scaled so st_norm equals 1.
 * Scalar output, rectangular window. k_band < 0 selects the grid's
 * dealias band.
 */
SpacetimeField random_xsb(const NormSpec& spec, const Grid3& g, int n_t, double T_win,
                          std::uint64_t seed, int k_band = -1, int mod_band = 3);

/**
 * Scalar field <beta P_{s1}(D) psi, P_{s2}(D) psi'> formed pointwise in
 * space-time after the per-mode spatial projections (inner product linear
 * in the first slot). Output samples carry whatever tapers the inputs
 * carried; its window descriptor is rectangular.
 */
SpacetimeField bilinear_form(const SpacetimeField& psi, const SpacetimeField& psi_prime,
                             Sign s1, Sign s2);

}  // namespace dkg
