#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dkg/fft.hpp"
#include "dkg/grid.hpp"
#include "dkg/matrix4.hpp"
#include "dkg/types.hpp"

namespace dkg {

enum class Space { physical, frequency };

/**
 * Complex field on a periodic grid with ncomp components stored as
 * contiguous blocks (component major, row-major grid order inside a block).
 * Frequency coefficients follow the e^{+i k.x} convention of dft3.
 */
struct Field {
  Grid3 grid;
  Space space = Space::physical;
  int ncomp = 1;
  std::vector<cdouble> data;

  Field() = default;
  Field(const Grid3& g, Space sp, int nc)
      : grid(g), space(sp), ncomp(nc), data(static_cast<std::size_t>(g.size()) * nc) {}

  static Field scalar(const Grid3& g, Space sp = Space::physical) { return Field(g, sp, 1); }
  static Field spinor(const Grid3& g, Space sp = Space::physical) { return Field(g, sp, 4); }

  cdouble& at(int c, long i) { return data[static_cast<std::size_t>(c) * grid.size() + i]; }
  const cdouble& at(int c, long i) const {
    return data[static_cast<std::size_t>(c) * grid.size() + i];
  }
};

/** In-place DFT; the field must currently hold the opposite representation. */
void transform(Field& f, FftDir dir);

Field to_frequency(const Field& f);
Field to_physical(const Field& f);

/** Scalar Fourier multiplier; symbol values must be finite on every mode. */
void apply_multiplier(Field& f, const std::function<cdouble(const Vec3&)>& symbol);

/** Matrix Fourier multiplier acting on spinor fields. */
void apply_matrix_multiplier(Field& f, const std::function<Matrix4(const Vec3&)>& symbol);

/** Eigenprojection of the Dirac symbol applied mode by mode. */
Field project_field(const Field& psi, Sign s);

/** Half-wave propagator U_{+-}(t) = exp(-+ i t |D|), exact in Fourier space. */
void half_wave_propagate(Field& psi, Sign s, double t);

/** Zeroes every mode with any axis at the Nyquist frequency. */
void zero_nyquist(Field& f);

/** 2/3-rule mask: zeroes every mode with any |k_tilde| > band (default n/3). */
void dealias(Field& f, int band = -1);

/**
 * Sobolev norm sqrt(L^3 sum w(k)^{2s} |c_k|^2) with w = 1 + |k|, summed over
 * components. Homogeneous variant uses w = |k| and drops the zero mode.
 */
double sobolev_norm(const Field& f, double s, bool homogeneous = false);
double l2_norm(const Field& f);

/** L^2 norm by physical-space quadrature, sqrt((L/n)^3 sum |u|^2). */
double physical_l2(const Field& f);

/** Real Klein-Gordon pair (phi, dt phi) in physical space. */
struct ScalarState {
  Grid3 grid;
  std::vector<double> phi, phi_t;

  ScalarState() = default;
  explicit ScalarState(const Grid3& g)
      : grid(g), phi(static_cast<std::size_t>(g.size())), phi_t(phi.size()) {}
};

/**
 * Exact free Klein-Gordon flow with dispersion w(k) = sqrt(|k|^2 + m^2):
 * rotates every mode by angle w t; the m = 0 zero mode degenerates to
 * phi += t phi_t. Requires m >= 0.
 */
void kg_propagate(ScalarState& st, double t, double m);

/** Energy (1/2) integral (phi_t^2 + |grad phi|^2 + m^2 phi^2) dx of the free flow. */
double kg_energy(const ScalarState& st, double m);

double sobolev_norm(const ScalarState& st, double s);  // of phi

/** Seeded band-limited random fields (Nyquist-free by construction). */
Field random_spinor(const Grid3& g, std::uint64_t seed, int band, double amplitude);
Field random_scalar(const Grid3& g, std::uint64_t seed, int band, double amplitude);
ScalarState random_scalar_state(const Grid3& g, std::uint64_t seed, int band,
                                double amplitude);

/**
 * Spinor data on the charge-free constraint surface psi_1 = conj(psi_4),
 * psi_2 = -conj(psi_3); the pointwise density <beta psi, psi> vanishes
 * identically for such data.
 */
Field chadam_glassey_data(const Grid3& g, std::uint64_t seed, int band, double amplitude);

}  // namespace dkg
