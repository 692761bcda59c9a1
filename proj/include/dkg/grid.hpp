#pragma once

#include <numbers>
#include <stdexcept>

#include "dkg/types.hpp"

namespace dkg {

/**
 * Uniform periodic grid on [0, L)^3 with n points per axis. Grid index k in
 * [0, n) carries the signed integer frequency k_tilde in [-n/2, n/2), so the
 * layout is an exact involution under negation except the Nyquist row
 * k_tilde = -n/2, which every dealiasing mask removes.
 */
struct Grid3 {
  int n = 0;
  double L = 0.0;

  Grid3() = default;
  Grid3(int n_, double L_) : n(n_), L(L_) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("Grid3: n must be even and >= 4");
    if (!(L > 0.0)) throw std::invalid_argument("Grid3: L must be positive");
  }

  long size() const { return static_cast<long>(n) * n * n; }
  double dx() const { return L / n; }
  double cell_volume() const { return dx() * dx() * dx(); }
  double volume() const { return L * L * L; }

  int signed_index(int idx) const { return idx < n / 2 ? idx : idx - n; }
  bool is_nyquist(int idx) const { return signed_index(idx) == -n / 2; }
  double freq_step() const { return 2.0 * std::numbers::pi / L; }
  double freq_component(int idx) const { return freq_step() * signed_index(idx); }

  long flat(int ix, int iy, int iz) const {
    return (static_cast<long>(ix) * n + iy) * n + iz;
  }

  Vec3 frequency(int ix, int iy, int iz) const {
    return {freq_component(ix), freq_component(iy), freq_component(iz)};
  }

  /** Per-axis band of the 2/3-rule mask: modes with any |k_tilde| > band are dropped. */
  int dealias_band() const { return n / 3; }

  bool in_band(int ix, int iy, int iz, int band) const {
    return std::abs(signed_index(ix)) <= band && std::abs(signed_index(iy)) <= band &&
           std::abs(signed_index(iz)) <= band;
  }

  bool operator==(const Grid3& o) const { return n == o.n && L == o.L; }
};

template <typename F>
void for_each_mode(const Grid3& g, F&& f) {
  for (int ix = 0; ix < g.n; ++ix)
    for (int iy = 0; iy < g.n; ++iy)
      for (int iz = 0; iz < g.n; ++iz) f(ix, iy, iz, g.flat(ix, iy, iz));
}

}  // namespace dkg
