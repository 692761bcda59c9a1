#include "dkg/fields.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "dkg/spinor_algebra.hpp"

namespace dkg {

void transform(Field& f, FftDir dir) {
  const Space need = dir == FftDir::forward ? Space::physical : Space::frequency;
  if (f.space != need)
    throw std::invalid_argument("transform: representation tag does not match direction");
  dft3(f.data.data(), f.grid.n, f.ncomp, dir);
  f.space = dir == FftDir::forward ? Space::frequency : Space::physical;
}

Field to_frequency(const Field& f) {
  Field g = f;
  if (g.space == Space::physical) transform(g, FftDir::forward);
  return g;
}

Field to_physical(const Field& f) {
  Field g = f;
  if (g.space == Space::frequency) transform(g, FftDir::inverse);
  return g;
}

namespace {

[[noreturn]] void bad_symbol(const Grid3& g, int ix, int iy, int iz) {
  std::ostringstream os;
  os << "apply_multiplier: symbol not finite at mode (" << g.signed_index(ix) << ", "
     << g.signed_index(iy) << ", " << g.signed_index(iz) << ")";
  throw std::domain_error(os.str());
}

template <typename Apply>
void with_frequency_rep(Field& f, Apply&& apply) {
  const bool was_physical = f.space == Space::physical;
  if (was_physical) transform(f, FftDir::forward);
  apply();
  if (was_physical) transform(f, FftDir::inverse);
}

}  // namespace

void apply_multiplier(Field& f, const std::function<cdouble(const Vec3&)>& symbol) {
  with_frequency_rep(f, [&] {
    const Grid3 g = f.grid;
    for_each_mode(g, [&](int ix, int iy, int iz, long i) {
      const cdouble v = symbol(g.frequency(ix, iy, iz));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad_symbol(g, ix, iy, iz);
      for (int c = 0; c < f.ncomp; ++c) f.at(c, i) *= v;
    });
  });
}

void apply_matrix_multiplier(Field& f, const std::function<Matrix4(const Vec3&)>& symbol) {
  if (f.ncomp != 4)
    throw std::invalid_argument("apply_matrix_multiplier: field must have 4 components");
  with_frequency_rep(f, [&] {
    const Grid3 g = f.grid;
    const long sz = g.size();
    for_each_mode(g, [&](int ix, int iy, int iz, long i) {
      const Matrix4 m = symbol(g.frequency(ix, iy, iz));
      for (const auto& v : m.e)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) bad_symbol(g, ix, iy, iz);
      const std::array<cdouble, 4> in{f.data[i], f.data[i + sz], f.data[i + 2 * sz],
                                      f.data[i + 3 * sz]};
      const std::array<cdouble, 4> out = m * in;
      for (int c = 0; c < 4; ++c) f.data[i + c * sz] = out[c];
    });
  });
}

Field project_field(const Field& psi, Sign s) {
  Field out = psi;
  apply_matrix_multiplier(out, [s](const Vec3& k) { return projection(s, k); });
  return out;
}

void half_wave_propagate(Field& psi, Sign s, double t) {
  const double sg = sign_value(s);
  apply_multiplier(psi, [sg, t](const Vec3& k) { return std::polar(1.0, -sg * t * norm(k)); });
}

void zero_nyquist(Field& f) {
  with_frequency_rep(f, [&] {
    const Grid3 g = f.grid;
    for_each_mode(g, [&](int ix, int iy, int iz, long i) {
      if (g.is_nyquist(ix) || g.is_nyquist(iy) || g.is_nyquist(iz))
        for (int c = 0; c < f.ncomp; ++c) f.at(c, i) = 0.0;
    });
  });
}

void dealias(Field& f, int band) {
  if (band < 0) band = f.grid.dealias_band();
  with_frequency_rep(f, [&] {
    const Grid3 g = f.grid;
    for_each_mode(g, [&](int ix, int iy, int iz, long i) {
      if (!g.in_band(ix, iy, iz, band))
        for (int c = 0; c < f.ncomp; ++c) f.at(c, i) = 0.0;
    });
  });
}

double sobolev_norm(const Field& f, double s, bool homogeneous) {
  const Field g = to_frequency(f);
  const Grid3& gr = g.grid;
  double acc = 0.0;
  for_each_mode(gr, [&](int ix, int iy, int iz, long i) {
    const double r = norm(gr.frequency(ix, iy, iz));
    if (homogeneous && r == 0.0) return;
    const double w = homogeneous ? r : 1.0 + r;
    double m2 = 0.0;
    for (int c = 0; c < g.ncomp; ++c) m2 += std::norm(g.at(c, i));
    acc += std::pow(w, 2.0 * s) * m2;
  });
  return std::sqrt(gr.volume() * acc);
}

double l2_norm(const Field& f) { return sobolev_norm(f, 0.0); }

double physical_l2(const Field& f) {
  if (f.space != Space::physical)
    throw std::invalid_argument("physical_l2: field must be in physical space");
  double acc = 0.0;
  for (const auto& v : f.data) acc += std::norm(v);
  return std::sqrt(f.grid.cell_volume() * acc);
}

void kg_propagate(ScalarState& st, double t, double m) {
  if (m < 0.0) throw std::domain_error("kg_propagate: mass must be nonnegative");
  const Grid3& g = st.grid;
  const long sz = g.size();
  std::vector<cdouble> buf(2 * sz);
  for (long i = 0; i < sz; ++i) {
    buf[i] = st.phi[i];
    buf[sz + i] = st.phi_t[i];
  }
  dft3(buf.data(), g.n, 2, FftDir::forward);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    const double w = std::sqrt(norm2(g.frequency(ix, iy, iz)) + m * m);
    const cdouble p = buf[i], v = buf[sz + i];
    if (w == 0.0) {
      buf[i] = p + t * v;
    } else {
      const double c = std::cos(w * t), s = std::sin(w * t);
      buf[i] = c * p + (s / w) * v;
      buf[sz + i] = -w * s * p + c * v;
    }
  });
  dft3(buf.data(), g.n, 2, FftDir::inverse);
  for (long i = 0; i < sz; ++i) {
    st.phi[i] = buf[i].real();
    st.phi_t[i] = buf[sz + i].real();
  }
}

double kg_energy(const ScalarState& st, double m) {
  const Grid3& g = st.grid;
  const long sz = g.size();
  std::vector<cdouble> buf(2 * sz);
  for (long i = 0; i < sz; ++i) {
    buf[i] = st.phi[i];
    buf[sz + i] = st.phi_t[i];
  }
  dft3(buf.data(), g.n, 2, FftDir::forward);
  double acc = 0.0;
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    const double w2 = norm2(g.frequency(ix, iy, iz)) + m * m;
    acc += std::norm(buf[sz + i]) + w2 * std::norm(buf[i]);
  });
  return 0.5 * g.volume() * acc;
}

double sobolev_norm(const ScalarState& st, double s) {
  Field f = Field::scalar(st.grid, Space::physical);
  for (long i = 0; i < st.grid.size(); ++i) f.data[i] = st.phi[i];
  return sobolev_norm(f, s);
}

namespace {

// Band-limited frequency-space draw: independent complex Gaussians scaled by a
// smooth radial profile, Nyquist-free because band < n/2.
void fill_random_modes(Field& f, std::uint64_t seed, int band, double amplitude) {
  if (band < 1 || band >= f.grid.n / 2)
    throw std::invalid_argument("random field: band must be in [1, n/2)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Grid3& g = f.grid;
  const double s2 = 2.0 / (static_cast<double>(band) * band);
  for (int c = 0; c < f.ncomp; ++c)
    for_each_mode(g, [&](int ix, int iy, int iz, long i) {
      if (!g.in_band(ix, iy, iz, band)) return;
      const int kx = g.signed_index(ix), ky = g.signed_index(iy), kz = g.signed_index(iz);
      const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
      const double prof = amplitude * std::exp(-k2 * s2);
      f.at(c, i) = prof * cdouble(gauss(rng), gauss(rng));
    });
}

}  // namespace

Field random_spinor(const Grid3& g, std::uint64_t seed, int band, double amplitude) {
  Field f = Field::spinor(g, Space::frequency);
  fill_random_modes(f, seed, band, amplitude);
  transform(f, FftDir::inverse);
  return f;
}

Field random_scalar(const Grid3& g, std::uint64_t seed, int band, double amplitude) {
  Field f = Field::scalar(g, Space::frequency);
  fill_random_modes(f, seed, band, amplitude);
  transform(f, FftDir::inverse);
  return f;
}

namespace {

// Hermitian-symmetrize in frequency space so the physical field is real.
void make_real(Field& f) {
  if (f.space != Space::frequency) throw std::logic_error("make_real: frequency rep expected");
  const Grid3& g = f.grid;
  Field sym = f;
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    const int jx = ix == 0 ? 0 : g.n - ix;
    const int jy = iy == 0 ? 0 : g.n - iy;
    const int jz = iz == 0 ? 0 : g.n - iz;
    const long j = g.flat(jx, jy, jz);
    for (int c = 0; c < f.ncomp; ++c)
      sym.at(c, i) = 0.5 * (f.at(c, i) + std::conj(f.at(c, j)));
  });
  f = std::move(sym);
}

}  // namespace

ScalarState random_scalar_state(const Grid3& g, std::uint64_t seed, int band,
                                double amplitude) {
  Field f = Field(g, Space::frequency, 2);
  fill_random_modes(f, seed, band, amplitude);
  make_real(f);
  transform(f, FftDir::inverse);
  ScalarState st(g);
  for (long i = 0; i < g.size(); ++i) {
    st.phi[i] = f.at(0, i).real();
    st.phi_t[i] = f.at(1, i).real();
  }
  return st;
}

Field chadam_glassey_data(const Grid3& g, std::uint64_t seed, int band, double amplitude) {
  Field f = random_spinor(g, seed, band, amplitude);
  const long sz = g.size();
  for (long i = 0; i < sz; ++i) {
    f.at(3, i) = std::conj(f.at(0, i));
    f.at(2, i) = -std::conj(f.at(1, i));
  }
  return f;
}

}  // namespace dkg
