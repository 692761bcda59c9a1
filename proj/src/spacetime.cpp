#include "dkg/spacetime.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dkg/spinor_algebra.hpp"

namespace dkg {

namespace {

void require_time_axis(int n_t, double T_win) {
  if (n_t < 8)
    throw std::invalid_argument("space-time field: fewer than 8 time samples cannot resolve "
                                "a modulation band");
  if (!(T_win > 0.0)) throw std::invalid_argument("space-time field: window length must be positive");
}

}  // namespace

const char* window_name(Window w) { return w == Window::rectangular ? "rectangular" : "bump"; }

std::vector<double> window_samples(Window w, int n_t) {
  require_time_axis(n_t, 1.0);
  std::vector<double> out(n_t, 1.0);
  if (w == Window::bump)
    for (int j = 0; j < n_t; ++j) {
      const double v = 2.0 * (j + 0.5) / n_t - 1.0;
      out[j] = std::exp(2.0 - 2.0 / (1.0 - v * v));
    }
  return out;
}

SpacetimeField::SpacetimeField(const Grid3& g, int nt, double Tw, int nc, Space sp)
    : grid(g), n_t(nt), T_win(Tw), ncomp(nc), space(sp),
      data(static_cast<std::size_t>(g.size()) * nt * nc) {
  require_time_axis(nt, Tw);
  if (nc < 1) throw std::invalid_argument("space-time field: component count must be positive");
}

double SpacetimeField::tau(int r) const {
  return 2.0 * std::numbers::pi / T_win * signed_bin(r);
}

double SpacetimeField::time(int j) const { return T_win * j / n_t; }

void st_transform(SpacetimeField& u, FftDir dir) {
  const Space need = dir == FftDir::forward ? Space::physical : Space::frequency;
  if (u.space != need)
    throw std::invalid_argument("st_transform: representation tag does not match direction");
  const long sz = u.grid.size();
  dft3(u.data.data(), u.grid.n, u.ncomp * u.n_t, dir);
  for (int c = 0; c < u.ncomp; ++c)
    dft_time(u.data.data() + static_cast<std::size_t>(c) * u.n_t * sz, u.n_t, sz, dir);
  u.space = dir == FftDir::forward ? Space::frequency : Space::physical;
}

SpacetimeField to_st_frequency(const SpacetimeField& u) {
  SpacetimeField v = u;
  if (v.space == Space::physical) st_transform(v, FftDir::forward);
  return v;
}

SpacetimeField to_st_physical(const SpacetimeField& u) {
  SpacetimeField v = u;
  if (v.space == Space::frequency) st_transform(v, FftDir::inverse);
  return v;
}

double spacetime_l2(const SpacetimeField& u) {
  const SpacetimeField v = to_st_physical(u);
  double acc = 0.0;
  for (const auto& z : v.data) acc += std::norm(z);
  return std::sqrt(v.grid.cell_volume() * (v.T_win / v.n_t) * acc);
}

SpacetimeField spacetime_transform(const std::vector<Field>& samples, double T_win,
                                   Window window) {
  const int nt = static_cast<int>(samples.size());
  require_time_axis(nt, T_win);
  const Grid3 g = samples.front().grid;
  const int nc = samples.front().ncomp;
  for (const Field& f : samples)
    if (!(f.grid == g) || f.ncomp != nc)
      throw std::invalid_argument("spacetime_transform: samples disagree on grid or components");

  SpacetimeField out(g, nt, T_win, nc, Space::physical);
  out.window = window;
  const std::vector<double> w = window_samples(window, nt);
  double energy = 0.0;
  for (double v : w) energy += v * v;
  out.window_energy = energy / nt;

  const long sz = g.size();
  for (int j = 0; j < nt; ++j) {
    const Field slice = to_physical(samples[j]);
    for (int c = 0; c < nc; ++c)
      for (long i = 0; i < sz; ++i) out.at(c, j, i) = w[j] * slice.at(c, i);
  }
  st_transform(out, FftDir::forward);
  return out;
}

SpacetimeField free_wave(const Field& f, Sign s, double T_win, int n_t, Window window) {
  require_time_axis(n_t, T_win);
  const Field fhat = to_frequency(f);
  std::vector<Field> samples(n_t, fhat);
  for (int j = 0; j < n_t; ++j) half_wave_propagate(samples[j], s, T_win * j / n_t);
  SpacetimeField out = spacetime_transform(samples, T_win, window);
  st_transform(out, FftDir::inverse);
  return out;
}

NormSpec x_norm(Sign sign, double s, double b) {
  return {NormSpec::Variant::X_pm, s, b, sign};
}

NormSpec h_norm(double s, double b) { return {NormSpec::Variant::H_sb, s, b, Sign::plus}; }

NormSpec script_h_norm(double s, double b) {
  return {NormSpec::Variant::H_script, s, b, Sign::plus};
}

double st_norm(const SpacetimeField& u, const NormSpec& spec) {
  const SpacetimeField v = to_st_frequency(u);
  const Grid3& g = v.grid;
  const long sz = g.size();

  std::vector<double> kabs(sz), ks(sz);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    kabs[i] = norm(g.frequency(ix, iy, iz));
    ks[i] = std::pow(1.0 + kabs[i], 2.0 * spec.s);
  });
  const bool script = spec.variant == NormSpec::Variant::H_script;
  std::vector<double> ks1;
  if (script) {
    ks1.resize(sz);
    for (long i = 0; i < sz; ++i) ks1[i] = std::pow(1.0 + kabs[i], 2.0 * (spec.s - 1.0));
  }

  const double sg = sign_value(spec.sign);
  double acc = 0.0, acc_t = 0.0;
  for (int c = 0; c < v.ncomp; ++c)
    for (int r = 0; r < v.n_t; ++r) {
      const double tau = v.tau(r);
      for (long i = 0; i < sz; ++i) {
        const double dist = spec.variant == NormSpec::Variant::X_pm
                                ? tau + sg * kabs[i]
                                : std::abs(tau) - kabs[i];
        const double mod = std::pow(1.0 + std::abs(dist), 2.0 * spec.b);
        const double m2 = std::norm(v.at(c, r, i));
        acc += ks[i] * mod * m2;
        if (script) acc_t += ks1[i] * mod * tau * tau * m2;
      }
    }

  const double vol = v.T_win * g.volume() / v.window_energy;
  double result = std::sqrt(vol * acc);
  if (script) result += std::sqrt(vol * acc_t);
  return result;
}

SpacetimeField random_xsb(const NormSpec& spec, const Grid3& g, int n_t, double T_win,
                          std::uint64_t seed, int k_band, int mod_band) {
  if (spec.variant != NormSpec::Variant::X_pm)
    throw std::invalid_argument("random_xsb: synthesis needs an X norm with a definite sign");
  require_time_axis(n_t, T_win);
  if (k_band < 0) k_band = g.dealias_band();
  if (k_band >= g.n / 2)
    throw std::invalid_argument("random_xsb: spatial band must stay below Nyquist");
  if (mod_band < 0) throw std::invalid_argument("random_xsb: modulation band must be nonnegative");

  // Worst dispersive bin shift over the band, plus the modulation width,
  // must fit in the resolved temporal bins.
  const double kmax = g.freq_step() * k_band * std::sqrt(3.0);
  const long shift_max =
      std::lround(kmax * T_win / (2.0 * std::numbers::pi)) + mod_band;
  if (shift_max > n_t / 2 - 1)
    throw std::invalid_argument("random_xsb: time bins cannot hold the dispersive phase; "
                                "enlarge n_t or shrink the band");

  SpacetimeField out(g, n_t, T_win, 1, Space::frequency);
  out.window = Window::rectangular;
  out.window_energy = 1.0;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sg = sign_value(spec.sign);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    if (!g.in_band(ix, iy, iz, k_band)) return;
    const double ka = norm(g.frequency(ix, iy, iz));
    const long disp = std::lround(ka * T_win / (2.0 * std::numbers::pi));
    for (int m = -mod_band; m <= mod_band; ++m) {
      const long sbin = m - static_cast<long>(sg) * disp;
      const int r = static_cast<int>(sbin < 0 ? sbin + n_t : sbin);
      const double lam = out.tau(r) + sg * ka;
      const double w2 = std::pow(1.0 + ka, 2.0 * spec.s) *
                        std::pow(1.0 + std::abs(lam), 2.0 * spec.b);
      out.at(0, r, i) = cdouble(gauss(rng), gauss(rng)) / std::sqrt(w2);
    }
  });

  const double measured = st_norm(out, spec);
  if (!(measured > 0.0)) throw std::runtime_error("random_xsb: drew an empty field");
  for (auto& z : out.data) z /= measured;
  return out;
}

namespace {

SpacetimeField project_st(const SpacetimeField& u, Sign s) {
  SpacetimeField f = to_st_frequency(u);
  for_each_mode(f.grid, [&](int ix, int iy, int iz, long i) {
    const Matrix4 p = projection(s, f.grid.frequency(ix, iy, iz));
    for (int r = 0; r < f.n_t; ++r) {
      const std::array<cdouble, 4> in{f.at(0, r, i), f.at(1, r, i), f.at(2, r, i),
                                      f.at(3, r, i)};
      const std::array<cdouble, 4> v = p * in;
      for (int c = 0; c < 4; ++c) f.at(c, r, i) = v[c];
    }
  });
  return to_st_physical(f);
}

}  // namespace

SpacetimeField bilinear_form(const SpacetimeField& psi, const SpacetimeField& psi_prime,
                             Sign s1, Sign s2) {
  if (psi.ncomp != 4 || psi_prime.ncomp != 4)
    throw std::invalid_argument("bilinear_form: both inputs must have 4 components");
  if (!(psi.grid == psi_prime.grid) || psi.n_t != psi_prime.n_t ||
      psi.T_win != psi_prime.T_win)
    throw std::invalid_argument("bilinear_form: inputs disagree on the space-time grid");

  const SpacetimeField a = project_st(psi, s1);
  const SpacetimeField b = project_st(psi_prime, s2);

  // Pairing grouped as (1,4) + (2,3) so the cancellations of the degenerate
  // parallel configurations survive in floating point.
  SpacetimeField out(a.grid, a.n_t, a.T_win, 1, Space::physical);
  const long sz = a.grid.size();
  for (int j = 0; j < a.n_t; ++j)
    for (long i = 0; i < sz; ++i)
      out.at(0, j, i) =
          (a.at(0, j, i) * std::conj(b.at(0, j, i)) -
           a.at(3, j, i) * std::conj(b.at(3, j, i))) +
          (a.at(1, j, i) * std::conj(b.at(1, j, i)) -
           a.at(2, j, i) * std::conj(b.at(2, j, i)));
  return out;
}

}  // namespace dkg
