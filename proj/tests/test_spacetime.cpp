#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dkg/spacetime.hpp"
#include "dkg/spinor_algebra.hpp"
#include "doctest.h"

using namespace dkg;

namespace {

constexpr double pi = std::numbers::pi;

void fill_gaussian(SpacetimeField& u, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& z : u.data) z = cdouble(gauss(rng), gauss(rng));
}

// Fraction of a temporal column's mass lying further than `width` bins
// (circularly) from the bin `center`.
double mass_outside(const SpacetimeField& u, int c, long i, int center, int width) {
  double in = 0.0, total = 0.0;
  for (int r = 0; r < u.n_t; ++r) {
    const int d = std::abs(((r - center) % u.n_t + u.n_t + u.n_t / 2) % u.n_t - u.n_t / 2);
    const double m = std::norm(u.at(c, r, i));
    total += m;
    if (d <= width) in += m;
  }
  return total > 0.0 ? (total - in) / total : 0.0;
}

int argmax_bin(const SpacetimeField& u, int c, long i) {
  int best = 0;
  double top = -1.0;
  for (int r = 0; r < u.n_t; ++r)
    if (std::norm(u.at(c, r, i)) > top) {
      top = std::norm(u.at(c, r, i));
      best = r;
    }
  return best;
}

}  // namespace

TEST_CASE("window samples: flat rectangle, even sub-unit bump, frozen energy") {
  const auto rect = window_samples(Window::rectangular, 12);
  for (double v : rect) CHECK(v == 1.0);

  for (int nt : {8, 16, 32, 64}) {
    const auto w = window_samples(Window::bump, nt);
    REQUIRE(static_cast<int>(w.size()) == nt);
    double peak = 0.0, energy = 0.0;
    for (int j = 0; j < nt; ++j) {
      CHECK(w[j] > 0.0);
      CHECK(w[j] < 1.0);
      CHECK(w[j] == doctest::Approx(w[nt - 1 - j]).epsilon(1e-12));
      peak = std::max(peak, w[j]);
      energy += w[j] * w[j];
    }
    CHECK(peak > 0.9);
    CHECK(energy / nt == doctest::Approx(0.3838).epsilon(1e-3));
  }

  CHECK_THROWS_AS(window_samples(Window::bump, 7), std::invalid_argument);
  CHECK(std::string(window_name(Window::bump)) == "bump");
  CHECK(std::string(window_name(Window::rectangular)) == "rectangular");
}

TEST_CASE("tapered pure tone leaks under 1e-3 of its mass beyond three bins") {
  // Worst case for spectral concentration: tone midway between bins.
  for (int nt : {8, 16, 64}) {
    const auto w = window_samples(Window::bump, nt);
    std::vector<cdouble> tone(nt);
    const int r0 = nt / 4;
    for (int j = 0; j < nt; ++j) {
      const double phase = 2.0 * pi * (r0 + 0.5) * j / nt;
      tone[j] = w[j] * std::polar(1.0, phase);
    }
    dft_time(tone.data(), nt, 1, FftDir::forward);
    double total = 0.0;
    for (const auto& z : tone) total += std::norm(z);
    int peak = 0;
    for (int r = 1; r < nt; ++r)
      if (std::norm(tone[r]) > std::norm(tone[peak])) peak = r;
    double near = 0.0;
    for (int d = -3; d <= 3; ++d) near += std::norm(tone[(peak + d + nt) % nt]);
    CHECK((total - near) / total < 1e-3);
  }

  // The rectangular window fails the same bound, so the taper carries it.
  const int nt = 64;
  std::vector<cdouble> bare(nt);
  const int r0 = nt / 4;
  for (int j = 0; j < nt; ++j) bare[j] = std::polar(1.0, 2.0 * pi * (r0 + 0.5) * j / nt);
  dft_time(bare.data(), nt, 1, FftDir::forward);
  double total = 0.0;
  for (const auto& z : bare) total += std::norm(z);
  int peak = 0;
  for (int r = 1; r < nt; ++r)
    if (std::norm(bare[r]) > std::norm(bare[peak])) peak = r;
  double near = 0.0;
  for (int d = -3; d <= 3; ++d) near += std::norm(bare[(peak + d + nt) % nt]);
  CHECK((total - near) / total > 1e-3);
}

TEST_CASE("space-time transforms satisfy Parseval and invert") {
  const Grid3 g(8, 3.0);
  SpacetimeField u(g, 16, 0.7, 2, Space::physical);
  fill_gaussian(u, 2026);

  const double quad = spacetime_l2(u);
  const double modal = st_norm(u, h_norm(0.0, 0.0));
  CHECK(modal == doctest::Approx(quad).epsilon(1e-10));

  const SpacetimeField back = to_st_physical(to_st_frequency(u));
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < u.data.size(); ++i) {
    worst = std::max(worst, std::abs(back.data[i] - u.data[i]));
    scale = std::max(scale, std::abs(u.data[i]));
  }
  CHECK(worst < 1e-12 * scale);

  SpacetimeField tagged = u;
  CHECK_THROWS_AS(st_transform(tagged, FftDir::inverse), std::invalid_argument);
  CHECK_THROWS_AS(SpacetimeField(g, 4, 1.0, 1, Space::physical), std::invalid_argument);
  CHECK_THROWS_AS(SpacetimeField(g, 16, -1.0, 1, Space::physical), std::invalid_argument);
}

TEST_CASE("constant-in-time samples concentrate at the zero temporal bin") {
  const Grid3 g(4, 2.0 * pi);
  Field f = Field::scalar(g, Space::physical);
  for (auto& z : f.data) z = cdouble(2.0, -1.0);

  const std::vector<Field> samples(12, f);
  const SpacetimeField u = spacetime_transform(samples, 1.0, Window::rectangular);
  REQUIRE(u.space == Space::frequency);
  CHECK(u.window_energy == 1.0);

  // Spatially constant data puts everything at the k = 0 mode.
  const long i0 = g.flat(0, 0, 0);
  CHECK(std::abs(u.at(0, 0, i0) - cdouble(2.0, -1.0)) < 1e-13);
  for (int r = 1; r < u.n_t; ++r) CHECK(std::abs(u.at(0, r, i0)) < 1e-13);

  CHECK_THROWS_AS(spacetime_transform(std::vector<Field>(7, f), 1.0), std::invalid_argument);
  std::vector<Field> mixed(12, f);
  mixed[5] = Field::scalar(Grid3(8, 2.0 * pi));
  CHECK_THROWS_AS(spacetime_transform(mixed, 1.0), std::invalid_argument);
}

TEST_CASE("a pure tone transforms to one coefficient up to taper spread") {
  const Grid3 g(4, 2.0 * pi);
  const int nt = 32;
  const double T = 2.0 * pi;
  std::vector<Field> samples;
  for (int j = 0; j < nt; ++j) {
    Field f = Field::scalar(g, Space::physical);
    const cdouble v = std::polar(1.0, 3.0 * (T * j / nt));
    for (auto& z : f.data) z = v;
    samples.push_back(f);
  }
  const SpacetimeField u = spacetime_transform(samples, T, Window::bump);
  CHECK(u.window_energy == doctest::Approx(0.3838).epsilon(1e-3));

  const long i0 = g.flat(0, 0, 0);
  CHECK(argmax_bin(u, 0, i0) == 3);
  CHECK(mass_outside(u, 0, i0, 3, 3) < 1e-3);
}

TEST_CASE("single-mode space-time norms match their closed forms") {
  const Grid3 g(4, 2.0 * pi);
  const int nt = 16;
  const double T = 2.0 * pi;
  SpacetimeField u(g, nt, T, 1, Space::frequency);
  const cdouble c(0.8, -0.6);
  const long ik = g.flat(1, 0, 0);  // |k| = 1
  u.at(0, nt - 2, ik) = c;          // tau = -2

  const double mass = std::sqrt(T * g.volume());  // |c| = 1
  const double s = 0.5, b = 0.3;
  CHECK(st_norm(u, x_norm(Sign::plus, s, b)) ==
        doctest::Approx(mass * std::pow(2.0, s) * std::pow(2.0, b)).epsilon(1e-12));
  CHECK(st_norm(u, x_norm(Sign::minus, s, b)) ==
        doctest::Approx(mass * std::pow(2.0, s) * std::pow(4.0, b)).epsilon(1e-12));
  CHECK(st_norm(u, h_norm(s, b)) ==
        doctest::Approx(mass * std::pow(2.0, s) * std::pow(2.0, b)).epsilon(1e-12));
  // Script variant adds the time derivative one spatial order down: the
  // multiplier contributes |tau| = 2, the spatial weight drops to 2^{s-1}.
  CHECK(st_norm(u, script_h_norm(s, b)) ==
        doctest::Approx(mass * std::pow(2.0, s) * std::pow(2.0, b) +
                        mass * 2.0 * std::pow(2.0, s - 1.0) * std::pow(2.0, b))
            .epsilon(1e-12));
}

TEST_CASE("free waves live on the discrete cone with the adopted sign") {
  const Grid3 g(8, 2.0 * pi);
  const int nt = 16;
  const double T = 2.0 * pi;
  Field f = Field::spinor(g, Space::frequency);
  const long ik = g.flat(1, 0, 0);  // |k| = 1, on-grid temporal frequency
  const std::array<cdouble, 4> v{cdouble(1, 0), cdouble(0, 2), cdouble(0, 0), cdouble(-1, 0)};
  for (int c = 0; c < 4; ++c) f.at(c, ik) = v[c];

  const SpacetimeField up = free_wave(f, Sign::plus, T, nt, Window::rectangular);
  REQUIRE(up.space == Space::physical);
  const SpacetimeField uf = to_st_frequency(up);

  // Sign plus propagates by exp(-it|k|): support at the tau = -1 bin.
  double off = 0.0;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < nt; ++r)
      if (r != nt - 1) off = std::max(off, std::abs(uf.at(c, r, ik)));
  CHECK(off < 1e-13);
  CHECK(std::abs(uf.at(1, nt - 1, ik) - v[1]) < 1e-13);

  const SpacetimeField um = to_st_frequency(free_wave(f, Sign::minus, T, nt, Window::rectangular));
  CHECK(std::abs(um.at(1, 1, ik) - v[1]) < 1e-13);

  // On-support X weight is identically one, so the norm forgets b.
  double m2 = 0.0;
  for (const auto& z : v) m2 += std::norm(z);
  const double mass = std::sqrt(T * g.volume() * m2);
  for (double b : {0.0, 0.3, 0.51, 0.9}) {
    CHECK(st_norm(up, x_norm(Sign::plus, 0.0, b)) == doctest::Approx(mass).epsilon(1e-12));
    CHECK(st_norm(up, x_norm(Sign::minus, 0.0, b)) ==
          doctest::Approx(mass * std::pow(3.0, b)).epsilon(1e-12));
  }

  // Charge is constant along the window (the flow is unitary).
  const double dv = g.cell_volume();
  double q0 = 0.0;
  for (int c = 0; c < 4; ++c)
    for (long i = 0; i < g.size(); ++i) q0 += dv * std::norm(up.at(c, 0, i));
  for (int j = 1; j < nt; ++j) {
    double qj = 0.0;
    for (int c = 0; c < 4; ++c)
      for (long i = 0; i < g.size(); ++i) qj += dv * std::norm(up.at(c, j, i));
    CHECK(qj == doctest::Approx(q0).epsilon(1e-12));
  }
}

TEST_CASE("free-wave leakage off the cone stays under the taper bound") {
  const Grid3 g(8, 2.0 * pi);
  const int nt = 32;
  const double T = 2.0 * pi;
  const Field f = random_spinor(g, 97, 2, 1.0);
  const SpacetimeField u = to_st_frequency(free_wave(f, Sign::plus, T, nt));

  double total = 0.0;
  for (const auto& z : u.data) total += std::norm(z);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    double colmass = 0.0;
    for (int c = 0; c < 4; ++c)
      for (int r = 0; r < nt; ++r) colmass += std::norm(u.at(c, r, i));
    if (colmass < 1e-12 * total) return;
    const double ka = norm(g.frequency(ix, iy, iz));
    const int snapped = static_cast<int>(
        (-std::lround(ka * T / (2.0 * pi)) % nt + nt) % nt);
    double in = 0.0;
    for (int c = 0; c < 4; ++c)
      for (int d = -3; d <= 3; ++d) in += std::norm(u.at(c, (snapped + d + nt) % nt, i));
    CHECK((colmass - in) / colmass < 1e-3);
  });
}

TEST_CASE("random superpositions have unit norm and snapped placements") {
  const Grid3 g(8, 2.0 * pi);
  const int nt = 32;
  const double T = 2.0 * pi;
  const NormSpec spec = x_norm(Sign::plus, 0.3, 0.51);
  const SpacetimeField u = random_xsb(spec, g, nt, T, 7, 2, 3);
  REQUIRE(u.space == Space::frequency);

  CHECK(std::abs(st_norm(u, spec) - 1.0) < 1e-9);

  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    int nonzero = 0;
    for (int r = 0; r < nt; ++r)
      if (u.at(0, r, i) != cdouble(0.0)) ++nonzero;
    if (!g.in_band(ix, iy, iz, 2)) {
      CHECK(nonzero == 0);
      return;
    }
    CHECK(nonzero == 7);
    const double ka = norm(g.frequency(ix, iy, iz));
    const int center = static_cast<int>((-std::lround(ka * T / (2.0 * pi)) % nt + nt) % nt);
    CHECK(mass_outside(u, 0, i, center, 3) == 0.0);
  });

  // Minus-sign placements sit at the opposite dispersive bins.
  const SpacetimeField um = random_xsb(x_norm(Sign::minus, 0.3, 0.51), g, nt, T, 7, 2, 0);
  const long ik = g.flat(2, 0, 0);  // |k| = 2
  CHECK(um.at(0, 2, ik) != cdouble(0.0));
  int placed = 0;
  for (int r = 0; r < nt; ++r)
    if (um.at(0, r, ik) != cdouble(0.0)) ++placed;
  CHECK(placed == 1);

  // Same seed reproduces the same field bitwise.
  const SpacetimeField again = random_xsb(spec, g, nt, T, 7, 2, 3);
  CHECK(std::equal(u.data.begin(), u.data.end(), again.data.begin()));

  // Different seeds decorrelate the coefficient magnitudes. Measured on the
  // flat-weight norm so the shared 1/sqrt(weight) profile does not register
  // as correlation between the draws.
  const NormSpec flat = x_norm(Sign::plus, 0.0, 0.0);
  const SpacetimeField one = random_xsb(flat, g, nt, T, 7, 2, 3);
  const SpacetimeField other = random_xsb(flat, g, nt, T, 8, 2, 3);
  std::vector<double> xa, xb;
  for (std::size_t i = 0; i < one.data.size(); ++i)
    if (one.data[i] != cdouble(0.0) || other.data[i] != cdouble(0.0)) {
      xa.push_back(std::abs(one.data[i]));
      xb.push_back(std::abs(other.data[i]));
    }
  const double n = static_cast<double>(xa.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < xa.size(); ++i) {
    ma += xa[i] / n;
    mb += xb[i] / n;
  }
  double cab = 0.0, caa = 0.0, cbb = 0.0;
  for (std::size_t i = 0; i < xa.size(); ++i) {
    cab += (xa[i] - ma) * (xb[i] - mb);
    caa += (xa[i] - ma) * (xa[i] - ma);
    cbb += (xb[i] - mb) * (xb[i] - mb);
  }
  CHECK(std::abs(cab / std::sqrt(caa * cbb)) < 0.1);

  CHECK_THROWS_AS(random_xsb(h_norm(0.3, 0.51), g, nt, T, 7), std::invalid_argument);
  CHECK_THROWS_AS(random_xsb(spec, g, 8, T, 7, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(random_xsb(spec, g, nt, T, 7, 4, -1), std::invalid_argument);
}

TEST_CASE("the norm splits across frequency signs and orders by weight") {
  const Grid3 g(6, 2.0 * pi);
  SpacetimeField u(g, 16, 1.0, 1, Space::frequency);
  fill_gaussian(u, 314);

  SpacetimeField up = u, um = u;
  for (int r = 0; r < u.n_t; ++r) {
    const bool pos = u.tau(r) > 0.0;
    for (long i = 0; i < g.size(); ++i) (pos ? up : um).at(0, r, i) = 0.0;
  }
  const double s = 0.4, b = 0.45;
  const double h = st_norm(u, h_norm(s, b));
  const double xp = st_norm(up, x_norm(Sign::plus, s, b));
  const double xm = st_norm(um, x_norm(Sign::minus, s, b));

  // The plus part occupies tau <= 0 where the X+ and H weights agree, and
  // symmetrically for the minus part, so the squares add back up.
  CHECK(h * h == doctest::Approx(xp * xp + xm * xm).epsilon(1e-12));

  CHECK(st_norm(u, h_norm(s, b)) <= st_norm(u, x_norm(Sign::plus, s, b)) * (1 + 1e-12));
  CHECK(st_norm(u, h_norm(s, b)) <= st_norm(u, x_norm(Sign::minus, s, b)) * (1 + 1e-12));

  CHECK(st_norm(u, h_norm(0.2, b)) <= st_norm(u, h_norm(0.5, b)));
  CHECK(st_norm(u, h_norm(s, 0.1)) <= st_norm(u, h_norm(s, 0.6)));
  CHECK(st_norm(u, x_norm(Sign::plus, 0.0, 0.0)) ==
        doctest::Approx(spacetime_l2(u)).epsilon(1e-12));
}

TEST_CASE("bilinear pairing matches the brute-force frequency convolution") {
  for (int n : {4, 6, 8}) {
    const Grid3 g(n, 2.0 * pi);
    const int nt = 8;
    SpacetimeField psi(g, nt, 1.0, 4, Space::physical);
    SpacetimeField phi(g, nt, 1.0, 4, Space::physical);
    fill_gaussian(psi, 100 + n);
    fill_gaussian(phi, 200 + n);

    const std::array<std::pair<Sign, Sign>, 4> sign_pairs{
        {{Sign::plus, Sign::plus},
         {Sign::plus, Sign::minus},
         {Sign::minus, Sign::plus},
         {Sign::minus, Sign::minus}}};
    for (const auto& signs : sign_pairs) {
      const SpacetimeField out = bilinear_form(psi, phi, signs.first, signs.second);

      for (int j = 0; j < nt; ++j) {
        // Independent route: spatial coefficients of each slice, projected
        // mode by mode, then the convolution double sum.
        Field a(g, Space::physical, 4), b(g, Space::physical, 4);
        for (int c = 0; c < 4; ++c)
          for (long i = 0; i < g.size(); ++i) {
            a.at(c, i) = psi.at(c, j, i);
            b.at(c, i) = phi.at(c, j, i);
          }
        transform(a, FftDir::forward);
        transform(b, FftDir::forward);
        std::vector<std::array<cdouble, 4>> ap(g.size()), bp(g.size());
        for_each_mode(g, [&](int ix, int iy, int iz, long i) {
          const Vec3 k = g.frequency(ix, iy, iz);
          const std::array<cdouble, 4> av{a.at(0, i), a.at(1, i), a.at(2, i), a.at(3, i)};
          const std::array<cdouble, 4> bv{b.at(0, i), b.at(1, i), b.at(2, i), b.at(3, i)};
          ap[i] = projection(signs.first, k) * av;
          bp[i] = projection(signs.second, k) * bv;
        });

        Field got(g, Space::physical, 1);
        for (long i = 0; i < g.size(); ++i) got.data[i] = out.at(0, j, i);
        transform(got, FftDir::forward);

        double worst = 0.0;
        for (int ox = 0; ox < n; ++ox)
          for (int oy = 0; oy < n; ++oy)
            for (int oz = 0; oz < n; ++oz) {
              cdouble acc = 0.0;
              for (int ex = 0; ex < n; ++ex)
                for (int ey = 0; ey < n; ++ey)
                  for (int ez = 0; ez < n; ++ez) {
                    const long ie = g.flat(ex, ey, ez);
                    const long iz2 = g.flat((ex - ox + n) % n, (ey - oy + n) % n,
                                            (ez - oz + n) % n);
                    acc += (ap[ie][0] * std::conj(bp[iz2][0]) -
                            ap[ie][3] * std::conj(bp[iz2][3])) +
                           (ap[ie][1] * std::conj(bp[iz2][1]) -
                            ap[ie][2] * std::conj(bp[iz2][2]));
                  }
              worst = std::max(worst, std::abs(acc - got.data[g.flat(ox, oy, oz)]));
            }
        CHECK(worst < 1e-12);
      }
    }
  }
}

TEST_CASE("parallel eigen-plane-waves annihilate the pairing exactly") {
  const Grid3 g(8, 2.0 * pi);
  const int nt = 8;
  SpacetimeField one(g, nt, 1.0, 4, Space::frequency);
  SpacetimeField two(g, nt, 1.0, 4, Space::frequency);
  const std::array<cdouble, 4> v{cdouble(0.3, 0.1), cdouble(-0.2, 0.0), cdouble(0.0, 0.5),
                                 cdouble(0.7, 0.0)};
  const std::array<cdouble, 4> w{cdouble(1, 0), cdouble(2, 0), cdouble(0, 3), cdouble(0, -1)};
  for (int c = 0; c < 4; ++c) {
    one.at(c, 2, g.flat(2, 0, 0)) = v[c];
    two.at(c, 5, g.flat(3, 0, 0)) = w[c];
  }

  // Both input frequencies on the positive axis: the like-sign pairing dies.
  const SpacetimeField same = bilinear_form(one, two, Sign::plus, Sign::plus);
  for (const auto& z : same.data) CHECK(z == cdouble(0.0));

  // Anti-parallel second frequency kills the opposite-sign pairing instead.
  SpacetimeField anti(g, nt, 1.0, 4, Space::frequency);
  for (int c = 0; c < 4; ++c) anti.at(c, 5, g.flat(g.n - 3, 0, 0)) = w[c];
  const SpacetimeField opp = bilinear_form(one, anti, Sign::plus, Sign::minus);
  for (const auto& z : opp.data) CHECK(z == cdouble(0.0));

  // The same pair in the non-degenerate arrangement does not vanish.
  const SpacetimeField alive = bilinear_form(one, two, Sign::plus, Sign::minus);
  double peak = 0.0;
  for (const auto& z : alive.data) peak = std::max(peak, std::abs(z));
  CHECK(peak > 1e-3);
}

TEST_CASE("summed sign projections reproduce the upper-component density") {
  const Grid3 g(6, 2.0 * pi);
  const int nt = 8;
  SpacetimeField psi(g, nt, 1.0, 4, Space::physical);
  fill_gaussian(psi, 55);
  for (int c = 2; c < 4; ++c)
    for (int j = 0; j < nt; ++j)
      for (long i = 0; i < g.size(); ++i) psi.at(c, j, i) = 0.0;

  SpacetimeField total(g, nt, 1.0, 1, Space::physical);
  for (Sign s1 : {Sign::plus, Sign::minus})
    for (Sign s2 : {Sign::plus, Sign::minus}) {
      const SpacetimeField part = bilinear_form(psi, psi, s1, s2);
      for (std::size_t i = 0; i < total.data.size(); ++i) total.data[i] += part.data[i];
    }

  // The four projections sum to the identity, so the pairing collapses to
  // the density |psi_1|^2 + |psi_2|^2 of upper-component data.
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j < nt; ++j)
    for (long i = 0; i < g.size(); ++i) {
      const double want = std::norm(psi.at(0, j, i)) + std::norm(psi.at(1, j, i));
      worst = std::max(worst, std::abs(total.at(0, j, i) - want));
      scale = std::max(scale, want);
    }
  CHECK(worst < 1e-12 * scale);
}

TEST_CASE("bilinear_form validates its inputs") {
  const Grid3 g(4, 2.0 * pi);
  SpacetimeField spinor(g, 8, 1.0, 4, Space::physical);
  SpacetimeField scalar(g, 8, 1.0, 1, Space::physical);
  SpacetimeField other(Grid3(6, 2.0 * pi), 8, 1.0, 4, Space::physical);
  SpacetimeField shorter(g, 8, 0.5, 4, Space::physical);
  CHECK_THROWS_AS(bilinear_form(spinor, scalar, Sign::plus, Sign::plus),
                  std::invalid_argument);
  CHECK_THROWS_AS(bilinear_form(spinor, other, Sign::plus, Sign::plus),
                  std::invalid_argument);
  CHECK_THROWS_AS(bilinear_form(spinor, shorter, Sign::plus, Sign::plus),
                  std::invalid_argument);
}
