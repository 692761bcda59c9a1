#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "dkg/fields.hpp"
#include "dkg/snapshot.hpp"

using namespace dkg;
using std::numbers::pi;

namespace {

Field plane_wave(const Grid3& g, int kx, int ky, int kz, int comp = 0, int ncomp = 1) {
  Field f(g, Space::physical, ncomp);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    const double ph = 2.0 * pi * (double(kx) * ix + double(ky) * iy + double(kz) * iz) / g.n;
    f.at(comp, i) = std::polar(1.0, ph);
  });
  return f;
}

double rel_diff(const Field& a, const Field& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    num += std::norm(a.data[i] - b.data[i]);
    den += std::norm(a.data[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_CASE("grid frequency layout is an involution away from the Nyquist row") {
  const Grid3 g(8, 2.0 * pi);
  CHECK(g.dealias_band() == 2);
  for (int i = 0; i < g.n; ++i) {
    const int k = g.signed_index(i);
    CHECK(k >= -4);
    CHECK(k <= 3);
    if (!g.is_nyquist(i)) {
      const int ineg = (g.n - i) % g.n;
      CHECK(g.signed_index(ineg) == -k);
    }
  }
  CHECK(g.is_nyquist(4));
  CHECK_THROWS_AS(Grid3(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid3(8, 0.0), std::invalid_argument);
}

TEST_CASE("forward transform of a plane wave is a single unit coefficient") {
  const Grid3 g(8, 2.0 * pi);
  Field f = plane_wave(g, 1, 0, 0);
  transform(f, FftDir::forward);
  REQUIRE(f.space == Space::frequency);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    const cdouble want = (ix == 1 && iy == 0 && iz == 0) ? 1.0 : 0.0;
    CHECK(std::abs(f.data[i] - want) < 1e-13);
  });
  CHECK_THROWS_AS(transform(f, FftDir::forward), std::invalid_argument);
}

TEST_CASE("transform round trip and Parseval") {
  const Grid3 g(16, 5.0);
  Field f = random_spinor(g, 123, 5, 1.0);
  REQUIRE(f.space == Space::physical);
  const double phys = physical_l2(f);
  const double freq = l2_norm(f);
  CHECK(phys == doctest::Approx(freq).epsilon(1e-12));

  Field rt = to_physical(to_frequency(f));
  CHECK(rel_diff(f, rt) < 1e-13);
}

TEST_CASE("Sobolev norms match hand-computed single modes") {
  const Grid3 g(8, 2.0 * pi);
  const double box = std::pow(2.0 * pi, 1.5);

  Field ones = Field::scalar(g, Space::physical);
  for (auto& v : ones.data) v = 1.0;
  CHECK(sobolev_norm(ones, 0.0) == doctest::Approx(box).epsilon(1e-13));
  CHECK(sobolev_norm(ones, 2.5) == doctest::Approx(box).epsilon(1e-13));

  const Field wave = plane_wave(g, 1, 0, 0);
  // <k> = 2 at |k| = 1
  CHECK(sobolev_norm(wave, 1.0) == doctest::Approx(2.0 * box).epsilon(1e-12));
  CHECK(sobolev_norm(wave, 0.5, true) == doctest::Approx(box).epsilon(1e-12));

  // homogeneous norm drops the zero mode
  Field shifted = wave;
  for (auto& v : shifted.data) v += 10.0;
  CHECK(sobolev_norm(shifted, 0.5, true) == doctest::Approx(box).epsilon(1e-12));
}

TEST_CASE("multiplier application and error reporting") {
  const Grid3 g(8, 2.0 * pi);
  Field f = random_scalar(g, 5, 2, 1.0);
  Field same = f;
  apply_multiplier(same, [](const Vec3&) { return cdouble(1.0); });
  CHECK(rel_diff(f, same) < 1e-14);

  CHECK_THROWS_WITH_AS(
      apply_multiplier(f, [](const Vec3& k) { return cdouble(1.0 / norm(k)); }),
      doctest::Contains("(0, 0, 0)"), std::domain_error);
}

TEST_CASE("projection fields are complete, idempotent and commute with the flow") {
  const Grid3 g(8, 3.0);
  Field psi = random_spinor(g, 77, 2, 1.0);
  // the zero-mode convention P(0) = I/2 preserves completeness but not
  // idempotence, so test idempotence on mean-free data
  transform(psi, FftDir::forward);
  for (int c = 0; c < 4; ++c) psi.at(c, 0) = 0.0;
  transform(psi, FftDir::inverse);
  const Field pp = project_field(psi, Sign::plus);
  const Field pm = project_field(psi, Sign::minus);

  Field sum = pp;
  for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += pm.data[i];
  CHECK(rel_diff(psi, sum) < 1e-13);
  CHECK(rel_diff(pp, project_field(pp, Sign::plus)) < 1e-13);

  // the zero mode itself is halved, and completeness still holds there
  Field mean = random_spinor(g, 78, 2, 1.0);
  const Field half = project_field(mean, Sign::plus);
  const Field other = project_field(mean, Sign::minus);
  Field total = half;
  for (std::size_t i = 0; i < total.data.size(); ++i) total.data[i] += other.data[i];
  CHECK(rel_diff(mean, total) < 1e-13);

  Field a = pp;
  half_wave_propagate(a, Sign::plus, 0.37);
  Field b = psi;
  half_wave_propagate(b, Sign::plus, 0.37);
  b = project_field(b, Sign::plus);
  CHECK(rel_diff(a, b) < 1e-12);
}

TEST_CASE("half-wave propagator phases, group law and generator") {
  const Grid3 g(8, 2.0 * pi);
  Field f = plane_wave(g, 2, 0, 0);

  SUBCASE("single mode picks up exp(-+ i t |k|)") {
    Field u = f;
    half_wave_propagate(u, Sign::plus, 0.3);
    CHECK(std::abs(u.data[0] - std::polar(1.0, -0.3 * 2.0)) < 1e-13);
    Field v = f;
    half_wave_propagate(v, Sign::minus, 0.3);
    CHECK(std::abs(v.data[0] - std::polar(1.0, 0.3 * 2.0)) < 1e-13);
  }

  SUBCASE("group law U(t) U(s) = U(t+s)") {
    Field a = random_spinor(g, 9, 2, 1.0);
    Field b = a;
    half_wave_propagate(a, Sign::minus, 0.2);
    half_wave_propagate(a, Sign::minus, 0.5);
    half_wave_propagate(b, Sign::minus, 0.7);
    CHECK(rel_diff(a, b) < 1e-12);
  }

  SUBCASE("centered time difference converges to the generator at order 2") {
    const Field base = random_spinor(g, 31, 2, 1.0);
    auto residual = [&](double dt) {
      Field fw = base, bw = base, gen = base;
      half_wave_propagate(fw, Sign::plus, dt);
      half_wave_propagate(bw, Sign::plus, -dt);
      // d/dt psi = -i |D| psi for the plus flow
      apply_multiplier(gen, [](const Vec3& k) { return -iu * norm(k); });
      double acc = 0.0;
      for (std::size_t i = 0; i < fw.data.size(); ++i)
        acc += std::norm((fw.data[i] - bw.data[i]) / (2.0 * dt) - gen.data[i]);
      return std::sqrt(acc);
    };
    const double r1 = residual(1e-2), r2 = residual(5e-3);
    CHECK(r1 / r2 > 3.5);
    CHECK(r1 / r2 < 4.5);
  }
}

TEST_CASE("Klein-Gordon propagation is the exact mode rotation") {
  const Grid3 g(8, 2.0 * pi);
  const double m = 0.7;
  const double w = std::sqrt(1.0 + m * m);

  ScalarState st(g);
  for_each_mode(g, [&](int ix, int, int, long i) {
    st.phi[i] = std::cos(2.0 * pi * ix / g.n);
  });
  const double e0 = kg_energy(st, m);
  kg_propagate(st, 0.83, m);
  for_each_mode(g, [&](int ix, int, int, long i) {
    const double x = 2.0 * pi * ix / g.n;
    CHECK(st.phi[i] == doctest::Approx(std::cos(w * 0.83) * std::cos(x)).epsilon(1e-12));
    CHECK(st.phi_t[i] ==
          doctest::Approx(-w * std::sin(w * 0.83) * std::cos(x)).epsilon(1e-12));
  });
  CHECK(kg_energy(st, m) == doctest::Approx(e0).epsilon(1e-12));

  SUBCASE("reversibility") {
    ScalarState r = random_scalar_state(g, 3, 2, 1.0);
    ScalarState orig = r;
    kg_propagate(r, 0.6, m);
    kg_propagate(r, -0.6, m);
    for (long i = 0; i < g.size(); ++i)
      CHECK(r.phi[i] == doctest::Approx(orig.phi[i]).epsilon(1e-11));
  }

  SUBCASE("massless zero mode grows linearly") {
    ScalarState z(g);
    for (long i = 0; i < g.size(); ++i) {
      z.phi[i] = 2.0;
      z.phi_t[i] = 3.0;
    }
    kg_propagate(z, 0.25, 0.0);
    for (long i = 0; i < g.size(); ++i) {
      CHECK(z.phi[i] == doctest::Approx(2.75).epsilon(1e-13));
      CHECK(z.phi_t[i] == doctest::Approx(3.0).epsilon(1e-13));
    }
  }

  CHECK_THROWS_AS(kg_propagate(st, 0.1, -1.0), std::domain_error);
}

TEST_CASE("random data factories are deterministic and respect constraints") {
  const Grid3 g(8, 2.0 * pi);
  const Field a = random_spinor(g, 42, 2, 0.5);
  const Field b = random_spinor(g, 42, 2, 0.5);
  CHECK(rel_diff(a, b) == 0.0);
  const Field c = random_spinor(g, 43, 2, 0.5);
  CHECK(rel_diff(a, c) > 0.1);

  // charge-free data: the component pairing makes the pointwise density
  // vanish exactly in floating point when the cancelling terms are grouped
  const Field cg = chadam_glassey_data(g, 7, 2, 1.0);
  for (long i = 0; i < g.size(); ++i) {
    const double density = (std::norm(cg.at(0, i)) - std::norm(cg.at(3, i))) +
                           (std::norm(cg.at(1, i)) - std::norm(cg.at(2, i)));
    CHECK(density == 0.0);
  }

  // band-limited draws carry no Nyquist content beyond transform noise
  Field freq = to_frequency(a);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    if (g.is_nyquist(ix) || g.is_nyquist(iy) || g.is_nyquist(iz))
      for (int comp = 0; comp < 4; ++comp) CHECK(std::abs(freq.at(comp, i)) < 1e-15);
  });
}

TEST_CASE("snapshot files round trip bitwise") {
  const Grid3 g(6, 1.5);
  const Field psi = random_spinor(g, 11, 2, 0.8);
  const ScalarState sc = random_scalar_state(g, 12, 2, 0.4);

  const std::string path = "snapshot_test.bin";
  write_snapshot(path, psi, sc);
  const Snapshot snap = read_snapshot(path);
  CHECK(snap.psi.grid.n == 6);
  CHECK(snap.psi.grid.L == 1.5);
  for (std::size_t i = 0; i < psi.data.size(); ++i) CHECK(snap.psi.data[i] == psi.data[i]);
  for (long i = 0; i < g.size(); ++i) {
    CHECK(snap.scalar.phi[i] == sc.phi[i]);
    CHECK(snap.scalar.phi_t[i] == sc.phi_t[i]);
  }

  std::FILE* fp = std::fopen("snapshot_bad.bin", "wb");
  std::fputs("NOPE", fp);
  std::fclose(fp);
  CHECK_THROWS(read_snapshot("snapshot_bad.bin"));
  CHECK_THROWS(read_snapshot("snapshot_missing.bin"));
  std::remove(path.c_str());
  std::remove("snapshot_bad.bin");
}
