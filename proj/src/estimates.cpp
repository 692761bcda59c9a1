#include "dkg/estimates.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dkg {

std::vector<FrequencyTuple> random_frequency_tuples(std::uint64_t seed, long count) {
  if (count < 0) throw std::invalid_argument("random_frequency_tuples: negative count");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double span = std::log(100.0);

  const auto magnitude = [&] { return 0.1 * std::exp(span * unif(rng)); };
  const auto direction = [&] {
    Vec3 v{};
    double n = 0.0;
    do {
      v = Vec3{gauss(rng), gauss(rng), gauss(rng)};
      n = norm(v);
    } while (n < 1e-6);
    return (1.0 / n) * v;
  };
  const auto signed_mag = [&] { return (unif(rng) < 0.5 ? -1.0 : 1.0) * magnitude(); };

  std::vector<FrequencyTuple> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long j = 0; j < count; ++j) {
    FrequencyTuple t;
    t.tau = signed_mag();
    t.lambda = signed_mag();
    t.xi = magnitude() * direction();
    t.eta = magnitude() * direction();
    out.push_back(t);
  }
  return out;
}

namespace {

long double ld_norm(const Vec3& v) {
  const long double x = v.x, y = v.y, z = v.z;
  return sqrtl(x * x + y * y + z * z);
}

struct LdVec {
  long double x, y, z;
};

LdVec ld_sub(const Vec3& a, const Vec3& b) {
  return {static_cast<long double>(a.x) - b.x, static_cast<long double>(a.y) - b.y,
          static_cast<long double>(a.z) - b.z};
}

long double ld_len(const LdVec& v) { return sqrtl(v.x * v.x + v.y * v.y + v.z * v.z); }

}  // namespace

WeightReport weight_checks(const std::vector<FrequencyTuple>& tuples) {
  WeightReport rep;
  rep.quotient_low = std::numeric_limits<double>::infinity();
  const long double pi_l = 3.14159265358979323846264338327950288L;
  const long double q_lo = 2.0L / (pi_l * pi_l), q_hi = 1.0L;
  constexpr long double id_tol = 1e-9L;
  constexpr long double angle_cut = 1e-3L;

  for (const FrequencyTuple& t : tuples) {
    const long double ne = ld_norm(t.eta);
    const LdVec z = ld_sub(t.eta, t.xi);
    const long double nz = ld_len(z);
    if (ne < 1e-9L || nz < 1e-9L) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;

    const long double nx = ld_norm(t.xi);
    const long double ex = t.eta.x, ey = t.eta.y, ez = t.eta.z;
    const long double dot = ex * z.x + ey * z.y + ez * z.z;
    const LdVec cr{ey * z.z - ez * z.y, ez * z.x - ex * z.z, ex * z.y - ey * z.x};
    const long double cross = ld_len(cr);
    const long double th_p = atan2l(cross, dot);
    const long double th_m = atan2l(cross, -dot);
    const long double r_p = nx - fabsl(ne - nz);
    const long double r_m = ne + nz - nx;

    // (a), (b): the two law-of-cosines identities.
    {
      const long double lhs_a = 2.0L * (1.0L - cosl(th_p)) * ne * nz;
      const long double rhs_a = nx * nx - (ne - nz) * (ne - nz);
      const long double lhs_b = 2.0L * (1.0L - cosl(th_m)) * ne * nz;
      const long double rhs_b = (ne + nz) * (ne + nz) - nx * nx;
      const long double sa = std::max({fabsl(lhs_a), fabsl(rhs_a), 1e-12L});
      const long double sb = std::max({fabsl(lhs_b), fabsl(rhs_b), 1e-12L});
      const long double da = fabsl(lhs_a - rhs_a) / sa;
      const long double db = fabsl(lhs_b - rhs_b) / sb;
      rep.worst_identity = std::max(rep.worst_identity, static_cast<double>(std::max(da, db)));
      if (da > id_tol) ++rep.violations[0];
      if (db > id_tol) ++rep.violations[1];
    }

    // (c): quotient comparability against theta^2.
    for (int s = 0; s < 2; ++s) {
      const long double th = s == 0 ? th_p : th_m;
      if (th < angle_cut) {
        ++rep.skipped_angle;
        continue;
      }
      const long double num = s == 0 ? nx * r_p : (ne + nz) * r_m;
      const long double q = num / (ne * nz * th * th);
      rep.quotient_low = std::min(rep.quotient_low, static_cast<double>(q));
      rep.quotient_high = std::max(rep.quotient_high, static_cast<double>(q));
      if (q < q_lo - 1e-9L || q > q_hi + 1e-9L) ++rep.violations[2];
    }

    // (d): the three-term modulation bound with constant one.
    {
      const long double tau = t.tau, lam = t.lambda;
      const long double common = fabsl(fabsl(tau) - nx) + fabsl(lam + ne);
      const long double rhs_p = common + fabsl(lam - tau + nz);
      const long double rhs_m = common + fabsl(lam - tau - nz);
      const long double slack =
          1e-12L * (nx + ne + nz + fabsl(tau) + fabsl(lam) + 1.0L);
      if (r_p > rhs_p + slack || r_m > rhs_m + slack) ++rep.violations[3];
    }

    // (e): both residues under twice the smaller input frequency.
    {
      const long double cap = 2.0L * std::min(ne, nz);
      const long double slack = 1e-12L * (ne + nz + nx + 1.0L);
      if (r_p > cap + slack || r_m > cap + slack) ++rep.violations[4];
    }
  }

  rep.pass = true;
  for (long v : rep.violations) rep.pass = rep.pass && v == 0;
  if (rep.quotient_low > rep.quotient_high) rep.quotient_low = rep.quotient_high = 0.0;
  return rep;
}

double strichartz_ratio(const Field& f, Sign sign, double T_win, int n_t) {
  if (n_t < 1) throw std::invalid_argument("strichartz_ratio: need at least one time sample");
  if (!(T_win > 0.0)) throw std::invalid_argument("strichartz_ratio: window must be positive");
  const Field fhat = to_frequency(f);
  const Grid3& g = fhat.grid;

  double mean_mass = 0.0, total = 0.0;
  const long i0 = g.flat(0, 0, 0);
  for (int c = 0; c < fhat.ncomp; ++c) mean_mass += std::norm(fhat.at(c, i0));
  for (const auto& zc : fhat.data) total += std::norm(zc);
  if (!(total > 0.0)) throw std::domain_error("strichartz_ratio: zero data");
  if (mean_mass > 1e-20 * total)
    throw std::invalid_argument("strichartz_ratio: data must have zero mean");

  const double den = sobolev_norm(fhat, 0.5, true);
  double acc = 0.0;
  for (int j = 0; j < n_t; ++j) {
    Field u = fhat;
    half_wave_propagate(u, sign, T_win * j / n_t);
    transform(u, FftDir::inverse);
    for (long i = 0; i < g.size(); ++i) {
      double m2 = 0.0;
      for (int c = 0; c < u.ncomp; ++c) m2 += std::norm(u.at(c, i));
      acc += m2 * m2;
    }
  }
  // Fourth root via two square roots, so power-of-two rescalings of the
  // data move through exactly.
  const double num = std::sqrt(std::sqrt(g.cell_volume() * (T_win / n_t) * acc));
  return num / den;
}

KeyBilinearResult key_bilinear_ratio(const Field& psi0, Sign s1, Sign s2, double T_win,
                                     int n_t, double floor) {
  if (psi0.ncomp != 4)
    throw std::invalid_argument("key_bilinear_ratio: data must be a 4-spinor");
  if (floor < 0.0) {
    const double step = 2.0 * std::numbers::pi / T_win;
    floor = step * step;
  }
  if (!(floor > 0.0)) throw std::invalid_argument("key_bilinear_ratio: floor must be positive");
  const double den = l2_norm(psi0);
  if (!(den > 0.0)) throw std::domain_error("key_bilinear_ratio: zero data");

  const SpacetimeField ua = free_wave(psi0, s1, T_win, n_t, Window::rectangular);
  const SpacetimeField ub = free_wave(psi0, s2, T_win, n_t, Window::rectangular);
  const SpacetimeField bf = to_st_frequency(bilinear_form(ua, ub, s1, s2));

  const Grid3& g = bf.grid;
  double acc = 0.0;
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    const double k2 = norm2(g.frequency(ix, iy, iz));
    for (int r = 0; r < bf.n_t; ++r) {
      const double tau = bf.tau(r);
      const double sym = std::abs(tau * tau - k2);
      acc += std::norm(bf.at(0, r, i)) / std::max(sym, floor);
    }
  });
  const double num = std::sqrt(T_win * g.volume() * acc);
  return {num / (den * den), floor};
}

EstimateSpec km_estimate(double s1, double s2, double s3, double b) {
  if (std::abs(s1 + s2 + s3 - 1.0) > 1e-12)
    throw std::invalid_argument("km_estimate: requires s1+s2+s3 = 1");
  if (!(s1 < 1.0 && s2 < 1.0 && s3 < 1.0))
    throw std::invalid_argument("km_estimate: requires s1, s2, s3 < 1");
  if (!(s1 + s2 > 0.5)) throw std::invalid_argument("km_estimate: requires s1+s2 > 1/2");
  if (s1 < 0.0 || s2 < 0.0 || s3 < 0.0)
    throw std::invalid_argument("km_estimate: transference form requires s1, s2, s3 >= 0");
  if (!(b > 0.5)) throw std::invalid_argument("km_estimate: requires b > 1/2");

  char id[64];
  std::snprintf(id, sizeof id, "km(%g,%g,%g)", s1, s2, s3);
  return {id, h_norm(s1, b), h_norm(s2, b), h_norm(-s3, 0.0)};
}

std::vector<EstimateSpec> estimate_registry(double eps, double ep) {
  if (!(eps > 0.0)) throw std::invalid_argument("estimate_registry: eps must be positive");
  if (!(ep > 0.0 && ep < eps / 2.0))
    throw std::invalid_argument("estimate_registry: eps_prime must lie in (0, eps/2)");
  const double b = 0.5 + ep;
  const double d = ep;  // the delta of the interpolated family
  const auto Xp = [](double s, double bb) { return x_norm(Sign::plus, s, bb); };
  const auto Xm = [](double s, double bb) { return x_norm(Sign::minus, s, bb); };
  const auto H = [](double s, double bb) { return h_norm(s, bb); };

  return {
      {"interp1", H(0.0, 0.5 - d), H(0.5 + eps, b), H(-0.5, 0.0)},
      {"interp2", H(0.0, 0.5 - d), H(0.5, b), H(-0.5 - eps, 0.0)},
      {"interp3", H(0.5 - eps, 0.5 - d), H(0.5 + eps, b), H(-eps, 0.0)},
      {"interp4", H(0.5 - eps, 0.5 - d), H(eps, b), H(-0.5 - eps, 0.0)},
      {"interp5", H(-eps, 0.5 - d), H(0.5 + eps, b), H(-0.5 - eps, 0.0)},

      {"redplus1", Xp(0.5, b), Xp(0.5 + eps - 2 * ep, b), H(0.0, 0.0)},
      {"redplus2", Xp(0.5, 0.0), Xp(0.5 + eps, b), H(0.0, -0.5 + 2 * ep)},
      {"redplus3", Xp(0.5, b), Xp(0.5 + eps, 0.0), H(0.0, -0.5 + 2 * ep)},
      {"redminus1", Xp(eps, b), Xm(0.5 + eps - 2 * ep, b), H(-0.5 + eps, 0.0)},
      {"redminus2", Xp(eps, 0.0), Xm(0.5 + eps, b), H(-0.5 + eps, -0.5 + 2 * ep)},
      {"redminus3", Xp(eps, b), Xm(0.5 + eps, 0.0), H(-0.5 + eps, -0.5 + 2 * ep)},

      {"dual1", H(0.5, b), H(0.5 + eps - 2 * ep, b), H(0.0, 0.0)},
      {"dual2", H(0.0, 0.5 - 2 * ep), H(0.5 + eps, b), H(-0.5, 0.0)},
      {"dual3", H(0.5, b), H(0.0, 0.5 - 2 * ep), H(-0.5 - eps, 0.0)},
      {"dual4", H(eps, b), H(0.5 + eps - 2 * ep, b), H(-0.5 + eps, 0.0)},
      {"dual5", H(0.5 - eps, 0.5 - 2 * ep), H(0.5 + eps, b), H(-eps, 0.0)},
      {"dual6", H(eps, b), H(0.5 - eps, 0.5 - 2 * ep), H(-0.5 - eps, 0.0)},

      {"aux1", H(0.5 + eps, b), H(0.5 - eps, 0.5 - ep), H(-eps, 0.0)},
      {"aux2", H(0.5 + eps, 0.0), H(0.5 - eps, 0.5 - ep), H(-eps, -b)},
      {"aux3", H(0.5 + eps - 2 * ep, b), H(0.5 - eps - 2 * ep, 0.0), H(-eps, -b)},
      {"aux4", H(0.5 + eps, b), H(-eps, 0.5 - 2 * ep), H(-0.5 - eps, 0.0)},
      {"aux5", H(0.5 + eps, 0.0), H(-eps, 0.5 - 2 * ep), H(-0.5 - eps, -b)},
      {"aux6", H(0.5 + eps - 2 * ep, b), H(-eps, 0.0), H(-0.5 - eps, -b)},
      {"aux7", H(eps, b), H(0.5 - eps, 0.5 - 2 * ep), H(-0.5 - eps, 0.0)},
      {"aux8", H(eps, 0.0), H(0.5 - eps, 0.5 - 2 * ep), H(-0.5 - eps, -b)},
      {"aux9", H(eps, b), H(0.5 - eps - 2 * ep, 0.0), H(-0.5 - eps, -b)},
  };
}

double product_estimate_ratio(const EstimateSpec& est, const SpacetimeField& u,
                              const SpacetimeField& v) {
  if (u.ncomp != 1 || v.ncomp != 1)
    throw std::invalid_argument("product_estimate_ratio: scalar fields only");
  if (!(u.grid == v.grid) || u.n_t != v.n_t || u.T_win != v.T_win)
    throw std::invalid_argument("product_estimate_ratio: inputs disagree on the grid");

  const double den = st_norm(u, est.u) * st_norm(v, est.v);
  if (!(den > 0.0)) throw std::domain_error("product_estimate_ratio: zero input");

  const SpacetimeField up = to_st_physical(u);
  const SpacetimeField vp = to_st_physical(v);
  SpacetimeField w(u.grid, u.n_t, u.T_win, 1, Space::physical);
  for (std::size_t i = 0; i < w.data.size(); ++i) w.data[i] = up.data[i] * vp.data[i];
  return st_norm(w, est.target) / den;
}

namespace {

int quarter_band(int n) { return std::max(1, n / 4 - 1); }

// Mean-free band-limited spinor draw in the frequency representation.
Field probe_spinor(const Grid3& g, std::uint64_t seed, int band) {
  Field f = to_frequency(random_spinor(g, seed, band, 1.0));
  for (int c = 0; c < 4; ++c) f.at(c, g.flat(0, 0, 0)) = 0.0;
  return f;
}

SpacetimeField synth_input(const NormSpec& spec, const Grid3& g, int n_t, double T_win,
                           std::uint64_t seed, int band) {
  if (spec.variant == NormSpec::Variant::X_pm)
    return random_xsb(spec, g, n_t, T_win, seed, band, 3);
  // H-type input: an equal mix of the two characters, renormalized so the
  // requested norm is exactly one.
  SpacetimeField a =
      random_xsb(x_norm(Sign::plus, spec.s, spec.b), g, n_t, T_win, 2 * seed + 1, band, 3);
  const SpacetimeField bpart =
      random_xsb(x_norm(Sign::minus, spec.s, spec.b), g, n_t, T_win, 2 * seed + 2, band, 3);
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += bpart.data[i];
  const double h = st_norm(a, spec);
  for (auto& z : a.data) z /= h;
  return a;
}

}  // namespace

ProbeReport probe_strichartz(const Grid3& g, int n_t, double T_win, int samples,
                             std::uint64_t seed0) {
  ProbeReport rep;
  rep.test_id = "strichartz";
  rep.n = g.n;
  rep.n_t = n_t;
  rep.L = g.L;
  rep.T_win = T_win;
  rep.samples = samples;
  rep.seed = seed0;
  const int band = quarter_band(g.n);
  for (int j = 0; j < samples; ++j) {
    const std::uint64_t s = seed0 + static_cast<std::uint64_t>(j);
    const double r = strichartz_ratio(probe_spinor(g, s, band), Sign::plus, T_win, n_t);
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax_seed = s;
    }
  }
  return rep;
}

ProbeReport probe_key_bilinear(const Grid3& g, int n_t, double T_win, Sign s1, Sign s2,
                               int samples, std::uint64_t seed0, double floor) {
  ProbeReport rep;
  rep.test_id = "key_bilinear";
  rep.estimate_id = std::string("pair(") + sign_name(s1) + "," + sign_name(s2) + ")";
  rep.n = g.n;
  rep.n_t = n_t;
  rep.L = g.L;
  rep.T_win = T_win;
  rep.samples = samples;
  rep.seed = seed0;
  const int band = quarter_band(g.n);
  for (int j = 0; j < samples; ++j) {
    const std::uint64_t s = seed0 + static_cast<std::uint64_t>(j);
    const Field psi0 = random_spinor(g, s, band, 1.0);
    const KeyBilinearResult kb = key_bilinear_ratio(psi0, s1, s2, T_win, n_t, floor);
    rep.floor = kb.floor;
    if (kb.ratio > rep.max_ratio) {
      rep.max_ratio = kb.ratio;
      rep.argmax_seed = s;
    }
  }
  return rep;
}

ProbeReport probe_product(const EstimateSpec& est, const Grid3& g, int n_t, double T_win,
                          int samples, std::uint64_t seed0) {
  ProbeReport rep;
  rep.test_id = "product";
  rep.estimate_id = est.id;
  rep.n = g.n;
  rep.n_t = n_t;
  rep.L = g.L;
  rep.T_win = T_win;
  rep.samples = samples;
  rep.seed = seed0;
  const int band = quarter_band(g.n);
  for (int j = 0; j < samples; ++j) {
    const std::uint64_t s = seed0 + 2 * static_cast<std::uint64_t>(j);
    const SpacetimeField u = synth_input(est.u, g, n_t, T_win, s, band);
    const SpacetimeField v = synth_input(est.v, g, n_t, T_win, s + 1, band);
    const double r = product_estimate_ratio(est, u, v);
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      rep.argmax_seed = s;
    }
  }
  return rep;
}

}  // namespace dkg
