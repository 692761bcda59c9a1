#include "dkg/picard.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "dkg/spinor_algebra.hpp"

namespace dkg {

namespace {

struct Duo {
  cdouble p1, p2;  // h phi1(z), h phi2(z) for the exponential trapezoid
};

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, series near zero
Duo weights(cdouble z, double h) {
  cdouble p1, p2;
  if (std::abs(z) < 0.5) {
    cdouble term(0.5, 0.0);
    cdouble sum = term;
    for (int n = 1; n < 24; ++n) {
      term *= z / static_cast<double>(n + 2);
      sum += term;
      if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    p2 = sum;
    p1 = z * p2 + 1.0;
  } else {
    const cdouble e = std::exp(z);
    p1 = (e - 1.0) / z;
    p2 = (e - 1.0 - z) / (z * z);
  }
  return {h * p1, h * p2};
}

// one iterate's trajectory in frequency space at the n_t + 1 sample times
struct Trail {
  std::vector<std::vector<cdouble>> p, q, phi;
};

struct Sources {
  std::vector<std::vector<cdouble>> fp, fq, g;  // F_+, F_-, scalar source
};

double sup_norm(const std::vector<std::vector<cdouble>>& a,
                const std::vector<std::vector<cdouble>>* b,
                const std::vector<double>& wts, double volume, int ncomp) {
  const std::size_t sz = wts.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double s = 0.0;
    for (int c = 0; c < ncomp; ++c)
      for (std::size_t i = 0; i < sz; ++i) {
        const cdouble d = b ? a[j][c * sz + i] - (*b)[j][c * sz + i] : a[j][c * sz + i];
        s += wts[i] * std::norm(d);
      }
    worst = std::max(worst, std::sqrt(volume * s));
  }
  return worst;
}

}  // namespace

PicardReport picard_iterate(const SolverConfig& cfg, const Field& psi0,
                            const ScalarState& scalar0, int k_max, int n_t, double eps) {
  if (!(cfg.T > 0) || cfg.T > 1.0)
    throw std::invalid_argument("picard mode requires 0 < T <= 1");
  if (cfg.M < 0 || cfg.m < 0 || cfg.g < 0)
    throw std::invalid_argument("masses and coupling must be nonnegative");
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  if (n_t < 1) throw std::invalid_argument("n_t must be positive");
  if (!(psi0.grid == scalar0.grid))
    throw std::invalid_argument("spinor and scalar data live on different grids");

  const Grid3 grid = psi0.grid;
  const long sz = grid.size();
  const int n = grid.n;
  const double h = cfg.T / n_t;
  const int nt1 = n_t + 1;

  // per-mode tables: |k|, dealias mask, plus-projection, propagator weights
  std::vector<double> kabs(sz);
  std::vector<char> mask(sz, 1);
  std::vector<Matrix4> proj(sz);
  std::vector<cdouble> e_step(sz);
  std::vector<Duo> duo(sz);
  const int band = grid.dealias_band();
  for_each_mode(grid, [&](int ix, int iy, int iz, long i) {
    const Vec3 k = grid.frequency(ix, iy, iz);
    kabs[i] = norm(k);
    if (cfg.dealias && !grid.in_band(ix, iy, iz, band)) mask[i] = 0;
    proj[i] = projection(Sign::plus, k);
    const cdouble z(0.0, -h * kabs[i]);
    e_step[i] = std::exp(z);
    duo[i] = weights(z, h);
  });

  // sobolev weights for the diagnostic norms
  std::vector<double> wt_psi(sz), wt_phi(sz);
  for (long i = 0; i < sz; ++i) {
    const double w = 1.0 + kabs[i];
    wt_psi[i] = std::pow(w, 2.0 * eps);
    wt_phi[i] = std::pow(w, 2.0 * (0.5 + eps));
  }

  // shared t = 0 data in frequency space
  Field psi_freq = psi0.space == Space::frequency ? psi0 : to_frequency(psi0);
  Field sc(grid, Space::physical, 2);
  for (long i = 0; i < sz; ++i) {
    sc.data[i] = scalar0.phi[i];
    sc.data[sz + i] = scalar0.phi_t[i];
  }
  transform(sc, FftDir::forward);
  if (cfg.dealias) {
    dealias(psi_freq);
    dealias(sc);
  }
  auto halves = split_data(psi_freq);

  const auto alloc = [&](int comps) {
    return std::vector<std::vector<cdouble>>(
        nt1, std::vector<cdouble>(static_cast<std::size_t>(comps) * sz));
  };

  // sources of the next iterate from a stored trajectory
  std::vector<cdouble> buf4(4 * static_cast<std::size_t>(sz)), buf1(sz), prod(buf4.size());
  const auto build_sources = [&](const Trail& tr, Sources& out) {
    for (int j = 0; j < nt1; ++j) {
      for (long i = 0; i < 4 * sz; ++i) buf4[i] = tr.p[j][i] + tr.q[j][i];
      dft3(buf4.data(), n, 4, FftDir::inverse);
      for (long i = 0; i < sz; ++i) buf1[i] = tr.phi[j][i];
      dft3(buf1.data(), n, 1, FftDir::inverse);

      for (long i = 0; i < sz; ++i) {
        const cdouble phi = buf1[i];
        for (int c = 0; c < 4; ++c) {
          const double bs = c < 2 ? 1.0 : -1.0;
          prod[c * sz + i] = bs * phi * buf4[c * sz + i];
        }
      }
      for (long i = 0; i < sz; ++i) {
        const double rho = (std::norm(buf4[i]) - std::norm(buf4[3 * sz + i])) +
                           (std::norm(buf4[sz + i]) - std::norm(buf4[2 * sz + i]));
        buf1[i] = cfg.g * rho;
      }
      dft3(prod.data(), n, 4, FftDir::forward);
      dft3(buf1.data(), n, 1, FftDir::forward);
      if (cfg.dealias)
        for (long i = 0; i < sz; ++i) {
          if (mask[i]) continue;
          buf1[i] = 0.0;
          for (int c = 0; c < 4; ++c) prod[c * sz + i] = 0.0;
        }

      for (long i = 0; i < sz; ++i) {
        const std::array<cdouble, 4> chi = {prod[i], prod[sz + i], prod[2 * sz + i],
                                            prod[3 * sz + i]};
        const std::array<cdouble, 4> pv = proj[i] * chi;
        for (int c = 0; c < 4; ++c) {
          const double bs = c < 2 ? 1.0 : -1.0;
          out.fp[j][c * sz + i] = -cfg.M * bs * tr.q[j][c * sz + i] + cfg.g * pv[c];
          out.fq[j][c * sz + i] =
              -cfg.M * bs * tr.p[j][c * sz + i] + cfg.g * (chi[c] - pv[c]);
        }
        out.g[j][i] = -cfg.m * cfg.m * tr.phi[j][i] + buf1[i];
      }
    }
  };

  // solve the linear Duhamel problem with given sources (zero when null)
  const auto run_iterate = [&](const Sources* src, Trail& out) {
    std::vector<cdouble> cp(sz), cm(sz);  // characteristic scalar variables
    for (long i = 0; i < sz; ++i) {
      const cdouble ph = sc.data[i];
      const cdouble vt = sc.data[sz + i];
      if (kabs[i] > 0.0) {
        cp[i] = kabs[i] * ph + cdouble(0.0, 1.0) * vt;
        cm[i] = kabs[i] * ph - cdouble(0.0, 1.0) * vt;
      } else {
        cp[i] = ph;
        cm[i] = vt;
      }
    }
    out.p[0] = halves.first.data;
    out.q[0] = halves.second.data;
    for (long i = 0; i < sz; ++i)
      out.phi[0][i] = kabs[i] > 0.0 ? (cp[i] + cm[i]) * (0.5 / kabs[i]) : cp[i];

    const cdouble img(0.0, 1.0);
    for (int j = 0; j < n_t; ++j) {
      for (long i = 0; i < sz; ++i) {
        const cdouble e = e_step[i];
        const Duo& d = duo[i];
        for (int c = 0; c < 4; ++c) {
          const long idx = c * sz + i;
          cdouble gp0 = 0.0, gp1 = 0.0, gq0 = 0.0, gq1 = 0.0;
          if (src) {
            gp0 = img * src->fp[j][idx];
            gp1 = img * src->fp[j + 1][idx];
            gq0 = img * src->fq[j][idx];
            gq1 = img * src->fq[j + 1][idx];
          }
          out.p[j + 1][idx] =
              e * out.p[j][idx] + d.p1 * gp0 + d.p2 * (gp1 - gp0);
          out.q[j + 1][idx] = std::conj(e) * out.q[j][idx] + std::conj(d.p1) * gq0 +
                              std::conj(d.p2) * (gq1 - gq0);
        }
        cdouble g0 = 0.0, g1 = 0.0;
        if (src) {
          g0 = src->g[j][i];
          g1 = src->g[j + 1][i];
        }
        if (kabs[i] > 0.0) {
          const cdouble sp0 = img * g0, sp1 = img * g1;
          cp[i] = e_step[i] * cp[i] + duo[i].p1 * sp0 + duo[i].p2 * (sp1 - sp0);
          cm[i] = std::conj(e_step[i]) * cm[i] - std::conj(duo[i].p1) * sp0 -
                  std::conj(duo[i].p2) * (sp1 - sp0);
          out.phi[j + 1][i] = (cp[i] + cm[i]) * (0.5 / kabs[i]);
        } else {
          cp[i] += h * cm[i] + h * h * (g0 / 3.0 + g1 / 6.0);
          cm[i] += 0.5 * h * (g0 + g1);
          out.phi[j + 1][i] = cp[i];
        }
      }
    }
  };

  // sup over sample times of the combined iteration norm, optionally of a difference
  const auto combined_sup = [&](const Trail& a, const Trail* b) {
    const double vol = grid.volume();
    double worst = 0.0;
    for (int j = 0; j < nt1; ++j) {
      double sp = 0.0, sq = 0.0, sf = 0.0;
      for (long i = 0; i < sz; ++i) {
        for (int c = 0; c < 4; ++c) {
          const long idx = c * sz + i;
          sp += wt_psi[i] * std::norm(b ? a.p[j][idx] - b->p[j][idx] : a.p[j][idx]);
          sq += wt_psi[i] * std::norm(b ? a.q[j][idx] - b->q[j][idx] : a.q[j][idx]);
        }
        sf += wt_phi[i] * std::norm(b ? a.phi[j][i] - b->phi[j][i] : a.phi[j][i]);
      }
      worst = std::max(worst,
                       std::sqrt(vol * sp) + std::sqrt(vol * sq) + std::sqrt(vol * sf));
    }
    return worst;
  };

  PicardReport report;
  report.T = cfg.T;
  report.n_t = n_t;
  report.eps = eps;

  Trail prev{alloc(4), alloc(4), alloc(1)};
  Trail next{alloc(4), alloc(4), alloc(1)};
  Sources src{alloc(4), alloc(4), alloc(1)};
  const double vol = grid.volume();

  run_iterate(nullptr, prev);
  IterationRecord rec0;
  rec0.k = 0;
  rec0.psi_plus_norm = sup_norm(prev.p, nullptr, wt_psi, vol, 4);
  rec0.psi_minus_norm = sup_norm(prev.q, nullptr, wt_psi, vol, 4);
  rec0.phi_norm = sup_norm(prev.phi, nullptr, wt_phi, vol, 1);
  rec0.diff_norm = combined_sup(prev, nullptr);
  report.records.push_back(rec0);

  int growth_streak = 0;
  for (int k = 1; k <= k_max; ++k) {
    build_sources(prev, src);
    run_iterate(&src, next);

    IterationRecord rec;
    rec.k = k;
    rec.psi_plus_norm = sup_norm(next.p, nullptr, wt_psi, vol, 4);
    rec.psi_minus_norm = sup_norm(next.q, nullptr, wt_psi, vol, 4);
    rec.phi_norm = sup_norm(next.phi, nullptr, wt_phi, vol, 1);
    rec.diff_norm = combined_sup(next, &prev);
    report.records.push_back(rec);

    if (rec.diff_norm > report.records[k - 1].diff_norm)
      ++growth_streak;
    else
      growth_streak = 0;
    if (growth_streak >= 3) {
      report.non_contraction = true;
      std::ostringstream os;
      os << "diff_norm grew for 3 consecutive iterates (last " << rec.diff_norm << ")";
      report.message = os.str();
      return report;
    }
    std::swap(prev, next);
  }
  return report;
}

}  // namespace dkg
