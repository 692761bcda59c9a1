#include "dkg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>

#include "dkg/spinor_algebra.hpp"

namespace dkg {

namespace {

// Entire-function helpers e^z, (e^z-1)/z, (e^z-1-z)/z^2, (e^z-1-z-z^2/2)/z^3.
struct PhiSet {
  cdouble e, p1, p2, p3;
};

PhiSet phi_funcs(cdouble z) {
  PhiSet r;
  r.e = std::exp(z);
  if (std::abs(z) < 0.5) {
    // series for p3, then the recurrence p_j = z p_{j+1} + 1/j!
    cdouble term(1.0 / 6.0, 0.0);
    cdouble sum = term;
    for (int n = 1; n < 24; ++n) {
      term *= z / static_cast<double>(n + 3);
      sum += term;
      if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    r.p3 = sum;
    r.p2 = z * r.p3 + 0.5;
    r.p1 = z * r.p2 + 1.0;
  } else {
    const cdouble z2 = z * z;
    r.p1 = (r.e - 1.0) / z;
    r.p2 = (r.e - 1.0 - z) / z2;
    r.p3 = (r.e - 1.0 - z - 0.5 * z2) / (z2 * z);
  }
  return r;
}

const std::array<double, 4> kBetaSign = {1.0, 1.0, -1.0, -1.0};

double max_frequency(const Grid3& g) {
  const double axis = g.freq_step() * (g.n / 2);
  return axis * std::sqrt(3.0);
}

std::array<cdouble, 4> gather(const std::vector<cdouble>& v, long sz, long i) {
  return {v[i], v[sz + i], v[2 * sz + i], v[3 * sz + i]};
}

double quad_charge(const Grid3& g, const std::vector<cdouble>& p,
                   const std::vector<cdouble>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::norm(p[i] + q[i]);
  return g.volume() * s;
}

}  // namespace

Integrator integrator_from_name(const std::string& name) {
  if (name == "etd_rk4") return Integrator::etd_rk4;
  if (name == "strang") return Integrator::strang;
  throw std::invalid_argument("unknown integrator '" + name +
                              "' (expected etd_rk4 or strang)");
}

std::string integrator_name(Integrator it) {
  return it == Integrator::etd_rk4 ? "etd_rk4" : "strang";
}

void validate_config(const SolverConfig& cfg, const Grid3& grid) {
  if (cfg.M < 0 || cfg.m < 0) throw std::invalid_argument("masses must be nonnegative");
  if (cfg.g < 0) throw std::invalid_argument("coupling must be nonnegative");
  if (!(cfg.dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(cfg.T > 0)) throw std::invalid_argument("T must be positive");
  const double kmax = max_frequency(grid);
  const double wmax = std::sqrt(kmax * kmax + cfg.m * cfg.m);
  if (cfg.dt * wmax > 1.0) {
    std::ostringstream os;
    os << "dt " << cfg.dt << " under-resolves the fastest linear frequency " << wmax
       << " (need dt * w_max <= 1)";
    throw std::invalid_argument(os.str());
  }
}

std::pair<Field, Field> split_data(const Field& psi0) {
  if (psi0.ncomp != 4) throw std::invalid_argument("split_data needs a spinor field");
  Field freq = psi0.space == Space::frequency ? psi0 : to_frequency(psi0);
  Field plus = project_field(freq, Sign::plus);
  Field minus = freq;
  for (std::size_t i = 0; i < minus.data.size(); ++i) minus.data[i] -= plus.data[i];
  return {std::move(plus), std::move(minus)};
}

DKGState make_state(const Field& psi0, const ScalarState& scalar0, const SolverConfig& cfg) {
  if (!(psi0.grid == scalar0.grid))
    throw std::invalid_argument("spinor and scalar data live on different grids");
  Field freq = psi0.space == Space::frequency ? psi0 : to_frequency(psi0);
  DKGState st;
  st.t = 0.0;
  st.scalar = scalar0;
  if (cfg.dealias) {
    dealias(freq);
    const Grid3& g = scalar0.grid;
    Field sc(g, Space::physical, 2);
    const long sz = g.size();
    for (long i = 0; i < sz; ++i) {
      sc.data[i] = scalar0.phi[i];
      sc.data[sz + i] = scalar0.phi_t[i];
    }
    transform(sc, FftDir::forward);
    dealias(sc);
    transform(sc, FftDir::inverse);
    for (long i = 0; i < sz; ++i) {
      st.scalar.phi[i] = sc.data[i].real();
      st.scalar.phi_t[i] = sc.data[sz + i].real();
    }
  }
  auto halves = split_data(freq);
  st.psi_plus = std::move(halves.first);
  st.psi_minus = std::move(halves.second);
  return st;
}

Field total_spinor(const DKGState& st) {
  Field sum = st.psi_plus.space == Space::frequency ? st.psi_plus
                                                    : to_frequency(st.psi_plus);
  Field minus = st.psi_minus.space == Space::frequency ? st.psi_minus
                                                       : to_frequency(st.psi_minus);
  for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += minus.data[i];
  return sum;
}

Field dirac_rhs(Sign s, const DKGState& st, const SolverConfig& cfg) {
  const Grid3& g = st.psi_plus.grid;
  const long sz = g.size();

  Field psi_phys = to_physical(total_spinor(st));
  Field prod = Field::spinor(g, Space::physical);
  for (long i = 0; i < sz; ++i) {
    const cdouble phi(st.scalar.phi[i], 0.0);
    for (int c = 0; c < 4; ++c)
      prod.at(c, i) = kBetaSign[c] * phi * psi_phys.at(c, i);
  }
  transform(prod, FftDir::forward);
  if (cfg.dealias) dealias(prod);

  const Field& other = s == Sign::plus ? st.psi_minus : st.psi_plus;
  Field out = Field::spinor(g, Space::frequency);
  for_each_mode(g, [&](int ix, int iy, int iz, long i) {
    const Matrix4 pr = projection(s, g.frequency(ix, iy, iz));
    const std::array<cdouble, 4> chi = {prod.at(0, i), prod.at(1, i), prod.at(2, i),
                                        prod.at(3, i)};
    const std::array<cdouble, 4> proj = pr * chi;
    for (int c = 0; c < 4; ++c)
      out.at(c, i) = -cfg.M * kBetaSign[c] * other.at(c, i) + cfg.g * proj[c];
  });
  return out;
}

std::vector<double> kg_rhs(const DKGState& st, const SolverConfig& cfg) {
  const Grid3& g = st.psi_plus.grid;
  Field psi_phys = to_physical(total_spinor(st));
  std::vector<double> out(static_cast<std::size_t>(g.size()));
  for (long i = 0; i < g.size(); ++i)
    out[i] = cfg.g * ((std::norm(psi_phys.at(0, i)) - std::norm(psi_phys.at(3, i))) +
                      (std::norm(psi_phys.at(1, i)) - std::norm(psi_phys.at(2, i))));
  return out;
}

double charge(const Field& psi) {
  double s = 0.0;
  for (const cdouble& v : psi.data) s += std::norm(v);
  return psi.space == Space::physical ? psi.grid.cell_volume() * s : psi.grid.volume() * s;
}

std::vector<double> density(const Field& psi) {
  if (psi.ncomp != 4) throw std::invalid_argument("density needs a spinor field");
  Field phys = psi.space == Space::physical ? psi : to_physical(psi);
  std::vector<double> out(static_cast<std::size_t>(phys.grid.size()));
  for (long i = 0; i < phys.grid.size(); ++i)
    out[i] = (std::norm(phys.at(0, i)) - std::norm(phys.at(3, i))) +
             (std::norm(phys.at(1, i)) - std::norm(phys.at(2, i)));
  return out;
}

namespace {

double energy_impl(const DKGState& st, const SolverConfig& cfg, double sgn) {
  const Grid3& g = st.psi_plus.grid;
  const long sz = g.size();

  const Field psi_freq = total_spinor(st);
  const Field psi_phys = to_physical(psi_freq);

  // Im(psi^dag alpha^j d_j psi) accumulated over the three directions
  std::vector<double> kinetic(static_cast<std::size_t>(sz), 0.0);
  for (int j = 0; j < 3; ++j) {
    Field deriv = psi_freq;
    for_each_mode(g, [&](int ix, int iy, int iz, long i) {
      const Vec3 k = g.frequency(ix, iy, iz);
      const double kj = j == 0 ? k.x : (j == 1 ? k.y : k.z);
      const cdouble factor(0.0, kj);
      for (int c = 0; c < 4; ++c) deriv.at(c, i) *= factor;
    });
    transform(deriv, FftDir::inverse);
    const Matrix4 alpha = alpha_matrix(j + 1);
    for (long i = 0; i < sz; ++i) {
      const std::array<cdouble, 4> w =
          alpha * gather(deriv.data, sz, i);
      cdouble dot = 0.0;
      for (int c = 0; c < 4; ++c) dot += std::conj(psi_phys.at(c, i)) * w[c];
      kinetic[i] += dot.imag();
    }
  }

  // |grad phi|^2 by spectral differentiation of the scalar
  Field phi_freq = Field::scalar(g, Space::physical);
  for (long i = 0; i < sz; ++i) phi_freq.data[i] = st.scalar.phi[i];
  transform(phi_freq, FftDir::forward);
  std::vector<double> grad2(static_cast<std::size_t>(sz), 0.0);
  for (int j = 0; j < 3; ++j) {
    Field deriv = phi_freq;
    for_each_mode(g, [&](int ix, int iy, int iz, long i) {
      const Vec3 k = g.frequency(ix, iy, iz);
      const double kj = j == 0 ? k.x : (j == 1 ? k.y : k.z);
      deriv.data[i] *= cdouble(0.0, kj);
    });
    transform(deriv, FftDir::inverse);
    for (long i = 0; i < sz; ++i) grad2[i] += std::norm(deriv.data[i]);
  }

  double total = 0.0;
  for (long i = 0; i < sz; ++i) {
    const double rho = (std::norm(psi_phys.at(0, i)) - std::norm(psi_phys.at(3, i))) +
                       (std::norm(psi_phys.at(1, i)) - std::norm(psi_phys.at(2, i)));
    const double phi = st.scalar.phi[i];
    const double v = st.scalar.phi_t[i];
    const double kg = 0.5 * (v * v + grad2[i] + cfg.m * cfg.m * phi * phi);
    total += kinetic[i] + sgn * ((cfg.M - cfg.g * phi) * rho + kg);
  }
  return g.cell_volume() * total;
}

}  // namespace

double energy(const DKGState& st, const SolverConfig& cfg) {
  return energy_impl(st, cfg, -1.0);
}

double invariant_energy(const DKGState& st, const SolverConfig& cfg) {
  return energy_impl(st, cfg, 1.0);
}

Stepper::Stepper(const Grid3& grid, const SolverConfig& cfg) : grid_(grid), cfg_(cfg) {
  validate_config(cfg, grid);
  const long sz = grid.size();
  const double h = cfg.dt;

  kabs_.resize(sz);
  omega_.resize(sz);
  mask_.assign(sz, 1);
  sp_e_.resize(sz);
  sp_e2_.resize(sz);
  sp_h_.resize(sz);
  sp_fa_.resize(sz);
  sp_fb_.resize(sz);
  sp_fc_.resize(sz);
  sc_e_.resize(sz);
  sc_e2_.resize(sz);
  sc_h_.resize(sz);
  sc_fa_.resize(sz);
  sc_fb_.resize(sz);
  sc_fc_.resize(sz);
  proj_plus_.resize(sz);

  const int band = grid.dealias_band();
  for_each_mode(grid, [&](int ix, int iy, int iz, long i) {
    const Vec3 k = grid.frequency(ix, iy, iz);
    kabs_[i] = norm(k);
    omega_[i] = std::sqrt(kabs_[i] * kabs_[i] + cfg.m * cfg.m);
    if (cfg.dealias && !grid.in_band(ix, iy, iz, band)) mask_[i] = 0;
    proj_plus_[i] = projection(Sign::plus, k);

    const auto fill = [h](double lam, cdouble* e, cdouble* e2, cdouble* hh, cdouble* fa,
                          cdouble* fb, cdouble* fc) {
      const cdouble z(0.0, -h * lam);
      const PhiSet full = phi_funcs(z);
      const PhiSet half = phi_funcs(0.5 * z);
      *e = full.e;
      *e2 = half.e;
      *hh = 0.5 * h * half.p1;
      *fa = h * (full.p1 - 3.0 * full.p2 + 4.0 * full.p3);
      *fb = h * (full.p2 - 2.0 * full.p3);
      *fc = h * (4.0 * full.p3 - full.p2);
    };
    fill(kabs_[i], &sp_e_[i], &sp_e2_[i], &sp_h_[i], &sp_fa_[i], &sp_fb_[i], &sp_fc_[i]);
    fill(omega_[i], &sc_e_[i], &sc_e2_[i], &sc_h_[i], &sc_fa_[i], &sc_fb_[i], &sc_fc_[i]);
  });

  const auto quad = [sz]() {
    Quad q;
    q.p.resize(4 * sz);
    q.q.resize(4 * sz);
    q.a.resize(sz);
    q.b.resize(sz);
    return q;
  };
  n1_ = quad();
  n2_ = quad();
  n3_ = quad();
  n4_ = quad();
  ua_ = quad();
  ub_ = quad();
  uc_ = quad();
  buf_spinor_.resize(4 * sz);
  buf_scalar_.resize(sz);
  prod_.resize(4 * sz);
}

void Stepper::eval_sources(const Quad& u, Quad& out) {
  const long sz = grid_.size();
  const int n = grid_.n;

  // physical psi = psi_+ + psi_-
  for (long j = 0; j < 4 * sz; ++j) buf_spinor_[j] = u.p[j] + u.q[j];
  dft3(buf_spinor_.data(), n, 4, FftDir::inverse);

  // physical phi recovered from the characteristic variables
  for (long i = 0; i < sz; ++i)
    buf_scalar_[i] = omega_[i] > 0.0 ? (u.a[i] + u.b[i]) * (0.5 / omega_[i]) : u.a[i];
  dft3(buf_scalar_.data(), n, 1, FftDir::inverse);

  for (long i = 0; i < sz; ++i) {
    const cdouble phi = buf_scalar_[i];
    for (int c = 0; c < 4; ++c)
      prod_[c * sz + i] = kBetaSign[c] * phi * buf_spinor_[c * sz + i];
  }

  // scalar source g <beta psi, psi>, real by construction
  for (long i = 0; i < sz; ++i) {
    const double rho =
        (std::norm(buf_spinor_[i]) - std::norm(buf_spinor_[3 * sz + i])) +
        (std::norm(buf_spinor_[sz + i]) - std::norm(buf_spinor_[2 * sz + i]));
    buf_scalar_[i] = cfg_.g * rho;
  }

  dft3(prod_.data(), n, 4, FftDir::forward);
  dft3(buf_scalar_.data(), n, 1, FftDir::forward);
  if (cfg_.dealias) {
    for (long i = 0; i < sz; ++i) {
      if (mask_[i]) continue;
      buf_scalar_[i] = 0.0;
      for (int c = 0; c < 4; ++c) prod_[c * sz + i] = 0.0;
    }
  }

  const cdouble img(0.0, 1.0);
  for (long i = 0; i < sz; ++i) {
    const std::array<cdouble, 4> chi = gather(prod_, sz, i);
    const std::array<cdouble, 4> pv = proj_plus_[i] * chi;
    for (int c = 0; c < 4; ++c) {
      const double bs = kBetaSign[c];
      out.p[c * sz + i] =
          img * (-cfg_.M * bs * u.q[c * sz + i] + cfg_.g * pv[c]);
      out.q[c * sz + i] =
          img * (-cfg_.M * bs * u.p[c * sz + i] + cfg_.g * (chi[c] - pv[c]));
    }
    if (omega_[i] > 0.0) {
      out.a[i] = img * buf_scalar_[i];
      out.b[i] = -img * buf_scalar_[i];
    } else {
      // degenerate mode holds (phi, dt phi) directly; source vector is (0, S)
      out.a[i] = 0.0;
      out.b[i] = buf_scalar_[i];
    }
  }
}

void Stepper::etd_step(Quad& u) {
  const long sz = grid_.size();
  const double h = cfg_.dt;

  // dst = E2 * base + H * (w1 s1 + w2 s2), kind by kind
  const auto stage = [&](const Quad& base, const Quad& s1, double w1, const Quad& s2,
                         double w2, Quad& dst) {
    for (long i = 0; i < sz; ++i) {
      const cdouble e2 = sp_e2_[i];
      const cdouble hh = sp_h_[i];
      for (int c = 0; c < 4; ++c) {
        const long j = c * sz + i;
        dst.p[j] = e2 * base.p[j] + hh * (w1 * s1.p[j] + w2 * s2.p[j]);
        dst.q[j] = std::conj(e2) * base.q[j] + std::conj(hh) * (w1 * s1.q[j] + w2 * s2.q[j]);
      }
      if (omega_[i] > 0.0) {
        const cdouble se2 = sc_e2_[i];
        const cdouble sh = sc_h_[i];
        dst.a[i] = se2 * base.a[i] + sh * (w1 * s1.a[i] + w2 * s2.a[i]);
        dst.b[i] = std::conj(se2) * base.b[i] + std::conj(sh) * (w1 * s1.b[i] + w2 * s2.b[i]);
      } else {
        const cdouble src = w1 * s1.b[i] + w2 * s2.b[i];
        dst.a[i] = base.a[i] + 0.5 * h * base.b[i] + 0.125 * h * h * src;
        dst.b[i] = base.b[i] + 0.5 * h * src;
      }
    }
  };

  eval_sources(u, n1_);
  stage(u, n1_, 1.0, n1_, 0.0, ua_);
  eval_sources(ua_, n2_);
  stage(u, n2_, 1.0, n2_, 0.0, ub_);
  eval_sources(ub_, n3_);
  stage(ua_, n3_, 2.0, n1_, -1.0, uc_);
  eval_sources(uc_, n4_);

  for (long i = 0; i < sz; ++i) {
    for (int c = 0; c < 4; ++c) {
      const long j = c * sz + i;
      u.p[j] = sp_e_[i] * u.p[j] + sp_fa_[i] * n1_.p[j] +
               2.0 * sp_fb_[i] * (n2_.p[j] + n3_.p[j]) + sp_fc_[i] * n4_.p[j];
      u.q[j] = std::conj(sp_e_[i]) * u.q[j] + std::conj(sp_fa_[i]) * n1_.q[j] +
               2.0 * std::conj(sp_fb_[i]) * (n2_.q[j] + n3_.q[j]) +
               std::conj(sp_fc_[i]) * n4_.q[j];
    }
    if (omega_[i] > 0.0) {
      u.a[i] = sc_e_[i] * u.a[i] + sc_fa_[i] * n1_.a[i] +
               2.0 * sc_fb_[i] * (n2_.a[i] + n3_.a[i]) + sc_fc_[i] * n4_.a[i];
      u.b[i] = std::conj(sc_e_[i]) * u.b[i] + std::conj(sc_fa_[i]) * n1_.b[i] +
               2.0 * std::conj(sc_fb_[i]) * (n2_.b[i] + n3_.b[i]) +
               std::conj(sc_fc_[i]) * n4_.b[i];
    } else {
      const cdouble s1 = n1_.b[i], s2 = n2_.b[i], s3 = n3_.b[i], s4 = n4_.b[i];
      const cdouble phi_new =
          u.a[i] + h * u.b[i] + (h * h / 6.0) * (s1 + s2 + s3);
      u.b[i] += (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
      u.a[i] = phi_new;
    }
  }
}

void Stepper::strang_step(Quad& u) {
  const long sz = grid_.size();
  const double h = cfg_.dt;

  const auto half_linear = [&]() {
    for (long i = 0; i < sz; ++i) {
      const cdouble e2 = sp_e2_[i];
      for (int c = 0; c < 4; ++c) {
        const long j = c * sz + i;
        u.p[j] *= e2;
        u.q[j] *= std::conj(e2);
      }
      if (omega_[i] > 0.0) {
        u.a[i] *= sc_e2_[i];
        u.b[i] *= std::conj(sc_e2_[i]);
      } else {
        u.a[i] += 0.5 * h * u.b[i];
      }
    }
  };

  const auto add_scaled = [&](const Quad& base, const Quad& src, double w, Quad& dst) {
    for (long j = 0; j < 4 * sz; ++j) {
      dst.p[j] = base.p[j] + w * src.p[j];
      dst.q[j] = base.q[j] + w * src.q[j];
    }
    for (long i = 0; i < sz; ++i) {
      dst.a[i] = base.a[i] + w * src.a[i];
      dst.b[i] = base.b[i] + w * src.b[i];
    }
  };

  half_linear();
  eval_sources(u, n1_);
  add_scaled(u, n1_, 0.5 * h, ua_);
  eval_sources(ua_, n2_);
  add_scaled(u, n2_, h, u);
  half_linear();
}

void Stepper::advance(DKGState& st) {
  const long sz = grid_.size();
  if (st.psi_plus.space != Space::frequency) transform(st.psi_plus, FftDir::forward);
  if (st.psi_minus.space != Space::frequency) transform(st.psi_minus, FftDir::forward);

  Quad u;
  u.p = st.psi_plus.data;
  u.q = st.psi_minus.data;
  u.a.resize(sz);
  u.b.resize(sz);

  // scalar pair to frequency space, then to characteristic variables
  Field sc(grid_, Space::physical, 2);
  for (long i = 0; i < sz; ++i) {
    sc.data[i] = st.scalar.phi[i];
    sc.data[sz + i] = st.scalar.phi_t[i];
  }
  transform(sc, FftDir::forward);
  for (long i = 0; i < sz; ++i) {
    const cdouble ph = sc.data[i];
    const cdouble v = sc.data[sz + i];
    if (omega_[i] > 0.0) {
      u.a[i] = omega_[i] * ph + cdouble(0.0, 1.0) * v;
      u.b[i] = omega_[i] * ph - cdouble(0.0, 1.0) * v;
    } else {
      u.a[i] = ph;
      u.b[i] = v;
    }
  }

  if (cfg_.integrator == Integrator::etd_rk4)
    etd_step(u);
  else
    strang_step(u);

  st.psi_plus.data = std::move(u.p);
  st.psi_minus.data = std::move(u.q);
  for (long i = 0; i < sz; ++i) {
    if (omega_[i] > 0.0) {
      sc.data[i] = (u.a[i] + u.b[i]) * (0.5 / omega_[i]);
      sc.data[sz + i] = cdouble(0.0, -0.5) * (u.a[i] - u.b[i]);
    } else {
      sc.data[i] = u.a[i];
      sc.data[sz + i] = u.b[i];
    }
  }
  transform(sc, FftDir::inverse);
  for (long i = 0; i < sz; ++i) {
    st.scalar.phi[i] = sc.data[i].real();
    st.scalar.phi_t[i] = sc.data[sz + i].real();
  }
  st.t += cfg_.dt;
}

DKGState step(const DKGState& st, const SolverConfig& cfg) {
  Stepper stepper(st.psi_plus.grid, cfg);
  DKGState next = st;
  stepper.advance(next);
  return next;
}

SampleRecord sample_state(const DKGState& st, const SolverConfig& cfg) {
  SampleRecord rec;
  rec.t = st.t;
  const Field sum = total_spinor(st);
  rec.charge = charge(sum);
  rec.energy = energy(st, cfg);
  const std::vector<double> rho = density(sum);
  const auto mm = std::minmax_element(rho.begin(), rho.end());
  rec.density_min = *mm.first;
  rec.density_max = *mm.second;
  rec.psi_plus_h1 = sobolev_norm(st.psi_plus, 1.0);
  rec.psi_minus_h1 = sobolev_norm(st.psi_minus, 1.0);
  rec.phi_h1 = sobolev_norm(st.scalar, 1.0);
  double vt = 0.0;
  for (double v : st.scalar.phi_t) vt += v * v;
  rec.phi_t_l2 = std::sqrt(st.scalar.grid.cell_volume() * vt);
  return rec;
}

namespace {

bool state_healthy(const DKGState& st, double q0, double* q_out) {
  const double q = quad_charge(st.psi_plus.grid, st.psi_plus.data, st.psi_minus.data);
  if (q_out) *q_out = q;
  if (!std::isfinite(q)) return false;
  if (q0 > 0.0 && q > 1e6 * q0) return false;
  double s = 0.0;
  for (double v : st.scalar.phi) s += v * v;
  for (double v : st.scalar.phi_t) s += v * v;
  return std::isfinite(s);
}

}  // namespace

Trajectory solve(const SolverConfig& cfg, const Field& psi0, const ScalarState& scalar0,
                 int sample_stride) {
  const Grid3 grid = psi0.grid;
  Stepper stepper(grid, cfg);

  const long steps = std::max<long>(1, std::lround(cfg.T / cfg.dt));
  if (sample_stride <= 0)
    sample_stride = static_cast<int>(std::max<long>(1, steps / 100));

  Trajectory traj;
  DKGState st = make_state(psi0, scalar0, cfg);
  const double t0 = st.t;
  double q0 = 0.0;
  if (!state_healthy(st, 0.0, &q0)) {
    traj.blow_up = true;
    traj.message = "initial data is not finite";
    traj.final_state = std::move(st);
    return traj;
  }
  traj.records.push_back(sample_state(st, cfg));

  DKGState healthy = st;
  for (long j = 1; j <= steps; ++j) {
    stepper.advance(st);
    st.t = t0 + static_cast<double>(j) * cfg.dt;
    double q = 0.0;
    if (!state_healthy(st, q0, &q)) {
      traj.blow_up = true;
      std::ostringstream os;
      os << "blow-up detected at t = " << st.t << " (charge " << q << ", initial " << q0
         << "); returning the last healthy state";
      traj.message = os.str();
      traj.final_state = std::move(healthy);
      return traj;
    }
    healthy = st;
    if (j % sample_stride == 0 || j == steps)
      traj.records.push_back(sample_state(st, cfg));
  }
  traj.final_state = std::move(st);
  return traj;
}

ScalingReport scaling_check(const SolverConfig& cfg, const Field& psi0,
                            const ScalarState& scalar0, double l_factor) {
  if (cfg.M != 0.0 || cfg.m != 0.0)
    throw std::invalid_argument("scaling_check requires the massless system M = m = 0");
  if (!(l_factor > 0))
    throw std::invalid_argument("scaling factor must be positive");

  const Grid3 grid = psi0.grid;
  const long steps = std::max<long>(1, std::lround(cfg.T / cfg.dt));

  const auto run = [steps](const SolverConfig& c, const Field& sp, const ScalarState& sc) {
    Stepper stepper(sp.grid, c);
    DKGState st = make_state(sp, sc, c);
    for (long j = 1; j <= steps; ++j) stepper.advance(st);
    return st;
  };

  const DKGState base = run(cfg, psi0, scalar0);

  const Grid3 grid2(grid.n, l_factor * grid.L);
  const double s_psi = std::pow(l_factor, -1.5);
  const double s_phi = 1.0 / l_factor;
  const double s_v = s_phi / l_factor;

  Field psi_phys = psi0.space == Space::physical ? psi0 : to_physical(psi0);
  Field psi_scaled(grid2, Space::physical, 4);
  for (std::size_t i = 0; i < psi_phys.data.size(); ++i)
    psi_scaled.data[i] = s_psi * psi_phys.data[i];
  ScalarState sc_scaled(grid2);
  for (long i = 0; i < grid.size(); ++i) {
    sc_scaled.phi[i] = s_phi * scalar0.phi[i];
    sc_scaled.phi_t[i] = s_v * scalar0.phi_t[i];
  }
  SolverConfig cfg2 = cfg;
  cfg2.dt = l_factor * cfg.dt;
  cfg2.T = l_factor * cfg.T;

  const DKGState scaled = run(cfg2, psi_scaled, sc_scaled);

  const auto rel_complex = [](const std::vector<cdouble>& got,
                              const std::vector<cdouble>& want, double scale) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      num += std::norm(got[i] - scale * want[i]);
      den += std::norm(scale * want[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  };
  const auto rel_real = [](const std::vector<double>& got, const std::vector<double>& want,
                           double scale) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      const double d = got[i] - scale * want[i];
      num += d * d;
      den += scale * want[i] * scale * want[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  };

  ScalingReport rep;
  rep.l_factor = l_factor;
  rep.base_time = static_cast<double>(steps) * cfg.dt;
  rep.scaled_time = static_cast<double>(steps) * cfg2.dt;
  rep.steps = static_cast<int>(steps);
  rep.discrepancy = std::max(
      {rel_complex(scaled.psi_plus.data, base.psi_plus.data, s_psi),
       rel_complex(scaled.psi_minus.data, base.psi_minus.data, s_psi),
       rel_real(scaled.scalar.phi, base.scalar.phi, s_phi),
       rel_real(scaled.scalar.phi_t, base.scalar.phi_t, s_v)});
  return rep;
}

}  // namespace dkg
