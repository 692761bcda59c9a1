#include "dkg/spinor_algebra.hpp"

#include <Eigen/Dense>
#include <random>
#include <stdexcept>

namespace dkg {

Matrix2 pauli(int j) {
  Matrix2 s;
  switch (j) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -iu;
      s(1, 0) = iu;
      break;
    case 3:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

namespace {

Matrix2 id2() {
  Matrix2 m;
  m(0, 0) = m(1, 1) = 1.0;
  return m;
}

Matrix2 neg(const Matrix2& a) {
  Matrix2 r;
  for (int i = 0; i < 4; ++i) r.e[i] = -a.e[i];
  return r;
}

}  // namespace

Matrix4 gamma_matrix(int mu) {
  const Matrix2 z{};
  if (mu == 0) return from_blocks(id2(), z, z, neg(id2()));
  if (mu >= 1 && mu <= 3) {
    const Matrix2 s = pauli(mu);
    return from_blocks(z, s, neg(s), z);
  }
  throw std::invalid_argument("gamma_matrix: index must be 0..3");
}

Matrix4 beta_matrix() { return gamma_matrix(0); }

Matrix4 alpha_matrix(int j) {
  if (j < 1 || j > 3) throw std::invalid_argument("alpha_matrix: index must be 1..3");
  const Matrix2 s = pauli(j);
  return from_blocks(Matrix2{}, s, s, Matrix2{});
}

Matrix4 spin_matrix(int m) {
  if (m < 1 || m > 3) throw std::invalid_argument("spin_matrix: index must be 1..3");
  const Matrix2 s = pauli(m);
  return from_blocks(s, Matrix2{}, Matrix2{}, s);
}

Matrix4 basis_matrix(const std::string& kind, int index) {
  if (kind == "gamma") return gamma_matrix(index);
  if (kind == "alpha") return alpha_matrix(index);
  if (kind == "spin") return spin_matrix(index);
  if (kind == "beta") return beta_matrix();
  throw std::invalid_argument("basis_matrix: unknown kind '" + kind + "'");
}

namespace {

Matrix4 vec_dot_alpha(const Vec3& v) {
  Matrix4 m;
  for (int j = 1; j <= 3; ++j) {
    const double c = (j == 1) ? v.x : (j == 2) ? v.y : v.z;
    if (c == 0.0) continue;
    const Matrix4 a = alpha_matrix(j);
    for (int i = 0; i < 16; ++i) m.e[i] += c * a.e[i];
  }
  return m;
}

Matrix4 vec_dot_spin(const Vec3& v) {
  Matrix4 m;
  for (int j = 1; j <= 3; ++j) {
    const double c = (j == 1) ? v.x : (j == 2) ? v.y : v.z;
    if (c == 0.0) continue;
    const Matrix4 a = spin_matrix(j);
    for (int i = 0; i < 16; ++i) m.e[i] += c * a.e[i];
  }
  return m;
}

Vec3 normalized(const Vec3& v, const char* who) {
  const double n = norm(v);
  if (n == 0.0) throw std::domain_error(std::string(who) + ": zero frequency has no direction");
  return v * (1.0 / n);
}

}  // namespace

Matrix4 projection(Sign s, const Vec3& xi) {
  Matrix4 m = Matrix4::identity();
  if (!is_zero(xi)) {
    const Vec3 d = xi * (1.0 / norm(xi));
    const Matrix4 a = vec_dot_alpha(d);
    const double sg = sign_value(s);
    for (int i = 0; i < 16; ++i) m.e[i] += sg * a.e[i];
  }
  for (int i = 0; i < 16; ++i) m.e[i] *= 0.5;
  return m;
}

Matrix4 null_symbol(Sign s, const Vec3& eta, const Vec3& zeta) {
  if (is_zero(eta) || is_zero(zeta))
    throw std::domain_error("null_symbol: frequencies must be nonzero");
  return beta_matrix() * projection(flip(s), -zeta) * projection(Sign::plus, eta);
}

AngularParts angular_decomposition(const Vec3& xi, const Vec3& eta) {
  const Vec3 a = normalized(xi, "angular_decomposition");
  const Vec3 b = normalized(eta, "angular_decomposition");
  const double th = angle(a, b);
  const double sh = std::sin(0.5 * th);
  AngularParts p;
  p.scalar = 2.0 * sh * sh;  // 1 - cos(theta), evaluated stably
  p.rot = cross(a, b);
  p.disp = a - b;
  return p;
}

double operator_norm(const Matrix4& a) {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = a(i, j);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
  return svd.singularValues()(0);
}

namespace {

struct Checker {
  std::vector<IdentityCheck> items;

  void record(const std::string& name, double dev, bool exact) {
    for (auto& it : items) {
      if (it.name == name) {
        it.max_dev = std::max(it.max_dev, dev);
        return;
      }
    }
    items.push_back({name, dev, exact, false});
  }
};

Matrix4 anticommutator(const Matrix4& a, const Matrix4& b) { return a * b + b * a; }

void check_exact_identities(Checker& ck) {
  const Matrix4 id = Matrix4::identity();
  const Matrix4 beta = beta_matrix();

  for (int j = 1; j <= 3; ++j) {
    const Matrix4 aj = alpha_matrix(j);
    ck.record("alpha_square", max_abs_diff(aj * aj, id), true);
    ck.record("alpha_hermitian", max_abs_diff(aj, aj.adjoint()), true);
    ck.record("alpha_beta_anticommute", anticommutator(aj, beta).max_abs(), true);
    const Matrix4 sj = spin_matrix(j);
    ck.record("spin_square", max_abs_diff(sj * sj, id), true);
    ck.record("spin_hermitian", max_abs_diff(sj, sj.adjoint()), true);
    ck.record("alpha_from_gamma", max_abs_diff(aj, beta * gamma_matrix(j)), true);
  }
  ck.record("beta_square", max_abs_diff(beta * beta, id), true);
  ck.record("beta_hermitian", max_abs_diff(beta, beta.adjoint()), true);

  // alpha^j alpha^k = delta^{jk} I + i eps^{jkl} S^l
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      Matrix4 expect = (j == k) ? id : Matrix4::zero();
      const int l = 6 - j - k;
      if (j != k) {
        const double eps = ((j == 1 && k == 2) || (j == 2 && k == 3) || (j == 3 && k == 1))
                               ? 1.0
                               : -1.0;
        expect = expect + (iu * eps) * spin_matrix(l);
      }
      ck.record("alpha_product_spin",
                max_abs_diff(alpha_matrix(j) * alpha_matrix(k), expect), true);
      Matrix4 anti = anticommutator(alpha_matrix(j), alpha_matrix(k));
      if (j == k) anti = anti - (cdouble(2.0) * id);
      ck.record("alpha_anticommute", anti.max_abs(), true);
    }

  // gamma^mu gamma^nu + gamma^nu gamma^mu = 2 g^{mu nu} I, g = diag(1,-1,-1,-1)
  for (int mu = 0; mu <= 3; ++mu)
    for (int nu = 0; nu <= 3; ++nu) {
      Matrix4 anti = anticommutator(gamma_matrix(mu), gamma_matrix(nu));
      if (mu == nu) {
        const double g = (mu == 0) ? 1.0 : -1.0;
        anti = anti - (cdouble(2.0 * g) * id);
      }
      ck.record("gamma_anticommute", anti.max_abs(), true);
    }

  // S^m = i gamma^k gamma^l for cyclic (k, l, m)
  ck.record("spin_from_gamma",
            max_abs_diff(spin_matrix(3), iu * (gamma_matrix(1) * gamma_matrix(2))), true);
  ck.record("spin_from_gamma",
            max_abs_diff(spin_matrix(1), iu * (gamma_matrix(2) * gamma_matrix(3))), true);
  ck.record("spin_from_gamma",
            max_abs_diff(spin_matrix(2), iu * (gamma_matrix(3) * gamma_matrix(1))), true);
}

}  // namespace

AlgebraReport verify_algebra(std::uint64_t samples, std::uint64_t seed, double tol) {
  if (samples == 0) throw std::invalid_argument("verify_algebra: samples must be positive");

  Checker ck;
  check_exact_identities(ck);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> mag(0.1, 10.0);
  auto draw_dir = [&]() {
    while (true) {
      Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
      const double n = norm(v);
      if (n > 1e-6) return v * (1.0 / n);
    }
  };

  const Matrix4 id = Matrix4::identity();
  const Matrix4 beta = beta_matrix();

  for (std::uint64_t it = 0; it < samples; ++it) {
    const Vec3 d = draw_dir();
    const Vec3 xi = d * mag(rng);
    const Matrix4 pp = projection(Sign::plus, xi);
    const Matrix4 pm = projection(Sign::minus, xi);

    ck.record("projection_idempotent",
              std::max(max_abs_diff(pp * pp, pp), max_abs_diff(pm * pm, pm)), false);
    ck.record("projection_hermitian",
              std::max(max_abs_diff(pp, pp.adjoint()), max_abs_diff(pm, pm.adjoint())),
              false);
    ck.record("projection_orthogonal",
              std::max((pp * pm).max_abs(), (pm * pp).max_abs()), false);
    ck.record("projection_complete", max_abs_diff(pp + pm, id), false);
    ck.record("projection_trace",
              std::max(std::abs(pp.trace() - 2.0), std::abs(pm.trace() - 2.0)), false);
    ck.record("projection_reflection", max_abs_diff(projection(Sign::plus, -xi), pm),
              false);
    ck.record("projection_scale_invariant",
              max_abs_diff(projection(Sign::plus, d), pp), false);
    ck.record("projection_beta_swap",
              std::max(max_abs_diff(pp * beta, beta * pm), max_abs_diff(pm * beta, beta * pp)),
              false);

    // alpha . xi = |xi| (P_+ - P_-), and (alpha . xi_hat) P_+- = +- P_+-
    const Matrix4 ax = vec_dot_alpha(xi);
    const double r = norm(xi);
    ck.record("dirac_symbol_split", max_abs_diff(ax, cdouble(r) * (pp - pm)), false);
    const Matrix4 axh = vec_dot_alpha(d);
    ck.record("projection_eigen",
              std::max(max_abs_diff(axh * pp, pp), max_abs_diff(axh * pm, -pm)), false);

    // parallel interactions annihilate the null symbol
    ck.record("null_symbol_parallel",
              std::max(null_symbol(Sign::plus, xi, -xi).max_abs(),
                       null_symbol(Sign::minus, xi, xi).max_abs()),
              false);

    const Vec3 eta = draw_dir() * mag(rng);
    const AngularParts ap = angular_decomposition(xi, eta);
    const Matrix4 recon = cdouble(0.25) * (cdouble(ap.scalar) * id - iu * vec_dot_spin(ap.rot) +
                                           vec_dot_alpha(ap.disp));
    ck.record("angular_reconstruction",
              max_abs_diff(recon, pp * projection(Sign::minus, eta)), false);
  }

  AlgebraReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.tol = tol;
  rep.exact_pass = true;
  rep.sampled_pass = true;
  for (auto& c : ck.items) {
    c.pass = c.max_dev <= tol;
    if (c.max_dev > rep.worst_dev) {
      rep.worst_dev = c.max_dev;
      rep.worst_name = c.name;
    }
    (c.exact ? rep.exact_pass : rep.sampled_pass) &= c.pass;
  }
  rep.checks = std::move(ck.items);
  rep.pass = rep.exact_pass && rep.sampled_pass;
  return rep;
}

}  // namespace dkg
