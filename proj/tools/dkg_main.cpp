#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dkg/config.hpp"
#include "dkg/estimates.hpp"
#include "dkg/fields.hpp"
#include "dkg/picard.hpp"
#include "dkg/report.hpp"
#include "dkg/snapshot.hpp"
#include "dkg/solver.hpp"
#include "dkg/spinor_algebra.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dkg;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitNonContraction = 4;

// Wall clock goes to stderr only; report bytes depend on the manifest alone.
class Timer {
 public:
  explicit Timer(const char* label) : label_(label) {}
  ~Timer() {
    const auto dt = std::chrono::steady_clock::now() - start_;
    std::fprintf(stderr, "timing: %s %.3f s\n", label_,
                 std::chrono::duration<double>(dt).count());
  }

 private:
  const char* label_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct CommonOpts {
  std::string out_dir = ".";
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<double> T, dt, g;
};

void add_out_and_seed(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out_dir, "output directory")
      ->envname("DKG_OUT_DIR")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "data seed (overrides the config file)");
}

void add_config_overrides(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--config", c.config_path, "configuration file (dotted key = value)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--n", c.n, "override grid.n");
  cmd->add_option("--T", c.T, "override time.T");
  cmd->add_option("--dt", c.dt, "override time.dt");
  cmd->add_option("--g", c.g, "override coupling.g");
}

RunConfig resolve_config(const CommonOpts& c) {
  RunConfig cfg;
  if (!c.config_path.empty()) {
    try {
      cfg = load_config(c.config_path);
    } catch (const ConfigError& e) {
      throw std::runtime_error(c.config_path + ": " + e.what());
    }
  }
  if (c.seed) cfg.seed = *c.seed;
  if (c.n) cfg.n = *c.n;
  if (c.T) cfg.solver.T = *c.T;
  if (c.dt) cfg.solver.dt = *c.dt;
  if (c.g) cfg.solver.g = *c.g;
  return cfg;
}

std::string out_path(const CommonOpts& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return (fs::path(c.out_dir) / name).string();
}

struct DataOpts {
  std::string kind = "random";  // random | chadam-glassey | zero
  double amplitude = 0.1;
  int band = 0;  // 0 picks n/4
};

void add_data_opts(CLI::App* cmd, DataOpts& d) {
  cmd->add_option("--data", d.kind, "initial data family")
      ->check(CLI::IsMember({"random", "chadam-glassey", "zero"}))
      ->capture_default_str();
  cmd->add_option("--amplitude", d.amplitude, "data amplitude")->capture_default_str();
  cmd->add_option("--band", d.band, "data band limit per axis (0 picks n/4)")
      ->capture_default_str();
}

int effective_band(const RunConfig& cfg, int band) {
  return band > 0 ? band : std::max(1, cfg.n / 4);
}

Field initial_spinor(const RunConfig& cfg, const DataOpts& d) {
  const Grid3 g = cfg.grid();
  if (d.kind == "zero") return Field::spinor(g);
  const int band = effective_band(cfg, d.band);
  if (d.kind == "chadam-glassey") return chadam_glassey_data(g, cfg.seed, band, d.amplitude);
  return random_spinor(g, cfg.seed, band, d.amplitude);
}

ScalarState initial_scalar(const RunConfig& cfg, const DataOpts& d) {
  const Grid3 g = cfg.grid();
  if (d.kind == "zero") return ScalarState(g);
  return random_scalar_state(g, cfg.seed + 1, effective_band(cfg, d.band), d.amplitude);
}

json probe_json(const ProbeReport& r) {
  json j{{"test", r.test_id},       {"n", r.n},
         {"n_t", r.n_t},            {"L", r.L},
         {"T_win", r.T_win},        {"samples", r.samples},
         {"seed", r.seed},          {"max_ratio", r.max_ratio},
         {"argmax_seed", r.argmax_seed}};
  if (!r.estimate_id.empty()) j["estimate"] = r.estimate_id;
  if (r.floor > 0.0) j["floor"] = r.floor;
  return j;
}

// ---------------------------------------------------------------------------

struct VerifyAlgebraOpts {
  CommonOpts common;
  std::uint64_t samples = 10000;
  double tol = 1e-12;
};

int run_verify_algebra(const VerifyAlgebraOpts& o) {
  Timer timer("verify-algebra");
  RunConfig cfg;
  if (o.common.seed) cfg.seed = *o.common.seed;

  const AlgebraReport rep = verify_algebra(o.samples, cfg.seed, o.tol);

  const std::string path = out_path(o.common, "algebra_report.json");
  RunManifest man{"verify-algebra", cfg, o.common.config_path, {path}};

  json checks = json::array();
  for (const IdentityCheck& ch : rep.checks)
    checks.push_back(
        {{"name", ch.name}, {"max_dev", ch.max_dev}, {"exact", ch.exact}, {"pass", ch.pass}});
  const json body{{"samples", rep.samples},         {"tol", rep.tol},
                  {"checks", checks},               {"worst_name", rep.worst_name},
                  {"worst_dev", rep.worst_dev},     {"exact_pass", rep.exact_pass},
                  {"sampled_pass", rep.sampled_pass}, {"pass", rep.pass}};
  write_text_file(path, render_report(man, body));

  std::printf("%zu identities over %llu directions; worst %s at %.3e\n", rep.checks.size(),
              static_cast<unsigned long long>(rep.samples), rep.worst_name.c_str(),
              rep.worst_dev);
  for (const IdentityCheck& ch : rep.checks)
    if (!ch.pass)
      std::printf("failed: %s (max dev %.3e, tol %g)\n", ch.name.c_str(), ch.max_dev,
                  ch.exact ? 0.0 : rep.tol);
  std::printf("report: %s\n", path.c_str());
  std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
  return rep.pass ? kExitPass : kExitVerification;
}

// ---------------------------------------------------------------------------

struct SolveOpts {
  CommonOpts common;
  DataOpts data;
  int stride = 0;
};

int run_solve(const SolveOpts& o) {
  Timer timer("solve");
  const RunConfig cfg = resolve_config(o.common);
  const Grid3 grid = cfg.grid();
  validate_config(cfg.solver, grid);

  const Field psi0 = initial_spinor(cfg, o.data);
  const ScalarState sc0 = initial_scalar(cfg, o.data);
  const Trajectory traj = solve(cfg.solver, psi0, sc0, o.stride);

  const std::string csv_path = out_path(o.common, "trajectory.csv");
  const std::string snap_path = out_path(o.common, "state.dkg1");
  const std::string rep_path = out_path(o.common, "run_report.json");
  RunManifest man{"solve", cfg, o.common.config_path, {rep_path, csv_path, snap_path}};

  write_text_file(csv_path, trajectory_csv(traj.records));
  write_snapshot(snap_path, to_physical(total_spinor(traj.final_state)),
                 traj.final_state.scalar);

  const double q0 = traj.records.front().charge;
  const double qf = traj.records.back().charge;
  const double drift = q0 > 0.0 ? std::abs(qf - q0) / q0 : std::abs(qf - q0);
  double dens = 0.0;
  for (const SampleRecord& r : traj.records)
    dens = std::max({dens, std::abs(r.density_min), std::abs(r.density_max)});
  const double dens_rel = q0 > 0.0 ? dens / q0 : dens;

  const json body{{"data",
                   {{"kind", o.data.kind},
                    {"amplitude", o.data.amplitude},
                    {"band", effective_band(cfg, o.data.band)}}},
                  {"summary",
                   {{"records", traj.records.size()},
                    {"final_t", traj.final_state.t},
                    {"charge_initial", q0},
                    {"charge_final", qf},
                    {"charge_drift_rel", drift},
                    {"density_max_abs", dens},
                    {"density_rel_charge", dens_rel},
                    {"blow_up", traj.blow_up},
                    {"message", traj.message}}}};
  write_text_file(rep_path, render_report(man, body));

  std::printf("evolved to t = %.17g in %zu samples\n", traj.final_state.t,
              traj.records.size());
  std::printf("final relative charge drift %.3e\n", drift);
  std::printf("density sup %.3e (%.3e relative to charge)\n", dens, dens_rel);
  std::printf("report: %s\n", rep_path.c_str());
  if (traj.blow_up) {
    std::fprintf(stderr, "blow-up: %s; last healthy state written to %s\n",
                 traj.message.c_str(), snap_path.c_str());
    return kExitBlowUp;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct DiagnoseOpts {
  CommonOpts common;
  std::string test;
  std::uint64_t samples = 0;  // 0 picks the per-test default
  int n = 16;
  int nt = 64;
  std::string estimate = "all";
  double floor = -1.0;
  double tol = 1e-14;
  int jobs = 1;
};

int diagnose_weights(const DiagnoseOpts& o, const RunConfig& cfg, const std::string& path,
                     RunManifest man) {
  const long samples = o.samples ? static_cast<long>(o.samples) : 100000;
  const WeightReport rep = weight_checks(random_frequency_tuples(cfg.seed, samples));

  const json body{{"test", "weights"},
                  {"samples", samples},
                  {"checked", rep.checked},
                  {"skipped", rep.skipped},
                  {"skipped_angle", rep.skipped_angle},
                  {"violations", rep.violations},
                  {"worst_identity", rep.worst_identity},
                  {"quotient_low", rep.quotient_low},
                  {"quotient_high", rep.quotient_high},
                  {"pass", rep.pass}};
  write_text_file(path, render_report(man, body));

  std::printf("weights: %ld checked, violations [%ld %ld %ld %ld %ld], worst identity %.3e\n",
              rep.checked, rep.violations[0], rep.violations[1], rep.violations[2],
              rep.violations[3], rep.violations[4], rep.worst_identity);
  std::printf("quotients in [%.6f, %.6f]\n", rep.quotient_low, rep.quotient_high);
  std::printf("report: %s\n", path.c_str());
  std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
  return rep.pass ? kExitPass : kExitVerification;
}

int diagnose_nullsymbol(const DiagnoseOpts& o, const RunConfig& cfg, const std::string& path,
                        RunManifest man) {
  const long samples = o.samples ? static_cast<long>(o.samples) : 10000;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto magnitude = [&] { return 0.1 * std::exp(std::log(100.0) * uni(rng)); };
  const auto direction = [&] {
    Vec3 v;
    double n2 = 0.0;
    do {
      v = {gauss(rng), gauss(rng), gauss(rng)};
      n2 = norm2(v);
    } while (n2 < 1e-12);
    return (1.0 / std::sqrt(n2)) * v;
  };

  double max_parallel = 0.0, max_generic = 0.0;
  for (long i = 0; i < samples; ++i) {
    const Vec3 eta = magnitude() * direction();
    const double scale = magnitude();
    // the plus symbol vanishes when zeta points against eta, the minus
    // symbol when zeta points along it
    max_parallel = std::max(
        {max_parallel, operator_norm(null_symbol(Sign::plus, eta, -scale * eta)),
         operator_norm(null_symbol(Sign::minus, eta, scale * eta))});
    max_generic = std::max(
        max_generic, operator_norm(null_symbol(Sign::plus, eta, magnitude() * direction())));
  }
  const bool pass = max_parallel <= o.tol;

  const json body{{"test", "nullsymbol"}, {"samples", samples},
                  {"tol", o.tol},         {"max_parallel", max_parallel},
                  {"generic_max", max_generic}, {"pass", pass}};
  write_text_file(path, render_report(man, body));

  std::printf("nullsymbol: parallel max %.3e over %ld samples (tol %g), generic max %.3f\n",
              max_parallel, samples, o.tol, max_generic);
  std::printf("report: %s\n", path.c_str());
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? kExitPass : kExitVerification;
}

int diagnose_strichartz(const DiagnoseOpts& o, const RunConfig& cfg, const std::string& path,
                        RunManifest man, double t_win) {
  const int samples = o.samples ? static_cast<int>(o.samples) : 20;
  const ProbeReport rep = probe_strichartz(cfg.grid(), o.nt, t_win, samples, cfg.seed);
  const bool pass = std::isfinite(rep.max_ratio) && rep.max_ratio > 0.0;

  json body = probe_json(rep);
  body["pass"] = pass;
  write_text_file(path, render_report(man, body));

  std::printf("strichartz: max ratio %.6g over %d samples (argmax seed %llu)\n",
              rep.max_ratio, samples, static_cast<unsigned long long>(rep.argmax_seed));
  std::printf("report: %s\n", path.c_str());
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? kExitPass : kExitVerification;
}

int diagnose_keybilinear(const DiagnoseOpts& o, const RunConfig& cfg, const std::string& path,
                         RunManifest man, double t_win) {
  const int samples = o.samples ? static_cast<int>(o.samples) : 10;
  const Grid3 g = cfg.grid();
  const ProbeReport rep =
      probe_key_bilinear(g, o.nt, t_win, Sign::plus, Sign::minus, samples, cfg.seed, o.floor);

  // A single plane wave meets its own projection: the like-sign pairing is
  // degenerate there. The structural cancellation is exact; what remains is
  // rounding the transforms leak into neighboring modes, so the check uses
  // the exact-zero tolerance rather than literal zero.
  Field mode = Field::spinor(g, Space::frequency);
  const long ik = g.flat(1, 0, 0);
  mode.at(0, ik) = cdouble(1.0, 0.0);
  mode.at(1, ik) = cdouble(0.0, 2.0);
  mode.at(2, ik) = cdouble(-0.5, 0.0);
  mode.at(3, ik) = cdouble(0.3, 0.1);
  const double degenerate =
      key_bilinear_ratio(mode, Sign::plus, Sign::plus, t_win, o.nt).ratio;

  const bool pass =
      std::isfinite(rep.max_ratio) && rep.max_ratio > 0.0 && degenerate <= o.tol;

  json body = probe_json(rep);
  body["degenerate_pair_ratio"] = degenerate;
  body["pass"] = pass;
  write_text_file(path, render_report(man, body));

  std::printf("keybilinear: max ratio %.6g over %d samples, floor %.6g\n", rep.max_ratio,
              samples, rep.floor);
  std::printf("degenerate like-sign single-mode ratio %.3e (tol %g)\n", degenerate, o.tol);
  std::printf("report: %s\n", path.c_str());
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? kExitPass : kExitVerification;
}

int diagnose_products(const DiagnoseOpts& o, const RunConfig& cfg, const std::string& path,
                      RunManifest man, double t_win) {
  std::vector<EstimateSpec> chosen;
  if (o.estimate == "all") {
    chosen = estimate_registry();
  } else if (o.estimate.size() > 3 && (o.estimate.rfind("km(", 0) == 0 ||
                                       o.estimate.rfind("KM(", 0) == 0) &&
             o.estimate.back() == ')') {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    const std::string args = o.estimate.substr(3, o.estimate.size() - 4);
    if (std::sscanf(args.c_str(), "%lf,%lf,%lf", &s1, &s2, &s3) != 3) {
      std::fprintf(stderr, "cannot parse `%s`: expected km(s1,s2,s3)\n", o.estimate.c_str());
      return kExitUsage;
    }
    try {
      chosen.push_back(km_estimate(s1, s2, s3));
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return kExitUsage;
    }
  } else {
    for (const EstimateSpec& e : estimate_registry())
      if (e.id == o.estimate) chosen.push_back(e);
    if (chosen.empty()) {
      std::fprintf(stderr,
                   "unknown estimate `%s`: use `all`, a registry id, or km(s1,s2,s3)\n",
                   o.estimate.c_str());
      return kExitUsage;
    }
  }

  const int samples = o.samples ? static_cast<int>(o.samples) : 10;
  const Grid3 g = cfg.grid();
  std::vector<ProbeReport> reps(chosen.size());
  const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(chosen.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < chosen.size(); ++i)
      reps[i] = probe_product(chosen[i], g, o.nt, t_win, samples, cfg.seed);
  } else {
    // results land at fixed indices, so the merge order never depends on
    // thread scheduling
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < chosen.size(); i = next.fetch_add(1))
          reps[i] = probe_product(chosen[i], g, o.nt, t_win, samples, cfg.seed);
      });
    for (std::thread& th : pool) th.join();
  }

  bool pass = true;
  json list = json::array();
  for (const ProbeReport& r : reps) {
    list.push_back(probe_json(r));
    pass = pass && std::isfinite(r.max_ratio) && r.max_ratio > 0.0;
    std::printf("products[%s]: max ratio %.6g (argmax seed %llu)\n", r.estimate_id.c_str(),
                r.max_ratio, static_cast<unsigned long long>(r.argmax_seed));
  }
  const json body{
      {"test", "products"}, {"samples", samples}, {"estimates", list}, {"pass", pass}};
  write_text_file(path, render_report(man, body));
  std::printf("report: %s\n", path.c_str());
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? kExitPass : kExitVerification;
}

int run_diagnose(const DiagnoseOpts& o) {
  Timer timer("diagnose");
  RunConfig cfg;
  cfg.n = o.n;
  if (o.common.seed) cfg.seed = *o.common.seed;
  const double t_win = 2.0 * std::numbers::pi;

  const std::string path = out_path(o.common, "diagnose_" + o.test + "_report.json");
  RunManifest man{"diagnose", cfg, o.common.config_path, {path}};

  if (o.test == "weights") return diagnose_weights(o, cfg, path, man);
  if (o.test == "nullsymbol") return diagnose_nullsymbol(o, cfg, path, man);
  if (o.test == "strichartz") return diagnose_strichartz(o, cfg, path, man, t_win);
  if (o.test == "keybilinear") return diagnose_keybilinear(o, cfg, path, man, t_win);
  return diagnose_products(o, cfg, path, man, t_win);
}

// ---------------------------------------------------------------------------

struct PicardOpts {
  CommonOpts common;
  DataOpts data;
  int iters = 8;
  int nt = 32;
  double eps = 0.1;
};

int run_picard(const PicardOpts& o) {
  Timer timer("picard");
  const RunConfig cfg = resolve_config(o.common);
  if (!(cfg.solver.T > 0.0) || cfg.solver.T > 1.0) {
    std::fprintf(stderr, "picard: requires 0 < T <= 1 (got %g)\n", cfg.solver.T);
    return kExitUsage;
  }

  const Field psi0 = initial_spinor(cfg, o.data);
  const ScalarState sc0 = initial_scalar(cfg, o.data);
  const int iters = o.data.kind == "zero" ? 0 : o.iters;
  const PicardReport rep = picard_iterate(cfg.solver, psi0, sc0, iters, o.nt, o.eps);

  std::vector<double> ratios;
  for (std::size_t k = 2; k < rep.records.size(); ++k) {
    const double prev = rep.records[k - 1].diff_norm;
    const double cur = rep.records[k].diff_norm;
    ratios.push_back(prev > 0.0 ? cur / prev
                                : (cur > 0.0 ? std::numeric_limits<double>::infinity() : 0.0));
  }
  bool contraction = !rep.non_contraction;
  for (const double r : ratios) contraction = contraction && r <= 1.0;

  std::printf("  k  |psi+|_H^eps  |psi-|_H^eps  |phi|_H^.5+eps  diff          ratio\n");
  for (std::size_t k = 0; k < rep.records.size(); ++k) {
    const IterationRecord& r = rep.records[k];
    std::printf("%3d  %.6e  %.6e  %.6e    %.6e", r.k, r.psi_plus_norm, r.psi_minus_norm,
                r.phi_norm, r.diff_norm);
    if (k >= 2)
      std::printf("  %.4f\n", ratios[k - 2]);
    else
      std::printf("  -\n");
  }

  const std::string path = out_path(o.common, "picard_report.json");
  RunManifest man{"picard", cfg, o.common.config_path, {path}};
  json records = json::array();
  for (const IterationRecord& r : rep.records)
    records.push_back({{"k", r.k},
                       {"psi_plus_norm", r.psi_plus_norm},
                       {"psi_minus_norm", r.psi_minus_norm},
                       {"phi_norm", r.phi_norm},
                       {"diff_norm", r.diff_norm}});
  const json body{{"records", records},
                  {"ratios", ratios},
                  {"T", rep.T},
                  {"n_t", rep.n_t},
                  {"eps", rep.eps},
                  {"non_contraction", rep.non_contraction},
                  {"message", rep.message},
                  {"contraction", contraction}};
  write_text_file(path, render_report(man, body));
  std::printf("report: %s\n", path.c_str());

  if (!contraction) {
    std::fprintf(stderr, "non-contraction: %s\n",
                 rep.message.empty() ? "iterate differences failed to decrease"
                                     : rep.message.c_str());
    return kExitNonContraction;
  }
  std::printf("PASS\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-Klein-Gordon spectral laboratory"};
  app.set_version_flag("--version", std::string("dkg ") + kToolVersion);
  app.require_subcommand(1);

  VerifyAlgebraOpts va;
  CLI::App* va_cmd =
      app.add_subcommand("verify-algebra", "check the matrix and projection identities");
  va_cmd->add_option("--samples", va.samples, "random directions to sample")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}))
      ->capture_default_str();
  va_cmd->add_option("--tol", va.tol, "tolerance for the direction-sampled identities")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_out_and_seed(va_cmd, va.common);

  SolveOpts sv;
  CLI::App* sv_cmd = app.add_subcommand("solve", "evolve the coupled system");
  add_config_overrides(sv_cmd, sv.common);
  add_data_opts(sv_cmd, sv.data);
  sv_cmd->add_option("--stride", sv.stride, "record every this many steps (0 picks auto)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_out_and_seed(sv_cmd, sv.common);

  DiagnoseOpts dg;
  CLI::App* dg_cmd = app.add_subcommand("diagnose", "run one estimate diagnostic");
  dg_cmd
      ->add_option("--test", dg.test, "diagnostic to run")
      ->required()
      ->check(CLI::IsMember({"strichartz", "keybilinear", "weights", "products", "nullsymbol"}));
  dg_cmd->add_option("--samples", dg.samples, "sample count (0 picks the per-test default)")
      ->capture_default_str();
  dg_cmd->add_option("--n", dg.n, "grid points per axis")->capture_default_str();
  dg_cmd->add_option("--nt", dg.nt, "time samples per window")->capture_default_str();
  dg_cmd->add_option("--estimate", dg.estimate,
                     "product estimate: registry id, km(s1,s2,s3), or all")
      ->capture_default_str();
  dg_cmd->add_option("--floor", dg.floor, "symbol floor for keybilinear (-1 picks default)")
      ->capture_default_str();
  dg_cmd->add_option("--tol", dg.tol,
                     "exact-zero tolerance (nullsymbol, keybilinear degenerate check)")
      ->capture_default_str();
  dg_cmd->add_option("--jobs", dg.jobs, "worker threads for estimate sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_out_and_seed(dg_cmd, dg.common);

  PicardOpts pc;
  pc.data.amplitude = 0.05;
  CLI::App* pc_cmd = app.add_subcommand("picard", "run the fixed-point iteration");
  add_config_overrides(pc_cmd, pc.common);
  add_data_opts(pc_cmd, pc.data);
  pc_cmd->add_option("--iters", pc.iters, "iterates beyond the homogeneous flow")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  pc_cmd->add_option("--nt", pc.nt, "sample times per window")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pc_cmd->add_option("--eps", pc.eps, "Sobolev offset of the iteration norms")
      ->capture_default_str();
  add_out_and_seed(pc_cmd, pc.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (va_cmd->parsed()) return run_verify_algebra(va);
    if (sv_cmd->parsed()) return run_solve(sv);
    if (dg_cmd->parsed()) return run_diagnose(dg);
    if (pc_cmd->parsed()) return run_picard(pc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
