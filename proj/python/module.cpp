// Python bindings for the dkg core: algebra, fields, solver, Picard
// iteration, estimate probes, and snapshot io. Heavy entry points release
// the GIL; reports come back as plain attribute holders.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dkg/estimates.hpp"
#include "dkg/picard.hpp"
#include "dkg/snapshot.hpp"
#include "dkg/solver.hpp"
#include "dkg/spinor_algebra.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace dkg;

namespace {

using Triple = std::array<double, 3>;

Vec3 to_vec(const Triple& a) { return {a[0], a[1], a[2]}; }

py::array_t<cdouble> mat_to_array(const Matrix4& m) {
  py::array_t<cdouble> out({4, 4});
  auto view = out.mutable_unchecked<2>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) view(i, j) = m(i, j);
  return out;
}

Matrix4 array_to_mat(const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4)
    throw std::invalid_argument("expected a 4 x 4 matrix");
  Matrix4 m;
  auto view = a.unchecked<2>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = view(i, j);
  return m;
}

py::array_t<cdouble> field_array(const Field& f) {
  const int n = f.grid.n;
  py::array_t<cdouble> out({f.ncomp, n, n, n});
  std::memcpy(out.mutable_data(), f.data.data(), f.data.size() * sizeof(cdouble));
  return out;
}

Field field_from_array(const Grid3& g,
                       const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& a,
                       Space space) {
  int ncomp = 1;
  if (a.ndim() == 4) {
    ncomp = static_cast<int>(a.shape(0));
  } else if (a.ndim() != 3) {
    throw std::invalid_argument("expected shape (ncomp, n, n, n) or (n, n, n)");
  }
  const int off = a.ndim() - 3;
  for (int d = 0; d < 3; ++d)
    if (a.shape(off + d) != g.n)
      throw std::invalid_argument("array shape does not match the grid");
  Field f(g, space, ncomp);
  std::memcpy(f.data.data(), a.data(), f.data.size() * sizeof(cdouble));
  return f;
}

py::array_t<double> real_array(const Grid3& g, const std::vector<double>& v) {
  py::array_t<double> out({g.n, g.n, g.n});
  std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
  return out;
}

std::vector<double> real_from_array(
    const Grid3& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 3 || a.shape(0) != g.n || a.shape(1) != g.n || a.shape(2) != g.n)
    throw std::invalid_argument("array shape does not match the grid");
  std::vector<double> v(static_cast<std::size_t>(g.size()));
  std::memcpy(v.data(), a.data(), v.size() * sizeof(double));
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudospectral laboratory for the coupled Dirac-Klein-Gordon system";
  m.attr("__version__") = "0.1.0";

  py::enum_<Sign>(m, "Sign").value("plus", Sign::plus).value("minus", Sign::minus);
  py::enum_<Space>(m, "Space")
      .value("physical", Space::physical)
      .value("frequency", Space::frequency);
  py::enum_<Integrator>(m, "Integrator")
      .value("etd_rk4", Integrator::etd_rk4)
      .value("strang", Integrator::strang);

  py::class_<Grid3>(m, "Grid3", "Uniform periodic grid on [0, L)^3 with n points per axis")
      .def(py::init<int, double>(), "n"_a, "L"_a)
      .def_readonly("n", &Grid3::n)
      .def_readonly("L", &Grid3::L)
      .def("size", &Grid3::size)
      .def("volume", &Grid3::volume)
      .def("dealias_band", &Grid3::dealias_band)
      .def("__repr__", [](const Grid3& g) {
        return "Grid3(n=" + std::to_string(g.n) + ", L=" + std::to_string(g.L) + ")";
      });

  // matrix algebra
  m.def("basis_matrix",
        [](const std::string& kind, int index) { return mat_to_array(basis_matrix(kind, index)); },
        "kind"_a, "index"_a, "Dirac basis matrix: \"gamma\" 0..3, \"alpha\"/\"spin\" 1..3, \"beta\"");
  m.def("projection",
        [](Sign s, const Triple& xi) { return mat_to_array(projection(s, to_vec(xi))); },
        "sign"_a, "xi"_a, "Eigenprojection (I +- xi_hat . alpha) / 2, identity/2 at xi = 0");
  m.def("null_symbol",
        [](Sign s, const Triple& eta, const Triple& zeta) {
          return mat_to_array(null_symbol(s, to_vec(eta), to_vec(zeta)));
        },
        "sign"_a, "eta"_a, "zeta"_a,
        "Matrix symbol of the projected pairing; vanishes for parallel interactions");
  m.def("operator_norm",
        [](const py::array_t<cdouble, py::array::c_style | py::array::forcecast>& a) {
          return operator_norm(array_to_mat(a));
        },
        "matrix"_a, "Largest singular value of a 4 x 4 matrix");
  m.def("angle", [](const Triple& a, const Triple& b) { return angle(to_vec(a), to_vec(b)); },
        "a"_a, "b"_a, "Angle between two nonzero vectors, stable near 0 and pi");

  py::class_<IdentityCheck>(m, "IdentityCheck")
      .def_readonly("name", &IdentityCheck::name)
      .def_readonly("max_dev", &IdentityCheck::max_dev)
      .def_readonly("exact", &IdentityCheck::exact)
      .def_readonly("pass_", &IdentityCheck::pass);
  py::class_<AlgebraReport>(m, "AlgebraReport")
      .def_readonly("samples", &AlgebraReport::samples)
      .def_readonly("seed", &AlgebraReport::seed)
      .def_readonly("tol", &AlgebraReport::tol)
      .def_readonly("checks", &AlgebraReport::checks)
      .def_readonly("worst_dev", &AlgebraReport::worst_dev)
      .def_readonly("worst_name", &AlgebraReport::worst_name)
      .def_readonly("exact_pass", &AlgebraReport::exact_pass)
      .def_readonly("sampled_pass", &AlgebraReport::sampled_pass)
      .def_readonly("pass_", &AlgebraReport::pass);
  m.def("verify_algebra", &verify_algebra, "samples"_a, "seed"_a, "tol"_a,
        py::call_guard<py::gil_scoped_release>(),
        "Exact integer-matrix identities plus direction-sampled projection identities");

  // fields
  py::class_<Field>(m, "Field", "Complex multi-component field on a periodic grid")
      .def_property_readonly("grid", [](const Field& f) { return f.grid; })
      .def_readonly("space", &Field::space)
      .def_readonly("ncomp", &Field::ncomp)
      .def("array", &field_array, "Copy of the coefficients, shape (ncomp, n, n, n)")
      .def_static("zeros",
                  [](const Grid3& g, int ncomp, Space space) { return Field(g, space, ncomp); },
                  "grid"_a, "ncomp"_a = 4, "space"_a = Space::physical)
      .def_static("from_array", &field_from_array, "grid"_a, "array"_a,
                  "space"_a = Space::physical);

  py::class_<ScalarState>(m, "ScalarState", "Real Klein-Gordon pair (phi, dt phi)")
      .def(py::init<const Grid3&>(), "grid"_a)
      .def_property_readonly("grid", [](const ScalarState& s) { return s.grid; })
      .def_property_readonly("phi", [](const ScalarState& s) { return real_array(s.grid, s.phi); })
      .def_property_readonly("phi_t",
                             [](const ScalarState& s) { return real_array(s.grid, s.phi_t); })
      .def_static("from_arrays",
                  [](const Grid3& g,
                     const py::array_t<double, py::array::c_style | py::array::forcecast>& phi,
                     const py::array_t<double, py::array::c_style | py::array::forcecast>& phi_t) {
                    ScalarState st(g);
                    st.phi = real_from_array(g, phi);
                    st.phi_t = real_from_array(g, phi_t);
                    return st;
                  },
                  "grid"_a, "phi"_a, "phi_t"_a);

  m.def("to_frequency", &to_frequency, "field"_a);
  m.def("to_physical", &to_physical, "field"_a);
  m.def("project_field", &project_field, "psi"_a, "sign"_a,
        "Eigenprojection of the Dirac symbol applied mode by mode");
  m.def("half_wave",
        [](const Field& psi, Sign s, double t) {
          Field out = psi;
          half_wave_propagate(out, s, t);
          return out;
        },
        "psi"_a, "sign"_a, "t"_a, "Exact half-wave flow exp(-+ i t |D|)");
  m.def("l2_norm", &l2_norm, "field"_a);
  m.def("sobolev_norm",
        py::overload_cast<const Field&, double, bool>(&sobolev_norm), "field"_a, "s"_a,
        "homogeneous"_a = false);
  m.def("charge", &charge, "psi"_a, "Discrete integral of |psi|^2");
  m.def("density",
        [](const Field& psi) { return real_array(psi.grid, density(psi)); }, "psi"_a,
        "Pointwise density <beta psi, psi> of a physical-space spinor");
  m.def("random_spinor", &random_spinor, "grid"_a, "seed"_a, "band"_a, "amplitude"_a);
  m.def("random_scalar_state", &random_scalar_state, "grid"_a, "seed"_a, "band"_a,
        "amplitude"_a);
  m.def("chadam_glassey_data", &chadam_glassey_data, "grid"_a, "seed"_a, "band"_a,
        "amplitude"_a, "Spinor data on the charge-free constraint surface");

  // solver
  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](double M, double mass, double g, double dt, double T, Integrator it,
                       bool dealias) {
             SolverConfig cfg;
             cfg.M = M;
             cfg.m = mass;
             cfg.g = g;
             cfg.dt = dt;
             cfg.T = T;
             cfg.integrator = it;
             cfg.dealias = dealias;
             return cfg;
           }),
           "M"_a = 1.0, "m"_a = 1.0, "g"_a = 1.0, "dt"_a = 1e-3, "T"_a = 1.0,
           "integrator"_a = Integrator::etd_rk4, "dealias"_a = true)
      .def_readwrite("M", &SolverConfig::M)
      .def_readwrite("m", &SolverConfig::m)
      .def_readwrite("g", &SolverConfig::g)
      .def_readwrite("dt", &SolverConfig::dt)
      .def_readwrite("T", &SolverConfig::T)
      .def_readwrite("integrator", &SolverConfig::integrator)
      .def_readwrite("dealias", &SolverConfig::dealias);
  m.def("validate_config", &validate_config, "config"_a, "grid"_a);

  py::class_<DKGState>(m, "DKGState")
      .def_readonly("t", &DKGState::t)
      .def_property_readonly("psi_plus", [](const DKGState& st) { return st.psi_plus; })
      .def_property_readonly("psi_minus", [](const DKGState& st) { return st.psi_minus; })
      .def_property_readonly("scalar", [](const DKGState& st) { return st.scalar; });
  m.def("make_state", &make_state, "psi0"_a, "scalar0"_a, "config"_a);
  m.def("total_spinor", &total_spinor, "state"_a, "psi_plus + psi_minus in frequency space");
  m.def("split_data", &split_data, "psi0"_a,
        "Eigenprojection split; the halves sum back to the input");

  py::class_<SampleRecord>(m, "SampleRecord")
      .def_readonly("t", &SampleRecord::t)
      .def_readonly("charge", &SampleRecord::charge)
      .def_readonly("energy", &SampleRecord::energy)
      .def_readonly("density_min", &SampleRecord::density_min)
      .def_readonly("density_max", &SampleRecord::density_max)
      .def_readonly("psi_plus_h1", &SampleRecord::psi_plus_h1)
      .def_readonly("psi_minus_h1", &SampleRecord::psi_minus_h1)
      .def_readonly("phi_h1", &SampleRecord::phi_h1)
      .def_readonly("phi_t_l2", &SampleRecord::phi_t_l2);
  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("records", &Trajectory::records)
      .def_property_readonly("final_state", [](const Trajectory& t) { return t.final_state; })
      .def_readonly("blow_up", &Trajectory::blow_up)
      .def_readonly("message", &Trajectory::message);
  m.def("solve", &solve, "config"_a, "psi0"_a, "scalar0"_a, "sample_stride"_a = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Integrate to T, recording charge, energy, and density diagnostics");

  py::class_<ScalingReport>(m, "ScalingReport")
      .def_readonly("l_factor", &ScalingReport::l_factor)
      .def_readonly("discrepancy", &ScalingReport::discrepancy)
      .def_readonly("base_time", &ScalingReport::base_time)
      .def_readonly("scaled_time", &ScalingReport::scaled_time)
      .def_readonly("steps", &ScalingReport::steps);
  m.def("scaling_check", &scaling_check, "config"_a, "psi0"_a, "scalar0"_a, "l_factor"_a,
        py::call_guard<py::gil_scoped_release>(),
        "Massless scale-symmetry probe; requires M = m = 0");

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("psi_plus_norm", &IterationRecord::psi_plus_norm)
      .def_readonly("psi_minus_norm", &IterationRecord::psi_minus_norm)
      .def_readonly("phi_norm", &IterationRecord::phi_norm)
      .def_readonly("diff_norm", &IterationRecord::diff_norm);
  py::class_<PicardReport>(m, "PicardReport")
      .def_readonly("records", &PicardReport::records)
      .def_readonly("non_contraction", &PicardReport::non_contraction)
      .def_readonly("message", &PicardReport::message)
      .def_readonly("T", &PicardReport::T)
      .def_readonly("n_t", &PicardReport::n_t)
      .def_readonly("eps", &PicardReport::eps);
  m.def("picard_iterate", &picard_iterate, "config"_a, "psi0"_a, "scalar0"_a, "k_max"_a,
        "n_t"_a = 64, "eps"_a = 0.1, py::call_guard<py::gil_scoped_release>(),
        "Duhamel iteration from the homogeneous flow; records successive differences");

  // estimates
  py::class_<WeightReport>(m, "WeightReport")
      .def_readonly("checked", &WeightReport::checked)
      .def_readonly("skipped", &WeightReport::skipped)
      .def_readonly("skipped_angle", &WeightReport::skipped_angle)
      .def_property_readonly("violations",
                             [](const WeightReport& r) {
                               return std::vector<long>(r.violations.begin(),
                                                        r.violations.end());
                             })
      .def_readonly("worst_identity", &WeightReport::worst_identity)
      .def_readonly("quotient_low", &WeightReport::quotient_low)
      .def_readonly("quotient_high", &WeightReport::quotient_high)
      .def_readonly("pass_", &WeightReport::pass);
  m.def("weight_sweep",
        [](long samples, std::uint64_t seed) {
          return weight_checks(random_frequency_tuples(seed, samples));
        },
        "samples"_a, "seed"_a, py::call_guard<py::gil_scoped_release>(),
        "Angular-weight laws over random frequency tuples");

  m.def("strichartz_ratio", &strichartz_ratio, "f"_a, "sign"_a, "T_win"_a, "n_t"_a = 64,
        py::call_guard<py::gil_scoped_release>());
  py::class_<KeyBilinearResult>(m, "KeyBilinearResult")
      .def_readonly("ratio", &KeyBilinearResult::ratio)
      .def_readonly("floor", &KeyBilinearResult::floor);
  m.def("key_bilinear_ratio", &key_bilinear_ratio, "psi0"_a, "s1"_a, "s2"_a, "T_win"_a,
        "n_t"_a, "floor"_a = -1.0, py::call_guard<py::gil_scoped_release>());

  py::enum_<NormSpec::Variant>(m, "NormVariant")
      .value("X_pm", NormSpec::Variant::X_pm)
      .value("H_sb", NormSpec::Variant::H_sb)
      .value("H_script", NormSpec::Variant::H_script);
  py::class_<NormSpec>(m, "NormSpec")
      .def_readonly("variant", &NormSpec::variant)
      .def_readonly("s", &NormSpec::s)
      .def_readonly("b", &NormSpec::b)
      .def_readonly("sign", &NormSpec::sign);
  py::class_<EstimateSpec>(m, "EstimateSpec")
      .def_readonly("id", &EstimateSpec::id)
      .def_readonly("u", &EstimateSpec::u)
      .def_readonly("v", &EstimateSpec::v)
      .def_readonly("target", &EstimateSpec::target)
      .def("__repr__", [](const EstimateSpec& e) { return "EstimateSpec(" + e.id + ")"; });
  m.def("estimate_registry", &estimate_registry, "eps"_a = 0.1, "eps_prime"_a = 0.01,
        "The twenty-six tabulated product estimates");
  m.def("km_estimate", &km_estimate, "s1"_a, "s2"_a, "s3"_a, "b"_a = 0.51,
        "Base product estimate; rejects inadmissible exponent triples");

  py::class_<ProbeReport>(m, "ProbeReport")
      .def_readonly("test_id", &ProbeReport::test_id)
      .def_readonly("estimate_id", &ProbeReport::estimate_id)
      .def_readonly("n", &ProbeReport::n)
      .def_readonly("n_t", &ProbeReport::n_t)
      .def_readonly("L", &ProbeReport::L)
      .def_readonly("T_win", &ProbeReport::T_win)
      .def_readonly("samples", &ProbeReport::samples)
      .def_readonly("seed", &ProbeReport::seed)
      .def_readonly("max_ratio", &ProbeReport::max_ratio)
      .def_readonly("argmax_seed", &ProbeReport::argmax_seed)
      .def_readonly("floor", &ProbeReport::floor)
      .def_readonly("violations", &ProbeReport::violations);
  m.def("probe_strichartz", &probe_strichartz, "grid"_a, "n_t"_a, "T_win"_a, "samples"_a,
        "seed"_a, py::call_guard<py::gil_scoped_release>());
  m.def("probe_key_bilinear", &probe_key_bilinear, "grid"_a, "n_t"_a, "T_win"_a, "s1"_a,
        "s2"_a, "samples"_a, "seed"_a, "floor"_a = -1.0,
        py::call_guard<py::gil_scoped_release>());
  m.def("probe_product", &probe_product, "estimate"_a, "grid"_a, "n_t"_a, "T_win"_a,
        "samples"_a, "seed"_a, py::call_guard<py::gil_scoped_release>());

  // snapshots
  py::class_<Snapshot>(m, "Snapshot")
      .def_property_readonly("psi", [](const Snapshot& s) { return s.psi; })
      .def_property_readonly("scalar", [](const Snapshot& s) { return s.scalar; });
  m.def("write_snapshot", &write_snapshot, "path"_a, "psi_physical"_a, "scalar"_a);
  m.def("read_snapshot", &read_snapshot, "path"_a);
}
