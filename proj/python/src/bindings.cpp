#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entmono/errors.hpp"
#include "entmono/measures.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/states.hpp"
#include "entmono/telesim.hpp"

namespace py = pybind11;
using namespace entmono;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2) throw ShapeError("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(rows, cols, std::vector<Complex>(a.data(), a.data() + rows * cols));
}

std::vector<Complex> to_vector(const CArray& a) {
  if (a.ndim() != 1) throw ShapeError("expected a 1-d array");
  return std::vector<Complex>(a.data(), a.data() + a.size());
}

CArray from_matrix(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

CArray from_vector(std::span<const Complex> v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

DensityOperator density(const CArray& m, const Dims& dims) {
  return DensityOperator::from_matrix(to_matrix(m), dims);
}

PartyPair parse_pair(const std::string& s) {
  if (s == "13") return PartyPair::P13;
  if (s == "12") return PartyPair::P12;
  throw ArgumentError("pair must be \"13\" or \"12\"");
}

py::dict fef_dict(const FefResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["optimal_vector"] = from_vector(r.optimal_vector.amplitudes());
  d["restarts_used"] = r.restarts_used;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  return d;
}

py::dict row_dict(const CounterexampleRow& r) {
  py::dict d;
  d["gamma"] = r.gamma;
  d["alpha"] = r.alpha;
  d["F_1_23"] = r.F_1_23;
  d["F_12"] = r.F_12;
  d["F_13"] = r.F_13;
  d["F_13_closed"] = r.F_13_closed;
  d["f_1_23"] = r.f_1_23;
  d["f_13"] = r.f_13;
  d["f_13_closed"] = r.f_13_closed;
  d["C_13"] = r.C_13;
  d["C_13_closed"] = r.C_13_closed;
  d["fef_violated"] = r.fef_violated;
  d["fid_violated"] = r.fid_violated;
  d["strictness_proxy"] = r.strictness_proxy;
  d["unclamped_lhs_below_13"] = r.unclamped_lhs_below_13;
  d["error"] = r.error ? py::object(py::str(*r.error)) : py::object(py::none());
  return d;
}

py::dict report_dict(const MonogamyReport& r) {
  py::dict d;
  d["kind"] = std::string(to_string(r.kind));
  d["focus"] = r.focus;
  d["lhs_raw"] = r.lhs_raw;
  d["lhs_value"] = r.lhs_value;
  py::list terms;
  for (const auto& t : r.pair_terms) {
    py::dict p;
    p["partner"] = t.partner;
    p["raw"] = t.raw;
    p["clamped"] = t.clamped;
    p["squared"] = t.squared;
    terms.append(p);
  }
  d["pair_terms"] = terms;
  d["rhs_sum"] = r.rhs_sum;
  d["residual"] = r.residual;
  d["holds"] = r.holds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_entmono, m) {
  m.doc() = "Entanglement monogamy diagnostics";

  static py::exception<NumericError> numeric_error(m, "NumericError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericError& e) {
      PyErr_SetString(numeric_error.ptr(), e.what());
    } catch (const Error& e) {
      // Argument, shape and size errors all describe bad input.
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("kron", [](const CArray& a, const CArray& b) {
    return from_matrix(kron(to_matrix(a), to_matrix(b)));
  });
  m.def(
      "partial_trace",
      [](const CArray& a, const Dims& dims, std::vector<std::size_t> keep) {
        return from_matrix(partial_trace(to_matrix(a), dims, std::move(keep)));
      },
      py::arg("matrix"), py::arg("dims"), py::arg("keep"));

  m.def("sigma_gamma_state", [](double g) {
    return from_matrix(sigma_gamma_state(SigmaGammaParams(g)).matrix());
  });
  m.def(
      "sigma_gamma_pair",
      [](double g, const std::string& pair) {
        return from_matrix(sigma_gamma_pair(SigmaGammaParams(g), parse_pair(pair)).matrix());
      },
      py::arg("gamma"), py::arg("pair") = "13");
  m.def(
      "two_param_state",
      [](double alpha, double gamma, std::size_t d) {
        return from_matrix(two_param_state(TwoParamClassParams(alpha, gamma, d)).matrix());
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("d") = 4);
  m.def("haar_pure", [](const Dims& dims, std::uint64_t seed) {
    return from_vector(haar_pure(dims, seed).amplitudes());
  });
  m.def("random_density", [](const Dims& dims, std::uint64_t seed) {
    return from_matrix(random_density(dims, seed).matrix());
  });

  m.def(
      "concurrence_pure",
      [](const CArray& v, const Dims& dims) {
        return concurrence_pure(PureState(to_vector(v), dims));
      },
      py::arg("amplitudes"), py::arg("dims"));
  m.def(
      "fef_pure",
      [](const CArray& v, const Dims& dims) { return fef_pure(PureState(to_vector(v), dims)); },
      py::arg("amplitudes"), py::arg("dims"));
  m.def("concurrence_two_qubit",
        [](const CArray& rho) { return concurrence_two_qubit(density(rho, {2, 2})); });
  m.def("fef_two_qubit",
        [](const CArray& rho) { return fef_dict(fef_two_qubit(density(rho, {2, 2}))); });
  m.def(
      "fef_2xd",
      [](const CArray& rho, const Dims& dims, int restarts, double tol, std::uint64_t seed) {
        const auto state = density(rho, dims);
        FefResult r = [&] {
          py::gil_scoped_release release;
          return fef_2xd(state, FefOptions{restarts, tol, seed});
        }();
        return fef_dict(r);
      },
      py::arg("rho"), py::arg("dims"), py::arg("restarts") = 32, py::arg("tol") = 1e-10,
      py::arg("seed") = 42);
  m.def("fidelity_from_fef", &fidelity_from_fef);

  m.def(
      "ckw_residual",
      [](const CArray& v, const Dims& dims, std::size_t focus) {
        return report_dict(ckw_residual(PureState(to_vector(v), dims), focus));
      },
      py::arg("amplitudes"), py::arg("dims"), py::arg("focus") = 0);
  m.def(
      "fef_monogamy_residual",
      [](const CArray& v, const Dims& dims, std::size_t focus) {
        return report_dict(fef_monogamy_residual(PureState(to_vector(v), dims), focus));
      },
      py::arg("amplitudes"), py::arg("dims"), py::arg("focus") = 0);
  m.def(
      "fidelity_monogamy_residual",
      [](const CArray& v, const Dims& dims, std::size_t focus) {
        return report_dict(fidelity_monogamy_residual(PureState(to_vector(v), dims), focus));
      },
      py::arg("amplitudes"), py::arg("dims"), py::arg("focus") = 0);

  m.def(
      "counterexample_row",
      [](double gamma, int restarts, std::uint64_t seed, double tol) {
        CounterexampleRow r = [&] {
          py::gil_scoped_release release;
          return counterexample_row(gamma, restarts, seed, tol);
        }();
        return row_dict(r);
      },
      py::arg("gamma"), py::arg("restarts") = 32, py::arg("seed") = 42, py::arg("tol") = 1e-10);
  m.def(
      "gamma_sweep",
      [](const std::vector<double>& grid, int restarts, std::uint64_t seed, double tol) {
        std::vector<CounterexampleRow> rows;
        {
          py::gil_scoped_release release;
          rows = gamma_sweep(grid, restarts, seed, tol);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
      },
      py::arg("grid"), py::arg("restarts") = 32, py::arg("seed") = 42, py::arg("tol") = 1e-10);

  m.def("teleport_exact_fidelity", [](const CArray& rho) {
    return exact_average_fidelity(build_channel(density(rho, {2, 2})));
  });
  m.def(
      "teleport_mc_fidelity",
      [](const CArray& rho, std::size_t samples, std::uint64_t seed) {
        const auto est = mc_average_fidelity(build_channel(density(rho, {2, 2})), samples, seed);
        py::dict d;
        d["mc_mean"] = est.mc_mean;
        d["mc_std_err"] = est.mc_std_err;
        d["exact_value"] = est.exact_value;
        d["samples"] = est.samples;
        d["seed"] = est.seed;
        d["consistent"] = est.consistent();
        return d;
      },
      py::arg("rho"), py::arg("samples") = 100000, py::arg("seed") = 42);
}
