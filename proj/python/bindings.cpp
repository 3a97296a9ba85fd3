#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rwkit/certify.hpp"
#include "rwkit/classifier.hpp"
#include "rwkit/defect.hpp"
#include "rwkit/experiment.hpp"
#include "rwkit/reconstruct.hpp"

namespace py = pybind11;
using namespace rwkit;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

// Arrays map to signals by rank: (n,) is a line, (rows, cols) an image and
// (channels, rows, cols) a multi-channel image.
Shape shape_of(const py::buffer_info& info) {
  const auto dim = [&](int i) { return static_cast<std::size_t>(info.shape[i]); };
  switch (info.ndim) {
  case 1:
    return Shape::line(dim(0));
  case 2:
    return Shape::image(dim(0), dim(1));
  case 3:
    return Shape::image(dim(1), dim(2), dim(0));
  default:
    throw ShapeError("expected an array of rank 1, 2 or 3");
  }
}

SignalVector to_signal(const CArray& a) {
  const auto info = a.request();
  const auto* p = static_cast<const Complex*>(info.ptr);
  return {shape_of(info), ComplexVector(p, p + a.size())};
}

std::vector<py::ssize_t> dims_of(const Shape& s) {
  if (!s.grid) {
    return s.channels == 1 ? std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.cols)}
                           : std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.channels),
                                                      static_cast<py::ssize_t>(s.cols)};
  }
  if (s.channels == 1) {
    return {static_cast<py::ssize_t>(s.rows), static_cast<py::ssize_t>(s.cols)};
  }
  return {static_cast<py::ssize_t>(s.channels), static_cast<py::ssize_t>(s.rows), static_cast<py::ssize_t>(s.cols)};
}

py::array to_array(std::span<const Complex> v, const Shape& s) {
  py::array_t<Complex> out(dims_of(s));
  std::copy(v.begin(), v.end(), static_cast<Complex*>(out.request().ptr));
  return out;
}

py::array to_real_array(const SignalVector& x) {
  py::array_t<double> out(dims_of(x.shape()));
  auto* p = static_cast<double*>(out.request().ptr);
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = x[i].real();
  }
  return out;
}

Frame make_frame(const std::string& kind, std::size_t levels) { return Frame(parse_frame_kind(kind), levels); }

py::dict cert_dict(const Certificate& c) {
  py::dict d;
  d["radius"] = c.radius;
  d["probability"] = c.probability;
  d["gain"] = c.gain;
  d["vacuous"] = c.vacuous;
  d["alpha"] = c.inputs.alpha;
  d["rho"] = c.inputs.rho;
  d["tau"] = c.inputs.tau;
  d["rwp_prob"] = c.inputs.rwp_prob;
  d["expected_defect"] = c.inputs.expected_defect;
  d["epsilon"] = c.inputs.epsilon;
  return d;
}

} // namespace

PYBIND11_MODULE(_rwkit, m) {
  m.doc() = "Compressed-sensing input purification, sparsity defects and robustness certificates";

  static py::exception<Error> base(m, "RwkitError", PyExc_RuntimeError);
  static py::exception<ParameterError> param(m, "ParameterError", base.ptr());
  static py::exception<ShapeError> shape(m, "ShapeError", base.ptr());
  static py::exception<NumericError> numeric(m, "NumericError", base.ptr());
  static py::exception<IterationCapError> cap(m, "IterationCapError", base.ptr());
  static py::exception<InfeasibleError> infeasible(m, "InfeasibleError", base.ptr());
  static py::exception<EstimationError> estimation(m, "EstimationError", base.ptr());
  static py::exception<ConfigError> config(m, "ConfigError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const ParameterError& e) {
      py::set_error(param, e.what());
    } catch (const ShapeError& e) {
      py::set_error(shape, e.what());
    } catch (const IterationCapError& e) {
      py::set_error(cap, e.what());
    } catch (const NumericError& e) {
      py::set_error(numeric, e.what());
    } catch (const InfeasibleError& e) {
      py::set_error(infeasible, e.what());
    } catch (const EstimationError& e) {
      py::set_error(estimation, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def(
      "analyze",
      [](const CArray& x, const std::string& frame, std::size_t levels) {
        const auto s = to_signal(x);
        return to_array(analyze(make_frame(frame, levels), s), s.shape());
      },
      py::arg("x"), py::arg("frame") = "dft", py::arg("levels") = 0);
  m.def(
      "synthesize",
      [](const CArray& c, const std::string& frame, std::size_t levels) {
        const auto s = to_signal(c);
        return to_array(synthesize(make_frame(frame, levels), s.values(), s.shape()).values(), s.shape());
      },
      py::arg("coeffs"), py::arg("frame") = "dft", py::arg("levels") = 0);
  m.def(
      "sparsity_norm",
      [](const CArray& x, const std::string& frame, std::size_t levels) {
        return sparsity_norm(make_frame(frame, levels), to_signal(x));
      },
      py::arg("x"), py::arg("frame") = "dft", py::arg("levels") = 0);
  m.def(
      "soft_threshold",
      [](const CArray& u, double lambda) {
        const auto s = to_signal(u);
        return to_array(soft_threshold(s.values(), lambda), s.shape());
      },
      py::arg("u"), py::arg("threshold"));

  m.def(
      "sensing_mask",
      [](const std::vector<std::size_t>& dims, double q, std::uint64_t seed) {
        const Shape s = dims.size() == 1 ? Shape::line(dims[0]) : Shape::image(dims.at(0), dims.at(1));
        const auto op = make_partial_fourier(s, q, seed);
        py::array_t<bool> out(dims_of(s));
        auto* p = static_cast<bool*>(out.request().ptr);
        for (std::size_t i = 0; i < op.mask().size(); ++i) {
          p[i] = op.mask()[i] != 0;
        }
        return out;
      },
      py::arg("shape"), py::arg("subsample_prob"), py::arg("seed"));
  m.def(
      "measure",
      [](const CArray& x, double q, std::uint64_t seed) {
        const auto s = to_signal(x);
        return to_array(make_partial_fourier(s.shape(), q, seed).apply(s), s.shape());
      },
      py::arg("x"), py::arg("subsample_prob"), py::arg("seed"));
  m.def(
      "measure_adjoint",
      [](const CArray& y, double q, std::uint64_t seed) {
        const auto s = to_signal(y);
        return to_array(make_partial_fourier(s.shape(), q, seed).adjoint(s.values()).values(), s.shape());
      },
      py::arg("y"), py::arg("subsample_prob"), py::arg("seed"));

  m.def(
      "purify",
      [](const CArray& x, std::size_t iterations, double threshold, double q, std::uint64_t seed,
         const std::string& frame, std::size_t levels) {
        const auto s = to_signal(x);
        PurifiedSignal out;
        {
          py::gil_scoped_release release;
          out = purify(s, {iterations, threshold, q, make_frame(frame, levels)}, seed);
        }
        py::dict info;
        info["operator_seed"] = out.operator_seed;
        info["iterations_run"] = out.iterations_run;
        info["final_coefficient_l1"] = out.final_coefficient_l1;
        info["imag_residual"] = out.imag_residual;
        py::object value = out.value.is_real() && s.is_real() ? to_real_array(out.value)
                                                              : to_array(out.value.values(), out.value.shape());
        return py::make_tuple(value, info);
      },
      py::arg("x"), py::arg("iterations") = 49, py::arg("threshold") = 0.11, py::arg("subsample_prob") = 0.7494,
      py::arg("seed") = 0, py::arg("frame") = "dft", py::arg("levels") = 0);

  m.def(
      "sparsity_defect",
      [](const CArray& x, double solution_bound, double q, std::uint64_t seed, const std::string& frame,
         std::size_t levels, double bregman_lambda, double tolerance, std::size_t max_iterations,
         bool calibrate) -> py::object {
        const auto s = to_signal(x);
        const DefectParams p{solution_bound, bregman_lambda, tolerance, max_iterations, calibrate};
        const auto r = sparsity_defect(s, make_partial_fourier(s.shape(), q, seed), make_frame(frame, levels), p);
        if (r.failed()) {
          return py::none();
        }
        return py::float_(*r.defect);
      },
      py::arg("x"), py::arg("solution_bound"), py::arg("subsample_prob") = 1.0, py::arg("seed") = 0,
      py::arg("frame") = "identity", py::arg("levels") = 0, py::arg("bregman_lambda") = 0.5,
      py::arg("tolerance") = 1e-6, py::arg("max_iterations") = 10000, py::arg("calibrate_lambda") = true,
      "Distance from the measured signal to the l1 ball of radius solution_bound, or None when the solver fails.");
  m.def(
      "brute_force_defect",
      [](const std::vector<double>& x, double bound, double step) { return brute_force_defect(x, bound, step); },
      py::arg("x"), py::arg("solution_bound"), py::arg("grid_step"));

  m.def("kappa", &kappa, py::arg("epsilon"), py::arg("alpha"), py::arg("rho"), py::arg("max_defect"));
  m.def("performance_bound", &performance_bound, py::arg("epsilon"), py::arg("alpha"), py::arg("rho"),
        py::arg("max_defect"));
  m.def("defect_budget", &defect_budget, py::arg("tau"), py::arg("epsilon"), py::arg("alpha"), py::arg("rho"));
  m.def("robustness_gain", &robustness_gain, py::arg("kappa"));
  m.def(
      "certify_probabilistic",
      [](double q, double alpha, double rho, double tau, double eps, double e) {
        return cert_dict(certify_probabilistic(q, alpha, rho, tau, eps, e));
      },
      py::arg("rwp_prob"), py::arg("alpha"), py::arg("rho"), py::arg("tau"), py::arg("epsilon"),
      py::arg("expected_defect"));
  m.def(
      "partial_fourier_rwp",
      [](double J, double delta) {
        const auto r = partial_fourier_rwp(J, delta);
        return py::make_tuple(r.rho, r.alpha);
      },
      py::arg("sparsity"), py::arg("delta"), "Returns (rho, alpha).");
  m.def(
      "partial_fourier_rip",
      [](double rho, double alpha) {
        const auto r = partial_fourier_rip(rho, alpha);
        return py::make_tuple(r.sparsity, r.delta);
      },
      py::arg("rho"), py::arg("alpha"), "Returns (sparsity, delta).");

  py::class_<LinearClassifier>(m, "LinearClassifier")
      .def(py::init<RealVector>(), py::arg("weights"))
      .def_property_readonly("weights", &LinearClassifier::weights)
      .def("predict", [](const LinearClassifier& c, const CArray& x) { return predict(c, to_signal(x)); })
      .def("margin", [](const LinearClassifier& c, const CArray& x) { return margin(c, to_signal(x)); })
      .def("min_perturbation",
           [](const LinearClassifier& c, const CArray& x) { return to_real_array(min_perturbation(c, to_signal(x))); })
      .def(
          "certificate",
          [](const LinearClassifier& c, const CArray& x, double alpha) {
            return cert_dict(linear_certificate(c, to_signal(x), alpha));
          },
          py::arg("x"), py::arg("alpha"))
      .def(
          "certificate_approx",
          [](const LinearClassifier& c, const CArray& x, double alpha, double rho, double defect) -> py::object {
            const auto cert = linear_certificate_approx(c, to_signal(x), alpha, rho, defect);
            return cert ? py::object(cert_dict(*cert)) : py::object(py::none());
          },
          py::arg("x"), py::arg("alpha"), py::arg("rho"), py::arg("defect"))
      .def(
          "undefended_radius",
          [](const LinearClassifier& c, const CArray& x, std::size_t probes, double tol, std::uint64_t seed) {
            ProbeOptions o;
            o.probes = probes;
            o.tol = tol;
            o.seed = seed;
            return undefended_radius(c, to_signal(x), o).radius;
          },
          py::arg("x"), py::arg("probes") = 200, py::arg("tol") = 1e-3, py::arg("seed") = 0);

  m.def(
      "gen_data",
      [](std::size_t n, std::size_t count, std::size_t k, std::uint64_t seed, std::uint64_t weights_seed,
         double floor, bool unit) {
        const auto d = gen_data(n, count, k, seed, weights_seed, floor, unit);
        py::array_t<double> xs({static_cast<py::ssize_t>(count), static_cast<py::ssize_t>(n)});
        auto* p = static_cast<double*>(xs.request().ptr);
        for (std::size_t i = 0; i < count; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            p[i * n + j] = d.samples[i][j].real();
          }
        }
        return py::make_tuple(d.classifier, xs, d.labels);
      },
      py::arg("n"), py::arg("count"), py::arg("sparsity"), py::arg("seed"), py::arg("weights_seed") = 7,
      py::arg("margin_floor") = 1e-3, py::arg("unit_magnitude") = false,
      "Returns (classifier, samples, labels).");

  m.def(
      "eval_report",
      [](const std::string& config_text, std::size_t threads) {
        const auto cfg = parse_config(config_text);
        cfg.validate();
        const auto data = gen_data(cfg.n, cfg.count, cfg.sparsity, cfg.master_seed, cfg.weights_seed,
                                   cfg.margin_floor, cfg.unit_magnitude);
        py::gil_scoped_release release;
        return report_csv(run_eval(cfg, data, threads), header_line("eval", cfg));
      },
      py::arg("config"), py::arg("threads") = 1,
      "Generates the configured dataset and returns the evaluation report as CSV text.");
  m.def(
      "normalize_config", [](const std::string& text) { return serialize(parse_config(text)); }, py::arg("config"));
}
