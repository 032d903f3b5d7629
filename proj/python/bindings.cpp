#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "cnb/bounds.hpp"
#include "cnb/campaign.hpp"
#include "cnb/extremal.hpp"
#include "cnb/matrix_io.hpp"
#include "cnb/reports.hpp"
#include "cnb/spectral.hpp"

namespace py = pybind11;

namespace {

cnb::Matrix matrix_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  const auto buf = arr.request();
  if (buf.ndim != 2 || buf.shape[0] != buf.shape[1]) {
    throw std::invalid_argument("expected a square 2-D array");
  }
  const int n = static_cast<int>(buf.shape[0]);
  const double* ptr = static_cast<const double*>(buf.ptr);
  return cnb::Matrix(n, std::vector<double>(ptr, ptr + static_cast<size_t>(n) * n));
}

py::array_t<double> array_from_matrix(const cnb::Matrix& m) {
  const int n = m.dim();
  py::array_t<double> arr({n, n});
  double* ptr = static_cast<double*>(arr.request().ptr);
  std::copy(m.entries().begin(), m.entries().end(), ptr);
  return arr;
}

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

cnb::ExtremalMode parse_mode(const std::string& mode, int n) {
  if (mode == "dense") return cnb::ExtremalMode::kDense;
  if (mode == "matrix-free") return cnb::ExtremalMode::kMatrixFree;
  if (mode == "auto") return n <= 12 ? cnb::ExtremalMode::kDense : cnb::ExtremalMode::kMatrixFree;
  throw std::invalid_argument("mode must be 'auto', 'dense' or 'matrix-free'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Commutator norm bounds: operators, closed-form spectra, bound utilities";

  // linear algebra core
  m.def("commutator", [](const Array& x, const Array& y) {
    return array_from_matrix(cnb::commutator(matrix_from_array(x), matrix_from_array(y)));
  });
  m.def("frobenius_norm_sq",
        [](const Array& x) { return cnb::frobenius_norm_sq(matrix_from_array(x)); });
  m.def("trace_inner_product", [](const Array& a, const Array& b) {
    return cnb::trace_inner_product(matrix_from_array(a), matrix_from_array(b));
  });
  m.def("elementary", [](int n, int i, int j) {
    return array_from_matrix(cnb::Matrix::elementary(n, i, j));
  });
  m.def("triangular_split", [](const Array& y) {
    const cnb::TriangularParts parts = cnb::triangular_split(matrix_from_array(y));
    return py::make_tuple(array_from_matrix(parts.diagonal), array_from_matrix(parts.upper),
                          array_from_matrix(parts.lower));
  });
  m.def("offdiag_max_abs",
        [](const Array& y) { return cnb::offdiag_max_abs(matrix_from_array(y)); });

  // spectral kernels
  m.def("svd", [](const Array& x) {
    const cnb::SvdResult s = cnb::svd(matrix_from_array(x));
    return py::make_tuple(array_from_matrix(s.q1), s.sigma, array_from_matrix(s.q2));
  });
  m.def("symmetric_eigen", [](const Array& x) {
    const cnb::EigenResult e = cnb::symmetric_eigen(matrix_from_array(x));
    return py::make_tuple(e.values, array_from_matrix(e.vectors));
  });

  // commutator operators
  m.def("t_apply", [](const Array& x, const Array& y) {
    return array_from_matrix(cnb::t_apply(matrix_from_array(x), matrix_from_array(y)));
  });
  m.def("t_materialize",
        [](const Array& x) { return array_from_matrix(cnb::t_materialize(matrix_from_array(x))); });
  m.def("tilde_materialize", [](const std::vector<double>& sigma) {
    return array_from_matrix(cnb::tilde_materialize(sigma));
  });
  m.def("tilde_apply", [](const std::vector<double>& sigma, const Array& b, const Array& c) {
    const cnb::BlockPair out =
        cnb::tilde_apply(sigma, cnb::BlockPair(matrix_from_array(b), matrix_from_array(c)));
    return py::make_tuple(array_from_matrix(out.b), array_from_matrix(out.c));
  });
  m.def("block_commutator_norm_sq",
        [](const std::vector<double>& sigma, const Array& b, const Array& c) {
          return cnb::block_commutator_norm_sq(
              sigma, cnb::BlockPair(matrix_from_array(b), matrix_from_array(c)));
        });
  m.def("check_genericity", [](const std::vector<double>& sigma) {
    return json_to_py(cnb::to_json(cnb::check_genericity(sigma)));
  });
  m.def("perturb_to_generic", [](const std::vector<double>& sigma, std::uint64_t seed) {
    return cnb::perturb_to_generic(sigma, seed);
  }, py::arg("sigma"), py::arg("seed") = 1);
  m.def("closed_form_spectrum", [](const std::vector<double>& sigma) {
    py::list out;
    for (const auto& p : cnb::closed_form_spectrum(sigma)) {
      py::dict d;
      d["value"] = p.value;
      d["kind"] = cnb::to_string(p.kind);
      d["i"] = p.i;
      d["j"] = p.j;
      d["b"] = array_from_matrix(p.vector.b);
      d["c"] = array_from_matrix(p.vector.c);
      out.append(std::move(d));
    }
    return out;
  });
  m.def("spectrum_report",
        [](const std::vector<double>& sigma, bool perturb, std::uint64_t seed) {
          cnb::SpectrumOptions opts;
          opts.allow_perturbation = perturb;
          opts.seed = seed;
          return json_to_py(cnb::to_json(cnb::spectrum_report(sigma, opts)));
        },
        py::arg("sigma"), py::arg("perturb") = false, py::arg("seed") = 1);

  // bounds
  m.def("bw_bound", [](const Array& x, const Array& y) {
    return cnb::bw_bound(matrix_from_array(x), matrix_from_array(y));
  });
  m.def("kyfan_bound", [](const Array& x, const Array& y) {
    return cnb::kyfan_bound(matrix_from_array(x), matrix_from_array(y));
  });
  m.def("cdck_bound", [](const Array& x, const Array& y) {
    return cnb::cdck_bound(matrix_from_array(x), matrix_from_array(y));
  });
  m.def("infnorm_bound", [](const Array& x, const Array& y) {
    return cnb::infnorm_bound(matrix_from_array(x), matrix_from_array(y));
  });
  m.def("scalar_inequality_check", [](const std::vector<double>& lambdas, const Array& y) {
    const auto [lhs, rhs] = cnb::scalar_inequality_check(lambdas, matrix_from_array(y));
    return py::make_tuple(lhs, rhs);
  });
  m.def("cdck_vs_kyfan_gap", [](const std::vector<double>& lambdas) {
    const auto [lhs, rhs] = cnb::cdck_vs_kyfan_gap(lambdas);
    return py::make_tuple(lhs, rhs);
  });
  m.def("pythagorean_split_check", [](const Array& x, const Array& y) {
    const cnb::PythagoreanSplit s =
        cnb::pythagorean_split_check(matrix_from_array(x), matrix_from_array(y));
    return py::make_tuple(s.total, s.upper, s.lower);
  });
  m.def("evaluate_all",
        [](const Array& x, const Array& y, double tol) {
          return json_to_py(
              cnb::to_json(cnb::evaluate_all(matrix_from_array(x), matrix_from_array(y), tol)));
        },
        py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9);

  // extremal
  m.def("find_extremal",
        [](const Array& x, const std::string& mode) {
          const cnb::Matrix xm = matrix_from_array(x);
          const cnb::ExtremalResult r = cnb::find_extremal(xm, parse_mode(mode, xm.dim()));
          py::dict d;
          d["lambda_max"] = r.lambda_max;
          d["y_star"] = array_from_matrix(r.y_star);
          d["residual"] = r.residual;
          d["iterations"] = r.iterations;
          d["ratio_bw"] = r.lambda_max / (2.0 * cnb::frobenius_norm_sq(xm));
          return d;
        },
        py::arg("x"), py::arg("mode") = "auto");
  m.def("certify_equality_pair", [](const Array& x) {
    const cnb::EqualityCertificate c = cnb::certify_equality_pair(matrix_from_array(x));
    py::dict d;
    d["lambda_max"] = c.certificate.lambda_max;
    d["y_star"] = array_from_matrix(c.certificate.y_star);
    d["residual"] = c.certificate.residual;
    return py::make_tuple(c.achieved_ratio, std::move(d));
  });
  m.def("change_of_variables", [](const Array& x, const Array& y) {
    const cnb::ChangeOfVariables cov =
        cnb::change_of_variables(matrix_from_array(x), matrix_from_array(y));
    return py::make_tuple(cov.lambda, array_from_matrix(cov.pair.b), array_from_matrix(cov.pair.c));
  });
  m.def("orthogonalize_z", [](const Array& x, const Array& y) {
    return array_from_matrix(cnb::orthogonalize_z(matrix_from_array(x), matrix_from_array(y)));
  });
  m.def("companion_check", [](const Array& x, const Array& y, double lambda_prime) {
    const cnb::CompanionCheck c =
        cnb::companion_check(matrix_from_array(x), matrix_from_array(y), lambda_prime);
    return py::make_tuple(c.is_eigen, c.independent, array_from_matrix(c.companion));
  });

  // ensembles and campaigns
  m.def("draw_matrix",
        [](int n, const std::string& kind, std::uint64_t seed, std::uint64_t index) {
          const cnb::EnsembleSpec spec{n, cnb::parse_ensemble_kind(kind), index + 1, seed};
          return array_from_matrix(cnb::draw(spec, index));
        },
        py::arg("n"), py::arg("kind"), py::arg("seed"), py::arg("index") = 0);
  m.def("run_campaign",
        [](int n, const std::string& kind_x, const std::string& kind_y, std::uint64_t count,
           std::uint64_t seed, const std::string& checks, double tol) {
          cnb::CampaignConfig config;
          config.x = {n, cnb::parse_ensemble_kind(kind_x), count, cnb::Rng::mix(seed, 0)};
          config.y = {n, cnb::parse_ensemble_kind(kind_y), count, cnb::Rng::mix(seed, 1)};
          config.checks = cnb::parse_check_list(checks);
          config.equality_tol = tol;
          return json_to_py(cnb::to_json(cnb::run_campaign(config)));
        },
        py::arg("n"), py::arg("kind_x"), py::arg("kind_y"), py::arg("count"), py::arg("seed"),
        py::arg("checks") = "bounds", py::arg("tol") = 1e-9);
  m.def("run_compare", [](int n, std::uint64_t count, std::uint64_t seed) {
    return json_to_py(cnb::compare_to_json(cnb::run_compare(n, count, seed)));
  });

  m.attr("__version__") = "0.1.0";
}
