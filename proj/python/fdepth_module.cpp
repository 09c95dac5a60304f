#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "fdepth/clustering.hpp"
#include "fdepth/dataset.hpp"
#include "fdepth/depth.hpp"
#include "fdepth/finite_dim.hpp"
#include "fdepth/local_depth.hpp"
#include "fdepth/similarity.hpp"

namespace py = pybind11;
using namespace fdepth;

namespace {

FunctionalDataset dataset_from_array(py::array_t<double, py::array::c_style |
                                                             py::array::forcecast>
                                         curves,
                                     std::optional<std::vector<double>> grid_points,
                                     std::optional<std::vector<double>> weights) {
  if (curves.ndim() != 2)
    throw std::invalid_argument("curves must be a 2-d array (n x p)");
  std::size_t n = static_cast<std::size_t>(curves.shape(0));
  std::size_t p = static_cast<std::size_t>(curves.shape(1));
  std::vector<double> values(curves.data(), curves.data() + n * p);
  Grid grid;
  if (grid_points) {
    grid = Grid::trapezoidal(*grid_points);
    if (weights) grid.weights = *weights;
  } else {
    grid = Grid::uniform(p);
  }
  return FunctionalDataset(std::move(grid), std::move(values), n);
}

TauFunction tau_from_object(const py::object& tau, std::size_t p) {
  if (py::isinstance<py::float_>(tau) || py::isinstance<py::int_>(tau))
    return TauFunction::constant(tau.cast<double>(), p);
  return TauFunction(tau.cast<std::vector<double>>());
}

DepthMethod method_from_string(const std::string& s) {
  if (s == "hr" || s == "HR") return DepthMethod::HR;
  if (s == "mhr" || s == "MHR") return DepthMethod::MHR;
  throw std::invalid_argument("method must be 'hr' or 'mhr'");
}

SimilarityMethod sim_method_from_string(const std::string& s) {
  if (s == "hr" || s == "HR") return SimilarityMethod::HR;
  if (s == "localhr" || s == "localHR") return SimilarityMethod::LocalHR;
  if (s == "localmhr" || s == "localMHR") return SimilarityMethod::LocalMHR;
  throw std::invalid_argument("method must be 'hr', 'localhr' or 'localmhr'");
}

template <typename T>
py::array_t<T> vec_to_array(const std::vector<T>& v) {
  std::vector<py::ssize_t> shape = {static_cast<py::ssize_t>(v.size())};
  py::array_t<T> out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict report_to_dict(const DepthReport& rep) {
  py::dict d;
  d["method"] = method_name(rep.method);
  d["values"] = vec_to_array(rep.values);
  d["ranks"] = vec_to_array(rep.ranks);
  if (rep.tau) d["tau"] = rep.tau->values;
  return d;
}

py::array_t<double> square_to_array(const std::vector<double>& v, std::size_t n) {
  py::array_t<double> out({n, n});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

PointSample sample_from_array(
    py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() == 1) {
    std::vector<double> v(arr.data(), arr.data() + arr.shape(0));
    return PointSample(static_cast<std::size_t>(arr.shape(0)), 1, std::move(v));
  }
  if (arr.ndim() != 2)
    throw std::invalid_argument("sample must be 1-d or 2-d");
  std::size_t m = static_cast<std::size_t>(arr.shape(0));
  std::size_t p = static_cast<std::size_t>(arr.shape(1));
  std::vector<double> v(arr.data(), arr.data() + m * p);
  return PointSample(m, p, std::move(v));
}

}  // namespace

PYBIND11_MODULE(_fdepth, m) {
  m.doc() = "Half-region depth, local depth, and depth-based clustering";

  py::class_<FunctionalDataset>(m, "FunctionalDataset")
      .def(py::init(&dataset_from_array), py::arg("curves"),
           py::arg("grid_points") = std::nullopt,
           py::arg("weights") = std::nullopt)
      .def_property_readonly("n_curves", &FunctionalDataset::n_curves)
      .def_property_readonly("n_points", &FunctionalDataset::n_points)
      .def_property_readonly("curves", [](const FunctionalDataset& ds) {
        py::array_t<double> out({ds.n_curves(), ds.n_points()});
        std::copy(ds.values().begin(), ds.values().end(), out.mutable_data());
        return out;
      });

  py::class_<Dendrogram>(m, "Dendrogram")
      .def_property_readonly("n", [](const Dendrogram& d) { return d.n; })
      .def_property_readonly("merges",
                             [](const Dendrogram& d) {
                               py::list out;
                               for (const auto& mg : d.merges)
                                 out.append(py::make_tuple(mg.left, mg.right,
                                                           mg.height, mg.size));
                               return out;
                             })
      .def("to_json", &Dendrogram::to_json)
      .def("to_newick", &Dendrogram::to_newick,
           py::arg("labels") = std::vector<std::string>{});

  m.def(
      "load_csv",
      [](const std::string& path, bool byrow, bool has_header) {
        return load_csv(path, byrow, has_header);
      },
      py::arg("path"), py::arg("byrow") = true, py::arg("has_header") = false);

  m.def("sup_distance", [](std::vector<double> a, std::vector<double> b) {
    return sup_distance(a, b);
  });

  m.def(
      "select_tau",
      [](const FunctionalDataset& ds, std::vector<double> probs,
         bool keep_stats) {
        TauSelection sel = select_tau(ds, probs, keep_stats);
        py::dict d;
        d["probs"] = sel.probs;
        d["quantiles"] = sel.quantiles;
        if (sel.stats) d["stats"] = *sel.stats;
        return d;
      },
      py::arg("dataset"), py::arg("probs"), py::arg("keep_stats") = false);

  m.def(
      "depth_all",
      [](const FunctionalDataset& ds, const std::string& method) {
        return report_to_dict(depth_all(ds, method_from_string(method)));
      },
      py::arg("dataset"), py::arg("method") = "mhr");

  m.def(
      "local_depth_all",
      [](const FunctionalDataset& ds, const py::object& tau,
         const std::string& method) {
        TauFunction t = tau_from_object(tau, ds.n_points());
        return report_to_dict(local_depth_all(ds, t, method_from_string(method)));
      },
      py::arg("dataset"), py::arg("tau"), py::arg("method") = "mhr");

  m.def(
      "similarity_matrix",
      [](const FunctionalDataset& ds, const std::string& method,
         const py::object& tau) {
        SimilarityMethod sm = sim_method_from_string(method);
        std::optional<TauFunction> t;
        if (!tau.is_none()) t = tau_from_object(tau, ds.n_points());
        SimilarityMatrix s = similarity_matrix(ds, sm, t);
        return square_to_array(s.values, s.n);
      },
      py::arg("dataset"), py::arg("method") = "localmhr",
      py::arg("tau") = py::none());

  m.def("gower_dissimilarity",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> s) {
          if (s.ndim() != 2 || s.shape(0) != s.shape(1))
            throw std::invalid_argument("similarity matrix must be square");
          SimilarityMatrix sm;
          sm.n = static_cast<std::size_t>(s.shape(0));
          sm.values.assign(s.data(), s.data() + sm.n * sm.n);
          DissimilarityMatrix d = gower_dissimilarity(sm);
          return square_to_array(d.values, d.n);
        });

  m.def(
      "ward_linkage",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> d,
         bool ward_d2) {
        if (d.ndim() != 2 || d.shape(0) != d.shape(1))
          throw std::invalid_argument("dissimilarity matrix must be square");
        std::size_t n = static_cast<std::size_t>(d.shape(0));
        DissimilarityMatrix dm(n, std::vector<double>(d.data(), d.data() + n * n));
        return ward_linkage(dm, ward_d2);
      },
      py::arg("dissimilarity"), py::arg("ward_d2") = false);

  m.def("cut_tree", [](const Dendrogram& dg, int k) {
    ClusterLabels labels = cut_tree(dg, k);
    return vec_to_array(labels.labels);
  });

  m.def("silhouette",
        [](std::vector<int> labels,
           py::array_t<double, py::array::c_style | py::array::forcecast> d) {
          std::size_t n = static_cast<std::size_t>(d.shape(0));
          DissimilarityMatrix dm(n,
                                 std::vector<double>(d.data(), d.data() + n * n));
          ClusterLabels cl;
          cl.labels = std::move(labels);
          cl.k = cl.labels.empty()
                     ? 0
                     : *std::max_element(cl.labels.begin(), cl.labels.end());
          SilhouetteReport rep = silhouette(cl, dm);
          py::dict out;
          out["widths"] = vec_to_array(rep.widths);
          out["cluster_means"] = rep.cluster_means;
          out["overall_mean"] = rep.overall_mean;
          out["degenerate"] = rep.degenerate;
          return out;
        });

  m.def("local_depth_hr_finite",
        [](std::vector<double> x,
           py::array_t<double, py::array::c_style | py::array::forcecast> sample,
           std::vector<double> tau) {
          return local_depth_hr_finite(x, sample_from_array(sample), tau);
        });

  m.def("local_halfspace_depth_1d",
        [](double x,
           py::array_t<double, py::array::c_style | py::array::forcecast> sample,
           double tau) {
          return local_halfspace_depth_1d(x, sample_from_array(sample), tau);
        });
}
