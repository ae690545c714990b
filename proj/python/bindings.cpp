// Python module _scnf. Models cross the boundary as opaque handles that
// serialize to the JSON model format; states are bit strings, x1 first.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scnf/scnf.hpp"

namespace py = pybind11;
using namespace scnf;

namespace {

// A plain holder: the stl variant caster would otherwise claim Model.
struct Handle {
  Model m;
};

Dataset to_dataset(const std::vector<std::vector<std::string>>& series) {
  Dataset data;
  for (const auto& t : series) {
    Trajectory traj;
    for (const auto& s : t) traj.push_back(State::from_string(s));
    data.push_back(std::move(traj));
  }
  return data;
}

std::vector<std::vector<std::string>> from_dataset(const Dataset& data) {
  std::vector<std::vector<std::string>> out;
  for (const auto& t : data) {
    auto& row = out.emplace_back();
    for (const auto& s : t) row.push_back(s.to_string());
  }
  return out;
}

TransitionMatrix matrix_of(const Model& m, int workers) {
  return std::visit(
      [&](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Pbn>)
          return pbn_transition_matrix(x, workers);
        else
          return scnf_transition_matrix(x, workers);
      },
      m);
}

std::vector<std::string> rules_of(const Model& m) {
  if (!std::holds_alternative<ScnfNetwork>(m)) throw std::invalid_argument("rules need an SCNF network");
  std::vector<std::string> out;
  for (const auto& r : std::get<ScnfNetwork>(m).rules()) out.push_back(to_string(r));
  return out;
}

py::dict fidelity_dict(const FidelityReport& rep) {
  std::vector<unsigned> k;
  std::vector<double> d, s, sb;
  for (const auto& p : rep.points) {
    k.push_back(p.k);
    d.push_back(p.delta_bar);
    s.push_back(p.sigma);
    sb.push_back(p.sigma_bar);
  }
  py::dict out;
  out["k"] = k;
  out["delta_bar"] = d;
  out["sigma"] = s;
  out["sigma_bar"] = sb;
  return out;
}

}  // namespace

PYBIND11_MODULE(_scnf, m) {
  m.doc() = "Stochastic CNF networks";
  m.attr("__version__") = kVersion;
  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<Handle>(m, "Model")
      .def_static("from_json", [](const std::string& t) { return Handle{io::parse_model(t)}; }, py::arg("text"))
      .def_static("load", [](const std::string& p) { return Handle{io::load_model(p)}; }, py::arg("path"))
      .def("to_json", [](const Handle& h) { return io::dump_model(h.m); })
      .def("save", [](const Handle& h, const std::string& path) { io::save_model(h.m, path); }, py::arg("path"))
      .def_property_readonly("size", [](const Handle& h) { return model_size(h.m); })
      .def_property_readonly("kind", [](const Handle& h) { return std::holds_alternative<Pbn>(h.m) ? "pbn" : "scnfn"; })
      .def("rules", [](const Handle& h) { return rules_of(h.m); })
      .def("__repr__", [](const Handle& h) {
        const Model& x = h.m;
        return std::string("<scnf.Model ") + (std::holds_alternative<Pbn>(x) ? "pbn" : "scnfn") + " n=" +
               std::to_string(model_size(x)) + ">";
      });

  m.def(
      "random_pbn",
      [](std::size_t n, std::uint64_t seed, std::size_t constituents, double mean_degree) {
        GenConfig cfg;
        cfg.n = n;
        cfg.constituents = constituents;
        cfg.mean_in_degree = mean_degree;
        cfg.seed.value = seed;
        return Handle{random_pbn(cfg)};
      },
      py::arg("n"), py::arg("seed"), py::arg("constituents") = 2, py::arg("mean_degree") = 4.0);

  m.def(
      "to_scnfn",
      [](const Handle& h) {
        if (auto* p = std::get_if<Pbn>(&h.m)) return Handle{pbn_to_scnfn(*p)};
        return h;
      },
      py::arg("model"));
  m.def(
      "to_pbn",
      [](const Handle& h, std::size_t max_stochastic) {
        if (auto* s = std::get_if<ScnfNetwork>(&h.m)) return Handle{scnfn_to_pbn(*s, max_stochastic)};
        return h;
      },
      py::arg("model"), py::arg("max_stochastic") = kMaxStochasticForPbn);

  m.def(
      "transition_matrix", [](const Handle& h, int workers) { return Eigen::MatrixXd(matrix_of(h.m, workers).m); },
      py::arg("model"), py::arg("workers") = 1);
  m.def(
      "exact_marginals",
      [](const Handle& h, const std::string& init, unsigned k) {
        const auto s = State::from_string(init);
        if (s.size() != model_size(h.m)) throw std::invalid_argument("initial state has the wrong length");
        return node_true_marginals(matrix_of(h.m, 1), s, k);
      },
      py::arg("model"), py::arg("init"), py::arg("k") = 1);

  m.def(
      "simulate",
      [](const Handle& h, const std::string& init, std::size_t steps, std::uint64_t seed) {
        StreamRng rng(seed, {stream::kTrajectory, 0, 0});
        std::vector<std::string> out;
        for (const auto& s : trajectory(h.m, State::from_string(init), steps, rng)) out.push_back(s.to_string());
        return out;
      },
      py::arg("model"), py::arg("init"), py::arg("steps"), py::arg("seed"));
  m.def(
      "estimate_marginals",
      [](const Handle& h, const std::string& init, unsigned k, std::size_t samples, std::uint64_t seed, int workers) {
        return estimate_node_probs(h.m, State::from_string(init), k, samples, {seed, stream::kTrajectory, 0}, workers)
            .per_node;
      },
      py::arg("model"), py::arg("init"), py::arg("k") = 2, py::arg("samples") = 5000, py::arg("seed"),
      py::arg("workers") = 1);

  m.def(
      "gen_dataset",
      [](const Handle& h, std::size_t series, std::size_t inits, std::size_t steps, std::uint64_t seed, int workers) {
        return from_dataset(gen_dataset(h.m, series, inits, steps, seed, workers));
      },
      py::arg("model"), py::arg("series"), py::arg("inits"), py::arg("steps"), py::arg("seed"), py::arg("workers") = 1);

  m.def(
      "learn",
      [](const std::vector<std::vector<std::string>>& series, std::uint64_t seed, int workers) {
        const auto data = to_dataset(series);
        if (data.empty() || data.front().empty()) throw std::invalid_argument("no time series");
        LearnOptions opt;
        opt.fit.seed = seed;
        return Handle{scnfn_learn(build_transition_list(data), data.front().front().size(), {}, opt, workers).network};
      },
      py::arg("series"), py::arg("seed"), py::arg("workers") = 1);

  m.def(
      "fidelity",
      [](const Handle& ref, const Handle& learned, std::size_t inits, std::size_t runs, unsigned steps,
         std::uint64_t seed, int workers) {
        return fidelity_dict(fidelity(ref.m, learned.m, inits, runs, steps, seed, workers));
      },
      py::arg("reference"), py::arg("learned"), py::arg("inits") = 200, py::arg("runs") = 400, py::arg("steps") = 100,
      py::arg("seed"), py::arg("workers") = 1);

  m.def(
      "acf",
      [](const Handle& h, const std::vector<std::string>& inits, unsigned k, std::size_t samples,
         const std::vector<std::size_t>& lags, std::uint64_t seed, int workers) {
        std::vector<State> s;
        for (const auto& b : inits) s.push_back(State::from_string(b));
        return acf_diagnostic(h.m, s, k, samples, lags, seed, workers).rho;
      },
      py::arg("model"), py::arg("inits"), py::arg("k") = 2, py::arg("samples") = 5000,
      py::arg("lags") = std::vector<std::size_t>{0, 1, 10, 100, 1000, 2000}, py::arg("seed"), py::arg("workers") = 1);
}
