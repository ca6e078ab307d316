// Copyright 2026 The graphcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphcode/runner.hpp"

namespace py = pybind11;
using namespace graphcode;

namespace {

// Amplitudes in the given label order.
Vector amplitudes_in(const PureState& psi, const std::vector<Label>& order) {
  return psi.reordered(order).amplitudes();
}

std::vector<int> signs_vec(const Signs& s) { return {s[0], s[1], s[2]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dense simulator for the four-qubit loss-tolerant graph code";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<PauliString>(m, "PauliString")
      .def(py::init(&PauliString::parse), py::arg("text"))
      .def("__str__", &PauliString::str)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.str() + "')"; })
      .def("__mul__", [](const PauliString& a, const PauliString& b) { return a * b; })
      .def("__eq__", [](const PauliString& a, const PauliString& b) { return a == b; })
      .def("commutes", [](const PauliString& a, const PauliString& b) { return commutes(a, b); })
      .def_property_readonly("support", &PauliString::support)
      .def_property_readonly("weight", &PauliString::weight)
      .def("dense", [](const PauliString& p, const std::vector<Label>& labels) { return p.dense(labels); });

  m.def("expand_logical", &expand_logical, py::arg("pauli"));
  m.def("reshape_by_stabilizer", &reshape_by_stabilizer, py::arg("pauli"), py::arg("stabilizer"));
  m.def("logical_ops", [] {
    const auto ops = logical_ops();
    return py::dict(py::arg("X") = ops.xbar, py::arg("Y") = ops.ybar, py::arg("Z") = ops.zbar);
  });
  m.def("syndrome_operators", [] {
    const auto& s = syndrome_operators();
    return std::vector<PauliString>(s.begin(), s.end());
  });

  m.def(
      "build_resource", [] { return amplitudes_in(build_resource(), {1, 2, 3, 4, 5}); },
      "Five-qubit resource amplitudes, qubit 1 most significant.");
  m.def(
      "graph_state",
      [](const std::vector<Label>& vertices, const std::vector<Edge>& edges) {
        const Graph g(std::set<Label>(vertices.begin(), vertices.end()), edges);
        return amplitudes_in(graph_state(g), g.vertex_list());
      },
      py::arg("vertices"), py::arg("edges"));
  m.def(
      "logical_state", [](const std::string& key) { return amplitudes_in(logical_state(key), kCodeLabels); },
      py::arg("key"), "Code state over qubits (1, 2, 4, 5); keys 0_L, 1_L, +_L, -_L, +y_L, -y_L.");

  m.def(
      "encode_fidelity",
      [](const std::string& probe, double visibility, int s3) {
        const AncillaState a = AncillaState::from_probe(parse_probe(probe));
        return state_fidelity(encoded_state(NoiseModel::white(visibility), a, s3, true), encoded_target(a));
      },
      py::arg("probe"), py::arg("visibility") = 1.0, py::arg("s3") = 0);
  m.def(
      "syndrome_signs",
      [](const std::string& error, const std::string& probe) {
        const PureState psi = encoded_target(AncillaState::from_probe(parse_probe(probe)));
        return signs_vec(measure_syndromes(inject_pauli_error(psi, parse_error(error))).signs());
      },
      py::arg("error"), py::arg("probe") = "0");
  m.def(
      "predicted_signs", [](const std::string& error) { return signs_vec(predicted_signs(parse_error(error))); },
      py::arg("error"));
  m.def(
      "recovery_fidelity",
      [](int lost, cplx alpha, cplx beta, double visibility) {
        const AncillaState a(alpha, beta);
        const DensityOperator out = recovered_state(NoiseModel::white(visibility), lost, a);
        return state_fidelity(out, a.state(recovery_recipe(lost).output));
      },
      py::arg("lost"), py::arg("alpha"), py::arg("beta"), py::arg("visibility") = 1.0);
  m.def(
      "witness_value",
      [](const std::string& name, const std::string& state, const std::string& variant) {
        const WitnessSpec w = builtin_witness(name, parse_variant(variant));
        const PureState psi = state == "resource" ? build_resource() : logical_state(state);
        return evaluate_witness(psi, w).value;
      },
      py::arg("name"), py::arg("state"), py::arg("variant") = "calibrated");
  m.def("fidelity_lower_bound", &fidelity_lower_bound, py::arg("value"));

  m.def(
      "_run_experiment",
      [](const std::string& config_json) {
        const ReportBundle b = run_experiment(parse_config(nlohmann::json::parse(config_json)));
        return py::make_tuple(b.summary.dump(), b.csv, b.svg, b.text);
      },
      py::arg("config_json"));
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"graphcode"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(rc, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}
