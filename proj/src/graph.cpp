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

#include "graphcode/graph.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

namespace graphcode {

namespace {

Edge normalized(Label a, Label b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Vector ket(std::string_view name) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  Vector v(2);
  if (name == "0") {
    v << 1.0, 0.0;
  } else if (name == "1") {
    v << 0.0, 1.0;
  } else if (name == "+") {
    v << r, r;
  } else if (name == "-") {
    v << r, -r;
  } else if (name == "+y") {
    v << r, i * r;
  } else if (name == "-y") {
    v << r, -i * r;
  } else {
    throw std::invalid_argument("unknown ket");
  }
  return v;
}

Vector kron(std::initializer_list<Vector> factors) {
  Vector out = Vector::Ones(1);
  for (const Vector& f : factors) {
    Vector next(out.size() * f.size());
    for (Eigen::Index j = 0; j < out.size(); ++j) next.segment(j * f.size(), f.size()) = out(j) * f;
    out = std::move(next);
  }
  return out;
}

const std::vector<Label> kFiveLabels{1, 2, 3, 4, 5};

}  // namespace

Graph::Graph(std::set<Label> vertices, const std::vector<Edge>& edges) : vertices_(std::move(vertices)) {
  for (const auto& [a, b] : edges) add_edge(a, b);
}

bool Graph::has_edge(Label a, Label b) const { return edges_.contains(normalized(a, b)); }

std::set<Label> Graph::neighbors(Label v) const {
  std::set<Label> out;
  for (const auto& [a, b] : edges_) {
    if (a == v) out.insert(b);
    if (b == v) out.insert(a);
  }
  return out;
}

void Graph::add_edge(Label a, Label b) {
  if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
  if (!vertices_.contains(a) || !vertices_.contains(b)) {
    throw std::invalid_argument("edge " + std::to_string(a) + "-" + std::to_string(b) + " references a missing vertex");
  }
  edges_.insert(normalized(a, b));
}

void Graph::remove_edge(Label a, Label b) { edges_.erase(normalized(a, b)); }

void Graph::toggle_edge(Label a, Label b) {
  if (has_edge(a, b)) {
    remove_edge(a, b);
  } else {
    add_edge(a, b);
  }
}

std::string Graph::str() const {
  std::ostringstream out;
  out << "V={";
  bool first = true;
  for (Label v : vertices_) {
    out << (first ? "" : ",") << v;
    first = false;
  }
  out << "} E={";
  first = true;
  for (const auto& [a, b] : edges_) {
    out << (first ? "" : ",") << a << "-" << b;
    first = false;
  }
  out << "}";
  return out.str();
}

namespace named_graphs {

Graph path5() { return Graph({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}); }

Graph box() {
  static const Graph g = [] {
    Graph expected({1, 2, 4, 5}, {{1, 4}, {1, 5}, {2, 4}, {2, 5}});
    const std::vector<ProductConstraint> constraints{
        {1, 5, PauliString::parse("Y1 Z2 Z4 Y5")},
        {1, 4, PauliString::parse("Y1 Z2 Y4 Z5")},
        {4, 2, PauliString::parse("Z1 Y2 Y4 Z5")},
    };
    const auto solutions = graphs_satisfying(expected.vertices(), constraints);
    if (solutions.size() != 1 || solutions.front() != expected) {
      throw std::logic_error("box graph is not the unique solution of the syndrome factorisations");
    }
    return expected;
  }();
  return g;
}

Graph resource() {
  Graph g({1, 2, 3, 4, 5}, {});
  const Graph b4 = box();
  for (const auto& [a, b] : b4.edges()) g.add_edge(a, b);
  for (Label q : {1, 2, 4, 5}) g.add_edge(3, q);
  return g;
}

}  // namespace named_graphs

std::vector<Graph> graphs_satisfying(const std::set<Label>& vertices, const std::vector<ProductConstraint>& constraints) {
  std::vector<Edge> candidates;
  for (auto a = vertices.begin(); a != vertices.end(); ++a) {
    for (auto b = std::next(a); b != vertices.end(); ++b) candidates.emplace_back(*a, *b);
  }
  if (candidates.size() > 20) throw std::invalid_argument("graphs_satisfying: too many vertices");
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
    Graph g(vertices, {});
    for (std::size_t e = 0; e < candidates.size(); ++e) {
      if (mask & (1u << e)) g.add_edge(candidates[e].first, candidates[e].second);
    }
    bool ok = true;
    for (const auto& c : constraints) {
      if (stabilizer_generator(g, c.a) * stabilizer_generator(g, c.b) != c.product) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(g));
  }
  return out;
}

PureState graph_state(const Graph& g) {
  const auto labels = g.vertex_list();
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw std::invalid_argument("graph_state: empty graph");
  if (n > kMaxQubits) throw std::invalid_argument("graph_state: more than 6 vertices");
  const std::uint64_t dim = 1ull << n;
  Vector amps = Vector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
  std::vector<std::pair<int, int>> positions;
  for (const auto& [a, b] : g.edges()) {
    const auto pa = std::find(labels.begin(), labels.end(), a) - labels.begin();
    const auto pb = std::find(labels.begin(), labels.end(), b) - labels.begin();
    positions.emplace_back(n - 1 - static_cast<int>(pa), n - 1 - static_cast<int>(pb));
  }
  for (std::uint64_t x = 0; x < dim; ++x) {
    int parity = 0;
    for (const auto& [sa, sb] : positions) parity ^= static_cast<int>((x >> sa) & (x >> sb) & 1u);
    if (parity) amps(static_cast<Eigen::Index>(x)) *= -1.0;
  }
  return PureState(labels, amps);
}

PauliString stabilizer_generator(const Graph& g, Label v) {
  if (!g.vertices().contains(v)) throw std::invalid_argument("stabilizer_generator: unknown vertex");
  std::map<Label, Letter> letters{{v, Letter::X}};
  for (Label u : g.neighbors(v)) letters[u] = Letter::Z;
  return PauliString(std::move(letters));
}

std::vector<PauliString> stabilizer_generators(const Graph& g) {
  std::vector<PauliString> out;
  for (Label v : g.vertices()) out.push_back(stabilizer_generator(g, v));
  return out;
}

LocalComplement local_complement(const Graph& g, Label v) {
  if (!g.vertices().contains(v)) throw std::invalid_argument("local_complement: unknown vertex");
  const auto nb = g.neighbors(v);
  Graph out = g;
  for (auto a = nb.begin(); a != nb.end(); ++a) {
    for (auto b = std::next(a); b != nb.end(); ++b) out.toggle_edge(*a, *b);
  }
  std::vector<CliffordGate> gates{CliffordGate::b(v)};
  for (Label u : nb) gates.push_back(CliffordGate::a(u));
  return {std::move(out), std::move(gates)};
}

PureState build_linear_cluster5() {
  const Vector k0 = ket("0"), k1 = ket("1"), kp = ket("+"), km = ket("-");
  const Vector left_plus = kron({kp, k0}) + kron({km, k1});
  const Vector left_minus = kron({kp, k0}) - kron({km, k1});
  const Vector right_plus = kron({k0, kp}) + kron({k1, km});
  const Vector right_minus = kron({k0, kp}) - kron({k1, km});
  const Vector amps =
      (kron({left_plus, k0, right_plus}) + kron({left_minus, k1, right_minus})) / (2.0 * std::sqrt(2.0));
  return PureState(kFiveLabels, amps);
}

PureState explicit_resource_state() {
  const cplx i{0.0, 1.0};
  const Vector pp = kron({ket("+"), ket("+")});
  const Vector mm = kron({ket("-"), ket("-")});
  const Vector a = pp + i * mm;
  const Vector b = pp - i * mm;
  const Vector amps = (kron({a, ket("-y"), a}) + i * kron({b, ket("+y"), b})) / (2.0 * std::sqrt(2.0));
  return PureState(kFiveLabels, amps);
}

ResourceBuild build_resource_checked() {
  using G = CliffordGate;
  // LC1 complements PATH5 at vertices 2 and 4 (qubit 3 is a neighbour of both);
  // LC2 complements the result at vertex 3.
  const std::vector<CliffordGate> lc1{G::a(1), G::b(2), G::a(3), G::a(3), G::b(4), G::a(5)};
  const std::vector<CliffordGate> lc2{G::a(1), G::a(2), G::b(3), G::a(4), G::a(5)};
  ResourceBuild out{build_linear_cluster5(), {}, 0.0, 0.0, {}};
  out.gates = lc1;
  out.gates.insert(out.gates.end(), lc2.begin(), lc2.end());
  out.state = apply_gates(out.state, out.gates);
  out.overlap_with_graph = overlap(out.state, graph_state(named_graphs::resource()));
  out.overlap_with_explicit = overlap(out.state, explicit_resource_state());
  std::ostringstream line;
  line.precision(12);
  line << "LC1 then LC2 with A = e^{-i pi/4} diag(1,-i), B = exp(-i pi/4 X); overlap(graph) = "
       << out.overlap_with_graph << ", overlap(explicit) = " << out.overlap_with_explicit;
  out.log.push_back(line.str());
  if (out.overlap_with_graph < 1.0 - kPhaseEquivalenceTolerance ||
      out.overlap_with_explicit < 1.0 - kPhaseEquivalenceTolerance) {
    throw std::logic_error("build_resource: " + out.log.back());
  }
  return out;
}

PureState build_resource() {
  static const PureState state = build_resource_checked().state;
  return state;
}

}  // namespace graphcode
