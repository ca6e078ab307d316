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

#ifndef GRAPHCODE_GRAPH_HPP
#define GRAPHCODE_GRAPH_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "graphcode/kernel.hpp"
#include "graphcode/pauli.hpp"

namespace graphcode {

using Edge = std::pair<Label, Label>;

/// Simple undirected graph over qubit labels. Edges are stored with first < second.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops or edges to unknown vertices.
  Graph(std::set<Label> vertices, const std::vector<Edge>& edges);

  const std::set<Label>& vertices() const { return vertices_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::vector<Label> vertex_list() const { return {vertices_.begin(), vertices_.end()}; }
  bool has_edge(Label a, Label b) const;
  std::set<Label> neighbors(Label v) const;

  void add_edge(Label a, Label b);
  void remove_edge(Label a, Label b);
  void toggle_edge(Label a, Label b);

  std::string str() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::set<Label> vertices_;
  std::set<Edge> edges_;
};

namespace named_graphs {
/// 1-2-3-4-5.
Graph path5();
/// Complete bipartite {1,2} x {4,5}; re-derived from the syndrome factorisations on first use.
Graph box();
/// box() plus ancilla 3 joined to every code qubit.
Graph resource();
}  // namespace named_graphs

/// One K_a K_b = S requirement on an unknown graph.
struct ProductConstraint {
  Label a;
  Label b;
  PauliString product;
};

/// Every simple graph on `vertices` whose generators satisfy all constraints,
/// phases included. Exhaustive over edge subsets, so keep |V| small.
std::vector<Graph> graphs_satisfying(const std::set<Label>& vertices, const std::vector<ProductConstraint>& constraints);

/// Product of CZ over the edges applied to |+>^n, labels in increasing order.
PureState graph_state(const Graph& g);

/// K_v = X_v prod_{u in N(v)} Z_u, one per vertex in increasing order.
std::vector<PauliString> stabilizer_generators(const Graph& g);
PauliString stabilizer_generator(const Graph& g, Label v);

struct LocalComplement {
  Graph graph;
  /// sqrt(-iX) on v and sqrt(iZ) on every neighbour, all commuting.
  std::vector<CliffordGate> unitary;
};

LocalComplement local_complement(const Graph& g, Label v);

/// Eq. (1) amplitudes typed in term by term, labels (1,2,3,4,5).
PureState build_linear_cluster5();

/// The two-branch Y-eigenstate expansion of the five-qubit resource.
PureState explicit_resource_state();

struct ResourceBuild {
  PureState state;
  /// Gates of the two local-complementation layers, in application order.
  std::vector<CliffordGate> gates;
  double overlap_with_graph;
  double overlap_with_explicit;
  std::vector<std::string> log;
};

/// LC1 = A1 B2 (AA)3 B4 A5 followed by LC2 = A1 A2 B3 A4 A5 on the linear cluster.
/// Throws std::logic_error if the result misses either reference target.
ResourceBuild build_resource_checked();
PureState build_resource();

}  // namespace graphcode

#endif  // GRAPHCODE_GRAPH_HPP
