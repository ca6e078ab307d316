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

#include <algorithm>
#include <vector>

#include "check.hpp"
#include "graphcode/code412.hpp"
#include "graphcode/graph.hpp"
#include "oracle.hpp"

namespace graphcode {
namespace {

TEST_SUITE_BEGIN("graph");

using namespace oracle;

// The linear cluster written out term by term, qubits 1..5.
Vec literal_linear_cluster() {
  const Vec a = kron(plus(), zero()) + kron(minus(), one());
  const Vec b = kron(plus(), zero()) - kron(minus(), one());
  const Vec c = kron(zero(), plus()) + kron(one(), minus());
  const Vec d = kron(zero(), plus()) - kron(one(), minus());
  return (kron({a, zero(), c}) + kron({b, one(), d})) / (2.0 * std::sqrt(2.0));
}

// The code-plus-ancilla resource written out term by term, qubits 1..5.
Vec literal_resource() {
  const Vec pp = kron(plus(), plus()), mm = kron(minus(), minus());
  const Vec u = pp + kI * mm;
  const Vec w = pp - kI * mm;
  return (kron({u, minus_y(), u}) + kI * kron({w, plus_y(), w})) / (2.0 * std::sqrt(2.0));
}

double fid(const PureState& s, const Vec& v) { return oracle::fidelity(s.amplitudes(), v); }

TEST_CASE("GraphState.SingleVertexIsPlus") {
  const PureState s = graph_state(Graph({7}, {}));
  CHECK_NEAR(fid(s, plus()), 1.0, 1e-12);
}

TEST_CASE("GraphState.OneEdge") {
  const PureState s = graph_state(Graph({1, 2}, {{1, 2}}));
  const Vec expected = kR2 * (kron(zero(), plus()) + kron(one(), minus()));
  CHECK((s.amplitudes() - expected).norm() < 1e-12);
}

TEST_CASE("GraphState.PathMatchesLiteralLinearCluster") {
  const Vec lit = literal_linear_cluster();
  CHECK_NEAR(lit.norm(), 1.0, 1e-12);
  CHECK_NEAR(fid(graph_state(named_graphs::path5()), lit), 1.0, 1e-9);
  CHECK_NEAR(fid(build_linear_cluster5(), lit), 1.0, 1e-9);
}

TEST_CASE("GraphState.TooManyVerticesThrows") {
  CHECK_THROWS_AS(graph_state(Graph({1, 2, 3, 4, 5, 6, 7}, {})), std::invalid_argument);
}

TEST_CASE("Graph.RejectsBadEdges") {
  CHECK_THROWS_AS(Graph({1, 2}, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph({1, 2}, {{1, 3}}), std::invalid_argument);
}

TEST_CASE("LinearCluster.AmplitudeOfAllZeros") {
  const PureState s = build_linear_cluster5();
  const cplx a0 = s.amplitude(0);
  CHECK_NEAR(a0.imag(), 0.0, 1e-12);
  CHECK_NEAR(a0.real(), 1.0 / std::sqrt(32.0), 1e-12);
  CHECK_NEAR(s.amplitudes().norm(), 1.0, 1e-12);
  CHECK((s.amplitudes() - graph_state(named_graphs::path5()).amplitudes()).norm() < 1e-10);
}

TEST_CASE("Stabilizers.Examples") {
  CHECK(stabilizer_generator(named_graphs::box(), 1) == PauliString::parse("X1 Z4 Z5"));
  CHECK(stabilizer_generator(named_graphs::path5(), 3) == PauliString::parse("Z2 X3 Z4"));
  CHECK(stabilizer_generators(Graph({2}, {})) == std::vector<PauliString>{PauliString::parse("X2")});
}

TEST_CASE("Stabilizers.HoldOnEveryNamedGraph") {
  for (const Graph& g : {named_graphs::path5(), named_graphs::box(), named_graphs::resource(),
                         Graph({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}})}) {
    const PureState s = graph_state(g);
    for (const auto& k : stabilizer_generators(g)) {
      CHECK_NEAR(expectation(s, k), 1.0, 1e-10);
      CHECK(equal_up_to_phase(apply_pauli(s, k), s));
      CHECK_NEAR(overlap(apply_pauli(s, k), s), 1.0, 1e-10);
    }
  }
}

TEST_CASE("NamedGraphs.BoxIsUniqueForSyndromeProducts") {
  // Any graph on {1,2,4,5} whose generators multiply to the three syndrome operators.
  const auto& s = syndrome_operators();
  const std::vector<ProductConstraint> constraints{{1, 5, s[0]}, {1, 4, s[1]}, {4, 2, s[2]}};
  const auto found = graphs_satisfying({1, 2, 4, 5}, constraints);
  REQUIRE(found.size() == 1);
  CHECK(found[0] == named_graphs::box());
  CHECK(named_graphs::box().edges() == std::set<Edge>{{1, 4}, {1, 5}, {2, 4}, {2, 5}});
}

TEST_CASE("NamedGraphs.ResourceIsBoxPlusAncilla") {
  const Graph r = named_graphs::resource();
  CHECK(r.vertices() == std::set<Label>{1, 2, 3, 4, 5});
  CHECK(r.neighbors(3) == std::set<Label>{1, 2, 4, 5});
  for (const auto& [a, b] : named_graphs::box().edges()) CHECK(r.has_edge(a, b));
  CHECK(r.edges().size() == 8);
}

TEST_CASE("LocalComplement.SingleEdgeUnchanged") {
  const Graph g({1, 2}, {{1, 2}});
  const auto lc = local_complement(g, 1);
  CHECK(lc.graph == g);
  CHECK(equal_up_to_phase(apply_gates(graph_state(g), lc.unitary), graph_state(lc.graph)));
}

TEST_CASE("LocalComplement.TriangleBecomesPath") {
  const Graph tri({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
  for (Label v : {1, 2, 3}) {
    const Graph out = local_complement(tri, v).graph;
    CHECK(out.edges().size() == 2);
    CHECK(out.neighbors(v).size() == 2);
  }
}

TEST_CASE("LocalComplement.Involution") {
  for (const Graph& g : {named_graphs::path5(), named_graphs::box(), named_graphs::resource()}) {
    for (Label v : g.vertices()) CHECK(local_complement(local_complement(g, v).graph, v).graph == g);
  }
}

TEST_CASE("LocalComplement.UnitaryMapsStateToState") {
  for (const Graph& g : {named_graphs::path5(), named_graphs::box(), named_graphs::resource()}) {
    for (Label v : g.vertices()) {
      const auto lc = local_complement(g, v);
      INFO("graph " << g.str() << " vertex " << v);
      CHECK(equal_up_to_phase(apply_gates(graph_state(g), lc.unitary), graph_state(lc.graph)));
    }
  }
}

TEST_CASE("LocalComplement.PathReachesResourceWithinThreeSteps") {
  // Breadth-first search over vertex sequences, independent of the build sequence.
  const Graph target = named_graphs::resource();
  std::vector<Graph> frontier{named_graphs::path5()};
  bool reached = false;
  for (int depth = 0; depth < 3 && !reached; ++depth) {
    std::vector<Graph> next;
    for (const auto& g : frontier) {
      for (Label v : g.vertices()) {
        Graph h = local_complement(g, v).graph;
        if (h == target) reached = true;
        next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  CHECK(reached);
}

TEST_CASE("Resource.MatchesBothReferences") {
  const PureState r = build_resource();
  CHECK_NEAR(overlap(r, graph_state(named_graphs::resource())), 1.0, 1e-9);
  const Vec lit = literal_resource();
  CHECK_NEAR(lit.norm(), 1.0, 1e-12);
  CHECK_NEAR(fid(r, lit), 1.0, 1e-9);
  CHECK_NEAR(fid(explicit_resource_state(), lit), 1.0, 1e-9);
  const auto checked = build_resource_checked();
  CHECK_NEAR(checked.overlap_with_graph, 1.0, 1e-9);
  CHECK_NEAR(checked.overlap_with_explicit, 1.0, 1e-9);
  CHECK_FALSE(checked.gates.empty());
}

TEST_CASE("Resource.StabilizedByAllGenerators") {
  const PureState r = build_resource();
  for (const auto& k : stabilizer_generators(named_graphs::resource())) CHECK_NEAR(expectation(r, k), 1.0, 1e-10);
}

TEST_CASE("Resource.AncillaZLeavesBoxCluster") {
  const auto m = projective_measure(build_resource(), kAncilla, Basis::Z, 0);
  const Vec box = 0.5 * (kron({plus(), plus(), zero(), zero()}) + kron({plus(), plus(), one(), one()}) +
                         kron({minus(), minus(), zero(), one()}) + kron({minus(), minus(), one(), zero()}));
  CHECK_NEAR(fid(m.post_state, box), 1.0, 1e-9);
  CHECK_NEAR(overlap(m.post_state, graph_state(named_graphs::box())), 1.0, 1e-9);
}

TEST_SUITE_END();

}  // namespace
}  // namespace graphcode
