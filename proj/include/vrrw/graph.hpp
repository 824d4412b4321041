#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "vrrw/rational.hpp"

namespace vrrw {

using VertexSet = std::vector<int>;  // sorted, unique vertex ids

struct Edge {
  int u = 0;                       // u <= v; loop when u == v
  int v = 0;
  double weight = 0.0;             // > 0
  std::optional<Rational> exact;   // set when the weight was given exactly
  std::optional<std::string> repr; // literal text from the input file, re-emitted verbatim
};

// Finite weighted graph with positive edge weights; loops allowed.
// Undirected: each unordered pair appears once in `edges`.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int vertex_count)
      : n_(std::max(vertex_count, 0)),
        adj_(Eigen::MatrixXd::Zero(n_, n_)),
        nbrs_(static_cast<std::size_t>(n_)) {}

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names);

  // Throws std::invalid_argument on out-of-range ids, nonpositive weight,
  // or duplicate edges.
  void add_edge(int u, int v, double weight,
                std::optional<Rational> exact = std::nullopt,
                std::optional<std::string> repr = std::nullopt);

  bool adjacent(int i, int j) const { return adj_(i, j) != 0.0; }
  double weight(int i, int j) const { return adj_(i, j); }
  const Eigen::MatrixXd& adjacency() const { return adj_; }
  bool has_loop(int i) const { return adj_(i, i) != 0.0; }

  // Neighbors of i (including i itself when there is a loop), ascending.
  const std::vector<std::pair<int, double>>& neighbors(int i) const {
    return nbrs_[i];
  }
  int degree(int i) const { return static_cast<int>(nbrs_[i].size()); }

  // True when both endpoints carry exact rational weights; then equality is
  // exact, otherwise relative tolerance 1e-9.
  bool weights_equal(int i1, int j1, int i2, int j2) const;
  // weight(i1,j1) <= weight(i2,j2), exact when both are rational.
  bool weight_leq(int i1, int j1, int i2, int j2) const;

  std::string vertex_label(int i) const;

 private:
  const Edge* find_edge(int u, int v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  Eigen::MatrixXd adj_{Eigen::MatrixXd::Zero(0, 0)};
  std::vector<std::vector<std::pair<int, double>>> nbrs_;
  std::vector<std::string> names_;
};

// Structural checks: vertex_count >= 1, ids in range, positive weights,
// no duplicate edges, connected (loops do not help connectivity).
// Throws std::invalid_argument describing the first violation.
void validate(const WeightedGraph& g);

// {y : y not in S, y ~ i for some i in S}, ascending ids.
VertexSet outer_boundary(const WeightedGraph& g, const VertexSet& S);

struct PartitionDecomposition {
  std::vector<VertexSet> parts;   // each sorted; parts ordered by smallest member
  std::vector<bool> loop_part;    // part consists of a single loop vertex
};

struct DecomposeFailure {
  std::string reason;             // "not_transitive" | "loop_part_not_singleton"
  std::array<int, 3> witness{-1, -1, -1};
};

// Decomposes S by the relation i R j <=> (i == j or i !~ j).  Succeeds when
// R is an equivalence relation on S and every part containing a loop vertex
// is a singleton; cross-part adjacency is then automatic.
struct DecomposeResult {
  std::optional<PartitionDecomposition> partition;
  std::optional<DecomposeFailure> failure;
  bool ok() const { return partition.has_value(); }
};
DecomposeResult multipartite_decompose(const WeightedGraph& g, const VertexSet& S);

// Complete multipartite with possible loops + loop parts singleton + weight
// constant across each pair of parts.
bool check_P(const WeightedGraph& g, const VertexSet& S);

// j,k in S nonadjacent  =>  a(i,j) == a(i,k) for every i in S.
bool check_P_prime(const WeightedGraph& g, const VertexSet& S);

enum class TrapVerdict { strongly_trapping, fails_a, fails_b, fails_c };

struct TrapReport {
  VertexSet S;
  VertexSet boundary;                                // outer boundary of S
  std::optional<double> a_S;                         // common internal weight
  std::optional<PartitionDecomposition> partition;   // when S decomposes
  TrapVerdict verdict = TrapVerdict::fails_c;
  VertexSet trap() const;                            // S union boundary
};

// Checks the three clauses of the strongly-trapping definition in order:
// (a) constant weight a_S on S-internal edges,
// (b) every S-to-boundary weight <= a_S,
// (c) loop-free S: complete d-partite (d>=2) and every boundary vertex j has
//     a part V_p plus an extra vertex i in S\V_p with j nonadjacent to all of
//     V_p and to i; S with loops: clique of loops with no boundary vertex
//     adjacent to every vertex of S.
// Verdict records the first failing clause.
TrapReport is_strongly_trapping(const WeightedGraph& g, const VertexSet& S);

// Growth iteration from a seed edge {i,j} (non-loop): repeatedly scan the
// boundary in ascending id order; a vertex adjacent to every part collapses S
// to a (d+1)-clique, a vertex missing exactly one part and adjacent to the
// rest of S joins that part; stops when a full pass leaves S unchanged.
// Returns the verified report, or nullopt when the growth-step budget
// (vertex_count) is exceeded or the stabilized set is not strongly trapping.
std::optional<TrapReport> find_trapping_volkov(const WeightedGraph& g, int i, int j);

// Two-partite criterion for a loop-free triangle-free graph: over all maximal
// complete 2-partite subgraphs S containing edge e with internal weight
// constant equal to a_e, the smallest of max_{k in S, l in boundary} a(k,l)
// is <= a_e.  Throws std::invalid_argument on loops/triangles or graphs with
// more than 32 vertices.
bool check_bipartite_criterion(const WeightedGraph& g, int i, int j);

// ---- file format ----
// {"vertices": n, "edges": [[i, j, w], ...], "names": [...]?} with i <= j;
// w is a positive number or an exact string like "3/8" (round-trips verbatim).
WeightedGraph graph_from_json(const std::string& text);
WeightedGraph load_graph(const std::string& path);
std::string graph_to_json(const WeightedGraph& g);
void save_graph(const WeightedGraph& g, const std::string& path);

}  // namespace vrrw
