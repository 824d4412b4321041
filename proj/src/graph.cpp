#include "vrrw/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vrrw {

namespace {

constexpr double kWeightRelTol = 1e-9;

bool double_eq(double a, double b) {
  return std::abs(a - b) <= kWeightRelTol * std::max(std::abs(a), std::abs(b));
}

bool double_leq(double a, double b) {
  return a <= b + kWeightRelTol * std::max(std::abs(a), std::abs(b));
}

bool is_sorted_unique(const VertexSet& S) {
  for (std::size_t k = 1; k < S.size(); ++k)
    if (S[k - 1] >= S[k]) return false;
  return true;
}

VertexSet checked_subset(const WeightedGraph& g, const VertexSet& S) {
  if (S.empty()) throw std::invalid_argument("vertex set is empty");
  if (!is_sorted_unique(S)) throw std::invalid_argument("vertex set must be sorted and unique");
  if (S.front() < 0 || S.back() >= g.vertex_count())
    throw std::invalid_argument("vertex id out of range");
  return S;
}

}  // namespace

void WeightedGraph::set_names(std::vector<std::string> names) {
  if (static_cast<int>(names.size()) != n_)
    throw std::invalid_argument("names list must match vertex_count");
  names_ = std::move(names);
}

void WeightedGraph::add_edge(int u, int v, double weight,
                             std::optional<Rational> exact,
                             std::optional<std::string> repr) {
  if (u > v) std::swap(u, v);
  if (u < 0 || v >= n_) throw std::invalid_argument("edge endpoint out of range");
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw std::invalid_argument("edge weight must be positive and finite");
  if (adj_.rows() != n_) adj_ = Eigen::MatrixXd::Zero(n_, n_);
  if (nbrs_.empty()) nbrs_.resize(n_);
  if (adj_(u, v) != 0.0) throw std::invalid_argument("duplicate edge");
  adj_(u, v) = weight;
  adj_(v, u) = weight;
  edges_.push_back(Edge{u, v, weight, std::move(exact), std::move(repr)});
  auto insert_nbr = [&](int at, int to) {
    auto& lst = nbrs_[at];
    lst.insert(std::lower_bound(lst.begin(), lst.end(), std::make_pair(to, 0.0),
                                [](const auto& a, const auto& b) { return a.first < b.first; }),
               {to, weight});
  };
  insert_nbr(u, v);
  if (u != v) insert_nbr(v, u);
}

const Edge* WeightedGraph::find_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (const auto& e : edges_)
    if (e.u == u && e.v == v) return &e;
  return nullptr;
}

bool WeightedGraph::weights_equal(int i1, int j1, int i2, int j2) const {
  const Edge* e1 = find_edge(i1, j1);
  const Edge* e2 = find_edge(i2, j2);
  if (!e1 || !e2) return e1 == e2;  // both missing counts as equal (weight 0)
  if (e1->exact && e2->exact) return *e1->exact == *e2->exact;
  return double_eq(e1->weight, e2->weight);
}

bool WeightedGraph::weight_leq(int i1, int j1, int i2, int j2) const {
  const Edge* e1 = find_edge(i1, j1);
  const Edge* e2 = find_edge(i2, j2);
  const double a = e1 ? e1->weight : 0.0;
  const double b = e2 ? e2->weight : 0.0;
  if (e1 && e2 && e1->exact && e2->exact)
    return e1->exact->num * e2->exact->den <= e2->exact->num * e1->exact->den;
  return double_leq(a, b);
}

std::string WeightedGraph::vertex_label(int i) const {
  if (i >= 0 && i < static_cast<int>(names_.size())) return names_[i];
  return std::to_string(i);
}

void validate(const WeightedGraph& g) {
  if (g.vertex_count() < 1) throw std::invalid_argument("vertex_count must be >= 1");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges()) {
    if (e.u < 0 || e.v >= g.vertex_count() || e.u > e.v)
      throw std::invalid_argument("edge endpoints out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge weight must be positive");
    if (!seen.insert({e.u, e.v}).second) throw std::invalid_argument("duplicate edge");
  }
  // connectivity over non-loop edges
  std::vector<char> reached(g.vertex_count(), 0);
  std::queue<int> bfs;
  bfs.push(0);
  reached[0] = 1;
  while (!bfs.empty()) {
    const int u = bfs.front();
    bfs.pop();
    for (const auto& [w, a] : g.neighbors(u)) {
      (void)a;
      if (!reached[w]) {
        reached[w] = 1;
        bfs.push(w);
      }
    }
  }
  for (int i = 0; i < g.vertex_count(); ++i)
    if (!reached[i]) throw std::invalid_argument("graph is not connected");
}

VertexSet outer_boundary(const WeightedGraph& g, const VertexSet& S) {
  checked_subset(g, S);
  std::vector<char> in_S(g.vertex_count(), 0);
  for (int v : S) in_S[v] = 1;
  VertexSet out;
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (in_S[i]) continue;
    for (const auto& [w, a] : g.neighbors(i)) {
      (void)a;
      if (in_S[w]) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

VertexSet TrapReport::trap() const {
  VertexSet T = S;
  T.insert(T.end(), boundary.begin(), boundary.end());
  std::sort(T.begin(), T.end());
  return T;
}

DecomposeResult multipartite_decompose(const WeightedGraph& g, const VertexSet& S) {
  checked_subset(g, S);
  const auto related = [&](int i, int j) { return i == j || !g.adjacent(i, j); };
  // transitivity of i R j <=> (i == j or i !~ j); reflexive and symmetric for free
  for (int i : S)
    for (int j : S) {
      if (i == j || !related(i, j)) continue;
      for (int k : S) {
        if (k == i || k == j) continue;
        if (related(j, k) && !related(i, k)) {
          DecomposeResult res;
          res.failure = DecomposeFailure{"not_transitive", {i, j, k}};
          return res;
        }
      }
    }
  PartitionDecomposition pd;
  std::vector<char> assigned(g.vertex_count(), 0);
  for (int v : S) {
    if (assigned[v]) continue;
    VertexSet part;
    for (int u : S)
      if (related(v, u)) {
        part.push_back(u);
        assigned[u] = 1;
      }
    pd.parts.push_back(std::move(part));
  }
  pd.loop_part.resize(pd.parts.size(), false);
  for (std::size_t p = 0; p < pd.parts.size(); ++p) {
    bool loop = false;
    for (int v : pd.parts[p]) loop = loop || g.has_loop(v);
    pd.loop_part[p] = loop;
    if (loop && pd.parts[p].size() > 1) {
      DecomposeResult res;
      int lv = -1;
      for (int v : pd.parts[p])
        if (g.has_loop(v)) lv = v;
      const int other = pd.parts[p][0] == lv ? pd.parts[p][1] : pd.parts[p][0];
      res.failure = DecomposeFailure{"loop_part_not_singleton", {lv, lv, other}};
      return res;
    }
  }
  DecomposeResult res;
  res.partition = std::move(pd);
  return res;
}

bool check_P(const WeightedGraph& g, const VertexSet& S) {
  const auto dec = multipartite_decompose(g, S);
  if (!dec.ok()) return false;
  const auto& parts = dec.partition->parts;
  // weight constancy across each pair of parts (within-part weights are all
  // zero or a single loop, constant for free)
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t r = p + 1; r < parts.size(); ++r) {
      const int ref_u = parts[p][0], ref_v = parts[r][0];
      for (int u : parts[p])
        for (int v : parts[r])
          if (!g.weights_equal(u, v, ref_u, ref_v)) return false;
    }
  return true;
}

bool check_P_prime(const WeightedGraph& g, const VertexSet& S) {
  checked_subset(g, S);
  for (int j : S)
    for (int k : S) {
      if (j >= k || g.adjacent(j, k)) continue;
      for (int i : S) {
        const bool aj = g.adjacent(i, j), ak = g.adjacent(i, k);
        if (aj != ak) return false;
        if (aj && !g.weights_equal(i, j, i, k)) return false;
      }
    }
  return true;
}

TrapReport is_strongly_trapping(const WeightedGraph& g, const VertexSet& S) {
  TrapReport report;
  report.S = checked_subset(g, S);
  report.boundary = outer_boundary(g, S);

  // (a) constant weight on S-internal edges
  std::vector<std::pair<int, int>> internal;
  for (std::size_t k = 0; k < S.size(); ++k)
    for (std::size_t l = k; l < S.size(); ++l)
      if (g.adjacent(S[k], S[l])) internal.push_back({S[k], S[l]});
  if (internal.empty()) {
    report.verdict = TrapVerdict::fails_a;  // no edge to define a_S
    return report;
  }
  const auto [ru, rv] = internal.front();
  for (const auto& [u, v] : internal)
    if (!g.weights_equal(u, v, ru, rv)) {
      report.verdict = TrapVerdict::fails_a;
      return report;
    }
  report.a_S = g.weight(ru, rv);

  // (b) boundary weights do not exceed a_S
  for (int i : S)
    for (int j : report.boundary)
      if (g.adjacent(i, j) && !g.weight_leq(i, j, ru, rv)) {
        report.verdict = TrapVerdict::fails_b;
        return report;
      }

  // (c)
  bool any_loop = false;
  for (int v : S) any_loop = any_loop || g.has_loop(v);
  if (any_loop) {
    // clique of loops, and no boundary vertex dominates S
    for (int v : S)
      if (!g.has_loop(v)) {
        report.verdict = TrapVerdict::fails_c;
        return report;
      }
    for (std::size_t k = 0; k < S.size(); ++k)
      for (std::size_t l = k + 1; l < S.size(); ++l)
        if (!g.adjacent(S[k], S[l])) {
          report.verdict = TrapVerdict::fails_c;
          return report;
        }
    for (int j : report.boundary) {
      bool misses_some = false;
      for (int v : S) misses_some = misses_some || !g.adjacent(j, v);
      if (!misses_some) {
        report.verdict = TrapVerdict::fails_c;
        return report;
      }
    }
    report.verdict = TrapVerdict::strongly_trapping;
    return report;
  }

  const auto dec = multipartite_decompose(g, S);
  if (!dec.ok()) {
    report.verdict = TrapVerdict::fails_c;
    return report;
  }
  report.partition = dec.partition;
  const auto& parts = dec.partition->parts;
  if (parts.size() < 2) {
    report.verdict = TrapVerdict::fails_c;
    return report;
  }
  for (int j : report.boundary) {
    bool ok = false;
    for (std::size_t p = 0; p < parts.size() && !ok; ++p) {
      bool adj_part = false;
      for (int v : parts[p]) adj_part = adj_part || g.adjacent(j, v);
      if (adj_part) continue;
      // need an extra non-neighbor outside V_p
      for (int i : S) {
        if (std::binary_search(parts[p].begin(), parts[p].end(), i)) continue;
        if (!g.adjacent(j, i)) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) {
      report.verdict = TrapVerdict::fails_c;
      return report;
    }
  }
  report.verdict = TrapVerdict::strongly_trapping;
  return report;
}

std::optional<TrapReport> find_trapping_volkov(const WeightedGraph& g, int i, int j) {
  if (i == j) throw std::invalid_argument("seed edge must not be a loop");
  if (!g.adjacent(i, j)) throw std::invalid_argument("seed vertices are not adjacent");
  std::vector<VertexSet> parts = {{std::min(i, j)}, {std::max(i, j)}};
  auto make_S = [&]() {
    VertexSet S;
    for (const auto& p : parts) S.insert(S.end(), p.begin(), p.end());
    std::sort(S.begin(), S.end());
    return S;
  };
  VertexSet S = make_S();
  const int budget = g.vertex_count();
  int growths = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x : outer_boundary(g, S)) {
      std::vector<char> adj_part(parts.size(), 0);
      for (std::size_t p = 0; p < parts.size(); ++p)
        for (int v : parts[p])
          if (g.adjacent(x, v)) {
            adj_part[p] = 1;
            break;
          }
      const bool all_parts =
          std::all_of(adj_part.begin(), adj_part.end(), [](char c) { return c != 0; });
      if (all_parts) {
        // collapse to a clique of one representative per part plus x
        if (++growths > budget) return std::nullopt;
        std::vector<VertexSet> next;
        for (std::size_t p = 0; p < parts.size(); ++p)
          for (int v : parts[p])
            if (g.adjacent(x, v)) {
              next.push_back({v});
              break;
            }
        next.push_back({x});
        parts = std::move(next);
        S = make_S();
        changed = true;
        break;
      }
      // join the first missed part whose complement x dominates
      int join = -1;
      for (std::size_t p = 0; p < parts.size() && join < 0; ++p) {
        if (adj_part[p]) continue;
        bool dominates_rest = true;
        for (int u : S) {
          if (std::binary_search(parts[p].begin(), parts[p].end(), u)) continue;
          if (!g.adjacent(x, u)) {
            dominates_rest = false;
            break;
          }
        }
        if (dominates_rest) join = static_cast<int>(p);
      }
      if (join >= 0) {
        if (++growths > budget) return std::nullopt;
        parts[join].insert(
            std::lower_bound(parts[join].begin(), parts[join].end(), x), x);
        S = make_S();
        changed = true;
        break;
      }
    }
  }
  TrapReport report = is_strongly_trapping(g, S);
  if (report.verdict != TrapVerdict::strongly_trapping) return std::nullopt;
  return report;
}

bool check_bipartite_criterion(const WeightedGraph& g, int i, int j) {
  const int n = g.vertex_count();
  if (n > 32) throw std::invalid_argument("bipartite criterion limited to 32 vertices");
  for (int v = 0; v < n; ++v)
    if (g.has_loop(v)) throw std::invalid_argument("graph must be loop-free");
  for (const auto& e : g.edges())
    for (int w = 0; w < n; ++w)
      if (w != e.u && w != e.v && g.adjacent(w, e.u) && g.adjacent(w, e.v))
        throw std::invalid_argument("graph must be triangle-free");
  if (i == j || !g.adjacent(i, j)) throw std::invalid_argument("(i,j) must be an edge");

  // subgraph of edges whose weight equals a(i,j)
  std::vector<std::uint64_t> nh(n, 0);
  for (const auto& e : g.edges())
    if (g.weights_equal(e.u, e.v, i, j)) {
      nh[e.u] |= std::uint64_t{1} << e.v;
      nh[e.v] |= std::uint64_t{1} << e.u;
    }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  auto common = [&](std::uint64_t set) {
    std::uint64_t c = all;
    for (int v = 0; v < n; ++v)
      if (set >> v & 1) c &= nh[v];
    return c;
  };

  // enumerate maximal complete 2-partite subgraphs containing {i,j}: the side
  // holding t is a subset of the equal-weight neighborhood of s, so host the
  // enumeration at the endpoint with the smaller neighborhood
  int s = i, t = j;
  if (std::popcount(nh[s]) > std::popcount(nh[t])) std::swap(s, t);
  const std::uint64_t base = nh[s] & ~(std::uint64_t{1} << t);  // candidates beside t
  if (std::popcount(base) > 20)
    throw std::invalid_argument("equal-weight neighborhood too large to enumerate");
  std::vector<int> cand;
  for (int v = 0; v < n; ++v)
    if (base >> v & 1) cand.push_back(v);

  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  bool satisfied = false;
  double best = std::numeric_limits<double>::infinity();
  const double a_e = g.weight(i, j);
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << cand.size()); ++pick) {
    std::uint64_t side_t = std::uint64_t{1} << t;
    for (std::size_t kk = 0; kk < cand.size(); ++kk)
      if (pick >> kk & 1) side_t |= std::uint64_t{1} << cand[kk];
    const std::uint64_t side_s = common(side_t);
    if (!(side_s >> s & 1)) continue;
    const std::uint64_t closed_t = common(side_s);
    if (!seen.insert({side_s, closed_t}).second) continue;
    VertexSet S;
    for (int v = 0; v < n; ++v)
      if ((side_s | closed_t) >> v & 1) S.push_back(v);
    double worst = -std::numeric_limits<double>::infinity();
    for (int k : S)
      for (int l : outer_boundary(g, S))
        if (g.adjacent(k, l)) worst = std::max(worst, g.weight(k, l));
    best = std::min(best, worst);
    if (worst == -std::numeric_limits<double>::infinity() || double_leq(worst, a_e))
      satisfied = true;
  }
  (void)best;
  return satisfied;
}

WeightedGraph graph_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw std::invalid_argument("graph JSON needs 'vertices' and 'edges'");
  if (!doc["vertices"].is_number_integer())
    throw std::invalid_argument("'vertices' must be an integer");
  WeightedGraph g(doc["vertices"].get<int>());
  if (g.vertex_count() < 1) throw std::invalid_argument("vertex_count must be >= 1");
  for (const auto& item : doc["edges"]) {
    if (!item.is_array() || item.size() != 3)
      throw std::invalid_argument("each edge must be [i, j, weight]");
    const int u = item[0].get<int>();
    const int v = item[1].get<int>();
    if (u > v) throw std::invalid_argument("edges must be listed with i <= j");
    if (item[2].is_string()) {
      const std::string repr = item[2].get<std::string>();
      const auto rat = parse_rational(repr);
      if (!rat || rat->num <= 0)
        throw std::invalid_argument("weight string must be a positive rational: " + repr);
      g.add_edge(u, v, rat->value(), rat, repr);
    } else if (item[2].is_number()) {
      g.add_edge(u, v, item[2].get<double>());
    } else {
      throw std::invalid_argument("weight must be a number or rational string");
    }
  }
  if (doc.contains("names")) g.set_names(doc["names"].get<std::vector<std::string>>());
  validate(g);
  return g;
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return graph_from_json(buf.str());
}

std::string graph_to_json(const WeightedGraph& g) {
  nlohmann::ordered_json doc;
  doc["vertices"] = g.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  std::vector<const Edge*> sorted;
  for (const auto& e : g.edges()) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->u, a->v) < std::tie(b->u, b->v);
  });
  for (const Edge* e : sorted) {
    auto entry = nlohmann::ordered_json::array();
    entry.push_back(e->u);
    entry.push_back(e->v);
    if (e->repr)
      entry.push_back(*e->repr);
    else if (e->exact)
      entry.push_back(e->exact->str());
    else
      entry.push_back(e->weight);
    edges.push_back(std::move(entry));
  }
  doc["edges"] = std::move(edges);
  if (!g.names().empty()) doc["names"] = g.names();
  return doc.dump(2) + "\n";
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << graph_to_json(g);
}

}  // namespace vrrw
