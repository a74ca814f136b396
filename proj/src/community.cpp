#include "cod/community.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

namespace cod {

namespace {

bool sorted_contains(const std::vector<std::size_t> &v, std::size_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

std::size_t intersection_size(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

using NodeList = std::vector<std::size_t>;

struct CliqueSearch {
  const std::vector<NodeList> &adj;
  std::vector<NodeList> &out;
  NodeList current;

  NodeList intersect(const NodeList &set, std::size_t v) const {
    NodeList r;
    std::set_intersection(set.begin(), set.end(), adj[v].begin(), adj[v].end(), std::back_inserter(r));
    return r;
  }

  void expand(NodeList candidates, NodeList excluded) {
    if (candidates.empty()) {
      if (excluded.empty()) {
        NodeList clique = current;
        std::sort(clique.begin(), clique.end());
        out.push_back(std::move(clique));
      }
      return;
    }
    // Pivot: the vertex of P u X with most neighbours in P.
    std::size_t pivot = candidates.front();
    std::size_t best = 0;
    for (const NodeList *set : {&candidates, &excluded}) {
      for (std::size_t u : *set) {
        const std::size_t hits = intersection_size(candidates, adj[u]);
        if (hits > best || (hits == best && u < pivot)) {
          best = hits;
          pivot = u;
        }
      }
    }
    NodeList branch;
    std::set_difference(candidates.begin(), candidates.end(), adj[pivot].begin(), adj[pivot].end(),
                        std::back_inserter(branch));
    for (std::size_t v : branch) {
      current.push_back(v);
      expand(intersect(candidates, v), intersect(excluded, v));
      current.pop_back();
      candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
      excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
    }
  }
};

std::vector<NodeList> adjacency_lists(const WeightedGraph &g) {
  std::vector<NodeList> adj(g.n_nodes());
  for (std::size_t v = 0; v < g.n_nodes(); ++v)
    for (const auto &nb : g.neighbors(v)) adj[v].push_back(nb.node);
  return adj;
}

}  // namespace

CommunitySet::CommunitySet(std::size_t n_nodes, std::vector<std::vector<std::size_t>> initial)
    : member_index_(n_nodes), covered_(n_nodes, false) {
  for (auto &nodes : initial) std::sort(nodes.begin(), nodes.end());
  std::sort(initial.begin(), initial.end());
  for (std::size_t c = 0; c < initial.size(); ++c) {
    Community com;
    com.core = initial[c];
    com.members = initial[c];
    for (std::size_t v : com.core) {
      if (v >= n_nodes) throw Error("community member out of range");
      member_index_[v].push_back(c);
      covered_[v] = true;
    }
    communities_.push_back(std::move(com));
  }
}

bool CommunitySet::in_core(std::size_t c, std::size_t v) const {
  return sorted_contains(communities_[c].core, v);
}

bool CommunitySet::contains(std::size_t c, std::size_t v) const {
  return sorted_contains(communities_[c].members, v);
}

void CommunitySet::admit(std::size_t c, std::size_t v) {
  auto &members = communities_[c].members;
  auto it = std::lower_bound(members.begin(), members.end(), v);
  if (it != members.end() && *it == v) return;
  members.insert(it, v);
  communities_[c].origin = CommunityOrigin::extended;
  auto &index = member_index_[v];
  index.insert(std::lower_bound(index.begin(), index.end(), c), c);
}

std::vector<std::vector<std::size_t>> maximal_cliques(const WeightedGraph &g) {
  const std::vector<NodeList> adj = adjacency_lists(g);
  std::vector<NodeList> out;
  CliqueSearch search{adj, out, {}};
  // Outer level: each clique is reported from its smallest vertex.
  for (std::size_t v = 0; v < adj.size(); ++v) {
    NodeList later, earlier;
    for (std::size_t u : adj[v]) (u > v ? later : earlier).push_back(u);
    search.current = {v};
    search.expand(std::move(later), std::move(earlier));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CommunitySet percolation_communities(const WeightedGraph &g, std::size_t q) {
  if (q < 2) throw Error("clique size q must be at least 2");
  // Maximal cliques of size >= q, joined when they overlap in q-1 or more
  // nodes, give the same communities as chaining individual q-cliques.
  std::vector<NodeList> cliques;
  for (auto &c : maximal_cliques(g))
    if (c.size() >= q) cliques.push_back(std::move(c));

  std::vector<NodeList> cliques_of(g.n_nodes());
  for (std::size_t c = 0; c < cliques.size(); ++c)
    for (std::size_t v : cliques[c]) cliques_of[v].push_back(c);

  DisjointSets sets(cliques.size());
  for (std::size_t v = 0; v < g.n_nodes(); ++v) {
    const auto &ids = cliques_of[v];
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        if (sets.find(ids[a]) == sets.find(ids[b])) continue;
        if (intersection_size(cliques[ids[a]], cliques[ids[b]]) + 1 >= q) sets.unite(ids[a], ids[b]);
      }
  }

  std::vector<NodeList> groups(cliques.size());
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    auto &group = groups[sets.find(c)];
    group.insert(group.end(), cliques[c].begin(), cliques[c].end());
  }
  std::vector<NodeList> communities;
  for (auto &group : groups) {
    if (group.empty()) continue;
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    communities.push_back(std::move(group));
  }
  return CommunitySet(g.n_nodes(), std::move(communities));
}

double belongingness(std::size_t v, std::size_t c, const CommunitySet &cs, const WeightedGraph &g) {
  if (c >= cs.size() || !cs.in_core(c, v))
    throw Error("node " + std::to_string(v) + " is not an initial member of community " +
                std::to_string(c));
  std::size_t in_c = 0, in_s = 0;
  for (const auto &nb : g.neighbors(v)) {
    if (!cs.covered(nb.node)) continue;
    ++in_s;
    if (cs.in_core(c, nb.node)) ++in_c;
  }
  return in_s == 0 ? 0.0 : static_cast<double>(in_c) / static_cast<double>(in_s);
}

double internal_connectivity(std::size_t c, const CommunitySet &cs, const WeightedGraph &g) {
  double ic = 0.0;
  for (std::size_t v : cs[c].core) ic += belongingness(v, c, cs, g);
  return ic;
}

double connection_strength(std::size_t c, std::size_t w, const CommunitySet &cs, const WeightedGraph &g) {
  const DistanceMatrix &dm = g.distances();
  double strength = 0.0;
  for (std::size_t v : cs[c].core) strength += belongingness(v, c, cs, g) / (dm(w, v) + 1.0);
  return strength;
}

double tolerance_delta(const WeightedGraph &g, double percentile) {
  if (!(percentile > 0.0 && percentile <= 100.0)) throw Error("percentile must be in (0, 100]");
  std::vector<double> weights;
  for (const Edge &e : g.edges()) weights.push_back(e.weight);
  if (weights.empty()) throw Error("cannot compute delta on an edgeless graph");
  std::sort(weights.begin(), weights.end());
  const double n = static_cast<double>(weights.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, weights.size());
  return weights[rank - 1];
}

ExtensionParams ExtensionParams::from_graph(const WeightedGraph &g, std::size_t q, double percentile) {
  return {tolerance_delta(g, percentile), percentile, q};
}

CommunitySet extend_communities(const CommunitySet &cs, const WeightedGraph &g,
                                const ExtensionParams &params, std::size_t threads) {
  if (!(params.delta >= 0.0 && params.delta <= 1.0)) throw Error("delta must be in [0, 1]");
  if (cs.n_nodes() != g.n_nodes()) throw Error("community set and graph sizes differ");

  std::vector<std::vector<double>> rho(cs.size());
  std::vector<double> ic(cs.size(), 0.0);
  for (std::size_t c = 0; c < cs.size(); ++c) {
    if (cs[c].origin != CommunityOrigin::initial || cs[c].core != cs[c].members)
      throw Error("extension expects unextended communities");
    for (std::size_t v : cs[c].core) {
      rho[c].push_back(belongingness(v, c, cs, g));
      ic[c] += rho[c].back();
    }
  }

  std::vector<std::size_t> candidates;
  for (std::size_t w = 0; w < cs.n_nodes(); ++w)
    if (!cs.covered(w)) candidates.push_back(w);

  const DistanceMatrix &dm = g.distances();
  std::vector<std::vector<std::size_t>> joins(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t idx) {
    const std::size_t w = candidates[idx];
    for (std::size_t c = 0; c < cs.size(); ++c) {
      const auto &core = cs[c].core;
      double strength = 0.0;
      for (std::size_t m = 0; m < core.size(); ++m) strength += rho[c][m] / (dm(w, core[m]) + 1.0);
      if (strength >= params.delta * ic[c]) joins[idx].push_back(c);
    }
  });

  CommunitySet out = cs;
  for (std::size_t idx = 0; idx < candidates.size(); ++idx)
    for (std::size_t c : joins[idx]) out.admit(c, candidates[idx]);
  return out;
}

CommunitySet detect_communities(const WeightedGraph &g, std::size_t q, double percentile,
                                std::size_t threads) {
  CommunitySet initial = percolation_communities(g, q);
  if (g.edge_count() == 0) return initial;
  return extend_communities(initial, g, ExtensionParams::from_graph(g, q, percentile), threads);
}

void write_communities(std::ostream &out, const CommunitySet &cs) {
  for (std::size_t c = 0; c < cs.size(); ++c) {
    out << c << ' ' << (cs[c].origin == CommunityOrigin::initial ? "initial" : "extended") << ' ';
    const auto &members = cs[c].members;
    for (std::size_t i = 0; i < members.size(); ++i) out << (i ? "," : "") << members[i];
    out << '\n';
  }
}

}  // namespace cod
