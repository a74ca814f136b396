#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cod/graph.hpp"

namespace cod {

enum class CommunityOrigin { initial, extended };

struct Community {
  /// Members found by percolation, sorted.
  std::vector<std::size_t> core;
  /// All members (core plus nodes admitted by extension), sorted.
  std::vector<std::size_t> members;
  CommunityOrigin origin = CommunityOrigin::initial;
};

/// Overlapping communities over the nodes of one graph.
class CommunitySet {
public:
  CommunitySet() = default;
  /// Builds the set from initial (percolation) communities.
  CommunitySet(std::size_t n_nodes, std::vector<std::vector<std::size_t>> initial);

  std::size_t n_nodes() const { return member_index_.size(); }
  std::size_t size() const { return communities_.size(); }
  const Community &operator[](std::size_t c) const { return communities_[c]; }
  const std::vector<Community> &communities() const { return communities_; }

  /// Ids of every community containing v (S_v), ascending.
  const std::vector<std::size_t> &memberships(std::size_t v) const { return member_index_[v]; }
  /// True when v belongs to some initial community (v in S).
  bool covered(std::size_t v) const { return covered_[v]; }
  bool in_core(std::size_t c, std::size_t v) const;
  bool contains(std::size_t c, std::size_t v) const;

  /// Appends v to community c as an extension member.
  void admit(std::size_t c, std::size_t v);

private:
  std::vector<Community> communities_;
  std::vector<std::vector<std::size_t>> member_index_;
  std::vector<bool> covered_;
};

/// All maximal cliques (Bron-Kerbosch with Tomita pivoting), each sorted,
/// listed in lexicographic order.
std::vector<std::vector<std::size_t>> maximal_cliques(const WeightedGraph &g);

/// q-clique percolation: q-cliques sharing q-1 nodes are chained, and every
/// community is the union of one chain. Weights are ignored. Communities are
/// ordered by their smallest member.
CommunitySet percolation_communities(const WeightedGraph &g, std::size_t q);

/// Fraction of v's neighbours inside S that lie in core(c); 0 when v has no
/// neighbours in S.
double belongingness(std::size_t v, std::size_t c, const CommunitySet &cs, const WeightedGraph &g);

/// Sum of belongingness over the core of c.
double internal_connectivity(std::size_t c, const CommunitySet &cs, const WeightedGraph &g);

/// Sum over core(c) of rho(v) / (d(w, v) + 1), for a node w outside S.
double connection_strength(std::size_t c, std::size_t w, const CommunitySet &cs,
                           const WeightedGraph &g);

/// Nearest-rank percentile of the edge weights.
double tolerance_delta(const WeightedGraph &g, double percentile);

struct ExtensionParams {
  double delta = 0.0;
  double percentile = 75.0;
  std::size_t q = 8;

  /// Fills delta from the graph's weight distribution.
  static ExtensionParams from_graph(const WeightedGraph &g, std::size_t q, double percentile);
};

/// One pass over the nodes outside S: w joins every initial community c with
/// CS(c, w) >= delta * IC(c). Belongingness and IC use the initial
/// memberships only, so the result does not depend on visiting order.
CommunitySet extend_communities(const CommunitySet &cs, const WeightedGraph &g,
                                const ExtensionParams &params, std::size_t threads = 1);

/// Percolation followed by extension with delta taken from `percentile`. An
/// edgeless graph yields no communities.
CommunitySet detect_communities(const WeightedGraph &g, std::size_t q, double percentile,
                                std::size_t threads = 1);

/// One `id origin node,node,...` line per community.
void write_communities(std::ostream &out, const CommunitySet &cs);

}  // namespace cod
