#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "tww/bitset.hpp"
#include "tww/errors.hpp"

namespace tww {

using Vertex = std::int32_t;
constexpr Vertex kNoVertex = -1;

/// A finite partial order on vertices 0..n-1, stored as the full
/// reflexive-transitive closure in both directions (one bit row per
/// vertex). The generating edge set it was built from is kept as well;
/// several algorithms want the sparse form.
class Poset {
 public:
  /// Builds the poset generated by an acyclic relation. `covers` may be any
  /// acyclic generating edge set (a Hasse diagram or a superset of one);
  /// each pair (u, v) declares u < v. Throws CycleDetected if the edges are
  /// cyclic and IdOutOfRange for bad vertex ids.
  static Poset from_cover_relations(Vertex n, std::vector<std::pair<Vertex, Vertex>> covers,
                                    std::vector<std::string> labels = {}) {
    if (n <= 0) throw BadParameters("poset needs at least one vertex");
    for (auto [u, v] : covers)
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw IdOutOfRange("cover endpoint out of range");
    if (!labels.empty() && static_cast<Vertex>(labels.size()) != n)
      throw BadParameters("label count must match vertex count");

    // Kahn topological order; a leftover vertex means a cycle.
    std::vector<std::vector<Vertex>> succs(n), preds(n);
    std::vector<int> indeg(n, 0);
    for (auto [u, v] : covers) {
      if (u == v) throw CycleDetected("self-loop in cover relation");
      succs[u].push_back(v);
      preds[v].push_back(u);
      ++indeg[v];
    }
    std::vector<Vertex> topo;
    topo.reserve(n);
    for (Vertex v = 0; v < n; ++v)
      if (indeg[v] == 0) topo.push_back(v);
    for (std::size_t i = 0; i < topo.size(); ++i) {
      for (Vertex w : succs[topo[i]])
        if (--indeg[w] == 0) topo.push_back(w);
    }
    if (static_cast<Vertex>(topo.size()) != n)
      throw CycleDetected("cover relation contains a cycle");

    Poset p;
    p.n_ = n;
    p.covers_ = std::move(covers);
    p.labels_ = std::move(labels);
    p.up_.assign(n, Bitset(n));
    p.down_.assign(n, Bitset(n));
    // up rows in reverse topological order, down rows forward.
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      Vertex u = *it;
      p.up_[u].set(u);
      for (Vertex w : succs[u]) p.up_[u] |= p.up_[w];
    }
    for (Vertex u : topo) {
      p.down_[u].set(u);
      for (Vertex w : preds[u]) p.down_[u] |= p.down_[w];
    }
    return p;
  }

  Vertex size() const { return n_; }

  bool leq(Vertex u, Vertex v) const {
    check(u); check(v);
    return up_[u].test(v);
  }
  bool less(Vertex u, Vertex v) const { return u != v && leq(u, v); }
  bool comparable(Vertex u, Vertex v) const { return leq(u, v) || leq(v, u); }

  /// {v : u <= v}, diagonal included.
  const Bitset& up_row(Vertex u) const { check(u); return up_[u]; }
  /// {v : v <= u}, diagonal included.
  const Bitset& down_row(Vertex u) const { check(u); return down_[u]; }

  const std::vector<std::pair<Vertex, Vertex>>& covers() const { return covers_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::string label_or_id(Vertex u) const {
    check(u);
    if (static_cast<std::size_t>(u) < labels_.size() && !labels_[u].empty())
      return labels_[u];
    return std::to_string(u);
  }

 private:
  void check(Vertex u) const {
    if (u < 0 || u >= n_) throw IdOutOfRange("vertex id " + std::to_string(u));
  }

  Vertex n_ = 0;
  std::vector<Bitset> up_, down_;
  std::vector<std::pair<Vertex, Vertex>> covers_;
  std::vector<std::string> labels_;
};

/// A partition of the ground set into chains, each listed in increasing
/// order of the poset.
struct ChainPartition {
  std::vector<std::vector<Vertex>> chains;
  std::vector<std::int32_t> chain_of;  // vertex -> chain index
  std::vector<std::int32_t> pos_of;    // vertex -> position within its chain

  int count() const { return static_cast<int>(chains.size()); }

  static ChainPartition from_chains(const Poset& p, std::vector<std::vector<Vertex>> chains) {
    ChainPartition pi;
    pi.chains = std::move(chains);
    pi.chain_of.assign(p.size(), -1);
    pi.pos_of.assign(p.size(), -1);
    for (std::size_t c = 0; c < pi.chains.size(); ++c) {
      for (std::size_t i = 0; i < pi.chains[c].size(); ++i) {
        Vertex v = pi.chains[c][i];
        if (v < 0 || v >= p.size()) throw InvalidPartition("chain vertex out of range");
        if (pi.chain_of[v] != -1) throw InvalidPartition("vertex in two chains");
        pi.chain_of[v] = static_cast<std::int32_t>(c);
        pi.pos_of[v] = static_cast<std::int32_t>(i);
      }
    }
    pi.validate(p);
    return pi;
  }

  void validate(const Poset& p) const {
    if (chains.empty()) throw InvalidPartition("no chains");
    std::size_t covered = 0;
    for (const auto& ch : chains) {
      if (ch.empty()) throw InvalidPartition("empty chain");
      covered += ch.size();
      for (std::size_t i = 0; i + 1 < ch.size(); ++i)
        if (!p.less(ch[i], ch[i + 1]))
          throw InvalidPartition("chain not increasing in the poset order");
    }
    if (covered != static_cast<std::size_t>(p.size()))
      throw InvalidPartition("chains do not cover the ground set");
  }
};

namespace detail {

/// Hopcroft–Karp maximum matching on the bipartite split graph of the
/// strict order: left copy of u connects to right copies of all v > u.
/// matchL[u] is u's successor in the resulting chain cover.
inline std::size_t max_matching_strict_order(const Poset& p, std::vector<Vertex>& matchL,
                                             std::vector<Vertex>& matchR) {
  const Vertex n = p.size();
  constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();
  matchL.assign(n, kNoVertex);
  matchR.assign(n, kNoVertex);
  std::vector<std::int32_t> dist(n);
  std::size_t matched = 0;

  auto bfs = [&]() {
    std::queue<Vertex> q;
    bool found = false;
    for (Vertex u = 0; u < n; ++u) {
      if (matchL[u] == kNoVertex) { dist[u] = 0; q.push(u); }
      else dist[u] = kInf;
    }
    while (!q.empty()) {
      Vertex u = q.front(); q.pop();
      p.up_row(u).for_each([&](std::size_t vs) {
        Vertex v = static_cast<Vertex>(vs);
        if (v == u) return;
        Vertex w = matchR[v];
        if (w == kNoVertex) found = true;
        else if (dist[w] == kInf) { dist[w] = dist[u] + 1; q.push(w); }
      });
    }
    return found;
  };

  // Recursion-free DFS would be noisier; depth is bounded by the layering.
  auto dfs = [&](auto&& self, Vertex u) -> bool {
    bool ok = false;
    p.up_row(u).for_each([&](std::size_t vs) {
      if (ok) return;
      Vertex v = static_cast<Vertex>(vs);
      if (v == u) return;
      Vertex w = matchR[v];
      if (w == kNoVertex || (dist[w] == dist[u] + 1 && self(self, w))) {
        matchL[u] = v;
        matchR[v] = u;
        ok = true;
      }
    });
    if (!ok) dist[u] = kInf;
    return ok;
  };

  while (bfs()) {
    for (Vertex u = 0; u < n; ++u)
      if (matchL[u] == kNoVertex && dfs(dfs, u)) ++matched;
  }
  return matched;
}

}  // namespace detail

/// Width of the poset: the maximum antichain size, computed as n minus a
/// maximum matching of the strict order's bipartite split graph (Dilworth).
inline int width(const Poset& p) {
  std::vector<Vertex> matchL, matchR;
  std::size_t m = detail::max_matching_strict_order(p, matchL, matchR);
  return static_cast<int>(p.size() - m);
}

/// A minimum chain cover: exactly width(p) chains, each increasing.
inline ChainPartition chain_partition(const Poset& p) {
  std::vector<Vertex> matchL, matchR;
  detail::max_matching_strict_order(p, matchL, matchR);
  std::vector<std::vector<Vertex>> chains;
  for (Vertex v = 0; v < p.size(); ++v) {
    if (matchR[v] != kNoVertex) continue;  // not a chain head
    std::vector<Vertex> chain;
    for (Vertex u = v; u != kNoVertex; u = matchL[u]) chain.push_back(u);
    chains.push_back(std::move(chain));
  }
  return ChainPartition::from_chains(p, std::move(chains));
}

}  // namespace tww
