#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tww/errors.hpp"
#include "tww/poset.hpp"

namespace tww {

/// A poset described by its generating edges plus a chain cover, before
/// closure construction. The width-2 pipeline consumes this directly so
/// that large instances never materialise an n-by-n closure.
struct GeneratedInstance {
  Vertex n = 0;
  std::vector<std::pair<Vertex, Vertex>> covers;
  std::vector<std::vector<Vertex>> chains;
  std::vector<std::string> labels;

  Poset to_poset() const { return Poset::from_cover_relations(n, covers, labels); }
  ChainPartition to_partition(const Poset& p) const {
    return ChainPartition::from_chains(p, chains);
  }
};

inline Poset chain_poset(Vertex n) {
  if (n < 1) throw BadParameters("chain needs n >= 1");
  std::vector<std::pair<Vertex, Vertex>> covers;
  for (Vertex i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return Poset::from_cover_relations(n, std::move(covers));
}

inline Poset antichain_poset(Vertex n) {
  if (n < 1) throw BadParameters("antichain needs n >= 1");
  return Poset::from_cover_relations(n, {});
}

/// Divisibility order on a set of positive integers.
inline Poset divisibility_poset(std::vector<long long> values) {
  std::sort(values.begin(), values.end());
  if (!values.empty() && values.front() <= 0)
    throw BadParameters("divisibility poset needs positive integers");
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw BadParameters("duplicate value");
  const Vertex n = static_cast<Vertex>(values.size());
  std::vector<std::pair<Vertex, Vertex>> covers;
  std::vector<std::string> labels(n);
  for (Vertex i = 0; i < n; ++i) {
    labels[i] = std::to_string(values[i]);
    for (Vertex j = i + 1; j < n; ++j)
      if (values[j] % values[i] == 0) covers.emplace_back(i, j);
  }
  return Poset::from_cover_relations(n, std::move(covers), std::move(labels));
}

/// The width-d family certifying the lower bound: d chains of k+1 vertices
/// with cross relations c_i^j <= c_{i+a}^{j+d-1} for a = 1 + (j mod (d-1)),
/// chain indices wrapping modulo d. Any single contraction in it has red
/// degree at least d-1.
inline GeneratedInstance lower_bound_instance(int d, int k) {
  if (d < 3) throw BadParameters("lower bound family needs d >= 3");
  if (k < 4 * d - 8) throw BadParameters("lower bound family needs k >= 4d-8");
  GeneratedInstance g;
  g.n = static_cast<Vertex>(d) * (k + 1);
  auto id = [&](int i, int j) { return static_cast<Vertex>(i) * (k + 1) + j; };
  g.chains.resize(d);
  g.labels.resize(g.n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= k; ++j) {
      g.chains[i].push_back(id(i, j));
      g.labels[id(i, j)] = "c" + std::to_string(i + 1) + "_" + std::to_string(j);
      if (j + 1 <= k) g.covers.emplace_back(id(i, j), id(i, j + 1));
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j + d - 1 <= k; ++j) {
      int a = 1 + j % (d - 1);
      g.covers.emplace_back(id(i, j), id((i + a) % d, j + d - 1));
    }
  }
  return g;
}

inline std::pair<Poset, ChainPartition> lower_bound_poset(int d, int k) {
  GeneratedInstance g = lower_bound_instance(d, k);
  Poset p = g.to_poset();
  ChainPartition pi = g.to_partition(p);
  return {std::move(p), std::move(pi)};
}

/// The nine-vertex two-chain example used throughout the tests: chains
/// A<B<C<D and E<F<G<H<I with cross covers F<B, A<G, G<C, C<I.
inline GeneratedInstance figure1_instance() {
  GeneratedInstance g;
  g.n = 9;
  g.labels = {"A", "B", "C", "D", "E", "F", "G", "H", "I"};
  g.chains = {{0, 1, 2, 3}, {4, 5, 6, 7, 8}};
  g.covers = {{0, 1}, {1, 2}, {2, 3},          // A<B<C<D
              {4, 5}, {5, 6}, {6, 7}, {7, 8},  // E<F<G<H<I
              {5, 1}, {0, 6}, {6, 2}, {2, 8}};
  return g;
}

inline std::pair<Poset, ChainPartition> figure1_poset() {
  GeneratedInstance g = figure1_instance();
  Poset p = g.to_poset();
  ChainPartition pi = g.to_partition(p);
  return {std::move(p), std::move(pi)};
}

/// The known degree-2 contraction sequence for the figure1 poset, as
/// representative-id merge events.
inline std::vector<std::pair<Vertex, Vertex>> figure1_example_events() {
  return {{4, 5}, {2, 3}, {6, 7}, {0, 1}, {6, 8}, {0, 2}, {4, 6}, {0, 4}};
}

/// The ten-vertex two-chain poset whose natural twin-width is exactly 2:
/// chains a1<..<a5 and b1<..<b5 with cross covers a1<b3, b1<a3, a3<b5,
/// b3<a5. Only the contractions {a2,a3}, {a3,a4}, {b2,b3}, {b3,b4} keep
/// red degree 1.
inline GeneratedInstance figure4_instance() {
  GeneratedInstance g;
  g.n = 10;
  g.labels = {"a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5"};
  g.chains = {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
  g.covers = {{0, 1}, {1, 2}, {2, 3}, {3, 4},
              {5, 6}, {6, 7}, {7, 8}, {8, 9},
              {0, 7}, {5, 2}, {2, 9}, {7, 4}};
  return g;
}

inline std::pair<Poset, ChainPartition> figure4_poset() {
  GeneratedInstance g = figure4_instance();
  Poset p = g.to_poset();
  ChainPartition pi = g.to_partition(p);
  return {std::move(p), std::move(pi)};
}

namespace detail {

class SplitMixRng {
 public:
  explicit SplitMixRng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Unbiased-enough bounded draw for test-instance generation.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  double real() { return (next() >> 11) * 0x1.0p-53; }
  // Failures before the next success of a Bernoulli(p) stream.
  long long geometric_skip(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return -1;  // never
    double u = real();
    if (u <= 0.0) u = 0x1.0p-53;
    return static_cast<long long>(std::floor(std::log(u) / std::log1p(-p)));
  }

 private:
  std::uint64_t s_;
};

}  // namespace detail

/// Random poset of width at most d: vertices get a random global rank,
/// chains take every d-th vertex of the rank order, and each cross-chain
/// rank-increasing pair becomes a cover with the given probability.
/// Deterministic per seed; width can collapse below d when density is high.
inline GeneratedInstance random_width_d_instance(Vertex n, int d, double density,
                                                 std::uint64_t seed) {
  if (n < 1 || d < 1 || d > n) throw BadParameters("need 1 <= d <= n");
  if (density < 0.0 || density > 1.0) throw BadParameters("density outside [0,1]");
  detail::SplitMixRng rng(seed);

  // by_rank[r] = vertex with global rank r.
  std::vector<Vertex> by_rank(n);
  for (Vertex v = 0; v < n; ++v) by_rank[v] = v;
  for (Vertex i = n - 1; i > 0; --i)
    std::swap(by_rank[i], by_rank[rng.below(i + 1)]);

  GeneratedInstance g;
  g.n = n;
  g.chains.resize(d);
  std::vector<std::int32_t> chain_of(n);
  for (Vertex r = 0; r < n; ++r) {
    Vertex v = by_rank[r];
    chain_of[v] = r % d;
    g.chains[r % d].push_back(v);
  }
  for (const auto& ch : g.chains)
    for (std::size_t i = 0; i + 1 < ch.size(); ++i)
      g.covers.emplace_back(ch[i], ch[i + 1]);

  // Bernoulli stream over all rank-increasing pairs, realised with
  // geometric skips; same-chain hits fall through to the chain covers.
  for (Vertex r = 0; r + 1 < n; ++r) {
    Vertex u = by_rank[r];
    long long j = r;
    while (true) {
      long long skip = rng.geometric_skip(density);
      if (skip < 0) break;
      j += 1 + skip;
      if (j >= n) break;
      Vertex v = by_rank[j];
      if (chain_of[v] != chain_of[u]) g.covers.emplace_back(u, v);
    }
  }
  return g;
}

inline std::pair<Poset, ChainPartition> random_width_d(Vertex n, int d, double density,
                                                       std::uint64_t seed) {
  GeneratedInstance g = random_width_d_instance(n, d, density, seed);
  Poset p = g.to_poset();
  ChainPartition pi = g.to_partition(p);
  return {std::move(p), std::move(pi)};
}

}  // namespace tww
