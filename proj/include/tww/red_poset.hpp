#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "tww/bitset.hpp"
#include "tww/errors.hpp"
#include "tww/poset.hpp"

namespace tww {

/// An oriented red bar. `from` and `to` are live part handles of the
/// owning RedPoset.
struct RedBarDirection {
  Vertex from;
  Vertex to;
  friend bool operator==(const RedBarDirection&, const RedBarDirection&) = default;
};

/// A chain-partitioned poset under contraction. Live parts are addressed
/// by slots (the slot of a merged part is the slot of the first argument
/// of the contraction). The part order is kept as strict bit rows in both
/// directions; the red set is kept incrementally per the contraction rule:
/// a merged part keeps every inherited red edge and gains a red edge to
/// each part that compared to the two halves in different ways.
///
/// Chain bookkeeping (live chain lists, chain-successor pointers, fan
/// lists) is maintained as long as only neighbourly contractions have been
/// performed; the first general contraction drops it, after which only the
/// order/red queries remain valid.
class RedPoset {
 public:
  struct RedEdge {
    Vertex other;
    int created;  // step at which this edge first appeared
  };

  RedPoset(const Poset& base, const ChainPartition& pi)
      : base_(&base), pi_(&pi), n_(base.size()), d_(pi.count()) {
    pi.validate(base);
    leq_.reserve(n_);
    geq_.reserve(n_);
    for (Vertex u = 0; u < n_; ++u) {
      leq_.push_back(base.up_row(u));
      leq_.back().reset(u);
      geq_.push_back(base.down_row(u));
      geq_.back().reset(u);
    }
    live_ = Bitset(n_);
    members_.resize(n_);
    rep_.resize(n_);
    bot_.resize(n_);
    top_.resize(n_);
    botpos_.assign(pi.pos_of.begin(), pi.pos_of.end());
    chainof_.assign(pi.chain_of.begin(), pi.chain_of.end());
    next_.assign(n_, kNoVertex);
    prev_.assign(n_, kNoVertex);
    last_.assign(n_, 0);
    red_.resize(n_);
    mark_.assign(n_, 0);
    mark_pos_.assign(n_, 0);
    deg_hist_.assign(n_ + 2, 0);
    deg_hist_[0] = n_;
    for (Vertex u = 0; u < n_; ++u) {
      live_.set(u);
      members_[u] = {u};
      rep_[u] = bot_[u] = top_[u] = u;
    }
    live_count_ = n_;
    chain_head_.assign(d_, kNoVertex);
    chain_live_.assign(d_, 0);
    for (int c = 0; c < d_; ++c) {
      const auto& ch = pi.chains[c];
      chain_head_[c] = ch.front();
      chain_live_[c] = static_cast<int>(ch.size());
      for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
        next_[ch[i]] = ch[i + 1];
        prev_[ch[i + 1]] = ch[i];
      }
    }
    build_succ_pointers();
  }

  const Poset& base() const { return *base_; }
  const ChainPartition& partition() const { return *pi_; }
  Vertex ground_size() const { return n_; }
  int chain_count() const { return d_; }
  int live_count() const { return live_count_; }
  int step() const { return step_; }
  bool chains_intact() const { return chains_intact_; }

  bool is_live(Vertex s) const { return s >= 0 && s < n_ && live_.test(s); }
  Vertex representative(Vertex s) const { check_live(s); return rep_[s]; }
  const std::vector<Vertex>& members(Vertex s) const { check_live(s); return members_[s]; }
  int last_contracted(Vertex s) const { check_live(s); return last_[s]; }

  std::vector<Vertex> live_parts() const {
    std::vector<Vertex> out;
    out.reserve(live_count_);
    live_.for_each([&](std::size_t s) { out.push_back(static_cast<Vertex>(s)); });
    return out;
  }

  /// Resolve the representative id of a live part, as used by sequence
  /// files. Linear scan; replay keeps its own map instead.
  Vertex slot_of_rep(Vertex rep) const {
    Vertex found = kNoVertex;
    live_.for_each([&](std::size_t s) {
      if (rep_[s] == rep) found = static_cast<Vertex>(s);
    });
    return found;
  }

  // ---- order and red queries ------------------------------------------

  bool leq_parts(Vertex a, Vertex b) const {
    check_live(a); check_live(b);
    return a != b && leq_[a].test(b);
  }
  bool comparable_parts(Vertex a, Vertex b) const {
    return leq_parts(a, b) || leq_parts(b, a);
  }

  const std::vector<RedEdge>& red_edges_at(Vertex s) const { check_live(s); return red_[s]; }

  bool is_red(Vertex a, Vertex b) const {
    check_live(a); check_live(b);
    for (const auto& e : red_[a])
      if (e.other == b) return true;
    return false;
  }

  int red_degree(Vertex s) const { check_live(s); return static_cast<int>(red_[s].size()); }

  int max_red_degree() const {
    while (max_deg_ > 0 && deg_hist_[max_deg_] == 0) --max_deg_;
    return max_deg_;
  }

  long long red_edge_count() const { return red_count_; }

  std::vector<std::tuple<Vertex, Vertex, int>> red_edges() const {
    std::vector<std::tuple<Vertex, Vertex, int>> out;
    live_.for_each([&](std::size_t s) {
      for (const auto& e : red_[static_cast<Vertex>(s)])
        if (static_cast<Vertex>(s) < e.other)
          out.emplace_back(static_cast<Vertex>(s), e.other, e.created);
    });
    return out;
  }

  /// Red edges at s created after the last contraction into s.
  int foreign_red_count(Vertex s) const {
    check_live(s);
    int c = 0;
    for (const auto& e : red_[s])
      if (e.created > last_[s]) ++c;
    return c;
  }

  // ---- chain structure -------------------------------------------------

  int chain_of(Vertex s) const { check_live(s); require_chains(); return chainof_[s]; }
  Vertex chain_head(int c) const { require_chains(); return chain_head_[c]; }
  int chain_live_count(int c) const { require_chains(); return chain_live_[c]; }
  Vertex chain_succ(Vertex s) const { check_live(s); require_chains(); return next_[s]; }
  Vertex chain_pred(Vertex s) const { check_live(s); require_chains(); return prev_[s]; }

  /// u^{+i} / u^{-i}: the live part i steps up (or down) the chain, or
  /// kNoVertex if the chain ends first.
  Vertex chain_offset(Vertex s, int delta) const {
    check_live(s); require_chains();
    while (delta > 0 && s != kNoVertex) { s = next_[s]; --delta; }
    while (delta < 0 && s != kNoVertex) { s = prev_[s]; ++delta; }
    return s;
  }

  int chain_position(Vertex s) const {
    check_live(s); require_chains();
    int pos = 0;
    for (Vertex w = chain_head_[chainof_[s]]; w != s; w = next_[w]) ++pos;
    return pos;
  }

  /// The chain-order minimum original vertex of the part.
  Vertex min_original(Vertex s) const { check_live(s); require_chains(); return bot_[s]; }
  Vertex max_original(Vertex s) const { check_live(s); require_chains(); return top_[s]; }

  /// Least live part of chain c that s is entirely below, or kNoVertex.
  Vertex succ_part(Vertex s, int c) const {
    check_live(s); require_chains();
    if (c < 0 || c >= d_ || c == chainof_[s]) throw BadParameters("bad chain index");
    return succ_[idx(s, c)];
  }

  // ---- contraction ------------------------------------------------------

  /// General contraction of two live parts. Returns the merged slot.
  Vertex contract(Vertex a, Vertex b) {
    check_live(a); check_live(b);
    if (a == b) throw VertexNotLive("cannot contract a part with itself");
    bool neighbourly =
        chains_intact_ && chainof_[a] == chainof_[b] && (next_[a] == b || next_[b] == a);
    if (neighbourly && next_[b] == a) std::swap(a, b);

    ++step_;

    // Parts that compared to the two halves in different ways; these are
    // exactly the new red edges, and also tell us which relation bits of
    // the surviving slot must be corrected in other rows.
    s1_.clear(); s2_.clear(); s3_.clear(); s4_.clear();
    collect_and_not(leq_[a], leq_[b], a, b, s1_);
    collect_and_not(geq_[a], geq_[b], a, b, s2_);
    collect_and_not(leq_[b], leq_[a], a, b, s3_);
    collect_and_not(geq_[b], geq_[a], a, b, s4_);

    for (Vertex w : s1_) geq_[w].reset(a);
    for (Vertex w : s2_) leq_[w].reset(a);

    leq_[a] &= leq_[b];
    geq_[a] &= geq_[b];

    if (neighbourly) {
      merge_chain_structures(a, b);
    } else if (chains_intact_) {
      chains_intact_ = false;
    }

    merge_red_lists(a, b);

    auto& ma = members_[a];
    auto& mb = members_[b];
    ma.insert(ma.end(), mb.begin(), mb.end());
    mb.clear();
    mb.shrink_to_fit();
    rep_[a] = std::min(rep_[a], rep_[b]);
    last_[a] = step_;
    live_.reset(b);
    --live_count_;
    return a;
  }

  /// Contraction of a part with its chain successor.
  Vertex neighbourly_contract(Vertex u) {
    check_live(u);
    require_chains();
    if (next_[u] == kNoVertex) throw NoSuccessor("part is maximal in its chain");
    return contract(u, next_[u]);
  }

  // ---- red potential ----------------------------------------------------

  /// Red degree the merge of u with its chain successor would produce.
  /// Copy-free simulation against the current rows; does not mutate.
  int red_potential(Vertex u) const {
    check_live(u);
    require_chains();
    Vertex b = next_[u];
    if (b == kNoVertex) throw NoSuccessor("part is maximal in its chain");
    ++epoch_;
    int cnt = mark_existing_reds(u, b);
    // New reds: leq[u] & ~leq[b] (parts above u but not above the merge)
    // and geq[b] & ~geq[u] (parts below b but not below u).
    for (std::size_t i = 0; i < leq_[u].word_count(); ++i) {
      std::uint64_t x = ((leq_[u].word(i) & ~leq_[b].word(i)) |
                         (geq_[b].word(i) & ~geq_[u].word(i))) &
                        live_.word(i);
      while (x) {
        Vertex w = static_cast<Vertex>(i * 64 + std::countr_zero(x));
        x &= x - 1;
        if (w == u || w == b) continue;
        if (mark_[w] != epoch_) { mark_[w] = epoch_; ++cnt; }
      }
    }
    return cnt;
  }

  /// Same value as red_potential, computed from chain-successor pointers
  /// and fan lists in O(d + value) instead of a row scan.
  int red_potential_fast(Vertex u) const {
    check_live(u);
    require_chains();
    Vertex b = next_[u];
    if (b == kNoVertex) throw NoSuccessor("part is maximal in its chain");
    ++epoch_;
    int cnt = mark_existing_reds(u, b);
    int cu = chainof_[u];
    for (int c = 0; c < d_; ++c) {
      if (c == cu) continue;
      Vertex stop = succ_[idx(b, c)];
      for (Vertex w = succ_[idx(u, c)]; w != stop; w = next_[w]) {
        if (w == kNoVertex) throw InvariantBroken("successor pointers out of order");
        if (mark_[w] != epoch_) { mark_[w] = epoch_; ++cnt; }
      }
      for (Vertex w = fan_head_[idx(b, c)]; w != kNoVertex; w = fan_next_[idx(w, cu)]) {
        if (mark_[w] != epoch_) { mark_[w] = epoch_; ++cnt; }
      }
    }
    return cnt;
  }

  /// Sum of red potentials over all non-maximal vertices of all chains.
  long long total_red_potential() const {
    require_chains();
    long long total = 0;
    for (int c = 0; c < d_; ++c)
      for (Vertex u = chain_head_[c]; u != kNoVertex; u = next_[u])
        if (next_[u] != kNoVertex) total += red_potential(u);
    return total;
  }

  // ---- red-bar orientation ----------------------------------------------

  /// Orientation of a red bar: from u to v when the minimum of u is below
  /// something in v while the minimum of v is not below the minimum of u;
  /// if both directions qualify, the part contracted later wins.
  RedBarDirection orient_red(Vertex u, Vertex v) const {
    require_chains();
    if (!is_red(u, v)) throw NotRed("pair is not a red edge");
    bool uv = base_->leq(bot_[u], top_[v]) && !base_->leq(bot_[v], bot_[u]);
    bool vu = base_->leq(bot_[v], top_[u]) && !base_->leq(bot_[u], bot_[v]);
    if (uv && vu) {
      if (last_[u] != last_[v]) return last_[u] > last_[v] ? RedBarDirection{u, v}
                                                           : RedBarDirection{v, u};
      return rep_[u] < rep_[v] ? RedBarDirection{u, v} : RedBarDirection{v, u};
    }
    if (uv) return {u, v};
    if (vu) return {v, u};
    throw InvariantBroken("red bar admits no orientation");
  }

 private:
  static void append_bits(std::uint64_t x, std::size_t base, Vertex skip1, Vertex skip2,
                          std::vector<Vertex>& out) {
    while (x) {
      Vertex w = static_cast<Vertex>(base + std::countr_zero(x));
      x &= x - 1;
      if (w != skip1 && w != skip2) out.push_back(w);
    }
  }

  void collect_and_not(const Bitset& p, const Bitset& q, Vertex a, Vertex b,
                       std::vector<Vertex>& out) const {
    for (std::size_t i = 0; i < p.word_count(); ++i)
      append_bits(p.word(i) & ~q.word(i) & live_.word(i), i * 64, a, b, out);
  }

  int mark_existing_reds(Vertex u, Vertex b) const {
    int cnt = 0;
    for (const auto& e : red_[u])
      if (e.other != b && mark_[e.other] != epoch_) { mark_[e.other] = epoch_; ++cnt; }
    for (const auto& e : red_[b])
      if (e.other != u && mark_[e.other] != epoch_) { mark_[e.other] = epoch_; ++cnt; }
    return cnt;
  }

  std::size_t idx(Vertex s, int c) const { return static_cast<std::size_t>(s) * d_ + c; }

  void build_succ_pointers() {
    succ_.assign(static_cast<std::size_t>(n_) * d_, kNoVertex);
    fan_head_.assign(static_cast<std::size_t>(n_) * d_, kNoVertex);
    fan_next_.assign(static_cast<std::size_t>(n_) * d_, kNoVertex);
    fan_prev_.assign(static_cast<std::size_t>(n_) * d_, kNoVertex);
    if (d_ < 2) return;
    for (Vertex u = 0; u < n_; ++u) {
      for (int c = 0; c < d_; ++c) {
        if (c == chainof_[u]) continue;
        const auto& ch = pi_->chains[c];
        // least chain position whose vertex is above u; monotone in position
        std::size_t lo = 0, hi = ch.size();
        while (lo < hi) {
          std::size_t mid = (lo + hi) / 2;
          if (base_->leq(u, ch[mid])) hi = mid;
          else lo = mid + 1;
        }
        if (lo < ch.size()) fan_link(u, c, ch[lo]);
      }
    }
  }

  // Insert u at the front of the fan list of target t (u's pointer into
  // t's chain c).
  void fan_link(Vertex u, int c, Vertex t) {
    succ_[idx(u, c)] = t;
    if (t == kNoVertex) {
      fan_next_[idx(u, c)] = fan_prev_[idx(u, c)] = kNoVertex;
      return;
    }
    int cu = chainof_[u];
    Vertex old = fan_head_[idx(t, cu)];
    fan_head_[idx(t, cu)] = u;
    fan_prev_[idx(u, c)] = kNoVertex;
    fan_next_[idx(u, c)] = old;
    if (old != kNoVertex) fan_prev_[idx(old, c)] = u;
  }

  void fan_unlink(Vertex u, int c) {
    Vertex t = succ_[idx(u, c)];
    if (t == kNoVertex) return;
    int cu = chainof_[u];
    Vertex p = fan_prev_[idx(u, c)], nx = fan_next_[idx(u, c)];
    if (p == kNoVertex) fan_head_[idx(t, cu)] = nx;
    else fan_next_[idx(p, c)] = nx;
    if (nx != kNoVertex) fan_prev_[idx(nx, c)] = p;
    succ_[idx(u, c)] = kNoVertex;
  }

  void merge_chain_structures(Vertex a, Vertex b) {
    int c = chainof_[a];
    top_[a] = top_[b];
    Vertex xnext = next_[b];
    next_[a] = xnext;
    if (xnext != kNoVertex) prev_[xnext] = a;
    --chain_live_[c];
    // Parts of other chains whose least-above pointer was b now point one
    // step higher; they are exactly the new red edges from below.
    scratch_.clear();
    for (int c2 = 0; c2 < d_; ++c2) {
      if (c2 == c) continue;
      for (Vertex w = fan_head_[idx(b, c2)]; w != kNoVertex; w = fan_next_[idx(w, c)])
        scratch_.push_back(w);
    }
    for (Vertex w : scratch_) {
      fan_unlink(w, c);
      fan_link(w, c, xnext);
    }
    for (int c2 = 0; c2 < d_; ++c2) {
      if (c2 == c) continue;
      Vertex tb = succ_[idx(b, c2)];
      fan_unlink(a, c2);
      fan_unlink(b, c2);
      fan_link(a, c2, tb);
    }
  }

  void hist_move(std::size_t from, std::size_t to) {
    --deg_hist_[from];
    ++deg_hist_[to];
    if (static_cast<int>(to) > max_deg_) max_deg_ = static_cast<int>(to);
  }

  void merge_red_lists(Vertex a, Vertex b) {
    ++epoch_;
    std::size_t old_a = red_[a].size();
    std::size_t old_b = red_[b].size();
    merged_.clear();
    for (const auto& e : red_[a]) {
      if (e.other == b) { --red_count_; continue; }
      mark_[e.other] = epoch_;
      mark_pos_[e.other] = static_cast<std::int32_t>(merged_.size());
      merged_.push_back(e);
    }
    for (const auto& e : red_[b]) {
      if (e.other == a) continue;  // the {a,b} edge was dropped above
      auto& list = red_[e.other];
      if (mark_[e.other] == epoch_) {
        // already red with a: fold the two edges into one, oldest wins
        auto& kept = merged_[mark_pos_[e.other]];
        kept.created = std::min(kept.created, e.created);
        std::size_t sz = list.size();
        for (std::size_t i = 0; i < sz; ++i) {
          if (list[i].other == b) {
            list[i] = list.back();
            list.pop_back();
            break;
          }
        }
        hist_move(sz, sz - 1);
        --red_count_;
      } else {
        mark_[e.other] = epoch_;
        mark_pos_[e.other] = static_cast<std::int32_t>(merged_.size());
        merged_.push_back(e);
        for (auto& f : list)
          if (f.other == b) { f.other = a; break; }
      }
    }
    auto add_new = [&](Vertex w) {
      if (mark_[w] == epoch_) return;
      mark_[w] = epoch_;
      mark_pos_[w] = static_cast<std::int32_t>(merged_.size());
      merged_.push_back({w, step_});
      std::size_t sz = red_[w].size();
      red_[w].push_back({a, step_});
      hist_move(sz, sz + 1);
      ++red_count_;
    };
    for (Vertex w : s1_) add_new(w);
    for (Vertex w : s2_) add_new(w);
    for (Vertex w : s3_) add_new(w);
    for (Vertex w : s4_) add_new(w);

    red_[a].assign(merged_.begin(), merged_.end());
    hist_move(old_a, red_[a].size());
    --deg_hist_[old_b];  // b leaves the live population
    red_[b].clear();
  }

  void check_live(Vertex s) const {
    if (s < 0 || s >= n_ || !live_.test(s))
      throw VertexNotLive("part " + std::to_string(s) + " is not live");
  }
  void require_chains() const {
    if (!chains_intact_)
      throw InvariantBroken("chain structure dropped after a general contraction");
  }

  const Poset* base_;
  const ChainPartition* pi_;
  Vertex n_;
  int d_;
  int step_ = 0;
  int live_count_ = 0;
  bool chains_intact_ = true;
  long long red_count_ = 0;

  std::vector<Bitset> leq_, geq_;
  Bitset live_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<Vertex> rep_, bot_, top_;
  std::vector<std::int32_t> botpos_, chainof_;
  std::vector<Vertex> next_, prev_, chain_head_;
  std::vector<int> chain_live_;
  std::vector<std::vector<RedEdge>> red_;
  std::vector<int> last_;
  std::vector<Vertex> succ_, fan_head_, fan_next_, fan_prev_;
  std::vector<int> deg_hist_;
  mutable int max_deg_ = 0;

  // scratch
  mutable std::vector<std::int32_t> mark_, mark_pos_;
  mutable std::int32_t epoch_ = 0;
  std::vector<Vertex> s1_, s2_, s3_, s4_, scratch_;
  std::vector<RedEdge> merged_;
};

inline RedPoset init_red(const Poset& p, const ChainPartition& pi) { return RedPoset(p, pi); }

/// Independent oracle for the red set: a pair of parts is red exactly when
/// the original relations across it are neither all up, nor all down, nor
/// all incomparable. Returns sorted pairs of part indices.
inline std::vector<std::pair<int, int>> recompute_red_from_partition(
    const Poset& p0, const std::vector<std::vector<Vertex>>& parts) {
  const Vertex n = p0.size();
  std::vector<char> seen(n, 0);
  for (const auto& part : parts) {
    if (part.empty()) throw InvalidPartition("empty part");
    for (Vertex v : part) {
      if (v < 0 || v >= n || seen[v]) throw InvalidPartition("parts do not partition the set");
      seen[v] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw InvalidPartition("parts do not cover the ground set");

  const int m = static_cast<int>(parts.size());
  std::vector<Bitset> mask(m, Bitset(n)), up_all(m), down_all(m), any(m);
  for (int i = 0; i < m; ++i) {
    up_all[i] = p0.up_row(parts[i][0]);
    down_all[i] = p0.down_row(parts[i][0]);
    Bitset up_any = p0.up_row(parts[i][0]);
    Bitset down_any = p0.down_row(parts[i][0]);
    for (Vertex v : parts[i]) {
      mask[i].set(v);
      up_all[i] &= p0.up_row(v);
      down_all[i] &= p0.down_row(v);
      up_any |= p0.up_row(v);
      down_any |= p0.down_row(v);
    }
    any[i] = up_any;
    any[i] |= down_any;
  }
  std::vector<std::pair<int, int>> red;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      bool below = mask[j].is_subset_of(up_all[i]);
      bool above = mask[j].is_subset_of(down_all[i]);
      bool some = mask[j].intersects(any[i]);
      if (some && !below && !above) red.emplace_back(i, j);
    }
  }
  return red;
}

}  // namespace tww
