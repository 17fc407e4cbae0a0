#include "starclip/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>

#include "starclip/errors.hpp"

namespace starclip {

namespace {

constexpr int kMaxBoard = 11;  // C(11,2) = 55 edge bits fit a word

std::uint64_t now_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::PIWin: return "pi-win";
    case Outcome::PIIWin: return "pii-win";
    case Outcome::Draw: return "draw";
  }
  return "?";
}

const char* canon_mode_name(CanonMode m) {
  switch (m) {
    case CanonMode::None: return "none";
    case CanonMode::FullPermutation: return "full-permutation";
    case CanonMode::RefinementHash: return "refinement-hash";
  }
  return "?";
}

int edge_index(int n, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  if (u < 0 || v >= n || u == v)
    throw InvalidParams("edge_index: endpoints out of range");
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

std::pair<Vertex, Vertex> edge_at(int n, int id) {
  if (id < 0 || id >= n * (n - 1) / 2)
    throw InvalidParams("edge_at: index out of range");
  int u = 0;
  int row = n - 1;
  while (id >= row) {
    id -= row;
    --row;
    ++u;
  }
  return {u, u + 1 + id};
}

Position Position::from_game(const StarGame& gs) {
  Position p{gs.n(), gs.k(), 0, 0};
  if (p.n > kMaxBoard) throw InvalidParams("position: board too large to pack");
  for (const auto& mv : gs.moves()) {
    std::uint64_t bit = 1ULL << edge_index(p.n, mv.u, mv.v);
    (mv.by == PlayerId::One ? p.pi_edges : p.pii_edges) |= bit;
  }
  return p;
}

int Position::claimed() const {
  return std::popcount(pi_edges) + std::popcount(pii_edges);
}

PlayerId Position::to_move() const {
  return std::popcount(pi_edges) == std::popcount(pii_edges) ? PlayerId::One
                                                             : PlayerId::Two;
}

namespace {

void check_position(const Position& p) {
  if (p.n < 2 || p.n > kMaxBoard || p.k < 1)
    throw InvalidParams("position: need 2 <= n <= 11 and k >= 1");
  int m = p.n * (p.n - 1) / 2;
  std::uint64_t full = (m == 64) ? ~0ULL : ((1ULL << m) - 1);
  if ((p.pi_edges | p.pii_edges) & ~full)
    throw InvalidParams("position: edge bits beyond the board");
  if (p.pi_edges & p.pii_edges)
    throw InvalidParams("position: claim sets overlap");
  int c1 = std::popcount(p.pi_edges);
  int c2 = std::popcount(p.pii_edges);
  if (c1 != c2 && c1 != c2 + 1)
    throw InvalidParams("position: claim counts out of balance");
  for (Vertex v = 0; v < p.n; ++v) {
    int d1 = 0, d2 = 0;
    for (Vertex u = 0; u < p.n; ++u) {
      if (u == v) continue;
      std::uint64_t bit = 1ULL << edge_index(p.n, u, v);
      d1 += (p.pi_edges & bit) ? 1 : 0;
      d2 += (p.pii_edges & bit) ? 1 : 0;
    }
    if (d1 > p.k || d2 > p.k)
      throw InvalidParams("position: a claim set already exceeds degree k");
  }
}

// Canonical form for FullPermutation: support vertices are assigned labels
// 0..m-1 minimizing the sequence of per-label adjacency rows (claim set one
// first, then two). Isolated vertices carry no edges, so trailing labels are
// arbitrary. The winner is a relabeling of the position, hence distinct
// classes yield distinct masks.
struct MinCode {
  int n;
  int sup = 0;
  std::array<int, kMaxBoard> verts{};     // support, original ids
  std::array<std::uint16_t, kMaxBoard> adj1{}, adj2{};
  std::array<int, kMaxBoard> cur{}, best{};
  std::array<std::uint32_t, kMaxBoard> rows{};  // rows[t-1]: label t vs 0..t-1
  int valid = 0;  // rows[0..valid-1] belong to the best candidate so far
  std::uint16_t used = 0;

  std::uint32_t row_of(int v, int t) const {
    std::uint32_t r1 = 0, r2 = 0;
    for (int i = 0; i < t; ++i) {
      r1 |= ((adj1[v] >> cur[i]) & 1u) << i;
      r2 |= ((adj2[v] >> cur[i]) & 1u) << i;
    }
    return (r1 << 16) | r2;
  }

  void dfs(int t) {
    if (t == sup) {
      best = cur;
      return;
    }
    for (int i = 0; i < sup; ++i) {
      int v = verts[i];
      if (used & (1u << v)) continue;
      if (t > 0) {
        std::uint32_t r = row_of(v, t);
        if (t - 1 < valid) {
          if (r > rows[t - 1]) continue;
          if (r < rows[t - 1]) {
            rows[t - 1] = r;
            valid = t;  // deeper rows are stale now
          }
        } else {
          rows[t - 1] = r;
          valid = t;
        }
      }
      cur[t] = v;
      used |= 1u << v;
      dfs(t + 1);
      used &= ~(1u << v);
    }
  }
};

CanonKey canon_full(const Position& p) {
  if (p.n > 8)
    throw ModeUnavailable("full-permutation canonicalization needs n <= 8");
  if ((p.pi_edges | p.pii_edges) == 0) return {0, 0};

  MinCode mc;
  mc.n = p.n;
  int m = p.n * (p.n - 1) / 2;
  for (int e = 0; e < m; ++e) {
    std::uint64_t bit = 1ULL << e;
    if (!((p.pi_edges | p.pii_edges) & bit)) continue;
    auto [u, v] = edge_at(p.n, e);
    if (p.pi_edges & bit) {
      mc.adj1[u] |= std::uint16_t(1u << v);
      mc.adj1[v] |= std::uint16_t(1u << u);
    } else {
      mc.adj2[u] |= std::uint16_t(1u << v);
      mc.adj2[v] |= std::uint16_t(1u << u);
    }
  }
  for (Vertex v = 0; v < p.n; ++v)
    if (mc.adj1[v] | mc.adj2[v]) mc.verts[mc.sup++] = v;

  mc.dfs(0);

  std::array<int, kMaxBoard> label{};
  label.fill(-1);
  for (int t = 0; t < mc.sup; ++t) label[mc.best[t]] = t;

  CanonKey key;
  for (int e = 0; e < m; ++e) {
    std::uint64_t bit = 1ULL << e;
    if (!((p.pi_edges | p.pii_edges) & bit)) continue;
    auto [u, v] = edge_at(p.n, e);
    int id = edge_index(p.n, label[u], label[v]);
    ((p.pi_edges & bit) ? key.a : key.b) |= 1ULL << id;
  }
  return key;
}

// Permutation-invariant digest: two rounds of color refinement over both
// claim sets, folded commutatively. Collisions are possible and are resolved
// at the table by exemplar comparison.
CanonKey canon_refine(const Position& p) {
  if ((p.pi_edges | p.pii_edges) == 0) return {0, 0};

  std::array<std::uint64_t, kMaxBoard> col{}, nxt{};
  std::array<std::uint16_t, kMaxBoard> adj1{}, adj2{};
  int m = p.n * (p.n - 1) / 2;
  for (int e = 0; e < m; ++e) {
    std::uint64_t bit = 1ULL << e;
    if (!((p.pi_edges | p.pii_edges) & bit)) continue;
    auto [u, v] = edge_at(p.n, e);
    auto& adj = (p.pi_edges & bit) ? adj1 : adj2;
    adj[u] |= std::uint16_t(1u << v);
    adj[v] |= std::uint16_t(1u << u);
  }
  for (Vertex v = 0; v < p.n; ++v)
    col[v] = mix64((std::uint64_t)std::popcount(adj1[v]) << 32 |
                   (std::uint64_t)std::popcount(adj2[v]));
  for (int round = 0; round < 2; ++round) {
    for (Vertex v = 0; v < p.n; ++v) {
      std::uint64_t s1 = 0, s2 = 0;
      for (Vertex u = 0; u < p.n; ++u) {
        if (adj1[v] & (1u << u)) s1 += mix64(col[u]);
        if (adj2[v] & (1u << u)) s2 += mix64(col[u] ^ 0xa5a5a5a5a5a5a5a5ULL);
      }
      nxt[v] = mix64(col[v] ^ (s1 * 3) ^ (s2 * 7));
    }
    col = nxt;
  }
  CanonKey key;
  for (Vertex v = 0; v < p.n; ++v) {
    key.a += mix64(col[v]);
    key.b ^= mix64(col[v] + 0x517cc1b727220a95ULL);
  }
  key.b = mix64(key.b ^ ((std::uint64_t)std::popcount(p.pi_edges) << 8) ^
                (std::uint64_t)std::popcount(p.pii_edges));
  return key;
}

}  // namespace

CanonKey canonicalize(const Position& p, CanonMode mode) {
  check_position(p);
  switch (mode) {
    case CanonMode::None: return {p.pi_edges, p.pii_edges};
    case CanonMode::FullPermutation: return canon_full(p);
    case CanonMode::RefinementHash: return canon_refine(p);
  }
  throw InvalidParams("canonicalize: unknown mode");
}

Solver::Solver(int n, int k, SolveOptions opts)
    : n_(n), k_(k), opts_(opts) {
  if (n < 2 || n > kMaxBoard || k < 1)
    throw InvalidParams("solver: need 2 <= n <= 11 and k >= 1");
  mode_ = opts.mode.value_or(n <= 8 ? CanonMode::FullPermutation
                                    : CanonMode::RefinementHash);
  if (mode_ == CanonMode::FullPermutation && n > 8)
    throw ModeUnavailable("full-permutation canonicalization needs n <= 8");
  m_ = n * (n - 1) / 2;
  full_ = (m_ == 64) ? ~0ULL : ((1ULL << m_) - 1);
  inc_.assign(n, 0);
  edges_.resize(m_);
  for (int e = 0; e < m_; ++e) {
    edges_[e] = edge_at(n, e);
    inc_[edges_[e].first] |= 1ULL << e;
    inc_[edges_[e].second] |= 1ULL << e;
  }
  node_budget_ = opts.max_nodes;
  sec_budget_ = opts.max_seconds;
}

void Solver::tick() {
  ++nodes_;
  if (node_budget_ && nodes_ > node_budget_) throw Cut{};
  if (sec_budget_ > 0 && (nodes_ & 4095) == 0 &&
      (double)(now_ns() - started_ns_) * 1e-9 > sec_budget_)
    throw Cut{};
}

int Solver::search(std::uint64_t m1, std::uint64_t m2, bool one_moves) {
  tick();
  std::uint64_t unclaimed = full_ & ~(m1 | m2);
  if (!unclaimed) return 0;

  int claimed = m_ - std::popcount(unclaimed);
  bool memoable = claimed <= opts_.canon_claim_limit;
  CanonKey key;
  std::uint64_t exa = 0, exb = 0;
  std::vector<Entry>* bucket = nullptr;
  if (memoable) {
    Position pos{n_, k_, m1, m2};
    key = mode_ == CanonMode::None ? CanonKey{m1, m2}
          : mode_ == CanonMode::FullPermutation ? canon_full(pos)
                                                : canon_refine(pos);
    if (mode_ == CanonMode::FullPermutation) {
      exa = key.a;
      exb = key.b;
    } else {
      exa = m1;
      exb = m2;
    }
    bucket = &table_[key];
    for (const Entry& en : *bucket)
      if (en.a == exa && en.b == exb) {
        ++hits_;
        return en.val;
      }
  }

  std::uint64_t own = one_moves ? m1 : m2;
  int best = -1;  // no safe move: the mover completes a star and loses
  for (std::uint64_t rest = unclaimed; rest;) {
    int e = std::countr_zero(rest);
    std::uint64_t bit = rest & -rest;
    rest ^= bit;
    std::uint64_t nown = own | bit;
    if (std::popcount(nown & inc_[edges_[e].first]) > k_) continue;
    if (std::popcount(nown & inc_[edges_[e].second]) > k_) continue;
    int val;
    if (unclaimed == bit) {
      val = 0;  // safe final edge: the board fills, nobody lost
    } else if (one_moves) {
      val = -search(nown, m2, false);
    } else {
      val = -search(m1, nown, true);
    }
    if (val > best) {
      best = val;
      if (best == 1) break;
    }
  }

  if (memoable) {
    // the bucket pointer may be stale after recursive inserts
    table_[key].push_back(Entry{exa, exb, (std::int8_t)best});
  }
  return best;
}

std::pair<int, int> Solver::search_root(const Position& p) {
  std::uint64_t m1 = p.pi_edges, m2 = p.pii_edges;
  bool one_moves = p.to_move() == PlayerId::One;
  std::uint64_t unclaimed = full_ & ~(m1 | m2);
  std::uint64_t own = one_moves ? m1 : m2;

  int best = -2;
  int best_edge = -1;
  for (std::uint64_t rest = unclaimed; rest;) {
    int e = std::countr_zero(rest);
    std::uint64_t bit = rest & -rest;
    rest ^= bit;
    std::uint64_t nown = own | bit;
    int val;
    if (std::popcount(nown & inc_[edges_[e].first]) > k_ ||
        std::popcount(nown & inc_[edges_[e].second]) > k_) {
      val = -1;  // immediate loss, still a legal (and possibly forced) move
    } else if (unclaimed == bit) {
      val = 0;
    } else if (one_moves) {
      val = -search(nown, m2, false);
    } else {
      val = -search(m1, nown, true);
    }
    if (val > best) {
      best = val;
      best_edge = e;
      if (best == 1) break;
    }
  }
  return {best, best_edge};
}

SolveResult Solver::solve_from(const Position& p) {
  check_position(p);
  if (p.n != n_ || p.k != k_)
    throw InvalidParams("solve_from: position does not match this solver");
  nodes_ = 0;
  hits_ = 0;
  started_ns_ = now_ns();

  SolveResult out;
  out.stats.mode = mode_;
  std::uint64_t unclaimed = full_ & ~(p.pi_edges | p.pii_edges);
  try {
    if (!unclaimed) {
      out.outcome = Outcome::Draw;
    } else {
      auto [val, e] = search_root(p);
      PlayerId mover = p.to_move();
      if (val == 0) {
        out.outcome = Outcome::Draw;
      } else {
        bool mover_wins = val > 0;
        bool one_wins = (mover == PlayerId::One) == mover_wins;
        out.outcome = one_wins ? Outcome::PIWin : Outcome::PIIWin;
      }
      out.best = edges_[e];
    }
  } catch (const Cut&) {
    out.budget_hit = true;
  }
  out.stats.nodes = nodes_;
  out.stats.table_hits = hits_;
  out.stats.elapsed_ms = (double)(now_ns() - started_ns_) * 1e-6;
  return out;
}

std::pair<Vertex, Vertex> Solver::best_move(const Position& p) {
  check_position(p);
  if (p.n != n_ || p.k != k_)
    throw InvalidParams("best_move: position does not match this solver");
  if (!(full_ & ~(p.pi_edges | p.pii_edges)))
    throw GameOver("best_move: the board is already full");
  nodes_ = 0;
  hits_ = 0;
  started_ns_ = now_ns();
  try {
    auto [val, e] = search_root(p);
    (void)val;
    return edges_[e];
  } catch (const Cut&) {
    throw BudgetExceeded("best_move: solver budget exhausted");
  }
}

SolveResult solve_game(int n, int k, SolveOptions opts) {
  Solver s(n, k, opts);
  return s.solve();
}

std::vector<OutcomeRow> outcome_table(int k, int n_lo, int n_hi, SolveOptions opts) {
  if (n_lo < 2 || n_hi < n_lo)
    throw InvalidParams("outcome_table: bad range");
  std::vector<OutcomeRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    Solver s(n, k, opts);
    SolveResult r = s.solve();
    rows.push_back(OutcomeRow{n, k, r.outcome, r.stats, r.budget_hit});
  }
  return rows;
}

}  // namespace starclip
