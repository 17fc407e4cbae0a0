#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "starclip/star.hpp"

namespace starclip {

enum class Outcome { PIWin, PIIWin, Draw };

const char* outcome_name(Outcome o);

// Lexicographic edge numbering on K_n: (0,1),(0,2),...,(1,2),...
int edge_index(int n, Vertex u, Vertex v);
std::pair<Vertex, Vertex> edge_at(int n, int id);

// A position both players can still stand in: disjoint claim sets, each with
// max degree at most k. Lost positions are scored at move application and
// never built. The mover falls out of the claim counts.
struct Position {
  int n = 0;
  int k = 0;
  std::uint64_t pi_edges = 0;
  std::uint64_t pii_edges = 0;

  static Position initial(int n, int k) { return {n, k, 0, 0}; }
  static Position from_game(const StarGame& gs);

  int claimed() const;
  PlayerId to_move() const;
};

enum class CanonMode { None, FullPermutation, RefinementHash };

const char* canon_mode_name(CanonMode m);

struct CanonKey {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool operator==(const CanonKey&) const = default;
};

struct CanonKeyHash {
  std::size_t operator()(const CanonKey& k) const {
    std::uint64_t z = k.a * 0x9e3779b97f4a7c15ULL ^ (k.b + 0x632be59bd9b4e019ULL);
    z = (z ^ (z >> 29)) * 0xbf58476d1ce4e5b9ULL;
    return static_cast<std::size_t>(z ^ (z >> 32));
  }
};

// Key constant across relabelings that map each player's edges onto
// themselves. FullPermutation minimizes an encoding over vertex orders
// (exact, n <= 8 only); RefinementHash is a permutation-invariant digest,
// collision-checked at the table by exemplar comparison; None echoes the
// raw masks.
CanonKey canonicalize(const Position& p, CanonMode mode);

struct SolveOptions {
  std::optional<CanonMode> mode;  // empty: FullPermutation when n <= 8, else RefinementHash
  int canon_claim_limit = 12;     // deeper positions are re-searched, not stored
  std::uint64_t max_nodes = 0;    // 0 = unlimited
  double max_seconds = 0;         // 0 = unlimited
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  double elapsed_ms = 0;
  CanonMode mode = CanonMode::None;
};

struct SolveResult {
  std::optional<Outcome> outcome;  // empty when the budget ran out
  std::optional<std::pair<Vertex, Vertex>> best;
  SolveStats stats;
  bool budget_hit = false;
};

// Memoized exact search under the misere convention: completing a star
// loses, a filled board with no loss draws, Win > Draw > Loss for the mover.
class Solver {
 public:
  Solver(int n, int k, SolveOptions opts = {});

  SolveResult solve() { return solve_from(Position::initial(n_, k_)); }
  SolveResult solve_from(const Position& p);

  // Lexicographically smallest move achieving the position's value.
  std::pair<Vertex, Vertex> best_move(const Position& p);

  CanonMode mode() const { return mode_; }

 private:
  struct Entry {
    std::uint64_t a, b;  // exemplar masks under the active mode
    std::int8_t val;
  };
  struct Cut {};  // internal budget signal

  int search(std::uint64_t m1, std::uint64_t m2, bool one_moves);
  std::pair<int, int> search_root(const Position& p);  // (value, best edge id)
  void tick();

  int n_;
  int k_;
  CanonMode mode_;
  SolveOptions opts_;
  int m_ = 0;  // edge count of K_n
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> inc_;  // per-vertex incident edge mask
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::unordered_map<CanonKey, std::vector<Entry>, CanonKeyHash> table_;
  std::uint64_t nodes_ = 0;
  std::uint64_t hits_ = 0;
  std::uint64_t node_budget_ = 0;
  double sec_budget_ = 0;
  std::uint64_t started_ns_ = 0;
};

SolveResult solve_game(int n, int k, SolveOptions opts = {});

struct OutcomeRow {
  int n = 0;
  int k = 0;
  std::optional<Outcome> outcome;
  SolveStats stats;
  bool budget_hit = false;
};

std::vector<OutcomeRow> outcome_table(int k, int n_lo, int n_hi, SolveOptions opts = {});

}  // namespace starclip
