#pragma once

#include <optional>
#include <vector>

#include "starclip/graph.hpp"

namespace starclip {

enum class PlayerId { One, Two };

inline PlayerId opponent(PlayerId p) {
  return p == PlayerId::One ? PlayerId::Two : PlayerId::One;
}

enum class GameResult { Ongoing, FirstWins, SecondWins, Draw };

struct StarMove {
  PlayerId by;
  Vertex u;
  Vertex v;
};

// Claiming game on the edges of K_n. A player who raises one of their own
// vertices to degree k+1 loses at once; a draw needs the whole edge set
// claimed with both players below that. Reckless claims are legal.
class StarGame {
 public:
  StarGame(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  long long total_edges() const { return static_cast<long long>(n_) * (n_ - 1) / 2; }

  PlayerId to_move() const { return to_move_; }
  GameResult result() const { return result_; }
  bool over() const { return result_ != GameResult::Ongoing; }

  bool claimed(Vertex u, Vertex v) const { return union_.has_edge(u, v); }
  const WorkGraph& claimed_by(PlayerId p) const {
    return p == PlayerId::One ? h1_ : h2_;
  }
  const WorkGraph& claimed_union() const { return union_; }

  // True when claiming {u,v} would keep both endpoints at degree k or
  // less in p's own graph.
  bool is_safe(PlayerId p, Vertex u, Vertex v) const;

  int moves_made() const { return static_cast<int>(moves_.size()); }
  int moves_made(PlayerId p) const;
  const std::vector<StarMove>& moves() const { return moves_; }
  std::optional<StarMove> last_move() const;

  // Ordinal (within the loser's own moves) of the move that lost, if any.
  std::optional<int> losing_move_index() const { return losing_index_; }

  std::vector<std::pair<Vertex, Vertex>> legal_moves() const;
  std::vector<std::pair<Vertex, Vertex>> safe_moves(PlayerId p) const;

  void claim(Vertex u, Vertex v);

 private:
  int n_;
  int k_;
  PlayerId to_move_ = PlayerId::One;
  GameResult result_ = GameResult::Ongoing;
  WorkGraph h1_;
  WorkGraph h2_;
  WorkGraph union_;
  std::vector<StarMove> moves_;
  std::optional<int> losing_index_;
};

// Most edges a player can hold without a vertex of degree k+1.
inline long long ex_bound(int n, int k) {
  return static_cast<long long>(n) * k / 2;
}

}  // namespace starclip
