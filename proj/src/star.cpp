#include "starclip/star.hpp"

#include <string>

#include "starclip/errors.hpp"

namespace starclip {

StarGame::StarGame(int n, int k) : n_(n), k_(k), h1_(n), h2_(n), union_(n) {
  if (n < 1) throw InvalidParams("board needs at least one vertex");
  if (k < 1) throw InvalidParams("degree cap k must be at least 1");
}

bool StarGame::is_safe(PlayerId p, Vertex u, Vertex v) const {
  const WorkGraph& h = claimed_by(p);
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  if (union_.has_edge(u, v)) return false;
  return h.degree(u) <= k_ - 1 && h.degree(v) <= k_ - 1;
}

int StarGame::moves_made(PlayerId p) const {
  // Players alternate from One, so the split falls out of the total.
  int total = moves_made();
  return p == PlayerId::One ? (total + 1) / 2 : total / 2;
}

std::optional<StarMove> StarGame::last_move() const {
  if (moves_.empty()) return std::nullopt;
  return moves_.back();
}

std::vector<std::pair<Vertex, Vertex>> StarGame::legal_moves() const {
  if (over()) throw GameOver("legal_moves: game already decided");
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v = u + 1; v < n_; ++v) {
      if (!union_.has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> StarGame::safe_moves(PlayerId p) const {
  if (over()) throw GameOver("safe_moves: game already decided");
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u) {
    if (claimed_by(p).degree(u) > k_ - 1) continue;
    for (Vertex v = u + 1; v < n_; ++v) {
      if (claimed_by(p).degree(v) > k_ - 1) continue;
      if (!union_.has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

void StarGame::claim(Vertex u, Vertex v) {
  if (over()) throw GameOver("claim: game already decided");
  if (u == v) throw LoopEdge("claim: loop at vertex " + std::to_string(u));
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw InvalidParams("claim: vertex out of range");
  }
  if (union_.has_edge(u, v)) {
    throw AlreadyClaimed("claim: edge {" + std::to_string(u) + "," +
                         std::to_string(v) + "} already claimed");
  }
  PlayerId p = to_move_;
  WorkGraph& h = p == PlayerId::One ? h1_ : h2_;
  h.add_edge(u, v);
  union_.add_edge(u, v);
  moves_.push_back({p, std::min(u, v), std::max(u, v)});
  if (h.degree(u) >= k_ + 1 || h.degree(v) >= k_ + 1) {
    result_ = p == PlayerId::One ? GameResult::SecondWins : GameResult::FirstWins;
    losing_index_ = moves_made(p);
  } else if (union_.edge_count() == total_edges()) {
    result_ = GameResult::Draw;
  } else if (h.edge_count() > ex_bound(n_, k_)) {
    // A player under the degree cap can never exceed the capacity bound.
    throw Error("internal: safe edge count above nk/2");
  }
  to_move_ = opponent(p);
}

}  // namespace starclip
