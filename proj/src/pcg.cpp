#include "starclip/pcg.hpp"

#include <algorithm>
#include <string>

#include "starclip/errors.hpp"

namespace starclip {

namespace {

// Lexicographically first non-adjacent active pair (u < v), or {-1,-1}.
std::pair<Vertex, Vertex> first_free_pair(const WorkGraph& g) {
  for (Vertex u = g.first_active(); u >= 0; u = g.next_active(u)) {
    for (Vertex v = g.next_active(u); v >= 0; v = g.next_active(v)) {
      if (!g.has_edge(u, v)) return {u, v};
    }
  }
  return {-1, -1};
}

[[noreturn]] void no_move(const std::string& why) {
  throw NoLegalMove("choose_clip: " + why);
}

// Applies while the position stays a matching. The clip must keep hitting
// edges: once the order drops to 4 it is the last clip, and the two
// surviving vertices must not be joined.
ClipChoice designated_endpoint(const WorkGraph& cur, const PcgMove& pi) {
  if (pi.is_pass) {
    // Still a matching; take endpoints of two distinct edges when there
    // are two, else an endpoint and a non-neighbor.
    Vertex a = -1;
    for (Vertex u = cur.first_active(); u >= 0; u = cur.next_active(u)) {
      if (cur.degree(u) == 0) continue;
      if (a < 0) {
        a = u;
      } else if (!cur.has_edge(a, u)) {
        return {ClipRule::DesignatedEndpoint, a, u};
      }
    }
    if (a >= 0) {
      Vertex w = cur.smallest_nonneighbor(a);
      if (w >= 0) return {ClipRule::DesignatedEndpoint, a, w};
    }
    auto [x, y] = first_free_pair(cur);
    if (x < 0) no_move("no non-adjacent pair left");
    return {ClipRule::DesignatedEndpoint, x, y};
  }
  Vertex a = std::min(pi.u, pi.v);
  // Partner: the smallest non-neighbor still carrying an edge, so the
  // clip removes the builder's edge and one matching edge.
  Vertex plain = -1;
  for (Vertex x = cur.first_active(); x >= 0; x = cur.next_active(x)) {
    if (x == a || cur.has_edge(a, x)) continue;
    if (plain < 0) plain = x;
    if (cur.degree(x) > 0) return {ClipRule::DesignatedEndpoint, a, x};
  }
  if (plain >= 0) return {ClipRule::DesignatedEndpoint, a, plain};
  // Only possible on 3 vertices; any remaining free pair still clears
  // the builder's edge there.
  auto [x, y] = first_free_pair(cur);
  if (x < 0) no_move("no non-adjacent pair left");
  return {ClipRule::DesignatedEndpoint, x, y};
}

ClipChoice matching_repair(const WorkGraph& cur) {
  // First pair whose removal brings the rest down to max degree 1.
  for (Vertex u = cur.first_active(); u >= 0; u = cur.next_active(u)) {
    for (Vertex v = cur.next_active(u); v >= 0; v = cur.next_active(v)) {
      if (cur.has_edge(u, v)) continue;
      bool ok = true;
      for (Vertex w = cur.first_active(); w >= 0 && ok; w = cur.next_active(w)) {
        if (w == u || w == v) continue;
        int d = cur.degree(w) - (cur.has_edge(w, u) ? 1 : 0) -
                (cur.has_edge(w, v) ? 1 : 0);
        if (d > 1) ok = false;
      }
      if (ok) return {ClipRule::MatchingRepair, u, v};
    }
  }
  no_move("no clip restores max degree 1");
}

ClipChoice degree_two_relief(const WorkGraph& cur) {
  for (Vertex u = cur.first_active(); u >= 0; u = cur.next_active(u)) {
    if (cur.degree(u) < 2) continue;
    Vertex w = cur.smallest_nonneighbor(u);
    if (w < 0) no_move("degree-2 vertex has no non-adjacent partner");
    return {ClipRule::DegreeTwoRelief, u, w};
  }
  no_move("no vertex of degree 2 or more");
}

ClipChoice nice_pair(const WorkGraph& cur) {
  auto p = find_nice_pair(cur);
  if (!p) no_move("no nice pair");
  return {ClipRule::NicePair, p->first, p->second};
}

ClipChoice max_degree_relief(const WorkGraph& cur) {
  int top = cur.max_degree();
  for (Vertex u = cur.first_active(); u >= 0; u = cur.next_active(u)) {
    if (cur.degree(u) != top) continue;
    Vertex w = cur.smallest_nonneighbor(u);
    if (w < 0) no_move("maximum-degree vertex has no non-adjacent partner");
    return {ClipRule::MaxDegreeRelief, u, w};
  }
  no_move("no active vertex");  // unreachable on non-empty graphs
}

bool one_sparse_counts(const Snapshot& s) { return 2 * s.e <= s.v; }

}  // namespace

const char* rule_name(int rule) {
  switch (rule) {
    case 1: return "designated-endpoint";
    case 2: return "matching-repair";
    case 3: return "degree-two-relief";
    case 4: return "nice-pair";
    case 5: return "max-degree-relief";
  }
  return "";
}

ClipChoice choose_clip(const Snapshot& pre, const WorkGraph& cur, const PcgMove& pi) {
  int n = pre.v;
  if (n < 10) {
    if (pre.max_deg <= 1) return designated_endpoint(cur, pi);
    if (one_sparse_counts(pre) && (n == 5 || n == 6)) return matching_repair(cur);
    if (one_sparse_counts(pre) && n >= 7) return degree_two_relief(cur);
  }
  if (fg_sparse_counts(pre.v, pre.e, pre.max_deg) && 2 * pre.max_deg <= n - 5) {
    return nice_pair(cur);
  }
  return max_degree_relief(cur);
}

PcgGame::PcgGame(const WorkGraph& start) : g_(start) {
  int v0 = g_.active_count();
  target_ = v0 >= 1 ? (v0 - 1) / 2 : 0;
  pre_ = g_.snapshot();
  if (target_ == 0) phase_ = PcgPhase::Finished;
}

bool PcgGame::won() const {
  if (phase_ != PcgPhase::Finished) throw WrongPhase("won: game still running");
  return clips_done_ == target_ && g_.edge_count() == 0;
}

const PcgMove& PcgGame::last_pi_move() const {
  if (phase_ != PcgPhase::AwaitingPii) {
    throw WrongPhase("last_pi_move: no builder move pending");
  }
  return pending_;
}

void PcgGame::apply_pi(const PcgMove& m) {
  if (phase_ != PcgPhase::AwaitingPi) throw WrongPhase("apply_pi: not the builder's turn");
  pending_ = m;
  if (!m.is_pass) {
    g_.add_edge(m.u, m.v);
    pending_.u = std::min(m.u, m.v);
    pending_.v = std::max(m.u, m.v);
  }
  mid_ = g_.snapshot();
  // Clips remain but no non-adjacent pair exists: the clipper is stuck.
  phase_ = g_.has_nonadjacent_pair() ? PcgPhase::AwaitingPii : PcgPhase::Finished;
}

ClipChoice PcgGame::policy_clip() const {
  if (phase_ != PcgPhase::AwaitingPii) throw WrongPhase("policy_clip: not the clipper's turn");
  return choose_clip(pre_, g_, pending_);
}

const RoundRecord& PcgGame::apply_pii(const ClipChoice& c) {
  if (phase_ != PcgPhase::AwaitingPii) throw WrongPhase("apply_pii: not the clipper's turn");
  RoundRecord r;
  r.index = static_cast<int>(history_.size()) + 1;
  r.pi_pass = pending_.is_pass;
  r.pi_u = pending_.u;
  r.pi_v = pending_.v;
  r.pre = pre_;
  r.mid = mid_;
  r.rule = static_cast<int>(c.rule);
  r.clip_u = c.u;
  r.clip_v = c.v;
  r.clip_deg_u = g_.degree(c.u);
  r.clip_deg_v = g_.degree(c.v);
  g_.clip_pair(c.u, c.v);
  r.post = g_.snapshot();
  pre_ = r.post;
  ++clips_done_;
  phase_ = clips_done_ == target_ ? PcgPhase::Finished : PcgPhase::AwaitingPi;
  history_.push_back(r);
  return history_.back();
}

const RoundRecord& PcgGame::play_round(const PcgMove& pi) {
  apply_pi(pi);
  if (phase_ == PcgPhase::Finished) {
    throw NoLegalMove("play_round: no non-adjacent pair to clip");
  }
  return apply_pii(policy_clip());
}

void PcgMonitor::flag(const RoundRecord& r, const std::string& what) {
  violations_.push_back("round " + std::to_string(r.index) + " rule " +
                        std::to_string(r.rule) + ": " + what);
}

void PcgMonitor::observe(const RoundRecord& r) {
  // Engine honesty: the builder adds at most one edge, the clip removes
  // exactly two vertices.
  if (r.mid.v != r.pre.v || r.post.v != r.pre.v - 2) flag(r, "vertex count drift");
  long long added = r.pi_pass ? 0 : 1;
  if (r.mid.e != r.pre.e + added) flag(r, "edge count drift");

  if (!(r.pre.max_deg <= r.mid.max_deg && r.mid.max_deg <= r.pre.max_deg + 1)) {
    flag(r, "builder move changed max degree by more than one");
  }
  bool fallback = r.rule == static_cast<int>(ClipRule::MaxDegreeRelief);
  if (fallback) {
    if (r.post.e > r.mid.e - r.mid.max_deg) {
      flag(r, "clip removed fewer than max-degree edges");
    }
    if (r.post.max_deg > r.pre.max_deg) flag(r, "max degree grew across the round");
  }
  if (r.rule == static_cast<int>(ClipRule::NicePair) || fallback) {
    if (!g_sparse_counts(r.pre.v, r.pre.e)) flag(r, "round started above density bound");
  }
  if (r.rule == static_cast<int>(ClipRule::NicePair)) {
    long long lhs = static_cast<long long>(r.mid.v) * (r.clip_deg_u + r.clip_deg_v);
    if (lhs < 4 * r.mid.e) flag(r, "clipped pair not nice");
    if (!g_sparse_counts(r.post.v, r.post.e)) flag(r, "density bound lost after nice clip");
  }
  // Recovery bound: a run of consecutive fallback rounds entered from a
  // degree-and-density bounded graph of order n must end within
  // floor((n-1)/4) rounds. A fallback round that is itself bounded starts
  // a fresh run (the previous run recovered on time).
  if (fallback) {
    if (fg_sparse_counts(r.pre.v, r.pre.e, r.pre.max_deg)) {
      run_len_ = 1;
      run_cap_ = (r.pre.v - 1) / 4;
    } else if (run_len_ > 0) {
      ++run_len_;
    }
    if (run_len_ > run_cap_) {
      flag(r, "fallback run exceeded " + std::to_string(run_cap_) + " rounds");
    }
  } else {
    run_len_ = 0;
  }
}

}  // namespace starclip
