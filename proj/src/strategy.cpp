#include "starclip/strategy.hpp"

#include <algorithm>
#include <string>

#include "starclip/errors.hpp"

namespace starclip {

namespace {

int deg2(const StarGame& gs, Vertex v) { return gs.claimed_by(PlayerId::Two).degree(v); }

long long nk_of(const StarGame& gs) {
  return static_cast<long long>(gs.n()) * gs.k();
}

}  // namespace

const char* phase_name(StrategyPhase p) {
  switch (p) {
    case StrategyPhase::StagePcg: return "stage-pcg";
    case StrategyPhase::StagePairing: return "stage-pairing";
    case StrategyPhase::EndgameOdd: return "endgame-odd";
    case StrategyPhase::EndgameEvenWindow: return "endgame-even-window";
    case StrategyPhase::Done: return "done";
  }
  return "?";
}

bool claim_state_reached(const StarGame& gs, int k) {
  std::vector<Vertex> low;
  for (Vertex v = 0; v < gs.n(); ++v) {
    int d = deg2(gs, v);
    if (d == k - 1) {
      low.push_back(v);
    } else if (d != k) {
      return false;
    }
  }
  if (low.size() != 1 && low.size() != 2) return false;
  if (low.size() == 2 && gs.claimed_union().has_edge(low[0], low[1])) return false;
  return true;
}

SecondPlayerStrategy::SecondPlayerStrategy(int n, int k, bool allow_small)
    : n_(n), k_(k) {
  if (n < 2 || k < 1) throw InvalidParams("strategy needs n >= 2 and k >= 1");
  if (n < 200LL * k) {
    if (!allow_small) {
      throw InvalidParams("guarantee holds for n >= 200k; enable best-effort play explicitly");
    }
    unguaranteed_ = true;
  }
}

void SecondPlayerStrategy::stuck(const std::string& what) {
  violations_.push_back("stage " + std::to_string(stage_) + " [" +
                        phase_name(phase_) + "]: " + what);
  throw StrategyStuck(what);
}

std::vector<Vertex> SecondPlayerStrategy::stage_set(const StarGame& gs) const {
  std::vector<Vertex> s;
  for (Vertex v = 0; v < n_; ++v) {
    if (deg2(gs, v) == stage_ - 1) s.push_back(v);
  }
  return s;
}

void SecondPlayerStrategy::enter_stage(const StarGame& gs) {
  phase_ = (stage_ == k_ && nk_of(gs) % 2 != 0) ? StrategyPhase::EndgameOdd
                                                : StrategyPhase::StagePcg;
  // Stage-start shape: every vertex sits at degree j-1 or j, at most two at j.
  int at_j = 0;
  for (Vertex v = 0; v < n_; ++v) {
    int d = deg2(gs, v);
    if (d == stage_) {
      ++at_j;
    } else if (d != stage_ - 1) {
      stuck("vertex " + std::to_string(v) + " at degree " + std::to_string(d) +
            " entering stage " + std::to_string(stage_));
    }
  }
  if (at_j > 2) stuck("more than two vertices ahead of the stage");

  std::vector<Vertex> s = stage_set(gs);
  if (static_cast<int>(s.size()) < n_ - 2) stuck("stage set smaller than n-2");

  // The opener's newest edge becomes round one of the embedded game, so the
  // start graph excludes it when it joins two stage vertices.
  const WorkGraph& un = gs.claimed_union();
  StarMove last = *gs.last_move();
  WorkGraph full = WorkGraph::with_active(n_, s);
  WorkGraph g0 = WorkGraph::with_active(n_, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!un.has_edge(s[i], s[j])) continue;
      full.add_edge(s[i], s[j]);
      if (last.u == s[i] && last.v == s[j]) continue;
      g0.add_edge(s[i], s[j]);
    }
  }
  if (full.max_degree() > 2 * k_) stuck("stage graph max degree above 2k");
  if (n_ >= 200LL * k_ && !is_fg_sparse(full)) stuck("stage graph not sparse");

  pcg_.emplace(g0);
  monitor_ = PcgMonitor{};
  monitor_seen_ = 0;
  if (pcg_->finished()) stuck("stage clipping game finished at entry");
}

void SecondPlayerStrategy::verify_sync(const StarGame& gs) {
  const WorkGraph& pg = pcg_->graph();
  const WorkGraph& un = gs.claimed_union();
  bits::BitVec expect(n_);
  for (Vertex v = 0; v < n_; ++v) {
    if (deg2(gs, v) == stage_ - 1) expect.set(v);
  }
  if (!(expect == pg.active_set())) stuck("stage set drifted from the embedded game");
  int words = pg.words();
  for (Vertex u = pg.first_active(); u >= 0; u = pg.next_active(u)) {
    const std::uint64_t* have = pg.row(u);
    const std::uint64_t* grow = un.row(u);
    for (int w = 0; w < words; ++w) {
      if (have[w] != (grow[w] & expect.w[static_cast<std::size_t>(w)])) {
        stuck("embedded graph drifted from the claimed union");
      }
    }
  }
}

void SecondPlayerStrategy::drain_monitor() {
  const auto& vs = monitor_.violations();
  for (; monitor_seen_ < vs.size(); ++monitor_seen_) {
    violations_.push_back("stage " + std::to_string(stage_) + " monitor: " +
                          vs[monitor_seen_]);
  }
}

// Shape after the move that completes the last stage's clipping: one or two
// vertices short by one degree, everything else exactly at k, and a short
// pair spanning no claimed edge.
void SecondPlayerStrategy::check_finish_shape(const StarGame& gs, Vertex eu, Vertex ev) {
  std::vector<Vertex> low;
  bool ok = true;
  for (Vertex v = 0; v < n_; ++v) {
    int d = deg2(gs, v) + (v == eu ? 1 : 0) + (v == ev ? 1 : 0);
    if (d == k_ - 1) {
      low.push_back(v);
    } else if (d != k_) {
      ok = false;
    }
  }
  if (low.size() != 1 && low.size() != 2) ok = false;
  if (ok && low.size() == 2) {
    if (gs.claimed_union().has_edge(low[0], low[1])) ok = false;
    if (pending_e2_ || window_.reached) {
      if (low[0] != window_.e2u || low[1] != window_.e2v) ok = false;
    }
  }
  if (!ok) {
    violations_.push_back("stage " + std::to_string(stage_) +
                          ": finish shape off after claiming " +
                          std::to_string(eu) + "-" + std::to_string(ev));
  }
}

StrategyMoveInfo SecondPlayerStrategy::next_move(const StarGame& gs) {
  if (gs.n() != n_ || gs.k() != k_) throw InvalidParams("strategy bound to a different board");
  if (gs.over()) throw GameOver("next_move: game already decided");
  if (gs.to_move() != PlayerId::Two) throw WrongTiming("next_move: not the second player's turn");
  if (phase_ == StrategyPhase::Done) stuck("asked to move after the plan completed");

  if (pending_e2_) {
    auto [x, y] = *pending_e2_;
    if (gs.claimed(x, y)) stuck("reserved finishing edge was taken");
    pending_e2_.reset();
    phase_ = StrategyPhase::Done;
    return {x, y, stage_, StrategyPhase::EndgameEvenWindow, 0};
  }

  if (!started_) {
    if (gs.moves_made(PlayerId::Two) != 0) {
      throw InvalidParams("strategy must play from the second player's first move");
    }
    started_ = true;
    enter_stage(gs);
  } else if (phase_ == StrategyPhase::StagePairing) {
    std::vector<Vertex> s = stage_set(gs);
    if (!s.empty()) return pairing_move(gs, s);
    ++stage_;
    enter_stage(gs);
  }
  return clip_move(gs);
}

StrategyMoveInfo SecondPlayerStrategy::pairing_move(const StarGame& gs,
                                                    const std::vector<Vertex>& s_set) {
  Vertex s = s_set.front();
  for (Vertex w = 0; w < n_; ++w) {
    if (w == s || deg2(gs, w) != stage_ || gs.claimed(s, w)) continue;
    return {std::min(s, w), std::max(s, w), stage_, StrategyPhase::StagePairing, 0};
  }
  stuck("no unclaimed partner at the stage degree");
}

StrategyMoveInfo SecondPlayerStrategy::clip_move(const StarGame& gs) {
  StarMove last = *gs.last_move();
  const WorkGraph& pg = pcg_->graph();
  PcgMove m = (pg.is_active(last.u) && pg.is_active(last.v))
                  ? PcgMove::add(last.u, last.v)
                  : PcgMove::pass();
  bool window_now = nk_of(gs) % 2 == 0 && stage_ == k_ &&
                    gs.moves_made(PlayerId::Two) == nk_of(gs) / 2 - 2;
  pcg_->apply_pi(m);
  if (pcg_->finished()) stuck("no non-adjacent pair left to clip");
  verify_sync(gs);
  if (window_now) return window_move(gs);
  if (nk_of(gs) % 2 == 0 && stage_ == k_ &&
      pcg_->target() - pcg_->clips_done() <= 1) {
    stuck("reached the final clip outside the decision window");
  }

  ClipChoice c = pcg_->policy_clip();
  const RoundRecord& r = pcg_->apply_pii(c);
  drain_monitor();
  StrategyMoveInfo info{std::min(c.u, c.v), std::max(c.u, c.v), stage_, phase_, r.rule};
  if (pcg_->finished()) {
    if (!pcg_->won()) stuck("embedded clipping game lost");
    if (stage_ < k_) {
      phase_ = StrategyPhase::StagePairing;
    } else {
      check_finish_shape(gs, info.u, info.v);
      phase_ = StrategyPhase::Done;
    }
  }
  return info;
}

StrategyMoveInfo SecondPlayerStrategy::window_move(const StarGame& gs) {
  phase_ = StrategyPhase::EndgameEvenWindow;
  window_.reached = true;
  window_.shape_ok = pcg_->target() - pcg_->clips_done() == 1 &&
                     pcg_->graph().active_count() == 4;
  if (!window_.shape_ok) stuck("decision window shape off");

  ClipChoice c = pcg_->policy_clip();
  window_.e1u = std::min(c.u, c.v);
  window_.e1v = std::max(c.u, c.v);
  std::vector<Vertex> rest;
  for (Vertex v = pcg_->graph().first_active(); v >= 0; v = pcg_->graph().next_active(v)) {
    if (v != c.u && v != c.v) rest.push_back(v);
  }
  window_.e2u = rest[0];
  window_.e2v = rest[1];

  auto safe = gs.safe_moves(PlayerId::One);
  window_.pi_safe_count = static_cast<int>(safe.size());
  if (safe.size() > 1) stuck("opener has more than one safe continuation");

  if (safe.size() == 1 && safe[0].first == window_.e2u && safe[0].second == window_.e2v) {
    // The opener's forced edge is our reserved pair: taking it now leaves
    // him without a safe move, so the last clip is never needed.
    window_.stole = true;
    phase_ = StrategyPhase::Done;
    return {window_.e2u, window_.e2v, stage_, StrategyPhase::EndgameEvenWindow, 0};
  }
  window_.stole = safe.size() == 1 && safe[0].first == window_.e1u &&
                  safe[0].second == window_.e1v;
  const RoundRecord& r = pcg_->apply_pii(c);
  drain_monitor();
  if (!pcg_->won()) stuck("embedded clipping game lost");
  check_finish_shape(gs, window_.e1u, window_.e1v);
  pending_e2_ = {{window_.e2u, window_.e2v}};
  return {window_.e1u, window_.e1v, stage_, StrategyPhase::EndgameEvenWindow, r.rule};
}

}  // namespace starclip
