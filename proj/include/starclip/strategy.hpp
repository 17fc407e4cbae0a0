#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starclip/pcg.hpp"
#include "starclip/star.hpp"

namespace starclip {

enum class StrategyPhase { StagePcg, StagePairing, EndgameOdd, EndgameEvenWindow, Done };

const char* phase_name(StrategyPhase p);

// One reply by the second player, with enough context to annotate
// transcripts: which stage produced it and, for clip-driven moves, the
// clipping branch that fired.
struct StrategyMoveInfo {
  Vertex u = -1;
  Vertex v = -1;
  int stage = 0;
  StrategyPhase phase = StrategyPhase::StagePcg;
  int rule = 0;
};

// What happened at the even-parity decision point.
struct WindowReport {
  bool reached = false;
  int pi_safe_count = -1;
  bool stole = false;  // the opener's forced edge was one of ours, taken directly
  Vertex e1u = -1, e1v = -1;
  Vertex e2u = -1, e2v = -1;
  bool shape_ok = false;  // four live vertices and exactly one clip to go
};

// True when exactly one or two vertices have second-player degree k-1, all
// others have degree k, and a deficient pair spans no claimed edge.
bool claim_state_reached(const StarGame& gs, int k);

// The second player's constructive plan: k stages of embedded pair clipping
// on the degree-(j-1) vertex class, a pairing step for the one or two
// vertices each stage leaves behind, and a two-edge finish whose order
// depends on the parity of nk. Guaranteed sound for n >= 200k; smaller
// boards are playable best-effort behind allow_small and flagged.
class SecondPlayerStrategy {
 public:
  SecondPlayerStrategy(int n, int k, bool allow_small = false);

  static const char* id() { return "staged-pcg"; }

  // PII's reply in the current position. The caller applies it to the game.
  StrategyMoveInfo next_move(const StarGame& gs);

  int stage() const { return stage_; }
  StrategyPhase phase() const { return phase_; }
  bool unguaranteed() const { return unguaranteed_; }
  const WindowReport& window() const { return window_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<Vertex> stage_set(const StarGame& gs) const;
  void enter_stage(const StarGame& gs);
  StrategyMoveInfo clip_move(const StarGame& gs);
  StrategyMoveInfo window_move(const StarGame& gs);
  StrategyMoveInfo pairing_move(const StarGame& gs, const std::vector<Vertex>& s_set);
  void verify_sync(const StarGame& gs);
  void drain_monitor();
  void check_finish_shape(const StarGame& gs, Vertex eu, Vertex ev);
  [[noreturn]] void stuck(const std::string& what);

  int n_;
  int k_;
  bool unguaranteed_ = false;
  bool started_ = false;
  int stage_ = 1;
  StrategyPhase phase_ = StrategyPhase::StagePcg;
  std::optional<PcgGame> pcg_;
  PcgMonitor monitor_;
  std::size_t monitor_seen_ = 0;
  std::optional<std::pair<Vertex, Vertex>> pending_e2_;
  WindowReport window_;
  std::vector<std::string> violations_;
};

}  // namespace starclip
