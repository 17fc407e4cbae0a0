#pragma once

#include <string>
#include <vector>

#include "starclip/graph.hpp"

namespace starclip {

// Builder's move in a clipping round: add one edge, or pass.
struct PcgMove {
  bool is_pass = true;
  Vertex u = -1;
  Vertex v = -1;

  static PcgMove pass() { return {}; }
  static PcgMove add(Vertex a, Vertex b) { return {false, a, b}; }
};

// Which clipping rule fired. Values are stable, they appear in transcripts.
enum class ClipRule : int {
  DesignatedEndpoint = 1,  // small graph, max degree of P at most 1
  MatchingRepair = 2,      // 5 or 6 vertices, P has at most v/2 edges
  DegreeTwoRelief = 3,     // 7 to 9 vertices, P has at most v/2 edges
  NicePair = 4,            // sparse with slack, clip a nice pair
  MaxDegreeRelief = 5,     // fallback, clip a maximum-degree vertex
};

struct ClipChoice {
  ClipRule rule;
  Vertex u = -1;
  Vertex v = -1;
};

// Stable transcript label for a rule number; "" for 0 (no rule).
const char* rule_name(int rule);

// One round: P (pre) -> builder move -> C (mid) -> clip -> post.
struct RoundRecord {
  int index = 0;  // 1-based
  bool pi_pass = true;
  Vertex pi_u = -1;
  Vertex pi_v = -1;
  int rule = 0;  // int(ClipRule)
  Vertex clip_u = -1;
  Vertex clip_v = -1;
  int clip_deg_u = 0;  // degrees of the clipped pair in the mid graph
  int clip_deg_v = 0;
  Snapshot pre, mid, post;
};

// Deterministic clipping policy. All dispatch conditions read the pre-round
// counts P; the chosen vertices come from the current graph C and, for the
// small-graph rule, the builder's last move.
ClipChoice choose_clip(const Snapshot& pre, const WorkGraph& cur, const PcgMove& pi);

enum class PcgPhase { AwaitingPi, AwaitingPii, Finished };

// Pair clipping game. The clipper must remove floor((v0-1)/2) non-adjacent
// pairs; it wins if the final graph is edgeless. A position with clips left
// to make but no non-adjacent pair finishes immediately as a loss.
class PcgGame {
 public:
  explicit PcgGame(const WorkGraph& start);

  PcgPhase phase() const { return phase_; }
  bool finished() const { return phase_ == PcgPhase::Finished; }
  bool won() const;
  int target() const { return target_; }
  int clips_done() const { return clips_done_; }
  const WorkGraph& graph() const { return g_; }
  const Snapshot& pre_round() const { return pre_; }
  const PcgMove& last_pi_move() const;
  const std::vector<RoundRecord>& history() const { return history_; }
  bool clip_available() const { return g_.has_nonadjacent_pair(); }

  void apply_pi(const PcgMove& m);
  ClipChoice policy_clip() const;  // pure; what the built-in policy would clip
  const RoundRecord& apply_pii(const ClipChoice& c);

  // apply_pi + policy_clip + apply_pii. Throws NoLegalMove if the builder's
  // move leaves no legal clip.
  const RoundRecord& play_round(const PcgMove& pi);

 private:
  WorkGraph g_;
  PcgPhase phase_ = PcgPhase::AwaitingPi;
  Snapshot pre_;  // graph at the last round boundary
  Snapshot mid_;
  PcgMove pending_;
  int target_ = 0;
  int clips_done_ = 0;
  std::vector<RoundRecord> history_;
};

// Invariant monitors over round records. Silent (no violations) on every
// game the built-in policy plays from a sparse start.
class PcgMonitor {
 public:
  void observe(const RoundRecord& r);
  bool ok() const { return violations_.empty(); }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  void flag(const RoundRecord& r, const std::string& what);

  int run_len_ = 0;  // consecutive fallback rounds since a sparse entry point
  int run_cap_ = 0;
  std::vector<std::string> violations_;
};

}  // namespace starclip
