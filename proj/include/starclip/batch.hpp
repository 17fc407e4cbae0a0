#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starclip/solver.hpp"
#include "starclip/strategy.hpp"

namespace starclip {

// Monitor modes steer reporting and exit policy only. The strategy's
// internal invariant checks always run; they are part of the algorithm.
enum class MonitorMode { Off, Log, Assert };

MonitorMode parse_monitor_mode(const std::string& s);
const char* monitor_mode_name(MonitorMode m);

struct RunConfig {
  int n = 0;
  int k = 0;
  int games = 1;
  std::uint64_t seed = 0;
  std::string adversary = "random";
  MonitorMode monitor = MonitorMode::Log;
  bool allow_small = false;  // play boards under the guarantee line anyway
  int jobs = 1;              // never affects the bytes of the output
};

struct MoveRec {
  PlayerId by = PlayerId::One;
  Vertex u = -1;
  Vertex v = -1;
  bool annotated = false;  // true on second-player moves
  int stage = 0;
  StrategyPhase phase = StrategyPhase::StagePcg;
  int rule = 0;
};

struct GameReport {
  int index = 0;
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;       // per-game seed handed to the adversary
  std::string adversary;        // canonical spec with the seed resolved
  std::vector<MoveRec> moves;
  std::optional<Outcome> outcome;  // empty when the strategy aborted
  std::optional<int> losing_move_index;
  std::vector<std::string> violations;
  bool aborted = false;  // strategy declared itself stuck
  bool unguaranteed = false;
  WindowReport window;
  long long h2_edges = 0;
  int h2_max_degree = 0;
};

// One full game of the opener policy against the staged second player.
// The per-game seed is derived from cfg.seed and the index, so any game of
// a batch can be replayed alone.
GameReport run_game(const RunConfig& cfg, int index);

// All games of the batch, in index order. With jobs > 1 the games run on a
// thread pool; reports are identical to the sequential run.
std::vector<GameReport> run_batch(const RunConfig& cfg);

}  // namespace starclip
