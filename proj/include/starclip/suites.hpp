#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "starclip/pcg.hpp"

namespace starclip {

struct SuiteOptions {
  int exhaustive_max = 8;           // vertex cap for the exhaustive sweeps
  bool inject_skip_degree_sum = false;  // drop the pair qualification on purpose
  std::uint64_t seed = 2024;
  int random_rounds = 10000;  // randomized structural instances
  int playout_rounds = 1000;  // complete playouts per board
  int pcg_random_rounds = 1000;  // clipping games per start order
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  long long checked = 0;
  std::vector<std::string> failures;  // capped; see note
  std::string note;
};

// Every graph satisfying the degree hypothesis has a nice pair, exhaustively
// small and randomized large.
SuiteResult run_nice_pair_suite(const SuiteOptions& opt);

// Clipping a qualifying pair from a sparse graph plus at most one edge
// leaves a sparse graph. The injected fault drops the qualification and is
// expected to surface a counterexample.
SuiteResult run_clip_sparse_suite(const SuiteOptions& opt);

// On five or six vertices, any one-edge extension of a graph with at most
// v/2 edges has a clip restoring max degree one, and the policy finds the
// lexicographically first such clip.
SuiteResult run_small_repair_suite(const SuiteOptions& opt);

// Random complete playouts never draw on boards with n >= 2k+2, the union
// degree stays at most 2k before the loss, and the known drawn boards are
// confirmed by the solver.
SuiteResult run_non_draw_suite(const SuiteOptions& opt);

// The clipping policy wins from every sparse start: exhaustively against
// every builder line on small boards, randomized on larger ones, with the
// monitors silent throughout.
SuiteResult run_pcg_clip_suite(const SuiteOptions& opt);

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt);

// ---- building blocks shared with the CLI ----

enum class PcgOpponentKind { Random, Pass, GreedyDegree };

PcgMove pcg_opponent_move(PcgOpponentKind kind, const PcgGame& game,
                          std::mt19937_64& rng);

WorkGraph random_fg_sparse_graph(int v, std::mt19937_64& rng);

// Plays every builder line from the start; returns the playout count and
// appends descriptions of lost games or monitor noise to failures.
long long pcg_exhaustive_verify(const WorkGraph& start,
                                std::vector<std::string>& failures,
                                std::size_t fail_cap = 5);

}  // namespace starclip
