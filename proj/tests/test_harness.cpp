#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "starclip/batch.hpp"
#include "starclip/errors.hpp"
#include "starclip/rng.hpp"
#include "starclip/transcript.hpp"

using namespace starclip;
using nlohmann::json;

TEST_CASE("monitor mode names") {
  CHECK(parse_monitor_mode("off") == MonitorMode::Off);
  CHECK(parse_monitor_mode("log") == MonitorMode::Log);
  CHECK(parse_monitor_mode("assert") == MonitorMode::Assert);
  CHECK_THROWS_AS(parse_monitor_mode("loud"), InvalidParams);
  CHECK(std::string(monitor_mode_name(MonitorMode::Off)) == "off");
  CHECK(std::string(monitor_mode_name(MonitorMode::Log)) == "log");
  CHECK(std::string(monitor_mode_name(MonitorMode::Assert)) == "assert");
}

TEST_CASE("seed mixing is stable and spreads") {
  CHECK(rng::mix_seed(1, 2) == rng::mix_seed(1, 2));
  CHECK(rng::mix_seed(1, 2) != rng::mix_seed(1, 3));
  CHECK(rng::mix_seed(1, 2) != rng::mix_seed(2, 2));
  // Zero base must still give distinct per-game streams.
  CHECK(rng::mix_seed(0, 0) != rng::mix_seed(0, 1));
}

TEST_CASE("single game report is internally consistent") {
  RunConfig cfg;
  cfg.n = 20;
  cfg.k = 1;
  cfg.seed = 7;
  cfg.adversary = "random";
  cfg.allow_small = true;

  GameReport rep = run_game(cfg, 0);
  CHECK(rep.index == 0);
  CHECK(rep.n == 20);
  CHECK(rep.seed == rng::mix_seed(7, 0));
  CHECK(rep.adversary == "random:" + std::to_string(rep.seed));
  CHECK(rep.unguaranteed);

  REQUIRE_FALSE(rep.moves.empty());
  for (std::size_t i = 0; i < rep.moves.size(); ++i) {
    const MoveRec& m = rep.moves[i];
    CHECK(m.by == (i % 2 == 0 ? PlayerId::One : PlayerId::Two));
    CHECK(m.annotated == (m.by == PlayerId::Two));
    CHECK(m.u < m.v);
  }
  CHECK((rep.outcome.has_value() || rep.aborted));

  // Pure function of (config, index).
  GameReport again = run_game(cfg, 0);
  CHECK(game_json_line(again, cfg) == game_json_line(rep, cfg));
}

TEST_CASE("parallel batches serialize to the sequential bytes") {
  RunConfig cfg;
  cfg.n = 14;
  cfg.k = 1;
  cfg.games = 6;
  cfg.seed = 3;
  cfg.adversary = "safe-random";
  cfg.allow_small = true;

  cfg.jobs = 1;
  auto seq = run_batch(cfg);
  std::ostringstream a;
  write_game_jsonl(a, seq, cfg);

  cfg.jobs = 4;
  auto par = run_batch(cfg);
  std::ostringstream b;
  write_game_jsonl(b, par, cfg);

  REQUIRE(seq.size() == 6);
  for (std::size_t i = 0; i < seq.size(); ++i) CHECK(seq[i].index == static_cast<int>(i));
  CHECK(a.str() == b.str());
}

TEST_CASE("game line schema") {
  GameReport rep;
  rep.index = 2;
  rep.n = 10;
  rep.k = 1;
  rep.seed = 99;
  rep.adversary = "random:99";
  rep.moves.push_back({PlayerId::One, 0, 1, false, 0, StrategyPhase::StagePcg, 0});
  rep.moves.push_back({PlayerId::Two, 0, 2, true, 1, StrategyPhase::StagePcg, 4});
  rep.outcome = Outcome::PIIWin;
  rep.losing_move_index = 5;
  rep.violations = {"example"};
  rep.unguaranteed = true;
  rep.window.reached = true;
  rep.window.pi_safe_count = 1;
  rep.window.stole = false;
  rep.window.e1u = 4;
  rep.window.e1v = 5;
  rep.window.e2u = 6;
  rep.window.e2v = 7;
  rep.window.shape_ok = true;
  rep.h2_edges = 4;
  rep.h2_max_degree = 1;

  RunConfig cfg;
  cfg.n = 10;
  cfg.k = 1;
  cfg.games = 3;
  cfg.seed = 1;
  cfg.adversary = "random";

  std::string line = game_json_line(rep, cfg);
  json j = json::parse(line);
  CHECK(j.dump() == line);  // keys already in sorted order

  std::set<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
  CHECK(keys == std::set<std::string>{
                    "adversary", "config", "h2", "index", "k", "losing_move_index",
                    "monitor_violations", "moves", "n", "outcome", "seed", "strategy",
                    "unguaranteed", "version", "window"});

  CHECK(j["version"] == "1");
  CHECK(j["strategy"] == "staged-pcg");
  CHECK(j["outcome"] == "pii-win");
  CHECK(j["config"] ==
        json({{"adversary", "random"},
              {"games", 3},
              {"k", 1},
              {"monitor", "log"},
              {"n", 10},
              {"seed", 1}}));
  CHECK(j["moves"][0] == json({{"edge", "0-1"}, {"player", "one"}}));
  CHECK(j["moves"][1]["annotation"] ==
        json({{"phase", "stage-pcg"}, {"stage", 1}, {"rule", "nice-pair"}}));
  CHECK(j["window"] == json({{"e1", "4-5"},
                             {"e2", "6-7"},
                             {"pi_safe_count", 1},
                             {"shape_ok", true},
                             {"stole", false}}));
  CHECK(j["h2"] == json({{"edges", 4}, {"max_degree", 1}}));
}

TEST_CASE("schema options: off monitor, aborted game, no window") {
  GameReport rep;
  rep.index = 0;
  rep.n = 6;
  rep.k = 1;
  rep.seed = 5;
  rep.adversary = "random:5";
  rep.aborted = true;  // no outcome recorded

  RunConfig cfg;
  cfg.n = 6;
  cfg.k = 1;
  cfg.seed = 5;
  cfg.monitor = MonitorMode::Off;

  json j = json::parse(game_json_line(rep, cfg));
  CHECK(j["outcome"] == "aborted");
  CHECK_FALSE(j.contains("monitor_violations"));
  CHECK_FALSE(j.contains("losing_move_index"));
  CHECK_FALSE(j.contains("window"));
}

TEST_CASE("clipping transcript") {
  WorkGraph start = parse_graph("v=5; edges=(0,1)");
  PcgGame game(start);
  PcgMonitor mon;
  while (!game.finished()) {
    game.apply_pi(PcgMove::pass());
    if (game.finished()) break;
    mon.observe(game.apply_pii(game.policy_clip()));
  }

  json j = json::parse(pcg_transcript_json(start, game, mon));
  CHECK(j["initial_graph"] == "v=5; edges=(0,1)");
  CHECK(j["target"] == 2);
  CHECK(j["clips_done"] == 2);
  CHECK(j["won"] == true);
  CHECK(j["violations"] == json::array());
  REQUIRE(j["rounds"].size() == 2);
  CHECK(j["rounds"][0] == json({{"pi", "pass"},
                                {"pii", {0, 2}},
                                {"branch", 1},
                                {"rule", "designated-endpoint"},
                                {"post", {{"v", 3}, {"e", 0}, {"max_degree", 0}}}}));
  CHECK(j["rounds"][1]["pii"] == json({1, 3}));

  // A game that has not finished serializes won as null, and an added edge
  // shows up as a pair.
  WorkGraph s2 = parse_graph("v=7; edges=");
  PcgGame g2(s2);
  PcgMonitor m2;
  g2.apply_pi(PcgMove::add(2, 5));
  m2.observe(g2.apply_pii(g2.policy_clip()));
  json j2 = json::parse(pcg_transcript_json(s2, g2, m2));
  CHECK(j2["won"].is_null());
  CHECK(j2["rounds"][0]["pi"] == json({2, 5}));
}

TEST_CASE("solver csv rows") {
  std::string csv = outcome_rows_csv(outcome_table(1, 2, 3));
  std::istringstream is(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n,k,outcome,nodes,table_hits,elapsed_ms,canonical_mode,budget_hit");
  CHECK(lines[1].rfind("2,1,draw,", 0) == 0);
  CHECK(lines[2].rfind("3,1,pii-win,", 0) == 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 7);
    CHECK(lines[i].find(",full-permutation,0") != std::string::npos);
  }
}
