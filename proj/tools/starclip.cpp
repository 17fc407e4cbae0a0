#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "starclip/adversary.hpp"
#include "starclip/batch.hpp"
#include "starclip/errors.hpp"
#include "starclip/rng.hpp"
#include "starclip/solver.hpp"
#include "starclip/suites.hpp"
#include "starclip/transcript.hpp"

namespace sc = starclip;

namespace {

// --out resolution: explicit absolute paths win; relative paths and default
// names land in $STARCLIP_OUT when it is set; empty means stdout.
std::string resolve_out(const std::string& out, const char* default_name) {
  const char* env = std::getenv("STARCLIP_OUT");
  if (!out.empty()) {
    if (out[0] == '/' || env == nullptr) return out;
    return std::string(env) + "/" + out;
  }
  if (env != nullptr) return std::string(env) + "/" + default_name;
  return {};
}

int write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(path);
  if (!os) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 4;
  }
  os << text;
  std::cerr << "wrote " << path << "\n";
  return 0;
}

struct SimulateArgs {
  int n = 0, k = 0, games = 1, jobs = 1;
  std::uint64_t seed = 0;
  std::string adversary = "random";
  std::string monitor = "assert";
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  sc::RunConfig cfg;
  cfg.n = a.n;
  cfg.k = a.k;
  cfg.games = a.games;
  cfg.seed = a.seed;
  cfg.adversary = a.adversary;
  cfg.monitor = sc::parse_monitor_mode(a.monitor);
  cfg.jobs = a.jobs;
  cfg.allow_small = true;  // below the guarantee line runs are flagged, not refused

  std::vector<sc::GameReport> reports = sc::run_batch(cfg);

  std::ostringstream text;
  sc::write_game_jsonl(text, reports, cfg);
  int rc = write_text(resolve_out(a.out, "simulate.jsonl"), text.str());
  if (rc != 0) return rc;

  int wins = 0, losses = 0, draws = 0, aborted = 0;
  long long violations = 0;
  for (const auto& r : reports) {
    if (r.aborted) {
      ++aborted;
    } else if (*r.outcome == sc::Outcome::PIIWin) {
      ++wins;
    } else if (*r.outcome == sc::Outcome::PIWin) {
      ++losses;
    } else {
      ++draws;
    }
    violations += (long long)r.violations.size();
    if (cfg.monitor != sc::MonitorMode::Off)
      for (const auto& v : r.violations)
        std::cerr << "violation (game " << r.index << "): " << v << "\n";
  }
  std::cerr << "games=" << reports.size() << " wins=" << wins
            << " losses=" << losses << " draws=" << draws
            << " aborted=" << aborted << " violations=" << violations << "\n";

  if (aborted > 0) return 2;
  if (violations > 0 && cfg.monitor == sc::MonitorMode::Assert) return 2;
  if (losses > 0 || draws > 0) return 3;
  return 0;
}

struct PcgArgs {
  int n = 0, games = 1;
  std::uint64_t seed = 0;
  std::string graph;
  std::string adversary = "random";
  std::string monitor = "assert";
  std::string out;
  bool force = false;
};

sc::PcgOpponentKind parse_pcg_opponent(const std::string& s) {
  if (s == "random") return sc::PcgOpponentKind::Random;
  if (s == "pass") return sc::PcgOpponentKind::Pass;
  if (s == "greedy-degree") return sc::PcgOpponentKind::GreedyDegree;
  throw sc::InvalidParams(
      "pcg adversary must be random, pass, greedy-degree or exhaustive");
}

int cmd_pcg(const PcgArgs& a) {
  sc::WorkGraph start;
  if (!a.graph.empty()) {
    start = sc::parse_graph(a.graph);
  } else {
    if (a.n < 1) throw sc::InvalidParams("pcg: need --n or --graph");
    start = sc::WorkGraph(a.n);
  }
  if (!sc::is_fg_sparse(start) && !a.force)
    throw sc::NotSparse("start graph is not sparse; pass --force to play anyway");

  sc::MonitorMode monitor = sc::parse_monitor_mode(a.monitor);

  if (a.adversary == "exhaustive") {
    if (start.active_count() > 8)
      throw sc::InvalidParams("exhaustive builder needs at most 8 vertices");
    std::vector<std::string> failures;
    long long playouts = sc::pcg_exhaustive_verify(start, failures);
    for (const auto& f : failures) std::cerr << "failure: " << f << "\n";
    std::cerr << "playouts=" << playouts << " failures=" << failures.size()
              << "\n";
    return failures.empty() ? 0 : 3;
  }

  sc::PcgOpponentKind kind = parse_pcg_opponent(a.adversary);
  int wins = 0;
  long long violations = 0;
  bool lost = false;
  std::ostringstream lines;
  for (int i = 0; i < a.games; ++i) {
    std::mt19937_64 rng(sc::rng::mix_seed(a.seed, (std::uint64_t)i));
    sc::PcgGame game(start);
    sc::PcgMonitor mon;
    bool dead = false;
    while (!game.finished()) {
      sc::PcgMove mv = sc::pcg_opponent_move(kind, game, rng);
      try {
        const sc::RoundRecord& r = game.play_round(mv);
        mon.observe(r);
      } catch (const sc::NoLegalMove&) {
        dead = true;
        break;
      }
    }
    bool won = !dead && game.won();
    wins += won ? 1 : 0;
    lost = lost || !won;
    violations += (long long)mon.violations().size();
    if (monitor != sc::MonitorMode::Off)
      for (const auto& v : mon.violations())
        std::cerr << "violation (game " << i << "): " << v << "\n";
    lines << sc::pcg_transcript_json(start, game, mon, -1) << "\n";
  }
  int rc = write_text(resolve_out(a.out, "pcg.jsonl"), lines.str());
  if (rc != 0) return rc;
  std::cerr << "games=" << a.games << " wins=" << wins
            << " violations=" << violations << "\n";
  if (violations > 0 && monitor == sc::MonitorMode::Assert) return 2;
  return lost ? 3 : 0;
}

struct SolveArgs {
  int k = 1;
  std::string n_range = "2..7";
  std::uint64_t budget_nodes = 0;
  double budget_secs = 0;
  std::string canon = "auto";
  std::string out;
};

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int one = std::stoi(s);
      return {one, one};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw sc::InvalidParams("bad range, expected N or A..B: " + s);
  }
}

int cmd_solve(const SolveArgs& a) {
  auto [lo, hi] = parse_range(a.n_range);
  sc::SolveOptions opts;
  opts.max_nodes = a.budget_nodes;
  opts.max_seconds = a.budget_secs;
  if (a.canon == "none") {
    opts.mode = sc::CanonMode::None;
  } else if (a.canon == "full") {
    opts.mode = sc::CanonMode::FullPermutation;
  } else if (a.canon == "refine") {
    opts.mode = sc::CanonMode::RefinementHash;
  } else if (a.canon != "auto") {
    throw sc::InvalidParams("canon mode must be auto, none, full or refine");
  }
  std::vector<sc::OutcomeRow> rows = sc::outcome_table(a.k, lo, hi, opts);
  for (const auto& r : rows)
    if (r.budget_hit)
      std::cerr << "warning: budget exceeded at n=" << r.n << ", row marked\n";
  return write_text(resolve_out(a.out, "solve.csv"), sc::outcome_rows_csv(rows));
}

struct VerifyArgs {
  std::vector<std::string> only;
  int exhaustive_max = 8;
  std::uint64_t seed = 2024;
  std::string inject_fault;
  int random_rounds = 10000;
  int playout_rounds = 1000;
  int pcg_rounds = 1000;
};

int cmd_verify(const VerifyArgs& a) {
  sc::SuiteOptions opt;
  opt.exhaustive_max = a.exhaustive_max;
  opt.seed = a.seed;
  opt.random_rounds = a.random_rounds;
  opt.playout_rounds = a.playout_rounds;
  opt.pcg_random_rounds = a.pcg_rounds;
  if (!a.inject_fault.empty()) {
    if (a.inject_fault != "skip-degree-sum")
      throw sc::InvalidParams("unknown fault: " + a.inject_fault);
    opt.inject_skip_degree_sum = true;
  }

  const std::vector<std::string> known = {"nice-pair", "clip-sparse",
                                          "small-repair", "non-draw", "pcg-clip"};
  for (const auto& o : a.only)
    if (std::find(known.begin(), known.end(), o) == known.end())
      throw sc::InvalidParams("unknown suite: " + o);
  auto wanted = [&](const char* name) {
    return a.only.empty() ||
           std::find(a.only.begin(), a.only.end(), name) != a.only.end();
  };

  std::vector<sc::SuiteResult> results;
  if (wanted("nice-pair")) results.push_back(sc::run_nice_pair_suite(opt));
  if (wanted("clip-sparse")) results.push_back(sc::run_clip_sparse_suite(opt));
  if (wanted("small-repair")) results.push_back(sc::run_small_repair_suite(opt));
  if (wanted("non-draw")) results.push_back(sc::run_non_draw_suite(opt));
  if (wanted("pcg-clip")) results.push_back(sc::run_pcg_clip_suite(opt));

  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << "suite " << r.name << ": " << (r.pass ? "PASS" : "FAIL")
              << " (checked " << r.checked << "; " << r.note << ")\n";
    for (const auto& f : r.failures) std::cout << "  counterexample: " << f << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 2;
}

struct PlayArgs {
  int n = 0, k = 0;
  std::string engine = "auto";
};

void render_board(const sc::StarGame& gs) {
  auto list_edges = [&](sc::PlayerId p) {
    std::string out;
    for (const auto& m : gs.moves())
      if (m.by == p)
        out += (out.empty() ? "" : " ") + std::to_string(m.u) + "-" +
               std::to_string(m.v);
    return out.empty() ? std::string("(none)") : out;
  };
  std::cout << "PI edges:  " << list_edges(sc::PlayerId::One) << "\n";
  std::cout << "PII edges: " << list_edges(sc::PlayerId::Two) << "\n";
  const auto& h1 = gs.claimed_by(sc::PlayerId::One);
  const auto& h2 = gs.claimed_by(sc::PlayerId::Two);
  std::cout << "degrees (v: PI/PII):";
  int shown = 0;
  for (sc::Vertex v = 0; v < gs.n(); ++v) {
    if (gs.n() > 20 && h1.degree(v) == 0 && h2.degree(v) == 0) continue;
    std::cout << " " << v << ":" << h1.degree(v) << "/" << h2.degree(v);
    if (++shown >= 40) {
      std::cout << " ...";
      break;
    }
  }
  std::cout << (shown == 0 ? " all zero\n" : "\n");
}

int cmd_play(const PlayArgs& a) {
  std::string engine = a.engine;
  if (engine == "auto") engine = a.n <= 11 ? "solver" : "strategy";
  if (engine != "solver" && engine != "strategy")
    throw sc::InvalidParams("engine must be auto, solver or strategy");

  sc::StarGame gs(a.n, a.k);
  std::optional<sc::Solver> solver;
  std::optional<sc::SecondPlayerStrategy> strat;
  if (engine == "solver") {
    solver.emplace(a.n, a.k);
  } else {
    strat.emplace(a.n, a.k, true);
    if (strat->unguaranteed())
      std::cout << "note: board below the guarantee line, engine plays "
                   "best-effort\n";
  }

  std::cout << "you are PI; enter moves as: u v\n";
  while (!gs.over()) {
    if (gs.to_move() == sc::PlayerId::One) {
      render_board(gs);
      std::cout << "PI> " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) return 0;
      if (line == "quit" || line == "exit") return 0;
      std::istringstream is(line);
      int u = -1, v = -1;
      if (!(is >> u >> v)) {
        std::cout << "could not read two vertex numbers, try again\n";
        continue;
      }
      try {
        gs.claim(u, v);
      } catch (const sc::Error& e) {
        std::cout << "illegal: " << e.what() << "\n";
        continue;
      }
    } else {
      std::pair<sc::Vertex, sc::Vertex> mv;
      if (solver) {
        mv = solver->best_move(sc::Position::from_game(gs));
      } else {
        try {
          sc::StrategyMoveInfo mi = strat->next_move(gs);
          mv = {mi.u, mi.v};
        } catch (const sc::StrategyStuck& e) {
          std::cout << "engine gave up: " << e.what() << "\n";
          return 2;
        }
      }
      std::cout << "PII plays " << mv.first << "-" << mv.second << "\n";
      gs.claim(mv.first, mv.second);
    }
  }
  render_board(gs);
  switch (gs.result()) {
    case sc::GameResult::FirstWins: std::cout << "PII loses\n"; break;
    case sc::GameResult::SecondWins: std::cout << "PI loses\n"; break;
    case sc::GameResult::Draw: std::cout << "draw: board full, nobody lost\n"; break;
    case sc::GameResult::Ongoing: break;
  }
  return 0;
}

struct ExportArgs {
  std::string in;
  std::string out;
};

// Re-derives every game from its move list and cross-checks the recorded
// outcome, then emits a summary row per game.
int cmd_export(const ExportArgs& a) {
  std::ifstream is(a.in);
  if (!is) throw sc::InvalidParams("cannot open " + a.in);

  std::ostringstream csv;
  csv << "index,n,k,seed,adversary,outcome,moves,losing_move_index,violations\n";
  std::string line;
  int lineno = 0;
  int mismatches = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw sc::InvalidParams("line " + std::to_string(lineno) +
                              ": bad JSON: " + e.what());
    }
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    sc::StarGame gs(n, k);
    for (const auto& mj : j.at("moves")) {
      std::string edge = mj.at("edge").get<std::string>();
      auto dash = edge.find('-');
      int u = std::stoi(edge.substr(0, dash));
      int v = std::stoi(edge.substr(dash + 1));
      gs.claim(u, v);
    }
    std::string recorded = j.at("outcome").get<std::string>();
    std::string replayed;
    switch (gs.result()) {
      case sc::GameResult::FirstWins: replayed = "pi-win"; break;
      case sc::GameResult::SecondWins: replayed = "pii-win"; break;
      case sc::GameResult::Draw: replayed = "draw"; break;
      case sc::GameResult::Ongoing: replayed = "aborted"; break;
    }
    if (replayed != recorded) {
      std::cerr << "replay mismatch on line " << lineno << ": recorded "
                << recorded << ", replayed " << replayed << "\n";
      ++mismatches;
    }
    csv << j.value("index", 0) << ',' << n << ',' << k << ','
        << j.value("seed", 0ULL) << ',' << j.value("adversary", std::string())
        << ',' << recorded << ',' << j.at("moves").size() << ',';
    if (j.contains("losing_move_index")) csv << j["losing_move_index"].get<int>();
    csv << ',' << (j.contains("monitor_violations")
                       ? j["monitor_violations"].size()
                       : 0)
        << '\n';
  }
  int rc = write_text(resolve_out(a.out, "export.csv"), csv.str());
  if (rc != 0) return rc;
  if (mismatches > 0) {
    std::cerr << "replay mismatches: " << mismatches << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"star avoidance game engine and clipping-game harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "starclip 1.0.0");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand(
      "simulate", "play the second-player strategy against an opener policy");
  c_sim->add_option("--n", sim.n, "board order")->required();
  c_sim->add_option("--k", sim.k, "star parameter")->required();
  c_sim->add_option("--games", sim.games, "number of games");
  c_sim->add_option("--seed", sim.seed, "base seed");
  c_sim->add_option("--adversary", sim.adversary, "opener spec, name[:seed[:k=v,...]]");
  c_sim->add_option("--monitor", sim.monitor, "off|log|assert");
  c_sim->add_option("--out", sim.out, "JSONL output path");
  c_sim->add_option("--jobs", sim.jobs, "worker threads");

  PcgArgs pcg;
  auto* c_pcg = app.add_subcommand("pcg", "play the clipping policy from a start graph");
  c_pcg->add_option("--n", pcg.n, "order of an empty start graph");
  c_pcg->add_option("--graph", pcg.graph, "start graph, v=<n>; edges=(u,v),...");
  c_pcg->add_option("--games", pcg.games, "number of games");
  c_pcg->add_option("--seed", pcg.seed, "base seed");
  c_pcg->add_option("--adversary", pcg.adversary, "random|pass|greedy-degree|exhaustive");
  c_pcg->add_option("--monitor", pcg.monitor, "off|log|assert");
  c_pcg->add_option("--out", pcg.out, "JSONL output path");
  c_pcg->add_flag("--force", pcg.force, "accept a non-sparse start");

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "exact outcomes for small boards");
  c_solve->add_option("--k", solve.k, "star parameter")->required();
  c_solve->add_option("--n", solve.n_range, "order or range A..B");
  c_solve->add_option("--budget-nodes", solve.budget_nodes, "node cap per row");
  c_solve->add_option("--budget-secs", solve.budget_secs, "time cap per row");
  c_solve->add_option("--canon", solve.canon, "auto|none|full|refine");
  c_solve->add_option("--out", solve.out, "CSV output path");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "run the property suites");
  c_verify->add_option("--only", verify.only, "suite name (repeatable)");
  c_verify->add_option("--exhaustive-max", verify.exhaustive_max,
                       "vertex cap for exhaustive sweeps");
  c_verify->add_option("--seed", verify.seed, "randomized-suite seed");
  c_verify->add_option("--inject-fault", verify.inject_fault,
                       "skip-degree-sum: drop the clip qualification");
  c_verify->add_option("--random-rounds", verify.random_rounds,
                       "randomized instances per suite");
  c_verify->add_option("--playout-rounds", verify.playout_rounds,
                       "playouts per board");
  c_verify->add_option("--pcg-rounds", verify.pcg_rounds,
                       "clipping games per start order");

  PlayArgs play;
  auto* c_play = app.add_subcommand("play", "interactive game against the engine");
  c_play->add_option("--n", play.n, "board order")->required();
  c_play->add_option("--k", play.k, "star parameter")->required();
  c_play->add_option("--engine", play.engine, "auto|solver|strategy");

  ExportArgs exp;
  auto* c_export = app.add_subcommand("export", "replay-check a transcript, emit CSV");
  c_export->add_option("--in", exp.in, "JSONL transcript path")->required();
  c_export->add_option("--out", exp.out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (c_sim->parsed()) return cmd_simulate(sim);
    if (c_pcg->parsed()) return cmd_pcg(pcg);
    if (c_solve->parsed()) return cmd_solve(solve);
    if (c_verify->parsed()) return cmd_verify(verify);
    if (c_play->parsed()) return cmd_play(play);
    if (c_export->parsed()) return cmd_export(exp);
  } catch (const sc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
