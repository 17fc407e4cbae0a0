#include "starclip/batch.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "starclip/adversary.hpp"
#include "starclip/errors.hpp"
#include "starclip/rng.hpp"

namespace starclip {

MonitorMode parse_monitor_mode(const std::string& s) {
  if (s == "off") return MonitorMode::Off;
  if (s == "log") return MonitorMode::Log;
  if (s == "assert") return MonitorMode::Assert;
  throw InvalidParams("monitor mode must be off, log or assert");
}

const char* monitor_mode_name(MonitorMode m) {
  switch (m) {
    case MonitorMode::Off: return "off";
    case MonitorMode::Log: return "log";
    case MonitorMode::Assert: return "assert";
  }
  return "?";
}

GameReport run_game(const RunConfig& cfg, int index) {
  GameReport rep;
  rep.index = index;
  rep.n = cfg.n;
  rep.k = cfg.k;
  rep.seed = rng::mix_seed(cfg.seed, static_cast<std::uint64_t>(index));

  auto adv = make_adversary(cfg.adversary, rep.seed);
  rep.adversary = adv->spec();

  StarGame gs(cfg.n, cfg.k);
  SecondPlayerStrategy strat(cfg.n, cfg.k, cfg.allow_small);
  rep.unguaranteed = strat.unguaranteed();

  while (!gs.over()) {
    if (gs.to_move() == PlayerId::One) {
      auto [u, v] = adv->next_pi_move(gs);
      gs.claim(u, v);
      rep.moves.push_back(MoveRec{PlayerId::One, u, v, false, 0,
                                  StrategyPhase::StagePcg, 0});
    } else {
      StrategyMoveInfo mi;
      try {
        mi = strat.next_move(gs);
      } catch (const StrategyStuck&) {
        rep.aborted = true;
        break;
      }
      gs.claim(mi.u, mi.v);
      rep.moves.push_back(
          MoveRec{PlayerId::Two, mi.u, mi.v, true, mi.stage, mi.phase, mi.rule});
    }
  }

  rep.violations = strat.violations();
  rep.window = strat.window();
  if (!rep.aborted) {
    switch (gs.result()) {
      case GameResult::FirstWins: rep.outcome = Outcome::PIWin; break;
      case GameResult::SecondWins: rep.outcome = Outcome::PIIWin; break;
      case GameResult::Draw: rep.outcome = Outcome::Draw; break;
      case GameResult::Ongoing: break;  // unreachable
    }
  }
  rep.losing_move_index = gs.losing_move_index();
  Snapshot h2 = gs.claimed_by(PlayerId::Two).snapshot();
  rep.h2_edges = h2.e;
  rep.h2_max_degree = h2.max_deg;
  return rep;
}

std::vector<GameReport> run_batch(const RunConfig& cfg) {
  if (cfg.games < 1) throw InvalidParams("batch: need at least one game");
  std::vector<GameReport> out(static_cast<std::size_t>(cfg.games));

  int jobs = cfg.jobs;
  if (jobs > cfg.games) jobs = cfg.games;
  if (jobs <= 1) {
    for (int i = 0; i < cfg.games; ++i) out[static_cast<std::size_t>(i)] = run_game(cfg, i);
    return out;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= cfg.games || failed.load()) return;
      try {
        out[static_cast<std::size_t>(i)] = run_game(cfg, i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace starclip
