#include "starclip/transcript.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "starclip/errors.hpp"

namespace starclip {

namespace {

using nlohmann::json;  // object keys serialize sorted, which we rely on

std::string edge_str(Vertex u, Vertex v) {
  return std::to_string(u) + "-" + std::to_string(v);
}

json move_json(const MoveRec& m) {
  json j;
  j["edge"] = edge_str(m.u, m.v);
  j["player"] = m.by == PlayerId::One ? "one" : "two";
  if (m.annotated) {
    json a;
    a["phase"] = phase_name(m.phase);
    a["stage"] = m.stage;
    if (m.rule > 0) a["rule"] = rule_name(m.rule);
    j["annotation"] = a;
  }
  return j;
}

}  // namespace

std::string game_json_line(const GameReport& rep, const RunConfig& cfg) {
  json j;
  j["version"] = kTranscriptVersion;
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["index"] = rep.index;
  j["seed"] = rep.seed;
  j["strategy"] = SecondPlayerStrategy::id();
  j["adversary"] = rep.adversary;

  json cfgj;
  cfgj["adversary"] = cfg.adversary;
  cfgj["games"] = cfg.games;
  cfgj["k"] = cfg.k;
  cfgj["monitor"] = monitor_mode_name(cfg.monitor);
  cfgj["n"] = cfg.n;
  cfgj["seed"] = cfg.seed;
  j["config"] = cfgj;

  json moves = json::array();
  for (const MoveRec& m : rep.moves) moves.push_back(move_json(m));
  j["moves"] = moves;

  j["outcome"] = rep.outcome ? outcome_name(*rep.outcome) : "aborted";
  if (rep.losing_move_index) j["losing_move_index"] = *rep.losing_move_index;
  if (cfg.monitor != MonitorMode::Off) j["monitor_violations"] = rep.violations;
  j["unguaranteed"] = rep.unguaranteed;

  json h2;
  h2["edges"] = rep.h2_edges;
  h2["max_degree"] = rep.h2_max_degree;
  j["h2"] = h2;

  if (rep.window.reached) {
    json w;
    w["pi_safe_count"] = rep.window.pi_safe_count;
    w["stole"] = rep.window.stole;
    w["e1"] = edge_str(rep.window.e1u, rep.window.e1v);
    w["e2"] = edge_str(rep.window.e2u, rep.window.e2v);
    w["shape_ok"] = rep.window.shape_ok;
    j["window"] = w;
  }
  return j.dump();
}

void write_game_jsonl(std::ostream& os, const std::vector<GameReport>& reps,
                      const RunConfig& cfg) {
  for (const GameReport& r : reps) os << game_json_line(r, cfg) << '\n';
}

std::string pcg_transcript_json(const WorkGraph& start, const PcgGame& game,
                                const PcgMonitor& monitor, int indent) {
  json j;
  j["initial_graph"] = format_graph(start);
  j["target"] = game.target();
  j["clips_done"] = game.clips_done();

  json rounds = json::array();
  for (const RoundRecord& r : game.history()) {
    json rj;
    if (r.pi_pass) {
      rj["pi"] = "pass";
    } else {
      rj["pi"] = json::array({r.pi_u, r.pi_v});
    }
    rj["pii"] = json::array({r.clip_u, r.clip_v});
    rj["branch"] = r.rule;
    rj["rule"] = rule_name(r.rule);
    json post;
    post["v"] = r.post.v;
    post["e"] = r.post.e;
    post["max_degree"] = r.post.max_deg;
    rj["post"] = post;
    rounds.push_back(rj);
  }
  j["rounds"] = rounds;

  if (game.finished()) {
    j["won"] = game.won();
  } else {
    j["won"] = nullptr;
  }
  j["violations"] = monitor.violations();
  return j.dump(indent);
}

std::string outcome_rows_csv(const std::vector<OutcomeRow>& rows) {
  std::ostringstream os;
  os << "n,k,outcome,nodes,table_hits,elapsed_ms,canonical_mode,budget_hit\n";
  for (const OutcomeRow& r : rows) {
    os << r.n << ',' << r.k << ','
       << (r.outcome ? outcome_name(*r.outcome) : "unknown") << ','
       << r.stats.nodes << ',' << r.stats.table_hits << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.stats.elapsed_ms);
    os << buf << ',' << canon_mode_name(r.stats.mode) << ','
       << (r.budget_hit ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace starclip
