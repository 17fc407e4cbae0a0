#include "starclip/suites.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "starclip/errors.hpp"
#include "starclip/rng.hpp"
#include "starclip/solver.hpp"
#include "starclip/star.hpp"

namespace starclip {

namespace {

void record(SuiteResult& r, std::string what, std::size_t cap = 5) {
  if (r.failures.size() < cap) r.failures.push_back(std::move(what));
}

std::vector<std::pair<Vertex, Vertex>> edge_list(int v) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (int e = 0; e < v * (v - 1) / 2; ++e) out.push_back(edge_at(v, e));
  return out;
}

WorkGraph graph_from_mask(int v, std::uint32_t mask,
                          const std::vector<std::pair<Vertex, Vertex>>& edges) {
  WorkGraph g(v);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (mask & (1u << e)) g.add_edge(edges[e].first, edges[e].second);
  return g;
}

// ---- nice pairs ----

struct NicePairSweep {
  int v = 0;
  int cap = 0;  // max degree allowed by the hypothesis
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::array<int, 8> deg{};
  std::array<std::uint16_t, 8> adj{};
  long long e = 0;
  long long count = 0;
  SuiteResult* res = nullptr;

  bool has_nice_inline() const {
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b) {
        if (adj[a] & (1u << b)) continue;
        if ((long long)v * (deg[a] + deg[b]) >= 4 * e) return true;
      }
    return false;
  }

  void visit() {
    ++count;
    bool found = has_nice_inline();
    bool cross = count % 97 == 0;
    if (!found || cross) {
      WorkGraph g(v);
      for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
          if (adj[a] & (1u << b)) g.add_edge(a, b);
      auto pair = find_nice_pair(g);
      bool ok = pair.has_value() && is_nice_pair(g, pair->first, pair->second);
      if (!ok || !found)
        record(*res, "no nice pair on " + format_graph(g));
    }
  }

  void dfs(std::size_t i) {
    if (i == edges.size()) {
      visit();
      return;
    }
    dfs(i + 1);
    auto [a, b] = edges[i];
    if (deg[a] < cap && deg[b] < cap) {
      ++deg[a];
      ++deg[b];
      adj[a] |= std::uint16_t(1u << b);
      adj[b] |= std::uint16_t(1u << a);
      ++e;
      dfs(i + 1);
      --deg[a];
      --deg[b];
      adj[a] &= std::uint16_t(~(1u << b));
      adj[b] &= std::uint16_t(~(1u << a));
      --e;
    }
  }
};

WorkGraph random_capped_graph(int v, int dcap, long long e_target,
                              std::mt19937_64& rng) {
  WorkGraph g(v);
  long long attempts = 0;
  while (g.edge_count() < e_target && attempts < 30 * e_target + 100) {
    ++attempts;
    Vertex a = (Vertex)rng::uniform_below(rng, (std::uint64_t)v);
    Vertex b = (Vertex)rng::uniform_below(rng, (std::uint64_t)v);
    if (a == b || g.has_edge(a, b)) continue;
    if (g.degree(a) >= dcap || g.degree(b) >= dcap) continue;
    g.add_edge(a, b);
  }
  return g;
}

}  // namespace

SuiteResult run_nice_pair_suite(const SuiteOptions& opt) {
  SuiteResult res{"nice-pair", true, 0, {}, ""};
  std::mt19937_64 rng(rng::mix_seed(opt.seed, 1));

  long long swept = 0;
  for (int v = 2; v <= std::min(opt.exhaustive_max, 8); ++v) {
    NicePairSweep s;
    s.v = v;
    s.cap = (v - 2) / 2;
    s.edges = edge_list(v);
    s.res = &res;
    s.dfs(0);
    swept += s.count;
  }
  res.checked += swept;

  for (int round = 0; round < opt.random_rounds; ++round) {
    int v = 9 + (int)rng::uniform_below(rng, 32);  // 9..40
    int cap = (v - 2) / 2;
    long long e_target = (long long)rng::uniform_below(rng, (std::uint64_t)(2 * v));
    WorkGraph g = random_capped_graph(v, cap, e_target, rng);
    auto pair = find_nice_pair(g);
    if (!pair || !is_nice_pair(g, pair->first, pair->second))
      record(res, "no nice pair on " + format_graph(g));
    ++res.checked;
  }

  res.pass = res.failures.empty();
  res.note = "exhaustive graphs: " + std::to_string(swept) +
             ", randomized: " + std::to_string(opt.random_rounds);
  return res;
}

SuiteResult run_clip_sparse_suite(const SuiteOptions& opt) {
  SuiteResult res{"clip-sparse", true, 0, {}, ""};
  std::mt19937_64 rng(rng::mix_seed(opt.seed, 2));
  bool inject = opt.inject_skip_degree_sum;

  for (int v = 4; v <= std::min(opt.exhaustive_max, 7); ++v) {
    auto edges = edge_list(v);
    int m = (int)edges.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) > 3) continue;  // sparse graphs here have <= 3 edges
      WorkGraph g = graph_from_mask(v, mask, edges);
      if (!is_g_sparse(g)) continue;
      long long e0 = g.edge_count();
      // extensions: the graph itself, then each single added edge
      for (int ext = -1; ext < m; ++ext) {
        if (ext >= 0 && (mask & (1u << ext))) continue;
        WorkGraph gp = g;
        if (ext >= 0) gp.add_edge(edges[ext].first, edges[ext].second);
        for (int a = 0; a < v; ++a)
          for (int b = a + 1; b < v; ++b) {
            if (gp.has_edge(a, b)) continue;
            bool qualifies =
                (long long)v * (gp.degree(a) + gp.degree(b)) >= 4 * e0;
            if (!inject && !qualifies) continue;
            WorkGraph gpp = gp;
            gpp.clip_pair(a, b);
            ++res.checked;
            if (!is_g_sparse(gpp))
              record(res, "clip of {" + std::to_string(a) + "," +
                              std::to_string(b) + "} broke sparsity on " +
                              format_graph(gp));
          }
      }
    }
  }

  for (int round = 0; round < opt.random_rounds; ++round) {
    int v = 8 + (int)rng::uniform_below(rng, 53);  // 8..60
    long long e_max = ((long long)v * v + 100LL * v) / 200;
    long long e_target = (long long)rng::uniform_below(rng, (std::uint64_t)e_max + 1);
    WorkGraph g = random_capped_graph(v, v - 1, e_target, rng);
    long long e0 = g.edge_count();
    WorkGraph gp = g;
    if (rng::uniform_below(rng, 2) == 0) {
      for (int tries = 0; tries < 50; ++tries) {
        Vertex a = (Vertex)rng::uniform_below(rng, (std::uint64_t)v);
        Vertex b = (Vertex)rng::uniform_below(rng, (std::uint64_t)v);
        if (a == b || gp.has_edge(a, b)) continue;
        gp.add_edge(a, b);
        break;
      }
    }
    std::vector<std::pair<Vertex, Vertex>> pool;
    for (int a = 0; a < v; ++a)
      for (int b = a + 1; b < v; ++b) {
        if (gp.has_edge(a, b)) continue;
        bool qualifies = (long long)v * (gp.degree(a) + gp.degree(b)) >= 4 * e0;
        if (inject || qualifies) pool.emplace_back(a, b);
      }
    if (pool.empty()) continue;
    auto [a, b] = pool[rng::uniform_below(rng, pool.size())];
    WorkGraph gpp = gp;
    gpp.clip_pair(a, b);
    ++res.checked;
    if (!is_g_sparse(gpp))
      record(res, "clip of {" + std::to_string(a) + "," + std::to_string(b) +
                      "} broke sparsity on " + format_graph(gp));
  }

  res.pass = res.failures.empty();
  res.note = inject ? "degree-sum qualification skipped on purpose"
                    : "qualifying clips only";
  return res;
}

SuiteResult run_small_repair_suite(const SuiteOptions& opt) {
  SuiteResult res{"small-repair", true, 0, {}, ""};
  (void)opt;

  for (int v = 5; v <= 6; ++v) {
    auto edges = edge_list(v);
    int m = (int)edges.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (2 * std::popcount(mask) > v) continue;
      WorkGraph p = graph_from_mask(v, mask, edges);
      Snapshot pre = p.snapshot();
      for (int ext = -1; ext < m; ++ext) {
        if (ext >= 0 && (mask & (1u << ext))) continue;
        WorkGraph c = p;
        PcgMove mv = PcgMove::pass();
        if (ext >= 0) {
          c.add_edge(edges[ext].first, edges[ext].second);
          mv = PcgMove::add(edges[ext].first, edges[ext].second);
        }
        // the lexicographically first clip restoring max degree <= 1
        std::pair<Vertex, Vertex> want{-1, -1};
        for (int a = 0; a < v && want.first < 0; ++a)
          for (int b = a + 1; b < v; ++b) {
            if (c.has_edge(a, b)) continue;
            WorkGraph after = c;
            after.clip_pair(a, b);
            if (after.max_degree() <= 1) {
              want = {a, b};
              break;
            }
          }
        ++res.checked;
        if (want.first < 0) {
          record(res, "no repair clip for " + format_graph(c));
          continue;
        }
        if (pre.max_deg >= 2) {
          ClipChoice ch = choose_clip(pre, c, mv);
          if (ch.rule != ClipRule::MatchingRepair || ch.u != want.first ||
              ch.v != want.second)
            record(res, "policy disagrees with the first repair clip on " +
                            format_graph(c));
        }
      }
    }
  }

  res.pass = res.failures.empty();
  res.note = "orders 5 and 6, every one-edge extension";
  return res;
}

SuiteResult run_non_draw_suite(const SuiteOptions& opt) {
  SuiteResult res{"non-draw", true, 0, {}, ""};
  std::mt19937_64 rng(rng::mix_seed(opt.seed, 3));

  const std::pair<int, int> boards[] = {{1, 4}, {2, 6}, {3, 8}, {1, 30}};
  for (auto [k, n] : boards) {
    for (int round = 0; round < opt.playout_rounds; ++round) {
      StarGame gs(n, k);
      while (!gs.over()) {
        auto legal = gs.legal_moves();
        auto [u, v] = legal[rng::uniform_below(rng, legal.size())];
        gs.claim(u, v);
        if (!gs.over()) {
          if (gs.claimed_union().max_degree() > 2 * k) {
            record(res, "union degree above 2k mid-game on n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
            break;
          }
          if (gs.claimed_by(PlayerId::One).edge_count() > ex_bound(n, k) ||
              gs.claimed_by(PlayerId::Two).edge_count() > ex_bound(n, k)) {
            record(res, "a live player holds more than nk/2 edges");
            break;
          }
        }
      }
      ++res.checked;
      if (gs.result() == GameResult::Draw)
        record(res, "draw on n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }

  // boards small enough that nobody can ever lose
  for (auto [n, k] : {std::pair<int, int>{2, 1}, std::pair<int, int>{3, 2}}) {
    SolveResult sr = solve_game(n, k);
    ++res.checked;
    if (!sr.outcome || *sr.outcome != Outcome::Draw)
      record(res, "expected a drawn board at n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }

  res.pass = res.failures.empty();
  res.note = "playouts per board: " + std::to_string(opt.playout_rounds);
  return res;
}

// ---- clipping game helpers ----

PcgMove pcg_opponent_move(PcgOpponentKind kind, const PcgGame& game,
                          std::mt19937_64& rng) {
  if (kind == PcgOpponentKind::Pass) return PcgMove::pass();
  const WorkGraph& g = game.graph();
  std::vector<std::pair<Vertex, Vertex>> pool;
  for (Vertex a = g.first_active(); a >= 0; a = g.next_active(a))
    for (Vertex b = g.next_active(a); b >= 0; b = g.next_active(b))
      if (!g.has_edge(a, b)) pool.emplace_back(a, b);
  if (pool.empty()) return PcgMove::pass();

  if (kind == PcgOpponentKind::Random) {
    if (rng::uniform_below(rng, 8) == 0) return PcgMove::pass();
    auto [a, b] = pool[rng::uniform_below(rng, pool.size())];
    return PcgMove::add(a, b);
  }
  // GreedyDegree: feed the heaviest vertices
  std::pair<Vertex, Vertex> pick = pool.front();
  int best = -1;
  for (auto [a, b] : pool) {
    int s = g.degree(a) + g.degree(b);
    if (s > best) {
      best = s;
      pick = {a, b};
    }
  }
  return PcgMove::add(pick.first, pick.second);
}

WorkGraph random_fg_sparse_graph(int v, std::mt19937_64& rng) {
  long long e_max = ((long long)v * v + 100LL * v) / 200;
  int dcap = (v - 1) / 2;
  long long e_target = (long long)rng::uniform_below(rng, (std::uint64_t)e_max + 1);
  return random_capped_graph(v, dcap, e_target, rng);
}

namespace {

void pcg_dfs(const PcgGame& game, const PcgMonitor& mon, const WorkGraph& start,
             long long& playouts, std::vector<std::string>& failures,
             std::size_t fail_cap) {
  if (game.finished()) {
    ++playouts;
    if (!game.won() && failures.size() < fail_cap)
      failures.push_back("lost from " + format_graph(start));
    if (!mon.ok() && failures.size() < fail_cap)
      failures.push_back("monitor noise from " + format_graph(start) + ": " +
                         mon.violations().front());
    return;
  }
  const WorkGraph& g = game.graph();
  std::vector<PcgMove> options;
  options.push_back(PcgMove::pass());
  for (Vertex a = g.first_active(); a >= 0; a = g.next_active(a))
    for (Vertex b = g.next_active(a); b >= 0; b = g.next_active(b))
      if (!g.has_edge(a, b)) options.push_back(PcgMove::add(a, b));

  for (const PcgMove& mv : options) {
    PcgGame ng = game;
    PcgMonitor nm = mon;
    try {
      const RoundRecord& r = ng.play_round(mv);
      nm.observe(r);
    } catch (const NoLegalMove&) {
      ++playouts;
      if (failures.size() < fail_cap)
        failures.push_back("no legal clip from " + format_graph(start));
      continue;
    }
    pcg_dfs(ng, nm, start, playouts, failures, fail_cap);
  }
}

}  // namespace

long long pcg_exhaustive_verify(const WorkGraph& start,
                                std::vector<std::string>& failures,
                                std::size_t fail_cap) {
  long long playouts = 0;
  PcgGame game(start);
  PcgMonitor mon;
  pcg_dfs(game, mon, start, playouts, failures, fail_cap);
  return playouts;
}

SuiteResult run_pcg_clip_suite(const SuiteOptions& opt) {
  SuiteResult res{"pcg-clip", true, 0, {}, ""};
  std::mt19937_64 rng(rng::mix_seed(opt.seed, 4));

  long long starts = 0;
  for (int v = 1; v <= std::min(opt.exhaustive_max, 8); ++v) {
    auto edges = edge_list(v);
    int m = (int)edges.size();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (2 * std::popcount(mask) > v) continue;
      WorkGraph g = graph_from_mask(v, mask, edges);
      if (!is_fg_sparse(g)) continue;
      ++starts;
      res.checked += pcg_exhaustive_verify(g, res.failures);
    }
  }

  for (int v : {10, 20, 40}) {
    for (int round = 0; round < opt.pcg_random_rounds; ++round) {
      WorkGraph start = random_fg_sparse_graph(v, rng);
      if (!is_fg_sparse(start)) {
        record(res, "generator produced a non-sparse start");
        continue;
      }
      PcgOpponentKind kind =
          round % 2 == 0 ? PcgOpponentKind::Random : PcgOpponentKind::GreedyDegree;
      PcgGame game(start);
      PcgMonitor mon;
      bool dead = false;
      while (!game.finished()) {
        PcgMove mv = pcg_opponent_move(kind, game, rng);
        try {
          const RoundRecord& r = game.play_round(mv);
          mon.observe(r);
        } catch (const NoLegalMove&) {
          record(res, "no legal clip from " + format_graph(start));
          dead = true;
          break;
        }
      }
      ++res.checked;
      if (!dead && !game.won())
        record(res, "lost from " + format_graph(start));
      if (!mon.ok())
        record(res, "monitor noise from " + format_graph(start) + ": " +
                        mon.violations().front());
    }
  }

  res.pass = res.failures.empty();
  res.note = "exhaustive starts: " + std::to_string(starts) +
             ", randomized per order: " + std::to_string(opt.pcg_random_rounds);
  return res;
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt) {
  return {run_nice_pair_suite(opt), run_clip_sparse_suite(opt),
          run_small_repair_suite(opt), run_non_draw_suite(opt),
          run_pcg_clip_suite(opt)};
}

}  // namespace starclip
