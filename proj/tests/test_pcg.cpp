#include "doctest.h"

#include <string>

#include "starclip/errors.hpp"
#include "starclip/pcg.hpp"

using namespace starclip;

namespace {

WorkGraph star_graph(int n, Vertex center, int leaves) {
  WorkGraph g(n);
  for (Vertex l = 1; l <= leaves; ++l) g.add_edge(center, l);
  return g;
}

}  // namespace

TEST_CASE("rule names are stable") {
  CHECK(std::string(rule_name(1)) == "designated-endpoint");
  CHECK(std::string(rule_name(2)) == "matching-repair");
  CHECK(std::string(rule_name(3)) == "degree-two-relief");
  CHECK(std::string(rule_name(4)) == "nice-pair");
  CHECK(std::string(rule_name(5)) == "max-degree-relief");
  CHECK(std::string(rule_name(0)).empty());
}

TEST_CASE("dispatch: small matching goes to the designated endpoint") {
  // 5 vertices, empty start, builder plays 0-1.
  WorkGraph g(5);
  Snapshot pre = g.snapshot();
  g.add_edge(0, 1);
  ClipChoice c = choose_clip(pre, g, PcgMove::add(0, 1));
  CHECK(c.rule == ClipRule::DesignatedEndpoint);
  CHECK(c.u == 0);
  CHECK(c.v == 2);
}

TEST_CASE("dispatch: large sparse graph goes to a nice pair") {
  // 20 vertices, empty start, builder plays 0-1: degree slack is huge, and
  // the first non-adjacent pair (0,2) has 20*(1+0) >= 4*1.
  WorkGraph g(20);
  Snapshot pre = g.snapshot();
  g.add_edge(0, 1);
  ClipChoice c = choose_clip(pre, g, PcgMove::add(0, 1));
  CHECK(c.rule == ClipRule::NicePair);
  CHECK(c.u == 0);
  CHECK(c.v == 2);
}

TEST_CASE("dispatch: heavy center goes to max-degree relief") {
  // Star with center 0 and leaves 1..9 on 20 vertices: max degree 9 eats
  // the slack (18 > 15), so the fallback clips the center with its
  // smallest non-neighbor.
  WorkGraph g = star_graph(20, 0, 9);
  Snapshot pre = g.snapshot();
  g.add_edge(10, 11);
  ClipChoice c = choose_clip(pre, g, PcgMove::add(10, 11));
  CHECK(c.rule == ClipRule::MaxDegreeRelief);
  CHECK(c.u == 0);
  CHECK(c.v == 10);
}

TEST_CASE("dispatch: five or six vertices repair the matching") {
  // Path 0-1-2 on 5 vertices: max degree 2, edge budget 2e <= v. Removing
  // {0,2} leaves everything at degree <= 1, and it is the first such pair.
  WorkGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  Snapshot pre = g.snapshot();
  ClipChoice c = choose_clip(pre, g, PcgMove::pass());
  CHECK(c.rule == ClipRule::MatchingRepair);
  CHECK(c.u == 0);
  CHECK(c.v == 2);
}

TEST_CASE("dispatch: seven to nine vertices relieve a degree-2 vertex") {
  WorkGraph g(7);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(3, 4);
  Snapshot pre = g.snapshot();  // 2e=6 <= 7, max degree 2
  ClipChoice c = choose_clip(pre, g, PcgMove::pass());
  CHECK(c.rule == ClipRule::DegreeTwoRelief);
  CHECK(c.u == 0);  // smallest vertex of degree >= 2
  CHECK(c.v == 3);  // its smallest non-neighbor
}

TEST_CASE("designated endpoint keeps covering edges near the end") {
  // 4 vertices, one old edge 1-3, builder plays 0-1. Clipping 0 with a
  // bare non-neighbor would leave 1-3 on the final two vertices; the
  // partner must be 3 (the non-neighbor of 0 that still carries an edge).
  WorkGraph g(4);
  g.add_edge(1, 3);
  Snapshot pre = g.snapshot();
  g.add_edge(0, 1);
  ClipChoice c = choose_clip(pre, g, PcgMove::add(0, 1));
  CHECK(c.rule == ClipRule::DesignatedEndpoint);
  CHECK(c.u == 0);
  CHECK(c.v == 3);

  // Same position, builder passes: the clip must hit the edge.
  WorkGraph h(4);
  h.add_edge(2, 3);
  ClipChoice p = choose_clip(h.snapshot(), h, PcgMove::pass());
  CHECK(p.rule == ClipRule::DesignatedEndpoint);
  CHECK((p.u == 2 || p.v == 2 || p.u == 3 || p.v == 3));

  // Two disjoint edges, pass: take an endpoint of each.
  WorkGraph m(6);
  m.add_edge(0, 1);
  m.add_edge(2, 3);
  ClipChoice q = choose_clip(m.snapshot(), m, PcgMove::pass());
  CHECK(q.rule == ClipRule::DesignatedEndpoint);
  CHECK(q.u == 0);
  CHECK(q.v == 2);
}

TEST_CASE("game framing: target and trivial starts") {
  WorkGraph empty1(1);
  PcgGame g1(empty1);
  CHECK(g1.target() == 0);
  CHECK(g1.finished());
  CHECK(g1.won());  // nothing to clear

  WorkGraph two(2);
  two.add_edge(0, 1);
  PcgGame g2(two);
  CHECK(g2.target() == 0);
  CHECK(g2.finished());
  CHECK_FALSE(g2.won());  // an edge survived to the end

  WorkGraph five(5);
  CHECK(PcgGame(five).target() == 2);
  WorkGraph six(6);
  CHECK(PcgGame(six).target() == 2);
}

TEST_CASE("split-phase flow and phase guards") {
  WorkGraph start(5);
  PcgGame game(start);
  CHECK(game.phase() == PcgPhase::AwaitingPi);
  CHECK_THROWS_AS(game.policy_clip(), WrongPhase);
  CHECK_THROWS_AS(game.apply_pii({ClipRule::DesignatedEndpoint, 0, 1}), WrongPhase);
  CHECK_THROWS_AS(game.last_pi_move(), WrongPhase);
  CHECK_THROWS_AS(game.won(), WrongPhase);

  game.apply_pi(PcgMove::add(3, 1));
  CHECK(game.phase() == PcgPhase::AwaitingPii);
  CHECK_THROWS_AS(game.apply_pi(PcgMove::pass()), WrongPhase);
  const PcgMove& pending = game.last_pi_move();
  CHECK_FALSE(pending.is_pass);
  CHECK(pending.u == 1);  // normalized
  CHECK(pending.v == 3);

  ClipChoice c = game.policy_clip();
  const RoundRecord& r = game.apply_pii(c);
  CHECK(r.index == 1);
  CHECK(r.rule == 1);
  CHECK(r.pre.v == 5);
  CHECK(r.mid.e == 1);
  CHECK(r.post.v == 3);
  CHECK(game.clips_done() == 1);
  CHECK(game.phase() == PcgPhase::AwaitingPi);
}

TEST_CASE("a full clipping game from an empty small start") {
  WorkGraph start(5);
  PcgGame game(start);
  game.play_round(PcgMove::add(0, 1));
  CHECK_FALSE(game.finished());
  game.play_round(PcgMove::pass());
  CHECK(game.finished());
  CHECK(game.won());
  CHECK(game.graph().active_count() == 1);
  CHECK(game.history().size() == 2);
  CHECK(game.history()[0].pi_pass == false);
  CHECK(game.history()[1].pi_pass == true);
}

TEST_CASE("builder mistakes surface as graph errors") {
  WorkGraph start(5);
  start.add_edge(0, 1);
  PcgGame game(start);
  CHECK_THROWS_AS(game.apply_pi(PcgMove::add(0, 1)), DuplicateEdge);
  CHECK_THROWS_AS(game.apply_pi(PcgMove::add(2, 2)), LoopEdge);
}

TEST_CASE("builder can wall off the clipper") {
  // 0-1, 0-2 on three vertices; adding 1-2 completes the triangle and no
  // non-adjacent pair remains with a clip still owed.
  WorkGraph start(3);
  start.add_edge(0, 1);
  start.add_edge(0, 2);
  PcgGame game(start);
  CHECK(game.target() == 1);
  CHECK_THROWS_AS(game.play_round(PcgMove::add(1, 2)), NoLegalMove);
  CHECK(game.finished());
  CHECK_FALSE(game.won());
}

TEST_CASE("games copy cleanly mid-flight") {
  WorkGraph start(6);
  PcgGame a(start);
  a.apply_pi(PcgMove::add(0, 1));
  PcgGame b = a;  // branch the search here
  b.apply_pii(b.policy_clip());
  CHECK(a.phase() == PcgPhase::AwaitingPii);
  CHECK(b.clips_done() == 1);
  CHECK(a.clips_done() == 0);
}

TEST_CASE("monitor stays silent on a policy game from a sparse start") {
  WorkGraph start(9);
  start.add_edge(0, 1);
  start.add_edge(2, 3);
  REQUIRE(is_fg_sparse(start));
  PcgGame game(start);
  PcgMonitor mon;
  game.play_round(PcgMove::add(4, 5));
  game.play_round(PcgMove::pass());
  game.play_round(PcgMove::add(6, 7));
  game.play_round(PcgMove::pass());
  for (const RoundRecord& r : game.history()) mon.observe(r);
  CHECK(mon.ok());
  CHECK(game.won());
}

namespace {

// Fabricated round records for monitor arithmetic; only the counts matter.
RoundRecord make_round(int idx, Snapshot pre, Snapshot mid, Snapshot post,
                       int rule, bool pass = true) {
  RoundRecord r;
  r.index = idx;
  r.pi_pass = pass;
  r.rule = rule;
  r.pre = pre;
  r.mid = mid;
  r.post = post;
  return r;
}

}  // namespace

TEST_CASE("monitor flags engine drift") {
  PcgMonitor mon;
  // Clip removed only one vertex.
  mon.observe(make_round(1, {6, 0, 0}, {6, 0, 0}, {5, 0, 0}, 1));
  REQUIRE(mon.violations().size() == 1);
  CHECK(mon.violations()[0].find("vertex count drift") != std::string::npos);

  PcgMonitor mon2;
  // Builder passed but an edge appeared.
  mon2.observe(make_round(1, {6, 0, 0}, {6, 1, 1}, {4, 0, 0}, 1, true));
  REQUIRE_FALSE(mon2.ok());
  CHECK(mon2.violations()[0].find("edge count drift") != std::string::npos);

  PcgMonitor mon3;
  // One added edge cannot raise the max degree by two.
  mon3.observe(make_round(1, {8, 1, 1}, {8, 2, 3}, {6, 0, 0}, 1, false));
  REQUIRE_FALSE(mon3.ok());
  CHECK(mon3.violations()[0].find("max degree") != std::string::npos);
}

TEST_CASE("monitor checks the nice-pair qualification") {
  PcgMonitor mon;
  RoundRecord r = make_round(1, {10, 4, 2}, {10, 5, 2}, {8, 2, 1}, 4, false);
  r.clip_deg_u = 0;
  r.clip_deg_v = 0;  // 10*(0+0) < 4*5
  mon.observe(r);
  REQUIRE(mon.violations().size() == 1);
  CHECK(mon.violations()[0].find("not nice") != std::string::npos);

  PcgMonitor mon2;
  RoundRecord good = make_round(1, {10, 4, 2}, {10, 5, 2}, {8, 3, 1}, 4, false);
  good.clip_deg_u = 1;
  good.clip_deg_v = 1;  // 10*2 >= 4*5, and 8 stays within the density bound
  mon2.observe(good);
  CHECK(mon2.ok());

  PcgMonitor mon3;
  RoundRecord dense = make_round(1, {10, 4, 2}, {10, 5, 2}, {8, 7, 2}, 4, false);
  dense.clip_deg_u = 2;
  dense.clip_deg_v = 2;
  mon3.observe(dense);  // 200*7 > 64+800
  REQUIRE_FALSE(mon3.ok());
  CHECK(mon3.violations()[0].find("density bound lost") != std::string::npos);
}

TEST_CASE("monitor checks fallback progress") {
  PcgMonitor mon;
  // Max degree 4 but only 2 edges vanished.
  RoundRecord r = make_round(1, {12, 6, 4}, {12, 6, 4}, {10, 5, 4}, 5);
  mon.observe(r);
  REQUIRE_FALSE(mon.ok());
  CHECK(mon.violations()[0].find("fewer than max-degree") != std::string::npos);

  PcgMonitor mon2;
  // Max degree grew across a fallback round.
  RoundRecord up = make_round(1, {12, 6, 4}, {12, 7, 5}, {10, 2, 5}, 5, false);
  mon2.observe(up);
  REQUIRE_FALSE(mon2.ok());
  CHECK(mon2.violations()[0].find("max degree grew") != std::string::npos);
}

TEST_CASE("monitor bounds consecutive fallback rounds") {
  // First fallback round starts bounded on 21 vertices: the recovery cap
  // is 5. Five more unbounded fallback rounds overrun it.
  PcgMonitor mon;
  mon.observe(make_round(1, {21, 12, 10}, {21, 12, 10}, {19, 2, 2}, 5));
  mon.observe(make_round(2, {19, 10, 10}, {19, 10, 10}, {17, 0, 0}, 5));
  mon.observe(make_round(3, {17, 9, 9}, {17, 9, 9}, {15, 0, 0}, 5));
  mon.observe(make_round(4, {15, 8, 8}, {15, 8, 8}, {13, 0, 0}, 5));
  mon.observe(make_round(5, {13, 7, 7}, {13, 7, 7}, {11, 0, 0}, 5));
  CHECK(mon.ok());  // run length 5 is still within the cap
  mon.observe(make_round(6, {11, 6, 6}, {11, 6, 6}, {9, 0, 0}, 5));
  REQUIRE(mon.violations().size() == 1);
  CHECK(mon.violations()[0].find("fallback run exceeded 5") != std::string::npos);
}

TEST_CASE("a non-fallback round resets the recovery clock") {
  PcgMonitor mon;
  mon.observe(make_round(1, {21, 12, 10}, {21, 12, 10}, {19, 2, 2}, 5));
  mon.observe(make_round(2, {19, 10, 10}, {19, 10, 10}, {17, 0, 0}, 5));
  // A nice-pair round in between: the previous run ended.
  RoundRecord nice = make_round(3, {17, 6, 3}, {17, 7, 3}, {15, 5, 3}, 4, false);
  nice.clip_deg_u = 2;
  nice.clip_deg_v = 2;  // 17*4 >= 4*7
  mon.observe(nice);
  // Fallback rounds resume but from a bounded entry, run restarts at 1.
  mon.observe(make_round(4, {15, 8, 7}, {15, 8, 7}, {13, 1, 1}, 5));
  mon.observe(make_round(5, {13, 7, 7}, {13, 7, 7}, {11, 0, 0}, 5));
  CHECK(mon.ok());
}
