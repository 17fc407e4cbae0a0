#include "doctest.h"

#include <set>
#include <utility>
#include <vector>

#include "starclip/adversary.hpp"
#include "starclip/errors.hpp"

using namespace starclip;

TEST_CASE("spec parsing") {
  AdversarySpec bare = parse_adversary_spec("random");
  CHECK(bare.name == "random");
  CHECK_FALSE(bare.seed.has_value());
  CHECK(bare.params.empty());

  AdversarySpec seeded = parse_adversary_spec("safe-random:77");
  CHECK(seeded.name == "safe-random");
  CHECK(seeded.seed == 77);

  AdversarySpec full = parse_adversary_spec("replay:5:script=0-1+2-3,then=random");
  CHECK(full.name == "replay");
  CHECK(full.seed == 5);
  CHECK(full.params.at("script") == "0-1+2-3");
  CHECK(full.params.at("then") == "random");

  // Empty seed slot keeps the game seed.
  AdversarySpec noseed = parse_adversary_spec("minimax::d=4");
  CHECK_FALSE(noseed.seed.has_value());
  CHECK(noseed.params.at("d") == "4");

  CHECK_THROWS_AS(parse_adversary_spec(""), InvalidParams);
  CHECK_THROWS_AS(parse_adversary_spec(":5"), InvalidParams);
  CHECK_THROWS_AS(parse_adversary_spec("random:abc"), InvalidParams);
  CHECK_THROWS_AS(parse_adversary_spec("random:1:oops"), InvalidParams);
  CHECK_THROWS_AS(parse_adversary_spec("random:1:=v"), InvalidParams);
}

TEST_CASE("canonical spec echoes the resolved seed and sorted parameters") {
  CHECK(make_adversary("random", 42)->spec() == "random:42");
  CHECK(make_adversary("random:7", 42)->spec() == "random:7");
  CHECK(make_adversary("replay:1:then=random,script=0-1", 9)->spec() ==
        "replay:1:script=0-1,then=random");
  CHECK_THROWS_AS(make_adversary("zigzag", 1), InvalidParams);
}

TEST_CASE("same spec and seed replays the same game") {
  auto a = make_adversary("random:123", 0);
  auto b = make_adversary("random:123", 0);
  StarGame ga(10, 1), gb(10, 1);
  for (int round = 0; round < 4 && !ga.over(); ++round) {
    auto ma = a->next_pi_move(ga);
    auto mb = b->next_pi_move(gb);
    CHECK(ma == mb);
    CHECK(ma.first < ma.second);
    CHECK_FALSE(ga.claimed(ma.first, ma.second));
    ga.claim(ma.first, ma.second);
    gb.claim(mb.first, mb.second);
    if (ga.over()) break;
    auto safe = ga.safe_moves(PlayerId::Two);
    auto echo = safe.empty() ? ga.legal_moves().front() : safe.front();
    ga.claim(echo.first, echo.second);
    gb.claim(echo.first, echo.second);
  }
}

TEST_CASE("turn and lifetime guards") {
  auto adv = make_adversary("random:1", 0);
  StarGame gs(6, 1);
  gs.claim(0, 1);
  CHECK_THROWS_AS(adv->next_pi_move(gs), WrongTiming);

  StarGame tiny(2, 1);
  tiny.claim(0, 1);  // full board, drawn
  CHECK_THROWS_AS(adv->next_pi_move(tiny), GameOver);
}

TEST_CASE("every policy finds the last open edge") {
  for (const char* name : {"random:3", "safe-random:3", "s-attacker:3", "degree-attacker"}) {
    StarGame gs(3, 1);
    gs.claim(0, 1);
    gs.claim(0, 2);
    auto mv = make_adversary(name, 11)->next_pi_move(gs);
    CHECK(mv == std::pair<Vertex, Vertex>(1, 2));
  }
}

TEST_CASE("safe-random stays inside the safe set while one exists") {
  // After 0-1 (PI) and 2-3 (PII), PI's own graph blocks 0 and 1; the safe
  // edges are exactly 2-4 and 3-4.
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    StarGame gs(5, 1);
    gs.claim(0, 1);
    gs.claim(2, 3);
    auto mv = make_adversary("safe-random", seed)->next_pi_move(gs);
    bool ok = mv == std::pair<Vertex, Vertex>(2, 4) || mv == std::pair<Vertex, Vertex>(3, 4);
    CHECK(ok);
  }
}

TEST_CASE("s-attacker aims at the defender's low-degree class") {
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    StarGame gs(6, 1);
    gs.claim(4, 5);  // PI
    gs.claim(0, 1);  // PII, so the degree-0 class of H2 is {2,3,4,5}
    auto mv = make_adversary("s-attacker", seed)->next_pi_move(gs);
    const WorkGraph& h2 = gs.claimed_by(PlayerId::Two);
    CHECK(h2.degree(mv.first) == 0);
    CHECK(h2.degree(mv.second) == 0);
    CHECK_FALSE(gs.claimed(mv.first, mv.second));
  }
}

TEST_CASE("degree-attacker maximizes union degree but will not hang itself") {
  // k=1, PI already holds 0-1: the hottest open pair touches 0 or 1, but
  // claiming there is instant suicide, so the scan skips to 2-4.
  StarGame gs(6, 1);
  gs.claim(0, 1);
  gs.claim(2, 3);
  auto adv = make_adversary("degree-attacker", 0);
  CHECK(adv->next_pi_move(gs) == std::pair<Vertex, Vertex>(2, 4));

  // With headroom (k=2) the hot pair is taken directly.
  StarGame g2(6, 2);
  g2.claim(0, 1);
  g2.claim(0, 2);
  CHECK(make_adversary("degree-attacker", 0)->next_pi_move(g2) ==
        std::pair<Vertex, Vertex>(0, 3));
}

TEST_CASE("replay follows the script then hands over or stops") {
  StarGame gs(6, 1);
  auto adv = make_adversary("replay:1:script=3-2+0-5", 0);
  CHECK(adv->next_pi_move(gs) == std::pair<Vertex, Vertex>(2, 3));  // normalized
  gs.claim(2, 3);
  gs.claim(0, 1);
  CHECK(adv->next_pi_move(gs) == std::pair<Vertex, Vertex>(0, 5));
  gs.claim(0, 5);
  gs.claim(4, 5);
  CHECK_THROWS_AS(adv->next_pi_move(gs), ScriptExhausted);

  StarGame g2(6, 1);
  auto fallback = make_adversary("replay:1:script=0-1,then=degree-attacker", 0);
  CHECK(fallback->next_pi_move(g2) == std::pair<Vertex, Vertex>(0, 1));
  g2.claim(0, 1);
  g2.claim(2, 3);
  // Same position as above: the fallback policy takes over.
  CHECK(fallback->next_pi_move(g2) == std::pair<Vertex, Vertex>(2, 4));
}

TEST_CASE("replay validation") {
  CHECK_THROWS_AS(make_adversary("replay:1", 0), InvalidParams);  // no script
  CHECK_THROWS_AS(make_adversary("replay:1:script=01", 0), InvalidParams);
  CHECK_THROWS_AS(make_adversary("replay:1:script=", 0), InvalidParams);

  StarGame gs(4, 1);
  gs.claim(0, 1);
  gs.claim(1, 2);
  auto clash = make_adversary("replay:1:script=0-1", 0);
  CHECK_THROWS_AS(clash->next_pi_move(gs), InvalidParams);  // already claimed

  StarGame g2(4, 1);
  auto range = make_adversary("replay:1:script=0-9", 0);
  CHECK_THROWS_AS(range->next_pi_move(g2), InvalidParams);
}

TEST_CASE("minimax dodges forced losses and respects its limits") {
  CHECK_THROWS_AS(make_adversary("minimax:0:d=0", 0), InvalidParams);

  StarGame big(9, 1);
  big.claim(0, 1);
  big.claim(2, 3);
  CHECK_THROWS_AS(make_adversary("minimax", 0)->next_pi_move(big), ModeUnavailable);

  // k=1 with 0-1 owned and 0-2 against: every open edge except 2-3 doubles
  // one of PI's endpoints, and 2-3 loses two plies later. Short horizons
  // pick 2-3; a deep search sees that everything loses and keeps the first
  // candidate.
  for (const char* spec : {"minimax:0:d=1", "minimax:0:d=2"}) {
    StarGame gs(4, 1);
    gs.claim(0, 1);
    gs.claim(0, 2);
    CHECK(make_adversary(spec, 0)->next_pi_move(gs) == std::pair<Vertex, Vertex>(2, 3));
  }
  StarGame deep(4, 1);
  deep.claim(0, 1);
  deep.claim(0, 2);
  CHECK(make_adversary("minimax:0:d=5", 0)->next_pi_move(deep) ==
        std::pair<Vertex, Vertex>(0, 3));

  // Full-depth search on the 3-vertex board: every move loses eventually,
  // but a move is still produced and the pick is stable.
  StarGame g3(3, 1);
  CHECK(make_adversary("minimax:0:d=9", 0)->next_pi_move(g3) ==
        std::pair<Vertex, Vertex>(0, 1));
}
