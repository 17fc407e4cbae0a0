#include "doctest.h"

#include "starclip/errors.hpp"
#include "starclip/star.hpp"

using namespace starclip;

TEST_CASE("construction and parameter validation") {
  StarGame g(5, 2);
  CHECK(g.n() == 5);
  CHECK(g.k() == 2);
  CHECK(g.total_edges() == 10);
  CHECK(g.to_move() == PlayerId::One);
  CHECK(g.result() == GameResult::Ongoing);
  CHECK_FALSE(g.over());
  CHECK(g.moves_made() == 0);
  CHECK_FALSE(g.last_move().has_value());

  CHECK_THROWS_AS(StarGame(0, 1), InvalidParams);
  CHECK_THROWS_AS(StarGame(4, 0), InvalidParams);
}

TEST_CASE("claims alternate and land in the mover's graph") {
  StarGame g(4, 1);
  g.claim(0, 1);
  CHECK(g.to_move() == PlayerId::Two);
  CHECK(g.claimed_by(PlayerId::One).has_edge(0, 1));
  CHECK_FALSE(g.claimed_by(PlayerId::Two).has_edge(0, 1));
  CHECK(g.claimed(0, 1));
  CHECK(g.claimed_union().has_edge(0, 1));

  g.claim(2, 3);
  CHECK(g.claimed_by(PlayerId::Two).has_edge(2, 3));
  CHECK(g.moves_made() == 2);
  CHECK(g.moves_made(PlayerId::One) == 1);
  CHECK(g.moves_made(PlayerId::Two) == 1);

  auto last = g.last_move();
  REQUIRE(last.has_value());
  CHECK(last->by == PlayerId::Two);
  CHECK(last->u == 2);
  CHECK(last->v == 3);
}

TEST_CASE("claim validation") {
  StarGame g(4, 1);
  g.claim(0, 1);
  CHECK_THROWS_AS(g.claim(0, 1), AlreadyClaimed);
  CHECK_THROWS_AS(g.claim(1, 0), AlreadyClaimed);
  CHECK_THROWS_AS(g.claim(2, 2), LoopEdge);
  CHECK_THROWS_AS(g.claim(0, 4), InvalidParams);
  CHECK_THROWS_AS(g.claim(-1, 2), InvalidParams);
}

TEST_CASE("completing a star in your own graph loses at once") {
  // k=1: the first player to give one of their own vertices degree 2 loses.
  StarGame g(4, 1);
  g.claim(0, 1);  // PI
  g.claim(0, 2);  // PII: union degree of 0 is 2, but per-player it is 1 each
  CHECK(g.result() == GameResult::Ongoing);
  g.claim(1, 2);  // PI: vertex 1 hits degree 2 in PI's graph
  CHECK(g.result() == GameResult::SecondWins);
  CHECK(g.over());
  REQUIRE(g.losing_move_index().has_value());
  CHECK(*g.losing_move_index() == 2);  // PI's second own move
  CHECK_THROWS_AS(g.claim(2, 3), GameOver);
  CHECK_THROWS_AS(g.legal_moves(), GameOver);
}

TEST_CASE("the second player can lose the same way") {
  StarGame z(6, 1);
  z.claim(0, 1);  // PI
  z.claim(0, 2);  // PII
  z.claim(3, 4);  // PI, disjoint
  z.claim(2, 5);  // PII: 0-2 and 2-5 meet at 2, PII loses
  CHECK(z.result() == GameResult::FirstWins);
  REQUIRE(z.losing_move_index().has_value());
  CHECK(*z.losing_move_index() == 2);
}

TEST_CASE("only the mover's own edges count against them") {
  StarGame g(5, 1);
  g.claim(0, 1);  // PI
  g.claim(0, 2);  // PII: union degree of 0 is 2, per-player 1 and 1
  g.claim(2, 3);  // PI: 2 carries a PII edge, irrelevant for PI
  CHECK(g.result() == GameResult::Ongoing);
  g.claim(3, 4);  // PII
  CHECK(g.result() == GameResult::Ongoing);
}

TEST_CASE("a full board with nobody lost is a draw") {
  // n=2, k=1: the only edge leaves both endpoints at degree 1.
  StarGame g(2, 1);
  g.claim(0, 1);
  CHECK(g.result() == GameResult::Draw);
  CHECK_FALSE(g.losing_move_index().has_value());

  // n=3, k=2: degree 3 is impossible on 3 vertices, so the board fills.
  StarGame h(3, 2);
  h.claim(0, 1);
  h.claim(0, 2);
  h.claim(1, 2);
  CHECK(h.result() == GameResult::Draw);
}

TEST_CASE("safety predicate and safe move list") {
  StarGame g(4, 1);
  g.claim(0, 1);  // PI
  // For PI, any edge touching 0 or 1 is now unsafe.
  CHECK_FALSE(g.is_safe(PlayerId::One, 0, 2));
  CHECK_FALSE(g.is_safe(PlayerId::One, 1, 3));
  CHECK(g.is_safe(PlayerId::One, 2, 3));
  // For PII those edges are fresh.
  CHECK(g.is_safe(PlayerId::Two, 0, 2));

  auto safe1 = g.safe_moves(PlayerId::One);
  CHECK(safe1 == std::vector<std::pair<Vertex, Vertex>>{{2, 3}});
  auto legal = g.legal_moves();
  CHECK(legal.size() == 5);  // 6 edges minus the claimed one
  for (auto [u, v] : legal) CHECK_FALSE(g.claimed(u, v));
}

TEST_CASE("reckless claims are legal, just losing") {
  StarGame g(4, 1);
  g.claim(0, 1);
  g.claim(2, 3);
  CHECK_FALSE(g.is_safe(PlayerId::One, 2, 3));  // claimed edges are never safe
  CHECK_FALSE(g.is_safe(PlayerId::One, 0, 2));  // endpoint 0 is already full for PI
  g.claim(0, 2);  // legal anyway
  CHECK(g.result() == GameResult::SecondWins);
}

TEST_CASE("per-player safe capacity never exceeds the star bound") {
  CHECK(ex_bound(2, 1) == 1);
  CHECK(ex_bound(5, 1) == 2);
  CHECK(ex_bound(6, 1) == 3);
  CHECK(ex_bound(5, 2) == 5);
  CHECK(ex_bound(201, 1) == 100);
  CHECK(ex_bound(600, 3) == 900);
}
