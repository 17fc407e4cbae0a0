#include "starclip/adversary.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <vector>

#include "starclip/errors.hpp"
#include "starclip/rng.hpp"

namespace starclip {

namespace {

void require_pi_turn(const StarGame& gs) {
  if (gs.over()) throw GameOver("next_pi_move: game already decided");
  if (gs.to_move() != PlayerId::One) throw WrongTiming("next_pi_move: not the opener's turn");
}

// idx-th pair (lexicographic) among ids taken two at a time.
std::pair<Vertex, Vertex> nth_pair(const std::vector<Vertex>& ids, long long idx) {
  long long m = static_cast<long long>(ids.size());
  for (long long i = 0; i < m; ++i) {
    long long row = m - 1 - i;
    if (idx < row) return {ids[i], ids[i + 1 + idx]};
    idx -= row;
  }
  throw Error("internal: pair index out of range");
}

long long pair_count(std::size_t m) {
  return static_cast<long long>(m) * (static_cast<long long>(m) - 1) / 2;
}

std::vector<Vertex> all_vertices(int n) {
  std::vector<Vertex> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

std::pair<Vertex, Vertex> uniform_unclaimed(const StarGame& gs, std::mt19937_64& g) {
  std::vector<Vertex> ids = all_vertices(gs.n());
  for (int tries = 0; tries < 64; ++tries) {
    auto [u, v] = nth_pair(ids, static_cast<long long>(
                                    rng::uniform_below(g, pair_count(ids.size()))));
    if (!gs.claimed(u, v)) return {u, v};
  }
  auto moves = gs.legal_moves();
  if (moves.empty()) throw NoMoves("board exhausted");
  return moves[rng::uniform_below(g, moves.size())];
}

class RandomAdversary : public Adversary {
 public:
  explicit RandomAdversary(std::uint64_t seed) : g_(seed) {}
  std::pair<Vertex, Vertex> next_pi_move(const StarGame& gs) override {
    require_pi_turn(gs);
    return uniform_unclaimed(gs, g_);
  }

 private:
  std::mt19937_64 g_;
};

class SafeRandomAdversary : public Adversary {
 public:
  explicit SafeRandomAdversary(std::uint64_t seed) : g_(seed) {}
  std::pair<Vertex, Vertex> next_pi_move(const StarGame& gs) override {
    require_pi_turn(gs);
    std::vector<Vertex> ids = all_vertices(gs.n());
    for (int tries = 0; tries < 128; ++tries) {
      auto [u, v] = nth_pair(ids, static_cast<long long>(
                                      rng::uniform_below(g_, pair_count(ids.size()))));
      if (gs.is_safe(PlayerId::One, u, v)) return {u, v};
    }
    auto safe = gs.safe_moves(PlayerId::One);
    if (!safe.empty()) return safe[rng::uniform_below(g_, safe.size())];
    return uniform_unclaimed(gs, g_);
  }

 private:
  std::mt19937_64 g_;
};

// Aims edges into the low-degree class of the defender's graph, the set the
// staged construction is busy clipping.
class ClassAttackerAdversary : public Adversary {
 public:
  explicit ClassAttackerAdversary(std::uint64_t seed) : g_(seed) {}
  std::pair<Vertex, Vertex> next_pi_move(const StarGame& gs) override {
    require_pi_turn(gs);
    const WorkGraph& h2 = gs.claimed_by(PlayerId::Two);
    int dmin = gs.n();
    for (Vertex v = 0; v < gs.n(); ++v) dmin = std::min(dmin, h2.degree(v));
    std::vector<Vertex> cls;
    for (Vertex v = 0; v < gs.n(); ++v) {
      if (h2.degree(v) == dmin) cls.push_back(v);
    }
    if (cls.size() >= 2) {
      for (int tries = 0; tries < 128; ++tries) {
        auto [u, v] = nth_pair(cls, static_cast<long long>(
                                        rng::uniform_below(g_, pair_count(cls.size()))));
        if (!gs.claimed(u, v)) return {u, v};
      }
      std::vector<std::pair<Vertex, Vertex>> open;
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          if (!gs.claimed(cls[i], cls[j])) open.emplace_back(cls[i], cls[j]);
        }
      }
      if (!open.empty()) return open[rng::uniform_below(g_, open.size())];
    }
    return uniform_unclaimed(gs, g_);
  }

 private:
  std::mt19937_64 g_;
};

// Deterministic: claims the unclaimed edge maximizing the union-degree sum
// of its endpoints, preferring edges it can survive, ties to the smallest
// pair. No seed involved.
class DegreeAttackerAdversary : public Adversary {
 public:
  std::pair<Vertex, Vertex> next_pi_move(const StarGame& gs) override {
    require_pi_turn(gs);
    int n = gs.n();
    int cap = gs.k() - 1;
    const WorkGraph& h1 = gs.claimed_by(PlayerId::One);
    const WorkGraph& un = gs.claimed_union();
    std::vector<int> gd(n), own(n);
    for (Vertex v = 0; v < n; ++v) {
      gd[v] = un.degree(v);
      own[v] = h1.degree(v);
    }
    int best = -1;
    std::pair<Vertex, Vertex> pick{-1, -1};
    for (Vertex u = 0; u < n; ++u) {
      if (own[u] > cap) continue;
      for (Vertex v = u + 1; v < n; ++v) {
        if (own[v] > cap || un.has_edge(u, v)) continue;
        if (gd[u] + gd[v] > best) {
          best = gd[u] + gd[v];
          pick = {u, v};
        }
      }
    }
    if (best >= 0) return pick;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (un.has_edge(u, v)) continue;
        if (gd[u] + gd[v] > best) {
          best = gd[u] + gd[v];
          pick = {u, v};
        }
      }
    }
    if (best < 0) throw NoMoves("board exhausted");
    return pick;
  }
};

class ReplayAdversary : public Adversary {
 public:
  ReplayAdversary(std::vector<std::pair<Vertex, Vertex>> script,
                  std::unique_ptr<Adversary> then)
      : script_(std::move(script)), then_(std::move(then)) {}

  std::pair<Vertex, Vertex> next_pi_move(const StarGame& gs) override {
    require_pi_turn(gs);
    if (at_ < script_.size()) {
      auto [u, v] = script_[at_++];
      if (u < 0 || v < 0 || u >= gs.n() || v >= gs.n() || u == v) {
        throw InvalidParams("replay: scripted edge out of range");
      }
      if (gs.claimed(u, v)) throw InvalidParams("replay: scripted edge already claimed");
      return {u, v};
    }
    if (then_) return then_->next_pi_move(gs);
    throw ScriptExhausted("replay: script spent after " +
                          std::to_string(script_.size()) + " moves");
  }

 private:
  std::vector<std::pair<Vertex, Vertex>> script_;
  std::size_t at_ = 0;
  std::unique_ptr<Adversary> then_;
};

// Depth-limited exact search on small boards; unreached horizons score as
// neutral. Deterministic, the seed is ignored.
class MinimaxAdversary : public Adversary {
 public:
  explicit MinimaxAdversary(int depth) : depth_(depth) {
    if (depth < 1) throw InvalidParams("minimax: depth must be positive");
  }

  std::pair<Vertex, Vertex> next_pi_move(const StarGame& gs) override {
    require_pi_turn(gs);
    if (gs.n() > 8) throw ModeUnavailable("minimax: supported for n <= 8 only");
    build(gs);
    std::uint32_t m1 = mask_of(gs, PlayerId::One);
    std::uint32_t m2 = mask_of(gs, PlayerId::Two);
    int best = -2;
    int pick = -1;
    for (int e = 0; e < m_; ++e) {
      if ((m1 | m2) & (1u << e)) continue;
      int val = value_after(m1, m2, true, e, depth_);
      if (val > best) {
        best = val;
        pick = e;
      }
      if (best == 1) break;
    }
    if (pick < 0) throw NoMoves("board exhausted");
    return edges_[static_cast<std::size_t>(pick)];
  }

 private:
  void build(const StarGame& gs) {
    n_ = gs.n();
    k_ = gs.k();
    edges_.clear();
    std::fill(std::begin(inc_), std::end(inc_), 0u);
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v = u + 1; v < n_; ++v) {
        int id = static_cast<int>(edges_.size());
        edges_.emplace_back(u, v);
        inc_[u] |= 1u << id;
        inc_[v] |= 1u << id;
      }
    }
    m_ = static_cast<int>(edges_.size());
    full_ = m_ == 32 ? ~0u : (1u << m_) - 1;
  }

  std::uint32_t mask_of(const StarGame& gs, PlayerId p) const {
    std::uint32_t m = 0;
    const WorkGraph& h = gs.claimed_by(p);
    for (int e = 0; e < m_; ++e) {
      if (h.has_edge(edges_[static_cast<std::size_t>(e)].first,
                     edges_[static_cast<std::size_t>(e)].second)) {
        m |= 1u << e;
      }
    }
    return m;
  }

  int deg(std::uint32_t mask, Vertex v) const { return std::popcount(mask & inc_[v]); }

  // Value for the mover of claiming edge e, searching depth plies deep.
  int value_after(std::uint32_t m1, std::uint32_t m2, bool one_moves, int e, int depth) {
    auto [u, v] = edges_[static_cast<std::size_t>(e)];
    std::uint32_t own = (one_moves ? m1 : m2) | (1u << e);
    if (deg(own, u) > k_ || deg(own, v) > k_) return -1;
    std::uint32_t nm1 = one_moves ? own : m1;
    std::uint32_t nm2 = one_moves ? m2 : own;
    if ((nm1 | nm2) == full_) return 0;
    if (depth <= 1) return 0;
    int opp_best = -2;
    for (int f = 0; f < m_; ++f) {
      if ((nm1 | nm2) & (1u << f)) continue;
      opp_best = std::max(opp_best, value_after(nm1, nm2, !one_moves, f, depth - 1));
      if (opp_best == 1) break;
    }
    return -opp_best;
  }

  int n_ = 0;
  int k_ = 0;
  int m_ = 0;
  int depth_;
  std::uint32_t full_ = 0;
  std::uint32_t inc_[8] = {};
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InvalidParams(std::string(what) + ": bad integer '" + s + "'");
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> parse_script(const std::string& text) {
  std::vector<std::pair<Vertex, Vertex>> out;
  std::size_t at = 0;
  while (at < text.size()) {
    std::size_t end = text.find('+', at);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(at, end - at);
    std::size_t dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == item.size()) {
      throw InvalidParams("replay: script entries look like u-v, got '" + item + "'");
    }
    Vertex u = static_cast<Vertex>(parse_u64(item.substr(0, dash), "replay"));
    Vertex v = static_cast<Vertex>(parse_u64(item.substr(dash + 1), "replay"));
    out.emplace_back(std::min(u, v), std::max(u, v));
    at = end + 1;
  }
  if (out.empty()) throw InvalidParams("replay: empty script");
  return out;
}

std::string canonical_spec(const AdversarySpec& spec, std::uint64_t seed) {
  std::string out = spec.name + ":" + std::to_string(seed);
  if (!spec.params.empty()) {
    out += ":";
    bool first = true;
    for (const auto& [key, val] : spec.params) {
      if (!first) out += ",";
      first = false;
      out += key + "=" + val;
    }
  }
  return out;
}

}  // namespace

AdversarySpec parse_adversary_spec(const std::string& text) {
  AdversarySpec spec;
  std::size_t c1 = text.find(':');
  spec.name = text.substr(0, c1);
  if (spec.name.empty()) throw InvalidParams("adversary spec: empty name");
  if (c1 == std::string::npos) return spec;
  std::size_t c2 = text.find(':', c1 + 1);
  std::string seed_part = text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos
                                                                      : c2 - c1 - 1);
  if (!seed_part.empty()) spec.seed = parse_u64(seed_part, "adversary seed");
  if (c2 == std::string::npos) return spec;
  std::string rest = text.substr(c2 + 1);
  std::size_t at = 0;
  while (at < rest.size()) {
    std::size_t end = rest.find(',', at);
    if (end == std::string::npos) end = rest.size();
    std::string item = rest.substr(at, end - at);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidParams("adversary spec: parameters look like key=value, got '" + item + "'");
    }
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
    at = end + 1;
  }
  return spec;
}

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, std::uint64_t game_seed) {
  std::uint64_t seed = spec.seed.value_or(game_seed);
  std::unique_ptr<Adversary> out;
  if (spec.name == "random") {
    out = std::make_unique<RandomAdversary>(seed);
  } else if (spec.name == "safe-random") {
    out = std::make_unique<SafeRandomAdversary>(seed);
  } else if (spec.name == "s-attacker") {
    out = std::make_unique<ClassAttackerAdversary>(seed);
  } else if (spec.name == "degree-attacker") {
    out = std::make_unique<DegreeAttackerAdversary>();
  } else if (spec.name == "replay") {
    auto script_it = spec.params.find("script");
    if (script_it == spec.params.end()) {
      throw InvalidParams("replay: needs script=u-v+u-v+...");
    }
    std::unique_ptr<Adversary> then;
    auto then_it = spec.params.find("then");
    if (then_it != spec.params.end()) {
      then = make_adversary(AdversarySpec{then_it->second, seed, {}}, seed);
    }
    out = std::make_unique<ReplayAdversary>(parse_script(script_it->second), std::move(then));
  } else if (spec.name == "minimax") {
    int depth = 3;
    auto d_it = spec.params.find("d");
    if (d_it != spec.params.end()) {
      depth = static_cast<int>(parse_u64(d_it->second, "minimax depth"));
    }
    out = std::make_unique<MinimaxAdversary>(depth);
  } else {
    throw InvalidParams("unknown adversary '" + spec.name + "'");
  }
  out->set_spec(canonical_spec(spec, seed));
  return out;
}

std::unique_ptr<Adversary> make_adversary(const std::string& text, std::uint64_t game_seed) {
  return make_adversary(parse_adversary_spec(text), game_seed);
}

}  // namespace starclip
