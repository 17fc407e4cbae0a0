#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "starclip/star.hpp"

namespace starclip {

// Parsed form of "name[:seed[:param=val,...]]".
struct AdversarySpec {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> params;
};

AdversarySpec parse_adversary_spec(const std::string& text);

// A first-player policy. Sees only the public position; the next move is a
// pure function of (policy, seed, history), so per-game instances can run
// in parallel workers.
class Adversary {
 public:
  virtual ~Adversary() = default;

  // Canonical spec with the seed resolved, echoed into transcripts.
  const std::string& spec() const { return spec_; }
  void set_spec(std::string s) { spec_ = std::move(s); }

  // A legal (unclaimed) edge for the first player, normalized u < v.
  virtual std::pair<Vertex, Vertex> next_pi_move(const StarGame& gs) = 0;

 private:
  std::string spec_;
};

// Known names: random, safe-random, s-attacker, degree-attacker, replay,
// minimax. The explicit seed in the spec wins over game_seed.
std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, std::uint64_t game_seed);
std::unique_ptr<Adversary> make_adversary(const std::string& text, std::uint64_t game_seed);

}  // namespace starclip
