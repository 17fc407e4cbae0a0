#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starclip/bits.hpp"

namespace starclip {

using Vertex = int;

struct Snapshot {
  int v = 0;
  long long e = 0;
  int max_deg = 0;
};

// Average-degree bound d(G) <= alpha*v + 1 held as an exact rational;
// include_f adds the max-degree bound 2*max_deg <= v - 1.
struct SparseProfile {
  long long alpha_num = 1;
  long long alpha_den = 100;
  bool include_f = true;
  static SparseProfile default_profile() { return {}; }
};

// Mutable graph over a fixed vertex universe. Clipping deactivates vertices,
// it never renumbers, so identities stay stable across game embeddings.
class WorkGraph {
 public:
  WorkGraph() = default;
  explicit WorkGraph(int universe);
  static WorkGraph with_active(int universe, const std::vector<Vertex>& active);

  int universe_size() const { return n_; }
  int active_count() const { return active_count_; }
  long long edge_count() const { return edge_count_; }
  int words() const { return words_; }

  bool is_active(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;
  int degree(Vertex v) const;
  int max_degree() const;

  void add_edge(Vertex u, Vertex v);
  void clip_pair(Vertex u, Vertex v);

  Vertex first_active() const { return active_.next(0); }
  Vertex next_active(Vertex after) const { return active_.next(after + 1); }
  std::vector<Vertex> active_vertices() const;

  // Smallest active w != u with {u,w} not an edge, or -1.
  Vertex smallest_nonneighbor(Vertex u) const;
  bool has_nonadjacent_pair() const;

  const std::uint64_t* row(Vertex v) const { return adj_.data() + static_cast<size_t>(v) * words_; }
  const bits::BitVec& active_set() const { return active_; }

  Snapshot snapshot() const { return {active_count_, edge_count_, max_degree()}; }

  bool operator==(const WorkGraph&) const = default;

 private:
  std::uint64_t* mrow(Vertex v) { return adj_.data() + static_cast<size_t>(v) * words_; }
  void require_active(Vertex v, const char* what) const;
  void check_degree_sum() const;

  int n_ = 0;
  int words_ = 0;
  int active_count_ = 0;
  long long edge_count_ = 0;
  std::vector<std::uint64_t> adj_;  // n_ rows of words_ words each
  bits::BitVec active_;
  std::vector<int> deg_;
};

// {u,v} non-adjacent and v(G)*(d(u)+d(v)) >= 4*e(G), all in exact integers.
bool is_nice_pair(const WorkGraph& g, Vertex u, Vertex v);
std::optional<std::pair<Vertex, Vertex>> find_nice_pair(const WorkGraph& g);

bool g_sparse_counts(int v, long long e, const SparseProfile& p = SparseProfile::default_profile());
bool fg_sparse_counts(int v, long long e, int max_deg,
                      const SparseProfile& p = SparseProfile::default_profile());

bool is_g_sparse(const WorkGraph& g, const SparseProfile& p = SparseProfile::default_profile());
bool is_fg_sparse(const WorkGraph& g, const SparseProfile& p = SparseProfile::default_profile());
bool is_11_sparse(const WorkGraph& g);  // max degree <= 1
bool is_1_sparse(const WorkGraph& g);   // 2e <= v

// Text form "v=<n>; edges=(u,v),(u,v),...".
WorkGraph parse_graph(const std::string& text);
std::string format_graph(const WorkGraph& g);

}  // namespace starclip
