#include "starclip/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "starclip/errors.hpp"

namespace starclip {

WorkGraph::WorkGraph(int universe) {
  if (universe < 0) throw InvalidParams("vertex universe must be non-negative");
  n_ = universe;
  words_ = bits::word_count(universe);
  adj_.assign(static_cast<size_t>(n_) * words_, 0);
  active_ = bits::BitVec(universe);
  deg_.assign(n_, 0);
  for (Vertex v = 0; v < n_; ++v) active_.set(v);
  active_count_ = n_;
}

WorkGraph WorkGraph::with_active(int universe, const std::vector<Vertex>& active) {
  WorkGraph g(universe);
  bits::BitVec keep(universe);
  for (Vertex v : active) {
    if (v < 0 || v >= universe) throw InvalidParams("active vertex out of range");
    keep.set(v);
  }
  for (Vertex v = 0; v < universe; ++v) {
    if (!keep.test(v)) g.active_.reset(v);
  }
  g.active_count_ = keep.count();
  return g;
}

void WorkGraph::require_active(Vertex v, const char* what) const {
  if (v < 0 || v >= n_ || !active_.test(v)) {
    throw InactiveVertex(std::string(what) + ": vertex " + std::to_string(v) +
                         " is not active");
  }
}

bool WorkGraph::is_active(Vertex v) const {
  return v >= 0 && v < n_ && active_.test(v);
}

bool WorkGraph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  return bits::test(row(u), v);
}

int WorkGraph::degree(Vertex v) const {
  require_active(v, "degree");
  return deg_[v];
}

int WorkGraph::max_degree() const {
  int best = 0;
  for (Vertex v = active_.next(0); v >= 0; v = active_.next(v + 1)) {
    best = std::max(best, deg_[v]);
  }
  return best;
}

std::vector<Vertex> WorkGraph::active_vertices() const {
  std::vector<Vertex> out;
  out.reserve(active_count_);
  for (Vertex v = active_.next(0); v >= 0; v = active_.next(v + 1)) out.push_back(v);
  return out;
}

void WorkGraph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw LoopEdge("add_edge: loop at vertex " + std::to_string(u));
  require_active(u, "add_edge");
  require_active(v, "add_edge");
  if (bits::test(row(u), v)) {
    throw DuplicateEdge("add_edge: edge {" + std::to_string(u) + "," +
                        std::to_string(v) + "} already present");
  }
  bits::set(mrow(u), v);
  bits::set(mrow(v), u);
  ++deg_[u];
  ++deg_[v];
  ++edge_count_;
  check_degree_sum();
}

void WorkGraph::clip_pair(Vertex u, Vertex v) {
  if (u == v) throw InvalidParams("clip_pair: vertices must differ");
  require_active(u, "clip_pair");
  require_active(v, "clip_pair");
  if (bits::test(row(u), v)) {
    throw AdjacentPair("clip_pair: {" + std::to_string(u) + "," +
                       std::to_string(v) + "} is an edge");
  }
  // u,v non-adjacent, so their incident edge sets are disjoint.
  edge_count_ -= deg_[u] + deg_[v];
  for (Vertex c : {u, v}) {
    const std::uint64_t* r = row(c);
    for (Vertex w = bits::next_set(r, words_, 0); w >= 0;
         w = bits::next_set(r, words_, w + 1)) {
      bits::reset(mrow(w), c);
      --deg_[w];
    }
    std::fill(mrow(c), mrow(c) + words_, 0);
    deg_[c] = 0;
    active_.reset(c);
  }
  active_count_ -= 2;
  check_degree_sum();
}

void WorkGraph::check_degree_sum() const {
  long long total = 0;
  for (Vertex v = active_.next(0); v >= 0; v = active_.next(v + 1)) total += deg_[v];
  if (total != 2 * edge_count_) {
    throw Error("internal: degree sum " + std::to_string(total) +
                " != 2*edges " + std::to_string(2 * edge_count_));
  }
}

Vertex WorkGraph::smallest_nonneighbor(Vertex u) const {
  require_active(u, "smallest_nonneighbor");
  const std::uint64_t* r = row(u);
  for (Vertex w = active_.next(0); w >= 0; w = active_.next(w + 1)) {
    if (w != u && !bits::test(r, w)) return w;
  }
  return -1;
}

bool WorkGraph::has_nonadjacent_pair() const {
  // All edges join active vertices, so comparing e against C(active,2) suffices.
  if (active_count_ < 2) return false;
  long long pairs = static_cast<long long>(active_count_) * (active_count_ - 1) / 2;
  return edge_count_ < pairs;
}

bool is_nice_pair(const WorkGraph& g, Vertex u, Vertex v) {
  if (!g.is_active(u) || !g.is_active(v) || u == v) return false;
  if (g.has_edge(u, v)) return false;
  long long lhs = static_cast<long long>(g.active_count()) *
                  (g.degree(u) + g.degree(v));
  return lhs >= 4 * g.edge_count();
}

std::optional<std::pair<Vertex, Vertex>> find_nice_pair(const WorkGraph& g) {
  if (g.active_count() < 2) {
    throw TooFewVertices("find_nice_pair: needs at least 2 active vertices, got " +
                         std::to_string(g.active_count()));
  }
  for (Vertex u = g.first_active(); u >= 0; u = g.next_active(u)) {
    for (Vertex v = g.next_active(u); v >= 0; v = g.next_active(v)) {
      if (is_nice_pair(g, u, v)) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

bool g_sparse_counts(int v, long long e, const SparseProfile& p) {
  // 2e/v <= alpha*v + 1, cross-multiplied: 2*e*den <= v*(num*v + den).
  if (v == 0) return true;
  return 2 * e * p.alpha_den <=
         static_cast<long long>(v) * (p.alpha_num * v + p.alpha_den);
}

bool fg_sparse_counts(int v, long long e, int max_deg, const SparseProfile& p) {
  if (v == 0) return true;
  if (!p.include_f) return g_sparse_counts(v, e, p);
  return 2 * max_deg <= v - 1 && g_sparse_counts(v, e, p);
}

bool is_g_sparse(const WorkGraph& g, const SparseProfile& p) {
  return g_sparse_counts(g.active_count(), g.edge_count(), p);
}

bool is_fg_sparse(const WorkGraph& g, const SparseProfile& p) {
  return fg_sparse_counts(g.active_count(), g.edge_count(), g.max_degree(), p);
}

bool is_11_sparse(const WorkGraph& g) { return g.max_degree() <= 1; }

bool is_1_sparse(const WorkGraph& g) {
  return 2 * g.edge_count() <= g.active_count();
}

namespace {

[[noreturn]] void bad(const std::string& text, const std::string& why) {
  throw ParseError("bad graph literal \"" + text + "\": " + why);
}

long long read_int(const std::string& s, size_t& i, const std::string& text) {
  size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == start) bad(text, "expected a number at offset " + std::to_string(start));
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + i, value);
  if (ec != std::errc() || ptr != s.data() + i) bad(text, "number out of range");
  return value;
}

}  // namespace

WorkGraph parse_graph(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  size_t i = 0;
  auto expect = [&](const std::string& lit) {
    if (s.compare(i, lit.size(), lit) != 0) {
      bad(text, "expected \"" + lit + "\" at offset " + std::to_string(i));
    }
    i += lit.size();
  };
  expect("v=");
  long long n = read_int(s, i, text);
  if (n > 1'000'000) bad(text, "vertex count too large");
  expect(";edges=");
  WorkGraph g(static_cast<int>(n));
  bool first = true;
  while (i < s.size()) {
    if (!first) expect(",");
    first = false;
    expect("(");
    long long u = read_int(s, i, text);
    expect(",");
    long long v = read_int(s, i, text);
    expect(")");
    if (u >= n || v >= n) bad(text, "vertex out of range in edge");
    if (u == v) bad(text, "loop edge at vertex " + std::to_string(u));
    if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
      bad(text, "duplicate edge");
    }
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

std::string format_graph(const WorkGraph& g) {
  std::string out = "v=" + std::to_string(g.universe_size()) + "; edges=";
  bool first = true;
  for (Vertex u = 0; u < g.universe_size(); ++u) {
    if (!g.is_active(u)) continue;
    for (Vertex v = u + 1; v < g.universe_size(); ++v) {
      if (g.has_edge(u, v)) {
        if (!first) out += ",";
        first = false;
        out += "(" + std::to_string(u) + "," + std::to_string(v) + ")";
      }
    }
  }
  return out;
}

}  // namespace starclip
