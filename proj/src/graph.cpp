#include "specgap/graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

int l1_distance(const LatticePoint& a, const LatticePoint& b) {
  int dist = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dist += std::abs(a[i] - b[i]);
  return dist;
}

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t budget) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (result > budget / base) throw BudgetExceeded("vertex", budget + 1, budget);
    result *= base;
  }
  return result;
}

// Calls visit(point) for every point with point[i] in [0, upper[i]], in
// lexicographic order (first coordinate most significant).
template <class Fn>
void for_each_lattice_point(const std::vector<int>& lower, const std::vector<int>& upper, Fn&& visit) {
  const std::size_t d = upper.size();
  for (std::size_t i = 0; i < d; ++i)
    if (upper[i] < lower[i]) return;
  LatticePoint p = lower;
  while (true) {
    visit(p);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (p[i] < upper[i]) {
        ++p[i];
        for (std::size_t j = i + 1; j < d; ++j) p[j] = lower[j];
        break;
      }
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

Graph lattice_graph(const std::vector<LatticePoint>& points) {
  std::map<LatticePoint, Vertex> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], static_cast<Vertex>(i));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    LatticePoint q = points[i];
    for (std::size_t axis = 0; axis < q.size(); ++axis) {
      ++q[axis];
      if (auto it = index.find(q); it != index.end()) {
        auto a = static_cast<Vertex>(i);
        edges.push_back({std::min(a, it->second), std::max(a, it->second)});
      }
      --q[axis];
    }
  }
  return Graph(points.size(), std::move(edges), points);
}

}  // namespace

// ---- Graph ----------------------------------------------------------------

Graph::Graph(std::size_t n) : adjacency_(n) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::optional<std::vector<LatticePoint>> coords)
    : edges_(std::move(edges)), adjacency_(n), coords_(std::move(coords)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
    if (e.u >= n || e.v >= n)
      throw InvalidArgument("edge endpoint out of range for " + std::to_string(n) + " vertices");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InvalidArgument("duplicate edge");
  if (coords_) {
    if (coords_->size() != n) throw InvalidArgument("coordinate count does not match vertex count");
    for (const auto& e : edges_)
      if (l1_distance((*coords_)[e.u], (*coords_)[e.v]) != 1)
        throw InvalidArgument("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              "} is not a unit lattice step");
  }
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  const auto& nb = adjacency_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

const std::vector<LatticePoint>& Graph::coords() const {
  if (!coords_) throw InvalidArgument("graph has no lattice coordinates");
  return *coords_;
}

bool Graph::connected() const {
  const std::size_t n = vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

// ---- families -------------------------------------------------------------

Graph make_path(std::size_t L) {
  std::vector<Edge> edges;
  std::vector<LatticePoint> coords;
  for (std::size_t i = 0; i <= L; ++i) {
    coords.push_back({static_cast<int>(i)});
    if (i > 0) edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(i)});
  }
  return Graph(L + 1, std::move(edges), std::move(coords));
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph make_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

Graph make_star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, std::move(edges));
}

std::vector<LatticePoint> box_build_order(std::size_t d, std::size_t L) {
  if (d == 0) throw InvalidArgument("box dimension must be positive");
  std::vector<LatticePoint> order;
  order.push_back(LatticePoint(d, 0));
  for (std::size_t l = 1; l <= L; ++l) {
    const int side = static_cast<int>(l);
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<int> lower(d, 0);
      std::vector<int> upper(d);
      for (std::size_t i = 0; i < d; ++i) upper[i] = i < k ? side : side - 1;
      lower[k] = side;
      upper[k] = side;
      for_each_lattice_point(lower, upper, [&](const LatticePoint& p) { order.push_back(p); });
    }
  }
  return order;
}

Graph make_box(std::size_t d, std::size_t L, std::size_t vertex_budget) {
  if (d == 0) throw InvalidArgument("box dimension must be positive");
  checked_power(L + 1, d, vertex_budget);
  return lattice_graph(box_build_order(d, L));
}

Graph cartesian_product(const Graph& h1, const Graph& h2) {
  const std::size_t n1 = h1.vertex_count();
  const std::size_t n2 = h2.vertex_count();
  if (n1 == 0 || n2 == 0) throw InvalidArgument("Cartesian product of an empty graph");
  auto label = [n2](std::size_t a, std::size_t b) { return static_cast<Vertex>(a * n2 + b); };
  std::vector<Edge> edges;
  edges.reserve(n1 * h2.edge_count() + n2 * h1.edge_count());
  for (const auto& e : h1.edges())
    for (std::size_t b = 0; b < n2; ++b) edges.push_back({label(e.u, b), label(e.v, b)});
  for (std::size_t a = 0; a < n1; ++a)
    for (const auto& e : h2.edges()) edges.push_back({label(a, e.u), label(a, e.v)});

  std::optional<std::vector<LatticePoint>> coords;
  if (h1.has_coords() && h2.has_coords()) {
    coords.emplace();
    coords->reserve(n1 * n2);
    for (std::size_t a = 0; a < n1; ++a) {
      for (std::size_t b = 0; b < n2; ++b) {
        LatticePoint p = h1.coords()[a];
        p.insert(p.end(), h2.coords()[b].begin(), h2.coords()[b].end());
        coords->push_back(std::move(p));
      }
    }
  }
  return Graph(n1 * n2, std::move(edges), std::move(coords));
}

Graph induced_subgraph(const Graph& g, std::size_t k) {
  if (k < 1 || k > g.vertex_count())
    throw InvalidArgument("induced prefix size " + std::to_string(k) + " out of range 1.." +
                          std::to_string(g.vertex_count()));
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (e.v < k) edges.push_back(e);
  std::optional<std::vector<LatticePoint>> coords;
  if (g.has_coords()) coords.emplace(g.coords().begin(), g.coords().begin() + static_cast<std::ptrdiff_t>(k));
  return Graph(k, std::move(edges), std::move(coords));
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  const std::size_t n = g.vertex_count();
  if (perm.size() != n) throw InvalidArgument("relabeling has the wrong length");
  std::vector<char> used(n, 0);
  for (Vertex p : perm) {
    if (p >= n || used[p]) throw InvalidArgument("relabeling is not a permutation");
    used[p] = 1;
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  std::optional<std::vector<LatticePoint>> coords;
  if (g.has_coords()) {
    coords.emplace(n);
    for (std::size_t v = 0; v < n; ++v) (*coords)[perm[v]] = g.coords()[v];
  }
  return Graph(n, std::move(edges), std::move(coords));
}

Graph add_edge(const Graph& g, Vertex u, Vertex v) {
  if (g.has_edge(u, v)) throw GraphError("edge already present");
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.push_back({std::min(u, v), std::max(u, v)});
  // Added edges need not be lattice steps, so coordinates are dropped.
  return Graph(g.vertex_count(), std::move(edges));
}

Graph remove_pendant_edge(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_edge(u, v)) throw GraphError("edge not present");
  Vertex leaf;
  if (g.degree(v) == 1)
    leaf = v;
  else if (g.degree(u) == 1)
    leaf = u;
  else
    throw GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} is not pendant");

  auto shift = [leaf](Vertex w) { return w > leaf ? w - 1 : w; };
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (e.u != leaf && e.v != leaf) edges.push_back({shift(e.u), shift(e.v)});
  std::optional<std::vector<LatticePoint>> coords;
  if (g.has_coords()) {
    coords = g.coords();
    coords->erase(coords->begin() + leaf);
  }
  Graph result(g.vertex_count() - 1, std::move(edges), std::move(coords));
  if (!result.connected()) throw GraphError("removing the pendant edge disconnects the graph");
  return result;
}

// ---- build sequence -------------------------------------------------------

std::size_t intermediate_size(std::size_t d, std::size_t L, std::size_t k) {
  if (k > d) throw InvalidArgument("direction index out of range");
  std::size_t size = 1;
  for (std::size_t i = 0; i < d; ++i) size *= i < k ? L + 1 : L;
  return size;
}

Graph intermediate_graph(std::size_t d, std::size_t L, std::size_t k) {
  if (L == 0) throw InvalidArgument("side length must be positive");
  return induced_subgraph(make_box(d, L), intermediate_size(d, L, k));
}

BuildSequence intermediate_sequence(std::size_t d, std::size_t L, std::size_t vertex_budget) {
  if (d == 0 || L == 0) throw InvalidArgument("dimension and side length must be positive");
  Graph box = make_box(d, L, vertex_budget);
  BuildSequence seq;
  seq.d = d;
  seq.L = L;
  const std::size_t base_size = intermediate_size(d, L, 0);
  seq.base = induced_subgraph(box, base_size);
  for (std::size_t k = 1; k <= d; ++k) {
    const std::size_t end = intermediate_size(d, L, k);
    for (std::size_t v = intermediate_size(d, L, k - 1); v < end; ++v) {
      seq.stages.push_back({box.coords()[v], k});
      seq.snapshots.push_back(induced_subgraph(box, v + 1));
    }
    seq.stage_ends.push_back(end - base_size - 1);
  }
  return seq;
}

Graph boundary_graph(std::size_t d, std::size_t L, std::size_t k) {
  if (d == 0 || L == 0) throw InvalidArgument("dimension and side length must be positive");
  if (k < 1 || k > d) throw InvalidArgument("direction index k must lie in 1..d");
  Graph hk = intermediate_graph(d, L, k);
  const std::size_t inner = intermediate_size(d, L, k - 1);
  std::vector<Edge> edges;
  for (const auto& e : hk.edges())
    if (e.u < inner || e.v < inner) edges.push_back(e);
  return Graph(hk.vertex_count(), std::move(edges), hk.coords());
}

// ---- graph6 ---------------------------------------------------------------

namespace {

inline constexpr std::size_t kMaxGraph6Vertices = 62;

// Upper-triangle pairs in graph6 order: (0,1), (0,2), (1,2), (0,3), ...
template <class Fn>
void for_each_pair(std::size_t n, Fn&& fn) {
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) fn(i, j);
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw ParseError("empty graph6 string");
  for (char c : text)
    if (c < 63 || c > 126) throw ParseError("graph6 character out of range");
  if (text[0] == 126) throw ParseError("graph6 long form (n > 62) is not supported");
  const std::size_t n = static_cast<std::size_t>(text[0] - 63);
  if (n > kMaxGraph6Vertices) throw ParseError("graph6 size not supported");
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t expected = 1 + (bits + 5) / 6;
  if (text.size() != expected)
    throw ParseError("graph6 string has length " + std::to_string(text.size()) + ", expected " +
                     std::to_string(expected));

  std::vector<Edge> edges;
  std::size_t bit = 0;
  auto bit_at = [&](std::size_t b) {
    const int chunk = text[1 + b / 6] - 63;
    return (chunk >> (5 - b % 6)) & 1;
  };
  for_each_pair(n, [&](Vertex i, Vertex j) {
    if (bit_at(bit)) edges.push_back({i, j});
    ++bit;
  });
  for (std::size_t b = bits; b < 6 * (expected - 1); ++b)
    if (bit_at(b)) throw ParseError("graph6 padding bits must be zero");
  return Graph(n, std::move(edges));
}

std::string emit_graph6(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxGraph6Vertices) throw InvalidArgument("graph6 long form (n > 62) is not supported");
  std::string out(1, static_cast<char>(63 + n));
  int chunk = 0;
  int filled = 0;
  for_each_pair(n, [&](Vertex i, Vertex j) {
    chunk = (chunk << 1) | (g.has_edge(i, j) ? 1 : 0);
    if (++filled == 6) {
      out.push_back(static_cast<char>(63 + chunk));
      chunk = 0;
      filled = 0;
    }
  });
  if (filled > 0) out.push_back(static_cast<char>(63 + (chunk << (6 - filled))));
  return out;
}

// ---- edge list ------------------------------------------------------------

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                     std::string(tok) + "'");
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokens(line);
    if (toks.empty()) continue;
    if (!n) {
      if (toks.size() != 2 || toks[0] != "n")
        throw ParseError("edge list must start with a line 'n <count>'");
      n = parse_count(toks[1], line_no);
      continue;
    }
    if (toks.size() == 3) throw ParseError("line " + std::to_string(line_no) + ": weighted edges are not supported");
    if (toks.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
    const auto u = parse_count(toks[0], line_no);
    const auto v = parse_count(toks[1], line_no);
    if (u >= *n || v >= *n) throw ParseError("line " + std::to_string(line_no) + ": vertex out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!n) throw ParseError("edge list is empty");
  try {
    return Graph(*n, std::move(edges));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string emit_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

// ---- canonical forms and enumeration --------------------------------------

namespace {

struct CanonicalResult {
  std::uint64_t bits = 0;
  std::vector<Vertex> order;  // order[i] = original vertex placed at position i
};

CanonicalResult canonical_search(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxCanonicalVertices)
    throw InvalidArgument("canonical form is brute force and limited to " +
                          std::to_string(kMaxCanonicalVertices) + " vertices");
  std::array<std::uint32_t, kMaxCanonicalVertices> adj{};
  for (const auto& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  CanonicalResult best{~std::uint64_t{0}, order};
  do {
    std::uint64_t bits = 0;
    for (std::size_t j = 1; j < n; ++j) {
      const std::uint32_t row = adj[order[j]];
      for (std::size_t i = 0; i < j; ++i) bits = (bits << 1) | ((row >> order[i]) & 1u);
    }
    if (bits < best.bits) {
      best.bits = bits;
      best.order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

Graph relabel_in_order(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<Vertex> perm(g.vertex_count());
  for (std::size_t pos = 0; pos < order.size(); ++pos) perm[order[pos]] = static_cast<Vertex>(pos);
  return relabel(g, perm);
}

}  // namespace

std::uint64_t canonical_form(const Graph& g) { return canonical_search(g).bits; }

Graph canonical_graph(const Graph& g) { return relabel_in_order(g, canonical_search(g).order); }

std::vector<Graph> enumerate_connected(std::size_t n) {
  if (n == 0) throw InvalidArgument("vertex count must be positive");
  if (n > kMaxEnumerationVertices)
    throw InvalidArgument("enumeration is limited to " + std::to_string(kMaxEnumerationVertices) +
                          " vertices");
  // Every graph on k vertices is some graph on k-1 vertices plus a new
  // vertex joined to a subset, so class representatives grow level by level.
  std::vector<Graph> level{Graph(1)};
  for (std::size_t k = 2; k <= n; ++k) {
    std::map<std::uint64_t, Graph> classes;
    for (const auto& g : level) {
      for (std::uint32_t subset = 0; subset < (1u << (k - 1)); ++subset) {
        std::vector<Edge> edges(g.edges().begin(), g.edges().end());
        for (Vertex v = 0; v + 1 < k; ++v)
          if (subset & (1u << v)) edges.push_back({v, static_cast<Vertex>(k - 1)});
        Graph candidate(k, std::move(edges));
        const auto canon = canonical_search(candidate);
        if (!classes.contains(canon.bits)) classes.emplace(canon.bits, relabel_in_order(candidate, canon.order));
      }
    }
    level.clear();
    for (auto& [bits, g] : classes) level.push_back(std::move(g));
  }
  std::vector<Graph> result;
  for (auto& g : level)
    if (g.connected()) result.push_back(std::move(g));
  return result;
}

}  // namespace specgap
