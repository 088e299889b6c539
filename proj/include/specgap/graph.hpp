#pragma once

// Labeled undirected simple graphs and the constructions used by the box
// argument: paths, boxes, Cartesian products, induced prefixes, the
// one-vertex-at-a-time build sequence and its boundary graphs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace specgap {

using Vertex = std::uint32_t;

/// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using LatticePoint = std::vector<int>;

/// Default cap on vertex counts for generated boxes.
inline constexpr std::size_t kDefaultVertexBudget = 4'000'000;

/// Immutable labeled simple graph on vertices 0..n-1.
///
/// Optionally carries integer lattice coordinates (boxes, paths and their
/// products); when present every edge joins points at l1-distance 1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  /// Throws InvalidArgument on self-loops, duplicates, out-of-range endpoints
  /// or edges that are not unit lattice steps.
  Graph(std::size_t n, std::vector<Edge> edges,
        std::optional<std::vector<LatticePoint>> coords = std::nullopt);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Sorted lexicographically.
  std::span<const Edge> edges() const { return edges_; }
  /// Sorted ascending.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  bool has_edge(Vertex u, Vertex v) const;

  bool has_coords() const { return coords_.has_value(); }
  const std::vector<LatticePoint>& coords() const;

  bool connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_.size() == b.adjacency_.size() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::optional<std::vector<LatticePoint>> coords_;
};

// ---- named families -------------------------------------------------------

/// Path with vertices 0..L (L+1 vertices), 1-d coordinates.
Graph make_path(std::size_t L);
Graph make_cycle(std::size_t n);
Graph make_complete(std::size_t n);
/// Star K_{1,leaves}; the centre is vertex 0.
Graph make_star(std::size_t leaves);

/// Lattice points of {0..L}^d in build order: the origin, then for each side
/// length l = 1..L and each direction k the points that lengthen the box in
/// direction k, in lexicographic order.
std::vector<LatticePoint> box_build_order(std::size_t d, std::size_t L);

/// The box {0..L}^d labeled in build order, so induced prefixes are the
/// intermediate graphs of the build sequence.
Graph make_box(std::size_t d, std::size_t L, std::size_t vertex_budget = kDefaultVertexBudget);

/// Vertex (a, b) gets label a * |V(h2)| + b. Coordinates are concatenated when
/// both factors carry them.
Graph cartesian_product(const Graph& h1, const Graph& h2);

/// Subgraph induced by vertices 0..k-1; requires 1 <= k <= n.
Graph induced_subgraph(const Graph& g, std::size_t k);

/// Relabels vertex v as perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

Graph add_edge(const Graph& g, Vertex u, Vertex v);
/// Removes the pendant edge {u, v} together with its degree-1 endpoint; the
/// remaining vertices are relabeled to close the gap. Throws GraphError if
/// neither endpoint has degree 1 or the result would be disconnected.
Graph remove_pendant_edge(const Graph& g, Vertex u, Vertex v);

// ---- build sequence -------------------------------------------------------

struct BuildStage {
  LatticePoint point;
  std::size_t direction = 0;  // 1-based direction k
};

/// Growth of B_{L-1} into B_L one vertex at a time.
struct BuildSequence {
  std::size_t d = 0;
  std::size_t L = 0;
  Graph base;
  std::vector<BuildStage> stages;
  /// snapshots[i] is the graph after stages[0..i] have been added.
  std::vector<Graph> snapshots;
  /// stage_ends[k-1] is the snapshot index at which direction k completes,
  /// i.e. the snapshot equal to H_k.
  std::vector<std::size_t> stage_ends;
};

BuildSequence intermediate_sequence(std::size_t d, std::size_t L,
                                    std::size_t vertex_budget = kDefaultVertexBudget);

/// Vertex count of H_k = L_L^k x L_{L-1}^{d-k}.
std::size_t intermediate_size(std::size_t d, std::size_t L, std::size_t k);

/// H_k as a prefix of make_box(d, L).
Graph intermediate_graph(std::size_t d, std::size_t L, std::size_t k);

/// G'(L, k): vertex set V(H_k), keeping only the edges of H_k with at least
/// one endpoint in V(H_{k-1}).
Graph boundary_graph(std::size_t d, std::size_t L, std::size_t k);

// ---- text formats ---------------------------------------------------------

/// graph6 short form (n <= 62).
Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

/// First line "n <count>", then one "u v" per line. '#' starts a comment.
Graph parse_edge_list(std::string_view text);
std::string emit_edge_list(const Graph& g);

// ---- isomorphism classes --------------------------------------------------

inline constexpr std::size_t kMaxCanonicalVertices = 8;

/// Minimum upper-triangle adjacency bit string (graph6 pair order, first pair
/// most significant) over all vertex permutations. Exponential; n <= 8.
std::uint64_t canonical_form(const Graph& g);

/// Relabeling of g that realises its canonical form.
Graph canonical_graph(const Graph& g);

inline constexpr std::size_t kMaxEnumerationVertices = 7;

/// One canonical representative per isomorphism class of connected graphs
/// on n vertices, ordered by canonical form. n <= 7.
std::vector<Graph> enumerate_connected(std::size_t n);

}  // namespace specgap
