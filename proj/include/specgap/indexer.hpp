#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace specgap {

/// Largest vertex count for which permutation / subset states are supported.
inline constexpr std::size_t kMaxIndexedVertices = 12;

enum class StateKind { vertex, permutation, subset };

const char* to_string(StateKind kind);

/// Fixed-capacity state buffer; entries past the state's length are unused.
using StateBuffer = std::array<std::uint8_t, kMaxIndexedVertices>;

/// Bijection between the states of a process and 0..size()-1.
///
/// - vertex:      a single vertex v, rank = v.
/// - permutation: pi with pi[i] = vertex holding particle i, ranked by its
///                Lehmer code (factorial number system, lexicographic).
/// - subset:      the sorted occupied set c_0 < ... < c_{m-1}, ranked by the
///                combinatorial number system sum C(c_i, i + 1).
class StateIndexer {
 public:
  static StateIndexer vertices(std::size_t n);
  static StateIndexer permutations(std::size_t n);
  static StateIndexer subsets(std::size_t n, std::size_t m);

  StateKind kind() const { return kind_; }
  /// Number of vertices of the underlying graph.
  std::size_t vertex_count() const { return n_; }
  /// Particle count for subsets, n for permutations, 1 for vertices.
  std::size_t particles() const { return m_; }
  std::size_t size() const { return size_; }
  /// Length of the state tuple.
  std::size_t state_length() const;

  std::size_t rank(std::span<const std::uint8_t> state) const;
  void unrank(std::size_t index, std::span<std::uint8_t> state) const;
  std::vector<std::uint8_t> unrank(std::size_t index) const;

 private:
  StateIndexer(StateKind kind, std::size_t n, std::size_t m, std::size_t size)
      : kind_(kind), n_(n), m_(m), size_(size) {}

  StateKind kind_ = StateKind::vertex;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t size_ = 0;
};

std::uint64_t factorial(std::size_t n);
std::uint64_t binomial(std::size_t n, std::size_t k);

/// Lehmer rank of a permutation of 0..n-1.
std::size_t rank_permutation(std::span<const std::uint8_t> perm);
void unrank_permutation(std::size_t index, std::span<std::uint8_t> perm);

/// Combinadic rank of a bitmask with the given popcount.
std::size_t rank_subset(std::uint32_t mask);
std::uint32_t unrank_subset(std::size_t index, std::size_t m);

}  // namespace specgap
