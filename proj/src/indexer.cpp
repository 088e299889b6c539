#include "specgap/indexer.hpp"

#include <bit>
#include <string>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

constexpr std::size_t kBinomialRows = 33;

struct BinomialTable {
  std::uint64_t c[kBinomialRows][kBinomialRows]{};
  constexpr BinomialTable() {
    for (std::size_t n = 0; n < kBinomialRows; ++n) {
      c[n][0] = 1;
      for (std::size_t k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
  }
};

constexpr BinomialTable kBinomials{};

constexpr std::uint64_t kFactorials[] = {1,         1,          2,           6,
                                         24,        120,        720,         5040,
                                         40320,     362880,     3628800,     39916800,
                                         479001600, 6227020800, 87178291200, 1307674368000};

}  // namespace

const char* to_string(StateKind kind) {
  switch (kind) {
    case StateKind::vertex:
      return "vertex";
    case StateKind::permutation:
      return "permutation";
    case StateKind::subset:
      return "subset";
  }
  return "?";
}

std::uint64_t factorial(std::size_t n) {
  if (n >= std::size(kFactorials)) throw InvalidArgument("factorial table exhausted");
  return kFactorials[n];
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (n >= kBinomialRows) throw InvalidArgument("binomial table exhausted");
  return kBinomials.c[n][k];
}

std::size_t rank_permutation(std::span<const std::uint8_t> perm) {
  const std::size_t n = perm.size();
  std::uint32_t remaining = (n >= 32) ? ~0u : ((1u << n) - 1);
  std::size_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t below = remaining & ((1u << perm[i]) - 1);
    index = index * (n - i) + static_cast<std::size_t>(std::popcount(below));
    remaining &= ~(1u << perm[i]);
  }
  return index;
}

void unrank_permutation(std::size_t index, std::span<std::uint8_t> perm) {
  const std::size_t n = perm.size();
  // Digits of the factorial number system, most significant first.
  std::array<std::uint8_t, kMaxIndexedVertices> digits{};
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t base = n - i;
    digits[i] = static_cast<std::uint8_t>(index % base);
    index /= base;
  }
  std::uint32_t remaining = (1u << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t m = remaining;
    for (std::size_t skip = digits[i]; skip > 0; --skip) m &= m - 1;
    const auto value = static_cast<std::uint8_t>(std::countr_zero(m));
    perm[i] = value;
    remaining &= ~(1u << value);
  }
}

std::size_t rank_subset(std::uint32_t mask) {
  std::size_t index = 0;
  std::size_t i = 0;
  while (mask != 0) {
    const auto c = static_cast<std::size_t>(std::countr_zero(mask));
    index += kBinomials.c[c][i + 1];
    ++i;
    mask &= mask - 1;
  }
  return index;
}

std::uint32_t unrank_subset(std::size_t index, std::size_t m) {
  std::uint32_t mask = 0;
  for (std::size_t i = m; i > 0; --i) {
    // Largest c with C(c, i) <= index.
    std::size_t c = i - 1;
    while (c + 1 < kBinomialRows && kBinomials.c[c + 1][i] <= index) ++c;
    index -= kBinomials.c[c][i];
    mask |= 1u << c;
  }
  return mask;
}

StateIndexer StateIndexer::vertices(std::size_t n) {
  if (n == 0) throw InvalidArgument("state space needs at least one vertex");
  return StateIndexer(StateKind::vertex, n, 1, n);
}

StateIndexer StateIndexer::permutations(std::size_t n) {
  if (n == 0 || n > kMaxIndexedVertices)
    throw InvalidArgument("permutation states need 1.." + std::to_string(kMaxIndexedVertices) + " vertices");
  return StateIndexer(StateKind::permutation, n, n, factorial(n));
}

StateIndexer StateIndexer::subsets(std::size_t n, std::size_t m) {
  if (n == 0 || n > kMaxIndexedVertices)
    throw InvalidArgument("subset states need 1.." + std::to_string(kMaxIndexedVertices) + " vertices");
  if (m > n) throw InvalidArgument("more particles than vertices");
  return StateIndexer(StateKind::subset, n, m, binomial(n, m));
}

std::size_t StateIndexer::state_length() const {
  switch (kind_) {
    case StateKind::vertex:
      return 1;
    case StateKind::permutation:
      return n_;
    case StateKind::subset:
      return m_;
  }
  return 0;
}

std::size_t StateIndexer::rank(std::span<const std::uint8_t> state) const {
  if (state.size() != state_length()) throw InvalidArgument("state has the wrong length");
  switch (kind_) {
    case StateKind::vertex:
      if (state[0] >= n_) throw InvalidArgument("vertex out of range");
      return state[0];
    case StateKind::permutation: {
      std::uint32_t seen = 0;
      for (auto v : state) {
        if (v >= n_ || (seen & (1u << v))) throw InvalidArgument("not a permutation");
        seen |= 1u << v;
      }
      return rank_permutation(state);
    }
    case StateKind::subset: {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i] >= n_ || (i > 0 && state[i] <= state[i - 1]))
          throw InvalidArgument("subset state must be strictly increasing vertices");
        mask |= 1u << state[i];
      }
      return rank_subset(mask);
    }
  }
  return 0;
}

void StateIndexer::unrank(std::size_t index, std::span<std::uint8_t> state) const {
  if (index >= size_) throw InvalidArgument("state index out of range");
  if (state.size() != state_length()) throw InvalidArgument("state has the wrong length");
  switch (kind_) {
    case StateKind::vertex:
      state[0] = static_cast<std::uint8_t>(index);
      return;
    case StateKind::permutation:
      unrank_permutation(index, state);
      return;
    case StateKind::subset: {
      std::uint32_t mask = unrank_subset(index, m_);
      for (std::size_t i = 0; i < m_; ++i) {
        state[i] = static_cast<std::uint8_t>(std::countr_zero(mask));
        mask &= mask - 1;
      }
      return;
    }
  }
}

std::vector<std::uint8_t> StateIndexer::unrank(std::size_t index) const {
  std::vector<std::uint8_t> state(state_length());
  unrank(index, state);
  return state;
}

}  // namespace specgap
