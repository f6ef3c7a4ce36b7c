#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lattopt {

// Opaque per-lattice node handle. `words` is the family-specific encoding:
// a bit vector for powersets, a packed index pair for intervals, the
// concatenation of the component encodings for products. It is meaningful
// only to the lattice identified by `lattice`.
struct NodeRef {
  std::uint32_t lattice = 0;
  std::vector<std::uint64_t> words;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
  // Lexicographic; used as the canonical output order.
  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

struct NodeRefHash {
  std::size_t operator()(const NodeRef& n) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ n.lattice;
    for (std::uint64_t w : n.words) {
      h ^= w;
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace lattopt
