#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lattopt/label.hpp"
#include "lattopt/node.hpp"
#include "lattopt/rng.hpp"
#include "lattopt/score.hpp"

namespace lattopt {

// Node counts are exact big integers; symbolic lattices can be far larger
// than any machine word.
using BigCount = BigInt;

// Finite complete lattice with labeled nodes. Implementations are immutable
// after construction and safe for concurrent reads. Wrappers that reuse the
// carrier of another lattice (inversion) share its id, so node handles
// remain interchangeable between the two views.
class Lattice {
 public:
  virtual ~Lattice() = default;

  Lattice(const Lattice&) = delete;
  Lattice& operator=(const Lattice&) = delete;

  std::uint32_t id() const { return id_; }
  std::size_t node_words() const { return words_; }

  virtual NodeRef bottom() const = 0;
  virtual NodeRef top() const = 0;

  // a ⊑ b
  virtual bool order(const NodeRef& a, const NodeRef& b) const = 0;
  virtual NodeRef join(const NodeRef& a, const NodeRef& b) const = 0;
  virtual NodeRef meet(const NodeRef& a, const NodeRef& b) const = 0;

  // Exactly the covers of a (b with a ⊏ b and nothing strictly between),
  // in a deterministic per-family order.
  virtual std::vector<NodeRef> successors(const NodeRef& a) const = 0;
  virtual std::vector<NodeRef> predecessors(const NodeRef& a) const = 0;

  virtual Label label(const NodeRef& a) const = 0;
  // Family default objective; monotone in the lattice order.
  virtual Score default_score(const NodeRef& a) const = 0;
  virtual BigCount node_count() const = 0;

  // Minimal x with base ⊑ x and not (x ⊑ cap). Empty iff every x ⊒ base
  // satisfies x ⊑ cap.
  virtual std::vector<NodeRef> covering_differences(const NodeRef& base,
                                                    const NodeRef& cap) const = 0;
  // Dual: maximal x with x ⊑ base and not (cap ⊑ x).
  virtual std::vector<NodeRef> co_covering_differences(const NodeRef& base,
                                                       const NodeRef& cap) const = 0;

  virtual NodeRef random_node(SeededRng& rng) const = 0;

  // Throws ContractViolation for nodes minted by another lattice.
  void check_node(const NodeRef& n) const;

 protected:
  explicit Lattice(std::size_t words,
                   std::optional<std::uint32_t> reuse_id = std::nullopt);

  NodeRef mint(std::vector<std::uint64_t> words) const;

 private:
  std::uint32_t id_;
  std::size_t words_;
};

// Breadth-first enumeration from bottom via successors. Returns all nodes in
// canonical order, or nullopt once more than `limit` nodes are reached.
std::optional<std::vector<NodeRef>> enumerate_nodes(const Lattice& l, std::size_t limit);

}  // namespace lattopt
