#include "lattopt/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <unordered_set>

#include "lattopt/errors.hpp"

namespace lattopt {

namespace {
std::atomic<std::uint32_t> next_lattice_id{1};
}

Lattice::Lattice(std::size_t words, std::optional<std::uint32_t> reuse_id)
    : id_(reuse_id ? *reuse_id : next_lattice_id.fetch_add(1)), words_(words) {}

NodeRef Lattice::mint(std::vector<std::uint64_t> words) const {
  return NodeRef{id_, std::move(words)};
}

void Lattice::check_node(const NodeRef& n) const {
  if (n.lattice != id_ || n.words.size() != words_) {
    throw ContractViolation("node does not belong to this lattice");
  }
}

std::optional<std::vector<NodeRef>> enumerate_nodes(const Lattice& l, std::size_t limit) {
  std::unordered_set<NodeRef, NodeRefHash> seen;
  std::deque<NodeRef> frontier;
  NodeRef bot = l.bottom();
  seen.insert(bot);
  frontier.push_back(std::move(bot));
  while (!frontier.empty()) {
    NodeRef cur = std::move(frontier.front());
    frontier.pop_front();
    for (NodeRef& s : l.successors(cur)) {
      if (seen.contains(s)) continue;
      if (seen.size() >= limit) return std::nullopt;
      seen.insert(s);
      frontier.push_back(std::move(s));
    }
  }
  std::vector<NodeRef> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lattopt
