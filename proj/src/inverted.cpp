#include "lattopt/inverted.hpp"

namespace lattopt {

InvertedLattice::InvertedLattice(std::shared_ptr<const Lattice> inner)
    : Lattice(inner->node_words(), inner->id()), inner_(std::move(inner)) {}

std::shared_ptr<const InvertedLattice> inverted(std::shared_ptr<const Lattice> inner) {
  return std::make_shared<const InvertedLattice>(std::move(inner));
}

}  // namespace lattopt
