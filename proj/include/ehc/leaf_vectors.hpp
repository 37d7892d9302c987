#ifndef EHC_LEAF_VECTORS_HPP
#define EHC_LEAF_VECTORS_HPP

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "ehc/recognizers.hpp"
#include "ehc/tournament.hpp"

namespace ehc {

// 0/1 vector aligned to the decomposition ordering: bit i = 1 iff the vertex
// at position i is a leaf of some star or super 2-nebula.
struct LeafVector {
  std::vector<int> bits;
};

// Runs of consecutive 1s collapsed to single 1s; multiplicity maps each
// 1-index of `bits` to the length of the run it replaced.
struct ContractedVector {
  std::vector<int> bits;
  std::map<int, int> multiplicity;
};

LeafVector leaf_vector(const DecompositionWitness& decomp);
ContractedVector contract(const LeafVector& s);

// Restriction of the host structure to its first k super 2-nebulas or its
// first k stars (in part order). `sc` groups consecutive 1s by their source
// run in the full leaf vector, not by adjacency after restriction.
enum class PartSelector { Super2Nebulas, Stars };

struct RestrictedStructure {
  std::vector<int> vertices;  // original labels in ordering position order
  Tournament sub;             // induced subtournament, relabeled 0..k-1
  Ordering sub_ordering;      // ordering of `sub` matching `vertices`
  LeafVector s;
  ContractedVector sc;
};

RestrictedStructure restrict_structure(const Tournament& host, const DecompositionWitness& decomp,
                                       PartSelector selector, int k);

// Triple with exactly two backward arcs, sourced from a star (center plus two
// leaves straddling an R-class boundary) or from super 2-nebula vertex sets.
struct BadTriplet {
  enum class Source { Star, Sigma };
  std::array<int, 3> verts;  // increasing positions
  Source source;
  std::pair<int, int> forward_arc;  // the unique forward arc of the triple
};

struct BadTripletSet {
  std::vector<BadTriplet> triplets;
};

// Requires a regular decomposition into stars and super 2-nebulas only.
BadTripletSet bad_triplets(const Tournament& host, const DecompositionWitness& decomp);

// Host minus the unique forward arc of each bad triplet.
PartialDigraph mutant(const Tournament& host, const DecompositionWitness& decomp);

// The three single-arc reversals of G's triangle. G must be a regular
// one-triangle galaxy-with-triangle under alpha.
std::vector<Tournament> reversal_set(const Tournament& g, const Ordering& alpha);

// Maximal runs of consecutive 1s in `bits`: list of (start, length).
std::vector<std::pair<int, int>> one_runs(const std::vector<int>& bits);

}  // namespace ehc

#endif
