#ifndef EHC_KEYS_HPP
#define EHC_KEYS_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ehc/leaf_vectors.hpp"
#include "ehc/recognizers.hpp"
#include "ehc/tournament.hpp"

namespace ehc {

// A key tournament: the base structure with one gadget inserted per bad
// triplet (or per triangle, for the K6 flavor). Vertices are labeled by
// position, so `ordering` is the identity.
struct KeyTournament {
  enum class Flavor { NebulaGalaxy, GK6 };
  Flavor flavor;
  Tournament K;
  Ordering ordering;
  std::vector<int> base_vertices;  // K ids of the base copy, in base-ordering order
  struct Gadget {
    std::array<int, 3> triplet;  // K ids: bad triplet, or surviving triangle
    std::vector<int> vertices;   // inserted K ids in position order
  };
  std::vector<Gadget> gadgets;
  // Arcs whose orientation the containment argument treats as unknown: the
  // unique forward arc of each bad triplet (NebulaGalaxy), or the two
  // center-to-interior arcs of each K6 gadget (GK6).
  std::vector<std::pair<int, int>> removed_arcs;
  DecompositionWitness decomp;  // super-nebula (resp. GK6) witness for K
};

struct KeyReport {
  std::array<bool, 6> bullets{};
  std::vector<std::string> notes;
  bool ok() const {
    for (bool b : bullets)
      if (!b) return false;
    return true;
  }
};

// Inserts one copy of g-minus-triangle per bad triplet of the base structure,
// placing gadget segments at the leftmost positions that keep the backward
// structure of the base intact. Throws with a bullet report if no placement
// works.
KeyTournament build_key(const Tournament& n_host, const DecompositionWitness& n_decomp,
                        const Tournament& g, const Ordering& alpha);

// Re-checks each defining property of the construction independently.
KeyReport verify_key(const KeyTournament& key, const Tournament& n_host,
                     const DecompositionWitness& n_decomp, const Tournament& g,
                     const Ordering& alpha);

// Deletes the 2nd, 3rd and 5th vertex of the instance and reverses the arc
// between its 4th and 6th vertex; returns the reduced tournament (relabeled
// 0..k-1) with the induced ordering.
std::pair<Tournament, Ordering> operation_K6(const Tournament& t, const Ordering& beta,
                                             const K6Witness& inst);

// Replaces every triangle of the host by a six-vertex block in canonical
// order whose surviving triple is the original triangle.
KeyTournament build_key_GK6(const Tournament& h, const DecompositionWitness& h_decomp);

// Applies operation_K6 to the last instance repeatedly until none remain.
std::pair<Tournament, Ordering> reduce_all_K6(const Tournament& t, const Ordering& beta);

// All tournaments obtained by orienting every missing pair of `partial`.
std::vector<Tournament> completions(const PartialDigraph& partial);

// True iff the two tournaments agree position-by-position under the given
// orderings.
bool equal_under(const Tournament& a, const Ordering& oa, const Tournament& b, const Ordering& ob);

}  // namespace ehc

#endif
