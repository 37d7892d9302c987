#ifndef EHC_RECOGNIZERS_HPP
#define EHC_RECOGNIZERS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ehc/core.hpp"
#include "ehc/tournament.hpp"

namespace ehc {

enum class StarKind { Left, Right, Middle };
enum class Super2Kind { Left, Middle, Right };

// A star of T under theta: backward arcs are exactly the pairs joining the
// center to its leaves.
struct StarWitness {
  StarKind kind;
  int center;
  std::vector<int> leaves;  // increasing position order
  VertexMask vertices() const { return vector_to_mask(leaves) | bit(center); }
  bool frontier() const { return kind != StarKind::Middle; }
};

// Two frontier stars with the arc joining their centers reversed; the kind is
// the contracted intrinsic leaf vector: left (1,0,0), middle (0,1,0),
// right (0,0,1).
struct Super2Witness {
  Super2Kind kind;
  int center1, center2;             // center1 earlier under theta
  std::vector<int> leaves1, leaves2;  // incident to center1 / center2
  VertexMask vertices() const {
    return vector_to_mask(leaves1) | vector_to_mask(leaves2) | bit(center1) | bit(center2);
  }
  // All leaves in increasing position order; pos_of_vertex maps vertex -> position.
  std::vector<int> all_leaves(const std::vector<int>& pos_of_vertex) const;
};

// Three pairwise-backward vertices; all-backward forces the reversed
// transitive pattern.
struct TriangleWitness {
  int left_exterior, center, right_exterior;  // increasing positions
  VertexMask vertices() const { return bit(left_exterior) | bit(center) | bit(right_exterior); }
};

// Canonically ordered six-vertex block at consecutive-pair positions
// i2=i1+1, i4=i3+1, i6=i5+1; centers are verts[0] and verts[5].
struct K6Witness {
  std::array<int, 6> verts;  // increasing positions
  VertexMask vertices() const {
    VertexMask m = 0;
    for (int v : verts) m |= bit(v);
    return m;
  }
};

struct Part {
  enum class Kind { Star, Super2Nebula, Triangle, K6 };
  Kind kind;
  StarWitness star{};
  Super2Witness sigma{};
  TriangleWitness triangle{};
  K6Witness k6{};

  VertexMask vertices() const;
  int first_position(const std::vector<int>& pos_of_vertex) const;
};

enum class Grammar {
  Galaxy,
  Nebula,
  SuperNebula,
  SuperLeftNebula,
  SuperRightNebula,
  TriangularGalaxy,
  CentralTriangularGalaxy,
  RightTriangularGalaxy,
  LeftTriangularGalaxy,
  DeltaGalaxy,
  LRDeltaGalaxy,
  CRDeltaGalaxy,
  CLDeltaGalaxy,
  SigmaGalaxy,
  MiddleSigmaGalaxy,
  LeftSigmaGalaxy,
  RightSigmaGalaxy,
  GK6,
};

Grammar grammar_from_tag(const std::string& tag);
std::string grammar_tag(Grammar g);

struct DecompositionWitness {
  Grammar grammar;
  Ordering ordering;
  std::vector<Part> parts;     // sorted by first position
  std::vector<int> singletons;
};

struct RecognizeOptions {
  bool require_regular = false;       // reject decompositions with singletons
  bool two_vertex_center_right = true;
  int unordered_budget = 10;          // max n for the all-orderings search
};

// Star pattern match on a vertex subset; for 2-vertex segments the center is
// picked by the flag.
std::optional<StarWitness> classify_star_segment(const Tournament& t, const Ordering& theta,
                                                 VertexMask segment,
                                                 bool two_vertex_center_right = true);

std::optional<Super2Witness> classify_super2_segment(const Tournament& t, const Ordering& theta,
                                                     VertexMask segment);

// Whole-tournament super 2-nebula recognition under theta.
std::optional<Super2Witness> recognize_super_2_nebula(const Tournament& t, const Ordering& theta);

std::vector<TriangleWitness> find_triangles_under(const Tournament& t, const Ordering& theta);

std::vector<K6Witness> find_K6_instances(const Tournament& t, const Ordering& beta);

bool is_canonical_K6(const Tournament& t, const Ordering& ordering);

std::optional<DecompositionWitness> recognize_decomposition(const Tournament& t, Grammar grammar,
                                                            const std::optional<Ordering>& theta,
                                                            const RecognizeOptions& opt = {});

// Independent evaluator: re-derives the backward-arc graph and re-checks
// every grammar clause from scratch. Returns the list of violations (empty
// means the witness is valid).
std::vector<std::string> check_decomposition(const Tournament& t,
                                             const DecompositionWitness& witness);

// Connected components of B(T, theta) with at least one edge, plus isolated
// vertices, as masks.
struct BackwardComponents {
  std::vector<VertexMask> components;  // non-singleton, by first position
  std::vector<int> isolated;
};
BackwardComponents backward_components(const Tournament& t, const Ordering& theta);

std::string witness_to_json(const DecompositionWitness& w);

}  // namespace ehc

#endif
