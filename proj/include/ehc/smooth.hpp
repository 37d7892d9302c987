#ifndef EHC_SMOOTH_HPP
#define EHC_SMOOTH_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ehc/core.hpp"
#include "ehc/keys.hpp"
#include "ehc/rational.hpp"
#include "ehc/tournament.hpp"

namespace ehc {

// Ordered disjoint vertex sets, one per w entry: w_i = 0 demands |S_i| >= c*n
// (a linear set), w_i = 1 demands a transitive S_i with |S_i| >= c*tr(host)
// (a transitive set). Smoothness: every vertex of an earlier set dominates a
// (1-lambda)-fraction of every later set, and symmetrically.
struct SmoothStructure {
  std::vector<VertexMask> sets;
  std::vector<int> w;
  Rational c;
  Rational lambda;
};

struct SmoothReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks all three defining families with exact rational comparisons.
SmoothReport verify_smooth(const Tournament& host, const SmoothStructure& chi,
                           const CoreLimits& limits = {});

struct IntersectionBound {
  VertexMask intersection;
  bool holds;
};

// For external vertices A = {x_1,...,x_k} and star ⊆ S_j with
// |star| >= gamma*|S_j|: intersection of the star_{j,x} slices, where the
// slice of x in an earlier set keeps vertices of star beaten by x, and the
// slice of x in a later set keeps vertices of star beating x. Asserts
// |intersection| >= (1 - k*lambda/gamma)*|star|.
IntersectionBound check_intersection_bound(const Tournament& host, const SmoothStructure& chi,
                                           int j, VertexMask star, const Rational& gamma,
                                           const std::vector<int>& a);

// Best-effort search: block cuts along a degree-sorted order, then an
// exhaustive assignment sweep for small hosts. Absence is "not found within
// budget", never a proof of non-existence.
std::optional<SmoothStructure> find_smooth(const Tournament& host, const Rational& c,
                                           const Rational& lambda, const std::vector<int>& w,
                                           const CoreLimits& limits = {});

// Vertex labels for embedding targets. delta maps each index i with w_i = 1
// to a positive block count; S_i splits into delta(i) consecutive blocks of
// floor(|S_i|/delta(i)) vertices along its transitive order, leftovers
// unlabeled. A w_i = 0 set forms a single block. Block j of set i gets label
// (#zero entries before i) + (sum of delta over earlier one entries) + j.
struct XiLabeling {
  std::map<int, int> label;                     // vertex -> label; unlabeled omitted
  std::vector<std::vector<std::vector<int>>> blocks;  // blocks[i] = blocks of S_{i+1}
};

XiLabeling xi_labels(const Tournament& host, const SmoothStructure& chi,
                     const std::map<int, int>& delta);

// f[v] = host image of source vertex v. The j-th source vertex in
// source_order (1-based) must land on a host vertex labeled
// expected_labels[j-1] (default: label j). Checks injectivity, preservation
// of every source arc, and the label equation.
bool verify_well_contained(const Tournament& host, const SmoothStructure& chi,
                           const std::map<int, int>& delta, const PartialDigraph& source,
                           const Ordering& source_order, const std::vector<int>& f,
                           const std::vector<int>& expected_labels = {},
                           std::vector<std::string>* violations = nullptr);

// Backtracking over source vertices in increasing position; candidates per
// label in block order, first fit. Throws when the node budget runs out.
std::optional<std::vector<int>> find_well_contained(const Tournament& host,
                                                    const SmoothStructure& chi,
                                                    const std::map<int, int>& delta,
                                                    const PartialDigraph& source,
                                                    const Ordering& source_order,
                                                    const std::vector<int>& expected_labels = {},
                                                    long long budget = 4'000'000);

// Given a host embedding f of the key's mutant (f[v] = host vertex for key
// vertex v), reads off the host orientation of every undetermined arc and
// names the forced containment: the base copy, a gadget copy (one triplet
// plus its inserted block), or a canonical-pattern six-vertex copy. The
// witness lists host vertices in the claimed target's ordering.
struct Outcome {
  enum class Target { Base, Gadget, K6 };
  Target target;
  std::vector<int> witness;
  int gadget_index = -1;  // which gadget fired, for Gadget/K6
};

Outcome extract_outcome(const Tournament& host, const std::vector<int>& f,
                        const KeyTournament& key);

// Exhaustive witness searches for the four density primitives. Absence is a
// value (found = false), not an error.
enum class DensityMode { MatchedPairs, CrossingArc, LinkedVertex, LinkedPair };

struct DensityQuery {
  VertexMask x = 0, y = 0;         // MatchedPairs
  VertexMask a = 0, g = 0;         // CrossingArc: linear set a, transitive set g
  VertexMask a1 = 0, a2 = 0;       // LinkedPair
  std::vector<VertexMask> s_sets;  // LinkedVertex: sets beaten by g; LinkedPair: all sets
  std::vector<VertexMask> p_sets;  // LinkedVertex: sets beating g
  int m = 0;                       // LinkedPair: first m sets must beat x, rest lose to y
};

struct DensityWitness {
  bool found = false;
  std::vector<std::pair<int, int>> pairs;      // MatchedPairs: (x_i, y_i) with y_i -> x_i
  std::pair<int, int> into_a{-1, -1};          // CrossingArc: arc from g-side into a
  std::pair<int, int> out_of_a{-1, -1};        // CrossingArc: arc from a into g-side
  int g = -1, x = -1, y = -1;                  // LinkedVertex / LinkedPair anchors
  std::vector<int> s, p;                       // chosen set representatives
};

DensityWitness density_search(const Tournament& t, DensityMode mode, const DensityQuery& q);

// Named epsilon / lambda bounds used to validate experiment parameters.
struct ThresholdParams {
  Rational c;                       // density constant, in (0,1)
  std::optional<Rational> f;       // transitive fraction for the crossing-arc bound
  std::vector<Rational> fs, ls;    // fractions for the linked-vertex bound
  std::optional<int> t;            // set count for the linked-pair bound
  std::optional<Rational> f_pair;  // fraction for the linked-pair bound
  std::optional<int> delta;        // distinct leaf-run count (lambda bound 1/(2d)^{d+3})
  std::optional<int> h;            // galaxy size (lambda bound 1/(4h)^{h+4})
};

struct NamedBound {
  double value = 0.0;
  bool unbounded = false;              // the formula degenerates to +infinity
  std::optional<Rational> exact;       // set for the lambda bounds
};

std::map<std::string, NamedBound> epsilon_thresholds(const ThresholdParams& p);

}  // namespace ehc

#endif
