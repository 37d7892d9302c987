#ifndef EHC_CORE_HPP
#define EHC_CORE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ehc/rational.hpp"
#include "ehc/tournament.hpp"

namespace ehc {

struct CoreLimits {
  int tr_exact_max = 24;
  int criticality_max = 10;
};

// Unordered pairs {u,v} joined by a backward arc of D under theta, i.e. the
// edge set of B(D, theta).
std::vector<std::pair<int, int>> backward_arc_graph(const PartialDigraph& d,
                                                    const Ordering& theta);
std::vector<std::pair<int, int>> backward_arc_graph(const Tournament& t, const Ordering& theta);

// d(X,Y) = e_{X,Y} / (|X||Y|), exact. X and Y must be disjoint and nonempty.
Rational directed_density(const Tournament& t, VertexMask x, VertexMask y);
int arc_count_between(const Tournament& t, VertexMask x, VertexMask y);

// True iff t restricted to `mask` is transitive (acyclic).
bool is_transitive_subset(const Tournament& t, VertexMask mask);

// Linear order of a transitive vertex subset, sources first.
std::vector<int> transitive_order(const Tournament& t, VertexMask mask);

struct TrResult {
  int size;
  VertexMask witness;
};

// Largest transitive subtournament by branch and bound over chain extension.
// Throws when t.size() exceeds limits.tr_exact_max.
TrResult tr_exact(const Tournament& t, const CoreLimits& limits = {});

// Transitive witness of size >= floor(log2 n) + 1, by recursing into the
// larger of out-/in-neighborhood (ties toward out).
VertexMask ramsey_transitive(const Tournament& t);

// Injective arc-preserving map of h into t: result[i] is the image of h's
// vertex i. Absence means exhaustive search found no embedding.
std::optional<std::vector<int>> contains_subtournament(const Tournament& t, const Tournament& h);

bool is_family_free(const Tournament& t, const std::vector<Tournament>& family);

// tr(T) < n^eps while every proper induced subtournament S has
// tr(S) >= |S|^eps. Comparisons are exact: tr^q vs n^p for eps = p/q.
bool is_epsilon_critical(const Tournament& t, const Rational& eps, const CoreLimits& limits = {});

// a^p >= b^q over big integers (used for the n^eps comparisons).
bool pow_geq(std::uint64_t a, std::uint64_t p, std::uint64_t b, std::uint64_t q);

}  // namespace ehc

#endif
