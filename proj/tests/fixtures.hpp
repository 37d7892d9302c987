#ifndef EHC_TESTS_FIXTURES_HPP
#define EHC_TESTS_FIXTURES_HPP

#include <initializer_list>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ehc/recognizers.hpp"
#include "ehc/tournament.hpp"

namespace fx {

// Transitive tournament with the listed arcs reversed (u, v with u > v:
// the backward arc u -> v under the identity ordering).
inline ehc::Tournament with_backward(int n,
                                     const std::vector<std::pair<int, int>>& arcs) {
  ehc::Tournament t = ehc::Tournament::transitive(n);
  for (auto [u, v] : arcs) t.set_arc(u, v);
  return t;
}

// 17-vertex host: two super 2-nebulas {1,15,16,17}-style blocks plus three
// 3-vertex stars, identity ordering. Vertices 0-based.
inline ehc::Tournament host17() {
  return with_backward(17, {{13, 0},
                            {15, 14},
                            {15, 0},  // centers 0 and 15, leaves 13, 14
                            {6, 1},
                            {7, 2},
                            {2, 1},  // centers 1 and 2, leaves 6, 7
                            {4, 3},
                            {5, 3},  // star at 3
                            {10, 8},
                            {11, 8},  // star at 8
                            {12, 9},
                            {16, 9}});  // star at 9
}

// 10-vertex base: one middle super 2-nebula {0,1,2,9} plus stars
// {3,5,8,9->...}: star at 3 with leaves 4,7,8 and star at 5 with leaf 6.
// Exactly four bad triplets.
inline ehc::Tournament base10() {
  return with_backward(10, {{1, 0}, {9, 2}, {9, 0}, {4, 3}, {7, 3}, {8, 3}, {6, 5}});
}

// 7-vertex gadget: star {0,1}, triangle {2,3,4}, star {5,6}.
inline ehc::Tournament gadget7() {
  return with_backward(7, {{1, 0}, {6, 5}, {3, 2}, {4, 3}, {4, 2}});
}

inline ehc::DecompositionWitness recognize_regular(const ehc::Tournament& t, ehc::Grammar g) {
  ehc::RecognizeOptions opt;
  opt.require_regular = true;
  auto w = ehc::recognize_decomposition(t, g, ehc::Ordering::identity(t.size()), opt);
  if (!w) throw std::runtime_error("fixture not recognized");
  return *w;
}

// Small regular super nebulas under the identity ordering.
inline std::vector<ehc::Tournament> small_nebulas() {
  return {
      with_backward(5, {{1, 0}, {3, 0}, {4, 2}}),          // leaves straddle a run boundary
      with_backward(4, {{1, 0}, {3, 2}, {3, 0}}),          // one super 2-nebula alone
      with_backward(6, {{1, 0}, {2, 0}, {4, 3}, {5, 3}}),  // two left stars, no bad triplets
      with_backward(6, {{1, 0}, {3, 0}, {4, 2}, {5, 2}}),
      with_backward(5, {{1, 0}, {2, 1}, {4, 3}}),          // middle star plus a pair
      with_backward(6, {{1, 0}, {3, 2}, {3, 0}, {5, 4}}),  // super 2-nebula plus a pair
      with_backward(5, {{2, 0}, {2, 1}, {4, 3}}),          // right star first
      with_backward(6, {{1, 0}, {2, 0}, {5, 3}, {5, 4}}),
  };
}

// Small regular one-triangle galaxies under the identity ordering.
inline std::vector<ehc::Tournament> small_delta_galaxies() {
  return {
      with_backward(3, {{1, 0}, {2, 1}, {2, 0}}),          // bare triangle
      with_backward(5, {{1, 0}, {3, 2}, {4, 3}, {4, 2}}),  // star then triangle
      with_backward(5, {{1, 0}, {2, 1}, {2, 0}, {4, 3}}),  // triangle then star
  };
}

// Small regular central triangular galaxies with exactly one triangle.
inline std::vector<ehc::Tournament> small_central_tri_galaxies() {
  return {
      with_backward(3, {{1, 0}, {2, 1}, {2, 0}}),
      with_backward(5, {{1, 0}, {3, 2}, {4, 3}, {4, 2}}),
      with_backward(5, {{1, 0}, {2, 1}, {2, 0}, {4, 3}}),
      with_backward(8, {{1, 0}, {2, 0}, {4, 3}, {5, 4}, {5, 3}, {7, 6}}),
      with_backward(7, {{1, 0}, {3, 2}, {4, 2}, {4, 3}, {6, 5}}),
  };
}

// Random regular one-triangle galaxy: consecutive part blocks (stars of size
// 2..3, one triangle) under the identity ordering.
inline ehc::Tournament random_delta_galaxy(std::mt19937_64& rng) {
  int stars = static_cast<int>(rng() % 3);  // 0..2 stars
  std::vector<int> blocks;                  // star sizes; -1 marks the triangle
  for (int i = 0; i < stars; ++i) blocks.push_back(2 + static_cast<int>(rng() % 2));
  blocks.insert(blocks.begin() + static_cast<int>(rng() % (blocks.size() + 1)), -1);
  int n = 0;
  for (int b : blocks) n += b == -1 ? 3 : b;
  ehc::Tournament t = ehc::Tournament::transitive(n);
  int at = 0;
  for (int b : blocks) {
    if (b == -1) {
      t.set_arc(at + 1, at);
      t.set_arc(at + 2, at + 1);
      t.set_arc(at + 2, at);
      at += 3;
      continue;
    }
    bool center_first = rng() & 1;
    int c = center_first ? at : at + b - 1;
    for (int v = at; v < at + b; ++v)
      if (v != c) t.set_arc(std::max(c, v), std::min(c, v));
    at += b;
  }
  return t;
}

}  // namespace fx

#endif
