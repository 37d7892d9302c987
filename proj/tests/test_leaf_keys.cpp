#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ehc/keys.hpp"
#include "ehc/leaf_vectors.hpp"
#include "fixtures.hpp"

using namespace ehc;

TEST_CASE("leaf vector and contraction of the 17-vertex host") {
  Tournament t = fx::host17();
  auto w = fx::recognize_regular(t, Grammar::SuperNebula);

  LeafVector s = leaf_vector(w);
  CHECK(s.bits == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1});

  ContractedVector sc = contract(s);
  CHECK(sc.bits == std::vector<int>{0, 0, 0, 0, 1, 0, 0, 1, 0, 1});
  CHECK(sc.multiplicity == std::map<int, int>{{4, 4}, {7, 5}, {9, 1}});
}

TEST_CASE("restrictions group contracted runs by source run") {
  Tournament t = fx::host17();
  auto w = fx::recognize_regular(t, Grammar::SuperNebula);

  RestrictedStructure sig = restrict_structure(t, w, PartSelector::Super2Nebulas, 2);
  CHECK(sig.vertices == std::vector<int>{0, 1, 2, 6, 7, 13, 14, 15});
  CHECK(sig.s.bits == std::vector<int>{0, 0, 0, 1, 1, 1, 1, 0});
  CHECK(sig.sc.bits == std::vector<int>{0, 0, 0, 1, 1, 0});
  CHECK(sig.sc.multiplicity == std::map<int, int>{{3, 2}, {4, 2}});

  RestrictedStructure st = restrict_structure(t, w, PartSelector::Stars, 3);
  CHECK(st.vertices == std::vector<int>{3, 4, 5, 8, 9, 10, 11, 12, 16});
  CHECK(st.s.bits == std::vector<int>{0, 1, 1, 0, 0, 1, 1, 1, 1});
  CHECK(st.sc.bits == std::vector<int>{0, 1, 0, 0, 1, 1});
  CHECK(st.sc.multiplicity == std::map<int, int>{{1, 2}, {4, 3}, {5, 1}});
}

TEST_CASE("bad triplets of the 10-vertex base") {
  Tournament t = fx::base10();
  auto w = fx::recognize_regular(t, Grammar::SuperNebula);
  auto bts = bad_triplets(t, w).triplets;
  REQUIRE(bts.size() == 4);
  std::set<std::array<int, 3>> got;
  for (const auto& b : bts) got.insert(b.verts);
  CHECK(got == std::set<std::array<int, 3>>{
                   {0, 1, 9}, {0, 2, 9}, {3, 4, 7}, {3, 4, 8}});
  for (const auto& b : bts) {
    int back = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (t.has_arc(b.verts[j], b.verts[i])) ++back;
    CHECK(back == 2);
    CHECK(t.has_arc(b.forward_arc.first, b.forward_arc.second));
  }

  PartialDigraph mut = mutant(t, w);
  CHECK(mut.arc_count() == 10 * 9 / 2 - 4);
}

TEST_CASE("reversal set flips exactly one triangle arc") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    Tournament g = fx::random_delta_galaxy(rng);
    auto rs = reversal_set(g, Ordering::identity(g.size()));
    REQUIRE(rs.size() == 3);
    auto tris = find_triangles_under(g, Ordering::identity(g.size()));
    REQUIRE(tris.size() == 1);
    VertexMask tri = tris[0].vertices();
    for (const Tournament& r : rs) {
      int diff = 0;
      for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
          if (g.has_arc(u, v) != r.has_arc(u, v)) {
            ++diff;
            CHECK(((tri >> u) & 1));
            CHECK(((tri >> v) & 1));
          }
      CHECK(diff == 1);
    }
  }
}

TEST_CASE("key construction on the 10+7 fixture") {
  Tournament n = fx::base10();
  Tournament g = fx::gadget7();
  auto nd = fx::recognize_regular(n, Grammar::SuperNebula);
  KeyTournament key = build_key(n, nd, g, Ordering::identity(7));
  CHECK(key.K.size() == 26);
  CHECK(key.gadgets.size() == 4);
  KeyReport rep = verify_key(key, n, nd, g, Ordering::identity(7));
  for (int b = 0; b < 6; ++b) CHECK(rep.bullets[b]);
}

TEST_CASE("every mutant completion of a small key contains the base or the gadget") {
  int pairs = 0;
  for (const Tournament& n : fx::small_nebulas())
    for (const Tournament& g : fx::small_delta_galaxies()) {
      if (n.size() > 6 || g.size() > 5) continue;
      ++pairs;
      auto nd = fx::recognize_regular(n, Grammar::SuperNebula);
      KeyTournament key = build_key(n, nd, g, Ordering::identity(g.size()));
      PartialDigraph mut(key.K);
      for (auto [u, v] : key.removed_arcs) mut.remove_arc(u, v);
      for (const Tournament& comp : completions(mut)) {
        bool has_n = contains_subtournament(comp, n).has_value();
        bool has_g = contains_subtournament(comp, g).has_value();
        CHECK((has_n || has_g));
      }
    }
  CHECK(pairs >= 12);
}

TEST_CASE("six-vertex reduction undoes the gk6 key") {
  for (const Tournament& h : fx::small_central_tri_galaxies()) {
    auto hd = fx::recognize_regular(h, Grammar::CentralTriangularGalaxy);
    KeyTournament key = build_key_GK6(h, hd);
    CHECK(key.K.size() == h.size() + 3);
    auto [reduced, order] = reduce_all_K6(key.K, key.ordering);
    CHECK(reduced == h);
    CHECK(order == Ordering::identity(h.size()));

    PartialDigraph mut(key.K);
    for (auto [u, v] : key.removed_arcs) mut.remove_arc(u, v);
    for (const Tournament& comp : completions(mut)) {
      bool has_h = contains_subtournament(comp, h).has_value();
      bool has_k6 = contains_subtournament(comp, Tournament::canonical_k6()).has_value();
      CHECK((has_h || has_k6));
    }
  }
}

TEST_CASE("mutant requires a regular decomposition") {
  Tournament t = Tournament::transitive(4);
  auto w = recognize_decomposition(t, Grammar::Galaxy, Ordering::identity(4));
  REQUIRE(w);
  CHECK_THROWS(bad_triplets(t, *w));  // singletons: extend to a regular superstructure first
}
