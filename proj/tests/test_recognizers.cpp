#include <doctest.h>

#include <random>

#include "ehc/recognizers.hpp"
#include "fixtures.hpp"

using namespace ehc;

TEST_CASE("star segment classification") {
  Tournament t = fx::with_backward(4, {{1, 0}, {2, 0}, {3, 0}});
  auto s = classify_star_segment(t, Ordering::identity(4), bit(0) | bit(1) | bit(2) | bit(3));
  REQUIRE(s);
  CHECK(s->kind == StarKind::Left);
  CHECK(s->center == 0);
  CHECK(s->leaves == std::vector<int>{1, 2, 3});

  Tournament m = fx::with_backward(3, {{1, 0}, {2, 1}});
  auto ms = classify_star_segment(m, Ordering::identity(3), bit(0) | bit(1) | bit(2));
  REQUIRE(ms);
  CHECK(ms->kind == StarKind::Middle);
  CHECK(ms->center == 1);

  // Two backward arcs that do not share a hub: not a star.
  Tournament bad = fx::with_backward(4, {{1, 0}, {3, 2}});
  CHECK(!classify_star_segment(bad, Ordering::identity(4), bit(0) | bit(1) | bit(2) | bit(3)));
}

TEST_CASE("two-vertex star center flag") {
  Tournament t = fx::with_backward(2, {{1, 0}});
  auto right = classify_star_segment(t, Ordering::identity(2), bit(0) | bit(1), true);
  auto left = classify_star_segment(t, Ordering::identity(2), bit(0) | bit(1), false);
  REQUIRE(right);
  REQUIRE(left);
  CHECK(right->kind == StarKind::Right);
  CHECK(right->center == 1);
  CHECK(left->kind == StarKind::Left);
  CHECK(left->center == 0);
}

TEST_CASE("super 2-nebula kinds") {
  // Middle: leaves inside the center pair.
  Tournament mid = fx::with_backward(4, {{1, 0}, {3, 2}, {3, 0}});
  auto w = recognize_super_2_nebula(mid, Ordering::identity(4));
  REQUIRE(w);
  CHECK(w->kind == Super2Kind::Middle);
  CHECK(w->center1 == 0);
  CHECK(w->center2 == 3);

  // Right: all leaves after both centers.
  Tournament right = fx::with_backward(4, {{2, 0}, {3, 1}, {1, 0}});
  auto wr = recognize_super_2_nebula(right, Ordering::identity(4));
  REQUIRE(wr);
  CHECK(wr->kind == Super2Kind::Right);

  // Left: all leaves before both centers.
  Tournament left = fx::with_backward(4, {{2, 0}, {3, 1}, {3, 2}});
  auto wl = recognize_super_2_nebula(left, Ordering::identity(4));
  REQUIRE(wl);
  CHECK(wl->kind == Super2Kind::Left);
}

TEST_CASE("triangles under an ordering") {
  Tournament g = fx::gadget7();
  auto tris = find_triangles_under(g, Ordering::identity(7));
  REQUIRE(tris.size() == 1);
  CHECK(tris[0].left_exterior == 2);
  CHECK(tris[0].center == 3);
  CHECK(tris[0].right_exterior == 4);
}

TEST_CASE("canonical six-vertex pattern") {
  Tournament k6 = Tournament::canonical_k6();
  CHECK(is_canonical_K6(k6, Ordering::identity(6)));
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v)
      if (k6.has_arc(u, v)) {
        Tournament flipped = k6;
        flipped.flip_arc(u, v);
        CHECK(!is_canonical_K6(flipped, Ordering::identity(6)));
      }
  auto insts = find_K6_instances(k6, Ordering::identity(6));
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].verts == std::array<int, 6>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("recognized witnesses always pass the evaluator") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Tournament t = Tournament::random(2 + static_cast<int>(rng() % 5), rng);
    for (Grammar g : {Grammar::Galaxy, Grammar::Nebula, Grammar::SuperNebula,
                      Grammar::DeltaGalaxy, Grammar::SigmaGalaxy}) {
      auto w = recognize_decomposition(t, g, Ordering::identity(t.size()));
      if (w) CHECK(check_decomposition(t, *w).empty());
    }
  }
}

TEST_CASE("grammar containment: galaxy implies nebula implies super nebula") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Tournament t = Tournament::random(2 + static_cast<int>(rng() % 5), rng);
    Ordering theta = Ordering::identity(t.size());
    bool galaxy = recognize_decomposition(t, Grammar::Galaxy, theta).has_value();
    bool nebula = recognize_decomposition(t, Grammar::Nebula, theta).has_value();
    bool super_nebula = recognize_decomposition(t, Grammar::SuperNebula, theta).has_value();
    if (galaxy) CHECK(nebula);
    if (nebula) CHECK(super_nebula);
  }
}

TEST_CASE("transitive tournaments decompose into singletons where admitted") {
  Tournament t = Tournament::transitive(5);
  auto w = recognize_decomposition(t, Grammar::Galaxy, Ordering::identity(5));
  REQUIRE(w);
  CHECK(w->parts.empty());
  CHECK(w->singletons.size() == 5);
  RecognizeOptions opt;
  opt.require_regular = true;
  CHECK(!recognize_decomposition(t, Grammar::Galaxy, Ordering::identity(5), opt));
}

TEST_CASE("host17 decomposes as a regular super nebula") {
  Tournament t = fx::host17();
  auto w = fx::recognize_regular(t, Grammar::SuperNebula);
  CHECK(check_decomposition(t, w).empty());
  int sigmas = 0, stars = 0;
  for (const auto& p : w.parts) {
    sigmas += p.kind == Part::Kind::Super2Nebula;
    stars += p.kind == Part::Kind::Star;
  }
  CHECK(sigmas == 2);
  CHECK(stars == 3);
}

TEST_CASE("evaluator rejects corrupted witnesses") {
  Tournament t = fx::base10();
  auto w = fx::recognize_regular(t, Grammar::SuperNebula);
  CHECK(check_decomposition(t, w).empty());
  DecompositionWitness broken = w;
  broken.singletons.push_back(0);  // now covered twice
  CHECK(!check_decomposition(t, broken).empty());
  DecompositionWitness wrong_grammar = w;
  wrong_grammar.grammar = Grammar::Galaxy;
  CHECK(!check_decomposition(t, wrong_grammar).empty());  // middle/sigma parts not admitted
}

TEST_CASE("unordered recognition finds a hidden ordering") {
  // A 3-cycle is a galaxy under the ordering that makes one arc backward.
  auto w = recognize_decomposition(Tournament::three_cycle(), Grammar::Galaxy, std::nullopt);
  REQUIRE(w);
  CHECK(check_decomposition(Tournament::three_cycle(), *w).empty());
}

TEST_CASE("gk6 grammar recognizes a lone canonical block") {
  Tournament k6 = Tournament::canonical_k6();
  auto w = recognize_decomposition(k6, Grammar::GK6, Ordering::identity(6));
  REQUIRE(w);
  REQUIRE(w->parts.size() == 1);
  CHECK(w->parts[0].kind == Part::Kind::K6);
}
