#include "ehc/recognizers.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace ehc {

namespace {

// Backward pairs within a position-sorted vertex list, each pair stored
// (earlier, later).
std::vector<std::pair<int, int>> segment_backward_pairs(const Tournament& t,
                                                        const std::vector<int>& vs) {
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (t.has_arc(vs[j], vs[i])) pairs.emplace_back(vs[i], vs[j]);
  return pairs;
}

}  // namespace

std::vector<int> Super2Witness::all_leaves(const std::vector<int>& pos) const {
  std::vector<int> ls = leaves1;
  ls.insert(ls.end(), leaves2.begin(), leaves2.end());
  std::sort(ls.begin(), ls.end(), [&](int a, int b) { return pos[a] < pos[b]; });
  return ls;
}

VertexMask Part::vertices() const {
  switch (kind) {
    case Kind::Star: return star.vertices();
    case Kind::Super2Nebula: return sigma.vertices();
    case Kind::Triangle: return triangle.vertices();
    case Kind::K6: return k6.vertices();
  }
  return 0;
}

int Part::first_position(const std::vector<int>& pos) const {
  int best = INT_MAX;
  for (int v : mask_to_vector(vertices())) best = std::min(best, pos[v]);
  return best;
}

Grammar grammar_from_tag(const std::string& tag) {
  static const std::map<std::string, Grammar> table = {
      {"galaxy", Grammar::Galaxy},
      {"nebula", Grammar::Nebula},
      {"super-nebula", Grammar::SuperNebula},
      {"super-left-nebula", Grammar::SuperLeftNebula},
      {"super-right-nebula", Grammar::SuperRightNebula},
      {"triangular-galaxy", Grammar::TriangularGalaxy},
      {"central-triangular-galaxy", Grammar::CentralTriangularGalaxy},
      {"right-triangular-galaxy", Grammar::RightTriangularGalaxy},
      {"left-triangular-galaxy", Grammar::LeftTriangularGalaxy},
      {"delta-galaxy", Grammar::DeltaGalaxy},
      {"lr-delta-galaxy", Grammar::LRDeltaGalaxy},
      {"cr-delta-galaxy", Grammar::CRDeltaGalaxy},
      {"cl-delta-galaxy", Grammar::CLDeltaGalaxy},
      {"sigma-galaxy", Grammar::SigmaGalaxy},
      {"middle-sigma-galaxy", Grammar::MiddleSigmaGalaxy},
      {"left-sigma-galaxy", Grammar::LeftSigmaGalaxy},
      {"right-sigma-galaxy", Grammar::RightSigmaGalaxy},
      {"gk6", Grammar::GK6},
  };
  auto it = table.find(tag);
  if (it == table.end()) throw std::invalid_argument("unknown grammar tag: " + tag);
  return it->second;
}

std::string grammar_tag(Grammar g) {
  switch (g) {
    case Grammar::Galaxy: return "galaxy";
    case Grammar::Nebula: return "nebula";
    case Grammar::SuperNebula: return "super-nebula";
    case Grammar::SuperLeftNebula: return "super-left-nebula";
    case Grammar::SuperRightNebula: return "super-right-nebula";
    case Grammar::TriangularGalaxy: return "triangular-galaxy";
    case Grammar::CentralTriangularGalaxy: return "central-triangular-galaxy";
    case Grammar::RightTriangularGalaxy: return "right-triangular-galaxy";
    case Grammar::LeftTriangularGalaxy: return "left-triangular-galaxy";
    case Grammar::DeltaGalaxy: return "delta-galaxy";
    case Grammar::LRDeltaGalaxy: return "lr-delta-galaxy";
    case Grammar::CRDeltaGalaxy: return "cr-delta-galaxy";
    case Grammar::CLDeltaGalaxy: return "cl-delta-galaxy";
    case Grammar::SigmaGalaxy: return "sigma-galaxy";
    case Grammar::MiddleSigmaGalaxy: return "middle-sigma-galaxy";
    case Grammar::LeftSigmaGalaxy: return "left-sigma-galaxy";
    case Grammar::RightSigmaGalaxy: return "right-sigma-galaxy";
    case Grammar::GK6: return "gk6";
  }
  return "?";
}

std::optional<StarWitness> classify_star_segment(const Tournament& t, const Ordering& theta,
                                                 VertexMask segment,
                                                 bool two_vertex_center_right) {
  std::vector<int> vs = theta.restrict_to(segment);
  const int p = static_cast<int>(vs.size());
  if (p < 2) return std::nullopt;
  auto pairs = segment_backward_pairs(t, vs);
  if (static_cast<int>(pairs.size()) != p - 1) return std::nullopt;
  StarWitness w;
  if (p == 2) {
    if (two_vertex_center_right) {
      w.kind = StarKind::Right;
      w.center = vs[1];
      w.leaves = {vs[0]};
    } else {
      w.kind = StarKind::Left;
      w.center = vs[0];
      w.leaves = {vs[1]};
    }
    return w;
  }
  std::map<int, int> deg;
  for (auto& [a, b] : pairs) {
    ++deg[a];
    ++deg[b];
  }
  int hub = -1;
  for (auto& [v, d] : deg)
    if (d == p - 1) hub = v;
  if (hub < 0) return std::nullopt;
  for (auto& [a, b] : pairs)
    if (a != hub && b != hub) return std::nullopt;
  w.center = hub;
  if (hub == vs.front())
    w.kind = StarKind::Left;
  else if (hub == vs.back())
    w.kind = StarKind::Right;
  else
    w.kind = StarKind::Middle;
  for (int v : vs)
    if (v != hub) w.leaves.push_back(v);
  return w;
}

std::optional<Super2Witness> classify_super2_segment(const Tournament& t, const Ordering& theta,
                                                     VertexMask segment) {
  std::vector<int> vs = theta.restrict_to(segment);
  const int p = static_cast<int>(vs.size());
  if (p < 4) return std::nullopt;
  auto pairs = segment_backward_pairs(t, vs);
  // Two stars plus the reversed center-center arc form a tree on p vertices.
  if (static_cast<int>(pairs.size()) != p - 1) return std::nullopt;
  std::map<int, int> deg;
  for (auto& [a, b] : pairs) {
    ++deg[a];
    ++deg[b];
  }
  int c1 = -1, c2 = -1, hub_edges = 0;
  for (auto& [a, b] : pairs)
    if (deg[a] >= 2 && deg[b] >= 2) {
      ++hub_edges;
      c1 = a;  // pairs are (earlier, later), so c1 precedes c2
      c2 = b;
    }
  if (hub_edges != 1) return std::nullopt;
  std::vector<int> l1, l2;
  for (auto& [a, b] : pairs) {
    if (a == c1 && b == c2) continue;
    int center, leaf;
    if (a == c1 || a == c2) {
      center = a;
      leaf = b;
    } else if (b == c1 || b == c2) {
      center = b;
      leaf = a;
    } else {
      return std::nullopt;
    }
    if (deg[leaf] != 1) return std::nullopt;
    (center == c1 ? l1 : l2).push_back(leaf);
  }
  if (l1.empty() || l2.empty()) return std::nullopt;

  std::vector<int> pos = theta.positions();
  auto by_pos = [&](int a, int b) { return pos[a] < pos[b]; };
  std::sort(l1.begin(), l1.end(), by_pos);
  std::sort(l2.begin(), l2.end(), by_pos);
  // Both underlying stars must be frontier: center first or last within its star.
  auto frontier = [&](int c, const std::vector<int>& ls) {
    return pos[c] < pos[ls.front()] || pos[c] > pos[ls.back()];
  };
  if (!frontier(c1, l1) || !frontier(c2, l2)) return std::nullopt;

  // Contracted leaf vector over the segment decides the kind.
  std::vector<int> sc;
  for (int v : vs) {
    int bitval = (v != c1 && v != c2) ? 1 : 0;
    if (bitval == 1 && !sc.empty() && sc.back() == 1) continue;
    sc.push_back(bitval);
  }
  Super2Witness w;
  if (sc == std::vector<int>{1, 0, 0})
    w.kind = Super2Kind::Left;
  else if (sc == std::vector<int>{0, 1, 0})
    w.kind = Super2Kind::Middle;
  else if (sc == std::vector<int>{0, 0, 1})
    w.kind = Super2Kind::Right;
  else
    return std::nullopt;
  w.center1 = c1;
  w.center2 = c2;
  w.leaves1 = l1;
  w.leaves2 = l2;
  return w;
}

std::optional<Super2Witness> recognize_super_2_nebula(const Tournament& t, const Ordering& theta) {
  if (theta.size() != t.size())
    throw std::invalid_argument("recognize_super_2_nebula: ordering size mismatch");
  return classify_super2_segment(t, theta, t.all_mask());
}

std::vector<TriangleWitness> find_triangles_under(const Tournament& t, const Ordering& theta) {
  std::vector<TriangleWitness> out;
  const int n = theta.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int a = theta.vertex_at(i), b = theta.vertex_at(j);
      if (!t.has_arc(b, a)) continue;
      for (int k = j + 1; k < n; ++k) {
        int c = theta.vertex_at(k);
        if (t.has_arc(c, a) && t.has_arc(c, b)) out.push_back({a, b, c});
      }
    }
  return out;
}

bool is_canonical_K6(const Tournament& t, const Ordering& ordering) {
  if (t.size() != 6 || ordering.size() != 6)
    throw std::invalid_argument("is_canonical_K6: six vertices required");
  auto backward = [&](int i, int j) {  // positions i < j
    return t.has_arc(ordering.vertex_at(j), ordering.vertex_at(i));
  };
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      bool expect = (i == 0 && j == 3) || (i == 2 && j == 5) || (i == 0 && j == 5) ||
                    (i == 1 && j == 4);
      if (backward(i, j) != expect) return false;
    }
  return true;
}

std::vector<K6Witness> find_K6_instances(const Tournament& t, const Ordering& beta) {
  std::vector<K6Witness> out;
  const int n = beta.size();
  for (int i1 = 0; i1 + 5 < n; ++i1)
    for (int i3 = i1 + 2; i3 + 3 < n; ++i3)
      for (int i5 = i3 + 2; i5 + 1 < n; ++i5) {
        int ps[6] = {i1, i1 + 1, i3, i3 + 1, i5, i5 + 1};
        bool ok = true;
        for (int a = 0; a < 6 && ok; ++a)
          for (int b = a + 1; b < 6 && ok; ++b) {
            bool expect = (a == 0 && b == 3) || (a == 2 && b == 5) || (a == 0 && b == 5) ||
                          (a == 1 && b == 4);
            bool back = t.has_arc(beta.vertex_at(ps[b]), beta.vertex_at(ps[a]));
            if (back != expect) ok = false;
          }
        if (!ok) continue;
        K6Witness w;
        for (int a = 0; a < 6; ++a) w.verts[a] = beta.vertex_at(ps[a]);
        out.push_back(w);
      }
  return out;
}

BackwardComponents backward_components(const Tournament& t, const Ordering& theta) {
  const int n = t.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto pairs = backward_arc_graph(t, theta);
  for (auto& [a, b] : pairs) parent[find(a)] = find(b);
  std::map<int, VertexMask> groups;
  for (int v = 0; v < n; ++v) groups[find(v)] |= bit(v);
  std::vector<int> pos = theta.positions();
  BackwardComponents bc;
  for (auto& [root, mask] : groups) {
    if (popcount(mask) == 1)
      bc.isolated.push_back(lowest_bit(mask));
    else
      bc.components.push_back(mask);
  }
  auto first_pos = [&](VertexMask m) {
    int best = INT_MAX;
    for (int v : mask_to_vector(m)) best = std::min(best, pos[v]);
    return best;
  };
  std::sort(bc.components.begin(), bc.components.end(),
            [&](VertexMask a, VertexMask b) { return first_pos(a) < first_pos(b); });
  std::sort(bc.isolated.begin(), bc.isolated.end(),
            [&](int a, int b) { return pos[a] < pos[b]; });
  return bc;
}

namespace {

// Which part kinds and placement clauses each decomposition family uses.
struct Rules {
  bool left_star = true, right_star = true, middle_star = false;
  bool sigma = false;
  int sigma_exact = -1;  // -1: any count
  std::optional<Super2Kind> sigma_kind;
  bool triangle = false;
  int triangle_exact = -1;
  bool k6 = false;
  bool galaxy_clause = false;            // no star center between leaves of another star
  bool star_center_not_in_sigma = false;
  bool sigma_center_not_in_sigma = false;  // ... of another super 2-nebula
  bool sigma_center_not_in_star = false;
  bool tri_center_ok = false, tri_left_ok = false, tri_right_ok = false;
  bool cr_side = false, cl_side = false;  // extra star-interleaving conditions
  bool k6_clause = false;                 // no K6 center between star leaves
  bool regular = false;                   // no singletons permitted by the family
};

Rules rules_for(Grammar g) {
  Rules r;
  switch (g) {
    case Grammar::Galaxy:
      r.galaxy_clause = true;
      break;
    case Grammar::Nebula:
      r.middle_star = true;
      break;
    case Grammar::SuperLeftNebula:
      r.right_star = false;
      break;
    case Grammar::SuperRightNebula:
      r.left_star = false;
      break;
    case Grammar::SuperNebula:
      r.middle_star = true;
      r.sigma = true;
      r.star_center_not_in_sigma = true;
      r.sigma_center_not_in_sigma = true;
      break;
    case Grammar::TriangularGalaxy:
    case Grammar::CentralTriangularGalaxy:
    case Grammar::RightTriangularGalaxy:
    case Grammar::LeftTriangularGalaxy:
      r.triangle = true;
      r.galaxy_clause = true;
      r.tri_center_ok = g == Grammar::CentralTriangularGalaxy;
      r.tri_right_ok = g == Grammar::RightTriangularGalaxy;
      r.tri_left_ok = g == Grammar::LeftTriangularGalaxy;
      break;
    case Grammar::DeltaGalaxy:
      r.triangle = true;
      r.triangle_exact = 1;
      r.galaxy_clause = true;
      break;
    case Grammar::LRDeltaGalaxy:
      r.triangle = true;
      r.triangle_exact = 1;
      r.galaxy_clause = true;
      r.tri_left_ok = r.tri_right_ok = true;
      break;
    case Grammar::CRDeltaGalaxy:
      r.triangle = true;
      r.triangle_exact = 1;
      r.galaxy_clause = true;
      r.tri_center_ok = r.tri_right_ok = true;
      r.cr_side = true;
      break;
    case Grammar::CLDeltaGalaxy:
      r.triangle = true;
      r.triangle_exact = 1;
      r.galaxy_clause = true;
      r.tri_center_ok = r.tri_left_ok = true;
      r.cl_side = true;
      break;
    case Grammar::SigmaGalaxy:
    case Grammar::MiddleSigmaGalaxy:
    case Grammar::LeftSigmaGalaxy:
    case Grammar::RightSigmaGalaxy:
      r.sigma = true;
      r.sigma_exact = 1;
      r.galaxy_clause = true;
      r.star_center_not_in_sigma = true;
      r.sigma_center_not_in_star = true;
      r.regular = true;
      if (g == Grammar::MiddleSigmaGalaxy) r.sigma_kind = Super2Kind::Middle;
      if (g == Grammar::LeftSigmaGalaxy) r.sigma_kind = Super2Kind::Left;
      if (g == Grammar::RightSigmaGalaxy) r.sigma_kind = Super2Kind::Right;
      break;
    case Grammar::GK6:
      r.k6 = true;
      r.galaxy_clause = true;
      r.k6_clause = true;
      r.regular = true;
      break;
  }
  return r;
}

bool star_kind_allowed(const Rules& r, StarKind k) {
  switch (k) {
    case StarKind::Left: return r.left_star;
    case StarKind::Right: return r.right_star;
    case StarKind::Middle: return r.middle_star;
  }
  return false;
}

// Leaf span of a part under theta; "between leaves" needs at least two leaves.
struct Span {
  bool valid = false;
  int lo = 0, hi = 0;
};

Span span_of(const std::vector<int>& leaves, const std::vector<int>& pos) {
  Span s;
  if (leaves.size() < 2) return s;
  s.valid = true;
  s.lo = INT_MAX;
  s.hi = INT_MIN;
  for (int v : leaves) {
    s.lo = std::min(s.lo, pos[v]);
    s.hi = std::max(s.hi, pos[v]);
  }
  return s;
}

bool between(int p, const Span& s) { return s.valid && s.lo < p && p < s.hi; }

}  // namespace

std::vector<std::string> check_decomposition(const Tournament& t,
                                             const DecompositionWitness& w) {
  std::vector<std::string> bad;
  const int n = t.size();
  if (w.ordering.size() != n) {
    bad.push_back("ordering size differs from tournament size");
    return bad;
  }
  std::vector<int> pos = w.ordering.positions();
  Rules rules = rules_for(w.grammar);

  // Partition check.
  std::vector<int> owner(n, -2);  // -1 singleton, >=0 part index
  bool overlap = false;
  for (size_t i = 0; i < w.parts.size(); ++i)
    for (int v : mask_to_vector(w.parts[i].vertices())) {
      if (owner[v] != -2) overlap = true;
      owner[v] = static_cast<int>(i);
    }
  for (int v : w.singletons) {
    if (owner[v] != -2) overlap = true;
    owner[v] = -1;
  }
  if (overlap) bad.push_back("parts and singletons overlap");
  for (int v = 0; v < n; ++v)
    if (owner[v] == -2) {
      bad.push_back("vertex " + std::to_string(v + 1) + " is uncovered");
      return bad;
    }
  if (rules.regular && !w.singletons.empty())
    bad.push_back("family does not admit singletons");

  // Every backward arc must live inside a single part.
  for (auto& [a, b] : backward_arc_graph(t, w.ordering)) {
    if (owner[a] < 0 || owner[b] < 0)
      bad.push_back("singleton touched by backward arc");
    else if (owner[a] != owner[b])
      bad.push_back("backward arc crosses parts");
  }

  auto backward_in = [&](int u, int v) {  // unordered pair, true iff backward
    return pos[u] < pos[v] ? t.has_arc(v, u) : t.has_arc(u, v);
  };

  int sigma_count = 0, triangle_count = 0;
  struct StarInfo {
    int center_pos;
    Span span;
    std::vector<int> leaf_pos;
    bool frontier;
  };
  std::vector<StarInfo> stars;
  std::vector<std::pair<std::array<int, 2>, Span>> sigmas;  // center positions + leaf span
  std::vector<std::array<int, 3>> tris;                     // positions: left, center, right
  std::vector<std::array<int, 2>> k6_centers;               // positions

  for (auto& part : w.parts) {
    std::vector<int> vs = w.ordering.restrict_to(part.vertices());
    // Expected backward pairs inside the part, by kind.
    std::vector<std::pair<int, int>> expect;
    auto add = [&](int u, int v) {
      if (pos[u] > pos[v]) std::swap(u, v);
      expect.emplace_back(u, v);
    };
    switch (part.kind) {
      case Part::Kind::Star: {
        const StarWitness& s = part.star;
        if (!star_kind_allowed(rules, s.kind)) bad.push_back("star kind not admitted");
        if (s.leaves.empty()) bad.push_back("star without leaves");
        for (int l : s.leaves) add(s.center, l);
        int cp = pos[s.center];
        bool before_all = true, after_all = true;
        for (int l : s.leaves) {
          before_all = before_all && cp < pos[l];
          after_all = after_all && cp > pos[l];
        }
        if ((s.kind == StarKind::Left && !before_all) ||
            (s.kind == StarKind::Right && !after_all) ||
            (s.kind == StarKind::Middle && (before_all || after_all)))
          bad.push_back("star kind disagrees with center position");
        StarInfo info;
        info.center_pos = cp;
        info.span = span_of(s.leaves, pos);
        for (int l : s.leaves) info.leaf_pos.push_back(pos[l]);
        info.frontier = s.kind != StarKind::Middle;
        stars.push_back(info);
        break;
      }
      case Part::Kind::Super2Nebula: {
        ++sigma_count;
        if (!rules.sigma) bad.push_back("super 2-nebula not admitted");
        const Super2Witness& s = part.sigma;
        if (rules.sigma_kind && *rules.sigma_kind != s.kind)
          bad.push_back("super 2-nebula kind not admitted");
        if (s.leaves1.empty() || s.leaves2.empty())
          bad.push_back("super 2-nebula star without leaves");
        if (pos[s.center1] >= pos[s.center2]) bad.push_back("super 2-nebula centers out of order");
        add(s.center1, s.center2);
        for (int l : s.leaves1) add(s.center1, l);
        for (int l : s.leaves2) add(s.center2, l);
        // Underlying stars must be frontier.
        for (const auto& [c, ls] :
             {std::pair{s.center1, s.leaves1}, std::pair{s.center2, s.leaves2}}) {
          bool before_all = true, after_all = true;
          for (int l : ls) {
            before_all = before_all && pos[c] < pos[l];
            after_all = after_all && pos[c] > pos[l];
          }
          if (!before_all && !after_all) bad.push_back("super 2-nebula star is not frontier");
        }
        // Contracted leaf vector must match the claimed kind.
        std::vector<int> sc;
        for (int v : vs) {
          int b = (v == s.center1 || v == s.center2) ? 0 : 1;
          if (b == 1 && !sc.empty() && sc.back() == 1) continue;
          sc.push_back(b);
        }
        std::vector<int> want;
        if (s.kind == Super2Kind::Left) want = {1, 0, 0};
        if (s.kind == Super2Kind::Middle) want = {0, 1, 0};
        if (s.kind == Super2Kind::Right) want = {0, 0, 1};
        if (sc != want) bad.push_back("super 2-nebula contracted leaf vector mismatch");
        sigmas.push_back({{pos[s.center1], pos[s.center2]}, span_of(s.all_leaves(pos), pos)});
        break;
      }
      case Part::Kind::Triangle: {
        ++triangle_count;
        if (!rules.triangle) bad.push_back("triangle not admitted");
        const TriangleWitness& tri = part.triangle;
        if (!(pos[tri.left_exterior] < pos[tri.center] &&
              pos[tri.center] < pos[tri.right_exterior]))
          bad.push_back("triangle roles disagree with positions");
        add(tri.left_exterior, tri.center);
        add(tri.center, tri.right_exterior);
        add(tri.left_exterior, tri.right_exterior);
        // Reversed transitive pattern.
        if (!(t.has_arc(tri.right_exterior, tri.center) && t.has_arc(tri.center, tri.left_exterior) &&
              t.has_arc(tri.right_exterior, tri.left_exterior)))
          bad.push_back("triangle is not the reversed transitive triple");
        tris.push_back({pos[tri.left_exterior], pos[tri.center], pos[tri.right_exterior]});
        break;
      }
      case Part::Kind::K6: {
        if (!rules.k6) bad.push_back("K6 part not admitted");
        const auto& ks = part.k6.verts;
        int p[6];
        for (int i = 0; i < 6; ++i) p[i] = pos[ks[i]];
        if (!(p[1] == p[0] + 1 && p[3] == p[2] + 1 && p[5] == p[4] + 1 && p[0] < p[2] &&
              p[2] < p[4]))
          bad.push_back("K6 position constraints violated");
        for (int a = 0; a < 6; ++a)
          for (int b = a + 1; b < 6; ++b) {
            bool want = (a == 0 && b == 3) || (a == 2 && b == 5) || (a == 0 && b == 5) ||
                        (a == 1 && b == 4);
            if (want) add(ks[a], ks[b]);
            if (backward_in(ks[a], ks[b]) != want) {
              bad.push_back("K6 backward-arc pattern mismatch");
              a = b = 6;
            }
          }
        k6_centers.push_back({p[0], p[5]});
        break;
      }
    }
    // Exactness: backward pairs inside the part are precisely the expected ones.
    auto actual = segment_backward_pairs(t, vs);
    auto norm = [](std::vector<std::pair<int, int>> v) {
      for (auto& pr : v)
        if (pr.first > pr.second) std::swap(pr.first, pr.second);
      std::sort(v.begin(), v.end());
      return v;
    };
    if (norm(actual) != norm(expect)) bad.push_back("part backward arcs differ from its pattern");
  }

  if (rules.sigma_exact >= 0 && sigma_count != rules.sigma_exact)
    bad.push_back("wrong number of super 2-nebulas");
  if (rules.triangle_exact >= 0 && triangle_count != rules.triangle_exact)
    bad.push_back("wrong number of triangles");

  // Placement clauses.
  if (rules.galaxy_clause)
    for (size_t i = 0; i < stars.size(); ++i)
      for (size_t j = 0; j < stars.size(); ++j)
        if (i != j && between(stars[i].center_pos, stars[j].span))
          bad.push_back("star center between leaves of another star");
  if (rules.star_center_not_in_sigma)
    for (auto& s : stars)
      for (auto& [cs, span] : sigmas)
        if (between(s.center_pos, span))
          bad.push_back("star center between leaves of a super 2-nebula");
  if (rules.sigma_center_not_in_sigma)
    for (size_t i = 0; i < sigmas.size(); ++i)
      for (size_t j = 0; j < sigmas.size(); ++j)
        if (i != j)
          for (int cp : sigmas[i].first)
            if (between(cp, sigmas[j].second))
              bad.push_back("super 2-nebula center between leaves of another super 2-nebula");
  if (rules.sigma_center_not_in_star)
    for (auto& [cs, span] : sigmas)
      for (int cp : cs)
        for (auto& s : stars)
          if (between(cp, s.span))
            bad.push_back("super 2-nebula center between leaves of a star");
  if (rules.triangle) {
    for (auto& tp : tris) {
      auto forbid = [&](int p, const char* role) {
        for (auto& s : stars)
          if (between(p, s.span))
            bad.push_back(std::string("triangle ") + role + " between leaves of a star");
      };
      if (!rules.tri_left_ok) forbid(tp[0], "left exterior");
      if (!rules.tri_center_ok) forbid(tp[1], "center");
      if (!rules.tri_right_ok) forbid(tp[2], "right exterior");
    }
  }
  if ((rules.cr_side || rules.cl_side) && tris.size() == 1) {
    int cpos = tris[0][1];
    int epos = rules.cr_side ? tris[0][2] : tris[0][0];
    for (size_t i = 0; i < stars.size(); ++i) {
      if (!stars[i].frontier || !between(cpos, stars[i].span)) continue;
      if (between(epos, stars[i].span))
        bad.push_back("triangle center and exterior between leaves of the same star");
      for (size_t j = 0; j < stars.size(); ++j) {
        if (j == i || !stars[j].frontier || !between(epos, stars[j].span)) continue;
        for (int lp : stars[i].leaf_pos)
          if (between(lp, stars[j].span)) bad.push_back("interleaved star leaves");
        for (int lp : stars[j].leaf_pos)
          if (between(lp, stars[i].span)) bad.push_back("interleaved star leaves");
      }
    }
  }
  if (rules.k6_clause)
    for (auto& cs : k6_centers)
      for (int cp : cs)
        for (auto& s : stars)
          if (between(cp, s.span)) bad.push_back("K6 center between leaves of a star");

  return bad;
}

namespace {

std::optional<DecompositionWitness> recognize_under(const Tournament& t, Grammar grammar,
                                                    const Ordering& theta,
                                                    const RecognizeOptions& opt) {
  Rules rules = rules_for(grammar);
  BackwardComponents bc = backward_components(t, theta);
  if ((rules.regular || opt.require_regular) && !bc.isolated.empty()) return std::nullopt;
  std::vector<int> pos = theta.positions();
  const int m = static_cast<int>(bc.components.size());

  std::vector<std::vector<Part>> options(m);
  for (int i = 0; i < m; ++i) {
    VertexMask comp = bc.components[i];
    std::vector<bool> flags = popcount(comp) == 2
                                  ? std::vector<bool>{opt.two_vertex_center_right,
                                                      !opt.two_vertex_center_right}
                                  : std::vector<bool>{true};
    for (bool flag : flags)
      if (auto sw = classify_star_segment(t, theta, comp, flag);
          sw && star_kind_allowed(rules, sw->kind)) {
        Part part;
        part.kind = Part::Kind::Star;
        part.star = *sw;
        options[i].push_back(part);
      }
    if (rules.sigma)
      if (auto sg = classify_super2_segment(t, theta, comp);
          sg && (!rules.sigma_kind || *rules.sigma_kind == sg->kind)) {
        Part part;
        part.kind = Part::Kind::Super2Nebula;
        part.sigma = *sg;
        options[i].push_back(part);
      }
    if (rules.triangle && popcount(comp) == 3) {
      std::vector<int> vs = theta.restrict_to(comp);
      if (segment_backward_pairs(t, vs).size() == 3) {
        Part part;
        part.kind = Part::Kind::Triangle;
        part.triangle = {vs[0], vs[1], vs[2]};
        options[i].push_back(part);
      }
    }
  }

  // K6 instances aligned with whole components (each instance spans exactly
  // two components of the backward-arc graph).
  struct K6Cand {
    K6Witness w;
    std::vector<int> comps;
  };
  std::vector<K6Cand> k6cands;
  if (rules.k6)
    for (auto& inst : find_K6_instances(t, theta)) {
      VertexMask im = inst.vertices();
      std::vector<int> cover;
      VertexMask covered = 0;
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        if (bc.components[i] & im) {
          if (bc.components[i] & ~im) ok = false;
          cover.push_back(i);
          covered |= bc.components[i];
        }
      if (ok && covered == im) k6cands.push_back({inst, cover});
    }

  std::vector<std::optional<Part>> chosen(m);
  std::vector<char> consumed(m, 0);
  std::vector<Part> k6parts;
  std::optional<DecompositionWitness> result;

  std::function<bool(int)> dfs = [&](int i) -> bool {
    if (i == m) {
      DecompositionWitness w;
      w.grammar = grammar;
      w.ordering = theta;
      for (auto& p : chosen)
        if (p) w.parts.push_back(*p);
      w.parts.insert(w.parts.end(), k6parts.begin(), k6parts.end());
      std::sort(w.parts.begin(), w.parts.end(), [&](const Part& a, const Part& b) {
        return a.first_position(pos) < b.first_position(pos);
      });
      w.singletons = bc.isolated;
      if (!check_decomposition(t, w).empty()) return false;
      result = std::move(w);
      return true;
    }
    if (consumed[i]) return dfs(i + 1);
    for (auto& part : options[i]) {
      chosen[i] = part;
      if (dfs(i + 1)) return true;
      chosen[i].reset();
    }
    for (auto& kc : k6cands) {
      if (kc.comps.front() != i) continue;
      bool free = true;
      for (int c : kc.comps) free = free && !consumed[c];
      if (!free) continue;
      for (int c : kc.comps) consumed[c] = 1;
      Part part;
      part.kind = Part::Kind::K6;
      part.k6 = kc.w;
      k6parts.push_back(part);
      if (dfs(i + 1)) return true;
      k6parts.pop_back();
      for (int c : kc.comps) consumed[c] = 0;
    }
    return false;
  };
  dfs(0);
  return result;
}

}  // namespace

std::optional<DecompositionWitness> recognize_decomposition(const Tournament& t, Grammar grammar,
                                                            const std::optional<Ordering>& theta,
                                                            const RecognizeOptions& opt) {
  if (theta) {
    if (theta->size() != t.size())
      throw std::invalid_argument("recognize_decomposition: ordering size mismatch");
    return recognize_under(t, grammar, *theta, opt);
  }
  if (t.size() > opt.unordered_budget)
    throw std::runtime_error("recognize_decomposition: ordering search budget exceeded");
  std::vector<int> perm(t.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (auto w = recognize_under(t, grammar, Ordering(perm), opt)) return w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::string witness_to_json(const DecompositionWitness& w) {
  using json = nlohmann::ordered_json;
  std::vector<int> pos = w.ordering.positions();
  auto one_based = [](const std::vector<int>& vs) {
    std::vector<int> out;
    for (int v : vs) out.push_back(v + 1);
    return out;
  };
  json j;
  j["grammar"] = grammar_tag(w.grammar);
  j["ordering"] = one_based(w.ordering.perm);
  j["parts"] = json::array();
  for (const Part& part : w.parts) {
    json p;
    switch (part.kind) {
      case Part::Kind::Star: {
        p["kind"] = part.star.kind == StarKind::Left    ? "left-star"
                    : part.star.kind == StarKind::Right ? "right-star"
                                                        : "middle-star";
        p["center"] = part.star.center + 1;
        p["leaves"] = one_based(part.star.leaves);
        break;
      }
      case Part::Kind::Super2Nebula: {
        p["kind"] = part.sigma.kind == Super2Kind::Left     ? "super-left-2-nebula"
                    : part.sigma.kind == Super2Kind::Middle ? "super-middle-2-nebula"
                                                            : "super-right-2-nebula";
        p["centers"] = std::vector<int>{part.sigma.center1 + 1, part.sigma.center2 + 1};
        p["leaves_per_center"] =
            std::vector<std::vector<int>>{one_based(part.sigma.leaves1), one_based(part.sigma.leaves2)};
        break;
      }
      case Part::Kind::Triangle: {
        p["kind"] = "triangle";
        p["left_exterior"] = part.triangle.left_exterior + 1;
        p["center"] = part.triangle.center + 1;
        p["right_exterior"] = part.triangle.right_exterior + 1;
        break;
      }
      case Part::Kind::K6: {
        p["kind"] = "k6";
        std::vector<int> vs(part.k6.verts.begin(), part.k6.verts.end());
        p["vertices"] = one_based(vs);
        p["centers"] = std::vector<int>{part.k6.verts[0] + 1, part.k6.verts[5] + 1};
        break;
      }
    }
    std::vector<int> ps;
    for (int v : mask_to_vector(part.vertices())) ps.push_back(pos[v] + 1);
    std::sort(ps.begin(), ps.end());
    p["positions"] = ps;
    j["parts"].push_back(p);
  }
  j["singletons"] = one_based(w.singletons);
  return j.dump();
}

}  // namespace ehc
