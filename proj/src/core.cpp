#include "ehc/core.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace ehc {

namespace {

template <typename G>
std::vector<std::pair<int, int>> backward_pairs(const G& g, const Ordering& theta) {
  if (theta.size() != g.size())
    throw std::invalid_argument("backward_arc_graph: ordering/digraph size mismatch");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < theta.size(); ++i)
    for (int j = i + 1; j < theta.size(); ++j)
      if (g.has_arc(theta.vertex_at(j), theta.vertex_at(i)))
        pairs.emplace_back(theta.vertex_at(i), theta.vertex_at(j));
  return pairs;
}

}  // namespace

std::vector<std::pair<int, int>> backward_arc_graph(const PartialDigraph& d,
                                                    const Ordering& theta) {
  return backward_pairs(d, theta);
}

std::vector<std::pair<int, int>> backward_arc_graph(const Tournament& t, const Ordering& theta) {
  return backward_pairs(t, theta);
}

int arc_count_between(const Tournament& t, VertexMask x, VertexMask y) {
  int e = 0;
  for (VertexMask m = x; m; m &= m - 1) e += popcount(t.out_neighbors(lowest_bit(m)) & y);
  return e;
}

Rational directed_density(const Tournament& t, VertexMask x, VertexMask y) {
  if (!x || !y) throw std::invalid_argument("directed_density: empty set");
  if (x & y) throw std::invalid_argument("directed_density: overlapping sets");
  return Rational(arc_count_between(t, x, y),
                  static_cast<std::int64_t>(popcount(x)) * popcount(y));
}

bool is_transitive_subset(const Tournament& t, VertexMask mask) {
  std::vector<int> order = transitive_order(t, mask);
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j)
      if (!t.has_arc(order[i], order[j])) return false;
  return true;
}

std::vector<int> transitive_order(const Tournament& t, VertexMask mask) {
  std::vector<int> vs = mask_to_vector(mask);
  std::sort(vs.begin(), vs.end(), [&](int a, int b) {
    return popcount(t.out_neighbors(a) & mask) > popcount(t.out_neighbors(b) & mask);
  });
  return vs;
}

namespace {

struct TrSearch {
  const Tournament& t;
  int best = 0;
  VertexMask best_witness = 0;

  void extend(VertexMask chosen, int count, VertexMask cands) {
    if (count > best) {
      best = count;
      best_witness = chosen;
    }
    if (count + popcount(cands) <= best) return;
    // Each transitive set is built along its unique domination order: the
    // branch for v keeps every remaining out-neighbor of v, not just the
    // higher-indexed ones.
    VertexMask rest = cands;
    while (rest) {
      int v = lowest_bit(rest);
      rest &= rest - 1;
      extend(chosen | bit(v), count + 1, cands & t.out_neighbors(v));
    }
  }
};

}  // namespace

TrResult tr_exact(const Tournament& t, const CoreLimits& limits) {
  if (t.size() > limits.tr_exact_max)
    throw std::invalid_argument("tr_exact: size limit exceeded, use ramsey_transitive");
  TrSearch search{t};
  // Greedy chain as the initial lower bound.
  VertexMask cands = t.all_mask(), chosen = 0;
  while (cands) {
    int pick = -1, deg = -1;
    for (VertexMask m = cands; m; m &= m - 1) {
      int v = lowest_bit(m);
      int d = popcount(t.out_neighbors(v) & cands);
      if (d > deg) { deg = d; pick = v; }
    }
    chosen |= bit(pick);
    cands &= t.out_neighbors(pick);
  }
  search.best = popcount(chosen);
  search.best_witness = chosen;
  search.extend(0, 0, t.all_mask());
  return {search.best, search.best_witness};
}

namespace {

VertexMask ramsey_rec(const Tournament& t, VertexMask mask) {
  if (!mask) return 0;
  int v = lowest_bit(mask);
  VertexMask outm = t.out_neighbors(v) & mask;
  VertexMask inm = mask & ~outm & ~bit(v);
  if (popcount(outm) >= popcount(inm)) return bit(v) | ramsey_rec(t, outm);
  return bit(v) | ramsey_rec(t, inm);
}

}  // namespace

VertexMask ramsey_transitive(const Tournament& t) { return ramsey_rec(t, t.all_mask()); }

namespace {

bool embed_rec(const Tournament& t, const Tournament& h, std::vector<int>& map, VertexMask used,
               int i) {
  if (i == h.size()) return true;
  for (int u = 0; u < t.size(); ++u) {
    if (used & bit(u)) continue;
    bool ok = true;
    for (int j = 0; j < i && ok; ++j)
      if (h.has_arc(i, j) != t.has_arc(u, map[j])) ok = false;
    if (!ok) continue;
    map[i] = u;
    if (embed_rec(t, h, map, used | bit(u), i + 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> contains_subtournament(const Tournament& t, const Tournament& h) {
  if (h.size() > t.size()) return std::nullopt;
  std::vector<int> map(h.size(), -1);
  if (embed_rec(t, h, map, 0, 0)) return map;
  return std::nullopt;
}

bool is_family_free(const Tournament& t, const std::vector<Tournament>& family) {
  for (const Tournament& h : family)
    if (contains_subtournament(t, h)) return false;
  return true;
}

bool pow_geq(std::uint64_t a, std::uint64_t p, std::uint64_t b, std::uint64_t q) {
  using boost::multiprecision::cpp_int;
  cpp_int lhs = boost::multiprecision::pow(cpp_int(a), static_cast<unsigned>(p));
  cpp_int rhs = boost::multiprecision::pow(cpp_int(b), static_cast<unsigned>(q));
  return lhs >= rhs;
}

bool is_epsilon_critical(const Tournament& t, const Rational& eps, const CoreLimits& limits) {
  if (eps.num() <= 0) throw std::invalid_argument("is_epsilon_critical: eps must be positive");
  if (t.size() > limits.criticality_max)
    throw std::invalid_argument("is_epsilon_critical: size limit exceeded");
  const int n = t.size();
  const auto p = static_cast<std::uint64_t>(eps.num());
  const auto q = static_cast<std::uint64_t>(eps.den());

  // Longest forward chain per subset.
  std::vector<std::uint8_t> chain(VertexMask{1} << n, 0);
  for (VertexMask mask = 1; mask < (VertexMask{1} << n); ++mask) {
    std::uint8_t best = 0;
    for (VertexMask m = mask; m; m &= m - 1) {
      int v = lowest_bit(m);
      std::uint8_t c = static_cast<std::uint8_t>(1 + chain[mask & t.out_neighbors(v)]);
      if (c > best) best = c;
    }
    chain[mask] = best;
  }

  VertexMask full = t.all_mask();
  if (pow_geq(chain[full], q, static_cast<std::uint64_t>(n), p)) return false;  // tr >= n^eps
  for (VertexMask mask = 1; mask < full; ++mask)
    if (!pow_geq(chain[mask], q, static_cast<std::uint64_t>(popcount(mask)), p)) return false;
  return true;
}

}  // namespace ehc
