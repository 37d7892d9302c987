#include "ehc/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace ehc {

namespace {

// |num_set| / |den_set| >= 1 - lambda, exact.
bool density_at_least(int hits, int total, const Rational& lambda) {
  return Rational(hits, total) >= Rational(1) - lambda;
}

int tr_value(const Tournament& host, const std::vector<int>& w, const CoreLimits& limits) {
  for (int wi : w)
    if (wi == 1) return tr_exact(host, limits).size;
  return 0;  // unused when every set is linear
}

}  // namespace

SmoothReport verify_smooth(const Tournament& host, const SmoothStructure& chi,
                           const CoreLimits& limits) {
  SmoothReport rep;
  const int n = host.size();
  if (chi.sets.size() != chi.w.size()) {
    rep.violations.push_back("sets/w length mismatch");
    return rep;
  }
  if (chi.sets.empty()) {
    rep.violations.push_back("empty structure");
    return rep;
  }
  for (int wi : chi.w)
    if (wi != 0 && wi != 1) rep.violations.push_back("w entry outside {0,1}");

  VertexMask seen = 0;
  for (size_t i = 0; i < chi.sets.size(); ++i) {
    if (chi.sets[i] == 0) rep.violations.push_back("S" + std::to_string(i + 1) + " is empty");
    if (chi.sets[i] & seen)
      rep.violations.push_back("S" + std::to_string(i + 1) + " overlaps an earlier set");
    seen |= chi.sets[i];
    if (n < Tournament::kMaxVertices && (chi.sets[i] >> n))
      rep.violations.push_back("S" + std::to_string(i + 1) + " has out-of-range vertices");
  }
  if (!rep.violations.empty()) return rep;

  const int tr = tr_value(host, chi.w, limits);
  for (size_t i = 0; i < chi.sets.size(); ++i) {
    const int sz = popcount(chi.sets[i]);
    if (chi.w[i] == 0) {
      if (Rational(sz) < chi.c * Rational(n))
        rep.violations.push_back("linear set S" + std::to_string(i + 1) + ": |S| = " +
                                 std::to_string(sz) + " < c*n");
    } else {
      if (!is_transitive_subset(host, chi.sets[i]))
        rep.violations.push_back("transitive set S" + std::to_string(i + 1) +
                                 " induces a directed cycle");
      if (Rational(sz) < chi.c * Rational(tr))
        rep.violations.push_back("transitive set S" + std::to_string(i + 1) + ": |S| = " +
                                 std::to_string(sz) + " < c*tr");
    }
  }

  for (size_t i = 0; i < chi.sets.size(); ++i)
    for (size_t j = i + 1; j < chi.sets.size(); ++j) {
      const int szi = popcount(chi.sets[i]);
      const int szj = popcount(chi.sets[j]);
      for (int v : mask_to_vector(chi.sets[i])) {
        int hits = popcount(host.out_neighbors(v) & chi.sets[j]);
        if (!density_at_least(hits, szj, chi.lambda))
          rep.violations.push_back("smoothness: d({" + std::to_string(v) + "}, S" +
                                   std::to_string(j + 1) + ") < 1-lambda");
      }
      for (int v : mask_to_vector(chi.sets[j])) {
        int hits = popcount(host.in_neighbors(v) & chi.sets[i]);
        if (!density_at_least(hits, szi, chi.lambda))
          rep.violations.push_back("smoothness: d(S" + std::to_string(i + 1) + ", {" +
                                   std::to_string(v) + "}) < 1-lambda");
      }
    }
  return rep;
}

IntersectionBound check_intersection_bound(const Tournament& host, const SmoothStructure& chi,
                                           int j, VertexMask star, const Rational& gamma,
                                           const std::vector<int>& a) {
  if (j < 0 || j >= static_cast<int>(chi.sets.size()))
    throw std::invalid_argument("intersection bound: set index out of range");
  if (star & ~chi.sets[j])
    throw std::invalid_argument("intersection bound: star set not inside S_j");
  if (gamma <= Rational(0) || gamma > Rational(1))
    throw std::invalid_argument("intersection bound: gamma outside (0,1]");
  if (Rational(popcount(star)) < gamma * Rational(popcount(chi.sets[j])))
    throw std::invalid_argument("intersection bound: |star| < gamma*|S_j|");

  VertexMask inter = star;
  for (int x : a) {
    int i = -1;
    for (size_t s = 0; s < chi.sets.size(); ++s)
      if (chi.sets[s] & bit(x)) i = static_cast<int>(s);
    if (i == -1 || i == j)
      throw std::invalid_argument("intersection bound: external vertex not drawn from the "
                                  "other sets");
    inter &= (j > i) ? (host.out_neighbors(x) & star) : (host.in_neighbors(x) & star);
  }

  Rational rhs = (Rational(1) - Rational(static_cast<int>(a.size())) * chi.lambda / gamma) *
                 Rational(popcount(star));
  return {inter, Rational(popcount(inter)) >= rhs};
}

namespace {

// Greedy transitive subset of `block` scanning in the given order.
VertexMask greedy_transitive(const Tournament& host, const std::vector<int>& block) {
  VertexMask cur = 0;
  for (int v : block)
    if (is_transitive_subset(host, cur | bit(v))) cur |= bit(v);
  return cur;
}

}  // namespace

std::optional<SmoothStructure> find_smooth(const Tournament& host, const Rational& c,
                                           const Rational& lambda, const std::vector<int>& w,
                                           const CoreLimits& limits) {
  const int n = host.size();
  const int k = static_cast<int>(w.size());
  if (k == 0 || n == 0) return std::nullopt;
  bool wants_transitive = false;
  for (int wi : w) wants_transitive |= (wi == 1);
  if (wants_transitive && n > limits.tr_exact_max) return std::nullopt;

  auto accepts = [&](const SmoothStructure& chi) { return verify_smooth(host, chi, limits).ok(); };
  SmoothStructure chi{.sets = std::vector<VertexMask>(k, 0), .w = w, .c = c, .lambda = lambda};

  // Whole-set / tr-witness shortcuts.
  if (k == 1) {
    chi.sets[0] = w[0] == 0 ? (n == Tournament::kMaxVertices ? ~VertexMask(0) : (bit(n) - 1))
                            : tr_exact(host, limits).witness;
    if (accepts(chi)) return chi;
  }

  // Consecutive blocks of a degree-sorted order, transitive blocks shrunk
  // greedily.
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i;
  std::sort(sigma.begin(), sigma.end(), [&](int u, int v) {
    int du = popcount(host.out_neighbors(u)), dv = popcount(host.out_neighbors(v));
    return du != dv ? du > dv : u < v;
  });

  long long tried = 0;
  std::optional<SmoothStructure> found;
  auto cuts = [&](auto&& self, int start, int idx) -> void {
    if (found || tried > 200000) return;
    if (idx == k) {
      if (start != n) return;
      ++tried;
      if (accepts(chi)) found = chi;
      return;
    }
    int remaining_sets = k - idx - 1;
    for (int end = start + 1; end + remaining_sets <= n; ++end) {
      std::vector<int> block(sigma.begin() + start, sigma.begin() + end);
      chi.sets[idx] = w[idx] == 0 ? vector_to_mask(block) : greedy_transitive(host, block);
      if (chi.sets[idx]) self(self, end, idx + 1);
      if (found) return;
    }
  };
  cuts(cuts, 0, 0);
  if (found) return found;

  // Exhaustive assignment sweep for small hosts: each vertex joins one set or
  // none.
  double total = std::pow(static_cast<double>(k + 1), n);
  if (n <= 12 && total <= static_cast<double>(1 << 22)) {
    long long count = static_cast<long long>(total);
    for (long long code = 0; code < count; ++code) {
      long long c2 = code;
      std::fill(chi.sets.begin(), chi.sets.end(), 0);
      for (int v = 0; v < n; ++v) {
        int s = static_cast<int>(c2 % (k + 1));
        c2 /= (k + 1);
        if (s > 0) chi.sets[s - 1] |= bit(v);
      }
      bool nonempty = true;
      for (VertexMask m : chi.sets) nonempty &= (m != 0);
      if (nonempty && accepts(chi)) return chi;
    }
  }
  return std::nullopt;
}

XiLabeling xi_labels(const Tournament& host, const SmoothStructure& chi,
                     const std::map<int, int>& delta) {
  const int k = static_cast<int>(chi.w.size());
  for (auto [i, d] : delta)
    if (i < 0 || i >= k || chi.w[i] != 1 || d < 1)
      throw std::invalid_argument("xi labels: delta/w mismatch");
  for (int i = 0; i < k; ++i)
    if (chi.w[i] == 1 && !delta.count(i))
      throw std::invalid_argument("xi labels: delta missing a transitive entry");

  XiLabeling out;
  out.blocks.resize(k);
  int base = 0;  // zero entries plus delta values consumed so far
  for (int i = 0; i < k; ++i) {
    if (chi.w[i] == 0) {
      std::vector<int> blk = mask_to_vector(chi.sets[i]);
      for (int v : blk) out.label[v] = base + 1;
      out.blocks[i].push_back(std::move(blk));
      base += 1;
    } else {
      const int d = delta.at(i);
      std::vector<int> ord = transitive_order(host, chi.sets[i]);
      const int m = static_cast<int>(ord.size()) / d;
      for (int j = 1; j <= d; ++j) {
        std::vector<int> blk(ord.begin() + static_cast<size_t>(j - 1) * m,
                             ord.begin() + static_cast<size_t>(j) * m);
        for (int v : blk) out.label[v] = base + j;
        out.blocks[i].push_back(std::move(blk));
      }
      base += d;
    }
  }
  return out;
}

namespace {

std::vector<int> label_targets(const PartialDigraph& source, const std::vector<int>& expected) {
  std::vector<int> exp = expected;
  if (exp.empty()) {
    exp.resize(source.size());
    for (int j = 0; j < source.size(); ++j) exp[j] = j + 1;
  }
  if (static_cast<int>(exp.size()) != source.size())
    throw std::invalid_argument("well-contained: expected label list has wrong length");
  return exp;
}

}  // namespace

bool verify_well_contained(const Tournament& host, const SmoothStructure& chi,
                           const std::map<int, int>& delta, const PartialDigraph& source,
                           const Ordering& source_order, const std::vector<int>& f,
                           const std::vector<int>& expected_labels,
                           std::vector<std::string>* violations) {
  auto fail = [&](const std::string& msg) {
    if (violations) violations->push_back(msg);
    return false;
  };
  if (static_cast<int>(f.size()) != source.size()) return fail("map has wrong length");
  if (static_cast<int>(source_order.size()) != source.size())
    return fail("ordering has wrong length");
  if (source.size() == 0) return true;

  std::vector<int> exp = label_targets(source, expected_labels);
  XiLabeling xi = xi_labels(host, chi, delta);

  bool ok = true;
  std::set<int> images;
  for (int v = 0; v < source.size(); ++v) {
    if (f[v] < 0 || f[v] >= host.size()) return fail("image out of range");
    if (!images.insert(f[v]).second) ok = fail("map is not injective");
  }
  for (int j = 0; j < source.size(); ++j) {
    int v = source_order.vertex_at(j);
    auto it = xi.label.find(f[v]);
    if (it == xi.label.end())
      ok = fail("image of position " + std::to_string(j + 1) + " is unlabeled");
    else if (it->second != exp[j])
      ok = fail("image of position " + std::to_string(j + 1) + " has label " +
                std::to_string(it->second) + ", want " + std::to_string(exp[j]));
  }
  for (auto [u, v] : source.arcs())
    if (!host.has_arc(f[u], f[v]))
      ok = fail("arc " + std::to_string(u) + "->" + std::to_string(v) + " not preserved");
  return ok;
}

std::optional<std::vector<int>> find_well_contained(const Tournament& host,
                                                    const SmoothStructure& chi,
                                                    const std::map<int, int>& delta,
                                                    const PartialDigraph& source,
                                                    const Ordering& source_order,
                                                    const std::vector<int>& expected_labels,
                                                    long long budget) {
  if (source.size() == 0) return std::vector<int>{};
  std::vector<int> exp = label_targets(source, expected_labels);
  XiLabeling xi = xi_labels(host, chi, delta);

  // Candidate lists per label, in block order.
  std::map<int, std::vector<int>> by_label;
  {
    int base = 0;
    for (size_t i = 0; i < xi.blocks.size(); ++i)
      for (const auto& blk : xi.blocks[i])
        for (int v : blk) by_label[xi.label.at(v)].push_back(v);
    (void)base;
  }

  std::vector<int> f(source.size(), -1);
  VertexMask used = 0;
  long long nodes = 0;
  auto dfs = [&](auto&& self, int j) -> bool {
    if (j == source.size()) return true;
    int v = source_order.vertex_at(j);
    auto it = by_label.find(exp[j]);
    if (it == by_label.end()) return false;
    for (int cand : it->second) {
      if (used & bit(cand)) continue;
      if (++nodes > budget) throw std::runtime_error("embedding search budget exceeded");
      bool fits = true;
      for (int jj = 0; jj < j && fits; ++jj) {
        int u = source_order.vertex_at(jj);
        if (source.has_arc(u, v) && !host.has_arc(f[u], cand)) fits = false;
        if (source.has_arc(v, u) && !host.has_arc(cand, f[u])) fits = false;
      }
      if (!fits) continue;
      f[v] = cand;
      used |= bit(cand);
      if (self(self, j + 1)) return true;
      used &= ~bit(cand);
      f[v] = -1;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return f;
}

Outcome extract_outcome(const Tournament& host, const std::vector<int>& f,
                        const KeyTournament& key) {
  const int nk = key.K.size();
  if (static_cast<int>(f.size()) != nk)
    throw std::invalid_argument("outcome: map has wrong length");
  std::set<int> images;
  for (int v : f) {
    if (v < 0 || v >= host.size()) throw std::invalid_argument("outcome: image out of range");
    if (!images.insert(v).second) throw std::invalid_argument("outcome: map is not injective");
  }
  std::set<std::pair<int, int>> undetermined;
  for (auto [u, v] : key.removed_arcs) undetermined.insert({u, v});
  for (int u = 0; u < nk; ++u)
    for (int v = 0; v < nk; ++v)
      if (u != v && key.K.has_arc(u, v) && !undetermined.count({u, v}) &&
          !host.has_arc(f[u], f[v]))
        throw std::invalid_argument("outcome: map does not preserve a determined arc");

  auto mapped = [&](std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());  // key ids are positions
    for (int& v : ids) v = f[v];
    return ids;
  };

  if (key.flavor == KeyTournament::Flavor::NebulaGalaxy) {
    for (size_t i = 0; i < key.gadgets.size(); ++i) {
      auto [u, v] = key.removed_arcs[i];
      if (host.has_arc(f[u], f[v])) continue;  // forward, consistent with the base
      std::vector<int> ids(key.gadgets[i].vertices);
      for (int t : key.gadgets[i].triplet) ids.push_back(t);
      return {Outcome::Target::Gadget, mapped(ids), static_cast<int>(i)};
    }
    return {Outcome::Target::Base, mapped(key.base_vertices), -1};
  }

  // Six-vertex gadgets: two undetermined arcs each, (d1,d3) then (d4,d6).
  for (size_t i = 0; i < key.gadgets.size(); ++i) {
    auto [a1, b1] = key.removed_arcs[2 * i];
    auto [a2, b2] = key.removed_arcs[2 * i + 1];
    if (host.has_arc(f[a1], f[b1]) && host.has_arc(f[a2], f[b2])) {
      std::vector<int> ids(key.gadgets[i].vertices);
      for (int t : key.gadgets[i].triplet) ids.push_back(t);
      return {Outcome::Target::K6, mapped(ids), static_cast<int>(i)};
    }
  }
  // Every gadget has a backward undetermined arc; rebuild the base with the
  // surviving middle vertex of each triangle (d4 when d6 beats it, else d3).
  std::set<int> base(key.base_vertices.begin(), key.base_vertices.end());
  for (size_t i = 0; i < key.gadgets.size(); ++i) {
    auto [d4, d6] = key.removed_arcs[2 * i + 1];
    if (host.has_arc(f[d6], f[d4])) continue;  // d4 survives
    auto [d1, d3] = key.removed_arcs[2 * i];
    base.erase(d4);
    base.insert(d3);
    (void)d1;
  }
  return {Outcome::Target::Base, mapped({base.begin(), base.end()}), -1};
}

namespace {

void require_disjoint(std::initializer_list<VertexMask> masks, const char* what) {
  VertexMask seen = 0;
  for (VertexMask m : masks) {
    if (m & seen) throw std::invalid_argument(std::string("density search: ") + what);
    seen |= m;
  }
}

}  // namespace

DensityWitness density_search(const Tournament& t, DensityMode mode, const DensityQuery& q) {
  DensityWitness w;
  switch (mode) {
    case DensityMode::MatchedPairs: {
      if (!q.x || !q.y) throw std::invalid_argument("density search: matched pairs need X and Y");
      require_disjoint({q.x, q.y}, "X and Y overlap");
      std::vector<int> xs = mask_to_vector(q.x), ys = mask_to_vector(q.y);
      // Maximum matching on arcs y -> x, augmenting paths from each x.
      std::vector<int> match_y(ys.size(), -1);
      std::vector<char> vis;
      auto augment = [&](auto&& self, int xi) -> bool {
        for (size_t yi = 0; yi < ys.size(); ++yi) {
          if (vis[yi] || !t.has_arc(ys[yi], xs[xi])) continue;
          vis[yi] = 1;
          if (match_y[yi] == -1 || self(self, match_y[yi])) {
            match_y[yi] = xi;
            return true;
          }
        }
        return false;
      };
      for (size_t xi = 0; xi < xs.size(); ++xi) {
        vis.assign(ys.size(), 0);
        augment(augment, static_cast<int>(xi));
      }
      for (size_t yi = 0; yi < ys.size(); ++yi)
        if (match_y[yi] != -1) w.pairs.emplace_back(xs[match_y[yi]], ys[yi]);
      std::sort(w.pairs.begin(), w.pairs.end());
      w.found = !w.pairs.empty();
      return w;
    }
    case DensityMode::CrossingArc: {
      if (!q.a || !q.g) throw std::invalid_argument("density search: crossing arc needs A and G");
      require_disjoint({q.a, q.g}, "A and G overlap");
      for (int gv : mask_to_vector(q.g))
        for (int av : mask_to_vector(q.a))
          if (w.into_a.first == -1 && t.has_arc(gv, av)) w.into_a = {gv, av};
      for (int av : mask_to_vector(q.a))
        for (int gv : mask_to_vector(q.g))
          if (w.out_of_a.first == -1 && t.has_arc(av, gv)) w.out_of_a = {av, gv};
      w.found = w.into_a.first != -1 && w.out_of_a.first != -1;
      return w;
    }
    case DensityMode::LinkedVertex: {
      if (!q.a) throw std::invalid_argument("density search: linked vertex needs A");
      for (int g : mask_to_vector(q.a)) {
        std::vector<int> ss, ps;
        for (VertexMask sm : q.s_sets) {
          VertexMask hit = t.out_neighbors(g) & sm;
          if (!hit) break;
          ss.push_back(lowest_bit(hit));
        }
        if (ss.size() != q.s_sets.size()) continue;
        for (VertexMask pm : q.p_sets) {
          VertexMask hit = t.in_neighbors(g) & pm;
          if (!hit) break;
          ps.push_back(lowest_bit(hit));
        }
        if (ps.size() != q.p_sets.size()) continue;
        w.found = true;
        w.g = g;
        w.s = std::move(ss);
        w.p = std::move(ps);
        return w;
      }
      return w;
    }
    case DensityMode::LinkedPair: {
      if (!q.a1 || !q.a2)
        throw std::invalid_argument("density search: linked pair needs A1 and A2");
      require_disjoint({q.a1, q.a2}, "A1 and A2 overlap");
      if (q.m < 0 || q.m > static_cast<int>(q.s_sets.size()))
        throw std::invalid_argument("density search: split index out of range");
      for (int x : mask_to_vector(q.a1))
        for (int y : mask_to_vector(q.a2)) {
          if (!t.has_arc(y, x)) continue;
          std::vector<int> ss;
          for (size_t i = 0; i < q.s_sets.size(); ++i) {
            VertexMask hit = static_cast<int>(i) < q.m ? t.in_neighbors(x) & q.s_sets[i]
                                                       : t.out_neighbors(y) & q.s_sets[i];
            if (!hit) break;
            ss.push_back(lowest_bit(hit));
          }
          if (ss.size() != q.s_sets.size()) continue;
          w.found = true;
          w.x = x;
          w.y = y;
          w.s = std::move(ss);
          return w;
        }
      return w;
    }
  }
  throw std::invalid_argument("density search: unknown mode");
}

namespace {

// log base b of v for 0 < b < 1 and v in [0, 1]; v = 0 degenerates to +inf.
NamedBound log_bound(const Rational& b, const Rational& v) {
  if (b <= Rational(0) || b >= Rational(1))
    throw std::domain_error("threshold: logarithm base outside (0,1)");
  if (v < Rational(0) || v > Rational(1)) throw std::domain_error("threshold: value outside [0,1]");
  if (v == Rational(0)) return {std::numeric_limits<double>::infinity(), true, std::nullopt};
  return {std::log(v.to_double()) / std::log(b.to_double()), false, std::nullopt};
}

Rational inverse_power(int base, int exponent) {
  std::int64_t acc = 1;
  for (int i = 0; i < exponent; ++i) {
    __int128 next = static_cast<__int128>(acc) * base;
    if (next > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("threshold: power bound does not fit 64 bits");
    acc = static_cast<std::int64_t>(next);
  }
  return Rational(1, acc);
}

NamedBound min_bound(const NamedBound& a, const NamedBound& b) {
  if (a.unbounded) return b;
  if (b.unbounded) return a;
  return a.value <= b.value ? a : b;
}

}  // namespace

std::map<std::string, NamedBound> epsilon_thresholds(const ThresholdParams& p) {
  if (p.c <= Rational(0) || p.c >= Rational(1))
    throw std::domain_error("threshold: c outside (0,1)");
  std::map<std::string, NamedBound> out;
  out["matched_pairs"] = log_bound(p.c / Rational(2), Rational(1, 2));
  if (p.f) out["crossing_arc"] = log_bound(p.c, Rational(1) - *p.f);
  if (!p.fs.empty() || !p.ls.empty()) {
    const int mt = static_cast<int>(p.fs.size() + p.ls.size());
    Rational base = p.c / Rational(2 * mt);
    NamedBound best{0.0, true, std::nullopt};
    for (const Rational& fr : p.fs) best = min_bound(best, log_bound(base, Rational(1) - fr));
    for (const Rational& lr : p.ls) best = min_bound(best, log_bound(base, Rational(1) - lr));
    out["linked_vertex"] = best;
  }
  if (p.t && p.f_pair) {
    if (*p.t < 1) throw std::domain_error("threshold: set count must be positive");
    out["linked_pair"] = min_bound(log_bound(p.c / Rational(2 * *p.t), Rational(1) - *p.f_pair),
                                   log_bound(p.c / Rational(4), Rational(1, 2)));
  }
  if (p.delta) {
    if (*p.delta < 1) throw std::domain_error("threshold: delta must be positive");
    Rational r = inverse_power(2 * *p.delta, *p.delta + 3);
    out["lambda_nebula"] = {r.to_double(), false, r};
  }
  if (p.h) {
    if (*p.h < 1) throw std::domain_error("threshold: h must be positive");
    Rational r = inverse_power(4 * *p.h, *p.h + 4);
    out["lambda_gk6"] = {r.to_double(), false, r};
  }
  return out;
}

}  // namespace ehc
