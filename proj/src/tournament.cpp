#include "ehc/tournament.hpp"

#include <algorithm>

namespace ehc {

std::vector<int> mask_to_vector(VertexMask m) {
  std::vector<int> vs;
  while (m) {
    int v = lowest_bit(m);
    vs.push_back(v);
    m &= m - 1;
  }
  return vs;
}

VertexMask vector_to_mask(const std::vector<int>& vs) {
  VertexMask m = 0;
  for (int v : vs) m |= bit(v);
  return m;
}

Tournament::Tournament(int n) : n_(n), out_(n, 0) {
  if (n < 0 || n > kMaxVertices) throw std::invalid_argument("tournament: bad vertex count");
}

void Tournament::set_arc(int u, int v) {
  if (u == v) throw std::invalid_argument("tournament: self loop");
  out_[u] |= bit(v);
  out_[v] &= ~bit(u);
}

void Tournament::flip_arc(int u, int v) {
  if (!has_arc(u, v)) throw std::invalid_argument("tournament: arc not present");
  set_arc(v, u);
}

bool Tournament::complete() const {
  for (int u = 0; u < n_; ++u) {
    if (out_[u] & bit(u)) return false;
    for (int v = u + 1; v < n_; ++v)
      if (has_arc(u, v) == has_arc(v, u)) return false;
  }
  return true;
}

void Tournament::require_complete() const {
  if (!complete()) throw std::invalid_argument("tournament: incomplete orientation");
}

Tournament Tournament::induced(VertexMask mask) const {
  std::vector<int> vs = mask_to_vector(mask);
  Tournament sub(static_cast<int>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = 0; j < vs.size(); ++j)
      if (i != j && has_arc(vs[i], vs[j])) sub.set_arc(static_cast<int>(i), static_cast<int>(j));
  return sub;
}

Tournament Tournament::relabeled(const std::vector<int>& perm) const {
  Tournament t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && has_arc(perm[i], perm[j])) t.set_arc(i, j);
  return t;
}

Tournament Tournament::transitive(int n) {
  Tournament t(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) t.set_arc(u, v);
  return t;
}

Tournament Tournament::three_cycle() {
  Tournament t(3);
  t.set_arc(0, 1);
  t.set_arc(1, 2);
  t.set_arc(2, 0);
  return t;
}

Tournament Tournament::canonical_k6() {
  Tournament t = transitive(6);
  // Backward arcs under the identity ordering: (v4,v1),(v6,v3),(v6,v1),(v5,v2),
  // zero-based (3,0),(5,2),(5,0),(4,1).
  t.set_arc(3, 0);
  t.set_arc(5, 2);
  t.set_arc(5, 0);
  t.set_arc(4, 1);
  return t;
}

Tournament Tournament::random(int n, std::mt19937_64& rng) {
  Tournament t(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng() & 1)
        t.set_arc(u, v);
      else
        t.set_arc(v, u);
    }
  return t;
}

PartialDigraph::PartialDigraph(int n) : n_(n), out_(n, 0) {
  if (n < 0 || n > Tournament::kMaxVertices)
    throw std::invalid_argument("digraph: bad vertex count");
}

PartialDigraph::PartialDigraph(const Tournament& t) : n_(t.size()), out_(t.size()) {
  for (int v = 0; v < n_; ++v) out_[v] = t.out_neighbors(v);
}

void PartialDigraph::add_arc(int u, int v) {
  if (u == v) throw std::invalid_argument("digraph: self loop");
  if (has_arc(v, u)) throw std::invalid_argument("digraph: pair already oriented");
  out_[u] |= bit(v);
}

void PartialDigraph::remove_arc(int u, int v) {
  if (!has_arc(u, v)) throw std::invalid_argument("digraph: arc not present");
  out_[u] &= ~bit(v);
}

std::vector<std::pair<int, int>> PartialDigraph::arcs() const {
  std::vector<std::pair<int, int>> as;
  for (int u = 0; u < n_; ++u)
    for (VertexMask m = out_[u]; m; m &= m - 1) as.emplace_back(u, lowest_bit(m));
  return as;
}

int PartialDigraph::arc_count() const {
  int c = 0;
  for (int u = 0; u < n_; ++u) c += popcount(out_[u]);
  return c;
}

PartialDigraph PartialDigraph::induced(VertexMask mask) const {
  std::vector<int> vs = mask_to_vector(mask);
  PartialDigraph sub(static_cast<int>(vs.size()));
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = 0; j < vs.size(); ++j)
      if (i != j && has_arc(vs[i], vs[j])) sub.add_arc(static_cast<int>(i), static_cast<int>(j));
  return sub;
}

Ordering::Ordering(std::vector<int> p) : perm(std::move(p)) {
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= static_cast<int>(perm.size()) || seen[v])
      throw std::invalid_argument("ordering: not a permutation");
    seen[v] = 1;
  }
}

std::vector<int> Ordering::positions() const {
  std::vector<int> pos(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<int>(i);
  return pos;
}

Ordering Ordering::identity(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return Ordering(std::move(p));
}

std::vector<int> Ordering::restrict_to(VertexMask mask) const {
  std::vector<int> r;
  for (int v : perm)
    if (mask & bit(v)) r.push_back(v);
  return r;
}

}  // namespace ehc
