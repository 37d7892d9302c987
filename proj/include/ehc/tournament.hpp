#ifndef EHC_TOURNAMENT_HPP
#define EHC_TOURNAMENT_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ehc {

using VertexMask = std::uint64_t;

inline int popcount(VertexMask m) { return __builtin_popcountll(m); }
inline int lowest_bit(VertexMask m) { return __builtin_ctzll(m); }
inline VertexMask bit(int v) { return VertexMask{1} << v; }

std::vector<int> mask_to_vector(VertexMask m);
VertexMask vector_to_mask(const std::vector<int>& vs);

// Complete orientation on n vertices, n <= 64, one bit row of out-neighbors
// per vertex. All search kernels work on these rows word-parallel.
class Tournament {
 public:
  static constexpr int kMaxVertices = 64;

  explicit Tournament(int n);

  int size() const { return n_; }
  bool has_arc(int u, int v) const { return (out_[u] >> v) & 1; }
  VertexMask out_neighbors(int v) const { return out_[v]; }
  VertexMask in_neighbors(int v) const { return all_mask() & ~out_[v] & ~bit(v); }
  VertexMask all_mask() const { return n_ == 64 ? ~VertexMask{0} : (bit(n_) - 1); }

  // Orients the pair {u,v} as u -> v, replacing any previous orientation.
  void set_arc(int u, int v);
  void flip_arc(int u, int v);  // requires u -> v present

  bool complete() const;  // every pair oriented exactly once
  void require_complete() const;

  // Induced subtournament on the vertices of `mask`, relabeled 0..k-1 in
  // increasing vertex order.
  Tournament induced(VertexMask mask) const;

  // Relabels vertices: new vertex i is old perm[i].
  Tournament relabeled(const std::vector<int>& perm) const;

  bool operator==(const Tournament& o) const { return n_ == o.n_ && out_ == o.out_; }

  static Tournament transitive(int n);
  static Tournament three_cycle();
  static Tournament canonical_k6();
  static Tournament random(int n, std::mt19937_64& rng);

 private:
  int n_;
  std::vector<VertexMask> out_;
};

// Digraph with at most one orientation per pair, no self loops. Houses
// mutants (tournaments with some arcs deleted).
class PartialDigraph {
 public:
  explicit PartialDigraph(int n);
  explicit PartialDigraph(const Tournament& t);

  int size() const { return n_; }
  bool has_arc(int u, int v) const { return (out_[u] >> v) & 1; }
  VertexMask out_neighbors(int v) const { return out_[v]; }
  void add_arc(int u, int v);
  void remove_arc(int u, int v);
  std::vector<std::pair<int, int>> arcs() const;
  int arc_count() const;

  PartialDigraph induced(VertexMask mask) const;

  bool operator==(const PartialDigraph& o) const { return n_ == o.n_ && out_ == o.out_; }

 private:
  int n_;
  std::vector<VertexMask> out_;
};

// Permutation of 0..n-1; perm[position] = vertex.
struct Ordering {
  std::vector<int> perm;

  Ordering() = default;
  explicit Ordering(std::vector<int> p);

  int size() const { return static_cast<int>(perm.size()); }
  int vertex_at(int pos) const { return perm[pos]; }
  std::vector<int> positions() const;  // inverse: vertex -> position
  static Ordering identity(int n);

  // Restriction to a vertex subset, as an ordering of the original labels.
  std::vector<int> restrict_to(VertexMask mask) const;

  bool operator==(const Ordering& o) const { return perm == o.perm; }
};

}  // namespace ehc

#endif
