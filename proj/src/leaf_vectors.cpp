#include "ehc/leaf_vectors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ehc {

namespace {

void require_nebula_parts(const DecompositionWitness& decomp, bool regular) {
  for (const Part& p : decomp.parts)
    if (p.kind != Part::Kind::Star && p.kind != Part::Kind::Super2Nebula)
      throw std::invalid_argument("decomposition must consist of stars and super 2-nebulas");
  if (regular && !decomp.singletons.empty())
    throw std::invalid_argument("regular decomposition required; extend to a regular "
                                "superstructure first");
}

}  // namespace

std::vector<std::pair<int, int>> one_runs(const std::vector<int>& bits) {
  std::vector<std::pair<int, int>> runs;
  for (size_t i = 0; i < bits.size();) {
    if (bits[i] == 0) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < bits.size() && bits[j] == 1) ++j;
    runs.emplace_back(static_cast<int>(i), static_cast<int>(j - i));
    i = j;
  }
  return runs;
}

LeafVector leaf_vector(const DecompositionWitness& decomp) {
  require_nebula_parts(decomp, false);
  std::vector<int> pos = decomp.ordering.positions();
  LeafVector s;
  s.bits.assign(decomp.ordering.size(), 0);
  for (const Part& p : decomp.parts) {
    if (p.kind == Part::Kind::Star)
      for (int l : p.star.leaves) s.bits[pos[l]] = 1;
    else
      for (int l : p.sigma.all_leaves(pos)) s.bits[pos[l]] = 1;
  }
  return s;
}

ContractedVector contract(const LeafVector& s) {
  ContractedVector c;
  for (size_t i = 0; i < s.bits.size();) {
    if (s.bits[i] == 0) {
      c.bits.push_back(0);
      ++i;
      continue;
    }
    size_t j = i;
    while (j < s.bits.size() && s.bits[j] == 1) ++j;
    c.multiplicity[static_cast<int>(c.bits.size())] = static_cast<int>(j - i);
    c.bits.push_back(1);
    i = j;
  }
  return c;
}

RestrictedStructure restrict_structure(const Tournament& host, const DecompositionWitness& decomp,
                                       PartSelector selector, int k) {
  require_nebula_parts(decomp, false);
  Part::Kind want =
      selector == PartSelector::Super2Nebulas ? Part::Kind::Super2Nebula : Part::Kind::Star;
  std::vector<const Part*> selected;
  for (const Part& p : decomp.parts)
    if (p.kind == want) selected.push_back(&p);
  if (k < 0 || k > static_cast<int>(selected.size()))
    throw std::invalid_argument("restrict_structure: k out of range");

  VertexMask mask = 0;
  for (int i = 0; i < k; ++i) mask |= selected[i]->vertices();

  std::vector<int> pos = decomp.ordering.positions();
  LeafVector full = leaf_vector(decomp);

  // Run id of each position's source run in the full leaf vector.
  std::vector<int> run_id(full.bits.size(), -1);
  auto runs = one_runs(full.bits);
  for (size_t r = 0; r < runs.size(); ++r)
    for (int i = runs[r].first; i < runs[r].first + runs[r].second; ++i)
      run_id[i] = static_cast<int>(r);

  RestrictedStructure out{.vertices = decomp.ordering.restrict_to(mask),
                          .sub = host.induced(mask),
                          .sub_ordering = Ordering{},
                          .s = {},
                          .sc = {}};
  // Relabel the restricted ordering into the induced tournament's ids.
  std::vector<int> old_ids = mask_to_vector(mask);
  std::vector<int> new_id(host.size(), -1);
  for (size_t i = 0; i < old_ids.size(); ++i) new_id[old_ids[i]] = static_cast<int>(i);
  std::vector<int> perm;
  for (int v : out.vertices) perm.push_back(new_id[v]);
  out.sub_ordering = Ordering(std::move(perm));

  int prev_run = -2;  // source run of the previous restricted entry, -2 for zero
  for (int v : out.vertices) {
    int b = full.bits[pos[v]];
    out.s.bits.push_back(b);
    if (b == 0) {
      out.sc.bits.push_back(0);
      prev_run = -2;
    } else if (run_id[pos[v]] == prev_run) {
      ++out.sc.multiplicity[static_cast<int>(out.sc.bits.size()) - 1];
    } else {
      out.sc.multiplicity[static_cast<int>(out.sc.bits.size())] = 1;
      out.sc.bits.push_back(1);
      prev_run = run_id[pos[v]];
    }
  }
  return out;
}

BadTripletSet bad_triplets(const Tournament& host, const DecompositionWitness& decomp) {
  require_nebula_parts(decomp, true);
  std::vector<int> pos = decomp.ordering.positions();
  LeafVector s = leaf_vector(decomp);

  // R-class (source run) of each leaf position.
  std::vector<int> run_id(s.bits.size(), -1);
  auto runs = one_runs(s.bits);
  for (size_t r = 0; r < runs.size(); ++r)
    for (int i = runs[r].first; i < runs[r].first + runs[r].second; ++i)
      run_id[i] = static_cast<int>(r);

  std::set<std::array<int, 3>> seen;  // keyed by increasing positions
  BadTripletSet out;
  auto emit = [&](int a, int b, int c, BadTriplet::Source src) {
    std::array<int, 3> vs = {a, b, c};
    std::sort(vs.begin(), vs.end(), [&](int x, int y) { return pos[x] < pos[y]; });
    std::array<int, 3> key = {pos[vs[0]], pos[vs[1]], pos[vs[2]]};
    if (!seen.insert(key).second) return;
    // The unique forward arc of the triple.
    std::pair<int, int> fwd{-1, -1};
    int fwd_count = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (host.has_arc(vs[i], vs[j])) {
          fwd = {vs[i], vs[j]};
          ++fwd_count;
        }
    if (fwd_count != 1)
      throw std::logic_error("bad triplet without exactly one forward arc");
    out.triplets.push_back({vs, src, fwd});
  };

  for (const Part& p : decomp.parts) {
    if (p.kind != Part::Kind::Star) continue;
    const auto& leaves = p.star.leaves;
    for (size_t i = 0; i < leaves.size(); ++i)
      for (size_t j = i + 1; j < leaves.size(); ++j)
        if (run_id[pos[leaves[i]]] != run_id[pos[leaves[j]]])
          emit(p.star.center, leaves[i], leaves[j], BadTriplet::Source::Star);
  }

  std::vector<int> sigma_vertices;
  for (const Part& p : decomp.parts)
    if (p.kind == Part::Kind::Super2Nebula)
      for (int v : mask_to_vector(p.sigma.vertices())) sigma_vertices.push_back(v);
  for (size_t i = 0; i < sigma_vertices.size(); ++i)
    for (size_t j = i + 1; j < sigma_vertices.size(); ++j)
      for (size_t k = j + 1; k < sigma_vertices.size(); ++k) {
        int a = sigma_vertices[i], b = sigma_vertices[j], c = sigma_vertices[k];
        int backward = 0;
        for (int u : {a, b, c})
          for (int v : {a, b, c})
            if (u != v && pos[u] < pos[v] && host.has_arc(v, u)) ++backward;
        if (backward == 2) emit(a, b, c, BadTriplet::Source::Sigma);
      }

  std::sort(out.triplets.begin(), out.triplets.end(),
            [&](const BadTriplet& x, const BadTriplet& y) {
              return std::array<int, 3>{pos[x.verts[0]], pos[x.verts[1]], pos[x.verts[2]]} <
                     std::array<int, 3>{pos[y.verts[0]], pos[y.verts[1]], pos[y.verts[2]]};
            });
  return out;
}

PartialDigraph mutant(const Tournament& host, const DecompositionWitness& decomp) {
  PartialDigraph d(host);
  std::set<std::pair<int, int>> removed;
  for (const BadTriplet& t : bad_triplets(host, decomp).triplets)
    if (removed.insert(t.forward_arc).second)
      d.remove_arc(t.forward_arc.first, t.forward_arc.second);
  return d;
}

std::vector<Tournament> reversal_set(const Tournament& g, const Ordering& alpha) {
  RecognizeOptions opt;
  opt.require_regular = true;
  auto w = recognize_decomposition(g, Grammar::DeltaGalaxy, alpha, opt);
  if (!w)
    throw std::invalid_argument("reversal_set: input is not a regular one-triangle "
                                "galaxy-with-triangle under the given ordering");
  const TriangleWitness* tri = nullptr;
  for (const Part& p : w->parts)
    if (p.kind == Part::Kind::Triangle) tri = &p.triangle;
  std::vector<Tournament> out;
  int l = tri->left_exterior, c = tri->center, r = tri->right_exterior;
  for (auto [u, v] : {std::pair{c, l}, std::pair{r, c}, std::pair{r, l}}) {
    Tournament flipped = g;
    flipped.flip_arc(u, v);
    out.push_back(flipped);
  }
  return out;
}

}  // namespace ehc
