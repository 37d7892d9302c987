#include "ehc/keys.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace ehc {

bool equal_under(const Tournament& a, const Ordering& oa, const Tournament& b,
                 const Ordering& ob) {
  if (a.size() != b.size() || oa.size() != a.size() || ob.size() != b.size()) return false;
  for (int p = 0; p < a.size(); ++p)
    for (int q = p + 1; q < a.size(); ++q)
      if (a.has_arc(oa.vertex_at(p), oa.vertex_at(q)) !=
          b.has_arc(ob.vertex_at(p), ob.vertex_at(q)))
        return false;
  return true;
}

std::vector<Tournament> completions(const PartialDigraph& partial) {
  const int n = partial.size();
  std::vector<std::pair<int, int>> open;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!partial.has_arc(u, v) && !partial.has_arc(v, u)) open.emplace_back(u, v);
  if (open.size() > 20) throw std::invalid_argument("completions: too many undetermined pairs");
  std::vector<Tournament> out;
  for (std::uint32_t m = 0; m < (1u << open.size()); ++m) {
    Tournament t(n);
    for (auto [u, v] : partial.arcs()) t.set_arc(u, v);
    for (size_t i = 0; i < open.size(); ++i) {
      auto [u, v] = open[i];
      if (m >> i & 1)
        t.set_arc(u, v);
      else
        t.set_arc(v, u);
    }
    t.require_complete();
    out.push_back(t);
  }
  return out;
}

namespace {

bool is_k6_instance(const Tournament& t, const Ordering& beta, const K6Witness& inst) {
  std::vector<int> pos = beta.positions();
  int p[6];
  for (int i = 0; i < 6; ++i) {
    if (inst.verts[i] < 0 || inst.verts[i] >= t.size()) return false;
    p[i] = pos[inst.verts[i]];
  }
  if (!(p[1] == p[0] + 1 && p[3] == p[2] + 1 && p[5] == p[4] + 1 && p[1] < p[2] && p[3] < p[4]))
    return false;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      bool expect = (a == 0 && b == 3) || (a == 2 && b == 5) || (a == 0 && b == 5) ||
                    (a == 1 && b == 4);
      if (t.has_arc(inst.verts[b], inst.verts[a]) != expect) return false;
    }
  return true;
}

}  // namespace

std::pair<Tournament, Ordering> operation_K6(const Tournament& t, const Ordering& beta,
                                             const K6Witness& inst) {
  if (!is_k6_instance(t, beta, inst))
    throw std::invalid_argument("operation_K6: not a valid K6 instance");
  Tournament work = t;
  work.set_arc(inst.verts[5], inst.verts[3]);  // reverse the 4th -> 6th arc
  VertexMask keep = t.all_mask() & ~bit(inst.verts[1]) & ~bit(inst.verts[2]) & ~bit(inst.verts[4]);
  Tournament reduced = work.induced(keep);
  std::vector<int> olds = mask_to_vector(keep);
  std::vector<int> new_id(t.size(), -1);
  for (size_t i = 0; i < olds.size(); ++i) new_id[olds[i]] = static_cast<int>(i);
  std::vector<int> perm;
  for (int v : beta.restrict_to(keep)) perm.push_back(new_id[v]);
  return {reduced, Ordering(std::move(perm))};
}

std::pair<Tournament, Ordering> reduce_all_K6(const Tournament& t, const Ordering& beta) {
  Tournament cur = t;
  Ordering ord = beta;
  for (;;) {
    auto insts = find_K6_instances(cur, ord);
    if (insts.empty()) return {cur, ord};
    std::tie(cur, ord) = operation_K6(cur, ord, insts.back());
  }
}

// ---------------------------------------------------------------------------
// build_key (base structure x one-triangle galaxy)

namespace {

struct Token {
  int src;      // label in the source tournament
  int gadget;   // -1 for base vertices
  int segment;  // gadget segment index 0..3, -1 for base
};

void require_regular_nebula_witness(const Tournament& host, const DecompositionWitness& d) {
  if (!d.singletons.empty())
    throw std::invalid_argument("regular structure required; extend to a regular "
                                "superstructure first");
  for (const Part& p : d.parts)
    if (p.kind != Part::Kind::Star && p.kind != Part::Kind::Super2Nebula)
      throw std::invalid_argument("base decomposition must consist of stars and super 2-nebulas");
  auto bad = check_decomposition(host, d);
  if (!bad.empty()) throw std::invalid_argument("invalid base decomposition: " + bad.front());
}

Part map_part(const Part& p, const std::vector<int>& to) {
  Part q = p;
  switch (q.kind) {
    case Part::Kind::Star:
      q.star.center = to[q.star.center];
      for (int& l : q.star.leaves) l = to[l];
      break;
    case Part::Kind::Super2Nebula:
      q.sigma.center1 = to[q.sigma.center1];
      q.sigma.center2 = to[q.sigma.center2];
      for (int& l : q.sigma.leaves1) l = to[l];
      for (int& l : q.sigma.leaves2) l = to[l];
      break;
    case Part::Kind::Triangle:
      q.triangle.left_exterior = to[q.triangle.left_exterior];
      q.triangle.center = to[q.triangle.center];
      q.triangle.right_exterior = to[q.triangle.right_exterior];
      break;
    case Part::Kind::K6:
      for (int& v : q.k6.verts) v = to[v];
      break;
  }
  return q;
}

}  // namespace

KeyTournament build_key(const Tournament& n_host, const DecompositionWitness& n_decomp,
                        const Tournament& g, const Ordering& alpha) {
  require_regular_nebula_witness(n_host, n_decomp);
  RecognizeOptions gopt;
  gopt.require_regular = true;
  auto gdec = recognize_decomposition(g, Grammar::DeltaGalaxy, alpha, gopt);
  if (!gdec)
    throw std::invalid_argument("build_key: second input is not a regular one-triangle "
                                "galaxy-with-triangle under the given ordering");

  const Ordering& theta = n_decomp.ordering;
  BadTripletSet bts = bad_triplets(n_host, n_decomp);
  const int s = static_cast<int>(bts.triplets.size());

  // Gadget segments: the pieces of g-minus-triangle cut at the triangle
  // positions, in alpha order.
  const TriangleWitness* tri = nullptr;
  for (const Part& p : gdec->parts)
    if (p.kind == Part::Kind::Triangle) tri = &p.triangle;
  std::vector<int> apos = alpha.positions();
  std::array<std::vector<int>, 4> seg;
  std::vector<int> seg_of(g.size(), -1);
  for (int p = 0; p < alpha.size(); ++p) {
    int v = alpha.vertex_at(p);
    if (v == tri->left_exterior || v == tri->center || v == tri->right_exterior) continue;
    int tseg = p < apos[tri->left_exterior] ? 0
               : p < apos[tri->center]      ? 1
               : p < apos[tri->right_exterior] ? 2
                                               : 3;
    seg[tseg].push_back(v);
    seg_of[v] = tseg;
  }

  // Leaf/center attributes.
  LeafVector ns = leaf_vector(n_decomp);
  std::vector<int> tpos = theta.positions();
  std::vector<char> n_leaf(n_host.size(), 0);
  for (int v = 0; v < n_host.size(); ++v) n_leaf[v] = static_cast<char>(ns.bits[tpos[v]]);
  std::vector<std::vector<int>> run_members;  // leaf labels per run of the base leaf vector
  for (auto [start, len] : one_runs(ns.bits)) {
    std::vector<int> mem;
    for (int i = start; i < start + len; ++i) mem.push_back(theta.vertex_at(i));
    run_members.push_back(mem);
  }
  std::vector<std::vector<int>> sigma_leaves;  // base labels per super 2-nebula
  for (const Part& p : n_decomp.parts)
    if (p.kind == Part::Kind::Super2Nebula) sigma_leaves.push_back(p.sigma.all_leaves(tpos));
  std::vector<char> g_leaf(g.size(), 0), g_center(g.size(), 0);
  struct GStar {
    std::vector<int> leaves;
    int leaf_segment;
  };
  std::vector<GStar> g_stars;
  for (const Part& p : gdec->parts)
    if (p.kind == Part::Kind::Star) {
      for (int l : p.star.leaves) g_leaf[l] = 1;
      g_center[p.star.center] = 1;
      g_stars.push_back({p.star.leaves, seg_of[p.star.leaves.front()]});
    }

  // Token sequence, seeded with the base ordering.
  std::vector<Token> seq;
  for (int p = 0; p < theta.size(); ++p) seq.push_back({theta.vertex_at(p), -1, -1});

  struct Block {
    int gadget, segment;
  };
  std::vector<Block> blocks;
  for (int i = 0; i < s; ++i)
    for (int t = 0; t < 4; ++t)
      if (!seg[t].empty()) blocks.push_back({i, t});

  auto sbit = [&](const Token& tok) {
    return tok.gadget < 0 ? static_cast<int>(n_leaf[tok.src]) : static_cast<int>(g_leaf[tok.src]);
  };
  auto index_of_base = [&](const std::vector<Token>& q, int v) {
    for (size_t i = 0; i < q.size(); ++i)
      if (q[i].gadget < 0 && q[i].src == v) return static_cast<int>(i);
    return -1;
  };

  // A partial placement stays valid iff base leaf runs are unbroken, every
  // placed gadget star has its leaves inside one run, and no gadget center
  // landed between leaves of a super 2-nebula. Violations are permanent, so
  // pruning here is safe.
  auto valid = [&](const std::vector<Token>& q, int placed_gadgets) {
    auto run_ok = [&](const std::vector<int>& indices) {
      int lo = *std::min_element(indices.begin(), indices.end());
      int hi = *std::max_element(indices.begin(), indices.end());
      for (int i = lo; i <= hi; ++i)
        if (!sbit(q[i])) return false;
      return true;
    };
    for (auto& mem : run_members) {
      std::vector<int> idx;
      for (int v : mem) idx.push_back(index_of_base(q, v));
      if (!run_ok(idx)) return false;
    }
    for (int gi = 0; gi < placed_gadgets; ++gi)
      for (auto& st : g_stars) {
        std::vector<int> idx;
        for (size_t i = 0; i < q.size(); ++i)
          if (q[i].gadget == gi &&
              std::find(st.leaves.begin(), st.leaves.end(), q[i].src) != st.leaves.end())
            idx.push_back(static_cast<int>(i));
        if (idx.size() == st.leaves.size() && !idx.empty() && !run_ok(idx)) return false;
      }
    for (auto& ls : sigma_leaves) {
      int lo = INT_MAX, hi = -1;
      for (int v : ls) {
        int i = index_of_base(q, v);
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
      for (int i = lo + 1; i < hi; ++i)
        if (q[i].gadget >= 0 && g_center[q[i].src]) return false;
    }
    return true;
  };

  std::vector<Token> result;
  std::function<bool(size_t, std::vector<Token>&)> place = [&](size_t bi,
                                                               std::vector<Token>& q) -> bool {
    if (bi == blocks.size()) {
      result = q;
      return true;
    }
    auto [gi, tseg] = blocks[bi];
    const auto& verts = bts.triplets[gi].verts;
    int x1 = index_of_base(q, verts[0]);
    int x2 = index_of_base(q, verts[1]);
    int x3 = index_of_base(q, verts[2]);
    int lo, hi;  // allowed gap range (gap k inserts before q[k])
    switch (tseg) {
      case 0: lo = 0; hi = x1; break;
      case 1: lo = x1 + 1; hi = x2; break;
      case 2: lo = x2 + 1; hi = x3; break;
      default: lo = x3 + 1; hi = static_cast<int>(q.size()); break;
    }
    for (int gap = lo; gap <= hi; ++gap) {
      // Keep previously placed blocks contiguous.
      if (gap > 0 && gap < static_cast<int>(q.size()) && q[gap - 1].gadget >= 0 &&
          q[gap].gadget == q[gap - 1].gadget && q[gap].segment == q[gap - 1].segment)
        continue;
      std::vector<Token> next = q;
      std::vector<Token> block;
      for (int v : seg[tseg]) block.push_back({v, gi, tseg});
      next.insert(next.begin() + gap, block.begin(), block.end());
      // A gadget counts as fully placed once its last block is in.
      int placed = gi + (bi + 1 < blocks.size() && blocks[bi + 1].gadget == gi ? 0 : 1);
      if (!valid(next, placed)) continue;
      if (place(bi + 1, next)) return true;
    }
    return false;
  };

  if (!place(0, seq))
    throw std::runtime_error("build_key: no gadget placement preserves the backward structure "
                             "(bad-triplet set would change)");

  // Materialize the key tournament; vertex label = position.
  const int kn = static_cast<int>(result.size());
  Tournament K(kn);
  for (int a = 0; a < kn; ++a)
    for (int b = a + 1; b < kn; ++b) {
      const Token& ta = result[a];
      const Token& tb = result[b];
      bool backward;
      if (ta.gadget < 0 && tb.gadget < 0)
        backward = n_host.has_arc(tb.src, ta.src);
      else if (ta.gadget == tb.gadget)
        backward = g.has_arc(tb.src, ta.src);
      else
        backward = false;
      if (backward)
        K.set_arc(b, a);
      else
        K.set_arc(a, b);
    }

  std::vector<int> base_id(n_host.size(), -1);
  std::vector<std::vector<int>> gadget_id(s, std::vector<int>(g.size(), -1));
  for (int i = 0; i < kn; ++i) {
    if (result[i].gadget < 0)
      base_id[result[i].src] = i;
    else
      gadget_id[result[i].gadget][result[i].src] = i;
  }

  KeyTournament key{KeyTournament::Flavor::NebulaGalaxy,
                    K,
                    Ordering::identity(kn),
                    {},
                    {},
                    {},
                    DecompositionWitness{Grammar::SuperNebula, Ordering::identity(kn), {}, {}}};
  for (int p = 0; p < theta.size(); ++p) key.base_vertices.push_back(base_id[theta.vertex_at(p)]);
  for (int i = 0; i < s; ++i) {
    KeyTournament::Gadget gd;
    for (int j = 0; j < 3; ++j) gd.triplet[j] = base_id[bts.triplets[i].verts[j]];
    for (int j = 0; j < kn; ++j)
      if (result[j].gadget == i) gd.vertices.push_back(j);
    key.gadgets.push_back(gd);
    key.removed_arcs.emplace_back(base_id[bts.triplets[i].forward_arc.first],
                                  base_id[bts.triplets[i].forward_arc.second]);
  }
  for (const Part& p : n_decomp.parts) key.decomp.parts.push_back(map_part(p, base_id));
  for (int i = 0; i < s; ++i)
    for (const Part& p : gdec->parts)
      if (p.kind == Part::Kind::Star) key.decomp.parts.push_back(map_part(p, gadget_id[i]));
  std::vector<int> kpos = key.ordering.positions();
  std::sort(key.decomp.parts.begin(), key.decomp.parts.end(), [&](const Part& a, const Part& b) {
    return a.first_position(kpos) < b.first_position(kpos);
  });

  KeyReport rep = verify_key(key, n_host, n_decomp, g, alpha);
  if (!rep.ok()) {
    std::string msg = "build_key: construction failed verification:";
    for (const std::string& n : rep.notes) msg += " " + n;
    throw std::runtime_error(msg);
  }
  return key;
}

KeyReport verify_key(const KeyTournament& key, const Tournament& n_host,
                     const DecompositionWitness& n_decomp, const Tournament& g,
                     const Ordering& alpha) {
  if (key.flavor != KeyTournament::Flavor::NebulaGalaxy)
    throw std::invalid_argument("verify_key: expects the nebula-galaxy flavor");
  KeyReport rep;
  const int kn = key.K.size();
  BadTripletSet bts = bad_triplets(n_host, n_decomp);
  const int s = static_cast<int>(bts.triplets.size());

  RecognizeOptions gopt;
  gopt.require_regular = true;
  auto gdec = recognize_decomposition(g, Grammar::DeltaGalaxy, alpha, gopt);
  const TriangleWitness* tri = nullptr;
  if (gdec)
    for (const Part& p : gdec->parts)
      if (p.kind == Part::Kind::Triangle) tri = &p.triangle;
  if (!tri) {
    rep.notes.push_back("second input is not a regular one-triangle structure");
    return rep;
  }
  VertexMask tri_mask = bit(tri->left_exterior) | bit(tri->center) | bit(tri->right_exterior);

  // 1: vertex partition and sizes.
  {
    std::vector<int> owner(kn, 0);
    for (int v : key.base_vertices) ++owner[v];
    bool sizes = static_cast<int>(key.gadgets.size()) == s &&
                 static_cast<int>(key.base_vertices.size()) == n_host.size();
    for (auto& gd : key.gadgets) {
      sizes = sizes && static_cast<int>(gd.vertices.size()) == g.size() - 3;
      for (int v : gd.vertices) ++owner[v];
    }
    bool partition = true;
    for (int v = 0; v < kn; ++v) partition = partition && owner[v] == 1;
    rep.bullets[0] = sizes && partition;
    if (!rep.bullets[0]) rep.notes.push_back("vertex partition or gadget count mismatch");
  }

  std::vector<int> kpos = key.ordering.positions();
  auto increasing = [&](const std::vector<int>& vs) {
    for (size_t i = 1; i < vs.size(); ++i)
      if (kpos[vs[i - 1]] >= kpos[vs[i]]) return false;
    return true;
  };

  // 2: the base copy matches the base structure under its ordering.
  {
    bool ok = increasing(key.base_vertices);
    for (int p = 0; p < n_host.size() && ok; ++p)
      for (int q = p + 1; q < n_host.size() && ok; ++q)
        if (key.K.has_arc(key.base_vertices[p], key.base_vertices[q]) !=
            n_host.has_arc(n_decomp.ordering.vertex_at(p), n_decomp.ordering.vertex_at(q)))
          ok = false;
    rep.bullets[1] = ok;
    if (!ok) rep.notes.push_back("base copy differs from the base structure");
  }

  // 3: each gadget matches g minus its triangle under the restricted ordering.
  {
    std::vector<int> grest = alpha.restrict_to(g.all_mask() & ~tri_mask);
    bool ok = true;
    for (auto& gd : key.gadgets) {
      ok = ok && increasing(gd.vertices) && gd.vertices.size() == grest.size();
      for (size_t p = 0; p < grest.size() && ok; ++p)
        for (size_t q = p + 1; q < grest.size() && ok; ++q)
          if (key.K.has_arc(gd.vertices[p], gd.vertices[q]) != g.has_arc(grest[p], grest[q]))
            ok = false;
    }
    rep.bullets[2] = ok;
    if (!ok) rep.notes.push_back("a gadget copy differs from g minus its triangle");
  }

  // 4: bad triplets of the key equal those of the base structure.
  {
    bool ok = check_decomposition(key.K, key.decomp).empty();
    if (!ok)
      rep.notes.push_back("key decomposition is not a valid regular structure");
    else {
      BadTripletSet kb = bad_triplets(key.K, key.decomp);
      std::set<std::array<int, 3>> expected, got;
      for (auto& t : bts.triplets)
        expected.insert({key.base_vertices[n_decomp.ordering.positions()[t.verts[0]]],
                         key.base_vertices[n_decomp.ordering.positions()[t.verts[1]]],
                         key.base_vertices[n_decomp.ordering.positions()[t.verts[2]]]});
      for (auto& t : kb.triplets) got.insert({t.verts[0], t.verts[1], t.verts[2]});
      ok = expected == got;
      if (!ok) rep.notes.push_back("bad-triplet sets differ");
    }
    rep.bullets[3] = ok;
  }

  // 5: restoring the forward arc of each triplet inside its gadget span
  // yields g under alpha.
  {
    bool ok = key.removed_arcs.size() == key.gadgets.size();
    for (size_t i = 0; i < key.gadgets.size() && ok; ++i) {
      const auto& gd = key.gadgets[i];
      auto [eu, ev] = key.removed_arcs[i];
      VertexMask xmask = vector_to_mask(gd.vertices);
      for (int v : gd.triplet) xmask |= bit(v);
      bool in_triplet = (bit(eu) | bit(ev)) ==
                        ((bit(eu) | bit(ev)) & (bit(gd.triplet[0]) | bit(gd.triplet[1]) |
                                                bit(gd.triplet[2])));
      if (!in_triplet || !key.K.has_arc(eu, ev) || kpos[eu] >= kpos[ev]) {
        ok = false;
        break;
      }
      Tournament sub = key.K.induced(xmask);
      std::vector<int> olds = mask_to_vector(xmask);
      std::vector<int> new_id(kn, -1);
      for (size_t j = 0; j < olds.size(); ++j) new_id[olds[j]] = static_cast<int>(j);
      sub.set_arc(new_id[ev], new_id[eu]);
      ok = equal_under(sub, Ordering::identity(static_cast<int>(olds.size())), g, alpha);
    }
    rep.bullets[4] = ok;
    if (!ok) rep.notes.push_back("a gadget span does not restore to g");
  }

  // 6: every backward arc lies inside the base copy or inside one gadget.
  {
    VertexMask base_mask = vector_to_mask(key.base_vertices);
    bool ok = true;
    for (auto& [a, b] : backward_arc_graph(key.K, key.ordering)) {
      bool inside = (bit(a) | bit(b)) == ((bit(a) | bit(b)) & base_mask);
      for (auto& gd : key.gadgets) {
        VertexMask gm = vector_to_mask(gd.vertices);
        inside = inside || (bit(a) | bit(b)) == ((bit(a) | bit(b)) & gm);
      }
      ok = ok && inside;
    }
    rep.bullets[5] = ok;
    if (!ok) rep.notes.push_back("backward arc crosses the base/gadget boundary");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// build_key_GK6

KeyTournament build_key_GK6(const Tournament& h, const DecompositionWitness& h_decomp) {
  if (!h_decomp.singletons.empty())
    throw std::invalid_argument("regular structure required; extend to a regular "
                                "superstructure first");
  for (const Part& p : h_decomp.parts)
    if (p.kind != Part::Kind::Star && p.kind != Part::Kind::Triangle)
      throw std::invalid_argument("host decomposition must consist of stars and triangles");
  DecompositionWitness central = h_decomp;
  central.grammar = Grammar::CentralTriangularGalaxy;
  auto bad = check_decomposition(h, central);
  if (!bad.empty())
    throw std::invalid_argument("invalid host decomposition: " + bad.front());

  const Ordering& theta = h_decomp.ordering;
  std::vector<int> pos = theta.positions();

  // Inserted tokens: one right after each triangle's first vertex, one right
  // before its second, one right before its third.
  struct Ins {
    int gadget;
    int role;  // 1, 2, 4: index of the inserted vertex within its six-set
  };
  std::vector<std::vector<Ins>> before(h.size()), after(h.size());
  std::vector<const TriangleWitness*> tris;
  for (const Part& p : h_decomp.parts)
    if (p.kind == Part::Kind::Triangle) {
      int gi = static_cast<int>(tris.size());
      tris.push_back(&p.triangle);
      after[p.triangle.left_exterior].push_back({gi, 1});
      before[p.triangle.center].push_back({gi, 2});
      before[p.triangle.right_exterior].push_back({gi, 4});
    }
  const int l = static_cast<int>(tris.size());

  struct Token {
    int src;     // host label, or -1 for inserted
    int gadget;  // -1 for host vertices outside any triangle six-set
    int role;    // 0..5 within the six-set
  };
  std::vector<int> tri_of(h.size(), -1), role_of(h.size(), -1);
  for (int gi = 0; gi < l; ++gi) {
    tri_of[tris[gi]->left_exterior] = gi;
    role_of[tris[gi]->left_exterior] = 0;
    tri_of[tris[gi]->center] = gi;
    role_of[tris[gi]->center] = 3;
    tri_of[tris[gi]->right_exterior] = gi;
    role_of[tris[gi]->right_exterior] = 5;
  }
  std::vector<Token> seq;
  for (int p = 0; p < theta.size(); ++p) {
    int v = theta.vertex_at(p);
    for (const Ins& ins : before[v]) seq.push_back({-1, ins.gadget, ins.role});
    seq.push_back({v, tri_of[v], role_of[v]});
    for (const Ins& ins : after[v]) seq.push_back({-1, ins.gadget, ins.role});
  }

  const int kn = static_cast<int>(seq.size());
  Tournament K(kn);
  for (int a = 0; a < kn; ++a)
    for (int b = a + 1; b < kn; ++b) {
      bool backward = false;
      if (seq[a].src >= 0 && seq[b].src >= 0) backward = h.has_arc(seq[b].src, seq[a].src);
      if (seq[a].gadget >= 0 && seq[a].gadget == seq[b].gadget) {
        int ra = seq[a].role, rb = seq[b].role;
        backward = (ra == 0 && rb == 3) || (ra == 2 && rb == 5) || (ra == 0 && rb == 5) ||
                   (ra == 1 && rb == 4);
      }
      if (backward)
        K.set_arc(b, a);
      else
        K.set_arc(a, b);
    }

  std::vector<int> base_id(h.size(), -1);
  std::vector<std::array<int, 6>> six(l);
  for (int i = 0; i < kn; ++i) {
    if (seq[i].src >= 0) base_id[seq[i].src] = i;
    if (seq[i].gadget >= 0) six[seq[i].gadget][seq[i].role] = i;
  }

  KeyTournament key{KeyTournament::Flavor::GK6,
                    K,
                    Ordering::identity(kn),
                    {},
                    {},
                    {},
                    DecompositionWitness{Grammar::GK6, Ordering::identity(kn), {}, {}}};
  for (int p = 0; p < theta.size(); ++p) key.base_vertices.push_back(base_id[theta.vertex_at(p)]);
  for (int gi = 0; gi < l; ++gi) {
    KeyTournament::Gadget gd;
    gd.triplet = {six[gi][0], six[gi][3], six[gi][5]};
    gd.vertices = {six[gi][1], six[gi][2], six[gi][4]};
    key.gadgets.push_back(gd);
    key.removed_arcs.emplace_back(six[gi][0], six[gi][2]);
    key.removed_arcs.emplace_back(six[gi][3], six[gi][5]);
  }
  for (const Part& p : h_decomp.parts)
    if (p.kind == Part::Kind::Star) key.decomp.parts.push_back(map_part(p, base_id));
  for (int gi = 0; gi < l; ++gi) {
    Part p;
    p.kind = Part::Kind::K6;
    p.k6.verts = six[gi];
    key.decomp.parts.push_back(p);
  }
  std::vector<int> kpos = key.ordering.positions();
  std::sort(key.decomp.parts.begin(), key.decomp.parts.end(), [&](const Part& a, const Part& b) {
    return a.first_position(kpos) < b.first_position(kpos);
  });

  auto problems = check_decomposition(K, key.decomp);
  if (!problems.empty())
    throw std::runtime_error("build_key_GK6: gadget placement violates the grammar: " +
                             problems.front());
  return key;
}

}  // namespace ehc
