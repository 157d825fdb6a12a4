#pragma once

#include <string>
#include <vector>

#include "hochkit/constructors.hpp"
#include "hochkit/hochschild.hpp"
#include "hochkit/ses.hpp"
#include "hochkit/space.hpp"

namespace hochkit {

struct Cover {
  FiniteSpace space;
  std::vector<uint64_t> pieces;

  void validate() const {
    space.validate();
    uint64_t u = 0;
    for (uint64_t p : pieces) {
      if (!space.is_open(p)) throw ValidationError("cover: piece is not open: " + space.open_name(p));
      u |= p;
    }
    if (u != space.full()) throw ValidationError("cover: pieces do not cover the space");
  }
};

struct CoverClosure {
  std::vector<uint64_t> opens;  // distinct nonempty intersections, sorted by name
  Poset poset;                  // ordered by inclusion
};

// All nonempty intersections of cover pieces, ordered by inclusion; empty
// intersections are excluded.
inline CoverClosure cover_closure(const Cover& c) {
  c.validate();
  const size_t r = c.pieces.size();
  if (r > 20) throw ResourceCapError("cover_closure: too many pieces");
  std::vector<uint64_t> acc;
  for (uint64_t mask = 1; mask < (1ull << r); ++mask) {
    uint64_t inter = c.space.full();
    for (size_t i = 0; i < r; ++i)
      if (mask & (1ull << i)) inter &= c.pieces[i];
    if (inter != 0) acc.push_back(inter);
  }
  std::sort(acc.begin(), acc.end());
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
  CoverClosure out;
  out.poset = opens_poset(c.space, acc);
  // align opens with the poset's (name-sorted) order
  for (Index i = 0; i < out.poset.size(); ++i)
    out.opens.push_back(c.space.open_from_names([&] {
      std::vector<std::string> pts;
      std::string name = out.poset.names[i];
      size_t start = 0;
      while (start < name.size()) {
        size_t plus = name.find('+', start);
        if (plus == std::string::npos) plus = name.size();
        pts.push_back(name.substr(start, plus - start));
        start = plus + 1;
      }
      return pts;
    }()));
  return out;
}

// A family of basis opens with its inclusion poset and incidence category.
template <class S>
struct BasisSetup {
  std::vector<uint64_t> opens;  // aligned with poset order
  Poset poset;
  RingPresheaf<S> presheaf;
  FinLinCat<S> cat;
};

template <class S>
BasisSetup<S> basis_setup(const FiniteSpace& s, const std::vector<uint64_t>& fam,
                          const Algebra<S>& constant_value) {
  BasisSetup<S> out;
  out.poset = opens_poset(s, fam);
  for (Index i = 0; i < out.poset.size(); ++i) {
    // recover the bitset by name order
    for (uint64_t u : fam)
      if (s.open_name(u) == out.poset.names[i]) out.opens.push_back(u);
  }
  out.presheaf = constant_presheaf(out.poset, constant_value);
  out.cat = incidence_category(out.presheaf);
  return out;
}

template <class S>
BasisSetup<S> minimal_basis_setup(const FiniteSpace& s, const Algebra<S>& constant_value) {
  auto an = space_analysis(s);
  return basis_setup(s, an.minimal_basis, constant_value);
}

// Incidence category of the intersection closure of a cover, with a constant
// algebra on every piece.
template <class S>
BasisSetup<S> closure_setup(const Cover& c, const Algebra<S>& value) {
  auto cl = cover_closure(c);
  return basis_setup(c.space, cl.opens, value);
}

// Sections of the constant sheaf: one copy of k per connected component of
// each open, restrictions given by the component maps. On bases of connected
// opens this is the constant ground-field presheaf.
template <class S>
BasisSetup<S> constant_sheaf_setup(const Field<S>& k, const FiniteSpace& s,
                                   const std::vector<uint64_t>& fam) {
  BasisSetup<S> out;
  out.poset = opens_poset(s, fam);
  for (Index i = 0; i < out.poset.size(); ++i)
    for (uint64_t u : fam)
      if (s.open_name(u) == out.poset.names[i]) out.opens.push_back(u);
  RingPresheaf<S> o;
  o.poset = out.poset;
  std::vector<std::vector<uint64_t>> comps;
  for (Index i = 0; i < out.poset.size(); ++i) {
    comps.push_back(open_components(s, out.opens[i]));
    Algebra<S> a;
    a.field = k;
    const Index m = static_cast<Index>(comps.back().size());
    for (Index c = 0; c < m; ++c) {
      a.labels.push_back("c" + std::to_string(c));
      a.mult.add(c, c, c, k.of(1));
    }
    a.unit = Vec<S>::Constant(m, S(0));
    for (Index c = 0; c < m; ++c) a.unit(c) = k.of(1);
    o.alg.push_back(a);
  }
  for (Index u = 0; u < out.poset.size(); ++u)
    for (Index v = 0; v < out.poset.size(); ++v) {
      if (!out.poset.leq(u, v)) continue;
      Mat<S> r = zero_mat<S>(static_cast<Index>(comps[u].size()),
                             static_cast<Index>(comps[v].size()));
      for (size_t cu = 0; cu < comps[u].size(); ++cu)
        for (size_t cv = 0; cv < comps[v].size(); ++cv)
          if ((comps[u][cu] & ~comps[v][cv]) == 0) r(cu, cv) = k.of(1);
      o.restr[{u, v}] = r;
    }
  out.presheaf = o;
  out.cat = incidence_category(o);
  return out;
}

// The covering short exact sequence of Hochschild complexes
//   0 -> C(B) -> C(B_U) ⊕ C(B_V) -> C(B_{U∩V}) -> 0
// keyed by where a chain's largest element lives. Requires every basis open
// to lie in U or in V.
template <class S>
struct CoverSes {
  SesOfComplexes<S> ses;
  HochschildComplex<S> all, onU, onV, onI;
  FinLinCat<S> catU, catV, catI;
};

template <class S>
CoverSes<S> cover_ses(const BasisSetup<S>& b, uint64_t U, uint64_t V, int n_max,
                      Index cap = 200000) {
  std::vector<std::string> inU, inV, inI;
  for (Index i = 0; i < b.poset.size(); ++i) {
    const bool u = (b.opens[i] & ~U) == 0;
    const bool v = (b.opens[i] & ~V) == 0;
    if (!u && !v)
      throw ValidationError("cover_ses: basis element " + b.poset.names[i] +
                            " lies in neither piece");
    if (u) inU.push_back(b.poset.names[i]);
    if (v) inV.push_back(b.poset.names[i]);
    if (u && v) inI.push_back(b.poset.names[i]);
  }
  CoverSes<S> out;
  out.catU = full_subcategory(b.cat, inU);
  out.catV = full_subcategory(b.cat, inV);
  out.catI = full_subcategory(b.cat, inI);
  HochschildOptions opts;
  opts.n_max = n_max;
  opts.max_total_dim = cap;
  out.all = hochschild_complex(b.cat, diagonal_bimodule(b.cat), opts);
  out.onU = hochschild_complex(out.catU, diagonal_bimodule(out.catU), opts);
  out.onV = hochschild_complex(out.catV, diagonal_bimodule(out.catV), opts);
  out.onI = hochschild_complex(out.catI, diagonal_bimodule(out.catI), opts);

  auto RU = restriction_map(out.all, out.onU, b.cat, out.catU);
  auto RV = restriction_map(out.all, out.onV, b.cat, out.catV);
  auto RUI = restriction_map(out.onU, out.onI, out.catU, out.catI);
  auto RVI = restriction_map(out.onV, out.onI, out.catV, out.catI);

  SesOfComplexes<S>& s = out.ses;
  s.A = out.all.cx;
  s.C = out.onI.cx;
  s.B.field = b.cat.field;
  s.B.lo = s.A.lo;
  s.B.hi = s.A.hi;
  s.B.complete_below = s.A.complete_below;
  s.B.complete_above = s.A.complete_above;
  for (int n = s.B.lo; n <= s.B.hi; ++n) s.B.dims.push_back(out.onU.dim(n) + out.onV.dim(n));
  for (int n = s.B.lo; n < s.B.hi; ++n) {
    Mat<S> d = zero_mat<S>(s.B.dims[n + 1 - s.B.lo], s.B.dims[n - s.B.lo]);
    d.topLeftCorner(out.onU.dim(n + 1), out.onU.dim(n)) = out.onU.cx.diff(n);
    d.bottomRightCorner(out.onV.dim(n + 1), out.onV.dim(n)) = out.onV.cx.diff(n);
    s.B.d.push_back(d);
  }
  for (int n = s.A.lo; n <= s.A.hi; ++n) {
    Mat<S> i = zero_mat<S>(s.B.dim(n), s.A.dim(n));
    i.topRows(out.onU.dim(n)) = RU[n - s.A.lo];
    i.bottomRows(out.onV.dim(n)) = RV[n - s.A.lo];
    s.i.push_back(i);
    Mat<S> q = zero_mat<S>(s.C.dim(n), s.B.dim(n));
    q.leftCols(out.onU.dim(n)) = RUI[n - s.A.lo];
    q.rightCols(out.onV.dim(n)) = -RVI[n - s.A.lo];
    s.q.push_back(q);
  }
  return out;
}

template <class S>
struct MvReport {
  LesReport<S> les;
  std::vector<int> degrees;
  std::vector<Index> hX, hU, hV, hI;
  std::vector<Index> determined;  // H^n(X) forced by the LES rank chase
  bool ses_valid = false;
  bool exact = false;
  bool determined_matches = false;
};

// Mayer–Vietoris over a basis of a finite space. X = U ∪ V required; every
// minimal-basis open lies in U or V automatically.
template <class S>
MvReport<S> mayer_vietoris(const FiniteSpace& s, const BasisSetup<S>& b, uint64_t U, uint64_t V,
                           int n_max, Index cap = 200000) {
  if ((U | V) != s.full()) throw ValidationError("mayer_vietoris: U ∪ V must be the whole space");
  if (!s.is_open(U) || !s.is_open(V)) throw ValidationError("mayer_vietoris: U and V must be open");
  auto cs = cover_ses(b, U, V, n_max, cap);
  MvReport<S> rep;
  cs.ses.validate();
  rep.ses_valid = true;
  rep.les = les_from_ses(cs.ses);
  rep.exact = rep.les.all_exact;
  rep.degrees = rep.les.degrees;
  for (size_t k = 0; k < rep.degrees.size(); ++k) {
    const int n = rep.degrees[k];
    rep.hX.push_back(rep.les.hA[k]);
    rep.hU.push_back(cohomology(cs.onU.cx, n).betti);
    rep.hV.push_back(cohomology(cs.onV.cx, n).betti);
    rep.hI.push_back(cohomology(cs.onI.cx, n).betti);
    // dim H^n(X) = dim ker(q*_n) + dim coker(q*_{n-1})
    Index det = rep.les.hB[k] - rank(rep.les.q_star[k]);
    if (k > 0) det += rep.les.hC[k - 1] - rank(rep.les.q_star[k - 1]);
    rep.determined.push_back(det);
  }
  rep.determined_matches = rep.determined == rep.hX;
  return rep;
}

template <class S>
MvReport<S> mayer_vietoris(const FiniteSpace& s, uint64_t U, uint64_t V, const Algebra<S>& value,
                           int n_max, Index cap = 200000) {
  return mayer_vietoris(s, minimal_basis_setup(s, value), U, V, n_max, cap);
}

}  // namespace hochkit
