#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hochkit/presheaf.hpp"
#include "hochkit/space.hpp"

namespace hochkit {

// A compatible family over the intersection poset of a cover: one module
// presheaf per nonempty index set K (on the points of U_K), with one-step
// comparison maps (N_L restricted to U_K) -> N_K given pointwise.
template <class S>
struct DescentFamily {
  FiniteSpace space;
  std::vector<uint64_t> pieces;
  Poset points;                                // specialization poset of the space
  std::map<uint32_t, ModulePresheaf<S>> part;  // keyed by the subset mask
  // (K, L) with L ⊂ K, |K| = |L|+1: per point of U_K (in U_K point order)
  std::map<std::pair<uint32_t, uint32_t>, std::vector<Mat<S>>> step;

  uint64_t inter(uint32_t mask) const {
    uint64_t u = space.full();
    for (size_t i = 0; i < pieces.size(); ++i)
      if (mask & (1u << i)) u &= pieces[i];
    return u;
  }

  std::vector<Index> piece_points(uint32_t mask) const {
    std::vector<Index> pts;
    uint64_t u = inter(mask);
    for (Index i = 0; i < space.n_points(); ++i)
      if (u & (1ull << i)) pts.push_back(i);
    return pts;
  }
};

// ε*M: every part is the restriction of one presheaf on the whole space,
// with identity comparison maps.
template <class S>
DescentFamily<S> pullback_family(const FiniteSpace& s, const std::vector<uint64_t>& pieces,
                                 const ModulePresheaf<S>& m) {
  DescentFamily<S> f;
  f.space = s;
  f.pieces = pieces;
  f.points = s.specialization_poset();
  if (m.poset.names != f.points.names)
    throw ValidationError("pullback_family: presheaf must live on the point poset");
  const size_t r = pieces.size();
  for (uint32_t mask = 1; mask < (1u << r); ++mask) {
    auto pts = f.piece_points(mask);
    f.part[mask] = presheaf_restrict(m, pts);
  }
  for (uint32_t mask = 1; mask < (1u << r); ++mask)
    for (size_t j = 0; j < r; ++j) {
      if (!(mask & (1u << j))) continue;
      uint32_t sub = mask & ~(1u << j);
      if (sub == 0) continue;
      std::vector<Mat<S>> maps;
      for (Index p : f.piece_points(mask)) maps.push_back(identity_mat(m.field, m.dims[p]));
      f.step[{mask, sub}] = std::move(maps);
    }
  return f;
}

// A presheaf on one piece, extended by zero to the rest of the cover poset.
template <class S>
DescentFamily<S> one_piece_family(const FiniteSpace& s, const std::vector<uint64_t>& pieces,
                                  size_t which, const ModulePresheaf<S>& m_on_piece) {
  DescentFamily<S> f;
  f.space = s;
  f.pieces = pieces;
  f.points = s.specialization_poset();
  const size_t r = pieces.size();
  const uint32_t home = 1u << which;
  for (uint32_t mask = 1; mask < (1u << r); ++mask) {
    auto pts = f.piece_points(mask);
    if (mask == home) {
      f.part[mask] = m_on_piece;
    } else {
      Poset sub = f.points.restricted(pts);
      ModulePresheaf<S> zero;
      zero.field = m_on_piece.field;
      zero.poset = sub;
      zero.dims.assign(sub.size(), 0);
      for (Index x = 0; x < sub.size(); ++x)
        for (Index y = 0; y < sub.size(); ++y)
          if (sub.leq(x, y)) zero.rho[{x, y}] = zero_mat<S>(0, 0);
      f.part[mask] = zero;
    }
  }
  for (uint32_t mask = 1; mask < (1u << r); ++mask)
    for (size_t j = 0; j < r; ++j) {
      if (!(mask & (1u << j))) continue;
      uint32_t sub = mask & ~(1u << j);
      if (sub == 0) continue;
      std::vector<Mat<S>> maps;
      for (Index p : f.piece_points(mask)) {
        Index rows = f.part[mask].dims[f.part[mask].poset.index(f.points.names[p])];
        Index cols = 0;
        if (sub == home) {
          // N_home(p) -> N_mask(p) = 0
          cols = m_on_piece.dims[m_on_piece.poset.index(f.points.names[p])];
        }
        maps.push_back(zero_mat<S>(rows, cols));
      }
      f.step[{mask, sub}] = std::move(maps);
    }
  return f;
}

template <class S>
struct DescentReport {
  std::vector<std::string> point_names;
  std::vector<std::vector<Index>> betti;  // per point, degrees 0..n_max
  std::vector<Index> h0_dims;             // per point
  std::vector<Index> limit_dims;          // ε_* by the inverse-limit formula, per point
  bool h0_matches_limit = false;
};

// The descent complex S(N): degree p is the product over |K| = p+1 of the
// right extensions i_{K*}N_K, with alternating-sign comparison differentials;
// everything is computed pointwise over the space.
template <class S>
DescentReport<S> cech_descent(const DescentFamily<S>& f, int n_max) {
  const size_t r = f.pieces.size();
  if (r == 0 || r > 16) throw ValidationError("cech_descent: unsupported number of pieces");
  const Field<S>* kp = nullptr;
  for (auto& [mask, m] : f.part) kp = &m.field;
  const Field<S>& k = *kp;

  // masks grouped by cardinality
  std::vector<std::vector<uint32_t>> by_card(r + 1);
  for (uint32_t mask = 1; mask < (1u << r); ++mask)
    by_card[__builtin_popcount(mask)].push_back(mask);

  DescentReport<S> rep;
  rep.point_names = f.space.points;

  for (Index v = 0; v < f.space.n_points(); ++v) {
    // limits L_v^K = lim over points of U_K below v
    std::map<uint32_t, LimitData<S>> lim;
    std::map<uint32_t, std::vector<Index>> below;  // indices within part's poset
    for (auto& [mask, m] : f.part) {
      std::vector<Index> el;
      for (Index i = 0; i < m.poset.size(); ++i)
        if (f.points.leq(f.points.index(m.poset.names[i]), v)) el.push_back(i);
      below[mask] = el;
      lim[mask] = limit_over(m, el);
    }

    // complex per point
    ComplexRep<S> cx;
    cx.field = k;
    cx.lo = 0;
    cx.hi = static_cast<int>(r) - 1;
    cx.complete_below = true;
    cx.complete_above = true;
    std::vector<std::map<uint32_t, Index>> offsets(r);
    for (size_t card = 1; card <= r; ++card) {
      Index off = 0;
      for (uint32_t mask : by_card[card]) {
        offsets[card - 1][mask] = off;
        off += lim[mask].dim();
      }
      cx.dims.push_back(off);
    }
    for (size_t card = 1; card < r; ++card) {
      Mat<S> d = zero_mat<S>(cx.dims[card], cx.dims[card - 1]);
      for (uint32_t kmask : by_card[card + 1]) {
        // faces: remove one index from kmask
        int pos = 0;
        for (size_t j = 0; j < r; ++j) {
          if (!(kmask & (1u << j))) continue;
          uint32_t lmask = kmask & ~(1u << j);
          ++pos;  // 1-based position of j inside kmask
          if (lmask == 0) continue;
          const ModulePresheaf<S>& NL = f.part.at(lmask);
          const ModulePresheaf<S>& NK = f.part.at(kmask);
          const LimitData<S>& LL = lim.at(lmask);
          const LimitData<S>& LK = lim.at(kmask);
          if (LK.dim() == 0 || LL.dim() == 0) continue;
          const auto& maps = f.step.at({kmask, lmask});
          // build: family over U_L∩below(v) -> family over U_K∩below(v)
          Index ktotal = 0;
          for (Index w : LK.elems) ktotal += NK.dims[w];
          Mat<S> img = zero_mat<S>(ktotal, LL.dim());
          Index at = 0;
          for (size_t wi = 0; wi < LK.elems.size(); ++wi) {
            const Index wK = LK.elems[wi];  // index in NK's poset
            // the same point inside NL's poset
            const std::string& pname = NK.poset.names[wK];
            Mat<S> proj = limit_projection(LL, NL, NL.poset.index(pname));
            // find the step matrix for this point: maps are in U_K point order
            const Mat<S>& phi = maps[wK];
            img.middleRows(at, NK.dims[wK]) = mul_sparse(phi, proj);
            at += NK.dims[wK];
          }
          auto coords = solve<S>(LK.basis, img);
          if (!coords) throw VerificationError("cech_descent: comparison image not compatible");
          S sgn = (pos % 2 == 1) ? k.of(1) : k.of(-1);
          for (Index cc = 0; cc < coords->cols(); ++cc)
            for (Index rr = 0; rr < coords->rows(); ++rr)
              if (!is_zero((*coords)(rr, cc)))
                d(offsets[card].at(kmask) + rr, offsets[card - 1].at(lmask) + cc) +=
                    sgn * (*coords)(rr, cc);
        }
      }
      cx.d.push_back(d);
    }
    cx.validate();

    std::vector<Index> betti;
    for (int n = 0; n <= n_max; ++n) {
      if (n > cx.hi) {
        betti.push_back(0);
        continue;
      }
      betti.push_back(cohomology(cx, n).betti);
    }
    rep.betti.push_back(betti);
    rep.h0_dims.push_back(betti.empty() ? 0 : betti[0]);

    // ε_* by the inverse-limit formula over the full intersection poset:
    // compatible tuples (t_K) with t_K determined by t_L for L ⊂ K
    {
      Index total = 0;
      std::map<uint32_t, Index> off;
      for (size_t card = 1; card <= r; ++card)
        for (uint32_t mask : by_card[card]) {
          off[mask] = total;
          total += lim.at(mask).dim();
        }
      std::vector<Mat<S>> rows;
      Index nrows = 0;
      for (size_t card = 1; card < r; ++card)
        for (uint32_t kmask : by_card[card + 1])
          for (size_t j = 0; j < r; ++j) {
            if (!(kmask & (1u << j))) continue;
            uint32_t lmask = kmask & ~(1u << j);
            if (lmask == 0) continue;
            const ModulePresheaf<S>& NL = f.part.at(lmask);
            const ModulePresheaf<S>& NK = f.part.at(kmask);
            const LimitData<S>& LL = lim.at(lmask);
            const LimitData<S>& LK = lim.at(kmask);
            Mat<S> rcons = zero_mat<S>(LK.dim(), total);
            for (Index t = 0; t < LK.dim(); ++t) rcons(t, off[kmask] + t) = k.of(1);
            if (LL.dim() > 0 && LK.dim() > 0) {
              Index ktotal = 0;
              for (Index w : LK.elems) ktotal += NK.dims[w];
              Mat<S> img = zero_mat<S>(ktotal, LL.dim());
              Index at = 0;
              const auto& maps = f.step.at({kmask, lmask});
              for (size_t wi = 0; wi < LK.elems.size(); ++wi) {
                const Index wK = LK.elems[wi];
                Mat<S> proj = limit_projection(LL, NL, NL.poset.index(NK.poset.names[wK]));
                img.middleRows(at, NK.dims[wK]) = mul_sparse(maps[wK], proj);
                at += NK.dims[wK];
              }
              auto coords = solve<S>(LK.basis, img);
              if (!coords) throw VerificationError("cech_descent: limit comparison not compatible");
              for (Index cc = 0; cc < coords->cols(); ++cc)
                for (Index rr = 0; rr < coords->rows(); ++rr)
                  rcons(rr, off[lmask] + cc) -= (*coords)(rr, cc);
            }
            nrows += rcons.rows();
            rows.push_back(std::move(rcons));
          }
      Mat<S> cons = zero_mat<S>(nrows, total);
      Index at = 0;
      for (auto& rr : rows) {
        cons.middleRows(at, rr.rows()) = rr;
        at += rr.rows();
      }
      rep.limit_dims.push_back(total - rank(cons));
    }
  }
  rep.h0_matches_limit = rep.h0_dims == rep.limit_dims;
  return rep;
}

// For N = ε*M: positive degrees vanish and H^0 is M itself (checked by
// dimension and by the explicit unit map having full rank pointwise).
template <class S>
bool descent_recovers(const DescentFamily<S>& f, const ModulePresheaf<S>& m, int n_max) {
  auto rep = cech_descent(f, n_max);
  for (Index v = 0; v < f.space.n_points(); ++v) {
    if (rep.h0_dims[v] != m.dims[v]) return false;
    for (int n = 1; n <= n_max; ++n)
      if (rep.betti[v][n] != 0) return false;
  }
  return true;
}

}  // namespace hochkit
