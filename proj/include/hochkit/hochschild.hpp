#pragma once

#include <map>
#include <string>
#include <vector>

#include "hochkit/bimodule.hpp"
#include "hochkit/complex.hpp"
#include "hochkit/lincat.hpp"

namespace hochkit {

// Assembly options for the Hochschild complex of a category with bimodule
// coefficients. The window [0, n_max] is what gets reported; the complex is
// assembled one degree higher (and down to the lowest coefficient degree) so
// every reported Betti number is exact.
struct HochschildOptions {
  int n_max = 3;
  bool censoring_aware = true;
  bool normalized = false;
  Index max_total_dim = 200000;
};

// Sign conventions (pinned here once):
//   - cochain arguments are ordered (f_p, ..., f_1), f_i in hom(A_{i-1}, A_i);
//   - shifted degrees eps_i = |f_i| - 1 drive all Koszul factors;
//   - for a cochain of total degree n,
//       vertical:   d_M∘Φ + (−1)^n Σ_i (−1)^{eps_{i+1}+..+eps_p} Φ(..., d f_i, ...)
//       horizontal: (−1)^{n(1+|f_{p+1}|)} f_{p+1}·Φ(f_p,...,f_1)
//                   − (−1)^n Σ_i (−1)^{eps_{i+2}+..+eps_{p+1}} (−1)^{|f_{i+1}|}
//                         Φ(f_{p+1},...,f_{i+1}∘f_i,...,f_1)
//                   − (−1)^n (−1)^{eps_2+..+eps_{p+1}} Φ(f_{p+1},...,f_2)·f_1
//   In the ordinary case this is literally d f = −[μ, f] for the circle
//   product with left-counted insertion signs (see gerstenhaber.hpp).
template <class S>
struct HochschildComplex {
  FinLinCat<S> cat;
  Bimodule<S> coef;
  HochschildOptions opts;

  struct Block {
    std::vector<Index> objs;                  // A_0..A_p
    std::vector<std::vector<Index>> tensors;  // slot j (0-based) = basis in hom(A_j, A_{j+1})
    std::vector<int> tdeg;                    // unshifted degree of each tensor
    std::map<std::vector<Index>, Index> tensor_id;
    int p() const { return static_cast<int>(objs.size()) - 1; }
  };

  std::vector<Block> blocks;
  std::map<std::vector<Index>, Index> block_id;

  struct Run {
    Index block = 0;
    Index tensor = 0;
    Index offset = 0;
    std::vector<Index> ms;  // coefficient basis indices at the matching degree
  };
  std::vector<std::vector<Run>> runs;                          // per assembled degree
  std::vector<std::map<std::pair<Index, Index>, Index>> rix;  // (block,tensor) -> run index
  ComplexRep<S> cx;
  long long enumerated_tuples = 0;

  int lo() const { return cx.lo; }
  int hi() const { return cx.hi; }

  Index dim(int n) const { return cx.dim(n); }

  // coordinate of (block, tensor, m) at degree n, or -1
  Index coord(int n, Index b, Index t, Index m) const {
    if (n < cx.lo || n > cx.hi) return -1;
    auto& ix = rix[n - cx.lo];
    auto it = ix.find({b, t});
    if (it == ix.end()) return -1;
    const Run& r = runs[n - cx.lo][it->second];
    for (size_t k = 0; k < r.ms.size(); ++k)
      if (r.ms[k] == m) return r.offset + static_cast<Index>(k);
    return -1;
  }

  const HomSpace<S>* coef_space(Index b) const {
    const Block& blk = blocks[b];
    return coef.space(blk.objs.front(), blk.objs.back());
  }
};

template <class S>
struct Cochain {
  int degree = 0;
  Vec<S> coords;
};

namespace hdetail {

template <class S>
std::vector<Index> identity_basis_indices(const FinLinCat<S>& c, Index a) {
  // identity must be supported on a single basis element for the normalized
  // complex; returns the index or throws
  const Vec<S>& id = c.identity(a);
  std::vector<Index> sup;
  for (Index i = 0; i < id.size(); ++i)
    if (!is_zero(id(i))) sup.push_back(i);
  return sup;
}

}  // namespace hdetail

namespace detail {

template <class S>
bool same_shape_objects(const FinLinCat<S>& c, const Bimodule<S>& m) {
  return m.acat.objects == c.objects && m.bcat.objects == c.objects;
}

}  // namespace detail

template <class S>
HochschildComplex<S> hochschild_complex(const FinLinCat<S>& cat, const Bimodule<S>& coef,
                                        const HochschildOptions& opts) {
  if (opts.n_max < 1) throw ValidationError("hochschild_complex: n_max must be >= 1");
  if (!detail::same_shape_objects(cat, coef))
    throw ValidationError("hochschild_complex: coefficients not based on the category");
  HochschildComplex<S> H;
  H.cat = cat;
  H.coef = coef;
  H.opts = opts;
  const Field<S>& k = cat.field;
  const Index nobj = cat.n_objects();

  const int m_lo = coef.min_degree();
  const int lo = std::min(0, m_lo);
  const int hi = opts.n_max + 1;
  const int P_max = hi - m_lo;

  const bool aware = opts.censoring_aware && cat.censoring.has_value();
  const Relation* rel = cat.censoring ? &*cat.censoring : nullptr;

  // identity slots excluded in the normalized complex
  std::map<std::pair<Index, Index>, std::vector<char>> excluded;
  if (opts.normalized) {
    for (Index a = 0; a < nobj; ++a) {
      auto sup = hdetail::identity_basis_indices(cat, a);
      if (sup.size() > 1)
        throw ValidationError(
            "normalized complex: identity of " + cat.objects[a] +
            " is not supported on a single basis element");
    }
    for (auto& [key, h] : cat.homs) excluded[key] = std::vector<char>(h.dim(), 0);
    for (Index a = 0; a < nobj; ++a) {
      auto sup = hdetail::identity_basis_indices(cat, a);
      if (!sup.empty()) excluded[{a, a}][sup[0]] = 1;
    }
  }

  // chain enumeration
  std::vector<std::vector<Index>> frontier;
  for (Index a = 0; a < nobj; ++a) {
    ++H.enumerated_tuples;
    if (aware && !rel->has(a, a)) {
      // aware mode only stores relation-reflexive 0-chains; longer chains
      // starting here may still exist
    }
    frontier.push_back({a});
  }
  auto keep_block = [&](const std::vector<Index>& ch) {
    const Index a0 = ch.front(), ap = ch.back();
    if (aware && !rel->has(a0, ap)) return false;
    return coef.dim(a0, ap) > 0;
  };
  std::vector<std::vector<std::vector<Index>>> chains(P_max + 1);
  chains[0] = frontier;
  for (int p = 1; p <= P_max; ++p) {
    for (auto& ch : chains[p - 1]) {
      for (Index nxt = 0; nxt < nobj; ++nxt) {
        ++H.enumerated_tuples;
        if (aware) {
          if (!rel->has(ch.back(), nxt) || cat.hom_dim(ch.back(), nxt) == 0) continue;
        } else {
          // blind mode prunes nothing: tuples with zero homs are visited and
          // discarded when their tensors come out empty
        }
        auto e = ch;
        e.push_back(nxt);
        chains[p].push_back(std::move(e));
      }
    }
  }

  for (int p = 0; p <= P_max; ++p)
    for (auto& ch : chains[p]) {
      if (!keep_block(ch)) continue;
      bool slots_ok = true;
      for (int j = 0; j + 1 <= p; ++j)
        if (cat.hom_dim(ch[j], ch[j + 1]) == 0) slots_ok = false;
      if (!slots_ok) continue;
      typename HochschildComplex<S>::Block blk;
      blk.objs = ch;
      // enumerate tensors (product over slots), lexicographic
      std::vector<Index> idx(p, 0);
      std::vector<const HomSpace<S>*> hs(p);
      std::vector<const std::vector<char>*> ex(p, nullptr);
      for (int j = 0; j < p; ++j) {
        hs[j] = cat.hom(ch[j], ch[j + 1]);
        if (opts.normalized) ex[j] = &excluded.at({ch[j], ch[j + 1]});
      }
      bool done = false;
      while (!done) {
        bool skip = false;
        if (opts.normalized)
          for (int j = 0; j < p && !skip; ++j)
            if ((*ex[j])[idx[j]]) skip = true;
        if (!skip) {
          int t = 0;
          for (int j = 0; j < p; ++j) t += hs[j]->degs[idx[j]];
          blk.tensor_id[idx] = static_cast<Index>(blk.tensors.size());
          blk.tensors.push_back(idx);
          blk.tdeg.push_back(t);
        }
        done = true;
        for (int j = 0; j < p; ++j) {
          if (++idx[j] < hs[j]->dim()) {
            done = false;
            break;
          }
          idx[j] = 0;
        }
        if (p == 0) break;
      }
      if (blk.tensors.empty()) continue;
      H.block_id[ch] = static_cast<Index>(H.blocks.size());
      H.blocks.push_back(std::move(blk));
    }

  // coefficient indices by degree, per pair
  auto coef_in_degree = [&](Index a0, Index ap, int t) {
    const HomSpace<S>* sp = coef.space(a0, ap);
    return sp ? sp->indices_in_degree(t) : std::vector<Index>{};
  };

  // coordinate layout
  H.cx.field = k;
  H.cx.lo = lo;
  H.cx.hi = hi;
  H.cx.complete_below = true;
  H.cx.complete_above = false;
  H.runs.resize(hi - lo + 1);
  H.rix.resize(hi - lo + 1);
  for (int n = lo; n <= hi; ++n) {
    Index off = 0;
    for (Index b = 0; b < static_cast<Index>(H.blocks.size()); ++b) {
      auto& blk = H.blocks[b];
      const int p = blk.p();
      for (Index t = 0; t < static_cast<Index>(blk.tensors.size()); ++t) {
        std::vector<Index> ms = coef_in_degree(blk.objs.front(), blk.objs.back(), blk.tdeg[t] + n - p);
        if (ms.empty()) continue;
        typename HochschildComplex<S>::Run run;
        run.block = b;
        run.tensor = t;
        run.offset = off;
        run.ms = std::move(ms);
        off += static_cast<Index>(run.ms.size());
        H.rix[n - lo][{b, t}] = static_cast<Index>(H.runs[n - lo].size());
        H.runs[n - lo].push_back(std::move(run));
      }
      if (off > opts.max_total_dim)
        throw ResourceCapError("hochschild_complex: degree " + std::to_string(n) +
                               " exceeds the dimension cap (column " + std::to_string(p) +
                               " alone reaches " + std::to_string(off) + ")");
    }
    H.cx.dims.push_back(off);
  }

  // differential assembly: iterate target runs at degree n+1, add face
  // contributions referencing source coordinates at degree n
  auto odd = [](int e) { return ((e % 2) + 2) % 2 == 1; };
  for (int n = lo; n < hi; ++n) {
    Mat<S> D = zero_mat<S>(H.cx.dims[n + 1 - lo], H.cx.dims[n - lo]);
    for (auto& trun : H.runs[n + 1 - lo]) {
      auto& blk = H.blocks[trun.block];
      const int P = blk.p();
      const std::vector<Index>& T = blk.tensors[trun.tensor];
      const std::vector<Index>& ch = blk.objs;
      std::vector<const HomSpace<S>*> hs(P);
      std::vector<int> eps(P);
      for (int j = 0; j < P; ++j) {
        hs[j] = cat.hom(ch[j], ch[j + 1]);
        eps[j] = hs[j]->degs[T[j]] - 1;
      }
      const HomSpace<S>* msp = H.coef_space(trun.block);

      // ---- vertical terms (source column P, same chain) ----
      {
        // d_M: target m' receives from source m with coefficient diff(m', m)
        for (size_t km = 0; km < trun.ms.size(); ++km) {
          const Index mp = trun.ms[km];
          for (Index m = 0; m < msp->dim(); ++m) {
            if (is_zero(msp->diff(mp, m))) continue;
            Index sc = H.coord(n, trun.block, trun.tensor, m);
            if (sc >= 0) D(trun.offset + static_cast<Index>(km), sc) += msp->diff(mp, m);
          }
        }
        // d on slot i (1-based slot i lives at T[i-1])
        for (int i = 1; i <= P; ++i) {
          int eps_above = 0;
          for (int j = i; j < P; ++j) eps_above += eps[j];  // slots i+1..P are T[i]..T[P-1]
          const bool neg = odd(n + eps_above);
          const HomSpace<S>* hsp = hs[i - 1];
          for (Index r = 0; r < hsp->dim(); ++r) {
            if (is_zero(hsp->diff(r, T[i - 1]))) continue;
            std::vector<Index> Ts = T;
            Ts[i - 1] = r;
            auto it = blk.tensor_id.find(Ts);
            if (it == blk.tensor_id.end()) continue;
            for (size_t km = 0; km < trun.ms.size(); ++km) {
              Index sc = H.coord(n, trun.block, it->second, trun.ms[km]);
              if (sc < 0) continue;
              S cval = hsp->diff(r, T[i - 1]);
              if (neg) cval = -cval;
              D(trun.offset + static_cast<Index>(km), sc) += cval;
            }
          }
        }
      }

      // ---- horizontal terms (source column P-1) ----
      if (P >= 1) {
        const int p = P - 1;
        // left action: drop the top slot (slot P = T[P-1])
        {
          std::vector<Index> src_ch(ch.begin(), ch.end() - 1);
          auto bit = H.block_id.find(src_ch);
          if (bit != H.block_id.end()) {
            auto& sblk = H.blocks[bit->second];
            std::vector<Index> Ts(T.begin(), T.end() - 1);
            auto tit = sblk.tensor_id.find(Ts);
            if (tit != sblk.tensor_id.end()) {
              const int ftop_deg = hs[P - 1]->degs[T[P - 1]];
              const bool neg = odd(n * (1 + ftop_deg));
              auto lit = H.coef.lact.find({ch.front(), ch[P - 1], ch[P]});
              if (lit != H.coef.lact.end()) {
                const HomSpace<S>* src_m = H.coef.space(ch.front(), ch[P - 1]);
                if (src_m) {
                  for (Index m = 0; m < src_m->dim(); ++m) {
                    Index sc = H.coord(n, bit->second, tit->second, m);
                    if (sc < 0) continue;
                    auto term = lit->second.terms.find({T[P - 1], m});
                    if (term == lit->second.terms.end()) continue;
                    for (auto& [mp, cf] : term->second) {
                      for (size_t km = 0; km < trun.ms.size(); ++km)
                        if (trun.ms[km] == mp) {
                          S cval = cf;
                          if (neg) cval = -cval;
                          D(trun.offset + static_cast<Index>(km), sc) += cval;
                        }
                    }
                  }
                }
              }
            }
          }
        }
        // inner faces: merge slots (i+1, i) for i = 1..p
        for (int i = 1; i <= p; ++i) {
          int eps_above = 0;
          for (int j = i + 1; j < P; ++j) eps_above += eps[j];  // slots i+2..P
          const int fi1_deg = hs[i]->degs[T[i]];  // |f_{i+1}|
          const bool neg = odd(1 + n + eps_above + fi1_deg);
          std::vector<Index> src_ch = ch;
          src_ch.erase(src_ch.begin() + i);
          auto bit = H.block_id.find(src_ch);
          if (bit == H.block_id.end()) continue;
          auto& sblk = H.blocks[bit->second];
          Vec<S> merged = cat.compose_basis(ch[i - 1], ch[i], ch[i + 1], T[i], T[i - 1]);
          for (Index h = 0; h < merged.size(); ++h) {
            if (is_zero(merged(h))) continue;
            std::vector<Index> Ts;
            Ts.reserve(p);
            for (int j = 0; j < i - 1; ++j) Ts.push_back(T[j]);
            Ts.push_back(h);
            for (int j = i + 1; j < P; ++j) Ts.push_back(T[j]);
            auto tit = sblk.tensor_id.find(Ts);
            if (tit == sblk.tensor_id.end()) continue;
            for (size_t km = 0; km < trun.ms.size(); ++km) {
              Index sc = H.coord(n, bit->second, tit->second, trun.ms[km]);
              if (sc < 0) continue;
              S cval = merged(h);
              if (neg) cval = -cval;
              D(trun.offset + static_cast<Index>(km), sc) += cval;
            }
          }
        }
        // right action: drop the bottom slot (slot 1 = T[0])
        {
          int eps_above = 0;
          for (int j = 1; j < P; ++j) eps_above += eps[j];  // slots 2..P
          const bool neg = odd(1 + n + eps_above);
          std::vector<Index> src_ch(ch.begin() + 1, ch.end());
          auto bit = H.block_id.find(src_ch);
          if (bit != H.block_id.end()) {
            auto& sblk = H.blocks[bit->second];
            std::vector<Index> Ts(T.begin() + 1, T.end());
            auto tit = sblk.tensor_id.find(Ts);
            if (tit != sblk.tensor_id.end()) {
              auto rit = H.coef.ract.find({ch.front(), ch[1], ch.back()});
              const HomSpace<S>* src_m = H.coef.space(ch[1], ch.back());
              if (rit != H.coef.ract.end() && src_m) {
                for (Index m = 0; m < src_m->dim(); ++m) {
                  Index sc = H.coord(n, bit->second, tit->second, m);
                  if (sc < 0) continue;
                  auto term = rit->second.terms.find({m, T[0]});
                  if (term == rit->second.terms.end()) continue;
                  for (auto& [mp, cf] : term->second)
                    for (size_t km = 0; km < trun.ms.size(); ++km)
                      if (trun.ms[km] == mp) {
                        S cval = cf;
                        if (neg) cval = -cval;
                        D(trun.offset + static_cast<Index>(km), sc) += cval;
                      }
                }
              }
            }
          }
        }
      }
    }
    H.cx.d.push_back(D);
  }
  return H;
}

template <class S>
struct HochschildCohomology {
  HochschildComplex<S> complex;
  std::vector<DegreeDim> table;  // degrees 0..n_max, exact
  std::vector<Mat<S>> reps;      // representative cocycles per degree
};

template <class S>
HochschildCohomology<S> hochschild_cohomology(const FinLinCat<S>& cat, const Bimodule<S>& coef,
                                              const HochschildOptions& opts) {
  HochschildCohomology<S> out{hochschild_complex(cat, coef, opts), {}, {}};
  for (int n = 0; n <= opts.n_max; ++n) {
    auto h = cohomology(out.complex.cx, n);
    out.table.push_back({n, h.betti, h.exact});
    out.reps.push_back(h.reps);
  }
  return out;
}

template <class S>
HochschildCohomology<S> hochschild_cohomology(const FinLinCat<S>& cat, const HochschildOptions& opts) {
  return hochschild_cohomology(cat, diagonal_bimodule(cat), opts);
}

// Restriction to a full subcategory as an explicit chain map: projection onto
// the chains that stay inside the subcategory.
template <class S>
std::vector<Mat<S>> restriction_map(const HochschildComplex<S>& big, const HochschildComplex<S>& small,
                                    const FinLinCat<S>& bigcat, const FinLinCat<S>& smallcat) {
  // translate object indices by label
  std::vector<Index> to_big(smallcat.n_objects());
  for (Index i = 0; i < smallcat.n_objects(); ++i) to_big[i] = bigcat.obj_index(smallcat.objects[i]);
  if (big.lo() != small.lo() || big.hi() != small.hi())
    throw ValidationError("restriction_map: assembled windows differ");
  std::vector<Mat<S>> out;
  for (int n = big.lo(); n <= big.hi(); ++n) {
    Mat<S> R = zero_mat<S>(small.dim(n), big.dim(n));
    for (auto& srun : small.runs[n - small.lo()]) {
      auto& sblk = small.blocks[srun.block];
      std::vector<Index> big_ch;
      for (Index o : sblk.objs) big_ch.push_back(to_big[o]);
      auto bit = big.block_id.find(big_ch);
      if (bit == big.block_id.end()) continue;
      auto& bblk = big.blocks[bit->second];
      auto tit = bblk.tensor_id.find(sblk.tensors[srun.tensor]);
      if (tit == bblk.tensor_id.end()) continue;
      for (size_t km = 0; km < srun.ms.size(); ++km) {
        Index bc = big.coord(n, bit->second, tit->second, srun.ms[km]);
        if (bc >= 0) R(srun.offset + static_cast<Index>(km), bc) = bigcat.field.of(1);
      }
    }
    out.push_back(R);
  }
  return out;
}

}  // namespace hochkit
