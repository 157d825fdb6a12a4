#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hochkit/bimodule.hpp"
#include "hochkit/errors.hpp"

namespace hochkit {

// One-object category with hom = the ground field; the trivial side of a
// one-sided module.
template <class S>
FinLinCat<S> point_category(const Field<S>& k) {
  FinLinCat<S> c;
  c.field = k;
  c.objects = {"*"};
  c.homs[{0, 0}] = make_hom0<S>({"1"});
  StructureMap<S> sm;
  sm.add(0, 0, 0, k.of(1));
  c.comp[{0, 0, 0}] = sm;
  Vec<S> id(1);
  id(0) = k.of(1);
  c.identities = {id};
  return c;
}

// Right modules over bcat are bimodules whose covariant side is the point
// category; x(B) lives at spaces[{B, 0}].
template <class S>
bool is_right_module(const Bimodule<S>& x) {
  return x.acat.n_objects() == 1 && x.acat.total_dim() == 1;
}

template <class S>
Bimodule<S> make_right_module(const FinLinCat<S>& bcat, std::map<Index, HomSpace<S>> spaces,
                              std::map<std::pair<Index, Index>, StructureMap<S>> action) {
  Bimodule<S> x;
  x.acat = point_category<S>(bcat.field);
  x.bcat = bcat;
  for (auto& [b, s] : spaces) {
    StructureMap<S> unit;
    for (Index i = 0; i < s.dim(); ++i) unit.add(0, i, i, bcat.field.of(1));
    x.lact[{b, 0, 0}] = unit;
    x.spaces[{b, 0}] = std::move(s);
  }
  for (auto& [k, sm] : action) x.ract[{k.first, k.second, 0}] = sm;
  return x;
}

// The representable right module hom(-, a0).
template <class S>
Bimodule<S> representable_module(const FinLinCat<S>& c, Index a0) {
  std::map<Index, HomSpace<S>> spaces;
  std::map<std::pair<Index, Index>, StructureMap<S>> action;
  for (Index b = 0; b < c.n_objects(); ++b)
    if (const HomSpace<S>* h = c.hom(b, a0)) spaces[b] = *h;
  for (auto& [k, sm] : c.comp) {
    auto [b2, b, a] = k;
    if (a == a0) action[{b2, b}] = sm;
  }
  return make_right_module<S>(c, std::move(spaces), std::move(action));
}

namespace detail {

template <class S>
bool same_shape(const FinLinCat<S>& a, const FinLinCat<S>& b) {
  if (a.objects != b.objects) return false;
  for (Index i = 0; i < a.n_objects(); ++i)
    for (Index j = 0; j < a.n_objects(); ++j) {
      const HomSpace<S>* ha = a.hom(i, j);
      const HomSpace<S>* hb = b.hom(i, j);
      if ((ha == nullptr) != (hb == nullptr)) return false;
      if (ha && (ha->labels != hb->labels || ha->degs != hb->degs)) return false;
    }
  return true;
}

template <class S>
void require_ordinary(const FinLinCat<S>& c, const std::string& who) {
  if (!c.is_ordinary())
    throw ValidationError(who + ": base category must be ordinary (degree 0, zero differential)");
}

}  // namespace detail

// A degree-n map of right modules: one block per object of the base.
template <class S>
struct ModuleMap {
  int degree = 0;
  std::vector<Mat<S>> blocks;  // blocks[b]: x(b) -> y(b)
};

template <class S>
struct ModuleHomComplex {
  ComplexRep<S> cx;                              // dims/differential of Hom(x,y)
  std::vector<std::vector<ModuleMap<S>>> basis;  // per degree: chosen basis maps
};

// Hom_b(x, y): the graded space of module maps with differential
// h -> d_y∘h − (−1)^{|h|} h∘d_x. The base category must be ordinary and
// shared; the modules themselves may be graded.
template <class S>
ModuleHomComplex<S> module_hom(const Bimodule<S>& x, const Bimodule<S>& y) {
  if (!is_right_module(x) || !is_right_module(y))
    throw ValidationError("module_hom expects one-sided modules");
  if (!detail::same_shape(x.bcat, y.bcat)) throw ValidationError("module_hom: base category mismatch");
  detail::require_ordinary(x.bcat, "module_hom");
  const FinLinCat<S>& bcat = x.bcat;
  const Field<S>& k = bcat.field;
  const Index nb = bcat.n_objects();

  const int lo = y.min_degree() - x.max_degree();
  const int hi = y.max_degree() - x.min_degree();

  struct VarIndex {
    std::vector<std::tuple<Index, Index, Index>> vars;  // (b, x-basis, y-basis)
    std::map<std::tuple<Index, Index, Index>, Index> pos;
    Index size() const { return static_cast<Index>(vars.size()); }
  };
  std::vector<VarIndex> vidx(hi - lo + 1);
  for (int n = lo; n <= hi; ++n)
    for (Index b = 0; b < nb; ++b) {
      const HomSpace<S>* xs = x.space(b, 0);
      const HomSpace<S>* ys = y.space(b, 0);
      if (!xs || !ys) continue;
      for (Index i = 0; i < xs->dim(); ++i)
        for (Index j = 0; j < ys->dim(); ++j)
          if (ys->degs[j] - xs->degs[i] == n) {
            vidx[n - lo].pos[{b, i, j}] = vidx[n - lo].size();
            vidx[n - lo].vars.push_back({b, i, j});
          }
    }

  // equivariance h(m·g) = h(m)·g as a linear system per degree
  std::vector<Mat<S>> bases(hi - lo + 1);
  for (int n = lo; n <= hi; ++n) {
    auto& vi = vidx[n - lo];
    std::vector<Mat<S>> rows;
    Index total_rows = 0;
    for (Index b2 = 0; b2 < nb; ++b2)
      for (Index b = 0; b < nb; ++b) {
        const HomSpace<S>* gs = bcat.hom(b2, b);
        const HomSpace<S>* xs = x.space(b, 0);
        if (!gs || !xs) continue;
        const HomSpace<S>* ys = y.space(b, 0);
        const HomSpace<S>* ys2 = y.space(b2, 0);
        const HomSpace<S>* xs2 = x.space(b2, 0);
        const Index y2dim = ys2 ? ys2->dim() : 0;
        if (y2dim == 0) continue;
        for (Index g = 0; g < gs->dim(); ++g)
          for (Index i = 0; i < xs->dim(); ++i) {
            Vec<S> mi = Vec<S>::Constant(xs->dim(), S(0));
            mi(i) = k.of(1);
            Vec<S> mg = x.rapply(b2, b, 0, mi, bcat.basis_vec(b2, b, g));
            Mat<S> r = zero_mat<S>(y2dim, vi.size());
            bool any = false;
            if (xs2)
              for (Index kk = 0; kk < xs2->dim(); ++kk) {
                if (is_zero(mg(kk))) continue;
                for (Index l = 0; l < y2dim; ++l) {
                  auto it = vi.pos.find({b2, kk, l});
                  if (it != vi.pos.end()) {
                    r(l, it->second) += mg(kk);
                    any = true;
                  }
                }
              }
            if (ys)
              for (Index j = 0; j < ys->dim(); ++j) {
                auto it = vi.pos.find({b, i, j});
                if (it == vi.pos.end()) continue;
                Vec<S> ej = Vec<S>::Constant(ys->dim(), S(0));
                ej(j) = k.of(1);
                Vec<S> yg = y.rapply(b2, b, 0, ej, bcat.basis_vec(b2, b, g));
                for (Index l = 0; l < y2dim; ++l)
                  if (!is_zero(yg(l))) {
                    r(l, it->second) -= yg(l);
                    any = true;
                  }
              }
            if (any) {
              total_rows += r.rows();
              rows.push_back(std::move(r));
            }
          }
      }
    Mat<S> cons = zero_mat<S>(total_rows, vi.size());
    Index at = 0;
    for (auto& r : rows) {
      cons.middleRows(at, r.rows()) = r;
      at += r.rows();
    }
    bases[n - lo] = kernel_basis(cons);
  }

  ModuleHomComplex<S> out;
  out.cx.field = k;
  out.cx.lo = lo;
  out.cx.hi = hi;
  out.cx.complete_below = true;
  out.cx.complete_above = true;
  for (int n = lo; n <= hi; ++n) out.cx.dims.push_back(bases[n - lo].cols());

  auto unflatten = [&](int n, const Vec<S>& coords) {
    ModuleMap<S> mm;
    mm.degree = n;
    mm.blocks.resize(nb);
    for (Index b = 0; b < nb; ++b) mm.blocks[b] = zero_mat<S>(y.dim(b, 0), x.dim(b, 0));
    auto& vi = vidx[n - lo];
    for (Index v = 0; v < vi.size(); ++v) {
      auto [b, i, j] = vi.vars[v];
      mm.blocks[b](j, i) = coords(v);
    }
    return mm;
  };
  auto flatten = [&](int n, const ModuleMap<S>& mm) {
    auto& vi = vidx[n - lo];
    Vec<S> v = Vec<S>::Constant(vi.size(), S(0));
    for (Index t = 0; t < vi.size(); ++t) {
      auto [b, i, j] = vi.vars[t];
      v(t) = mm.blocks[b](j, i);
    }
    return v;
  };

  out.basis.resize(hi - lo + 1);
  for (int n = lo; n <= hi; ++n)
    for (Index c = 0; c < bases[n - lo].cols(); ++c)
      out.basis[n - lo].push_back(unflatten(n, Vec<S>(bases[n - lo].col(c))));

  for (int n = lo; n < hi; ++n) {
    Mat<S> d = zero_mat<S>(bases[n + 1 - lo].cols(), bases[n - lo].cols());
    for (Index c = 0; c < bases[n - lo].cols(); ++c) {
      const ModuleMap<S>& h = out.basis[n - lo][c];
      ModuleMap<S> dh;
      dh.degree = n + 1;
      dh.blocks.resize(nb);
      for (Index b = 0; b < nb; ++b) {
        Mat<S> t = zero_mat<S>(y.dim(b, 0), x.dim(b, 0));
        if (y.dim(b, 0) > 0 && x.dim(b, 0) > 0) {
          t = mul_sparse(y.space(b, 0)->diff, h.blocks[b]);
          Mat<S> hx = mul_sparse(h.blocks[b], x.space(b, 0)->diff);
          if (n % 2 == 0)
            t -= hx;
          else
            t += hx;
        }
        dh.blocks[b] = t;
      }
      auto coords = solve_vec<S>(bases[n + 1 - lo], flatten(n + 1, dh));
      if (!coords) throw VerificationError("module_hom: differential left the hom space");
      d.col(c) = *coords;
    }
    out.cx.d.push_back(d);
  }
  return out;
}

// Bar resolution of a right module x over an ordinary base. Degree −p term:
// direct sum over composable strings of x(c_p)⊗hom(c_{p−1},c_p)⊗…⊗hom(c_0,c_1)
// with a free slot hom(−,c_0); faces act on the x-slot, merge adjacent slots,
// and absorb the free slot.
template <class S>
struct BarTupleKey {
  std::vector<Index> chain;  // c_0..c_p
  Index xbasis = 0;
  std::vector<Index> gs;  // g_p..g_1 with g_i in hom(c_{i-1}, c_i)
  Index hbasis = 0;       // in hom(B, c_0)
  auto operator<=>(const BarTupleKey&) const = default;
};

template <class S>
struct BarResolution {
  std::vector<Bimodule<S>> terms;            // terms[p]: the degree −p module
  std::vector<std::vector<Mat<S>>> diffs;    // diffs[p][B]: terms[p](B) -> terms[p-1](B), p >= 1
  std::vector<Mat<S>> aug;                   // aug[B]: terms[0](B) -> x(B)
  std::vector<std::vector<std::vector<BarTupleKey<S>>>> tuples;  // [p][B] -> ordered basis
};

template <class S>
BarResolution<S> bar_resolution(const Bimodule<S>& x, int length, Index max_total_dim = 20000) {
  if (!is_right_module(x)) throw ValidationError("bar_resolution expects a one-sided module");
  detail::require_ordinary(x.bcat, "bar_resolution");
  if (length < 0) throw ValidationError("bar_resolution: negative length");
  const FinLinCat<S>& bcat = x.bcat;
  const Field<S>& k = bcat.field;
  const Index nb = bcat.n_objects();

  BarResolution<S> out;
  out.tuples.resize(length + 1);

  // enumerate strings c_0..c_p with x(c_p) and all homs nonzero
  std::vector<std::vector<std::vector<Index>>> chains(length + 1);
  for (Index c0 = 0; c0 < nb; ++c0) chains[0].push_back({c0});
  for (int p = 1; p <= length; ++p)
    for (auto& ch : chains[p - 1])
      for (Index nxt = 0; nxt < nb; ++nxt)
        if (bcat.hom_dim(ch.back(), nxt) > 0) {
          auto e = ch;
          e.push_back(nxt);
          chains[p].push_back(std::move(e));
        }

  for (int p = 0; p <= length; ++p) {
    std::map<Index, HomSpace<S>> spaces;
    std::map<std::pair<Index, Index>, StructureMap<S>> action;
    out.tuples[p].resize(nb);
    Index total = 0;
    for (Index B = 0; B < nb; ++B) {
      std::vector<BarTupleKey<S>> tuples;
      std::vector<int> degs;
      for (auto& ch : chains[p]) {
        const Index cp = ch.back();
        const HomSpace<S>* xs = x.space(cp, 0);
        const HomSpace<S>* hs = bcat.hom(B, ch.front());
        if (!xs || !hs) continue;
        // iterate product of slot bases
        std::vector<Index> slot_dims;
        for (int i = 1; i <= p; ++i) slot_dims.push_back(bcat.hom_dim(ch[i - 1], ch[i]));
        std::vector<Index> gidx(p, 0);
        bool done = false;
        while (!done) {
          for (Index xb = 0; xb < xs->dim(); ++xb)
            for (Index hb = 0; hb < hs->dim(); ++hb) {
              BarTupleKey<S> key;
              key.chain = ch;
              key.xbasis = xb;
              key.gs.assign(gidx.rbegin(), gidx.rend());  // store g_p..g_1
              key.hbasis = hb;
              tuples.push_back(key);
              degs.push_back(xs->degs[xb]);
            }
          // advance multi-index
          done = true;
          for (int i = 0; i < p; ++i) {
            if (++gidx[i] < slot_dims[i]) {
              done = false;
              break;
            }
            gidx[i] = 0;
          }
          if (p == 0) break;
        }
      }
      total += static_cast<Index>(tuples.size());
      if (total > max_total_dim)
        throw ResourceCapError("bar_resolution: term −" + std::to_string(p) + " exceeds the dimension cap");
      HomSpace<S> hsB;
      for (size_t t = 0; t < tuples.size(); ++t) {
        hsB.labels.push_back("t" + std::to_string(t));
        hsB.degs.push_back(degs[t]);
      }
      hsB.diff = zero_mat<S>(hsB.dim(), hsB.dim());
      // internal differential from x's grading on the x-slot
      for (size_t t = 0; t < tuples.size(); ++t) {
        const auto& key = tuples[t];
        const HomSpace<S>* xs = x.space(key.chain.back(), 0);
        for (Index xb2 = 0; xb2 < xs->dim(); ++xb2) {
          if (is_zero(xs->diff(xb2, key.xbasis))) continue;
          BarTupleKey<S> k2 = key;
          k2.xbasis = xb2;
          auto it = std::find(tuples.begin(), tuples.end(), k2);
          if (it != tuples.end())
            hsB.diff(it - tuples.begin(), t) = xs->diff(xb2, key.xbasis);
        }
      }
      out.tuples[p][B] = tuples;
      if (!tuples.empty()) spaces[B] = hsB;
    }
    // right action: precompose the free slot
    for (Index B2 = 0; B2 < nb; ++B2)
      for (Index B = 0; B < nb; ++B) {
        const HomSpace<S>* gs = bcat.hom(B2, B);
        if (!gs) continue;
        StructureMap<S> sm;
        bool any = false;
        for (size_t t = 0; t < out.tuples[p][B].size(); ++t) {
          const auto& key = out.tuples[p][B][t];
          for (Index g = 0; g < gs->dim(); ++g) {
            Vec<S> hg = bcat.compose_basis(B2, B, key.chain.front(), key.hbasis, g);
            for (Index h2 = 0; h2 < hg.size(); ++h2) {
              if (is_zero(hg(h2))) continue;
              BarTupleKey<S> k2 = key;
              k2.hbasis = h2;
              auto& dst = out.tuples[p][B2];
              auto it = std::find(dst.begin(), dst.end(), k2);
              if (it != dst.end()) {
                sm.add(static_cast<Index>(t), g, static_cast<Index>(it - dst.begin()), hg(h2));
                any = true;
              }
            }
          }
        }
        if (any) action[{B2, B}] = sm;
      }
    out.terms.push_back(make_right_module<S>(bcat, std::move(spaces), std::move(action)));
  }

  // faces: d = sum_j (−1)^j face_j, face_0 acts x·g_p, inner faces compose,
  // face_p absorbs the free slot
  for (int p = 1; p <= length; ++p) {
    std::vector<Mat<S>> dB(nb);
    for (Index B = 0; B < nb; ++B) {
      const auto& src = out.tuples[p][B];
      const auto& dst = out.tuples[p - 1][B];
      Mat<S> d = zero_mat<S>(static_cast<Index>(dst.size()), static_cast<Index>(src.size()));
      auto dst_pos = [&](const BarTupleKey<S>& key) -> Index {
        auto it = std::find(dst.begin(), dst.end(), key);
        return it == dst.end() ? -1 : static_cast<Index>(it - dst.begin());
      };
      for (size_t t = 0; t < src.size(); ++t) {
        const auto& key = src[t];
        const auto& ch = key.chain;
        // face 0: x-slot action by g_p (g index gs[0], hom(c_{p-1}, c_p))
        {
          Vec<S> xm = Vec<S>::Constant(x.dim(ch[p], 0), S(0));
          xm(key.xbasis) = k.of(1);
          Vec<S> xg = x.rapply(ch[p - 1], ch[p], 0, xm, bcat.basis_vec(ch[p - 1], ch[p], key.gs[0]));
          for (Index xb2 = 0; xb2 < xg.size(); ++xb2) {
            if (is_zero(xg(xb2))) continue;
            BarTupleKey<S> k2;
            k2.chain = std::vector<Index>(ch.begin(), ch.end() - 1);
            k2.xbasis = xb2;
            k2.gs = std::vector<Index>(key.gs.begin() + 1, key.gs.end());
            k2.hbasis = key.hbasis;
            Index pos = dst_pos(k2);
            if (pos >= 0) d(pos, static_cast<Index>(t)) += xg(xb2);
          }
        }
        // inner faces j = 1..p-1: compose g at positions (p-j+1, p-j)
        for (int j = 1; j <= p - 1; ++j) {
          const int hi_slot = p - j + 1, lo_slot = p - j;  // slot indices in 1..p
          // gs is stored g_p..g_1: slot s lives at gs[p - s]
          Index ghi = key.gs[p - hi_slot], glo = key.gs[p - lo_slot];
          Vec<S> merged = bcat.compose_basis(ch[lo_slot - 1], ch[lo_slot], ch[hi_slot], ghi, glo);
          for (Index m2 = 0; m2 < merged.size(); ++m2) {
            if (is_zero(merged(m2))) continue;
            BarTupleKey<S> k2;
            k2.chain = ch;
            k2.chain.erase(k2.chain.begin() + lo_slot);
            k2.xbasis = key.xbasis;
            k2.gs = key.gs;
            k2.gs.erase(k2.gs.begin() + (p - hi_slot));
            k2.gs[p - 1 - lo_slot] = m2;
            k2.hbasis = key.hbasis;
            Index pos = dst_pos(k2);
            if (pos >= 0) {
              S c = merged(m2);
              if (j % 2 != 0) c = -c;
              d(pos, static_cast<Index>(t)) += c;
            }
          }
        }
        // face p: absorb the free slot, g_1∘h
        {
          Vec<S> gh = bcat.compose_basis(B, ch[0], ch[1], key.gs[p - 1], key.hbasis);
          for (Index h2 = 0; h2 < gh.size(); ++h2) {
            if (is_zero(gh(h2))) continue;
            BarTupleKey<S> k2;
            k2.chain = std::vector<Index>(ch.begin() + 1, ch.end());
            k2.xbasis = key.xbasis;
            k2.gs = std::vector<Index>(key.gs.begin(), key.gs.end() - 1);
            k2.hbasis = h2;
            Index pos = dst_pos(k2);
            if (pos >= 0) {
              S c = gh(h2);
              if (p % 2 != 0) c = -c;
              d(pos, static_cast<Index>(t)) += c;
            }
          }
        }
      }
      dB[B] = d;
    }
    out.diffs.push_back(dB);
  }

  // augmentation: m⊗h -> m·h
  out.aug.resize(nb);
  for (Index B = 0; B < nb; ++B) {
    const auto& src = out.tuples[0][B];
    Mat<S> a = zero_mat<S>(x.dim(B, 0), static_cast<Index>(src.size()));
    for (size_t t = 0; t < src.size(); ++t) {
      const auto& key = src[t];
      Vec<S> xm = Vec<S>::Constant(x.dim(key.chain[0], 0), S(0));
      xm(key.xbasis) = k.of(1);
      Vec<S> mh = x.rapply(B, key.chain[0], 0, xm, bcat.basis_vec(B, key.chain[0], key.hbasis));
      for (Index i = 0; i < mh.size(); ++i) a(i, static_cast<Index>(t)) += mh(i);
    }
    out.aug[B] = a;
  }
  return out;
}

// Ext^n(x, y) for 0 <= n <= n_max via the bar resolution of x, reported with
// representatives-free dimensions. Ext^0 coincides with the closed degree-0
// module maps.
template <class S>
struct ExtWindow {
  std::vector<Index> dims;  // dims[n] = dim Ext^n, n = 0..n_max
  ComplexRep<S> total;      // the assembled Hom(B_•, y) total complex
};

template <class S>
ExtWindow<S> ext_window(const Bimodule<S>& x, const Bimodule<S>& y, int n_max,
                        Index max_total_dim = 20000) {
  if (n_max < 0) throw ValidationError("ext_window: negative window");
  // long enough that every face component into degrees <= n_max+1 exists,
  // also when the modules are graded
  const int q_min = y.min_degree() - x.max_degree();
  const int len = n_max + 1 - std::min(0, q_min);
  BarResolution<S> bar = bar_resolution(x, len, max_total_dim);
  const Field<S>& k = x.bcat.field;
  const Index nb = x.bcat.n_objects();

  std::vector<ModuleHomComplex<S>> K;
  for (int p = 0; p <= len; ++p) K.push_back(module_hom(bar.terms[p], y));

  // total degree n gathers Hom^{n-p}(B_p, y)
  int lo = 0, hi = 0;
  for (int p = 0; p <= len; ++p) {
    lo = std::min(lo, K[p].cx.lo + p);
    hi = std::max(hi, K[p].cx.hi + p);
  }
  hi = std::min(hi, n_max + 1);  // beyond the window the total complex is truncated

  struct Piece {
    int p;
    Index offset;
    Index dim;
  };
  std::vector<std::vector<Piece>> layout(hi - lo + 1);
  std::vector<Index> dims(hi - lo + 1, 0);
  for (int n = lo; n <= hi; ++n)
    for (int p = 0; p <= len; ++p) {
      const int q = n - p;
      if (q < K[p].cx.lo || q > K[p].cx.hi) continue;
      Index dm = K[p].cx.dim(q);
      if (dm == 0) continue;
      layout[n - lo].push_back({p, dims[n - lo], dm});
      dims[n - lo] += dm;
    }

  ComplexRep<S> total;
  total.field = k;
  total.lo = lo;
  total.hi = hi;
  total.complete_below = true;
  total.complete_above = false;
  total.dims = dims;

  auto piece_of = [&](int n, int p) -> const Piece* {
    for (auto& pc : layout[n - lo])
      if (pc.p == p) return &pc;
    return nullptr;
  };

  for (int n = lo; n < hi; ++n) {
    Mat<S> D = zero_mat<S>(dims[n + 1 - lo], dims[n - lo]);
    for (auto& pc : layout[n - lo]) {
      const int p = pc.p, q = n - p;
      // internal differential: K_p degree q -> q+1
      if (const Piece* dst = piece_of(n + 1, p)) {
        if (q >= K[p].cx.lo && q < K[p].cx.hi) {
          const Mat<S>& dmat = K[p].cx.d[q - K[p].cx.lo];
          for (Index j = 0; j < pc.dim; ++j)
            for (Index i = 0; i < dst->dim; ++i)
              if (!is_zero(dmat(i, j))) D(dst->offset + i, pc.offset + j) += dmat(i, j);
        }
      }
      // precompose with the bar face map: K_p -> K_{p+1}, sign (−1)^n
      if (p + 1 <= len) {
        if (const Piece* dst = piece_of(n + 1, p + 1)) {
          for (Index j = 0; j < pc.dim; ++j) {
            const ModuleMap<S>& h = K[p].basis[q - K[p].cx.lo][j];
            ModuleMap<S> hd;
            hd.degree = q;
            hd.blocks.resize(nb);
            for (Index B = 0; B < nb; ++B) {
              Mat<S> t = zero_mat<S>(y.dim(B, 0), bar.terms[p + 1].dim(B, 0));
              if (t.rows() > 0 && t.cols() > 0 && h.blocks[B].cols() > 0)
                t = mul_sparse(h.blocks[B], bar.diffs[p][B]);
              hd.blocks[B] = t;
            }
            // express in the basis of K_{p+1} at degree q
            Index vsize = 0;
            // flatten against K_{p+1}'s variable convention via its basis maps
            // solve sum_c coeff_c * basis_c = hd blockwise
            const auto& basis = K[p + 1].basis[q - K[p + 1].cx.lo];
            Index bdim = static_cast<Index>(basis.size());
            // build linear system over all block entries
            Index entries = 0;
            for (Index B = 0; B < nb; ++B) entries += y.dim(B, 0) * bar.terms[p + 1].dim(B, 0);
            Mat<S> A = zero_mat<S>(entries, bdim);
            Vec<S> rhs = Vec<S>::Constant(entries, S(0));
            Index at = 0;
            for (Index B = 0; B < nb; ++B) {
              const Index rdim = y.dim(B, 0), cdim = bar.terms[p + 1].dim(B, 0);
              for (Index cc = 0; cc < cdim; ++cc)
                for (Index rr = 0; rr < rdim; ++rr) {
                  for (Index bb = 0; bb < bdim; ++bb) A(at, bb) = basis[bb].blocks[B](rr, cc);
                  rhs(at) = hd.blocks[B](rr, cc);
                  ++at;
                }
            }
            auto coords = solve_vec<S>(A, rhs);
            if (!coords) throw VerificationError("ext_window: face image is not equivariant");
            for (Index i = 0; i < bdim; ++i) {
              S c = (*coords)(i);
              if (is_zero(c)) continue;
              if (n % 2 != 0) c = -c;
              D(dst->offset + i, pc.offset + j) += c;
            }
            (void)vsize;
          }
        }
      }
    }
    total.d.push_back(D);
  }

  ExtWindow<S> out;
  out.total = total;
  for (int n = 0; n <= n_max; ++n) {
    if (n < lo || n > hi) {
      out.dims.push_back(0);
      continue;
    }
    out.dims.push_back(cohomology(total, n).betti);
  }
  return out;
}

}  // namespace hochkit
