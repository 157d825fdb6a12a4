#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hochkit/algebra.hpp"
#include "hochkit/complex.hpp"

namespace hochkit {

// The diagram bicomplex of an algebra-valued presheaf on a poset, totalized:
// C^{p,q} = ⊕_{u_0 < ... < u_p} Hom(O(u_p)^{⊗q}, O(u_0)), with the algebra
// cochain differential vertically (O(u_0) an O(u_p)-bimodule through the
// restriction) and the simplicial differential horizontally (the 0th face
// composes with a restriction on the output, the last face restricts every
// input). Total differential d_v + (−1)^q d_h.
template <class S>
struct GsBicomplex {
  ComplexRep<S> total;
};

template <class S>
GsBicomplex<S> gs_bicomplex(const RingPresheaf<S>& o, int n_max, Index max_total_dim = 200000) {
  {
    auto rep = validate_presheaf(o);
    if (!rep.ok()) throw ValidationError("gs_bicomplex: presheaf invalid:\n" + rep.str());
  }
  const Field<S>& k = o.alg.empty() ? Field<S>{} : o.alg[0].field;
  GsBicomplex<S> out;
  out.total.field = k;
  out.total.lo = 0;
  out.total.hi = n_max + 1;
  out.total.complete_below = true;

  // strict chains per length
  std::vector<std::vector<std::vector<Index>>> chains;
  for (int p = 0; p <= n_max + 1; ++p) chains.push_back(o.poset.strict_chains(p));

  struct Run {
    int p;
    Index chain;             // index into chains[p]
    std::vector<Index> ten;  // q-tuple of O(u_p) basis indices (slot j = argument a_{j+1})
    Index offset;
    Index mdim;
  };
  std::vector<std::vector<Run>> runs(n_max + 2);
  std::vector<std::map<std::pair<std::pair<int, Index>, std::vector<Index>>, Index>> rix(n_max + 2);

  for (int n = 0; n <= n_max + 1; ++n) {
    Index off = 0;
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      for (Index c = 0; c < static_cast<Index>(chains[p].size()); ++c) {
        const auto& ch = chains[p][c];
        const Algebra<S>& top = o.alg[ch.back()];
        const Algebra<S>& bot = o.alg[ch.front()];
        if (bot.dim() == 0) continue;
        std::vector<Index> ten(q, 0);
        bool done = false;
        while (!done) {
          Run r;
          r.p = p;
          r.chain = c;
          r.ten = ten;
          r.offset = off;
          r.mdim = bot.dim();
          rix[n][{{p, c}, ten}] = static_cast<Index>(runs[n].size());
          runs[n].push_back(r);
          off += bot.dim();
          if (off > max_total_dim)
            throw ResourceCapError("gs_bicomplex: degree " + std::to_string(n) +
                                   " exceeds the dimension cap");
          done = true;
          for (int j = 0; j < q; ++j) {
            if (++ten[j] < top.dim()) {
              done = false;
              break;
            }
            ten[j] = 0;
          }
          if (q == 0) break;
        }
      }
    }
    out.total.dims.push_back(off);
  }

  for (int n = 0; n <= n_max; ++n) {
    Mat<S> D = zero_mat<S>(out.total.dims[n + 1], out.total.dims[n]);
    for (const auto& trun : runs[n + 1]) {
      const int P = trun.p;
      const int Q = n + 1 - P;
      const auto& ch = chains[P][trun.chain];
      const Algebra<S>& top = o.alg[ch.back()];
      const Algebra<S>& bot = o.alg[ch.front()];
      const Mat<S>& r_out = o.restriction(ch.front(), ch.back());

      // ---- vertical: source (P, Q-1), same chain ----
      if (Q >= 1) {
        const int q = Q - 1;
        // (d_v φ)(a_{q+1},...,a_1) = (−1)^q r(a_{q+1})·φ(a_q..a_1)
        //                            − Σ_i (−1)^i φ(..a_{i+1}a_i..)
        //                            − φ(a_{q+1}..a_2)·r(a_1)
        // top slot: a_{q+1} = trun.ten[Q-1]
        {
          std::vector<Index> sten(trun.ten.begin(), trun.ten.end() - 1);
          auto it = rix[n].find({{P, trun.chain}, sten});
          if (it != rix[n].end()) {
            const Run& srun = runs[n][it->second];
            // m' component of r(a)·m
            Vec<S> ra = mul_sparse_vec(r_out, top.basis_vec(trun.ten[Q - 1]));
            for (Index m = 0; m < bot.dim(); ++m) {
              Vec<S> rm = bot.mul(ra, bot.basis_vec(m));
              for (Index mp = 0; mp < bot.dim(); ++mp) {
                if (is_zero(rm(mp))) continue;
                S cval = rm(mp);
                if (q % 2 != 0) cval = -cval;
                D(trun.offset + mp, srun.offset + m) += cval;
              }
            }
          }
        }
        // inner: merge a_{i+1} a_i, slots i, i-1 (1-based i = 1..q)
        for (int i = 1; i <= q; ++i) {
          Vec<S> merged = top.mul(top.basis_vec(trun.ten[i]), top.basis_vec(trun.ten[i - 1]));
          for (Index h = 0; h < merged.size(); ++h) {
            if (is_zero(merged(h))) continue;
            std::vector<Index> sten;
            for (int j = 0; j < i - 1; ++j) sten.push_back(trun.ten[j]);
            sten.push_back(h);
            for (int j = i + 1; j < Q; ++j) sten.push_back(trun.ten[j]);
            auto it = rix[n].find({{P, trun.chain}, sten});
            if (it == rix[n].end()) continue;
            const Run& srun = runs[n][it->second];
            // coefficient −(−1)^i: positive for odd i
            for (Index m = 0; m < bot.dim(); ++m) {
              S cval = merged(h);
              if (i % 2 == 0) cval = -cval;
              D(trun.offset + m, srun.offset + m) += cval;
            }
          }
        }
        // bottom slot: a_1 = trun.ten[0]
        {
          std::vector<Index> sten(trun.ten.begin() + 1, trun.ten.end());
          auto it = rix[n].find({{P, trun.chain}, sten});
          if (it != rix[n].end()) {
            const Run& srun = runs[n][it->second];
            Vec<S> ra = mul_sparse_vec(r_out, top.basis_vec(trun.ten[0]));
            for (Index m = 0; m < bot.dim(); ++m) {
              Vec<S> mr = bot.mul(bot.basis_vec(m), ra);
              for (Index mp = 0; mp < bot.dim(); ++mp) {
                if (is_zero(mr(mp))) continue;
                D(trun.offset + mp, srun.offset + m) -= mr(mp);
              }
            }
          }
        }
      }

      // ---- horizontal: source (P-1, Q), faces of the chain, sign (−1)^Q ----
      if (P >= 1) {
        const bool qneg = Q % 2 != 0;
        for (int j = 0; j <= P; ++j) {
          std::vector<Index> face = ch;
          face.erase(face.begin() + j);
          // locate the face chain among chains[P-1]
          Index fc = -1;
          for (Index c2 = 0; c2 < static_cast<Index>(chains[P - 1].size()); ++c2)
            if (chains[P - 1][c2] == face) {
              fc = c2;
              break;
            }
          if (fc < 0) continue;
          const S one = k.of(1);
          S sgn = (j % 2 == 0) ? one : -one;
          if (qneg) sgn = -sgn;
          if (j == 0) {
            // output composed with r_{u_0, u_1}
            auto it = rix[n].find({{P - 1, fc}, trun.ten});
            if (it == rix[n].end()) continue;
            const Run& srun = runs[n][it->second];
            const Mat<S>& r01 = o.restriction(ch[0], ch[1]);
            for (Index m = 0; m < o.alg[ch[1]].dim(); ++m)
              for (Index mp = 0; mp < bot.dim(); ++mp)
                if (!is_zero(r01(mp, m))) D(trun.offset + mp, srun.offset + m) += sgn * r01(mp, m);
          } else if (j == P) {
            // all inputs restricted along r_{u_{P-1}, u_P}
            const Mat<S>& rin = o.restriction(ch[P - 1], ch[P]);
            // expand the product of single-slot restrictions
            std::vector<std::vector<std::pair<Index, S>>> slot(Q);
            for (int s = 0; s < Q; ++s) {
              Vec<S> img = mul_sparse_vec(rin, top.basis_vec(trun.ten[s]));
              for (Index t = 0; t < img.size(); ++t)
                if (!is_zero(img(t))) slot[s].push_back({t, img(t)});
            }
            // iterate the product of the slot supports
            std::vector<Index> sten(Q, 0);
            std::function<void(int, S)> rec = [&](int s, S acc) {
              if (s == Q) {
                auto it = rix[n].find({{P - 1, fc}, sten});
                if (it == rix[n].end()) return;
                const Run& srun = runs[n][it->second];
                for (Index m = 0; m < bot.dim(); ++m)
                  D(trun.offset + m, srun.offset + m) += sgn * acc;
                return;
              }
              for (auto& [t, cval] : slot[s]) {
                sten[s] = t;
                rec(s + 1, acc * cval);
              }
            };
            rec(0, one);
          } else {
            // inner face: same algebra and output, chain reindexed
            auto it = rix[n].find({{P - 1, fc}, trun.ten});
            if (it == rix[n].end()) continue;
            const Run& srun = runs[n][it->second];
            for (Index m = 0; m < bot.dim(); ++m) D(trun.offset + m, srun.offset + m) += sgn;
          }
        }
      }
    }
    out.total.d.push_back(D);
  }
  return out;
}

template <class S>
std::vector<Index> gs_cohomology(const RingPresheaf<S>& o, int n_max, Index cap = 200000) {
  auto g = gs_bicomplex(o, n_max, cap);
  std::vector<Index> dims;
  for (int n = 0; n <= n_max; ++n) dims.push_back(cohomology(g.total, n).betti);
  return dims;
}

}  // namespace hochkit
