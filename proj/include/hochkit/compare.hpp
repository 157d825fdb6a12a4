#pragma once

#include <string>
#include <vector>

#include "hochkit/constructors.hpp"
#include "hochkit/hochschild.hpp"
#include "hochkit/modules.hpp"

namespace hochkit {

struct BettiTable {
  std::vector<DegreeDim> rows;

  std::vector<Index> dims() const {
    std::vector<Index> d;
    for (auto& r : rows) d.push_back(r.dim);
    return d;
  }
};

template <class S>
BettiTable betti_of(const FinLinCat<S>& c, const HochschildOptions& opts) {
  auto hh = hochschild_cohomology(c, opts);
  return BettiTable{hh.table};
}

struct CompareReport {
  BettiTable a, b;
  bool equal = false;        // dims agree wherever both sides are exact
  bool fully_exact = false;  // no edge caveats on either side
};

inline CompareReport compare_tables(const BettiTable& a, const BettiTable& b) {
  CompareReport rep{a, b, true, true};
  const size_t n = std::min(a.rows.size(), b.rows.size());
  for (size_t i = 0; i < n; ++i) {
    if (!a.rows[i].exact || !b.rows[i].exact) {
      rep.fully_exact = false;
      continue;
    }
    if (a.rows[i].dim != b.rows[i].dim) rep.equal = false;
  }
  return rep;
}

template <class S>
CompareReport compare_dims(const FinLinCat<S>& a, const FinLinCat<S>& b,
                           const HochschildOptions& opts) {
  return compare_tables(betti_of(a, opts), betti_of(b, opts));
}

// ---- the λ/ω quasi-isomorphism criterion for a connecting bimodule ----

struct PairVerdict {
  std::string from, to;
  bool pass = false;
  std::string detail;
};

template <class S>
struct LambdaOmegaReport {
  std::vector<PairVerdict> lambda, omega;
  bool all_pass = true;
};

namespace lodetail {

// right module over `base` collecting the spaces X(-, a0) (lambda side) from
// a bimodule
template <class S>
Bimodule<S> column_module(const Bimodule<S>& x, Index a0) {
  std::map<Index, HomSpace<S>> spaces;
  std::map<std::pair<Index, Index>, StructureMap<S>> action;
  for (Index b = 0; b < x.bcat.n_objects(); ++b)
    if (const HomSpace<S>* s = x.space(b, a0)) spaces[b] = *s;
  for (auto& [key, sm] : x.ract) {
    auto [b2, b, a] = key;
    if (a == a0) action[{b2, b}] = sm;
  }
  return make_right_module<S>(x.bcat, std::move(spaces), std::move(action));
}

// row module X(b0, -) as a right module over the opposite of acat
template <class S>
Bimodule<S> row_module(const Bimodule<S>& x, const FinLinCat<S>& aop, Index b0) {
  std::map<Index, HomSpace<S>> spaces;
  std::map<std::pair<Index, Index>, StructureMap<S>> action;
  for (Index a = 0; a < x.acat.n_objects(); ++a)
    if (const HomSpace<S>* s = x.space(b0, a)) spaces[a] = *s;
  // right action over aop: m·f := (left action of f in acat), f in
  // aop.hom(a2, a) = acat.hom(a, a2)
  for (auto& [key, sm] : x.lact) {
    auto [b, a, a2] = key;
    if (b != b0) continue;
    StructureMap<S> flip;
    for (auto& [fm, terms] : sm.terms)
      for (auto& [h, c] : terms) flip.add(fm.second, fm.first, h, c);
    action[{a2, a}] = flip;
  }
  return make_right_module<S>(aop, std::move(spaces), std::move(action));
}

// flatten a module map x -> y (given blockwise) into closed degree-0 hom
// coordinates; returns nullopt when it is not a module map
template <class S>
std::optional<Vec<S>> hom_coords(const ModuleHomComplex<S>& homs, const Bimodule<S>& x,
                                 const Bimodule<S>& y, const std::vector<Mat<S>>& blocks) {
  const int lo = homs.cx.lo;
  if (0 < lo || 0 > homs.cx.hi) return std::nullopt;
  const auto& basis = homs.basis[0 - lo];
  Index entries = 0;
  const Index nb = x.bcat.n_objects();
  for (Index b = 0; b < nb; ++b) entries += x.dim(b, 0) * y.dim(b, 0);
  Mat<S> A = zero_mat<S>(entries, static_cast<Index>(basis.size()));
  Vec<S> rhs = Vec<S>::Constant(entries, S(0));
  Index at = 0;
  for (Index b = 0; b < nb; ++b)
    for (Index cc = 0; cc < x.dim(b, 0); ++cc)
      for (Index rr = 0; rr < y.dim(b, 0); ++rr) {
        for (size_t t = 0; t < basis.size(); ++t) A(at, static_cast<Index>(t)) = basis[t].blocks[b](rr, cc);
        rhs(at) = blocks[b](rr, cc);
        ++at;
      }
  return solve_vec<S>(A, rhs);
}

}  // namespace lodetail

// Checks, pair by pair over the censoring relations, that the hom spaces of
// each side match the windowed Ext between the bimodule's columns (λ) or
// rows (ω).
template <class S>
LambdaOmegaReport<S> lambda_omega_check(const Bimodule<S>& x, int n_max, Index cap = 20000) {
  detail::require_ordinary(x.acat, "lambda_omega_check");
  detail::require_ordinary(x.bcat, "lambda_omega_check");
  LambdaOmegaReport<S> rep;
  const FinLinCat<S>& A = x.acat;
  const FinLinCat<S>& B = x.bcat;
  FinLinCat<S> aop = opposite(A);

  auto run_side = [&](bool lambda_side) {
    const FinLinCat<S>& cat = lambda_side ? A : B;
    for (Index p = 0; p < cat.n_objects(); ++p)
      for (Index q = 0; q < cat.n_objects(); ++q) {
        if (cat.censoring && !cat.censoring->has(p, q)) continue;
        PairVerdict v;
        v.from = cat.objects[p];
        v.to = cat.objects[q];
        Bimodule<S> xp = lambda_side ? lodetail::column_module(x, p) : lodetail::row_module(x, aop, q);
        Bimodule<S> xq = lambda_side ? lodetail::column_module(x, q) : lodetail::row_module(x, aop, p);
        auto ext = ext_window(xp, xq, n_max, cap);
        const Index hom_dim = cat.hom_dim(p, q);
        bool ok = ext.dims[0] == hom_dim;
        for (int n = 1; n <= n_max; ++n) ok = ok && ext.dims[n] == 0;
        // the structure map itself must span the degree-0 homs
        auto homs = module_hom(xp, xq);
        Mat<S> img = zero_mat<S>(0, 0);
        if (hom_dim > 0) {
          const Index basis_n = (0 >= homs.cx.lo && 0 <= homs.cx.hi)
                                    ? homs.cx.dim(0)
                                    : 0;
          img = zero_mat<S>(basis_n, hom_dim);
          for (Index fi = 0; fi < hom_dim; ++fi) {
            std::vector<Mat<S>> blocks;
            const FinLinCat<S>& base = xp.bcat;
            for (Index b = 0; b < base.n_objects(); ++b) {
              Mat<S> blk = zero_mat<S>(xq.dim(b, 0), xp.dim(b, 0));
              for (Index m = 0; m < xp.dim(b, 0); ++m) {
                Vec<S> mv = Vec<S>::Constant(xp.dim(b, 0), S(0));
                mv(m) = cat.field.of(1);
                Vec<S> out;
                if (lambda_side) {
                  out = x.lapply(b, p, q, cat.basis_vec(p, q, fi), mv);
                } else {
                  out = x.rapply(p, q, b, mv, cat.basis_vec(p, q, fi));
                }
                for (Index t = 0; t < out.size(); ++t) blk(t, m) = out(t);
              }
              blocks.push_back(blk);
            }
            auto coords = lodetail::hom_coords(homs, xp, xq, blocks);
            if (!coords) {
              ok = false;
              break;
            }
            img.col(fi) = *coords;
          }
          if (ok && rank(img) != hom_dim) ok = false;
        }
        v.pass = ok;
        if (!ok) v.detail = "hom space and windowed Ext disagree";
        (lambda_side ? rep.lambda : rep.omega).push_back(v);
        rep.all_pass = rep.all_pass && v.pass;
      }
  };
  run_side(true);
  run_side(false);
  return rep;
}

}  // namespace hochkit
