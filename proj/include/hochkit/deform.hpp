#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hochkit/gerstenhaber.hpp"
#include "hochkit/hochschild.hpp"

namespace hochkit {

// First-order deformation of an ordinary category: composition perturbed to
// μ + tφ over k[t]/(t²), with φ a 2-cochain with diagonal coefficients.
template <class S>
struct FirstOrderDeformation {
  const HochschildComplex<S>* complex;  // diagonal coefficients, window >= 3
  Cochain<S> phi;
};

template <class S>
struct DefectWitness {
  std::vector<std::string> triple;  // basis labels (h, g, f)
  Vec<S> defect;
};

template <class S>
struct FirstOrderReport {
  bool associative = false;  // ⟺ φ is a 2-cocycle
  std::optional<DefectWitness<S>> witness;
};

// Direct multiplication-table expansion of associativity modulo t²; the
// defect orientation is [(h·g)·f − h·(g·f)]. Independent of the cochain
// differential matrix.
template <class S>
FirstOrderReport<S> first_order_check(const FirstOrderDeformation<S>& d) {
  const HochschildComplex<S>& H = *d.complex;
  gdetail::require_ordinary_diagonal(H, "first_order_check");
  const FinLinCat<S>& c = H.cat;
  FirstOrderReport<S> rep;
  rep.associative = true;
  const Index n = c.n_objects();
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const HomSpace<S>* hab = c.hom(a, b);
      if (!hab) continue;
      for (Index b2 = 0; b2 < n; ++b2) {
        const HomSpace<S>* hbb2 = c.hom(b, b2);
        if (!hbb2) continue;
        for (Index b3 = 0; b3 < n; ++b3) {
          const HomSpace<S>* hb2b3 = c.hom(b2, b3);
          if (!hb2b3) continue;
          const Index out = c.hom_dim(a, b3);
          for (Index hi = 0; hi < hb2b3->dim(); ++hi)
            for (Index gi = 0; gi < hbb2->dim(); ++gi)
              for (Index fi = 0; fi < hab->dim(); ++fi) {
                // t-coefficient of (h·g)·f − h·(g·f)
                Vec<S> defect = Vec<S>::Constant(out, S(0));
                // φ(h,g)∘f
                Vec<S> phi_hg = gdetail::eval(H, d.phi, {b, b2, b3}, {gi, hi});
                defect += c.compose(a, b, b3, phi_hg, c.basis_vec(a, b, fi));
                // φ(h∘g, f)
                Vec<S> hg = c.compose_basis(b, b2, b3, hi, gi);
                for (Index m = 0; m < hg.size(); ++m) {
                  if (is_zero(hg(m))) continue;
                  defect += hg(m) * gdetail::eval(H, d.phi, {a, b, b3}, {fi, m});
                }
                // − h∘φ(g,f)
                Vec<S> phi_gf = gdetail::eval(H, d.phi, {a, b, b2}, {fi, gi});
                defect -= c.compose(a, b2, b3, c.basis_vec(b2, b3, hi), phi_gf);
                // − φ(h, g∘f)
                Vec<S> gf = c.compose_basis(a, b, b2, gi, fi);
                for (Index m = 0; m < gf.size(); ++m) {
                  if (is_zero(gf(m))) continue;
                  defect -= gf(m) * gdetail::eval(H, d.phi, {a, b2, b3}, {m, hi});
                }
                if (!is_zero_mat<S>(Mat<S>(defect))) {
                  rep.associative = false;
                  if (!rep.witness)
                    rep.witness = DefectWitness<S>{
                        {hb2b3->labels[hi], hbb2->labels[gi], hab->labels[fi]}, defect};
                }
              }
        }
      }
    }
  return rep;
}

template <class S>
struct ObstructionReport {
  bool square_is_cocycle = false;
  bool unobstructed = false;
  Cochain<S> square;               // the pre-Lie square φ∘φ
  std::optional<Cochain<S>> lift;  // ψ with δψ = −φ∘φ when unobstructed
};

// Second-order step: the t² defect of μ + tφ is the pre-Lie square φ∘φ;
// the deformation extends to k[t]/(t³) iff that class vanishes.
template <class S>
ObstructionReport<S> obstruction_square(const FirstOrderDeformation<S>& d) {
  const HochschildComplex<S>& H = *d.complex;
  if (H.hi() < 4) throw ValidationError("obstruction_square: assemble the complex with n_max >= 3");
  ObstructionReport<S> rep{false, false, circle_square(H, d.phi), std::nullopt};
  rep.square_is_cocycle =
      is_zero_mat<S>(Mat<S>(mul_sparse_vec(H.cx.diff(3), rep.square.coords)));
  Vec<S> rhs = -rep.square.coords;
  auto psi = solve_vec<S>(H.cx.diff(2), rhs);
  if (psi) {
    rep.unobstructed = true;
    rep.lift = Cochain<S>{2, *psi};
  }
  return rep;
}

template <class S>
struct EquivalenceReport {
  bool equivalent = false;
  std::optional<Cochain<S>> gauge;  // ψ with δψ = φ1 − φ2
};

template <class S>
EquivalenceReport<S> deformation_equivalence(const FirstOrderDeformation<S>& d1,
                                             const FirstOrderDeformation<S>& d2) {
  const HochschildComplex<S>& H = *d1.complex;
  Vec<S> rhs = d1.phi.coords - d2.phi.coords;
  auto psi = solve_vec<S>(H.cx.diff(1), rhs);
  EquivalenceReport<S> rep;
  if (psi) {
    rep.equivalent = true;
    rep.gauge = Cochain<S>{1, *psi};
  }
  return rep;
}

// t² defect by direct expansion, for the cross-check against circle_square.
template <class S>
Cochain<S> second_order_defect(const FirstOrderDeformation<S>& d) {
  const HochschildComplex<S>& H = *d.complex;
  gdetail::require_ordinary_diagonal(H, "second_order_defect");
  Cochain<S> out = zero_cochain(H, 3);
  for (auto& run : H.runs[3 - H.lo()]) {
    auto& blk = H.blocks[run.block];
    if (blk.p() != 3) continue;
    const auto& T = blk.tensors[run.tensor];
    const auto& ch = blk.objs;
    // φ(φ(h,g),f) − φ(h,φ(g,f)) on (h,g,f) = (T[2],T[1],T[0])
    Vec<S> acc = Vec<S>::Constant(H.coef.dim(ch.front(), ch.back()), S(0));
    Vec<S> phg = gdetail::eval(H, d.phi, {ch[1], ch[2], ch[3]}, {T[1], T[2]});
    for (Index m = 0; m < phg.size(); ++m) {
      if (is_zero(phg(m))) continue;
      acc += phg(m) * gdetail::eval(H, d.phi, {ch[0], ch[1], ch[3]}, {T[0], m});
    }
    Vec<S> pgf = gdetail::eval(H, d.phi, {ch[0], ch[1], ch[2]}, {T[0], T[1]});
    for (Index m = 0; m < pgf.size(); ++m) {
      if (is_zero(pgf(m))) continue;
      acc -= pgf(m) * gdetail::eval(H, d.phi, {ch[0], ch[2], ch[3]}, {m, T[2]});
    }
    for (size_t k = 0; k < run.ms.size(); ++k)
      out.coords(run.offset + static_cast<Index>(k)) = acc(run.ms[k]);
  }
  return out;
}

}  // namespace hochkit
