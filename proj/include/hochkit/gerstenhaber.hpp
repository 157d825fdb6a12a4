#pragma once

#include <string>
#include <vector>

#include "hochkit/constructors.hpp"
#include "hochkit/hochschild.hpp"

namespace hochkit {

// Cochain-level operations (cup, circle/pre-Lie, bracket) for ordinary
// categories with diagonal coefficients. Circle insertions are weighted by
// the slots to the LEFT of the insertion, (−1)^{a(|ψ|−1)}; with that
// convention the complex differential satisfies d f = −[μ, f] on the nose.

namespace gdetail {

template <class S>
void require_ordinary_diagonal(const HochschildComplex<S>& H, const std::string& who) {
  if (!H.cat.is_ordinary()) throw ValidationError(who + ": category must be ordinary");
  for (auto& [key, h] : H.cat.homs) {
    const HomSpace<S>* sp = H.coef.space(key.first, key.second);
    if (!sp || sp->labels != h.labels)
      throw ValidationError(who + ": coefficients must be the diagonal bimodule");
  }
}

// value of a cochain on a given chain and tensor, as a vector over the
// coefficient space of (A_0, A_p); zero when the block is not present
template <class S>
Vec<S> eval(const HochschildComplex<S>& H, const Cochain<S>& f, const std::vector<Index>& chain,
            const std::vector<Index>& tensor) {
  const Index out = H.coef.dim(chain.front(), chain.back());
  Vec<S> v = Vec<S>::Constant(out, S(0));
  auto bit = H.block_id.find(chain);
  if (bit == H.block_id.end()) return v;
  auto& blk = H.blocks[bit->second];
  auto tit = blk.tensor_id.find(tensor);
  if (tit == blk.tensor_id.end()) return v;
  auto& ix = H.rix[f.degree - H.lo()];
  auto rit = ix.find({bit->second, tit->second});
  if (rit == ix.end()) return v;
  const auto& run = H.runs[f.degree - H.lo()][rit->second];
  for (size_t k = 0; k < run.ms.size(); ++k) v(run.ms[k]) = f.coords(run.offset + static_cast<Index>(k));
  return v;
}

}  // namespace gdetail

template <class S>
Cochain<S> zero_cochain(const HochschildComplex<S>& H, int degree) {
  if (degree < H.lo() || degree > H.hi())
    throw ValidationError("cochain degree outside the assembled window");
  return {degree, Vec<S>::Constant(H.dim(degree), S(0))};
}

// the unit 0-cochain: identities at every object
template <class S>
Cochain<S> unit_cochain(const HochschildComplex<S>& H) {
  Cochain<S> e = zero_cochain(H, 0);
  for (auto& run : H.runs[0 - H.lo()]) {
    auto& blk = H.blocks[run.block];
    if (blk.p() != 0) continue;
    const Vec<S>& id = H.cat.identity(blk.objs[0]);
    for (size_t k = 0; k < run.ms.size(); ++k) e.coords(run.offset + static_cast<Index>(k)) = id(run.ms[k]);
  }
  return e;
}

// the composition 2-cochain μ(g, f) = g∘f
template <class S>
Cochain<S> mu_cochain(const HochschildComplex<S>& H) {
  gdetail::require_ordinary_diagonal(H, "mu_cochain");
  Cochain<S> mu = zero_cochain(H, 2);
  for (auto& run : H.runs[2 - H.lo()]) {
    auto& blk = H.blocks[run.block];
    if (blk.p() != 2) continue;
    const auto& T = blk.tensors[run.tensor];
    Vec<S> gf = H.cat.compose_basis(blk.objs[0], blk.objs[1], blk.objs[2], T[1], T[0]);
    for (size_t k = 0; k < run.ms.size(); ++k) mu.coords(run.offset + static_cast<Index>(k)) = gf(run.ms[k]);
  }
  return mu;
}

template <class S>
Cochain<S> cup_product(const HochschildComplex<S>& H, const Cochain<S>& f, const Cochain<S>& g) {
  gdetail::require_ordinary_diagonal(H, "cup_product");
  const int n = f.degree + g.degree;
  Cochain<S> out = zero_cochain(H, n);
  for (auto& run : H.runs[n - H.lo()]) {
    auto& blk = H.blocks[run.block];
    if (blk.p() != n) continue;
    const auto& T = blk.tensors[run.tensor];
    const auto& ch = blk.objs;
    // high slots to f, low slots to g
    std::vector<Index> fch(ch.begin() + g.degree, ch.end());
    std::vector<Index> ften(T.begin() + g.degree, T.end());
    std::vector<Index> gch(ch.begin(), ch.begin() + g.degree + 1);
    std::vector<Index> gten(T.begin(), T.begin() + g.degree);
    Vec<S> fv = gdetail::eval(H, f, fch, ften);
    Vec<S> gv = gdetail::eval(H, g, gch, gten);
    Vec<S> prod = H.cat.compose(ch[0], ch[g.degree], ch.back(), fv, gv);
    for (size_t k = 0; k < run.ms.size(); ++k)
      out.coords(run.offset + static_cast<Index>(k)) = prod(run.ms[k]);
  }
  return out;
}

// circle (pre-Lie) composition f∘g, summing insertions of g into f
template <class S>
Cochain<S> circle_product(const HochschildComplex<S>& H, const Cochain<S>& f, const Cochain<S>& g) {
  gdetail::require_ordinary_diagonal(H, "circle_product");
  const int m = f.degree, n = g.degree;
  const int P = m + n - 1;
  if (P < 0) throw ValidationError("circle_product needs positive arity");
  Cochain<S> out = zero_cochain(H, P);
  for (auto& run : H.runs[P - H.lo()]) {
    auto& blk = H.blocks[run.block];
    if (blk.p() != P) continue;
    const auto& T = blk.tensors[run.tensor];
    const auto& ch = blk.objs;
    Vec<S> acc = Vec<S>::Constant(H.coef.dim(ch.front(), ch.back()), S(0));
    for (int a = 0; a <= m - 1; ++a) {
      // g covers slots P-a-n+1 .. P-a (1-based); slot s = T[s-1]
      const int top = P - a, bot = P - a - n + 1;
      std::vector<Index> gch(ch.begin() + (bot - 1), ch.begin() + top + 1);
      std::vector<Index> gten(T.begin() + (bot - 1), T.begin() + top);
      Vec<S> gv = gdetail::eval(H, g, gch, gten);
      // f's chain: A_0..A_{bot-1}, A_top, .., A_P with g's value in the middle slot
      std::vector<Index> fch;
      fch.insert(fch.end(), ch.begin(), ch.begin() + bot);
      fch.insert(fch.end(), ch.begin() + top, ch.end());
      const Index ghom_dim = H.cat.hom_dim(ch[bot - 1], ch[top]);
      for (Index hb = 0; hb < ghom_dim; ++hb) {
        if (is_zero(gv(hb))) continue;
        std::vector<Index> ften;
        ften.insert(ften.end(), T.begin(), T.begin() + (bot - 1));
        ften.push_back(hb);
        ften.insert(ften.end(), T.begin() + top, T.end());
        Vec<S> fv = gdetail::eval(H, f, fch, ften);
        S w = gv(hb);
        if ((a * (n - 1)) % 2 != 0) w = -w;
        for (Index i = 0; i < acc.size(); ++i) acc(i) += w * fv(i);
      }
    }
    for (size_t k = 0; k < run.ms.size(); ++k)
      out.coords(run.offset + static_cast<Index>(k)) = acc(run.ms[k]);
  }
  return out;
}

template <class S>
Cochain<S> gerstenhaber_bracket(const HochschildComplex<S>& H, const Cochain<S>& f, const Cochain<S>& g) {
  Cochain<S> fg = circle_product(H, f, g);
  Cochain<S> gf = circle_product(H, g, f);
  const int sign = ((f.degree - 1) * (g.degree - 1)) % 2;
  Cochain<S> out = fg;
  if (sign == 0)
    out.coords -= gf.coords;
  else
    out.coords += gf.coords;
  return out;
}

template <class S>
Cochain<S> circle_square(const HochschildComplex<S>& H, const Cochain<S>& f) {
  return circle_product(H, f, f);
}

// differential as a cochain operation (matrix application)
template <class S>
Cochain<S> coboundary(const HochschildComplex<S>& H, const Cochain<S>& f) {
  if (f.degree >= H.hi()) throw ValidationError("coboundary: degree at the window top");
  return {f.degree + 1, mul_sparse_vec(H.cx.diff(f.degree), f.coords)};
}

// ---- graded center and the projection onto it ----

// A homogeneous element of the center: one endomorphism per object.
template <class S>
struct CenterElement {
  int degree = 0;
  std::vector<Vec<S>> phi;  // per object, coefficients over hom(a,a)
};

// Z(c) of a graded category (zero differential): tuples with
// f∘phi_a = (−1)^{|f||phi|} phi_b∘f for all basis f. Returns a basis per
// degree in [deg_lo, deg_hi].
template <class S>
std::vector<CenterElement<S>> graded_center(const FinLinCat<S>& c, int deg_lo, int deg_hi) {
  std::vector<CenterElement<S>> out;
  const Index n = c.n_objects();
  for (int m = deg_lo; m <= deg_hi; ++m) {
    // variables: entries of phi_a in degree m
    std::vector<std::pair<Index, Index>> vars;  // (object, basis index)
    std::map<std::pair<Index, Index>, Index> pos;
    for (Index a = 0; a < n; ++a)
      if (const HomSpace<S>* h = c.hom(a, a))
        for (Index i : h->indices_in_degree(m)) {
          pos[{a, i}] = static_cast<Index>(vars.size());
          vars.push_back({a, i});
        }
    std::vector<Mat<S>> rows;
    Index nrows = 0;
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        const HomSpace<S>* hab = c.hom(a, b);
        if (!hab) continue;
        for (Index fi = 0; fi < hab->dim(); ++fi) {
          Mat<S> r = zero_mat<S>(c.hom_dim(a, b), static_cast<Index>(vars.size()));
          bool any = false;
          // f∘phi_a
          if (const HomSpace<S>* haa = c.hom(a, a))
            for (Index i : haa->indices_in_degree(m)) {
              auto it = pos.find({a, i});
              if (it == pos.end()) continue;
              Vec<S> v = c.compose(a, a, b, c.basis_vec(a, b, fi), c.basis_vec(a, a, i));
              for (Index t = 0; t < v.size(); ++t)
                if (!is_zero(v(t))) {
                  r(t, it->second) += v(t);
                  any = true;
                }
            }
          // −(−1)^{|f| m} phi_b∘f
          if (const HomSpace<S>* hbb = c.hom(b, b))
            for (Index i : hbb->indices_in_degree(m)) {
              auto it = pos.find({b, i});
              if (it == pos.end()) continue;
              Vec<S> v = c.compose(a, b, b, c.basis_vec(b, b, i), c.basis_vec(a, b, fi));
              const bool neg = (hab->degs[fi] * m) % 2 == 0;
              for (Index t = 0; t < v.size(); ++t)
                if (!is_zero(v(t))) {
                  if (neg)
                    r(t, it->second) -= v(t);
                  else
                    r(t, it->second) += v(t);
                  any = true;
                }
            }
          if (any) {
            nrows += r.rows();
            rows.push_back(std::move(r));
          }
        }
      }
    Mat<S> cons = zero_mat<S>(nrows, static_cast<Index>(vars.size()));
    Index at = 0;
    for (auto& r : rows) {
      cons.middleRows(at, r.rows()) = r;
      at += r.rows();
    }
    Mat<S> kerb = kernel_basis(cons);
    for (Index col = 0; col < kerb.cols(); ++col) {
      CenterElement<S> z;
      z.degree = m;
      z.phi.resize(n);
      for (Index a = 0; a < n; ++a) z.phi[a] = Vec<S>::Constant(c.hom_dim(a, a), S(0));
      for (Index v = 0; v < static_cast<Index>(vars.size()); ++v)
        z.phi[vars[v].first](vars[v].second) = kerb(v, col);
      out.push_back(std::move(z));
    }
  }
  return out;
}

// The column-0 projection: a degree-n cochain restricts to the tuple of its
// values on empty chains.
template <class S>
CenterElement<S> center_map(const HochschildComplex<S>& H, const Cochain<S>& f) {
  CenterElement<S> z;
  z.degree = f.degree;
  const Index n = H.cat.n_objects();
  z.phi.resize(n);
  for (Index a = 0; a < n; ++a) z.phi[a] = Vec<S>::Constant(H.cat.hom_dim(a, a), S(0));
  for (auto& run : H.runs[f.degree - H.lo()]) {
    auto& blk = H.blocks[run.block];
    if (blk.p() != 0) continue;
    for (size_t k = 0; k < run.ms.size(); ++k)
      z.phi[blk.objs[0]](run.ms[k]) = f.coords(run.offset + static_cast<Index>(k));
  }
  return z;
}

// centrality of a tuple modulo boundaries of the hom complexes: exact
// equality when the category has zero differential
template <class S>
bool is_central(const FinLinCat<S>& c, const CenterElement<S>& z) {
  const Index n = c.n_objects();
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const HomSpace<S>* hab = c.hom(a, b);
      if (!hab) continue;
      for (Index fi = 0; fi < hab->dim(); ++fi) {
        Vec<S> lhs = c.hom(a, a) ? c.compose(a, a, b, c.basis_vec(a, b, fi), z.phi[a])
                                 : Vec<S>::Constant(hab->dim(), S(0));
        Vec<S> rhs = c.hom(b, b) ? c.compose(a, b, b, z.phi[b], c.basis_vec(a, b, fi))
                                 : Vec<S>::Constant(hab->dim(), S(0));
        if ((hab->degs[fi] * z.degree) % 2 != 0) rhs = -rhs;
        Vec<S> diff = lhs - rhs;
        if (is_zero_mat<S>(Mat<S>(diff))) continue;
        // allow a boundary discrepancy when the homs carry a differential
        if (!solve_vec<S>(hab->diff, diff)) return false;
      }
    }
  return true;
}

}  // namespace hochkit
