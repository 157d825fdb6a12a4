#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hochkit/complex.hpp"
#include "hochkit/lincat.hpp"

namespace hochkit {

// Two-sided module over a pair of categories. Spaces are keyed (b, a) with b
// contravariant (right action of bcat by precomposition-style maps) and a
// covariant (left action of acat). The diagonal bimodule of a category has
// M(b, a) = hom(b, a).
template <class S>
struct Bimodule {
  FinLinCat<S> acat;
  FinLinCat<S> bcat;
  std::map<std::pair<Index, Index>, HomSpace<S>> spaces;
  // (b, a, a2): acat.hom(a,a2) x M(b,a) -> M(b,a2)
  std::map<std::tuple<Index, Index, Index>, StructureMap<S>> lact;
  // (b2, b, a): M(b,a) x bcat.hom(b2,b) -> M(b2,a)
  std::map<std::tuple<Index, Index, Index>, StructureMap<S>> ract;

  const HomSpace<S>* space(Index b, Index a) const {
    auto it = spaces.find({b, a});
    return it == spaces.end() ? nullptr : &it->second;
  }
  Index dim(Index b, Index a) const {
    const HomSpace<S>* s = space(b, a);
    return s ? s->dim() : 0;
  }

  Vec<S> lapply(Index b, Index a, Index a2, const Vec<S>& f, const Vec<S>& m) const {
    const Index out = dim(b, a2);
    auto it = lact.find({b, a, a2});
    if (it == lact.end()) return Vec<S>::Constant(out, S(0));
    return it->second.apply(f, m, out);
  }
  Vec<S> rapply(Index b2, Index b, Index a, const Vec<S>& m, const Vec<S>& g) const {
    const Index out = dim(b2, a);
    auto it = ract.find({b2, b, a});
    if (it == ract.end()) return Vec<S>::Constant(out, S(0));
    return it->second.apply(m, g, out);
  }

  int min_degree() const {
    int t = 0;
    for (auto& [k, s] : spaces) t = std::min(t, s.min_degree());
    return t;
  }
  int max_degree() const {
    int t = 0;
    for (auto& [k, s] : spaces) t = std::max(t, s.max_degree());
    return t;
  }
  Index total_dim() const {
    Index t = 0;
    for (auto& [k, s] : spaces) t += s.dim();
    return t;
  }
};

// Both actions of the diagonal bimodule are the composition tensor: the left
// action applies (f, m) -> f∘m and the right action (m, g) -> m∘g, which in
// either case looks up (outer, inner) in the structure constants.
template <class S>
Bimodule<S> diagonal_bimodule(const FinLinCat<S>& c) {
  Bimodule<S> m;
  m.acat = c;
  m.bcat = c;
  for (auto& [k, h] : c.homs) m.spaces[k] = h;
  for (auto& [k, sm] : c.comp) {
    m.lact[k] = sm;
    m.ract[k] = sm;
  }
  return m;
}

template <class S>
ValidationReport validate_bimodule(const Bimodule<S>& m) {
  ValidationReport rep;
  const Index na = m.acat.n_objects(), nb = m.bcat.n_objects();

  for (auto& [key, s] : m.spaces) {
    auto [b, a] = key;
    const std::string where =
        "M(" + m.bcat.objects[b] + "," + m.acat.objects[a] + ")";
    if (s.diff.rows() != s.dim() || s.diff.cols() != s.dim()) {
      rep.add("space", "bad differential shape in " + where);
      continue;
    }
    for (Index j = 0; j < s.dim(); ++j)
      for (Index i = 0; i < s.dim(); ++i)
        if (!is_zero(s.diff(i, j)) && s.degs[i] != s.degs[j] + 1)
          rep.add("space", "differential is not degree +1 in " + where);
    if (!is_zero_mat<S>(mul_sparse(s.diff, s.diff))) rep.add("space", "d∘d != 0 in " + where);
  }

  auto basis_of = [&](const HomSpace<S>* h, Index i) {
    Vec<S> v = Vec<S>::Constant(h->dim(), S(0));
    v(i) = S(1);
    return v;
  };

  // left action axioms
  for (Index b = 0; b < nb; ++b)
    for (Index a = 0; a < na; ++a) {
      const HomSpace<S>* sp = m.space(b, a);
      if (!sp) continue;
      // unit
      if (m.acat.hom(a, a)) {
        for (Index i = 0; i < sp->dim(); ++i) {
          Vec<S> got = m.lapply(b, a, a, m.acat.identity(a), basis_of(sp, i));
          if (!detail::vec_eq<S>(got, basis_of(sp, i)))
            rep.add("left-action", "id·m != m at M(" + m.bcat.objects[b] + "," + m.acat.objects[a] + ")");
        }
      }
      if (m.bcat.hom(b, b)) {
        for (Index i = 0; i < sp->dim(); ++i) {
          Vec<S> got = m.rapply(b, b, a, basis_of(sp, i), m.bcat.identity(b));
          if (!detail::vec_eq<S>(got, basis_of(sp, i)))
            rep.add("right-action", "m·id != m at M(" + m.bcat.objects[b] + "," + m.acat.objects[a] + ")");
        }
      }
      // associativity and compatibility, on all basis triples
      for (Index a2 = 0; a2 < na; ++a2) {
        const HomSpace<S>* f1s = m.acat.hom(a, a2);
        if (!f1s) continue;
        for (Index a3 = 0; a3 < na; ++a3) {
          const HomSpace<S>* f2s = m.acat.hom(a2, a3);
          if (!f2s) continue;
          for (Index f2 = 0; f2 < f2s->dim(); ++f2)
            for (Index f1 = 0; f1 < f1s->dim(); ++f1)
              for (Index i = 0; i < sp->dim(); ++i) {
                Vec<S> lhs = m.lapply(b, a2, a3, m.acat.basis_vec(a2, a3, f2),
                                      m.lapply(b, a, a2, m.acat.basis_vec(a, a2, f1), basis_of(sp, i)));
                Vec<S> rhs = m.lapply(b, a, a3, m.acat.compose_basis(a, a2, a3, f2, f1), basis_of(sp, i));
                if (!detail::vec_eq<S>(lhs, rhs))
                  rep.add("left-action", "f2·(f1·m) != (f2∘f1)·m at M(" + m.bcat.objects[b] + "," +
                                             m.acat.objects[a] + ")");
              }
        }
        // compatibility with the right action
        for (Index b2 = 0; b2 < nb; ++b2) {
          const HomSpace<S>* gs = m.bcat.hom(b2, b);
          if (!gs) continue;
          for (Index g = 0; g < gs->dim(); ++g)
            for (Index f = 0; f < f1s->dim(); ++f)
              for (Index i = 0; i < sp->dim(); ++i) {
                Vec<S> lhs = m.rapply(b2, b, a2, m.lapply(b, a, a2, m.acat.basis_vec(a, a2, f), basis_of(sp, i)),
                                      m.bcat.basis_vec(b2, b, g));
                Vec<S> rhs = m.lapply(b2, a, a2, m.acat.basis_vec(a, a2, f),
                                      m.rapply(b2, b, a, basis_of(sp, i), m.bcat.basis_vec(b2, b, g)));
                if (!detail::vec_eq<S>(lhs, rhs))
                  rep.add("compatibility", "(f·m)·g != f·(m·g) at M(" + m.bcat.objects[b] + "," +
                                               m.acat.objects[a] + ")");
              }
        }
      }
      // right associativity
      for (Index b2 = 0; b2 < nb; ++b2) {
        const HomSpace<S>* g1s = m.bcat.hom(b2, b);
        if (!g1s) continue;
        for (Index b3 = 0; b3 < nb; ++b3) {
          const HomSpace<S>* g2s = m.bcat.hom(b3, b2);
          if (!g2s) continue;
          for (Index g2 = 0; g2 < g2s->dim(); ++g2)
            for (Index g1 = 0; g1 < g1s->dim(); ++g1)
              for (Index i = 0; i < sp->dim(); ++i) {
                Vec<S> lhs = m.rapply(b3, b2, a, m.rapply(b2, b, a, basis_of(sp, i), m.bcat.basis_vec(b2, b, g1)),
                                      m.bcat.basis_vec(b3, b2, g2));
                Vec<S> rhs = m.rapply(b3, b, a, basis_of(sp, i), m.bcat.compose_basis(b3, b2, b, g1, g2));
                if (!detail::vec_eq<S>(lhs, rhs))
                  rep.add("right-action", "(m·g1)·g2 != m·(g1∘g2) at M(" + m.bcat.objects[b] + "," +
                                              m.acat.objects[a] + ")");
              }
        }
      }
      // Leibniz for both actions
      for (Index a2 = 0; a2 < na; ++a2) {
        const HomSpace<S>* fs = m.acat.hom(a, a2);
        const HomSpace<S>* sp2 = m.space(b, a2);
        if (!fs || !sp2) continue;
        for (Index f = 0; f < fs->dim(); ++f)
          for (Index i = 0; i < sp->dim(); ++i) {
            Vec<S> fm = m.lapply(b, a, a2, m.acat.basis_vec(a, a2, f), basis_of(sp, i));
            Vec<S> lhs = mul_sparse_vec(sp2->diff, fm);
            Vec<S> rhs = m.lapply(b, a, a2, mul_sparse_vec(fs->diff, m.acat.basis_vec(a, a2, f)), basis_of(sp, i));
            Vec<S> t2 = m.lapply(b, a, a2, m.acat.basis_vec(a, a2, f), mul_sparse_vec(sp->diff, basis_of(sp, i)));
            if (fs->degs[f] % 2 == 0)
              rhs += t2;
            else
              rhs -= t2;
            if (!detail::vec_eq<S>(lhs, rhs)) rep.add("leibniz", "left action breaks Leibniz");
          }
      }
      for (Index b2 = 0; b2 < nb; ++b2) {
        const HomSpace<S>* gs = m.bcat.hom(b2, b);
        const HomSpace<S>* sp2 = m.space(b2, a);
        if (!gs || !sp2) continue;
        for (Index g = 0; g < gs->dim(); ++g)
          for (Index i = 0; i < sp->dim(); ++i) {
            Vec<S> mg = m.rapply(b2, b, a, basis_of(sp, i), m.bcat.basis_vec(b2, b, g));
            Vec<S> lhs = mul_sparse_vec(sp2->diff, mg);
            Vec<S> rhs = m.rapply(b2, b, a, mul_sparse_vec(sp->diff, basis_of(sp, i)), m.bcat.basis_vec(b2, b, g));
            Vec<S> t2 = m.rapply(b2, b, a, basis_of(sp, i), mul_sparse_vec(gs->diff, m.bcat.basis_vec(b2, b, g)));
            if (sp->degs[i] % 2 == 0)
              rhs += t2;
            else
              rhs -= t2;
            if (!detail::vec_eq<S>(lhs, rhs)) rep.add("leibniz", "right action breaks Leibniz");
          }
      }
    }

  return rep;
}

template <class S>
void require_valid_bimodule(const Bimodule<S>& m, const std::string& what = "bimodule") {
  auto rep = validate_bimodule(m);
  if (!rep.ok()) throw ValidationError(what + " fails validation:\n" + rep.str());
}

// M_0: the coefficient bimodule truncated to a censoring relation. Requires
// the relation to censor the base category; the truncation is then a
// subbimodule automatically.
template <class S>
Bimodule<S> truncate_by_relation(const Bimodule<S>& m, const Relation& r) {
  const Index n = m.acat.n_objects();
  if (m.bcat.objects != m.acat.objects)
    throw ValidationError("truncate_by_relation: bimodule must be over a single category");
  if (r.n != n) throw ValidationError("truncate_by_relation: relation size mismatch");
  if (!r.transitive()) throw ValidationError("truncate_by_relation: relation is not transitive");
  for (auto& [key, h] : m.acat.homs)
    if (h.dim() > 0 && !r.has(key.first, key.second))
      throw ValidationError("truncate_by_relation: relation does not censor the category (nonzero hom " +
                            m.acat.objects[key.first] + "->" + m.acat.objects[key.second] + ")");
  for (Index a = 0; a < n; ++a) {
    const Vec<S>& id = m.acat.identity(a);
    bool nz = false;
    for (Index i = 0; i < id.size(); ++i) nz = nz || !is_zero(id(i));
    if (nz && !r.has(a, a))
      throw ValidationError("truncate_by_relation: reflexive pair missing at " + m.acat.objects[a]);
  }
  Bimodule<S> out;
  out.acat = m.acat;
  out.bcat = m.bcat;
  for (auto& [key, s] : m.spaces)
    if (r.has(key.first, key.second)) out.spaces[key] = s;
  for (auto& [key, sm] : m.lact) {
    auto [b, a, a2] = key;
    if (r.has(b, a) && r.has(b, a2)) out.lact[key] = sm;
  }
  for (auto& [key, sm] : m.ract) {
    auto [b2, b, a] = key;
    if (r.has(b, a) && r.has(b2, a)) out.ract[key] = sm;
  }
  return out;
}

}  // namespace hochkit
