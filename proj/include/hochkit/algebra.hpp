#pragma once

#include <map>
#include <string>
#include <vector>

#include "hochkit/lincat.hpp"
#include "hochkit/poset.hpp"

namespace hochkit {

// Finite-dimensional unital associative algebra given by structure constants.
template <class S>
struct Algebra {
  Field<S> field;
  std::vector<std::string> labels;
  StructureMap<S> mult;
  Vec<S> unit;

  Index dim() const { return static_cast<Index>(labels.size()); }
  Vec<S> mul(const Vec<S>& a, const Vec<S>& b) const { return mult.apply(a, b, dim()); }
  Vec<S> basis_vec(Index i) const {
    Vec<S> v = Vec<S>::Constant(dim(), S(0));
    v(i) = field.of(1);
    return v;
  }
};

template <class S>
ValidationReport validate_algebra(const Algebra<S>& a) {
  ValidationReport rep;
  if (a.unit.size() != a.dim()) {
    rep.add("unit", "unit vector has wrong length");
    return rep;
  }
  for (Index i = 0; i < a.dim(); ++i) {
    if (!detail::vec_eq<S>(a.mul(a.unit, a.basis_vec(i)), a.basis_vec(i)))
      rep.add("unit", "1·" + a.labels[i] + " != " + a.labels[i]);
    if (!detail::vec_eq<S>(a.mul(a.basis_vec(i), a.unit), a.basis_vec(i)))
      rep.add("unit", a.labels[i] + "·1 != " + a.labels[i]);
  }
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j)
      for (Index k = 0; k < a.dim(); ++k) {
        Vec<S> lhs = a.mul(a.mul(a.basis_vec(i), a.basis_vec(j)), a.basis_vec(k));
        Vec<S> rhs = a.mul(a.basis_vec(i), a.mul(a.basis_vec(j), a.basis_vec(k)));
        if (!detail::vec_eq<S>(lhs, rhs))
          rep.add("associativity",
                  "(" + a.labels[i] + "·" + a.labels[j] + ")·" + a.labels[k] + " != ...");
      }
  return rep;
}

// An algebra-valued presheaf on a poset: O(u) per element, restriction
// r_{uv}: O(v) -> O(u) for u <= v, unital homomorphisms, functorial.
template <class S>
struct RingPresheaf {
  Poset poset;
  std::vector<Algebra<S>> alg;                       // per element
  std::map<std::pair<Index, Index>, Mat<S>> restr;  // (u,v) with u<=v: O(v) -> O(u)

  const Mat<S>& restriction(Index u, Index v) const {
    auto it = restr.find({u, v});
    if (it == restr.end()) throw ValidationError("missing restriction map");
    return it->second;
  }

  Vec<S> restrict_elt(Index u, Index v, const Vec<S>& x) const {
    return mul_sparse_vec(restriction(u, v), x);
  }
};

template <class S>
ValidationReport validate_presheaf(const RingPresheaf<S>& o) {
  ValidationReport rep;
  o.poset.validate();
  const Index n = o.poset.size();
  if (static_cast<Index>(o.alg.size()) != n) {
    rep.add("presheaf", "one algebra per poset element required");
    return rep;
  }
  for (Index u = 0; u < n; ++u) {
    auto arep = validate_algebra(o.alg[u]);
    for (auto& v : arep.items) rep.add(v.code, "O(" + o.poset.names[u] + "): " + v.detail);
  }
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v) {
      if (!o.poset.leq(u, v)) {
        if (o.restr.count({u, v})) rep.add("presheaf", "restriction off the order relation");
        continue;
      }
      auto it = o.restr.find({u, v});
      if (it == o.restr.end()) {
        rep.add("presheaf", "missing restriction O(" + o.poset.names[v] + ") -> O(" + o.poset.names[u] + ")");
        continue;
      }
      const Mat<S>& r = it->second;
      if (r.rows() != o.alg[u].dim() || r.cols() != o.alg[v].dim()) {
        rep.add("presheaf", "restriction has wrong shape at " + o.poset.names[u] + "<=" + o.poset.names[v]);
        continue;
      }
      if (u == v && !is_zero_mat<S>(Mat<S>(r - identity_mat(o.alg[u].field, o.alg[u].dim()))))
        rep.add("presheaf", "r_{uu} != id at " + o.poset.names[u]);
      // unital algebra homomorphism
      if (!detail::vec_eq<S>(mul_sparse_vec(r, o.alg[v].unit), o.alg[u].unit))
        rep.add("presheaf", "restriction not unital at " + o.poset.names[u] + "<=" + o.poset.names[v]);
      for (Index i = 0; i < o.alg[v].dim(); ++i)
        for (Index j = 0; j < o.alg[v].dim(); ++j) {
          Vec<S> lhs = mul_sparse_vec(r, o.alg[v].mul(o.alg[v].basis_vec(i), o.alg[v].basis_vec(j)));
          Vec<S> rhs = o.alg[u].mul(mul_sparse_vec(r, o.alg[v].basis_vec(i)),
                                    mul_sparse_vec(r, o.alg[v].basis_vec(j)));
          if (!detail::vec_eq<S>(lhs, rhs))
            rep.add("presheaf", "restriction not multiplicative at " + o.poset.names[u] + "<=" +
                                    o.poset.names[v]);
        }
      // functoriality r_{uv} r_{vw} = r_{uw}
      for (Index w = 0; w < n; ++w)
        if (o.poset.leq(v, w) && o.restr.count({v, w}) && o.restr.count({u, w})) {
          Mat<S> comp = mul_sparse(r, o.restriction(v, w));
          if (!is_zero_mat<S>(Mat<S>(comp - o.restriction(u, w))))
            rep.add("presheaf", "restrictions not functorial over " + o.poset.names[u] + "<=" +
                                    o.poset.names[v] + "<=" + o.poset.names[w]);
        }
    }
  return rep;
}

// Constant presheaf with value A on every element, identity restrictions.
template <class S>
RingPresheaf<S> constant_presheaf(const Poset& p, const Algebra<S>& a) {
  RingPresheaf<S> o;
  o.poset = p;
  o.alg.assign(p.size(), a);
  for (Index u = 0; u < p.size(); ++u)
    for (Index v = 0; v < p.size(); ++v)
      if (p.leq(u, v)) o.restr[{u, v}] = identity_mat(a.field, a.dim());
  return o;
}

template <class S>
Algebra<S> ground_field_algebra(const Field<S>& k) {
  Algebra<S> a;
  a.field = k;
  a.labels = {"1"};
  a.mult.add(0, 0, 0, k.of(1));
  a.unit = Vec<S>(1);
  a.unit(0) = k.of(1);
  return a;
}

// k[e]/(e^2)
template <class S>
Algebra<S> dual_numbers_algebra(const Field<S>& k) {
  Algebra<S> a;
  a.field = k;
  a.labels = {"1", "e"};
  a.mult.add(0, 0, 0, k.of(1));
  a.mult.add(0, 1, 1, k.of(1));
  a.mult.add(1, 0, 1, k.of(1));
  a.unit = Vec<S>::Constant(2, S(0));
  a.unit(0) = k.of(1);
  return a;
}

// 2x2 upper-triangular matrices, basis {e11, e22, e12}
template <class S>
Algebra<S> upper_triangular_algebra(const Field<S>& k) {
  Algebra<S> a;
  a.field = k;
  a.labels = {"e11", "e12", "e22"};
  auto idx = [](const std::string& l) { return l == "e11" ? 0 : l == "e12" ? 1 : 2; };
  // e11·e11=e11, e22·e22=e22, e11·e12=e12, e12·e22=e12
  a.mult.add(idx("e11"), idx("e11"), idx("e11"), k.of(1));
  a.mult.add(idx("e22"), idx("e22"), idx("e22"), k.of(1));
  a.mult.add(idx("e11"), idx("e12"), idx("e12"), k.of(1));
  a.mult.add(idx("e12"), idx("e22"), idx("e12"), k.of(1));
  a.unit = Vec<S>::Constant(3, S(0));
  a.unit(idx("e11")) = k.of(1);
  a.unit(idx("e22")) = k.of(1);
  return a;
}

}  // namespace hochkit
