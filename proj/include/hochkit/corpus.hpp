#pragma once

#include <random>
#include <string>
#include <vector>

#include "hochkit/algebra.hpp"
#include "hochkit/constructors.hpp"
#include "hochkit/lincat.hpp"
#include "hochkit/poset.hpp"

namespace hochkit::corpus {

template <class S>
FinLinCat<S> ground_field_cat(const Field<S>& k) {
  return from_algebra(ground_field_algebra(k), "*");
}

template <class S>
FinLinCat<S> dual_numbers_cat(const Field<S>& k) {
  return from_algebra(dual_numbers_algebra(k), "*");
}

template <class S>
FinLinCat<S> upper_triangular_cat(const Field<S>& k) {
  return from_algebra(upper_triangular_algebra(k), "*");
}

inline Poset chain_poset(int len) {
  std::vector<std::string> names;
  for (int i = 0; i < len; ++i) names.push_back("p" + std::to_string(i));
  Poset p(names);
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = a; b < p.size(); ++b) p.set(a, b);
  return p;
}

inline Poset antichain_poset(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  return Poset(names);
}

// Minimal basis poset of the pseudocircle: two open points under two closed
// points; the order complex is a 4-cycle.
inline Poset pseudocircle_poset() {
  Poset p({"Ua", "Ub", "Uc", "Ud"});
  p.set(p.index("Ua"), p.index("Uc"));
  p.set(p.index("Ua"), p.index("Ud"));
  p.set(p.index("Ub"), p.index("Uc"));
  p.set(p.index("Ub"), p.index("Ud"));
  return p;
}

template <class S>
FinLinCat<S> a2_incidence(const Field<S>& k) {
  return incidence_category(constant_presheaf(chain_poset(2), ground_field_algebra(k)));
}

template <class S>
FinLinCat<S> a3_incidence(const Field<S>& k) {
  return incidence_category(constant_presheaf(chain_poset(3), ground_field_algebra(k)));
}

template <class S>
FinLinCat<S> pseudocircle_incidence(const Field<S>& k) {
  return incidence_category(constant_presheaf(pseudocircle_poset(), ground_field_algebra(k)));
}

// Two-chain u < v with O(v) = k[e], O(u) = k and the augmentation as
// restriction; the standard non-constant presheaf example.
template <class S>
RingPresheaf<S> keps_two_chain(const Field<S>& k) {
  Poset p({"u", "v"});
  p.set(p.index("u"), p.index("v"));
  RingPresheaf<S> o;
  o.poset = p;
  o.alg = {ground_field_algebra(k), dual_numbers_algebra(k)};
  o.restr[{0, 0}] = identity_mat(k, 1);
  o.restr[{1, 1}] = identity_mat(k, 2);
  Mat<S> aug = zero_mat<S>(1, 2);
  aug(0, 0) = k.of(1);
  o.restr[{0, 1}] = aug;
  return o;
}

// One-object DG category: basis {1, x, y}, |x| = -1, |y| = 0, dx = y, all
// products of x and y vanish. Quasi-isomorphic to the ground field.
template <class S>
FinLinCat<S> small_dg_cat(const Field<S>& k) {
  FinLinCat<S> c;
  c.field = k;
  c.objects = {"*"};
  HomSpace<S> h = make_hom<S>({"1", "x", "y"}, {0, -1, 0});
  h.diff(2, 1) = k.of(1);  // d(x) = y
  c.homs[{0, 0}] = h;
  StructureMap<S> sm;
  sm.add(0, 0, 0, k.of(1));
  sm.add(0, 1, 1, k.of(1));
  sm.add(1, 0, 1, k.of(1));
  sm.add(0, 2, 2, k.of(1));
  sm.add(2, 0, 2, k.of(1));
  c.comp[{0, 0, 0}] = sm;
  Vec<S> id = Vec<S>::Constant(3, S(0));
  id(0) = k.of(1);
  c.identities = {id};
  return c;
}

// Ground-field object plus a contractible object: hom(z,z) = {1, s} with
// d(s) = 1, no homs between the two objects.
template <class S>
FinLinCat<S> contractible_object_cat(const Field<S>& k) {
  FinLinCat<S> c;
  c.field = k;
  c.objects = {"a", "z"};
  c.homs[{0, 0}] = make_hom0<S>({"1"});
  HomSpace<S> h = make_hom<S>({"1", "s"}, {0, -1});
  h.diff(0, 1) = k.of(1);  // d(s) = 1
  c.homs[{1, 1}] = h;
  StructureMap<S> sa;
  sa.add(0, 0, 0, k.of(1));
  c.comp[{0, 0, 0}] = sa;
  StructureMap<S> sz;
  sz.add(0, 0, 0, k.of(1));
  sz.add(0, 1, 1, k.of(1));
  sz.add(1, 0, 1, k.of(1));
  c.comp[{1, 1, 1}] = sz;
  Vec<S> ida(1);
  ida(0) = k.of(1);
  Vec<S> idz = Vec<S>::Constant(2, S(0));
  idz(0) = k.of(1);
  c.identities = {ida, idz};
  return c;
}

// Full subcategory {A, A^2} of free right modules over an algebra: homs are
// matrices over A, composition is matrix multiplication.
template <class S>
FinLinCat<S> free_module_pair_cat(const Algebra<S>& a) {
  const Field<S>& k = a.field;
  FinLinCat<S> c;
  c.field = k;
  c.objects = {"r1", "r2"};
  auto rank_of = [](Index obj) { return obj == 0 ? 1 : 2; };
  auto label = [&](Index r, Index col, Index ab) {
    return "m" + std::to_string(r + 1) + std::to_string(col + 1) + ":" + a.labels[ab];
  };
  // basis index of (row r, col c, alg b) in hom(i -> j): ((c * rows_j) + r) * dimA + b
  auto bidx = [&](Index rows_j, Index r, Index col, Index ab) {
    return (col * rows_j + r) * a.dim() + ab;
  };
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      std::vector<std::string> ls;
      // enumerate in bidx order: col outer, row inner, algebra last
      for (Index col = 0; col < rank_of(i); ++col)
        for (Index r = 0; r < rank_of(j); ++r)
          for (Index ab = 0; ab < a.dim(); ++ab) ls.push_back(label(r, col, ab));
      c.homs[{i, j}] = make_hom0<S>(ls);
    }
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index l = 0; l < 2; ++l) {
        StructureMap<S> sm;
        // g: (t,u,b) in hom(j->l), f: (v,w,aa) in hom(i->j): nonzero iff u == v
        for (Index u = 0; u < rank_of(j); ++u)
          for (Index t = 0; t < rank_of(l); ++t)
            for (Index b = 0; b < a.dim(); ++b)
              for (Index w = 0; w < rank_of(i); ++w)
                for (Index aa = 0; aa < a.dim(); ++aa) {
                  Vec<S> prod = a.mul(a.basis_vec(b), a.basis_vec(aa));
                  for (Index h = 0; h < prod.size(); ++h)
                    if (!is_zero(prod(h)))
                      sm.add(bidx(rank_of(l), t, u, b), bidx(rank_of(j), u, w, aa),
                             bidx(rank_of(l), t, w, h), prod(h));
                }
        c.comp[{i, j, l}] = std::move(sm);
      }
  c.identities.resize(2);
  for (Index i = 0; i < 2; ++i) {
    Vec<S> id = Vec<S>::Constant(c.hom_dim(i, i), S(0));
    for (Index d0 = 0; d0 < rank_of(i); ++d0)
      for (Index ab = 0; ab < a.dim(); ++ab)
        if (!is_zero(a.unit(ab))) id(bidx(rank_of(i), d0, d0, ab)) = a.unit(ab);
    c.identities[i] = id;
  }
  return c;
}

// --- randomized families (axioms hold by construction; coefficients vary) ---

inline Poset random_poset(std::mt19937_64& rng, int max_elems) {
  const int n = 1 + static_cast<int>(rng() % max_elems);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("r" + std::to_string(i));
  Poset p(names);
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = a + 1; b < p.size(); ++b)
      if (rng() % 2 == 0) p.set(a, b);
  p.close_transitively();
  return p;
}

// Incidence category of a random poset with constant ground-field presheaf,
// retried until the total dimension stays small.
template <class S>
FinLinCat<S> random_incidence(const Field<S>& k, std::mt19937_64& rng, Index max_total_dim = 6) {
  for (;;) {
    Poset p = random_poset(rng, 4);
    auto c = incidence_category(constant_presheaf(p, ground_field_algebra(k)));
    if (c.total_dim() <= max_total_dim) return c;
  }
}

// Random presheaf on the two-chain with values in {k, k[e]} and a random
// admissible restriction.
template <class S>
FinLinCat<S> random_presheaf_incidence(const Field<S>& k, std::mt19937_64& rng) {
  Poset p({"u", "v"});
  p.set(p.index("u"), p.index("v"));
  RingPresheaf<S> o;
  o.poset = p;
  const bool low_big = rng() % 2 == 0;
  const bool high_big = rng() % 2 == 0;
  o.alg = {low_big ? dual_numbers_algebra(k) : ground_field_algebra(k),
           high_big ? dual_numbers_algebra(k) : ground_field_algebra(k)};
  o.restr[{0, 0}] = identity_mat(k, o.alg[0].dim());
  o.restr[{1, 1}] = identity_mat(k, o.alg[1].dim());
  Mat<S> r = zero_mat<S>(o.alg[0].dim(), o.alg[1].dim());
  r(0, 0) = k.of(1);
  if (low_big && high_big) {
    // e -> a·e is an algebra map for any a
    r(1, 1) = k.of(static_cast<long long>(rng() % 5) - 2);
  }
  o.restr[{0, 1}] = r;
  return incidence_category(o);
}

// Random one-object DG categories from parametrized shapes whose axioms hold
// identically in the parameters.
template <class S>
FinLinCat<S> random_dg(const Field<S>& k, std::mt19937_64& rng) {
  const int shape = static_cast<int>(rng() % 3);
  FinLinCat<S> c;
  c.field = k;
  c.objects = {"*"};
  if (shape == 0) {
    // {1, x(-1), y(0)}: dx = a·y, xy = yx = xx = yy = 0
    HomSpace<S> h = make_hom<S>({"1", "x", "y"}, {0, -1, 0});
    h.diff(2, 1) = k.of(static_cast<long long>(rng() % 5) - 2);
    c.homs[{0, 0}] = h;
    StructureMap<S> sm;
    sm.add(0, 0, 0, k.of(1));
    sm.add(0, 1, 1, k.of(1));
    sm.add(1, 0, 1, k.of(1));
    sm.add(0, 2, 2, k.of(1));
    sm.add(2, 0, 2, k.of(1));
    c.comp[{0, 0, 0}] = sm;
    Vec<S> id = Vec<S>::Constant(3, S(0));
    id(0) = k.of(1);
    c.identities = {id};
  } else if (shape == 1) {
    // exterior-style {1, x(-1)}: dx = 0, x² = 0
    HomSpace<S> h = make_hom<S>({"1", "x"}, {0, -1});
    c.homs[{0, 0}] = h;
    StructureMap<S> sm;
    sm.add(0, 0, 0, k.of(1));
    sm.add(0, 1, 1, k.of(1));
    sm.add(1, 0, 1, k.of(1));
    c.comp[{0, 0, 0}] = sm;
    Vec<S> id = Vec<S>::Constant(2, S(0));
    id(0) = k.of(1);
    c.identities = {id};
  } else {
    // {1, x(-1), y(-2)}: x² = b·y, xy = yx = y² = 0, zero differential
    HomSpace<S> h = make_hom<S>({"1", "x", "y"}, {0, -1, -2});
    c.homs[{0, 0}] = h;
    StructureMap<S> sm;
    sm.add(0, 0, 0, k.of(1));
    sm.add(0, 1, 1, k.of(1));
    sm.add(1, 0, 1, k.of(1));
    sm.add(0, 2, 2, k.of(1));
    sm.add(2, 0, 2, k.of(1));
    sm.add(1, 1, 2, k.of(static_cast<long long>(rng() % 5) - 2));
    c.comp[{0, 0, 0}] = sm;
    Vec<S> id = Vec<S>::Constant(3, S(0));
    id(0) = k.of(1);
    c.identities = {id};
  }
  return c;
}

// Mixed sampler used by the randomized acceptance sweeps.
template <class S>
FinLinCat<S> random_category(const Field<S>& k, std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0:
      return random_incidence(k, rng);
    case 1:
      return random_presheaf_incidence(k, rng);
    case 2:
      return random_dg(k, rng);
    default:
      return opposite(random_dg(k, rng));
  }
}

}  // namespace hochkit::corpus
