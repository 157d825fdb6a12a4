#include <doctest.h>

#include "hochkit/compare.hpp"
#include "hochkit/corpus.hpp"
#include "hochkit/modules.hpp"

using namespace hochkit;

namespace {
Field<Rational> K;
}

TEST_CASE("validate_category: ground field passes, planted defect is named") {
  auto c = corpus::ground_field_cat(K);
  CHECK(validate_category(c).ok());

  // break associativity in the upper-triangular algebra: e11·e12 = 2·e12
  auto a = upper_triangular_algebra(K);
  a.mult.terms[{0, 1}] = {{1, K.of(2)}};
  auto cat = corpus::upper_triangular_cat(K);
  cat.comp[{0, 0, 0}] = a.mult;
  auto rep = validate_category(cat);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (auto& v : rep.items)
    if (v.code == "associativity" || v.code == "unit") found = true;
  CHECK(found);
}

TEST_CASE("validate_category: incidence category of the pseudocircle basis passes") {
  CHECK(validate_category(corpus::pseudocircle_incidence(K)).ok());
}

TEST_CASE("from_algebra examples") {
  auto k1 = corpus::ground_field_cat(K);
  CHECK(k1.total_dim() == 1);
  auto ke = corpus::dual_numbers_cat(K);
  CHECK(ke.total_dim() == 2);
  // e·e = 0
  CHECK(is_zero_mat<Rational>(Mat<Rational>(ke.compose_basis(0, 0, 0, 1, 1))));
  auto ut = corpus::upper_triangular_cat(K);
  CHECK(ut.total_dim() == 3);
  CHECK(validate_category(ut).ok());
  // non-associative input is rejected
  Algebra<Rational> bad = upper_triangular_algebra(K);
  bad.mult.add(1, 1, 0, K.of(1));  // e12·e12 = e11 breaks associativity
  CHECK_THROWS_AS(from_algebra(bad), ValidationError);
}

TEST_CASE("incidence_category examples") {
  auto a2 = corpus::a2_incidence(K);
  CHECK(a2.total_dim() == 3);
  CHECK(validate_category(a2).ok());
  auto ps = corpus::pseudocircle_incidence(K);
  CHECK(ps.total_dim() == 8);

  // 2-chain with O(v)=k[e], O(u)=k, augmentation restriction
  auto c = incidence_category(corpus::keps_two_chain(K));
  CHECK(validate_category(c).ok());
  Index u = c.obj_index("u"), v = c.obj_index("v");
  CHECK(c.hom_dim(u, v) == 1);
  CHECK(c.hom_dim(v, v) == 2);
  CHECK(c.hom_dim(u, u) == 1);
  CHECK(c.hom_dim(v, u) == 0);
  // composing across the restriction kills e: hom(u,v) ∘ e = 0
  Vec<Rational> eps = c.basis_vec(v, v, 1);
  Vec<Rational> f = c.basis_vec(u, v, 0);
  CHECK(is_zero_mat<Rational>(Mat<Rational>(c.compose(u, v, v, eps, f))));

  // non-functorial restrictions are rejected
  auto broken = corpus::keps_two_chain(K);
  broken.restr[{0, 1}](0, 0) = K.of(2);  // not unital
  CHECK_THROWS_AS(incidence_category(broken), ValidationError);
}

TEST_CASE("linearize: poset category equals constant incidence category") {
  auto p = corpus::chain_poset(2);
  auto lin = linearize(K, poset_as_category(p));
  CHECK(validate_category(lin).ok());
  auto inc = corpus::a2_incidence(K);
  // identical structure constants (same object names, 1-dim homs)
  CHECK(lin.objects == inc.objects);
  for (auto& [key, sm] : inc.comp) {
    auto it = lin.comp.find(key);
    REQUIRE(it != lin.comp.end());
    CHECK(it->second.terms.size() == sm.terms.size());
  }
  // two parallel arrows give a 2-dim hom
  FinOrdCategory two;
  two.objects = {"A", "B"};
  two.morphisms[{0, 0}] = {"id"};
  two.morphisms[{1, 1}] = {"id"};
  two.morphisms[{0, 1}] = {"f", "g"};
  two.comp[{0, 0, 0, 0, 0}] = 0;
  two.comp[{1, 1, 1, 0, 0}] = 0;
  two.comp[{0, 0, 1, 0, 0}] = 0;
  two.comp[{0, 0, 1, 1, 0}] = 1;
  two.comp[{0, 1, 1, 0, 0}] = 0;
  two.comp[{0, 1, 1, 0, 1}] = 1;
  two.ids = {0, 0};
  auto lin2 = linearize(K, two);
  CHECK(validate_category(lin2).ok());
  CHECK(lin2.hom_dim(0, 1) == 2);
}

TEST_CASE("category_algebra: A2 gives the upper-triangular algebra") {
  auto a2 = corpus::a2_incidence(K);
  auto alg = category_algebra(a2);
  CHECK(alg.dim() == 3);
  CHECK(validate_algebra(alg).ok());
  // isomorphic to 2x2 upper-triangular: same HH in low degrees
  auto c1 = from_algebra(alg, "o");
  auto c2 = corpus::upper_triangular_cat(K);
  auto r = compare_dims(c1, c2, HochschildOptions{2, true, false, 200000});
  CHECK(r.equal);
  // one-object category: the algebra is the endomorphism algebra
  auto ke = corpus::dual_numbers_cat(K);
  CHECK(category_algebra(ke).dim() == 2);
  // graded input is rejected
  CHECK_THROWS_AS(category_algebra(corpus::small_dg_cat(K)), ValidationError);
}

TEST_CASE("incidence + category_algebra: dimension and axioms") {
  auto ps = corpus::pseudocircle_incidence(K);
  auto alg = category_algebra(ps);
  CHECK(alg.dim() == 8);
  CHECK(validate_algebra(alg).ok());
}

TEST_CASE("opposite: involution on the nose, reversed arrows") {
  for (auto& c : {corpus::a2_incidence(K), corpus::pseudocircle_incidence(K),
                  corpus::upper_triangular_cat(K), corpus::small_dg_cat(K)}) {
    auto op = opposite(c);
    CHECK(validate_category(op).ok());
    auto opop = opposite(op);
    CHECK(opop.objects == c.objects);
    for (auto& [key, sm] : c.comp) {
      auto it = opop.comp.find(key);
      REQUIRE(it != opop.comp.end());
      for (auto& [gf, terms] : sm.terms) {
        auto jt = it->second.terms.find(gf);
        REQUIRE(jt != it->second.terms.end());
        REQUIRE(jt->second.size() == terms.size());
        for (size_t i = 0; i < terms.size(); ++i) {
          CHECK(jt->second[i].first == terms[i].first);
          CHECK(jt->second[i].second == terms[i].second);
        }
      }
    }
  }
  auto a2 = corpus::a2_incidence(K);
  auto op = opposite(a2);
  CHECK(op.hom_dim(a2.obj_index("p1"), a2.obj_index("p0")) == 1);
  CHECK(op.hom_dim(a2.obj_index("p0"), a2.obj_index("p1")) == 0);
  // commutative one-object algebra: opposite is identical
  auto ke = corpus::dual_numbers_cat(K);
  auto kop = opposite(ke);
  for (auto& [key, sm] : ke.comp)
    for (auto& [gf, terms] : sm.terms) {
      auto jt = kop.comp.at(key).terms.find(gf);
      REQUIRE(jt != kop.comp.at(key).terms.end());
      CHECK(jt->second == terms);
    }
}

TEST_CASE("full_subcategory: identity, nesting, single object") {
  auto a3 = corpus::a3_incidence(K);
  auto all = full_subcategory(a3, a3.objects);
  CHECK(all.total_dim() == a3.total_dim());
  auto sub = full_subcategory(a3, {"p0", "p1"});
  CHECK(validate_category(sub).ok());
  CHECK(sub.total_dim() == 3);
  auto single = full_subcategory(a3, {"p1"});
  CHECK(single.total_dim() == 1);
  CHECK_THROWS_AS(full_subcategory(a3, {"nope"}), ValidationError);
  // restricting an incidence category = incidence category of the subposet
  auto a2 = corpus::a2_incidence(K);
  CHECK(sub.objects == a2.objects);
  CHECK(sub.hom_dim(0, 1) == a2.hom_dim(0, 1));
}

TEST_CASE("cohomology_category examples") {
  // ordinary category: unchanged
  auto a2 = corpus::a2_incidence(K);
  auto h = cohomology_category(a2);
  CHECK(h.total_dim() == a2.total_dim());
  CHECK(validate_category(h).ok());

  // collapsing hom: d(x) = y kills both
  auto dg = corpus::small_dg_cat(K);
  auto hdg = cohomology_category(dg);
  CHECK(validate_category(hdg).ok());
  CHECK(hdg.total_dim() == 1);

  // contractible object becomes a zero object
  auto cz = corpus::contractible_object_cat(K);
  auto hz = cohomology_category(cz);
  CHECK(validate_category(hz).ok());
  CHECK(hz.hom_dim(hz.obj_index("z"), hz.obj_index("z")) == 0);
  CHECK(hz.hom_dim(hz.obj_index("a"), hz.obj_index("a")) == 1);
}

TEST_CASE("diagonal bimodule validates for every corpus category") {
  std::mt19937_64 rng(3);
  for (auto& c : {corpus::ground_field_cat(K), corpus::dual_numbers_cat(K),
                  corpus::a2_incidence(K), corpus::pseudocircle_incidence(K),
                  corpus::small_dg_cat(K), corpus::contractible_object_cat(K),
                  corpus::random_category(K, rng)}) {
    CHECK(validate_bimodule(diagonal_bimodule(c)).ok());
  }
}

TEST_CASE("truncate_by_relation: trivial, order, and rejected relations") {
  auto a2 = corpus::a2_incidence(K);
  auto m = diagonal_bimodule(a2);
  auto full = truncate_by_relation(m, Relation::full(2));
  CHECK(full.spaces.size() == m.spaces.size());
  auto order = truncate_by_relation(m, *a2.censoring);
  CHECK(order.spaces.size() == m.spaces.size());  // already supported on the order
  // reflexive-only relation is not censoring: hom(p0,p1) != 0 off it
  Relation refl(2);
  refl.set(0, 0);
  refl.set(1, 1);
  CHECK_THROWS_AS(truncate_by_relation(m, refl), ValidationError);
  // non-transitive relation rejected
  auto a3 = corpus::a3_incidence(K);
  Relation bad(3);
  for (Index i = 0; i < 3; ++i) bad.set(i, i);
  bad.set(0, 1);
  bad.set(1, 2);
  CHECK_THROWS_AS(truncate_by_relation(diagonal_bimodule(a3), bad), ValidationError);
}

TEST_CASE("module_hom: Yoneda and endomorphisms") {
  auto a2 = corpus::a2_incidence(K);
  for (Index a0 = 0; a0 < 2; ++a0) {
    auto rep = representable_module(a2, a0);
    for (Index y0 = 0; y0 < 2; ++y0) {
      auto y = representable_module(a2, y0);
      auto homs = module_hom(rep, y);
      // Yoneda: Hom(P_{a0}, y) = y(a0) = hom(a0, y0)
      CHECK(homs.cx.dim(0) == a2.hom_dim(a0, y0));
    }
  }
  // hom(x,x) contains the identity, a 0-cocycle
  auto x = representable_module(a2, 1);
  auto homs = module_hom(x, x);
  REQUIRE(homs.cx.dim(0) >= 1);
  CHECK(cohomology(homs.cx, 0).betti == homs.cx.dim(0));  // zero differential here
}

TEST_CASE("module_hom differential squares to zero for graded modules") {
  // graded module over the ground field: a two-step complex
  auto pt = point_category<Rational>(K);
  HomSpace<Rational> sp = make_hom<Rational>({"m0", "m1"}, {0, 1});
  sp.diff(1, 0) = K.of(1);
  std::map<Index, HomSpace<Rational>> spaces;
  spaces[0] = sp;
  std::map<std::pair<Index, Index>, StructureMap<Rational>> act;
  StructureMap<Rational> sm;
  sm.add(0, 0, 0, K.of(1));
  sm.add(1, 0, 1, K.of(1));
  act[{0, 0}] = sm;
  auto x = make_right_module<Rational>(pt, spaces, act);
  CHECK(validate_bimodule(x).ok());
  auto homs = module_hom(x, x);
  homs.cx.validate();
  CHECK(homs.cx.dim(0) == 2);
  // x is a contractible complex, so its identity is null-homotopic
  CHECK(cohomology(homs.cx, 0).betti == 0);

  // with the differential removed the identity class survives
  sp.diff(1, 0) = K.of(0);
  std::map<Index, HomSpace<Rational>> spaces2;
  spaces2[0] = sp;
  auto x2 = make_right_module<Rational>(pt, spaces2, act);
  auto homs2 = module_hom(x2, x2);
  homs2.cx.validate();
  CHECK(cohomology(homs2.cx, 0).betti == 2);
}

TEST_CASE("bar resolution: exactness and growth") {
  // representable over A2: exact in all computed degrees
  auto a2 = corpus::a2_incidence(K);
  auto x = representable_module(a2, 1);
  auto bar = bar_resolution(x, 3);
  for (Index b = 0; b < a2.n_objects(); ++b) {
    // complex: ... -> B_1(b) -> B_0(b) -> x(b) -> 0 exact everywhere
    Mat<Rational> d1 = bar.diffs[0][b];
    Mat<Rational> aug = bar.aug[b];
    CHECK(rank(aug) == x.dim(b, 0));
    CHECK(is_zero_mat<Rational>(mul_sparse(aug, d1)));
    for (int p = 1; p < 3; ++p) {
      Mat<Rational> dn = bar.diffs[p][b];
      Mat<Rational> dn1 = bar.diffs[p - 1][b];
      CHECK(is_zero_mat<Rational>(mul_sparse(dn1, dn)));
      // exactness: im(d_p) = ker(d_{p-1})
      auto kk = rank_kernel(dn1);
      CHECK(rank(dn) == kk.kernel.cols());
    }
    // exactness at 0 against the augmentation
    auto k0 = rank_kernel(aug);
    CHECK(rank(d1) == k0.kernel.cols());
  }

  // simple module over k[e]: dims 1,2,4,... and exact away from 0
  auto ke = corpus::dual_numbers_cat(K);
  std::map<Index, HomSpace<Rational>> sp;
  sp[0] = make_hom0<Rational>({"s"});
  std::map<std::pair<Index, Index>, StructureMap<Rational>> act;
  StructureMap<Rational> sm;
  sm.add(0, 0, 0, K.of(1));  // 1 acts as id, e acts by 0
  act[{0, 0}] = sm;
  auto simple = make_right_module<Rational>(ke, sp, act);
  CHECK(validate_bimodule(simple).ok());
  auto bar2 = bar_resolution(simple, 4);
  CHECK(bar2.terms[0].dim(0, 0) == 2);
  CHECK(bar2.terms[1].dim(0, 0) == 4);
  CHECK(bar2.terms[2].dim(0, 0) == 8);

  // dimension cap reports a resource error
  CHECK_THROWS_AS(bar_resolution(simple, 12, 100), ResourceCapError);
}

TEST_CASE("ext_window: projectives, the simple over k[e], window stability") {
  auto a2 = corpus::a2_incidence(K);
  for (Index a0 = 0; a0 < 2; ++a0)
    for (Index y0 = 0; y0 < 2; ++y0) {
      auto ext = ext_window(representable_module(a2, a0), representable_module(a2, y0), 2);
      CHECK(ext.dims[0] == a2.hom_dim(a0, y0));
      CHECK(ext.dims[1] == 0);
      CHECK(ext.dims[2] == 0);
    }

  auto ke = corpus::dual_numbers_cat(K);
  std::map<Index, HomSpace<Rational>> sp;
  sp[0] = make_hom0<Rational>({"s"});
  std::map<std::pair<Index, Index>, StructureMap<Rational>> act;
  StructureMap<Rational> sm;
  sm.add(0, 0, 0, K.of(1));
  act[{0, 0}] = sm;
  auto simple = make_right_module<Rational>(ke, sp, act);
  auto ext = ext_window(simple, simple, 3);
  CHECK(ext.dims == std::vector<Index>{1, 1, 1, 1});

  // window stability: resolving further does not change the low window
  auto ext2 = ext_window(simple, simple, 5);
  for (int n = 0; n <= 3; ++n) CHECK(ext.dims[n] == ext2.dims[n]);
}
