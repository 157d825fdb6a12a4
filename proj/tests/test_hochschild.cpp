#include <doctest.h>

#include <random>

#include "hochkit/corpus.hpp"
#include "hochkit/hochschild.hpp"

using namespace hochkit;

namespace {

Field<Rational> K;

// Independent oracle for HH(k[e]/(e^2)): the 2-periodic bimodule resolution
// ... -> A⊗A -> A⊗A -> A⊗A -> A collapses under Hom_{A-A}(-, A) to
// A --0--> A --2e--> A --0--> A --2e--> ..., so the Betti numbers are
// dim ker − rank(incoming) on that explicit four-term window. No code below
// is shared with the cochain engine.
std::vector<Index> dual_numbers_periodic_oracle(int n_max) {
  Mat<Rational> zero = zero_mat<Rational>(2, 2);
  Mat<Rational> two_eps = zero_mat<Rational>(2, 2);
  two_eps(1, 0) = 2;  // 2e·1 = 2e, 2e·e = 0
  std::vector<Index> out;
  for (int n = 0; n <= n_max; ++n) {
    const Mat<Rational>& d_out = (n % 2 == 0) ? zero : two_eps;
    std::vector<Index> dims;
    Index ker = rank_kernel(d_out).kernel.cols();
    Index im_in = n == 0 ? 0 : rank((n % 2 == 1) ? zero : two_eps);
    out.push_back(ker - im_in);
  }
  return out;
}

std::vector<Index> dims_of(const std::vector<DegreeDim>& t) {
  std::vector<Index> d;
  for (auto& x : t) {
    REQUIRE(x.exact);
    d.push_back(x.dim);
  }
  return d;
}

HochschildOptions win(int n_max) {
  HochschildOptions o;
  o.n_max = n_max;
  return o;
}

}  // namespace

TEST_CASE("oracle: dual numbers periodic resolution gives (2,1,1,1)") {
  auto dims = dual_numbers_periodic_oracle(3);
  CHECK(dims == std::vector<Index>{2, 1, 1, 1});
}

TEST_CASE("ground field: complex dims 1,1,1 and cohomology (1,0,0)") {
  auto c = corpus::ground_field_cat(K);
  require_valid(c);
  auto hh = hochschild_cohomology(c, win(2));
  hh.complex.cx.validate();
  for (int n = 0; n <= 2; ++n) CHECK(hh.complex.dim(n) == 1);
  CHECK(dims_of(hh.table) == std::vector<Index>{1, 0, 0});
}

TEST_CASE("dual numbers: HH = (2,1,1,1) matching the periodic oracle") {
  auto c = corpus::dual_numbers_cat(K);
  require_valid(c);
  auto hh = hochschild_cohomology(c, win(3));
  hh.complex.cx.validate();
  CHECK(dims_of(hh.table) == dual_numbers_periodic_oracle(3));
}

TEST_CASE("A2 incidence: unnormalized complex dims (2,3,4) and HH = (1,0,0)") {
  auto c = corpus::a2_incidence(K);
  require_valid(c);
  auto hh = hochschild_cohomology(c, win(2));
  hh.complex.cx.validate();
  CHECK(hh.complex.dim(0) == 2);
  CHECK(hh.complex.dim(1) == 3);
  CHECK(hh.complex.dim(2) == 4);
  CHECK(dims_of(hh.table) == std::vector<Index>{1, 0, 0});

  // brute chain count oracle for the dims: weakly increasing tuples
  // of {U,V} with hom dims all 1 and diagonal coefficients
  auto count = [&](int p) {
    int cnt = 0;
    for (int mask = 0; mask < (1 << (p + 1)); ++mask) {
      bool incr = true;
      for (int i = 0; i + 1 <= p; ++i)
        if (((mask >> i) & 1) > ((mask >> (i + 1)) & 1)) incr = false;
      if (incr) ++cnt;
    }
    return cnt;
  };
  CHECK(hh.complex.dim(1) == count(1));
  CHECK(hh.complex.dim(2) == count(2));
}

TEST_CASE("pseudocircle incidence: total dim 8, HH = (1,1,0)") {
  auto c = corpus::pseudocircle_incidence(K);
  require_valid(c);
  CHECK(c.total_dim() == 8);
  auto hh = hochschild_cohomology(c, win(2));
  hh.complex.cx.validate();
  CHECK(dims_of(hh.table) == std::vector<Index>{1, 1, 0});
}

TEST_CASE("DG: one-object category quasi-isomorphic to k has HH = (1,0,0)") {
  auto c = corpus::small_dg_cat(K);
  require_valid(c);
  auto hh = hochschild_cohomology(c, win(2));
  hh.complex.cx.validate();
  CHECK(dims_of(hh.table) == std::vector<Index>{1, 0, 0});
}

TEST_CASE("DG: adjoining a contractible object does not change HH") {
  auto c = corpus::contractible_object_cat(K);
  require_valid(c);
  auto hh = hochschild_cohomology(c, win(2));
  hh.complex.cx.validate();
  CHECK(dims_of(hh.table) == std::vector<Index>{1, 0, 0});
}

TEST_CASE("normalized complex: smaller, same cohomology") {
  auto c = corpus::a2_incidence(K);
  auto o = win(2);
  o.normalized = true;
  auto hh = hochschild_cohomology(c, o);
  hh.complex.cx.validate();
  CHECK(hh.complex.dim(1) == 1);
  CHECK(hh.complex.dim(2) == 0);
  CHECK(dims_of(hh.table) == std::vector<Index>{1, 0, 0});

  auto d = corpus::dual_numbers_cat(K);
  auto hhn = hochschild_cohomology(d, [] {
    auto o = win(3);
    o.normalized = true;
    return o;
  }());
  hhn.complex.cx.validate();
  CHECK(dims_of(hhn.table) == std::vector<Index>{2, 1, 1, 1});
}

TEST_CASE("normalized complex rejects identities that are not basis-aligned") {
  auto c = corpus::upper_triangular_cat(K);
  auto o = win(2);
  o.normalized = true;
  CHECK_THROWS_AS(hochschild_complex(c, diagonal_bimodule(c), o), ValidationError);
}

TEST_CASE("opposite invariance of HH dims on corpus") {
  std::vector<FinLinCat<Rational>> cats = {
      corpus::ground_field_cat(K), corpus::dual_numbers_cat(K), corpus::upper_triangular_cat(K),
      corpus::a2_incidence(K), corpus::pseudocircle_incidence(K), corpus::small_dg_cat(K)};
  for (auto& c : cats) {
    auto op = opposite(c);
    require_valid(op);
    auto a = hochschild_cohomology(c, win(2));
    auto b = hochschild_cohomology(op, win(2));
    CHECK(dims_of(a.table) == dims_of(b.table));
  }
}

TEST_CASE("d∘d = 0 on randomized categories") {
  std::mt19937_64 rng(20240817);
  for (int t = 0; t < 20; ++t) {
    auto c = corpus::random_category(K, rng);
    require_valid(c);
    auto H = hochschild_complex(c, diagonal_bimodule(c), win(3));
    H.cx.validate();  // includes d∘d = 0
  }
}

TEST_CASE("censoring-aware enumeration is strictly lazier, same complex") {
  auto c = corpus::pseudocircle_incidence(K);
  auto aware = hochschild_complex(c, diagonal_bimodule(c), win(2));
  auto blind_opts = win(2);
  blind_opts.censoring_aware = false;
  auto blind = hochschild_complex(c, diagonal_bimodule(c), blind_opts);
  CHECK(aware.enumerated_tuples < blind.enumerated_tuples);
  for (int n = 0; n <= 3; ++n) CHECK(aware.dim(n) == blind.dim(n));
  for (int n = 0; n <= 2; ++n)
    CHECK(cohomology(aware.cx, n).betti == cohomology(blind.cx, n).betti);
}

TEST_CASE("censoring equality: aware complex == blind complex with truncated coefficients") {
  auto c = corpus::pseudocircle_incidence(K);
  auto m = diagonal_bimodule(c);
  auto m0 = truncate_by_relation(m, *c.censoring);
  auto aware = hochschild_complex(c, m, win(2));
  auto opts = win(2);
  opts.censoring_aware = false;
  auto blind0 = hochschild_complex(c, m0, opts);
  for (int n = 0; n <= 3; ++n) CHECK(aware.dim(n) == blind0.dim(n));
  for (int n = 0; n <= 2; ++n)
    CHECK(cohomology(aware.cx, n).betti == cohomology(blind0.cx, n).betti);
}

TEST_CASE("restriction to a full subcategory is a chain map") {
  auto c = corpus::a2_incidence(K);
  auto sub = full_subcategory(c, {"p0"});
  require_valid(sub);
  auto big = hochschild_complex(c, diagonal_bimodule(c), win(2));
  auto small = hochschild_complex(sub, diagonal_bimodule(sub), win(2));
  auto R = restriction_map(big, small, c, sub);
  for (int n = big.lo(); n < big.hi(); ++n) {
    Mat<Rational> lhs = mul_sparse(R[n + 1 - big.lo()], big.cx.diff(n));
    Mat<Rational> rhs = mul_sparse(small.cx.diff(n), R[n - big.lo()]);
    CHECK(is_zero_mat<Rational>(Mat<Rational>(lhs - rhs)));
  }
  // restriction of A2 to one object: HH(A2) -> HH(k), nonzero in degree 0
  auto h0_big = cohomology(big.cx, 0);
  Vec<Rational> img = mul_sparse_vec(R[0 - big.lo()], Vec<Rational>(h0_big.reps.col(0)));
  CHECK_FALSE(is_zero_mat<Rational>(Mat<Rational>(img)));
}
