#pragma once

#include <string>
#include <vector>

#include "hochkit/complex.hpp"

namespace hochkit {

// Degreewise short exact sequence 0 -> A -> B -> C -> 0 of complexes over a
// common window. i and q are indexed by degree (lo..hi).
template <class S>
struct SesOfComplexes {
  ComplexRep<S> A, B, C;
  std::vector<Mat<S>> i, q;

  Index lo() const { return A.lo; }

  void validate() const {
    if (A.lo != B.lo || A.lo != C.lo || A.hi != B.hi || A.hi != C.hi)
      throw ValidationError("ses: the three complexes must share a window");
    if (A.complete_below != B.complete_below || A.complete_below != C.complete_below ||
        A.complete_above != B.complete_above || A.complete_above != C.complete_above)
      throw ValidationError("ses: window completeness flags must agree");
    A.validate();
    B.validate();
    C.validate();
    const int lo = A.lo, hi = A.hi;
    if (static_cast<int>(i.size()) != hi - lo + 1 || static_cast<int>(q.size()) != hi - lo + 1)
      throw ValidationError("ses: map count mismatch");
    for (int n = lo; n <= hi; ++n) {
      const Mat<S>& in = i[n - lo];
      const Mat<S>& qn = q[n - lo];
      if (in.rows() != B.dim(n) || in.cols() != A.dim(n) || qn.rows() != C.dim(n) ||
          qn.cols() != B.dim(n))
        throw ValidationError("ses: map shape mismatch at degree " + std::to_string(n));
    }
    for (int n = lo; n < hi; ++n) {
      if (!is_zero_mat<S>(mul_sparse(i[n + 1 - lo], A.diff(n)) - mul_sparse(B.diff(n), i[n - lo])))
        throw ValidationError("ses: i is not a chain map at degree " + std::to_string(n));
      if (!is_zero_mat<S>(mul_sparse(q[n + 1 - lo], B.diff(n)) - mul_sparse(C.diff(n), q[n - lo])))
        throw ValidationError("ses: q is not a chain map at degree " + std::to_string(n));
    }
    for (int n = lo; n <= hi; ++n) {
      const Mat<S>& in = i[n - lo];
      const Mat<S>& qn = q[n - lo];
      if (rank(in) != A.dim(n))
        throw ValidationError("ses: i not injective at degree " + std::to_string(n));
      if (rank(qn) != C.dim(n))
        throw ValidationError("ses: q not surjective at degree " + std::to_string(n));
      if (!is_zero_mat(mul_sparse(qn, in)))
        throw ValidationError("ses: q∘i != 0 at degree " + std::to_string(n));
      if (rank(in) + rank(qn) != B.dim(n))
        throw ValidationError("ses: not exact in the middle at degree " + std::to_string(n));
    }
  }
};

struct LesJoint {
  int degree = 0;
  char at = 'B';  // 'A': exactness at H^{degree+1}(A); 'B'/'C': at H^degree
  bool composition_zero = false;
  bool ranks_match = false;
  bool pass() const { return composition_zero && ranks_match; }
};

template <class S>
struct LesReport {
  std::vector<int> degrees;  // degrees with exact cohomology on all three complexes
  std::vector<Index> hA, hB, hC;
  std::vector<Mat<S>> i_star, q_star, delta;  // delta[k]: H^n(C) -> H^{n+1}(A)
  std::vector<LesJoint> joints;
  bool all_exact = true;

  Index dimH(char which, int n) const {
    for (size_t k = 0; k < degrees.size(); ++k)
      if (degrees[k] == n) return which == 'A' ? hA[k] : which == 'B' ? hB[k] : hC[k];
    return 0;
  }
};

// Long exact sequence of a validated SES: induced maps on cohomology plus the
// snake-construction connecting maps, with an exactness report at every joint.
template <class S>
LesReport<S> les_from_ses(const SesOfComplexes<S>& s) {
  s.validate();
  const int lo = s.A.lo, hi = s.A.hi;
  const int exact_lo = s.A.complete_below ? lo : lo + 1;
  const int exact_hi = s.A.complete_above ? hi : hi - 1;
  LesReport<S> rep;
  std::vector<Cohomology<S>> HA, HB, HC;
  for (int n = exact_lo; n <= exact_hi; ++n) {
    rep.degrees.push_back(n);
    HA.push_back(cohomology(s.A, n));
    HB.push_back(cohomology(s.B, n));
    HC.push_back(cohomology(s.C, n));
    rep.hA.push_back(HA.back().betti);
    rep.hB.push_back(HB.back().betti);
    rep.hC.push_back(HC.back().betti);
  }

  auto to_class = [](const Mat<S>& boundaries, const Mat<S>& reps, const Vec<S>& v) -> Vec<S> {
    auto c = class_coords<S>(boundaries, reps, v);
    if (!c) throw VerificationError("les: image vector is not a cocycle class");
    return *c;
  };

  const size_t m = rep.degrees.size();
  for (size_t k = 0; k < m; ++k) {
    const int n = rep.degrees[k];
    Mat<S> bndB = s.B.has_diff(n - 1) ? s.B.diff(n - 1) : zero_mat<S>(s.B.dim(n), 0);
    Mat<S> bndC = s.C.has_diff(n - 1) ? s.C.diff(n - 1) : zero_mat<S>(s.C.dim(n), 0);
    Mat<S> istar = zero_mat<S>(rep.hB[k], rep.hA[k]);
    for (Index j = 0; j < rep.hA[k]; ++j)
      istar.col(j) = to_class(bndB, HB[k].reps, mul_sparse_vec(s.i[n - lo], Vec<S>(HA[k].reps.col(j))));
    Mat<S> qstar = zero_mat<S>(rep.hC[k], rep.hB[k]);
    for (Index j = 0; j < rep.hB[k]; ++j)
      qstar.col(j) = to_class(bndC, HC[k].reps, mul_sparse_vec(s.q[n - lo], Vec<S>(HB[k].reps.col(j))));
    rep.i_star.push_back(istar);
    rep.q_star.push_back(qstar);

    // connecting map by the snake construction on representatives
    const Index hAnext = (k + 1 < m) ? rep.hA[k + 1] : (n + 1 > hi ? 0 : -1);
    if (hAnext >= 0) {
      Mat<S> dl = zero_mat<S>(hAnext, rep.hC[k]);
      if (hAnext > 0 && rep.hC[k] > 0) {
        Mat<S> bndA = s.A.diff(n);
        for (Index j = 0; j < rep.hC[k]; ++j) {
          auto b = solve_vec<S>(s.q[n - lo], Vec<S>(HC[k].reps.col(j)));
          if (!b) throw VerificationError("les: failed to lift a cocycle through q");
          Vec<S> db = mul_sparse_vec(s.B.diff(n), *b);
          auto a = solve_vec<S>(s.i[n + 1 - lo], db);
          if (!a) throw VerificationError("les: snake image does not land in A");
          dl.col(j) = to_class(bndA, HA[k + 1].reps, *a);
        }
      }
      rep.delta.push_back(dl);
    }
  }

  auto joint = [&](int degree, char at, const Mat<S>& inc, const Mat<S>& out, Index middle) {
    LesJoint j;
    j.degree = degree;
    j.at = at;
    j.composition_zero = is_zero_mat(mul_sparse(out, inc));
    j.ranks_match = rank(inc) + rank(out) == middle;
    rep.joints.push_back(j);
    rep.all_exact = rep.all_exact && j.pass();
  };
  for (size_t k = 0; k < m; ++k) {
    const int n = rep.degrees[k];
    joint(n, 'B', rep.i_star[k], rep.q_star[k], rep.hB[k]);
    if (k < rep.delta.size()) joint(n, 'C', rep.q_star[k], rep.delta[k], rep.hC[k]);
    if (k + 1 < m && k < rep.delta.size()) joint(n, 'A', rep.delta[k], rep.i_star[k + 1], rep.hA[k + 1]);
  }
  return rep;
}

}  // namespace hochkit
