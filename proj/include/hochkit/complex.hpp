#pragma once

#include <string>
#include <vector>

#include "hochkit/errors.hpp"
#include "hochkit/linalg.hpp"

namespace hochkit {

// A bounded window of a cochain complex: dimensions for degrees lo..hi and
// the differentials d_n : C^n -> C^{n+1} for lo <= n < hi. The completeness
// flags assert that the complex vanishes outside the window; without them
// cohomology at a window edge is only a bound, never silently exact.
template <class S>
struct ComplexRep {
  Field<S> field;
  int lo = 0;
  int hi = 0;
  bool complete_below = false;
  bool complete_above = false;
  std::vector<Index> dims;
  std::vector<Mat<S>> d;

  Index dim(int n) const { return (n < lo || n > hi) ? 0 : dims[n - lo]; }

  bool has_diff(int n) const {
    if (n >= lo && n < hi) return true;
    if (n == hi && complete_above) return true;
    if (n == lo - 1 && complete_below) return true;
    return false;
  }

  Mat<S> diff(int n) const {
    if (n >= lo && n < hi) return d[n - lo];
    return zero_mat<S>(dim(n + 1), dim(n));
  }

  void validate() const {
    if (hi < lo) throw ValidationError("complex window is empty");
    if (static_cast<int>(dims.size()) != hi - lo + 1)
      throw ValidationError("complex: dims/window mismatch");
    if (static_cast<int>(d.size()) != hi - lo)
      throw ValidationError("complex: differential count mismatch");
    for (int n = lo; n < hi; ++n) {
      const Mat<S>& m = d[n - lo];
      if (m.rows() != dim(n + 1) || m.cols() != dim(n))
        throw ValidationError("complex: differential shape mismatch at degree " + std::to_string(n));
    }
    for (int n = lo; n + 1 < hi; ++n)
      if (!is_zero_mat(mul_sparse(d[n + 1 - lo], d[n - lo])))
        throw ValidationError("complex: d∘d != 0 at degree " + std::to_string(n));
  }
};

template <class S>
struct Cohomology {
  Index betti = 0;
  Mat<S> reps;  // columns: cocycles projecting to a basis of H^n
  bool exact = true;
};

template <class S>
Cohomology<S> cohomology(const ComplexRep<S>& cx, int n) {
  if (n < cx.lo || n > cx.hi) throw ValidationError("degree outside the complex window");
  Cohomology<S> out;
  const bool out_ok = cx.has_diff(n);
  const bool in_ok = cx.has_diff(n - 1);
  Mat<S> K;
  if (out_ok) {
    K = kernel_basis(cx.diff(n));
  } else {
    K = identity_mat<S>(cx.field, cx.dim(n));
  }
  Mat<S> B = in_ok ? cx.diff(n - 1) : zero_mat<S>(cx.dim(n), 0);
  std::vector<Index> picked = complement_columns(B, K);
  out.betti = static_cast<Index>(picked.size());
  out.reps = zero_mat<S>(cx.dim(n), out.betti);
  for (Index j = 0; j < out.betti; ++j) out.reps.col(j) = K.col(picked[j]);
  out.exact = out_ok && in_ok;
  return out;
}

struct DegreeDim {
  int degree = 0;
  Index dim = 0;
  bool exact = true;
};

template <class S>
std::vector<DegreeDim> betti_table(const ComplexRep<S>& cx, int from, int to) {
  std::vector<DegreeDim> t;
  for (int n = from; n <= to; ++n) {
    if (n < cx.lo || n > cx.hi) {
      // outside the window: zero if flagged complete on that side
      bool known = (n < cx.lo && cx.complete_below) || (n > cx.hi && cx.complete_above);
      t.push_back({n, 0, known});
      continue;
    }
    auto h = cohomology(cx, n);
    t.push_back({n, h.betti, h.exact});
  }
  return t;
}

template <class S>
long long euler_characteristic(const ComplexRep<S>& cx) {
  long long chi = 0;
  for (int n = cx.lo; n <= cx.hi; ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long long>(cx.dim(n));
  return chi;
}

}  // namespace hochkit
