#pragma once

#include <map>
#include <vector>

#include "hochkit/presheaf.hpp"

namespace hochkit {

// The cosimplicial complex of a presheaf on a poset: degree n is the direct
// sum of F(x_0) over weakly increasing chains x_0 <= ... <= x_n, with the
// alternating-sum coboundary (the 0th face goes through a structure map).
// H^0 is the inverse limit of F.
template <class S>
struct StandardComplex {
  ComplexRep<S> cx;
  std::vector<std::vector<std::vector<Index>>> chains;  // per degree
};

template <class S>
StandardComplex<S> standard_complex(const ModulePresheaf<S>& f, int n_max) {
  f.validate();
  StandardComplex<S> out;
  out.cx.field = f.field;
  out.cx.lo = 0;
  out.cx.hi = n_max + 1;
  out.cx.complete_below = true;
  for (int n = 0; n <= n_max + 1; ++n) {
    out.chains.push_back(f.poset.weak_chains(n));
    Index d = 0;
    for (auto& ch : out.chains.back()) d += f.dims[ch.front()];
    out.cx.dims.push_back(d);
  }
  for (int n = 0; n <= n_max; ++n) {
    std::map<std::vector<Index>, Index> pos;
    Index off = 0;
    std::vector<Index> offs;
    for (auto& ch : out.chains[n]) {
      pos[ch] = static_cast<Index>(offs.size());
      offs.push_back(off);
      off += f.dims[ch.front()];
    }
    Mat<S> d = zero_mat<S>(out.cx.dims[n + 1], out.cx.dims[n]);
    Index toff = 0;
    for (auto& ch : out.chains[n + 1]) {
      for (size_t drop = 0; drop < ch.size(); ++drop) {
        std::vector<Index> face = ch;
        face.erase(face.begin() + drop);
        auto it = pos.find(face);
        if (it == pos.end()) continue;
        const Index srcoff = offs[it->second];
        const S sgn = (drop % 2 == 0) ? f.field.of(1) : f.field.of(-1);
        if (drop == 0) {
          // s(x_1 <= ...) lives at F(x_1); push down through rho
          const Mat<S>& r = f.map(ch[0], ch[1]);
          for (Index c = 0; c < r.cols(); ++c)
            for (Index t = 0; t < r.rows(); ++t)
              if (!is_zero(r(t, c))) d(toff + t, srcoff + c) += sgn * r(t, c);
        } else {
          for (Index t = 0; t < f.dims[ch.front()]; ++t) d(toff + t, srcoff + t) += sgn;
        }
      }
      toff += f.dims[ch.front()];
    }
    out.cx.d.push_back(d);
  }
  return out;
}

template <class S>
std::vector<Index> standard_complex_cohomology(const ModulePresheaf<S>& f, int n_max) {
  auto sc = standard_complex(f, n_max);
  std::vector<Index> dims;
  for (int n = 0; n <= n_max; ++n) dims.push_back(cohomology(sc.cx, n).betti);
  return dims;
}

// dim of the inverse limit of F, for the H^0-identification check.
template <class S>
Index inverse_limit_dim(const ModulePresheaf<S>& f) {
  std::vector<Index> all;
  for (Index x = 0; x < f.poset.size(); ++x) all.push_back(x);
  return limit_over(f, all).dim();
}

}  // namespace hochkit
