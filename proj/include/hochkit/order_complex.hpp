#pragma once

#include <vector>

#include "hochkit/complex.hpp"
#include "hochkit/poset.hpp"

namespace hochkit {

// Simplicial cochain complex on the strictly increasing chains of a poset,
// constant coefficients. This is the independent oracle for everything that
// claims to compute poset/finite-space cohomology.
template <class S>
ComplexRep<S> order_complex_cochains(const Field<S>& k, const Poset& p, int n_max) {
  ComplexRep<S> cx;
  cx.field = k;
  cx.lo = 0;
  cx.hi = n_max + 1;
  cx.complete_below = true;
  std::vector<std::vector<std::vector<Index>>> chains;
  for (int n = 0; n <= n_max + 1; ++n) {
    chains.push_back(p.strict_chains(n));
    cx.dims.push_back(static_cast<Index>(chains.back().size()));
  }
  for (int n = 0; n <= n_max; ++n) {
    Mat<S> d = zero_mat<S>(cx.dims[n + 1], cx.dims[n]);
    std::map<std::vector<Index>, Index> pos;
    for (Index i = 0; i < static_cast<Index>(chains[n].size()); ++i) pos[chains[n][i]] = i;
    for (Index j = 0; j < static_cast<Index>(chains[n + 1].size()); ++j) {
      const auto& ch = chains[n + 1][j];
      for (size_t drop = 0; drop < ch.size(); ++drop) {
        std::vector<Index> face = ch;
        face.erase(face.begin() + drop);
        auto it = pos.find(face);
        if (it == pos.end()) continue;
        S c = k.of(1);
        if (drop % 2 != 0) c = -c;
        d(j, it->second) += c;
      }
    }
    cx.d.push_back(d);
  }
  return cx;
}

template <class S>
std::vector<Index> order_complex_cohomology(const Field<S>& k, const Poset& p, int n_max) {
  ComplexRep<S> cx = order_complex_cochains(k, p, n_max);
  std::vector<Index> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(cohomology(cx, n).betti);
  return out;
}

}  // namespace hochkit
