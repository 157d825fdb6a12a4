#pragma once

#include <map>
#include <string>
#include <vector>

#include "hochkit/complex.hpp"
#include "hochkit/poset.hpp"

namespace hochkit {

// Presheaf of finite-dimensional vector spaces on a poset: F(x) per element,
// structure maps rho_{xy}: F(y) -> F(x) for x <= y, functorial.
template <class S>
struct ModulePresheaf {
  Field<S> field;
  Poset poset;
  std::vector<Index> dims;
  std::map<std::pair<Index, Index>, Mat<S>> rho;

  const Mat<S>& map(Index x, Index y) const {
    auto it = rho.find({x, y});
    if (it == rho.end()) throw ValidationError("module presheaf: missing structure map");
    return it->second;
  }

  void validate() const {
    poset.validate();
    if (static_cast<Index>(dims.size()) != poset.size())
      throw ValidationError("module presheaf: one space per element required");
    for (Index x = 0; x < poset.size(); ++x)
      for (Index y = 0; y < poset.size(); ++y) {
        if (!poset.leq(x, y)) {
          if (rho.count({x, y})) throw ValidationError("module presheaf: map off the order relation");
          continue;
        }
        const Mat<S>& r = map(x, y);
        if (r.rows() != dims[x] || r.cols() != dims[y])
          throw ValidationError("module presheaf: map shape mismatch");
        if (x == y && !is_zero_mat<S>(Mat<S>(r - identity_mat(field, dims[x]))))
          throw ValidationError("module presheaf: rho_xx != id");
        for (Index z = 0; z < poset.size(); ++z)
          if (poset.leq(y, z) &&
              !is_zero_mat<S>(Mat<S>(mul_sparse(r, map(y, z)) - map(x, z))))
            throw ValidationError("module presheaf: maps not functorial");
      }
  }
};

template <class S>
ModulePresheaf<S> constant_module_presheaf(const Field<S>& k, const Poset& p, Index dim) {
  ModulePresheaf<S> f;
  f.field = k;
  f.poset = p;
  f.dims.assign(p.size(), dim);
  for (Index x = 0; x < p.size(); ++x)
    for (Index y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) f.rho[{x, y}] = identity_mat(k, dim);
  return f;
}

template <class S>
ModulePresheaf<S> zero_module_presheaf(const Field<S>& k, const Poset& p) {
  return constant_module_presheaf(k, p, 0);
}

// Restriction to a subset of elements (with the induced order).
template <class S>
ModulePresheaf<S> presheaf_restrict(const ModulePresheaf<S>& f, const std::vector<Index>& keep) {
  ModulePresheaf<S> out;
  out.field = f.field;
  std::vector<Index> sorted = keep;
  std::sort(sorted.begin(), sorted.end(), [&](Index a, Index b) {
    return f.poset.names[a] < f.poset.names[b];
  });
  out.poset = f.poset.restricted(sorted);
  for (Index i = 0; i < static_cast<Index>(sorted.size()); ++i) out.dims.push_back(f.dims[sorted[i]]);
  for (Index a = 0; a < out.poset.size(); ++a)
    for (Index b = 0; b < out.poset.size(); ++b)
      if (out.poset.leq(a, b)) out.rho[{a, b}] = f.map(sorted[a], sorted[b]);
  return out;
}

// A finite limit of F over a subset of its poset: compatible families,
// realized as the kernel of the pairwise difference map.
template <class S>
struct LimitData {
  std::vector<Index> elems;    // the subset, in poset order
  std::vector<Index> offsets;  // row offsets of each F(w) inside the ambient product
  Mat<S> basis;                // (sum of dims) x (limit dim): columns = compatible families
  Index dim() const { return basis.cols(); }
};

template <class S>
LimitData<S> limit_over(const ModulePresheaf<S>& f, std::vector<Index> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  LimitData<S> out;
  out.elems = elems;
  Index total = 0;
  for (Index w : elems) {
    out.offsets.push_back(total);
    total += f.dims[w];
  }
  std::vector<Mat<S>> rows;
  Index nrows = 0;
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) {
      if (i == j || !f.poset.leq(elems[i], elems[j])) continue;
      // s_{w_i} − rho(s_{w_j}) = 0
      Mat<S> r = zero_mat<S>(f.dims[elems[i]], total);
      for (Index t = 0; t < f.dims[elems[i]]; ++t) r(t, out.offsets[i] + t) = f.field.of(1);
      const Mat<S>& m = f.map(elems[i], elems[j]);
      for (Index c = 0; c < m.cols(); ++c)
        for (Index t = 0; t < m.rows(); ++t)
          if (!is_zero(m(t, c))) r(t, out.offsets[j] + c) -= m(t, c);
      nrows += r.rows();
      rows.push_back(std::move(r));
    }
  Mat<S> cons = zero_mat<S>(nrows, total);
  Index at = 0;
  for (auto& r : rows) {
    cons.middleRows(at, r.rows()) = r;
    at += r.rows();
  }
  out.basis = kernel_basis(cons);
  return out;
}

template <class S>
Mat<S> limit_projection(const LimitData<S>& l, const ModulePresheaf<S>& f, Index w) {
  for (size_t i = 0; i < l.elems.size(); ++i)
    if (l.elems[i] == w) return l.basis.middleRows(l.offsets[i], f.dims[w]);
  throw ValidationError("limit_projection: element not part of the limit");
}

// Right extension of a presheaf on a down-closed subposet to the ambient
// poset: (i_* F)(v) = lim over {w in sub : w <= v} of F.
template <class S>
struct ExtendedPresheaf {
  ModulePresheaf<S> presheaf;          // on the ambient poset
  std::vector<LimitData<S>> limits;    // per ambient element, over the sub-elements below it
};

template <class S>
ExtendedPresheaf<S> presheaf_right_extend(const ModulePresheaf<S>& f,
                                          const std::vector<Index>& sub_to_ambient,
                                          const Poset& ambient) {
  // sub_to_ambient[i] = ambient index of the i-th element of f.poset
  ExtendedPresheaf<S> out;
  out.presheaf.field = f.field;
  out.presheaf.poset = ambient;
  std::map<Index, Index> to_sub;
  for (size_t i = 0; i < sub_to_ambient.size(); ++i) to_sub[sub_to_ambient[i]] = static_cast<Index>(i);

  // limit of f over the sub-elements below v (indices in f's poset)
  for (Index v = 0; v < ambient.size(); ++v) {
    std::vector<Index> below;
    for (size_t i = 0; i < sub_to_ambient.size(); ++i)
      if (ambient.leq(sub_to_ambient[i], v)) below.push_back(static_cast<Index>(i));
    out.limits.push_back(limit_over(f, below));
    out.presheaf.dims.push_back(out.limits.back().dim());
  }
  for (Index x = 0; x < ambient.size(); ++x)
    for (Index y = 0; y < ambient.size(); ++y) {
      if (!ambient.leq(x, y)) continue;
      // restrict a compatible family over (below y) to (below x)
      const LimitData<S>& LY = out.limits[y];
      const LimitData<S>& LX = out.limits[x];
      Index xtotal = 0;
      for (Index w : LX.elems) xtotal += f.dims[w];
      Mat<S> rest = zero_mat<S>(xtotal, LY.basis.cols());
      for (size_t i = 0; i < LX.elems.size(); ++i) {
        Mat<S> proj = limit_projection(LY, f, LX.elems[i]);
        rest.middleRows(LX.offsets[i], f.dims[LX.elems[i]]) = proj;
      }
      auto coords = solve<S>(LX.basis, rest);
      if (!coords) throw VerificationError("presheaf_right_extend: restricted family not compatible");
      out.presheaf.rho[{x, y}] = *coords;
    }
  out.presheaf.validate();
  return out;
}

// dim Hom of presheaves (maps commuting with the structure maps); used for
// the adjunction checks.
template <class S>
Index presheaf_hom_dim(const ModulePresheaf<S>& f, const ModulePresheaf<S>& g) {
  if (f.poset.names != g.poset.names) throw ValidationError("presheaf_hom_dim: poset mismatch");
  std::vector<std::pair<Index, Index>> vars;  // (element, entry)
  std::vector<Index> offsets;
  Index total = 0;
  for (Index x = 0; x < f.poset.size(); ++x) {
    offsets.push_back(total);
    total += f.dims[x] * g.dims[x];
  }
  std::vector<Mat<S>> rows;
  Index nrows = 0;
  for (Index x = 0; x < f.poset.size(); ++x)
    for (Index y = 0; y < f.poset.size(); ++y) {
      if (x == y || !f.poset.leq(x, y)) continue;
      // t_x ∘ rho^f = rho^g ∘ t_y
      Mat<S> r = zero_mat<S>(g.dims[x] * f.dims[y], total);
      const Mat<S>& rf = f.map(x, y);
      const Mat<S>& rg = g.map(x, y);
      for (Index a = 0; a < g.dims[x]; ++a)
        for (Index b = 0; b < f.dims[y]; ++b) {
          const Index row = a * f.dims[y] + b;
          // t_x(a, c) rf(c, b)
          for (Index c = 0; c < f.dims[x]; ++c)
            if (!is_zero(rf(c, b))) r(row, offsets[x] + a * f.dims[x] + c) += rf(c, b);
          // − rg(a, d) t_y(d, b)
          for (Index d = 0; d < g.dims[y]; ++d)
            if (!is_zero(rg(a, d))) r(row, offsets[y] + d * f.dims[y] + b) -= rg(a, d);
        }
      nrows += r.rows();
      rows.push_back(std::move(r));
    }
  Mat<S> cons = zero_mat<S>(nrows, total);
  Index at = 0;
  for (auto& r : rows) {
    cons.middleRows(at, r.rows()) = r;
    at += r.rows();
  }
  return total - rank(cons);
}

}  // namespace hochkit
