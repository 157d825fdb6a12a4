#pragma once

#include <map>
#include <string>
#include <vector>

#include "hochkit/algebra.hpp"
#include "hochkit/bimodule.hpp"
#include "hochkit/complex.hpp"
#include "hochkit/lincat.hpp"
#include "hochkit/poset.hpp"

namespace hochkit {

// One-object category wrapping an algebra.
template <class S>
FinLinCat<S> from_algebra(const Algebra<S>& a, const std::string& object_name = "*") {
  auto rep = validate_algebra(a);
  if (!rep.ok()) throw ValidationError("from_algebra: input is not a unital associative algebra:\n" + rep.str());
  FinLinCat<S> c;
  c.field = a.field;
  c.objects = {object_name};
  c.homs[{0, 0}] = make_hom0<S>(a.labels);
  c.comp[{0, 0, 0}] = a.mult;
  c.identities = {a.unit};
  return c;
}

// Inverse view: the endomorphism algebra of a one-object ordinary category.
template <class S>
Algebra<S> endomorphism_algebra(const FinLinCat<S>& c, Index a0) {
  const HomSpace<S>* h = c.hom(a0, a0);
  Algebra<S> a;
  a.field = c.field;
  a.labels = h ? h->labels : std::vector<std::string>{};
  if (auto it = c.comp.find({a0, a0, a0}); it != c.comp.end()) a.mult = it->second;
  a.unit = c.identity(a0);
  return a;
}

// Incidence category of an algebra-valued presheaf on a poset:
// hom(u,v) = O(u) for u <= v, composition f∘g... g∘f = f · r_{uv}(g),
// censoring relation = the order relation.
template <class S>
FinLinCat<S> incidence_category(const RingPresheaf<S>& o) {
  auto rep = validate_presheaf(o);
  if (!rep.ok()) throw ValidationError("incidence_category: presheaf invalid:\n" + rep.str());
  const Index n = o.poset.size();
  FinLinCat<S> c;
  c.field = o.alg.empty() ? Field<S>{} : o.alg[0].field;
  c.objects = o.poset.names;
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v)
      if (o.poset.leq(u, v) && o.alg[u].dim() > 0) c.homs[{u, v}] = make_hom0<S>(o.alg[u].labels);
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v) {
      if (!o.poset.leq(u, v)) continue;
      for (Index w = 0; w < n; ++w) {
        if (!o.poset.leq(v, w)) continue;
        StructureMap<S> sm;
        const Mat<S>& r = o.restriction(u, v);
        for (Index g = 0; g < o.alg[v].dim(); ++g) {
          Vec<S> rg = mul_sparse_vec(r, o.alg[v].basis_vec(g));
          for (Index f = 0; f < o.alg[u].dim(); ++f) {
            Vec<S> prod = o.alg[u].mul(o.alg[u].basis_vec(f), rg);
            for (Index h = 0; h < prod.size(); ++h)
              if (!is_zero(prod(h))) sm.add(g, f, h, prod(h));
          }
        }
        c.comp[{u, v, w}] = std::move(sm);
      }
    }
  c.identities.resize(n);
  for (Index u = 0; u < n; ++u) c.identities[u] = o.alg[u].unit;
  Relation rel(n);
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v)
      if (o.poset.leq(u, v)) rel.set(u, v);
  c.censoring = rel;
  return c;
}

// A finite ordinary category given by hom sets and a composition table.
struct FinOrdCategory {
  std::vector<std::string> objects;  // sorted
  std::map<std::pair<Index, Index>, std::vector<std::string>> morphisms;
  // ((a,b,c), g, f) -> index of g∘f in morphisms[(a,c)]
  std::map<std::tuple<Index, Index, Index, Index, Index>, Index> comp;
  std::vector<Index> ids;  // index of id_a in morphisms[(a,a)]
};

// k-linearization: morphism sets become bases, composition extends bilinearly.
template <class S>
FinLinCat<S> linearize(const Field<S>& k, const FinOrdCategory& c) {
  FinLinCat<S> out;
  out.field = k;
  out.objects = c.objects;
  const Index n = static_cast<Index>(c.objects.size());
  for (auto& [key, ms] : c.morphisms)
    if (!ms.empty()) out.homs[key] = make_hom0<S>(ms);
  for (auto& [key, h] : c.comp) {
    auto [a, b, cc, g, f] = key;
    out.comp[{a, b, cc}].add(g, f, h, k.of(1));
  }
  out.identities.resize(n);
  for (Index a = 0; a < n; ++a) {
    const Index d = out.hom_dim(a, a);
    Vec<S> id = Vec<S>::Constant(d, S(0));
    if (d > 0) id(c.ids[a]) = k.of(1);
    out.identities[a] = id;
  }
  return out;
}

// The poset category u <= v, one morphism per related pair.
inline FinOrdCategory poset_as_category(const Poset& p) {
  FinOrdCategory c;
  c.objects = p.names;
  for (Index u = 0; u < p.size(); ++u)
    for (Index v = 0; v < p.size(); ++v)
      if (p.leq(u, v)) c.morphisms[{u, v}] = {"le"};
  for (Index u = 0; u < p.size(); ++u)
    for (Index v = 0; v < p.size(); ++v)
      for (Index w = 0; w < p.size(); ++w)
        if (p.leq(u, v) && p.leq(v, w)) c.comp[{u, v, w, 0, 0}] = 0;
  c.ids.assign(p.size(), 0);
  return c;
}

// The category algebra: one algebra on the direct sum of all homs, products
// of non-composable elements vanish, unit = sum of identities.
template <class S>
Algebra<S> category_algebra(const FinLinCat<S>& c) {
  if (!c.is_ordinary())
    throw ValidationError("category_algebra is defined here for ordinary categories only");
  Algebra<S> a;
  a.field = c.field;
  std::map<std::pair<Index, Index>, Index> offset;
  for (auto& [key, h] : c.homs) {
    offset[key] = a.dim();
    for (auto& l : h.labels)
      a.labels.push_back(c.objects[key.first] + "->" + c.objects[key.second] + ":" + l);
  }
  for (auto& [key, sm] : c.comp) {
    auto [x, y, z] = key;
    auto og = offset.find({y, z});
    auto of = offset.find({x, y});
    auto oh = offset.find({x, z});
    if (og == offset.end() || of == offset.end() || oh == offset.end()) continue;
    for (auto& [gf, terms] : sm.terms)
      for (auto& [h, coeff] : terms)
        a.mult.add(og->second + gf.first, of->second + gf.second, oh->second + h, coeff);
  }
  a.unit = Vec<S>::Constant(a.dim(), S(0));
  for (Index x = 0; x < c.n_objects(); ++x) {
    const Vec<S>& id = c.identity(x);
    if (id.size() == 0) continue;
    Index off = offset.at({x, x});
    for (Index i = 0; i < id.size(); ++i) a.unit(off + i) = id(i);
  }
  return a;
}

// Glues two categories along a bimodule: objects are the disjoint union, the
// only cross homs go from bcat-objects to acat-objects and are the bimodule
// spaces; composition through the cross homs is given by the actions.
template <class S>
FinLinCat<S> arrow_category(const Bimodule<S>& x) {
  require_valid_bimodule(x, "arrow_category bimodule");
  const FinLinCat<S>& A = x.acat;
  const FinLinCat<S>& B = x.bcat;
  FinLinCat<S> c;
  c.field = A.field;
  for (auto& o : A.objects) c.objects.push_back("a:" + o);
  for (auto& o : B.objects) c.objects.push_back("b:" + o);
  std::sort(c.objects.begin(), c.objects.end());
  auto amap = [&](Index i) { return c.obj_index("a:" + A.objects[i]); };
  auto bmap = [&](Index i) { return c.obj_index("b:" + B.objects[i]); };

  for (auto& [key, h] : A.homs) c.homs[{amap(key.first), amap(key.second)}] = h;
  for (auto& [key, h] : B.homs) c.homs[{bmap(key.first), bmap(key.second)}] = h;
  for (auto& [key, s] : x.spaces)
    if (s.dim() > 0) c.homs[{bmap(key.first), amap(key.second)}] = s;

  for (auto& [key, sm] : A.comp) c.comp[{amap(std::get<0>(key)), amap(std::get<1>(key)), amap(std::get<2>(key))}] = sm;
  for (auto& [key, sm] : B.comp) c.comp[{bmap(std::get<0>(key)), bmap(std::get<1>(key)), bmap(std::get<2>(key))}] = sm;
  // g in acat.hom(A1,A2) after m in X(B,A1)
  for (auto& [key, sm] : x.lact) {
    auto [b, a1, a2] = key;
    c.comp[{bmap(b), amap(a1), amap(a2)}] = sm;
  }
  // m in X(B1,A) after g in bcat.hom(B2,B1)
  for (auto& [key, sm] : x.ract) {
    auto [b2, b1, a] = key;
    c.comp[{bmap(b2), bmap(b1), amap(a)}] = sm;
  }

  c.identities.resize(c.n_objects());
  for (Index i = 0; i < A.n_objects(); ++i) c.identities[amap(i)] = A.identity(i);
  for (Index i = 0; i < B.n_objects(); ++i) c.identities[bmap(i)] = B.identity(i);

  Relation rel(c.n_objects());
  auto put = [&](const std::optional<Relation>& r, auto tomap, Index n) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (!r || r->has(i, j)) rel.set(tomap(i), tomap(j));
  };
  put(A.censoring, amap, A.n_objects());
  put(B.censoring, bmap, B.n_objects());
  for (Index b = 0; b < B.n_objects(); ++b)
    for (Index a = 0; a < A.n_objects(); ++a) rel.set(bmap(b), amap(a));
  c.censoring = rel;
  return c;
}

// Opposite category, with the graded sign g∘op f = (−1)^{|f||g|} f∘g.
template <class S>
FinLinCat<S> opposite(const FinLinCat<S>& c) {
  FinLinCat<S> o;
  o.field = c.field;
  o.objects = c.objects;
  for (auto& [key, h] : c.homs) o.homs[{key.second, key.first}] = h;
  for (auto& [key, sm] : c.comp) {
    auto [src, mid, tgt] = key;
    // original: outer in hom(mid,tgt), inner in hom(src,mid), result hom(src,tgt)
    // opposite: comp over (tgt, mid, src): outer g in hom^op(mid,src)=hom(src,mid),
    // inner f in hom^op(tgt,mid)=hom(mid,tgt); g∘op f = ±(f∘g) via original comp
    StructureMap<S>& dst = o.comp[{tgt, mid, src}];
    const HomSpace<S>* hmid_tgt = c.hom(mid, tgt);
    const HomSpace<S>* hsrc_mid = c.hom(src, mid);
    for (auto& [gf, terms] : sm.terms) {
      auto [outer, inner] = gf;
      const int df = hmid_tgt->degs[outer];   // f in the opposite pairing
      const int dg = hsrc_mid->degs[inner];   // g in the opposite pairing
      for (auto& [h, coeff] : terms) {
        S cval = coeff;
        if ((df * dg) % 2 != 0) cval = -cval;
        dst.add(inner, outer, h, cval);
      }
    }
  }
  o.identities = c.identities;
  if (c.censoring) o.censoring = c.censoring->transposed();
  return o;
}

// Full subcategory on a set of object labels.
template <class S>
FinLinCat<S> full_subcategory(const FinLinCat<S>& c, const std::vector<std::string>& objs) {
  std::vector<Index> keep;
  for (auto& o : objs) keep.push_back(c.obj_index(o));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::map<Index, Index> re;
  FinLinCat<S> out;
  out.field = c.field;
  for (size_t i = 0; i < keep.size(); ++i) {
    re[keep[i]] = static_cast<Index>(i);
    out.objects.push_back(c.objects[keep[i]]);
  }
  for (auto& [key, h] : c.homs)
    if (re.count(key.first) && re.count(key.second)) out.homs[{re[key.first], re[key.second]}] = h;
  for (auto& [key, sm] : c.comp) {
    auto [a, b, cc] = key;
    if (re.count(a) && re.count(b) && re.count(cc)) out.comp[{re[a], re[b], re[cc]}] = sm;
  }
  out.identities.resize(keep.size());
  for (Index old : keep) out.identities[re[old]] = c.identity(old);
  if (c.censoring) {
    Relation rel(static_cast<Index>(keep.size()));
    for (Index a : keep)
      for (Index b : keep)
        if (c.censoring->has(a, b)) rel.set(re[a], re[b]);
    out.censoring = rel;
  }
  return out;
}

// H*(c): homs replaced by their cohomology, composition induced on chosen
// representatives. The induced composition is checked to be independent of
// the representatives (products of cocycles with boundaries stay boundaries).
template <class S>
FinLinCat<S> cohomology_category(const FinLinCat<S>& c) {
  FinLinCat<S> out;
  out.field = c.field;
  out.objects = c.objects;

  struct HInfo {
    Mat<S> reps;        // dim x r cocycle representatives
    Mat<S> boundaries;  // image of d
  };
  std::map<std::pair<Index, Index>, HInfo> info;

  for (auto& [key, h] : c.homs) {
    Mat<S> Z = kernel_basis(h.diff);
    std::vector<Index> picked = complement_columns(h.diff, Z);
    if (picked.empty()) continue;
    HInfo hi;
    hi.boundaries = h.diff;
    hi.reps = zero_mat<S>(h.dim(), static_cast<Index>(picked.size()));
    HomSpace<S> hs;
    for (size_t j = 0; j < picked.size(); ++j) {
      hi.reps.col(j) = Z.col(picked[j]);
      // degree of the representative: the degree of any nonzero entry
      int deg = 0;
      for (Index t = 0; t < h.dim(); ++t)
        if (!is_zero(hi.reps(t, j))) {
          deg = h.degs[t];
          break;
        }
      hs.labels.push_back("h" + std::to_string(j));
      hs.degs.push_back(deg);
    }
    hs.diff = zero_mat<S>(hs.dim(), hs.dim());
    out.homs[key] = hs;
    info[key] = std::move(hi);
  }

  auto class_of = [&](std::pair<Index, Index> key, const Vec<S>& v) -> Vec<S> {
    auto it = info.find(key);
    if (it == info.end()) {
      // cohomology vanished; v must be a boundary
      const HomSpace<S>* h = c.hom(key.first, key.second);
      if (h && !is_zero_mat<S>(Mat<S>(v)) && !solve_vec<S>(h->diff, v))
        throw VerificationError("cohomology_category: induced value is not a boundary");
      return Vec<S>();
    }
    auto coords = class_coords<S>(it->second.boundaries, it->second.reps, v);
    if (!coords) throw VerificationError("cohomology_category: induced composition not well defined");
    return *coords;
  };

  for (auto& [key, sm] : c.comp) {
    auto [a, b, cc] = key;
    auto ib = info.find({a, b});
    auto ig = info.find({b, cc});
    if (ib == info.end() || ig == info.end()) continue;
    StructureMap<S> dst;
    bool any = false;
    for (Index gj = 0; gj < ig->second.reps.cols(); ++gj)
      for (Index fj = 0; fj < ib->second.reps.cols(); ++fj) {
        Vec<S> z = c.compose(a, b, cc, Vec<S>(ig->second.reps.col(gj)), Vec<S>(ib->second.reps.col(fj)));
        Vec<S> cls = class_of({a, cc}, z);
        for (Index h = 0; h < cls.size(); ++h)
          if (!is_zero(cls(h))) {
            dst.add(gj, fj, h, cls(h));
            any = true;
          }
      }
    // representative independence: cocycle ∘ boundary must die in cohomology
    for (Index gj = 0; gj < ig->second.reps.cols(); ++gj)
      for (Index bc = 0; bc < ib->second.boundaries.cols(); ++bc) {
        Vec<S> z = c.compose(a, b, cc, Vec<S>(ig->second.reps.col(gj)), Vec<S>(ib->second.boundaries.col(bc)));
        Vec<S> cls = class_of({a, cc}, z);
        for (Index h = 0; h < cls.size(); ++h)
          if (!is_zero(cls(h)))
            throw VerificationError("cohomology_category: composition depends on representatives");
      }
    if (any) out.comp[{a, b, cc}] = dst;
  }

  out.identities.resize(c.n_objects());
  for (Index a = 0; a < c.n_objects(); ++a) {
    const Vec<S>& id = c.identity(a);
    if (id.size() == 0 || !out.hom(a, a)) {
      out.identities[a] = Vec<S>();
      if (out.hom(a, a)) out.identities[a] = Vec<S>::Constant(out.hom_dim(a, a), S(0));
      continue;
    }
    out.identities[a] = class_of({a, a}, id);
  }
  if (c.censoring) out.censoring = c.censoring;
  return out;
}

}  // namespace hochkit
