#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hochkit/errors.hpp"
#include "hochkit/order_complex.hpp"
#include "hochkit/poset.hpp"

namespace hochkit {

// Finite topological space on at most 64 points; opens are bitsets. Can be
// given by its open sets or by a specialization preorder (opens = down-sets).
struct FiniteSpace {
  std::vector<std::string> points;  // sorted
  std::vector<uint64_t> opens;      // sorted, contains 0 and the full set

  Index n_points() const { return static_cast<Index>(points.size()); }
  uint64_t full() const { return n_points() == 64 ? ~0ull : (1ull << n_points()) - 1; }

  Index point_index(const std::string& name) const {
    auto it = std::lower_bound(points.begin(), points.end(), name);
    if (it == points.end() || *it != name) throw ValidationError("unknown point: " + name);
    return static_cast<Index>(it - points.begin());
  }

  bool is_open(uint64_t u) const { return std::binary_search(opens.begin(), opens.end(), u); }

  void validate() const {
    if (points.size() > 64) throw ValidationError("finite space: at most 64 points supported");
    if (!std::is_sorted(points.begin(), points.end()) ||
        std::adjacent_find(points.begin(), points.end()) != points.end())
      throw ValidationError("finite space: points must be sorted and unique");
    if (!std::is_sorted(opens.begin(), opens.end()) ||
        std::adjacent_find(opens.begin(), opens.end()) != opens.end())
      throw ValidationError("finite space: opens must be sorted and unique");
    if (!is_open(0) || !is_open(full()))
      throw ValidationError("finite space: opens must contain the empty set and the whole space");
    for (uint64_t u : opens)
      for (uint64_t v : opens) {
        if (!is_open(u | v)) throw ValidationError("finite space: opens not closed under union");
        if (!is_open(u & v)) throw ValidationError("finite space: opens not closed under intersection");
      }
  }

  uint64_t minimal_open(Index pt) const {
    uint64_t m = full();
    for (uint64_t u : opens)
      if (u & (1ull << pt)) m &= u;
    if (!is_open(m))
      throw ValidationError("finite space: minimal open of " + points[pt] + " is not open");
    return m;
  }

  std::string open_name(uint64_t u) const {
    if (u == 0) return "(empty)";
    std::string s;
    for (Index i = 0; i < n_points(); ++i)
      if (u & (1ull << i)) {
        if (!s.empty()) s += "+";
        s += points[i];
      }
    return s;
  }

  uint64_t open_from_names(const std::vector<std::string>& names) const {
    uint64_t u = 0;
    for (auto& n : names) u |= 1ull << point_index(n);
    return u;
  }

  // specialization order on points: x ≼ y iff U_x ⊆ U_y
  Poset specialization_poset() const {
    Poset p(points);
    std::vector<uint64_t> mins;
    for (Index i = 0; i < n_points(); ++i) mins.push_back(minimal_open(i));
    for (Index a = 0; a < n_points(); ++a)
      for (Index b = 0; b < n_points(); ++b)
        if ((mins[a] & ~mins[b]) == 0) p.set(a, b);
    return p;
  }

  // subspace on an open set
  FiniteSpace subspace(uint64_t w) const {
    FiniteSpace s;
    std::vector<Index> keep;
    for (Index i = 0; i < n_points(); ++i)
      if (w & (1ull << i)) {
        keep.push_back(i);
        s.points.push_back(points[i]);
      }
    // trace topology: intersect every open with w and reindex
    for (uint64_t u : opens) {
      uint64_t t = 0;
      for (size_t j = 0; j < keep.size(); ++j)
        if ((u & w) & (1ull << keep[j])) t |= 1ull << j;
      s.opens.push_back(t);
    }
    std::sort(s.opens.begin(), s.opens.end());
    s.opens.erase(std::unique(s.opens.begin(), s.opens.end()), s.opens.end());
    return s;
  }
};

inline FiniteSpace space_from_opens(std::vector<std::string> points,
                                    const std::vector<std::vector<std::string>>& open_sets) {
  FiniteSpace s;
  s.points = std::move(points);
  std::sort(s.points.begin(), s.points.end());
  for (auto& o : open_sets) s.opens.push_back(s.open_from_names(o));
  s.opens.push_back(0);
  s.opens.push_back(s.full());
  std::sort(s.opens.begin(), s.opens.end());
  s.opens.erase(std::unique(s.opens.begin(), s.opens.end()), s.opens.end());
  s.validate();
  return s;
}

// Opens of the specialization preorder = down-sets; capped enumeration.
inline FiniteSpace space_from_specialization(const Poset& p, size_t max_opens = 4096) {
  FiniteSpace s;
  s.points = p.names;
  const Index n = p.size();
  if (n > 20) throw ResourceCapError("space_from_specialization: too many points for open enumeration");
  for (uint64_t u = 0; u < (1ull << n); ++u) {
    bool down = true;
    for (Index x = 0; x < n && down; ++x)
      if (u & (1ull << x))
        for (Index y = 0; y < n; ++y)
          if (p.leq(y, x) && !(u & (1ull << y))) {
            down = false;
            break;
          }
    if (down) {
      s.opens.push_back(u);
      if (s.opens.size() > max_opens) throw ResourceCapError("space_from_specialization: too many opens");
    }
  }
  s.validate();
  return s;
}

// The pseudocircle: two open points a, b under two closed points c, d.
inline FiniteSpace pseudocircle_space() {
  Poset p({"a", "b", "c", "d"});
  p.set(p.index("a"), p.index("c"));
  p.set(p.index("a"), p.index("d"));
  p.set(p.index("b"), p.index("c"));
  p.set(p.index("b"), p.index("d"));
  return space_from_specialization(p);
}

struct SpaceAnalysis {
  std::vector<uint64_t> minimal_basis;  // deduplicated minimal opens, sorted
  Poset basis_poset;                    // ordered by inclusion, named by open_name
  bool basis_verified = false;          // every open is a union of members
  int components = 0;
};

// Poset of a family of opens under inclusion, named canonically.
inline Poset opens_poset(const FiniteSpace& s, const std::vector<uint64_t>& fam) {
  std::vector<std::string> names;
  std::map<std::string, uint64_t> byname;
  for (uint64_t u : fam) {
    names.push_back(s.open_name(u));
    byname[names.back()] = u;
  }
  Poset p(names);
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < p.size(); ++b)
      if ((byname.at(p.names[a]) & ~byname.at(p.names[b])) == 0) p.set(a, b);
  p.validate();
  return p;
}

inline SpaceAnalysis space_analysis(const FiniteSpace& s) {
  s.validate();
  SpaceAnalysis out;
  for (Index i = 0; i < s.n_points(); ++i) out.minimal_basis.push_back(s.minimal_open(i));
  std::sort(out.minimal_basis.begin(), out.minimal_basis.end());
  out.minimal_basis.erase(std::unique(out.minimal_basis.begin(), out.minimal_basis.end()),
                          out.minimal_basis.end());
  out.basis_poset = opens_poset(s, out.minimal_basis);
  out.basis_verified = true;
  for (uint64_t u : s.opens) {
    uint64_t cover = 0;
    for (uint64_t b : out.minimal_basis)
      if ((b & ~u) == 0) cover |= b;
    if (cover != u) out.basis_verified = false;
  }
  // connectivity of the specialization graph
  std::vector<Index> parent(s.n_points());
  for (Index i = 0; i < s.n_points(); ++i) parent[i] = i;
  std::function<Index(Index)> find = [&](Index x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  Poset sp = s.specialization_poset();
  for (Index a = 0; a < sp.size(); ++a)
    for (Index b = 0; b < sp.size(); ++b)
      if (sp.leq(a, b)) parent[find(a)] = find(b);
  std::vector<char> roots(s.n_points(), 0);
  for (Index i = 0; i < s.n_points(); ++i) roots[find(i)] = 1;
  for (char r : roots) out.components += r;
  return out;
}

// An open is acyclic (for constant coefficients) when the order complex of
// its point subposet has vanishing higher cohomology.
template <class S>
bool open_is_acyclic(const Field<S>& k, const FiniteSpace& s, uint64_t u, int n_max = 4) {
  if (u == 0) return false;
  Poset sub = s.subspace(u).specialization_poset();
  auto dims = order_complex_cohomology(k, sub, n_max);
  for (size_t i = 1; i < dims.size(); ++i)
    if (dims[i] != 0) return false;
  return true;
}

// connected components of an open subspace (specialization connectivity)
inline std::vector<uint64_t> open_components(const FiniteSpace& s, uint64_t u) {
  std::vector<Index> pts;
  for (Index i = 0; i < s.n_points(); ++i)
    if (u & (1ull << i)) pts.push_back(i);
  std::map<Index, Index> parent;
  for (Index p : pts) parent[p] = p;
  std::function<Index(Index)> find = [&](Index x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  Poset sp = s.specialization_poset();
  for (Index a : pts)
    for (Index b : pts)
      if (sp.leq(a, b)) parent[find(a)] = find(b);
  std::map<Index, uint64_t> comp;
  for (Index p : pts) comp[find(p)] |= 1ull << p;
  std::vector<uint64_t> out;
  for (auto& [root, mask] : comp) out.push_back(mask);
  std::sort(out.begin(), out.end());
  return out;
}

template <class S>
std::vector<uint64_t> acyclic_opens(const Field<S>& k, const FiniteSpace& s, int n_max = 4) {
  std::vector<uint64_t> out;
  for (uint64_t u : s.opens)
    if (u != 0 && open_is_acyclic(k, s, u, n_max)) out.push_back(u);
  return out;
}

}  // namespace hochkit
