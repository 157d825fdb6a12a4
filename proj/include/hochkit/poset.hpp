#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hochkit/errors.hpp"
#include "hochkit/linalg.hpp"

namespace hochkit {

// Finite poset with sorted element names and a dense order matrix.
struct Poset {
  std::vector<std::string> names;
  std::vector<char> leq_;  // leq_[a*n+b] <=> a <= b

  Poset() = default;
  explicit Poset(std::vector<std::string> ns) : names(std::move(ns)) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    leq_.assign(names.size() * names.size(), 0);
    for (Index a = 0; a < size(); ++a) set(a, a);
  }

  Index size() const { return static_cast<Index>(names.size()); }
  bool leq(Index a, Index b) const { return leq_[a * size() + b] != 0; }
  void set(Index a, Index b) { leq_[a * size() + b] = 1; }

  Index index(const std::string& name) const {
    auto it = std::lower_bound(names.begin(), names.end(), name);
    if (it == names.end() || *it != name) throw ValidationError("unknown poset element: " + name);
    return static_cast<Index>(it - names.begin());
  }

  void close_transitively() {
    const Index n = size();
    for (Index k = 0; k < n; ++k)
      for (Index a = 0; a < n; ++a)
        if (leq(a, k))
          for (Index b = 0; b < n; ++b)
            if (leq(k, b)) set(a, b);
  }

  void validate() const {
    const Index n = size();
    for (Index a = 0; a < n; ++a) {
      if (!leq(a, a)) throw ValidationError("poset: not reflexive at " + names[a]);
      for (Index b = 0; b < n; ++b) {
        if (a != b && leq(a, b) && leq(b, a))
          throw ValidationError("poset: not antisymmetric at " + names[a] + "," + names[b]);
        if (leq(a, b))
          for (Index c = 0; c < n; ++c)
            if (leq(b, c) && !leq(a, c))
              throw ValidationError("poset: not transitive at " + names[a] + "," + names[b] + "," + names[c]);
      }
    }
  }

  Poset restricted(const std::vector<Index>& keep) const {
    Poset out;
    for (Index i : keep) out.names.push_back(names[i]);
    std::vector<Index> sorted = keep;
    std::sort(sorted.begin(), sorted.end(),
              [&](Index a, Index b) { return names[a] < names[b]; });
    out.names.clear();
    for (Index i : sorted) out.names.push_back(names[i]);
    out.leq_.assign(out.size() * out.size(), 0);
    for (Index a = 0; a < out.size(); ++a)
      for (Index b = 0; b < out.size(); ++b)
        if (leq(sorted[a], sorted[b])) out.set(a, b);
    return out;
  }

  // weakly increasing chains x_0 <= ... <= x_p (repeats allowed)
  std::vector<std::vector<Index>> weak_chains(int p) const {
    std::vector<std::vector<Index>> out;
    std::vector<Index> cur;
    weak_rec(p, cur, out);
    return out;
  }

  // strictly increasing chains x_0 < ... < x_p
  std::vector<std::vector<Index>> strict_chains(int p) const {
    std::vector<std::vector<Index>> out;
    std::vector<Index> cur;
    strict_rec(p, cur, out);
    return out;
  }

 private:
  void weak_rec(int left, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) const {
    if (static_cast<int>(cur.size()) == left + 1) {
      out.push_back(cur);
      return;
    }
    for (Index x = 0; x < size(); ++x) {
      if (!cur.empty() && !leq(cur.back(), x)) continue;
      cur.push_back(x);
      weak_rec(left, cur, out);
      cur.pop_back();
    }
  }
  void strict_rec(int left, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) const {
    if (static_cast<int>(cur.size()) == left + 1) {
      out.push_back(cur);
      return;
    }
    for (Index x = 0; x < size(); ++x) {
      if (!cur.empty() && (cur.back() == x || !leq(cur.back(), x))) continue;
      cur.push_back(x);
      strict_rec(left, cur, out);
      cur.pop_back();
    }
  }
};

}  // namespace hochkit
