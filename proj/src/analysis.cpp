#include "arrowpoly/analysis.hpp"

#include <algorithm>

namespace arrowpoly {

int k_degree(const Monomial& m) { return m.k_degree(); }

std::set<int> as_set(const Polynomial& p) {
  std::set<int> out;
  for (const auto& [m, c] : p.terms()) out.insert(m.k_degree());
  return out;
}

int vcn_lower_bound(const Polynomial& p) {
  int best = 0;
  for (const auto& [m, c] : p.terms()) best = std::max(best, m.k_degree());
  return best;
}

int genus_lower_bound(const Polynomial& p) {
  int distinct_max = 0;
  for (const auto& [m, c] : p.terms()) {
    int distinct = 0;
    int previous = 0;
    for (int index : m.k_indices) {
      if (index != previous) ++distinct;
      previous = index;
    }
    distinct_max = std::max(distinct_max, distinct);
  }
  if (distinct_max <= 2) return distinct_max;
  // Largest g with 3g-3 <= n*. (n* = 2 already forces genus 2: two disjoint
  // essential curves with different arrow numbers cannot lie on a torus.)
  return distinct_max / 3 + 1;
}

KDegreeProfile analyze(const Polynomial& p) {
  KDegreeProfile profile;
  profile.as_set = as_set(p);
  profile.max_k_degree = vcn_lower_bound(p);
  profile.vcn_lower_bound = profile.max_k_degree;
  profile.genus_lower_bound = genus_lower_bound(p);
  return profile;
}

}  // namespace arrowpoly
