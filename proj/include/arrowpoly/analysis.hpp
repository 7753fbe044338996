#pragma once

#include <set>

#include "arrowpoly/poly.hpp"

namespace arrowpoly {

// Derived k-degree data of an arrow polynomial: the set AS(K), its maximum,
// and the two lower bounds read off from it.
struct KDegreeProfile {
  std::set<int> as_set;
  int max_k_degree = 0;
  int vcn_lower_bound = 0;
  int genus_lower_bound = 0;

  bool operator==(const KDegreeProfile&) const = default;
};

// Sum of index * multiplicity over the K part (0 for K-free monomials).
int k_degree(const Monomial& m);

// Set of k-degrees of the surviving summands.
std::set<int> as_set(const Polynomial& p);

// Maximum k-degree: a lower bound on the virtual crossing number.
int vcn_lower_bound(const Polynomial& p);

// Genus lower bound from the largest count n* of distinct K indices in a
// single monomial: 0 for none, 1 for one, 2 for two, and for n* >= 3 the
// largest g with 3g-3 <= n*.
int genus_lower_bound(const Polynomial& p);

KDegreeProfile analyze(const Polynomial& p);

}  // namespace arrowpoly
