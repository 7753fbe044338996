#include "arrowpoly/poly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace arrowpoly {

int Monomial::k_degree() const {
  int degree = 0;
  for (int index : k_indices) degree += index;
  return degree;
}

bool MonomialOrder::operator()(const Monomial& lhs, const Monomial& rhs) const {
  const int ld = lhs.k_degree();
  const int rd = rhs.k_degree();
  if (ld != rd) return ld < rd;
  if (lhs.k_indices != rhs.k_indices) return lhs.k_indices < rhs.k_indices;
  return lhs.a_power < rhs.a_power;
}

Polynomial::Polynomial(long long constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Coeff(constant));
}

Polynomial::Polynomial(Monomial m, Coeff c) {
  assert(std::is_sorted(m.k_indices.begin(), m.k_indices.end()));
  if (c != 0) terms_.emplace(std::move(m), std::move(c));
}

Polynomial Polynomial::a_power(int exponent, Coeff c) {
  return Polynomial(Monomial{exponent, {}}, std::move(c));
}

Polynomial Polynomial::k_var(int index, Coeff c) {
  if (index < 1) throw std::invalid_argument("K index must be positive");
  return Polynomial(Monomial{0, {index}}, std::move(c));
}

void Polynomial::add_term(const Monomial& m, const Coeff& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
  lhs += rhs;
  return lhs;
}

Polynomial operator-(Polynomial lhs, const Polynomial& rhs) {
  lhs -= rhs;
  return lhs;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  Polynomial out;
  std::vector<int> merged;
  for (const auto& [lm, lc] : lhs.terms_) {
    for (const auto& [rm, rc] : rhs.terms_) {
      merged.clear();
      merged.resize(lm.k_indices.size() + rm.k_indices.size());
      std::merge(lm.k_indices.begin(), lm.k_indices.end(), rm.k_indices.begin(),
                 rm.k_indices.end(), merged.begin());
      out.add_term(Monomial{lm.a_power + rm.a_power, merged}, lc * rc);
    }
  }
  return out;
}

Polynomial d_power(int k) {
  if (k < 0) throw std::invalid_argument("d_power exponent must be nonnegative");
  // Binomial expansion of (-A^2 - A^-2)^k: sign is uniform (-1)^k.
  Polynomial out;
  Coeff binom = 1;
  for (int j = 0; j <= k; ++j) {
    Coeff c = (k % 2 == 0) ? binom : -binom;
    out.add_term(Monomial{2 * (k - j) - 2 * j, {}}, c);
    binom = binom * (k - j) / (j + 1);
  }
  return out;
}

Polynomial normalize(const Polynomial& p, int writhe) {
  const bool negate = (writhe % 2) != 0;
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    out.add_term(Monomial{m.a_power - 3 * writhe, m.k_indices}, negate ? -c : c);
  }
  return out;
}

Polynomial substitute_flat(const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    out.add_term(Monomial{0, m.k_indices}, c);
  }
  return out;
}

}  // namespace arrowpoly
