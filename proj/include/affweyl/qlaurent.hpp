#pragma once

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace affweyl {

// Laurent polynomial in q with arbitrary-precision integer coefficients.
// Invariant: no zero coefficients are stored.
struct QLaurent {
  std::map<long long, mpz_class> c;

  QLaurent() = default;
  explicit QLaurent(long long value) {
    if (value != 0) c[0] = value;
  }

  static QLaurent q_power(long long e, mpz_class coeff = 1) {
    QLaurent p;
    if (coeff != 0) p.c[e] = std::move(coeff);
    return p;
  }

  // (q-1)^eI * q^eII
  static QLaurent monomial(long long e_one, long long e_two) {
    if (e_one < 0) throw std::invalid_argument("monomial: (q-1) exponent must be >= 0");
    QLaurent p = q_power(e_two);
    QLaurent qm1;
    qm1.c[1] = 1;
    qm1.c[0] = -1;
    for (long long k = 0; k < e_one; ++k) p = p * qm1;
    return p;
  }

  bool is_zero() const { return c.empty(); }

  bool operator==(const QLaurent& o) const { return c == o.c; }

  long long degree() const {
    if (c.empty()) throw std::domain_error("degree of the zero polynomial");
    return c.rbegin()->first;
  }

  long long low_degree() const {
    if (c.empty()) throw std::domain_error("low degree of the zero polynomial");
    return c.begin()->first;
  }

  const mpz_class& leading_coeff() const {
    if (c.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c.rbegin()->second;
  }

  mpz_class coeff(long long e) const {
    auto it = c.find(e);
    return it == c.end() ? mpz_class(0) : it->second;
  }

  QLaurent& operator+=(const QLaurent& o) {
    for (auto& [e, v] : o.c) {
      auto it = c.find(e);
      if (it == c.end()) {
        c[e] = v;
      } else {
        it->second += v;
        if (it->second == 0) c.erase(it);
      }
    }
    return *this;
  }

  QLaurent operator+(const QLaurent& o) const {
    QLaurent r = *this;
    r += o;
    return r;
  }

  QLaurent operator-() const {
    QLaurent r = *this;
    for (auto& [e, v] : r.c) v = -v;
    return r;
  }

  QLaurent operator-(const QLaurent& o) const { return *this + (-o); }

  QLaurent operator*(const QLaurent& o) const {
    QLaurent r;
    for (auto& [e1, v1] : c)
      for (auto& [e2, v2] : o.c) {
        mpz_class prod = v1 * v2;
        auto it = r.c.find(e1 + e2);
        if (it == r.c.end()) {
          if (prod != 0) r.c[e1 + e2] = prod;
        } else {
          it->second += prod;
          if (it->second == 0) r.c.erase(it);
        }
      }
    return r;
  }

  QLaurent scale(const mpz_class& k) const {
    QLaurent r;
    if (k == 0) return r;
    for (auto& [e, v] : c) r.c[e] = v * k;
    return r;
  }

  QLaurent shift(long long e) const {
    QLaurent r;
    for (auto& [ex, v] : c) r.c[ex + e] = v;
    return r;
  }

  // canonical rendering, e.g. "3*q^2 - 1*q^0"
  std::string str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      mpz_class v = it->second;
      if (first) {
        if (v < 0) {
          os << "-";
          v = -v;
        }
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
        if (v < 0) v = -v;
      }
      os << v.get_str() << "*q^" << it->first;
    }
    return os.str();
  }
};

// Polynomial in (q-1) with integer coefficients; index = exponent.
struct QMinusOnePoly {
  std::vector<mpz_class> c;

  bool is_nonneg() const {
    for (auto& v : c)
      if (v < 0) return false;
    return true;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool operator==(const QMinusOnePoly& o) const { return c == o.c; }

  std::string str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long long e = (long long)c.size() - 1; e >= 0; --e) {
      mpz_class v = c[e];
      if (v == 0) continue;
      if (first) {
        if (v < 0) {
          os << "-";
          v = -v;
        }
        first = false;
      } else {
        os << (v < 0 ? " - " : " + ");
        if (v < 0) v = -v;
      }
      os << v.get_str() << "*(q-1)^" << e;
    }
    if (first) return "0";
    return os.str();
  }
};

// Change of basis q -> (q-1), by repeated synthetic division by (q-1).
// Defined for honest polynomials only.
inline QMinusOnePoly to_qm1_basis(const QLaurent& p) {
  QMinusOnePoly out;
  if (p.is_zero()) return out;
  if (p.low_degree() < 0)
    throw std::invalid_argument("to_qm1_basis: negative exponent present");
  std::vector<mpz_class> a(size_t(p.degree()) + 1, 0);
  for (auto& [e, v] : p.c) a[size_t(e)] = v;
  while (!a.empty()) {
    // divide by (q-1): remainder = value at 1, quotient lands in a[0..d-1]
    mpz_class rem = 0;
    for (long long i = (long long)a.size() - 1; i >= 0; --i) {
      mpz_class t = a[i];
      a[i] = rem;
      rem += t;
    }
    out.c.push_back(rem);
    a.pop_back();
  }
  out.trim();
  return out;
}

inline QLaurent from_qm1_basis(const QMinusOnePoly& p) {
  QLaurent qm1 = QLaurent::monomial(1, 0);
  QLaurent pow(1);
  QLaurent out;
  for (size_t e = 0; e < p.c.size(); ++e) {
    out += pow.scale(p.c[e]);
    pow = pow * qm1;
  }
  return out;
}

}  // namespace affweyl
