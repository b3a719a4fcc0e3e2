#pragma once

#include "dw/error.hpp"
#include "dw/rational.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace dw {

/// Coefficients of the k-th cyclotomic polynomial, constant term first.
/// Computed as (x^k - 1) divided by every Phi_d with d | k, d < k.
inline std::vector<Integer> cyclotomic_polynomial(std::size_t k) {
  if (k == 0) throw Error("InvalidModulus", "cyclotomic index must be positive");
  std::vector<Integer> p(k + 1, 0);
  p[0] = -1;
  p[k] = 1;
  for (std::size_t d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    const std::vector<Integer> q = cyclotomic_polynomial(d);
    // long division by the monic q
    const std::size_t dq = q.size() - 1;
    std::vector<Integer> quot(p.size() - dq, 0);
    for (std::size_t i = p.size(); i-- > dq;) {
      const Integer c = p[i];
      quot[i - dq] = c;
      if (c != 0)
        for (std::size_t j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
    }
    p = std::move(quot);
  }
  return p;
}

/// Exact element of Q(zeta_k), represented by a polynomial in
/// Q[x]/(x^k - 1) with x standing for zeta_k = exp(2 pi i / k).
///
/// The representative is not canonical: equality is decided after reducing
/// the difference modulo Phi_k (see `equal`). Arithmetic never leaves the
/// rationals.
class CyclotomicValue {
public:
  explicit CyclotomicValue(std::size_t modulus) : coeffs_(check_modulus(modulus), Rational(0)) {}

  CyclotomicValue(std::size_t modulus, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    check_modulus(modulus);
    if (coeffs_.size() != modulus)
      throw Error("InvalidModulus", "coefficient vector length " + std::to_string(coeffs_.size()) +
                                        " does not match modulus " + std::to_string(modulus));
  }

  static CyclotomicValue zero(std::size_t k) { return CyclotomicValue(k); }

  static CyclotomicValue monomial(std::size_t k, std::size_t exponent, Rational c = 1) {
    CyclotomicValue v(k);
    v.coeffs_[exponent % k] = std::move(c);
    return v;
  }

  static CyclotomicValue constant(std::size_t k, Rational c) { return monomial(k, 0, std::move(c)); }

  std::size_t modulus() const noexcept { return coeffs_.size(); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t j) const { return coeffs_.at(j); }

  CyclotomicValue& operator+=(const CyclotomicValue& o) {
    same_modulus(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  CyclotomicValue& operator-=(const CyclotomicValue& o) {
    same_modulus(o);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
    return *this;
  }
  CyclotomicValue& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  CyclotomicValue& operator/=(const Integer& d) {
    if (d <= 0) throw Error("DivisionByNonPositive", "scalar division requires a positive integer");
    for (auto& c : coeffs_) c /= Rational(d);
    return *this;
  }

  friend CyclotomicValue operator+(CyclotomicValue a, const CyclotomicValue& b) { return a += b; }
  friend CyclotomicValue operator-(CyclotomicValue a, const CyclotomicValue& b) { return a -= b; }
  friend CyclotomicValue operator*(CyclotomicValue a, const Rational& s) { return a *= s; }
  friend CyclotomicValue operator/(CyclotomicValue a, const Integer& d) { return a /= d; }

  /// Product in Q[x]/(x^k - 1): exponents add mod k.
  friend CyclotomicValue operator*(const CyclotomicValue& a, const CyclotomicValue& b) {
    a.same_modulus(b);
    const std::size_t k = a.modulus();
    CyclotomicValue r(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (b.coeffs_[j] != 0) r.coeffs_[(i + j) % k] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  /// Image under x -> x^{k-1}, i.e. complex conjugation on Q(zeta_k).
  CyclotomicValue conjugate() const {
    const std::size_t k = modulus();
    CyclotomicValue r(k);
    for (std::size_t j = 0; j < k; ++j) r.coeffs_[(k - j) % k] = coeffs_[j];
    return r;
  }

  /// Remainder modulo Phi_k; length deg(Phi_k). This is the canonical form.
  std::vector<Rational> reduced() const {
    const std::vector<Integer> phi = cyclotomic_polynomial(modulus());
    const std::size_t deg = phi.size() - 1;
    std::vector<Rational> r = coeffs_;
    for (std::size_t i = r.size(); i-- > deg;) {
      if (r[i] == 0) continue;
      const Rational c = r[i];
      for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * Rational(phi[j]);
    }
    r.resize(deg);
    return r;
  }

  bool is_zero() const {
    for (const auto& c : reduced())
      if (c != 0) return false;
    return true;
  }

  /// Floating-point evaluation for display only; never used for decisions.
  std::complex<double> to_complex() const {
    const std::size_t k = modulus();
    std::complex<double> z{0.0, 0.0};
    for (std::size_t j = 0; j < k; ++j) {
      if (coeffs_[j] == 0) continue;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
      z += coeffs_[j].convert_to<double>() * std::polar(1.0, angle);
    }
    return z;
  }

private:
  static std::size_t check_modulus(std::size_t k) {
    if (k == 0) throw Error("InvalidModulus", "cyclotomic modulus must be positive");
    return k;
  }
  void same_modulus(const CyclotomicValue& o) const {
    if (o.modulus() != modulus())
      throw Error("ModulusMismatch", "moduli " + std::to_string(modulus()) + " and " +
                                         std::to_string(o.modulus()) + " differ");
  }

  std::vector<Rational> coeffs_;
};

/// True iff u and v denote the same element of Q(zeta_k).
inline bool cyclotomic_equal(const CyclotomicValue& u, const CyclotomicValue& v) {
  if (u.modulus() != v.modulus())
    throw Error("ModulusMismatch", "moduli " + std::to_string(u.modulus()) + " and " +
                                       std::to_string(v.modulus()) + " differ");
  return (u - v).is_zero();
}

inline std::complex<double> cyclotomic_to_complex(const CyclotomicValue& u) { return u.to_complex(); }

}  // namespace dw
