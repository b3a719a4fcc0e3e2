#pragma once

#include "dw/error.hpp"
#include "dw/group.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dw {

/// Residue in Z/k, the additive coefficient group.
using Residue = std::uint32_t;

/// A function G^n -> Z/k stored densely in row-major tuple order:
/// (g_1,...,g_n) lives at index sum_i g_i |G|^(n-i).
class Cochain {
public:
  Cochain(FiniteGroup group, std::size_t modulus, std::size_t degree)
      : group_(std::move(group)), modulus_(modulus), degree_(degree) {
    validate_shape();
    values_.assign(size_for(group_.order(), degree_), 0);
  }

  Cochain(FiniteGroup group, std::size_t modulus, std::size_t degree, std::vector<Residue> values)
      : group_(std::move(group)), modulus_(modulus), degree_(degree), values_(std::move(values)) {
    validate_shape();
    const std::size_t expected = size_for(group_.order(), degree_);
    if (values_.size() != expected)
      throw Error("InvalidCochain", "expected " + std::to_string(expected) + " values, got " +
                                        std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] >= modulus_)
        throw Error("InvalidCochain", "value " + std::to_string(values_[i]) + " at index " +
                                          std::to_string(i) + " is not a residue mod " +
                                          std::to_string(modulus_));
  }

  /// Tabulates f over every tuple; f's result is reduced mod k.
  static Cochain from_function(FiniteGroup group, std::size_t modulus, std::size_t degree,
                               const std::function<std::int64_t(std::span<const Element>)>& f) {
    Cochain c(std::move(group), modulus, degree);
    std::vector<Element> tuple(degree, 0);
    for (std::size_t idx = 0; idx < c.values_.size(); ++idx) {
      c.decode(idx, tuple);
      c.values_[idx] = c.reduce(f(tuple));
    }
    return c;
  }

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t modulus() const noexcept { return modulus_; }
  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Residue>& values() const noexcept { return values_; }

  Residue at(std::span<const Element> tuple) const { return values_[encode(tuple)]; }

  /// Degree-3 fast path used by the state sum.
  Residue operator()(Element a, Element b, Element c) const noexcept {
    const std::size_t n = group_.order();
    return values_[(static_cast<std::size_t>(a) * n + b) * n + c];
  }

  std::size_t encode(std::span<const Element> tuple) const {
    if (tuple.size() != degree_) throw Error("DegreeMismatch", "tuple length differs from cochain degree");
    std::size_t idx = 0;
    for (Element g : tuple) idx = idx * group_.order() + g;
    return idx;
  }

  void decode(std::size_t idx, std::vector<Element>& tuple) const {
    tuple.resize(degree_);
    for (std::size_t i = degree_; i-- > 0;) {
      tuple[i] = static_cast<Element>(idx % group_.order());
      idx /= group_.order();
    }
  }

  Residue reduce(std::int64_t v) const noexcept {
    const auto k = static_cast<std::int64_t>(modulus_);
    return static_cast<Residue>(((v % k) + k) % k);
  }

  bool is_zero() const noexcept {
    for (Residue v : values_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.modulus_ == b.modulus_ && a.degree_ == b.degree_ && a.group_ == b.group_ &&
           a.values_ == b.values_;
  }

private:
  static std::size_t size_for(std::size_t order, std::size_t degree) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < degree; ++i) {
      s *= order;
      if (s > (std::size_t{1} << 28)) throw Error("InvalidCochain", "cochain table too large");
    }
    return s;
  }
  void validate_shape() const {
    if (modulus_ == 0) throw Error("InvalidModulus", "coefficient modulus must be positive");
    if (modulus_ > (std::size_t{1} << 20)) throw Error("InvalidModulus", "coefficient modulus too large");
    if (degree_ == 0) throw Error("InvalidCochain", "cochain degree must be at least 1");
  }

  FiniteGroup group_;
  std::size_t modulus_;
  std::size_t degree_;
  std::vector<Residue> values_;
};

/// Bar coboundary: (d b)[g_1|...|g_{n+1}] = b[g_2|...|g_{n+1}]
///   + sum_{i=1..n} (-1)^i b[g_1|...|g_i g_{i+1}|...|g_{n+1}]
///   + (-1)^{n+1} b[g_1|...|g_n], all mod k.
inline Cochain coboundary(const Cochain& beta) {
  const FiniteGroup& g = beta.group();
  const std::size_t n = beta.degree();
  Cochain out(g, beta.modulus(), n + 1);
  std::vector<Element> tuple;
  std::vector<Element> face(n);
  std::vector<Residue> vals(out.values().size());
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    out.decode(idx, tuple);
    std::int64_t sum = 0;

    for (std::size_t j = 0; j < n; ++j) face[j] = tuple[j + 1];
    sum += beta.at(face);

    for (std::size_t i = 0; i < n; ++i) {
      // merge positions i and i+1
      for (std::size_t j = 0, s = 0; j < n; ++j, ++s) {
        if (j == i) {
          face[j] = g.mul(tuple[s], tuple[s + 1]);
          ++s;
        } else {
          face[j] = tuple[s];
        }
      }
      const std::int64_t term = beta.at(face);
      sum += ((i + 1) % 2 == 0) ? term : -term;
    }

    for (std::size_t j = 0; j < n; ++j) face[j] = tuple[j];
    const std::int64_t last = beta.at(face);
    sum += ((n + 1) % 2 == 0) ? last : -last;

    vals[idx] = out.reduce(sum);
  }
  return Cochain(g, beta.modulus(), n + 1, std::move(vals));
}

struct CocycleCheck {
  bool is_cocycle = true;
  /// Lexicographically first tuple where the coboundary is nonzero.
  std::optional<std::vector<Element>> witness;
};

inline CocycleCheck is_cocycle(const Cochain& alpha) {
  const Cochain d = coboundary(alpha);
  for (std::size_t idx = 0; idx < d.values().size(); ++idx) {
    if (d.values()[idx] != 0) {
      std::vector<Element> t;
      d.decode(idx, t);
      return {false, std::move(t)};
    }
  }
  return {};
}

inline Cochain trivial_cochain(const FiniteGroup& g, std::size_t modulus, std::size_t degree = 3) {
  return Cochain(g, modulus, degree);
}

/// alpha_p[a|b|c] = p * a * floor((b + c) / n) mod n on G = Z/n, coefficients Z/n.
inline Cochain carry_cocycle(std::size_t n, std::int64_t p) {
  if (n == 0) throw Error("InvalidGroup", "carry cocycle needs n >= 1");
  const auto nn = static_cast<std::int64_t>(n);
  return Cochain::from_function(cyclic_group(n), n, 3, [&](std::span<const Element> t) {
    const std::int64_t a = t[0], b = t[1], c = t[2];
    return (p % nn) * a * ((b + c) / nn);
  });
}

/// alpha[a|b|c] = a b c on Z/2 with Z/2 coefficients.
inline Cochain product_z2_cocycle() {
  return Cochain::from_function(cyclic_group(2), 2, 3, [](std::span<const Element> t) {
    return static_cast<std::int64_t>(t[0] * t[1] * t[2]);
  });
}

/// alpha + d beta. Errors: DegreeMismatch, GroupMismatch (also covers the
/// coefficient modulus).
inline Cochain cohomologous_perturb(const Cochain& alpha, const Cochain& beta) {
  if (alpha.degree() != 3 || beta.degree() != 2)
    throw Error("DegreeMismatch", "expected a degree-3 cochain and a degree-2 cochain, got degrees " +
                                      std::to_string(alpha.degree()) + " and " +
                                      std::to_string(beta.degree()));
  if (!(alpha.group() == beta.group()) || alpha.modulus() != beta.modulus())
    throw Error("GroupMismatch", "cochains are over different groups or coefficient moduli");
  const Cochain d = coboundary(beta);
  std::vector<Residue> vals(alpha.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = static_cast<Residue>((alpha.values()[i] + d.values()[i]) % alpha.modulus());
  return Cochain(alpha.group(), alpha.modulus(), 3, std::move(vals));
}

/// Uniformly random cochain; `rng() % k` keeps draws identical across
/// standard library implementations.
inline Cochain random_cochain(const FiniteGroup& g, std::size_t modulus, std::size_t degree,
                              std::mt19937_64& rng) {
  Cochain shape(g, modulus, degree);
  std::vector<Residue> vals(shape.values().size());
  for (auto& v : vals) v = static_cast<Residue>(rng() % modulus);
  return Cochain(g, modulus, degree, std::move(vals));
}

}  // namespace dw
