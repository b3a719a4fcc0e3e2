#pragma once

#include "dw/error.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace dw {

using Element = std::uint32_t;

/// Finite group stored as a dense multiplication table.
///
/// Elements are the indices 0..order()-1; `mul(g, h)` reads row g, column h.
/// Construction validates the group axioms, so every FiniteGroup in
/// circulation is a genuine group. Immutable after construction.
class FiniteGroup {
public:
  /// Validates `table` and computes identity and inverses.
  ///
  /// Errors, in the order they are checked:
  ///   InvalidTable   - empty, not square, or an entry out of range
  ///   NotLatinSquare - a row or column repeats an element
  ///   NoIdentity     - no two-sided identity
  ///   NotAssociative - names the first (a,b,c) in lexicographic order
  ///   NoInverse      - some element lacks a two-sided inverse
  static FiniteGroup from_table(const std::vector<std::vector<Element>>& table,
                                std::vector<std::string> names = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw Error("InvalidTable", "group table is empty");
    for (std::size_t r = 0; r < n; ++r) {
      if (table[r].size() != n)
        throw Error("InvalidTable", "row " + std::to_string(r) + " has " +
                                        std::to_string(table[r].size()) + " entries, expected " +
                                        std::to_string(n));
      for (Element x : table[r])
        if (x >= n)
          throw Error("InvalidTable", "entry " + std::to_string(x) + " in row " +
                                          std::to_string(r) + " is out of range");
    }
    if (!names.empty() && names.size() != n)
      throw Error("InvalidTable", "names list has wrong length");

    FiniteGroup g;
    g.order_ = n;
    g.table_.resize(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) g.table_[r * n + c] = table[r][c];

    std::vector<char> seen(n);
    for (std::size_t r = 0; r < n; ++r) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t c = 0; c < n; ++c) {
        Element x = g.table_[r * n + c];
        if (seen[x]) throw Error("NotLatinSquare", "row " + std::to_string(r) + " repeats element " + std::to_string(x));
        seen[x] = 1;
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t r = 0; r < n; ++r) {
        Element x = g.table_[r * n + c];
        if (seen[x]) throw Error("NotLatinSquare", "column " + std::to_string(c) + " repeats element " + std::to_string(x));
        seen[x] = 1;
      }
    }

    std::optional<Element> identity;
    for (Element e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = g.mul(e, x) == x && g.mul(x, e) == x;
      if (ok) identity = e;
    }
    if (!identity) throw Error("NoIdentity", "no element acts trivially on both sides");
    g.identity_ = *identity;

    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
            throw Error("NotAssociative", "(a*b)*c != a*(b*c) at (" + std::to_string(a) + "," +
                                              std::to_string(b) + "," + std::to_string(c) + ")");

    g.inverse_.assign(n, 0);
    for (Element a = 0; a < n; ++a) {
      bool found = false;
      for (Element b = 0; b < n && !found; ++b)
        if (g.mul(a, b) == g.identity_ && g.mul(b, a) == g.identity_) {
          g.inverse_[a] = b;
          found = true;
        }
      if (!found) throw Error("NoInverse", "element " + std::to_string(a) + " has no inverse");
    }

    if (names.empty()) {
      names.reserve(n);
      for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    }
    g.names_ = std::move(names);
    return g;
  }

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  Element mul(Element a, Element b) const noexcept { return table_[a * order_ + b]; }
  Element inv(Element a) const noexcept { return inverse_[a]; }
  const std::string& name(Element a) const { return names_.at(a); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::vector<std::vector<Element>> table() const {
    std::vector<std::vector<Element>> rows(order_);
    for (std::size_t r = 0; r < order_; ++r)
      rows[r].assign(table_.begin() + static_cast<std::ptrdiff_t>(r * order_),
                     table_.begin() + static_cast<std::ptrdiff_t>((r + 1) * order_));
    return rows;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

private:
  FiniteGroup() = default;

  std::size_t order_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
};

/// Z/n under addition; element i is the residue i.
inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error("InvalidGroup", "cyclic group order must be positive");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
  return FiniteGroup::from_table(t);
}

/// S3 as permutations of {0,1,2} in lexicographic order of their one-line
/// notation, composed right to left: (g*h)(x) = g(h(x)). Element 0 is "012".
inline FiniteGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto index_of = [&](const std::array<int, 3>& q) {
    return static_cast<Element>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<Element>> t(6, std::vector<Element>(6));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < 6; ++a) {
    names.push_back(std::to_string(perms[a][0]) + std::to_string(perms[a][1]) + std::to_string(perms[a][2]));
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(c);
    }
  }
  return FiniteGroup::from_table(t, names);
}

/// Built-in group names: "Z1", "Z2", ..., and "S3".
inline std::optional<FiniteGroup> builtin_group(const std::string& spec) {
  if (spec == "S3") return symmetric_group_3();
  if (spec.size() >= 2 && spec[0] == 'Z' &&
      std::all_of(spec.begin() + 1, spec.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (spec.size() > 6) throw Error("InvalidGroup", "cyclic group order too large: " + spec);
    std::size_t n = std::stoul(spec.substr(1));
    if (n == 0) throw Error("InvalidGroup", "Z0 is not a finite group");
    return cyclic_group(n);
  }
  return std::nullopt;
}

/// If `g` is literally Z/n as produced by cyclic_group (element i is the
/// residue i), returns n.
inline std::optional<std::size_t> as_cyclic(const FiniteGroup& g) {
  const std::size_t n = g.order();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (g.mul(a, b) != (a + b) % n) return std::nullopt;
  return n;
}

}  // namespace dw
