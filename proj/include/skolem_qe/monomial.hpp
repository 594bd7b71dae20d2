/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "skolem_qe/variable.hpp"

namespace skolem_qe {

/// Power product of variables. Factors are sorted by variable and carry
/// positive exponents; the empty product is the monomial 1.
class Monomial {
 public:
  using Factor = std::pair<VarId, unsigned>;

  Monomial() = default;
  explicit Monomial(VarId var, unsigned exponent = 1) {
    if (exponent > 0) {
      factors_.emplace_back(std::move(var), exponent);
      degree_ = exponent;
    }
  }

  /// Builds a monomial from arbitrary factors, merging repeats and dropping zero exponents.
  static Monomial from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    Monomial m;
    for (auto& [var, exp] : factors) {
      if (exp == 0) continue;
      if (!m.factors_.empty() && m.factors_.back().first == var)
        m.factors_.back().second += exp;
      else
        m.factors_.emplace_back(std::move(var), exp);
      m.degree_ += exp;
    }
    return m;
  }

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return factors_.empty(); }

  unsigned exponent(const VarId& var) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                               [](const Factor& f, const VarId& v) { return f.first < v; });
    return (it != factors_.end() && it->first == var) ? it->second : 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
        r.factors_.push_back(*i++);
      } else if (i == a.factors_.end() || j->first < i->first) {
        r.factors_.push_back(*j++);
      } else {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.factors_ == b.factors_;
  }

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

/// Graded-lexicographic order: lower total degree first; within a degree the
/// monomial with the larger exponent on the highest-priority variable comes
/// first. With x1 before x2 this lists 1, x1, x2, x1^2, x1*x2, x2^2.
struct GrlexOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (fa[k].first != fb[k].first) return fa[k].first < fb[k].first;
      if (fa[k].second != fb[k].second) return fa[k].second > fb[k].second;
    }
    // Equal degree and equal common prefix means equal monomials.
    return false;
  }
};

/// `1`, `x1`, `x1^2*x2`.
inline std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [var, exp] : m.factors()) {
    if (!out.empty()) out += '*';
    out += var.name();
    if (exp > 1) out += '^' + std::to_string(exp);
  }
  return out;
}

}  // namespace skolem_qe
