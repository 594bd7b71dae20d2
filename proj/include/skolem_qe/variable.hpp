/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "skolem_qe/error.hpp"
#include "skolem_qe/rational.hpp"

namespace skolem_qe {

/// Program variables are the x_i of the input formula; unknowns are template
/// coefficients, certificate multipliers and SOS factor entries.
enum class VarKind : std::uint8_t { Program = 0, Unknown = 1 };

/// A variable identity. `rank` is the declaration position within its kind and
/// drives monomial ordering (lower rank = higher priority).
class VarId {
 public:
  VarId() = default;
  VarId(VarKind kind, std::uint32_t rank, std::string name)
      : kind_(kind), rank_(rank), name_(std::move(name)) {}

  static VarId program(std::string name, std::uint32_t rank) {
    return VarId(VarKind::Program, rank, std::move(name));
  }
  static VarId unknown(std::string name, std::uint32_t rank) {
    return VarId(VarKind::Unknown, rank, std::move(name));
  }

  VarKind kind() const noexcept { return kind_; }
  std::uint32_t rank() const noexcept { return rank_; }
  const std::string& name() const noexcept { return name_; }
  bool is_program() const noexcept { return kind_ == VarKind::Program; }
  bool is_unknown() const noexcept { return kind_ == VarKind::Unknown; }

  friend bool operator==(const VarId&, const VarId&) = default;
  friend std::strong_ordering operator<=>(const VarId& a, const VarId& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    return a.name_.compare(b.name_) <=> 0;
  }

 private:
  VarKind kind_ = VarKind::Program;
  std::uint32_t rank_ = 0;
  std::string name_;
};

/// Assignment of rational values to variables of either kind.
using Assignment = std::map<VarId, Rational>;

/// Hands out fresh unknowns with unique names and ascending ranks, so every
/// unknown of one pipeline run is ordered by creation.
class UnknownFactory {
 public:
  VarId fresh(std::string name) {
    if (!names_.insert(name).second)
      throw Error(ErrorCode::InvalidArgument, "unknown '" + name + "' declared twice");
    return VarId::unknown(std::move(name), next_rank_++);
  }

  /// Serial number for a group of unknowns (one per encoded entailment).
  std::uint32_t next_group() { return next_group_++; }

  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::uint32_t next_rank_ = 0;
  std::uint32_t next_group_ = 0;
  std::set<std::string> names_;
};

}  // namespace skolem_qe
