/*
 * Copyright 2026 The revspy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// The acceptance suite shared by `revspy selftest` and the acceptance test
// binary. Each criterion reports PASS, FAIL or SKIP (the latter only when
// the solver budget is exhausted).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "revspy/arena.hpp"

namespace revspy {

struct AcceptanceOptions {
  unsigned threads = 1;
  /// Solver state budget; 0 means the default (REVSPY_BUDGET or built-in).
  std::uint64_t budget = 0;
  /// Proof tree file to verify instead of the built-in tree.
  std::optional<std::string> tree_path;
};

enum class CriterionStatus { Pass, Fail, Skip };

struct CriterionResult {
  int id = 0;
  std::string title;
  CriterionStatus status = CriterionStatus::Fail;
  std::string detail;
  /// Deterministic summary of everything the criterion observed; equal
  /// across thread counts.
  std::string digest;
  double seconds = 0;
  std::string line() const;
};

inline constexpr int kCriteria = 11;

/// Runs criteria 1..11 in order; `on_result` sees each result as it lands.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// Runs one criterion (1..11).
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Non-isomorphic trees on n vertices (n >= 1), generated from Pruefer
/// sequences and deduplicated by canonical form.
std::vector<Arena> nonisomorphic_trees(std::size_t n);

/// Largest change of any order statistic under a per-element perturbation
/// of at most one.
int order_statistic_shift(const std::vector<int>& values,
                          const std::vector<int>& perturbed);

}  // namespace revspy
