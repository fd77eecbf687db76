// Copyright 2026 The bosonfft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>

#include "bosonfft/fock_state.hpp"

namespace bosonfft {

enum class DistributionKind { exact, empirical };

/// Output-state probabilities, iterated in canonical (colex) order.
struct OutcomeDistribution {
  std::map<FockState, double, ColexLess> entries;
  DistributionKind kind = DistributionKind::exact;

  double total_mass() const {
    double s = 0.0;
    for (const auto& [state, p] : entries) s += p;
    return s;
  }

  /// Missing states read as zero.
  double probability(const FockState& l) const {
    const auto it = entries.find(l);
    return it == entries.end() ? 0.0 : it->second;
  }

  std::size_t size() const noexcept { return entries.size(); }
};

}  // namespace bosonfft
