// Copyright 2026 The tanglekit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tanglekit/filter_engine.hpp"
#include "tanglekit/qstate.hpp"

namespace tanglekit::detail {

/// Filter expectation evaluated in double-double (compensated) arithmetic.
///
/// Determinant-one local operators can be arbitrarily ill-conditioned, and
/// the exact cancellation behind filter invariance then happens across
/// contraction terms that are larger than the result by many orders; plain
/// doubles leave an eps-times-term-scale residue that swamps tight invariance
/// tolerances for high-order filters. This path carries ~31 significant
/// digits through the transform, the bilinear forms, and the contraction sum,
/// so the residue reflects the algebra rather than the arithmetic. Roughly
/// 20x slower than evaluate(); used by the invariance checks only.
Complex evaluate_extended(const FilterSpec& f, const PureState& psi);

/// Same, with site-local operators applied to the state first (the transform
/// participates in the compensated pipeline; applying it in plain double
/// would already forfeit the digits the contraction needs).
Complex evaluate_extended_transformed(const FilterSpec& f, const PureState& psi,
                                      const std::vector<Eigen::Matrix2cd>& ops);

}  // namespace tanglekit::detail
