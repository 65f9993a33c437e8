// Copyright 2026 The hypinit Authors.
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

#include <span>
#include <string_view>
#include <vector>

#include "hypinit/differentiation.hpp"

namespace hypinit {

enum class ScoreKind { S1, S2, S3 };
enum class OmegaKind { Trace, LogDet, Harmonic };

std::string_view to_string(ScoreKind kind);
std::string_view to_string(OmegaKind kind);
ScoreKind parse_score_kind(std::string_view name);
OmegaKind parse_omega_kind(std::string_view name);

struct ScoreSpec {
  ScoreKind kind = ScoreKind::S1;
  OmegaKind omega = OmegaKind::Trace;
  int t = 2;                      ///< gradient moment order (S2, S3)
  double w = 0.9;                 ///< S3 mixing weight on the gradient part
  double eps = kDefaultStabilizer; ///< QFIM stabilizer
  int k_eigs = 5;                 ///< harmonic: leading eigenvalues used
  double harmonic_scale = 1.0;    ///< harmonic: K

  void validate() const;
};

struct ScoreValue {
  double raw = 0.0;
  double utility = 0.0;
};

/// Scalar reduction of the QFIM. The stabilizer is applied here:
/// trace -> Tr(F) + p eps; log-det -> sum log(lambda_i + eps);
/// harmonic -> K sum_{i < min(k, p)} 1 / (lambda_i + eps) over the largest
/// eigenvalues. Negative round-off eigenvalues are clipped to 0 first.
double omega_reduce(const QfimMatrix &qfim, const ScoreSpec &spec);

/// (1/p) sum |g_mu|^t.
double order_statistic(const Gradient &g, int t);

/// S1 = Omega(F), S2 = M^t(grad C), S3 = (1 - w) S1 + w S2.
///
/// `ansatz` is the circuit whose QFIM is scored (no embedding slots);
/// `objective` supplies the task gradient and is required for S2/S3, and
/// for S1 when the QFIM ladder falls back to the empirical fidelity.
ScoreValue score(std::span<const double> theta, const Circuit &ansatz,
                 const Objective *objective, const ScoreSpec &spec,
                 int workers = 1);

/// Rank-based utilities u_k = k / (N - 1) - 0.5, lowest raw score -> k = 0,
/// ties broken by position. Output is in input order.
std::vector<double> utility_shape(std::span<const double> raw_scores);

} // namespace hypinit
