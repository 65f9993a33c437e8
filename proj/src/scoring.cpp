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
#include "hypinit/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypinit {

std::string_view to_string(ScoreKind kind) {
  switch (kind) {
  case ScoreKind::S1: return "S1";
  case ScoreKind::S2: return "S2";
  case ScoreKind::S3: return "S3";
  }
  return "?";
}

std::string_view to_string(OmegaKind kind) {
  switch (kind) {
  case OmegaKind::Trace: return "trace";
  case OmegaKind::LogDet: return "log-det";
  case OmegaKind::Harmonic: return "harmonic";
  }
  return "?";
}

ScoreKind parse_score_kind(std::string_view name) {
  if (name == "S1") return ScoreKind::S1;
  if (name == "S2") return ScoreKind::S2;
  if (name == "S3") return ScoreKind::S3;
  throw Error("unknown score function '" + std::string(name) + "'");
}

OmegaKind parse_omega_kind(std::string_view name) {
  if (name == "trace") return OmegaKind::Trace;
  if (name == "log-det") return OmegaKind::LogDet;
  if (name == "harmonic") return OmegaKind::Harmonic;
  throw Error("unknown omega reduction '" + std::string(name) + "'");
}

void ScoreSpec::validate() const {
  if (t < 1) {
    throw Error("score order t must be >= 1");
  }
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error("score weight w must lie in [0, 1]");
  }
  if (!(eps >= 0.0)) {
    throw Error("score stabilizer eps must be >= 0");
  }
  if (k_eigs < 1) {
    throw Error("k_eigs must be >= 1");
  }
}

double omega_reduce(const QfimMatrix &qfim, const ScoreSpec &spec) {
  const Matrix &f = qfim.entries;
  const std::size_t p = f.rows();
  switch (spec.omega) {
  case OmegaKind::Trace:
    return f.trace() + static_cast<double>(p) * spec.eps;
  case OmegaKind::LogDet: {
    double total = 0.0;
    for (double lambda : hermitian_eigenvalues(f)) {
      total += std::log(std::max(lambda, 0.0) + spec.eps);
    }
    return total;
  }
  case OmegaKind::Harmonic: {
    const auto values = hermitian_eigenvalues(f);
    const std::size_t k =
        std::min<std::size_t>(static_cast<std::size_t>(spec.k_eigs), p);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      total += 1.0 / (std::max(values[i], 0.0) + spec.eps);
    }
    return spec.harmonic_scale * total;
  }
  }
  throw Error("unknown omega reduction");
}

double order_statistic(const Gradient &g, int t) {
  if (g.values.empty()) {
    throw Error("order statistic of an empty gradient");
  }
  if (t < 1) {
    throw Error("order statistic needs t >= 1");
  }
  double total = 0.0;
  for (double v : g.values) {
    total += std::pow(std::abs(v), t);
  }
  return total / static_cast<double>(g.values.size());
}

ScoreValue score(std::span<const double> theta, const Circuit &ansatz,
                 const Objective *objective, const ScoreSpec &spec,
                 int workers) {
  spec.validate();
  const bool needs_gradient = spec.kind != ScoreKind::S1;
  if (needs_gradient && objective == nullptr) {
    throw Error(std::string(to_string(spec.kind)) +
                " needs a task objective for its gradient term");
  }
  auto qfim_part = [&] {
    return omega_reduce(qfim_auto(ansatz, theta, objective, workers), spec);
  };
  auto gradient_part = [&] {
    return order_statistic(objective->gradient(theta, workers), spec.t);
  };
  double raw = 0.0;
  switch (spec.kind) {
  case ScoreKind::S1: raw = qfim_part(); break;
  case ScoreKind::S2: raw = gradient_part(); break;
  case ScoreKind::S3:
    raw = (1.0 - spec.w) * qfim_part() + spec.w * gradient_part();
    break;
  }
  if (!std::isfinite(raw)) {
    throw Error("score evaluated to a non-finite value");
  }
  return {raw, 0.0};
}

std::vector<double> utility_shape(std::span<const double> raw_scores) {
  const std::size_t n = raw_scores.size();
  if (n < 2) {
    throw Error("utility shaping needs at least two scores");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw_scores[a] < raw_scores[b];
  });
  std::vector<double> utilities(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k/(n-1) - 1/2 with an exact integer numerator, so u and -u pair up.
    utilities[order[k]] = (2.0 * static_cast<double>(k) -
                           static_cast<double>(n - 1)) /
                          (2.0 * static_cast<double>(n - 1));
  }
  return utilities;
}

} // namespace hypinit
