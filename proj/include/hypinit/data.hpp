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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hypinit/linalg.hpp"
#include "hypinit/simulator.hpp"

namespace hypinit {

struct Dataset {
  std::string name;
  Matrix features; ///< N x d_in
  std::vector<int> labels;
  int num_classes = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols(); }

  /// Rows picked in the given order.
  Dataset subset(const std::vector<std::size_t> &rows) const;
};

/// Rectangular numeric CSV with a header row. Labels must be non-negative
/// integers; num_classes is one past the largest label.
Dataset load_csv(const std::filesystem::path &path,
                 const std::string &label_column = "label");

struct PcaModel {
  std::vector<double> mean;
  Matrix components; ///< d_in x k, orthonormal columns
  std::vector<double> explained_variance; ///< descending, length k
  double total_variance = 0.0;
};

PcaModel fit_pca(const Matrix &features, std::size_t k = 4);
Matrix transform(const PcaModel &model, const Matrix &features);

struct MinMaxScaler {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Column-wise statistics; apply with scale_features.
MinMaxScaler fit_scaler(const Matrix &train);
/// Maps each column to [0, pi]; constant columns go to pi/2 and values
/// outside the fitted range clamp.
Matrix scale_features(const MinMaxScaler &scaler, const Matrix &features);
Matrix scale_features(const Matrix &features);

struct Split {
  std::vector<std::size_t> train; ///< ascending row indices
  std::vector<std::size_t> test;
};

/// Stratified: ceil(0.8 N_c) training rows per class, chosen by a seeded
/// shuffle.
Split split_80_20(const Dataset &dataset, std::uint64_t seed);

/// Stratified subsample of at most `limit` of the given rows, keeping class
/// proportions (largest-remainder rounding). Returned ascending.
std::vector<std::size_t> stratified_subsample(
    const Dataset &dataset, const std::vector<std::size_t> &rows,
    std::size_t limit, std::uint64_t seed);

/// One term per line, `<coefficient> <pauli word>`; `#` starts a comment.
Observable load_hamiltonian(const std::filesystem::path &path);
Observable parse_hamiltonian(const std::string &text);

} // namespace hypinit
