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
#include "hypinit/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hypinit/random.hpp"

namespace hypinit {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return cells;
}

bool parse_double(std::string_view cell, double &out) {
  if (cell.empty()) {
    return false;
  }
  if (cell.front() == '+') {
    cell.remove_prefix(1);
  }
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size() &&
         std::isfinite(out);
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

Dataset Dataset::subset(const std::vector<std::size_t> &rows) const {
  Dataset out{name, Matrix(rows.size(), dim()), {}, num_classes};
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= size()) {
      throw Error("row index out of range");
    }
    const auto src = features.row(rows[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

Dataset load_csv(const std::filesystem::path &path,
                 const std::string &label_column) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, header_line)) {
    ++line_no;
    if (!trim(header_line).empty()) {
      break;
    }
  }
  header = split_commas(header_line);
  if (header.size() < 2) {
    throw Error(path.string() + ": header needs a label and at least one feature");
  }
  double probe = 0.0;
  if (std::all_of(header.begin(), header.end(),
                  [&](std::string_view c) { return parse_double(c, probe); })) {
    throw Error(path.string() + ": missing header row");
  }
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw Error(path.string() + ": unknown label column '" + label_column + "'");
  }
  const std::size_t label_idx = label_it - header.begin();
  const std::size_t width = header.size();

  std::vector<double> values;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto cells = split_commas(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (cells.size() != width) {
      throw Error(where + ": expected " + std::to_string(width) +
                  " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      if (!parse_double(cells[c], v)) {
        throw Error(where + ": non-numeric cell '" + std::string(cells[c]) +
                    "'");
      }
      if (c == label_idx) {
        if (v < 0.0 || v != std::floor(v) || v > 1e6) {
          throw Error(where + ": label must be a non-negative integer");
        }
        labels.push_back(static_cast<int>(v));
      } else {
        values.push_back(v);
      }
    }
  }
  if (labels.empty()) {
    throw Error(path.string() + ": no data rows");
  }
  Dataset ds;
  ds.name = path.stem().string();
  ds.features = Matrix(labels.size(), width - 1);
  std::copy(values.begin(), values.end(), ds.features.row(0).begin());
  ds.labels = std::move(labels);
  ds.num_classes = *std::max_element(ds.labels.begin(), ds.labels.end()) + 1;
  return ds;
}

PcaModel fit_pca(const Matrix &features, std::size_t k) {
  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  if (k == 0 || k > d) {
    throw Error("PCA needs 0 < k <= feature count");
  }
  if (n <= k) {
    throw Error("PCA needs more samples than components");
  }
  PcaModel model;
  model.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      model.mean[j] += features(i, j);
    }
  }
  for (double &m : model.mean) {
    m /= static_cast<double>(n);
  }
  Matrix cov(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double xa = features(i, a) - model.mean[a];
      for (std::size_t b = a; b < d; ++b) {
        cov(a, b) += xa * (features(i, b) - model.mean[b]);
      }
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      cov(a, b) /= static_cast<double>(n - 1);
      cov(b, a) = cov(a, b);
    }
  }
  model.total_variance = cov.trace();
  const SymmetricEigen eig = symmetric_eigen(cov);
  const double floor = 1e-12 * std::max(1.0, model.total_variance);
  std::size_t nonzero = 0;
  for (double v : eig.values) {
    nonzero += v > floor ? 1 : 0;
  }
  if (nonzero < k) {
    throw Error("PCA input is rank deficient: only " + std::to_string(nonzero) +
                " nonzero variances for " + std::to_string(k) + " components");
  }
  model.components = Matrix(d, k);
  model.explained_variance.assign(eig.values.begin(), eig.values.begin() + k);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t arg = 0;
    for (std::size_t r = 1; r < d; ++r) {
      if (std::abs(eig.vectors(r, c)) > std::abs(eig.vectors(arg, c))) {
        arg = r;
      }
    }
    const double sign = eig.vectors(arg, c) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < d; ++r) {
      model.components(r, c) = sign * eig.vectors(r, c);
    }
  }
  return model;
}

Matrix transform(const PcaModel &model, const Matrix &features) {
  const std::size_t d = model.mean.size();
  if (features.cols() != d) {
    throw Error("PCA transform: expected " + std::to_string(d) +
                " columns, got " + std::to_string(features.cols()));
  }
  const std::size_t k = model.components.cols();
  Matrix out(features.rows(), k);
  for (std::size_t i = 0; i < features.rows(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        s += (features(i, j) - model.mean[j]) * model.components(j, c);
      }
      out(i, c) = s;
    }
  }
  return out;
}

MinMaxScaler fit_scaler(const Matrix &train) {
  if (train.rows() == 0) {
    throw Error("cannot fit a scaler on zero rows");
  }
  MinMaxScaler s;
  s.lo.assign(train.cols(), 0.0);
  s.hi.assign(train.cols(), 0.0);
  for (std::size_t j = 0; j < train.cols(); ++j) {
    s.lo[j] = s.hi[j] = train(0, j);
    for (std::size_t i = 1; i < train.rows(); ++i) {
      s.lo[j] = std::min(s.lo[j], train(i, j));
      s.hi[j] = std::max(s.hi[j], train(i, j));
    }
  }
  return s;
}

Matrix scale_features(const MinMaxScaler &scaler, const Matrix &features) {
  if (features.cols() != scaler.lo.size()) {
    throw Error("scaler fitted on a different column count");
  }
  constexpr double pi = std::numbers::pi;
  Matrix out(features.rows(), features.cols());
  for (std::size_t j = 0; j < features.cols(); ++j) {
    const double span = scaler.hi[j] - scaler.lo[j];
    for (std::size_t i = 0; i < features.rows(); ++i) {
      out(i, j) = span > 0.0 ? std::clamp(pi * (features(i, j) - scaler.lo[j]) /
                                              span,
                                          0.0, pi)
                             : pi / 2;
    }
  }
  return out;
}

Matrix scale_features(const Matrix &features) {
  return scale_features(fit_scaler(features), features);
}

namespace {

std::vector<std::vector<std::size_t>>
by_class(const Dataset &dataset, const std::vector<std::size_t> &rows) {
  std::vector<std::vector<std::size_t>> groups(dataset.num_classes);
  for (std::size_t r : rows) {
    groups.at(dataset.labels.at(r)).push_back(r);
  }
  return groups;
}

void shuffle(std::vector<std::size_t> &v, Prng &rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

} // namespace

Split split_80_20(const Dataset &dataset, std::uint64_t seed) {
  std::vector<std::size_t> all(dataset.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i] = i;
  }
  Prng rng = Prng(seed).derive({0x73706c6974ULL});
  Split split;
  for (auto &group : by_class(dataset, all)) {
    shuffle(group, rng);
    const std::size_t n_train = (8 * group.size() + 9) / 10;
    split.train.insert(split.train.end(), group.begin(),
                       group.begin() + n_train);
    split.test.insert(split.test.end(), group.begin() + n_train, group.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::size_t> stratified_subsample(
    const Dataset &dataset, const std::vector<std::size_t> &rows,
    std::size_t limit, std::uint64_t seed) {
  if (rows.size() <= limit) {
    std::vector<std::size_t> out = rows;
    std::sort(out.begin(), out.end());
    return out;
  }
  auto groups = by_class(dataset, rows);
  const double total = static_cast<double>(rows.size());
  std::vector<std::size_t> quota(groups.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    const double exact = static_cast<double>(limit) *
                         static_cast<double>(groups[c].size()) / total;
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < limit; ++i, ++assigned) {
    ++quota[remainders[i].second];
  }
  Prng rng = Prng(seed).derive({0x7375627365ULL});
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    shuffle(groups[c], rng);
    out.insert(out.end(), groups[c].begin(), groups[c].begin() + quota[c]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Observable parse_hamiltonian(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::vector<PauliTerm> terms;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    std::istringstream fields(line.substr(0, hash));
    std::string coeff_text;
    std::string word;
    if (!(fields >> coeff_text)) {
      continue;
    }
    std::string extra;
    if (!(fields >> word) || (fields >> extra)) {
      throw Error("Hamiltonian line " + std::to_string(line_no) +
                  ": expected '<coefficient> <pauli word>'");
    }
    double coeff = 0.0;
    if (!parse_double(coeff_text, coeff)) {
      throw Error("Hamiltonian line " + std::to_string(line_no) +
                  ": bad coefficient '" + coeff_text + "'");
    }
    if (!terms.empty() && word.size() != terms.front().word.size()) {
      throw Error("Hamiltonian line " + std::to_string(line_no) +
                  ": word length " + std::to_string(word.size()) +
                  " differs from " + std::to_string(terms.front().word.size()));
    }
    terms.push_back({coeff, word});
  }
  if (terms.empty()) {
    throw Error("Hamiltonian has no terms");
  }
  const int q = static_cast<int>(terms.front().word.size());
  return Observable(q, std::move(terms));
}

Observable load_hamiltonian(const std::filesystem::path &path) {
  try {
    return parse_hamiltonian(read_file(path));
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

} // namespace hypinit
