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

#include <complex>
#include <stdexcept>
#include <string>

namespace hypinit {

using cplx = std::complex<double>;

/// Raised for every contract violation reported by the library: malformed
/// inputs, size mismatches, invalid configuration.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hypinit
