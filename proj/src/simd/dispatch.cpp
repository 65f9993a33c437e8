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
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hypinit/simd/kernels.hpp"

namespace hypinit::simd {
namespace {

bool cpu_has_avx2() {
#if defined(HYPINIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable *resolve(std::string_view name) {
  if (name == "scalar") {
    return &scalar_kernels();
  }
  if (name == "avx2") {
    return avx2_kernels();
  }
  if (name == "auto" || name.empty()) {
    const KernelTable *wide = avx2_kernels();
    return wide != nullptr ? wide : &scalar_kernels();
  }
  return nullptr;
}

const KernelTable *initial_table() {
  const char *env = std::getenv("HYPINIT_KERNELS");
  const KernelTable *table = resolve(env != nullptr ? env : "auto");
  return table != nullptr ? table : resolve("auto");
}

std::atomic<const KernelTable *> &active_slot() {
  static std::atomic<const KernelTable *> slot{initial_table()};
  return slot;
}

} // namespace

const KernelTable *avx2_kernels() {
#if defined(HYPINIT_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable &active_kernels() {
  return *active_slot().load(std::memory_order_acquire);
}

void select_kernels(std::string_view name) {
  const KernelTable *table = resolve(name);
  if (table == nullptr) {
    throw std::invalid_argument("kernel variant '" + std::string(name) +
                                "' is unknown or unsupported on this CPU");
  }
  active_slot().store(table, std::memory_order_release);
}

} // namespace hypinit::simd
