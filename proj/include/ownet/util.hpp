// Copyright 2026 The ownet authors
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

#ifndef OWNET_UTIL_HPP
#define OWNET_UTIL_HPP

#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>

namespace ownet {

// FNV-1a 64-bit. Used for config hashes and output digests; stable across
// platforms and runs, not cryptographic.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v);

// Canonical numeric formatting for every emitted file: 12 significant digits.
inline std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Resolves the worker count: explicit request > OWNET_WORKERS > hardware.
unsigned resolve_workers(unsigned requested);

// Runs fn(i) for i in [0, n). Work is handed out through an atomic cursor so
// results must not depend on scheduling; with workers <= 1 it runs inline.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace ownet

#endif  // OWNET_UTIL_HPP
