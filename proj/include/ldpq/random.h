// Copyright 2026 The ldpq Authors
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

#ifndef LDPQ_RANDOM_H_
#define LDPQ_RANDOM_H_

#include <cstdint>
#include <random>

namespace ldpq {

using Rng = std::mt19937_64;

// Stream tags used to derive independent sub-streams from one seed.
enum class StreamTag : std::uint64_t {
  kDataset = 0x64617461ULL,
  kUsers = 0x75736572ULL,
  kPartition = 0x70617274ULL,
  kStrategy = 0x73747261ULL,
  kInstance = 0x696e7374ULL,
};

// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t Mix64(std::uint64_t x);

// Seed of sub-stream `index` under `parent`. Distinct (parent, index) pairs
// give statistically independent streams; the mapping is fixed across builds.
std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t index);
std::uint64_t DeriveSeed(std::uint64_t parent, StreamTag tag);

inline Rng MakeRng(std::uint64_t seed) { return Rng(seed); }

// Uniform on [0, 1) with 53 random bits.
double Uniform01(Rng& rng);

double StandardNormal(Rng& rng);

bool Bernoulli(double p, Rng& rng);

}  // namespace ldpq

#endif  // LDPQ_RANDOM_H_
