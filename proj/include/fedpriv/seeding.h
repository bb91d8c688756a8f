//
// Copyright 2026 The fedpriv Authors
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
//

#ifndef FEDPRIV_SEEDING_H_
#define FEDPRIV_SEEDING_H_

#include <cstdint>
#include <initializer_list>

namespace fedpriv {

// Independent random streams are keyed off one master seed. Each component
// mixes its stream tag and indices through SplitMix64, so streams never share
// generator state.
namespace stream {
inline constexpr std::uint64_t kPartition = 0x7061727469746e;  // "partitn"
inline constexpr std::uint64_t kPerturbation = 0x70657274757262;
inline constexpr std::uint64_t kLocalTraining = 0x6c6f63616c;
inline constexpr std::uint64_t kSplit = 0x73706c6974;
inline constexpr std::uint64_t kFolds = 0x666f6c6473;
inline constexpr std::uint64_t kCentralTraining = 0x63656e7472616c;
inline constexpr std::uint64_t kFederation = 0x666564657261;
}  // namespace stream

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t DeriveSeed(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = SplitMix64(master);
  for (std::uint64_t p : path) s = SplitMix64(s ^ SplitMix64(p));
  return s;
}

}  // namespace fedpriv

#endif  // FEDPRIV_SEEDING_H_
