// Copyright 2026 The pglb Authors
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

// Thread extraction |i, u_1;...;u_k| for PGLB with Boolean termination.
//
// The extracted graph has one state per position: state p stands for
// |p, X| when u_p is a basic, test or termination instruction, and state 0
// is the shared D for positions that are out of range or start an infinite
// jump chain. Jump positions are contracted away; their slots hold
// unreferenced placeholders so that state ids and positions coincide.

#ifndef PGLB_EXTRACTION_HPP_
#define PGLB_EXTRACTION_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "pglb/isa.hpp"
#include "pglb/threads.hpp"

namespace pglb {

// Follows jumps from position i. Returns the first non-jump position reached,
// 0 if execution leaves the sequence, or nullopt if the jumps cycle.
inline std::optional<std::size_t> resolve_jumps(const InstructionSequence& seq,
                                                std::size_t i) {
  const std::size_t k = seq.size();
  std::vector<bool> visited(k + 1, false);
  for (;;) {
    if (i == 0 || i > k) return 0;
    const auto& u = seq.at(i);
    if (!u.is_jump()) return i;
    if (visited[i]) return std::nullopt;
    visited[i] = true;
    if (u.op == Instruction::Op::forward_jump) {
      i = u.distance > k - i ? 0 : i + u.distance;
    } else {
      i = i > u.distance ? i - u.distance : 0;
    }
  }
}

// |i, I| as a regular thread rooted at the state for position i.
inline RegularThread extract_at(const InstructionSequence& seq, std::size_t i) {
  using Op = Instruction::Op;
  const std::size_t k = seq.size();
  const RegularThread::State deadlock{ThreadKind::deadlock, {}, 0, 0};

  // Resolution of every position 0..k+2, computed once; chains of jumps are
  // shared by many positions in generated code.
  std::vector<std::optional<std::size_t>> resolved(k + 3);
  std::vector<bool> done(k + 3, false);
  const auto target = [&](std::size_t p) -> std::size_t {
    if (p > k) return 0;
    if (!done[p]) {
      resolved[p] = resolve_jumps(seq, p);
      done[p] = true;
    }
    return resolved[p].value_or(0);
  };

  std::vector<RegularThread::State> states(k + 1, deadlock);
  for (std::size_t p = 1; p <= k; ++p) {
    const auto& u = seq.at(p);
    auto& s = states[p];
    switch (u.op) {
      case Op::basic:
        s = {ThreadKind::post, u.action, target(p + 1), target(p + 1)};
        break;
      case Op::positive_test:
        s = {ThreadKind::post, u.action, target(p + 1), target(p + 2)};
        break;
      case Op::negative_test:
        s = {ThreadKind::post, u.action, target(p + 2), target(p + 1)};
        break;
      case Op::terminate_true:
        s.kind = ThreadKind::success;
        break;
      case Op::terminate_false:
        s.kind = ThreadKind::failure;
        break;
      case Op::forward_jump:
      case Op::backward_jump:
        break;
    }
  }
  return RegularThread(std::move(states), i > k ? 0 : target(i));
}

// |X| = |1, X|
inline RegularThread extract(const InstructionSequence& seq) {
  return extract_at(seq, 1);
}

}  // namespace pglb

#endif  // PGLB_EXTRACTION_HPP_
