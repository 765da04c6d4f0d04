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

// Reference evaluators used to validate generated programs. eval_circuit
// works directly on the gate list; equivalence_check compares a program's
// computed replies with a truth table on every input vector.

#ifndef PGLB_ORACLE_HPP_
#define PGLB_ORACLE_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pglb/error.hpp"
#include "pglb/interaction.hpp"
#include "pglb/isa.hpp"
#include "pglb/synthesis.hpp"

namespace pglb {

inline bool eval_circuit(const Circuit& c, const std::vector<bool>& inputs) {
  if (inputs.size() != c.input_count()) {
    throw std::invalid_argument("circuit expects " +
                                std::to_string(c.input_count()) +
                                " inputs, got " +
                                std::to_string(inputs.size()));
  }
  std::vector<bool> values;
  values.reserve(c.gate_count());
  const auto value = [&](const Operand& op) -> bool {
    return op.kind == Operand::Kind::input ? inputs[op.index - 1]
                                           : values[op.index - 1];
  };
  for (const auto& g : c.gates()) {
    switch (g.op) {
      case Gate::Op::negation:
        values.push_back(!value(g.lhs));
        break;
      case Gate::Op::conjunction:
        values.push_back(value(g.lhs) && value(g.rhs));
        break;
      case Gate::Op::disjunction:
        values.push_back(value(g.lhs) || value(g.rhs));
        break;
    }
  }
  return values.back();
}

inline PartialBooleanFunction truth_table(const Circuit& c) {
  return PartialBooleanFunction::tabulate(
      c.input_count(), [&](const std::vector<bool>& bs) {
        return PartialBooleanFunction::Entry(eval_circuit(c, bs));
      });
}

// Expected reply for one table entry: the value, or d when undefined.
inline Reply expected_reply(PartialBooleanFunction::Entry e) {
  return e ? to_reply(*e) : Reply::d;
}

struct Mismatch {
  std::vector<bool> inputs;
  Reply expected;
  Reply actual;

  std::string str() const {
    std::string bs;
    for (bool b : inputs) bs += b ? 't' : 'f';
    if (bs.empty()) bs = "-";
    return bs + ": expected " + to_char(expected) + ", got " + to_char(actual);
  }
};

struct EquivalenceReport {
  std::vector<Mismatch> mismatches;

  bool empty() const { return mismatches.empty(); }
};

inline constexpr std::size_t kMaxCheckArity = 20;

// Every input vector on which `program` does not compute `f` with
// aux_count auxiliary registers. An empty report means it does.
inline EquivalenceReport equivalence_check(const InstructionSequence& program,
                                           const PartialBooleanFunction& f,
                                           std::size_t aux_count) {
  if (f.arity() > kMaxCheckArity) {
    throw ResourceError("equivalence check supports arity up to " +
                        std::to_string(kMaxCheckArity));
  }
  const Computation run(program, aux_count);
  EquivalenceReport report;
  for (std::size_t row = 0; row < f.rows(); ++row) {
    const auto bs = PartialBooleanFunction::inputs_of(row, f.arity());
    const Reply expected = expected_reply(f.at(row));
    const Reply actual = run(bs);
    if (actual != expected) report.mismatches.push_back({bs, expected, actual});
  }
  return report;
}

}  // namespace pglb

#endif  // PGLB_ORACLE_HPP_
