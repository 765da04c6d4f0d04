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

// Loop-free code generation for Boolean functions: the recursive truth-table
// compiler (length exactly 3 * 2^k - 2, no auxiliary registers) and the
// circuit compiler (one auxiliary register per gate, length <= 4n + 3).

#ifndef PGLB_SYNTHESIS_HPP_
#define PGLB_SYNTHESIS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pglb/error.hpp"
#include "pglb/isa.hpp"
#include "pglb/sat3.hpp"

namespace pglb {

// Largest arity for which tables are materialized.
inline constexpr std::size_t kMaxTableArity = 24;

// F : B^k -> B, partial. Row r holds F(b_1..b_k) where b_i is bit i-1 of r;
// nullopt marks an undefined entry.
class PartialBooleanFunction {
 public:
  using Entry = std::optional<bool>;

  PartialBooleanFunction(std::size_t arity, std::vector<Entry> table)
      : arity_(arity), table_(std::move(table)) {
    if (arity_ > kMaxTableArity) {
      throw ResourceError("arity " + std::to_string(arity_) +
                          " exceeds the table limit of " +
                          std::to_string(kMaxTableArity));
    }
    if (table_.size() != (std::size_t{1} << arity_)) {
      throw std::invalid_argument("truth table needs 2^k entries");
    }
  }

  static PartialBooleanFunction tabulate(
      std::size_t arity,
      const std::function<Entry(const std::vector<bool>&)>& f) {
    if (arity > kMaxTableArity) {
      throw ResourceError("arity " + std::to_string(arity) +
                          " exceeds the table limit of " +
                          std::to_string(kMaxTableArity));
    }
    std::vector<Entry> table(std::size_t{1} << arity);
    for (std::size_t row = 0; row < table.size(); ++row) {
      table[row] = f(inputs_of(row, arity));
    }
    return PartialBooleanFunction(arity, std::move(table));
  }

  std::size_t arity() const { return arity_; }
  std::size_t rows() const { return table_.size(); }
  Entry at(std::size_t row) const { return table_.at(row); }
  Entry operator()(const std::vector<bool>& inputs) const {
    if (inputs.size() != arity_) throw std::invalid_argument("arity mismatch");
    return table_[row_of(inputs)];
  }

  static std::size_t row_of(const std::vector<bool>& inputs) {
    std::size_t row = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i]) row |= std::size_t{1} << i;
    }
    return row;
  }

  static std::vector<bool> inputs_of(std::size_t row, std::size_t arity) {
    std::vector<bool> inputs(arity);
    for (std::size_t i = 0; i < arity; ++i) inputs[i] = ((row >> i) & 1U) != 0;
    return inputs;
  }

  bool operator==(const PartialBooleanFunction&) const = default;

 private:
  std::size_t arity_;
  std::vector<Entry> table_;
};

// "k <arity>" followed by one "<b_1..b_k> <t|f|u>" line per input vector.
inline PartialBooleanFunction parse_truth_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> arity;
  std::vector<PartialBooleanFunction::Entry> table;
  std::vector<bool> seen;
  std::size_t filled = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto comment = line.find("//"); comment != std::string::npos) {
      line.resize(comment);
    }
    std::istringstream words(line);
    std::string first;
    std::string second;
    if (!(words >> first)) continue;
    if (!(words >> second)) {
      throw ParseError("expected two fields", line_no);
    }
    std::string extra;
    if (words >> extra) throw ParseError("unexpected '" + extra + "'", line_no);
    if (!arity) {
      std::size_t k = 0;
      if (first != "k" || !detail::parse_nat(second, k)) {
        throw ParseError("expected 'k <arity>' header", line_no);
      }
      if (k > kMaxTableArity) {
        throw ResourceError("arity " + std::to_string(k) +
                            " exceeds the table limit of " +
                            std::to_string(kMaxTableArity));
      }
      arity = k;
      table.assign(std::size_t{1} << k, std::nullopt);
      seen.assign(table.size(), false);
      continue;
    }
    // The nullary row is written as "-".
    const std::string inputs = first == "-" ? std::string() : first;
    if (inputs.size() != *arity) {
      throw ParseError("row '" + first + "' does not have " +
                           std::to_string(*arity) + " inputs",
                       line_no);
    }
    std::vector<bool> bs;
    for (char c : inputs) {
      if (c != 't' && c != 'f') throw ParseError("bad input '" + first + "'", line_no);
      bs.push_back(c == 't');
    }
    PartialBooleanFunction::Entry value;
    if (second == "t") {
      value = true;
    } else if (second == "f") {
      value = false;
    } else if (second != "u") {
      throw ParseError("value must be t, f or u", line_no);
    }
    const auto row = PartialBooleanFunction::row_of(bs);
    if (seen[row]) throw ParseError("duplicate row '" + first + "'", line_no);
    seen[row] = true;
    table[row] = value;
    ++filled;
  }
  if (!arity) throw ParseError("missing 'k <arity>' header");
  if (filled != table.size()) {
    throw ParseError("truth table has " + std::to_string(filled) + " of " +
                     std::to_string(table.size()) + " rows");
  }
  return PartialBooleanFunction(*arity, std::move(table));
}

// Rows listed with b_1 varying slowest, f before t.
inline std::string write_truth_table(const PartialBooleanFunction& f) {
  std::string out = "k " + std::to_string(f.arity()) + "\n";
  for (std::size_t r = 0; r < f.rows(); ++r) {
    std::vector<bool> bs(f.arity());
    std::string inputs;
    for (std::size_t i = 0; i < f.arity(); ++i) {
      bs[i] = ((r >> (f.arity() - 1 - i)) & 1U) != 0;
      inputs += bs[i] ? 't' : 'f';
    }
    const auto e = f(bs);
    out += (inputs.empty() ? std::string("-") : inputs) + " " +
           (e ? (*e ? "t" : "f") : "u") + "\n";
  }
  return out;
}

// I_F = -in:k.get; #(3*2^(k-1) - 1); I_{G_t}; I_{G_f}, where G_b fixes the
// last input to b; arity 0 is !t, !f or #0 (undefined).
inline InstructionSequence compile_truth_table(const PartialBooleanFunction& f) {
  std::vector<Instruction> out;
  out.reserve(3 * f.rows() - 2);
  // The rows of G_t and G_f are the upper and lower halves of F's rows.
  const std::function<void(std::size_t, std::size_t)> emit =
      [&](std::size_t first_row, std::size_t arity) {
        if (arity == 0) {
          const auto e = f.at(first_row);
          if (!e) {
            out.push_back(Instruction::forward_jump(0));
          } else {
            out.push_back(*e ? Instruction::terminate_true()
                             : Instruction::terminate_false());
          }
          return;
        }
        const std::size_t half = std::size_t{1} << (arity - 1);
        out.push_back(Instruction::negative_test(
            Action::focused(Focus::input(arity), kGet)));
        out.push_back(Instruction::forward_jump(3 * half - 1));
        emit(first_row + half, arity - 1);
        emit(first_row, arity - 1);
      };
  emit(0, f.arity());
  return InstructionSequence(std::move(out));
}

struct Operand {
  enum class Kind { input, gate };

  Kind kind = Kind::input;
  std::size_t index = 1;

  static Operand input(std::size_t i) { return {Kind::input, i}; }
  static Operand gate(std::size_t j) { return {Kind::gate, j}; }

  std::string str() const {
    return (kind == Kind::input ? "x" : "g") + std::to_string(index);
  }

  bool operator==(const Operand&) const = default;
};

struct Gate {
  enum class Op { negation, conjunction, disjunction };

  Op op = Op::negation;
  Operand lhs;
  Operand rhs;  // unused for negation

  bool operator==(const Gate&) const = default;
};

// NOT/AND/OR netlist over inputs x1..xk. Gates are numbered g1..gn in
// topological order; gn is the output.
class Circuit {
 public:
  Circuit(std::size_t input_count, std::vector<Gate> gates)
      : input_count_(input_count), gates_(std::move(gates)) {
    if (gates_.empty()) throw std::invalid_argument("circuit has no gates");
    for (std::size_t j = 0; j < gates_.size(); ++j) {
      const auto& g = gates_[j];
      check(g.lhs, j + 1);
      if (g.op != Gate::Op::negation) check(g.rhs, j + 1);
    }
  }

  std::size_t input_count() const { return input_count_; }
  std::size_t gate_count() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }

  bool operator==(const Circuit&) const = default;

 private:
  void check(const Operand& op, std::size_t gate) const {
    const bool ok = op.kind == Operand::Kind::input
                        ? op.index >= 1 && op.index <= input_count_
                        : op.index >= 1 && op.index < gate;
    if (!ok) {
      throw std::invalid_argument("gate g" + std::to_string(gate) +
                                  " has invalid operand " + op.str());
    }
  }

  std::size_t input_count_;
  std::vector<Gate> gates_;
};

// "inputs <k>" then "g<i> = NOT <op>" / "g<i> = AND <op> <op>" /
// "g<i> = OR <op> <op>" with op in {x<j>, g<j>}, gates numbered from 1.
inline Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> inputs;
  std::vector<Gate> gates;
  const auto operand = [&](const std::string& word) {
    std::size_t index = 0;
    if (word.size() < 2 || (word[0] != 'x' && word[0] != 'g') ||
        !detail::parse_nat(std::string_view(word).substr(1), index)) {
      throw ParseError("bad operand '" + word + "'", line_no);
    }
    return word[0] == 'x' ? Operand::input(index) : Operand::gate(index);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto comment = line.find("//"); comment != std::string::npos) {
      line.resize(comment);
    }
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    if (!inputs) {
      std::size_t k = 0;
      if (w.size() != 2 || w[0] != "inputs" || !detail::parse_nat(w[1], k)) {
        throw ParseError("expected 'inputs <k>' header", line_no);
      }
      inputs = k;
      continue;
    }
    if (w.size() < 4 || w[1] != "=") {
      throw ParseError("expected 'g<i> = OP operands'", line_no);
    }
    if (w[0] != "g" + std::to_string(gates.size() + 1)) {
      throw ParseError("expected gate g" + std::to_string(gates.size() + 1) +
                           ", got '" + w[0] + "'",
                       line_no);
    }
    Gate g;
    if (w[2] == "NOT" && w.size() == 4) {
      g = {Gate::Op::negation, operand(w[3]), Operand::input(1)};
    } else if ((w[2] == "AND" || w[2] == "OR") && w.size() == 5) {
      g = {w[2] == "AND" ? Gate::Op::conjunction : Gate::Op::disjunction,
           operand(w[3]), operand(w[4])};
    } else {
      throw ParseError("bad gate definition", line_no);
    }
    gates.push_back(g);
  }
  if (!inputs) throw ParseError("missing 'inputs <k>' header");
  try {
    return Circuit(*inputs, std::move(gates));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::string write_circuit(const Circuit& c) {
  std::string out = "inputs " + std::to_string(c.input_count()) + "\n";
  for (std::size_t j = 0; j < c.gate_count(); ++j) {
    const auto& g = c.gates()[j];
    out += "g" + std::to_string(j + 1) + " = ";
    switch (g.op) {
      case Gate::Op::negation:
        out += "NOT " + g.lhs.str();
        break;
      case Gate::Op::conjunction:
        out += "AND " + g.lhs.str() + " " + g.rhs.str();
        break;
      case Gate::Op::disjunction:
        out += "OR " + g.lhs.str() + " " + g.rhs.str();
        break;
    }
    out += "\n";
  }
  return out;
}

// Gate j writes its value into aux:j, which starts out t and is only ever
// cleared:
//   NOT a    +a; aux:j.set:f
//   AND a b  -a; #2; -b; aux:j.set:f
//   OR a b   +a; #3; -b; aux:j.set:f
// where a read of input i is in:i.get and of gate i is aux:i.get. The
// program ends with +aux:n.get; !t; !f and must run with n auxiliary
// registers.
inline InstructionSequence compile_circuit(const Circuit& c) {
  const auto read = [](const Operand& op) {
    return Action::focused(op.kind == Operand::Kind::input
                               ? Focus::input(op.index)
                               : Focus::auxiliary(op.index),
                           kGet);
  };
  std::vector<Instruction> out;
  for (std::size_t j = 1; j <= c.gate_count(); ++j) {
    const auto& g = c.gates()[j - 1];
    const auto clear =
        Instruction::basic(Action::focused(Focus::auxiliary(j), kSetFalse));
    switch (g.op) {
      case Gate::Op::negation:
        out.push_back(Instruction::positive_test(read(g.lhs)));
        break;
      case Gate::Op::conjunction:
        out.push_back(Instruction::negative_test(read(g.lhs)));
        out.push_back(Instruction::forward_jump(2));
        out.push_back(Instruction::negative_test(read(g.rhs)));
        break;
      case Gate::Op::disjunction:
        out.push_back(Instruction::positive_test(read(g.lhs)));
        out.push_back(Instruction::forward_jump(3));
        out.push_back(Instruction::negative_test(read(g.rhs)));
        break;
    }
    out.push_back(clear);
  }
  out.push_back(Instruction::positive_test(
      Action::focused(Focus::auxiliary(c.gate_count()), kGet)));
  out.push_back(Instruction::terminate_true());
  out.push_back(Instruction::terminate_false());
  return InstructionSequence(std::move(out));
}

// Largest k for which the 3SAT(k) truth table (2^(8k^3) rows) is built.
inline constexpr std::size_t kMaxLoopFree3SatK = 1;

// Loop-free program for 3SAT(k) from its full truth table.
inline InstructionSequence compile_3sat_loopfree(std::size_t k) {
  if (k == 0) throw std::invalid_argument("3SAT(k) needs k >= 1");
  if (k > kMaxLoopFree3SatK) {
    throw ResourceError("3SAT(" + std::to_string(k) + ") has arity " +
                        std::to_string(clause_count(k)) +
                        "; its loop-free program would have " +
                        loop_free_3sat_length(k) + " instructions");
  }
  const auto table = PartialBooleanFunction::tabulate(
      clause_count(k), [k](const std::vector<bool>& bits) {
        return PartialBooleanFunction::Entry(brute_sat(decode(bits, k)));
      });
  return compile_truth_table(table);
}

}  // namespace pglb

#endif  // PGLB_SYNTHESIS_HPP_
