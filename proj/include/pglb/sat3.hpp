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

// 3SAT over k variables as an instruction sequence with one backward jump.
//
// A 3-CNF over v_1..v_k is encoded as a bit vector of length 8k^3 with one
// bit per clause shape <l,m,n,i>: variables l, m, n and polarity pattern i.
// Bit j (1-based) stands for the shape phi(j). The generated program walks
// all assignments held in aux:1..aux:k and checks every present clause.

#ifndef PGLB_SAT3_HPP_
#define PGLB_SAT3_HPP_

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pglb/error.hpp"
#include "pglb/isa.hpp"

namespace pglb {

// Clause over three (not necessarily distinct) variables. Pattern 1..8 gives
// the polarities: pattern - 1 read as three bits, most significant bit for
// the first literal, a set bit meaning negated. So 1 is (+,+,+), 2 is
// (+,+,-) and 8 is (-,-,-).
struct ClauseShape {
  std::array<std::size_t, 3> variables{1, 1, 1};
  unsigned pattern = 1;

  bool negated(std::size_t literal) const {
    return (((pattern - 1) >> (2 - literal)) & 1U) != 0;
  }

  bool satisfied_by(const std::vector<bool>& assignment) const {
    for (std::size_t j = 0; j < 3; ++j) {
      if (assignment.at(variables[j] - 1) != negated(j)) return true;
    }
    return false;
  }

  std::string str() const {
    std::string out;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j > 0) out += " ∨ ";
      if (negated(j)) out += "¬";
      out += "v" + std::to_string(variables[j]);
    }
    return out;
  }

  auto operator<=>(const ClauseShape&) const = default;
};

struct CnfFormula {
  std::size_t variables = 0;
  std::set<ClauseShape> clauses;

  void validate() const {
    for (const auto& c : clauses) {
      if (c.pattern < 1 || c.pattern > 8) {
        throw std::invalid_argument("clause polarity pattern out of range");
      }
      for (std::size_t v : c.variables) {
        if (v < 1 || v > variables) {
          throw std::invalid_argument("clause variable v" + std::to_string(v) +
                                      " exceeds " + std::to_string(variables));
        }
      }
    }
  }

  bool operator==(const CnfFormula&) const = default;
};

// Number of clause shapes, 8k^3.
inline std::size_t clause_count(std::size_t k) { return 8 * k * k * k; }

// Canonical bijection {1..8k^3} -> {1..k}^3 x {1..8}:
// index - 1 = (((l-1)k + (m-1))k + (n-1))*8 + (i-1).
inline ClauseShape phi(std::size_t index, std::size_t k) {
  if (k == 0 || index < 1 || index > clause_count(k)) {
    throw std::out_of_range("clause index " + std::to_string(index) +
                            " out of range for k = " + std::to_string(k));
  }
  std::size_t rest = index - 1;
  ClauseShape shape;
  shape.pattern = static_cast<unsigned>(rest % 8) + 1;
  rest /= 8;
  shape.variables[2] = rest % k + 1;
  rest /= k;
  shape.variables[1] = rest % k + 1;
  shape.variables[0] = rest / k + 1;
  return shape;
}

inline std::size_t phi_inv(const ClauseShape& shape, std::size_t k) {
  for (std::size_t v : shape.variables) {
    if (v < 1 || v > k) throw std::out_of_range("clause variable out of range");
  }
  if (shape.pattern < 1 || shape.pattern > 8) {
    throw std::out_of_range("clause pattern out of range");
  }
  const auto [l, m, n] = shape.variables;
  return (((l - 1) * k + (m - 1)) * k + (n - 1)) * 8 + (shape.pattern - 1) + 1;
}

// Bit vector of length 8k^3; element j-1 is bit j.
inline std::vector<bool> encode_cnf(const CnfFormula& formula) {
  formula.validate();
  std::vector<bool> bits(clause_count(formula.variables), false);
  for (const auto& c : formula.clauses) {
    bits[phi_inv(c, formula.variables) - 1] = true;
  }
  return bits;
}

inline CnfFormula decode(const std::vector<bool>& bits, std::size_t k) {
  if (bits.size() != clause_count(k)) {
    throw std::invalid_argument("encoding length " +
                                std::to_string(bits.size()) + " is not 8k^3");
  }
  CnfFormula formula{k, {}};
  for (std::size_t j = 1; j <= bits.size(); ++j) {
    if (bits[j - 1]) formula.clauses.insert(phi(j, k));
  }
  return formula;
}

inline std::string encoding_string(const std::vector<bool>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (bool b : bits) out += b ? 't' : 'f';
  return out;
}

// Exhaustive search over the 2^k assignments.
inline bool brute_sat(const CnfFormula& formula) {
  formula.validate();
  if (formula.variables > 20) {
    throw ResourceError("brute force SAT supports at most 20 variables");
  }
  std::vector<bool> assignment(formula.variables);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << formula.variables);
       ++mask) {
    for (std::size_t v = 0; v < formula.variables; ++v) {
      assignment[v] = ((mask >> v) & 1U) != 0;
    }
    const bool all = std::all_of(
        formula.clauses.begin(), formula.clauses.end(),
        [&](const ClauseShape& c) { return c.satisfied_by(assignment); });
    if (all) return true;
  }
  return false;
}

// DIMACS input with exactly three literals per clause. Literals are sorted by
// variable, positive before negative, to pick the clause shape.
inline CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  CnfFormula formula;
  std::vector<long long> literals;
  const auto finish_clause = [&](std::size_t at) {
    if (literals.size() != 3) {
      throw ParseError("clause has " + std::to_string(literals.size()) +
                           " literals, expected exactly 3",
                       at);
    }
    std::sort(literals.begin(), literals.end(), [](long long a, long long b) {
      const auto va = a < 0 ? -a : a;
      const auto vb = b < 0 ? -b : b;
      if (va != vb) return va < vb;
      return a > b;
    });
    ClauseShape shape;
    unsigned bits = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const auto lit = literals[j];
      const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (var > formula.variables) {
        throw ParseError("variable " + std::to_string(var) + " exceeds " +
                             std::to_string(formula.variables),
                         at);
      }
      shape.variables[j] = var;
      bits = (bits << 1) | (lit < 0 ? 1U : 0U);
    }
    shape.pattern = bits + 1;
    formula.clauses.insert(shape);
    literals.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string word;
    if (!(words >> word) || word == "c" || word[0] == 'c' || word[0] == '%') {
      continue;
    }
    if (word == "p") {
      std::string kind;
      long long vars = -1;
      long long count = -1;
      if (!(words >> kind >> vars >> count) || kind != "cnf" || vars < 1 ||
          count < 0) {
        throw ParseError("bad header, expected 'p cnf <vars> <clauses>'",
                         line_no);
      }
      if (have_header) throw ParseError("duplicate header", line_no);
      have_header = true;
      formula.variables = static_cast<std::size_t>(vars);
      continue;
    }
    if (!have_header) throw ParseError("clause before 'p cnf' header", line_no);
    do {
      long long lit = 0;
      std::istringstream number(word);
      if (!(number >> lit) || !number.eof()) {
        throw ParseError("bad literal '" + word + "'", line_no);
      }
      if (lit == 0) {
        finish_clause(line_no);
      } else {
        literals.push_back(lit);
      }
    } while (words >> word);
  }
  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (!literals.empty()) throw ParseError("last clause is not terminated by 0");
  return formula;
}

namespace detail {

inline Action aux_get(std::size_t i) {
  return Action::focused(Focus::auxiliary(i), kGet);
}

}  // namespace detail

// Falls through past its last instruction exactly when the first literal
// holds; otherwise probes the next literal. Positions 2 and 4 are #2 so that
// a satisfied literal lands two past the snippet (see gen_3sat).
inline InstructionSequence check_snippet(const ClauseShape& shape) {
  std::vector<Instruction> out;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j > 0) out.push_back(Instruction::forward_jump(2));
    const auto a = detail::aux_get(shape.variables[j]);
    out.push_back(shape.negated(j) ? Instruction::negative_test(a)
                                   : Instruction::positive_test(a));
  }
  return InstructionSequence(std::move(out));
}

// Binary counter over aux:1..aux:k (t counts as 0). Reaching the end of a
// NEXT_i for i < k with a carry falls into NEXT_{i+1}; an increment without
// carry jumps past the final !f. Wrapping around from all-f replies f.
inline InstructionSequence next_snippet(std::size_t k) {
  if (k == 0) throw std::invalid_argument("next_snippet needs k >= 1");
  std::vector<Instruction> out;
  for (std::size_t i = 1; i <= k; ++i) {
    const auto reg = Focus::auxiliary(i);
    out.push_back(Instruction::negative_test(Action::focused(reg, kGet)));
    out.push_back(Instruction::forward_jump(3));
    out.push_back(Instruction::basic(Action::focused(reg, kSetFalse)));
    out.push_back(Instruction::forward_jump(i < k ? 5 : 3));
    out.push_back(Instruction::basic(Action::focused(reg, kSetTrue)));
  }
  out.push_back(Instruction::terminate_false());
  return InstructionSequence(std::move(out));
}

// CHECK; NEXT; \#(72k^3 + 5k). Uses in:1..in:8k^3 and aux:1..aux:k.
inline InstructionSequence gen_3sat(std::size_t k) {
  if (k == 0) throw std::invalid_argument("gen_3sat needs k >= 1");
  const std::size_t clauses = clause_count(k);
  std::vector<Instruction> out;
  out.reserve(72 * k * k * k + 5 * k + 1);
  for (std::size_t m = 1; m <= clauses; ++m) {
    const bool last = m == clauses;
    out.push_back(Instruction::negative_test(
        Action::focused(Focus::input(m), kGet)));
    out.push_back(Instruction::forward_jump(last ? 6 : 8));
    for (const auto& u : check_snippet(phi(m, k))) out.push_back(u);
    if (last) {
      out.push_back(Instruction::terminate_true());
    } else {
      out.push_back(Instruction::forward_jump(2));
      out.push_back(Instruction::forward_jump(9));
    }
  }
  for (const auto& u : next_snippet(k)) out.push_back(u);
  out.push_back(Instruction::backward_jump(72 * k * k * k + 5 * k));
  return InstructionSequence(std::move(out));
}

// 72k^3 + 5k + 1
inline std::size_t gen_3sat_length(std::size_t k) {
  return 72 * k * k * k + 5 * k + 1;
}

// 3 * 2^(8k^3) - 2 in decimal: the length of the loop-free program for
// 3SAT(k) obtained from its truth table.
inline std::string loop_free_3sat_length(std::size_t k) {
  // Little-endian base 10^9 digits.
  std::vector<std::uint32_t> digits{3};
  const auto bits = clause_count(k);
  for (std::size_t i = 0; i < bits; ++i) {
    std::uint64_t carry = 0;
    for (auto& d : digits) {
      const std::uint64_t v = std::uint64_t{d} * 2 + carry;
      d = static_cast<std::uint32_t>(v % 1000000000U);
      carry = v / 1000000000U;
    }
    if (carry) digits.push_back(static_cast<std::uint32_t>(carry));
  }
  // Subtract 2; the value is at least 3 * 2^8, so borrows terminate.
  for (std::size_t i = 0, sub = 2; sub != 0; ++i) {
    if (digits[i] >= sub) {
      digits[i] -= static_cast<std::uint32_t>(sub);
      sub = 0;
    } else {
      digits[i] = digits[i] + 1000000000U - static_cast<std::uint32_t>(sub);
      sub = 1;
    }
  }
  while (digits.size() > 1 && digits.back() == 0) digits.pop_back();
  std::string out = std::to_string(digits.back());
  for (std::size_t i = digits.size() - 1; i-- > 0;) {
    const auto chunk = std::to_string(digits[i]);
    out += std::string(9 - chunk.size(), '0') + chunk;
  }
  return out;
}

}  // namespace pglb

#endif  // PGLB_SAT3_HPP_
