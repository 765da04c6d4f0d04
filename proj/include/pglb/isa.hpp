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

// Instruction set of PGLB with Boolean termination: basic and test
// instructions over actions, relative forward and backward jumps, and the
// two termination instructions. Also the textual syntax used by every tool
// in this project:
//
//   seq    := instr ((";" | newline) instr)*
//   instr  := "!t" | "!f" | "#" nat | "\#" nat | ("+" | "-")? action
//   action := focus "." method | ident
//   focus  := "in:" nat | "aux:" nat | [A-Za-z0-9_]+
//
// "//" starts a comment that runs to the end of the line.

#ifndef PGLB_ISA_HPP_
#define PGLB_ISA_HPP_

#include <charconv>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pglb/error.hpp"

namespace pglb {

// Name under which a service is registered in a family. Register foci of
// computed functions are in:n and aux:n; anything else is a named focus.
struct Focus {
  enum class Kind { input, auxiliary, named };

  Kind kind = Kind::named;
  std::size_t index = 0;
  std::string name;

  static Focus input(std::size_t i) { return {Kind::input, i, {}}; }
  static Focus auxiliary(std::size_t i) { return {Kind::auxiliary, i, {}}; }
  static Focus named(std::string n) { return {Kind::named, 0, std::move(n)}; }

  std::string str() const {
    switch (kind) {
      case Kind::input:
        return "in:" + std::to_string(index);
      case Kind::auxiliary:
        return "aux:" + std::to_string(index);
      case Kind::named:
        break;
    }
    return name;
  }

  auto operator<=>(const Focus&) const = default;
};

struct Method {
  std::string name;

  auto operator<=>(const Method&) const = default;
};

inline const Method kGet{"get"};
inline const Method kSetTrue{"set:t"};
inline const Method kSetFalse{"set:f"};

// A basic action: either a plain symbol (a, b, ...), a focused method call
// f.m, or the internal action tau produced by the use operator.
class Action {
 public:
  enum class Kind { plain, focused, tau };

  Action() = default;

  static Action plain(std::string symbol) {
    Action a;
    a.kind_ = Kind::plain;
    a.name_ = std::move(symbol);
    return a;
  }
  static Action focused(Focus focus, Method method) {
    Action a;
    a.kind_ = Kind::focused;
    a.focus_ = std::move(focus);
    a.name_ = std::move(method.name);
    return a;
  }
  static Action tau() {
    Action a;
    a.kind_ = Kind::tau;
    return a;
  }

  Kind kind() const { return kind_; }
  bool is_focused() const { return kind_ == Kind::focused; }
  bool is_tau() const { return kind_ == Kind::tau; }

  // Only meaningful for focused actions.
  const Focus& focus() const { return focus_; }
  Method method() const { return Method{name_}; }
  const std::string& symbol() const { return name_; }

  std::string str() const {
    switch (kind_) {
      case Kind::plain:
        return name_;
      case Kind::focused:
        return focus_.str() + "." + name_;
      case Kind::tau:
        break;
    }
    return "tau";
  }

  auto operator<=>(const Action&) const = default;

 private:
  Kind kind_ = Kind::tau;
  Focus focus_;
  std::string name_;
};

struct Instruction {
  enum class Op {
    basic,
    positive_test,
    negative_test,
    forward_jump,
    backward_jump,
    terminate_true,
    terminate_false,
  };

  Op op = Op::terminate_true;
  Action action;
  std::size_t distance = 0;

  static Instruction basic(Action a) { return {Op::basic, std::move(a), 0}; }
  static Instruction positive_test(Action a) {
    return {Op::positive_test, std::move(a), 0};
  }
  static Instruction negative_test(Action a) {
    return {Op::negative_test, std::move(a), 0};
  }
  static Instruction forward_jump(std::size_t l) {
    return {Op::forward_jump, {}, l};
  }
  static Instruction backward_jump(std::size_t l) {
    return {Op::backward_jump, {}, l};
  }
  static Instruction terminate_true() { return {Op::terminate_true, {}, 0}; }
  static Instruction terminate_false() { return {Op::terminate_false, {}, 0}; }

  bool is_jump() const {
    return op == Op::forward_jump || op == Op::backward_jump;
  }
  bool performs_action() const {
    return op == Op::basic || op == Op::positive_test ||
           op == Op::negative_test;
  }

  std::string str() const {
    switch (op) {
      case Op::basic:
        return action.str();
      case Op::positive_test:
        return "+" + action.str();
      case Op::negative_test:
        return "-" + action.str();
      case Op::forward_jump:
        return "#" + std::to_string(distance);
      case Op::backward_jump:
        return "\\#" + std::to_string(distance);
      case Op::terminate_true:
        return "!t";
      case Op::terminate_false:
        break;
    }
    return "!f";
  }

  bool operator==(const Instruction&) const = default;
};

// Non-empty list of primitive instructions. Positions are 1-based.
class InstructionSequence {
 public:
  explicit InstructionSequence(std::vector<Instruction> instructions)
      : instructions_(std::move(instructions)) {
    if (instructions_.empty()) {
      throw std::invalid_argument("instruction sequence must not be empty");
    }
  }
  InstructionSequence(std::initializer_list<Instruction> instructions)
      : InstructionSequence(std::vector<Instruction>(instructions)) {}

  std::size_t size() const { return instructions_.size(); }

  // u_i for 1 <= i <= size().
  const Instruction& at(std::size_t position) const {
    return instructions_.at(position - 1);
  }

  std::span<const Instruction> instructions() const { return instructions_; }
  auto begin() const { return instructions_.begin(); }
  auto end() const { return instructions_.end(); }

  // I;J
  friend InstructionSequence operator+(const InstructionSequence& lhs,
                                       const InstructionSequence& rhs) {
    std::vector<Instruction> joined(lhs.instructions_);
    joined.insert(joined.end(), rhs.instructions_.begin(),
                  rhs.instructions_.end());
    return InstructionSequence(std::move(joined));
  }

  bool operator==(const InstructionSequence&) const = default;

 private:
  std::vector<Instruction> instructions_;
};

namespace detail {

inline bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

inline bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\f\v");
  return s.substr(first, last - first + 1);
}

inline bool parse_nat(std::string_view digits, std::size_t& out) {
  if (digits.empty()) return false;
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
  }
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, out);
  return ec == std::errc() && ptr == end;
}

class SequenceParser {
 public:
  Instruction parse_instruction(std::string_view token, std::size_t line,
                                std::size_t column) const {
    line_ = line;
    column_ = column;
    if (token == "!t") return Instruction::terminate_true();
    if (token == "!f") return Instruction::terminate_false();
    if (token.starts_with("\\#")) {
      return Instruction::backward_jump(distance(token.substr(2)));
    }
    if (token.starts_with("#")) {
      return Instruction::forward_jump(distance(token.substr(1)));
    }
    if (token.starts_with("+")) {
      return Instruction::positive_test(action(token.substr(1)));
    }
    // Both ASCII '-' and U+2212 are accepted as the negative test prefix.
    if (token.starts_with("-")) {
      return Instruction::negative_test(action(token.substr(1)));
    }
    if (token.starts_with("\xE2\x88\x92")) {
      return Instruction::negative_test(action(token.substr(3)));
    }
    return Instruction::basic(action(token));
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  std::size_t distance(std::string_view digits) const {
    std::size_t l = 0;
    if (!parse_nat(digits, l)) {
      fail("expected a jump length, got '" + std::string(digits) + "'");
    }
    return l;
  }

  Focus focus(std::string_view text) const {
    std::size_t index = 0;
    if (text.starts_with("in:")) {
      if (!parse_nat(text.substr(3), index)) fail("bad input focus");
      return Focus::input(index);
    }
    if (text.starts_with("aux:")) {
      if (!parse_nat(text.substr(4), index)) fail("bad auxiliary focus");
      return Focus::auxiliary(index);
    }
    if (!is_ident(text)) fail("bad focus '" + std::string(text) + "'");
    return Focus::named(std::string(text));
  }

  Action action(std::string_view text) const {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
      if (!is_ident(text) || (text[0] >= '0' && text[0] <= '9')) {
        fail("malformed instruction '" + std::string(text) + "'");
      }
      if (text == "tau") fail("tau is reserved and cannot appear in programs");
      return Action::plain(std::string(text));
    }
    const auto method = text.substr(dot + 1);
    if (method.empty()) fail("missing method after '.'");
    for (char c : method) {
      if (!is_ident_char(c) && c != ':') {
        fail("bad method '" + std::string(method) + "'");
      }
    }
    return Action::focused(focus(text.substr(0, dot)),
                           Method{std::string(method)});
  }

  mutable std::size_t line_ = 0;
  mutable std::size_t column_ = 0;
};

}  // namespace detail

inline InstructionSequence parse(std::string_view text) {
  std::vector<Instruction> instructions;
  detail::SequenceParser parser;
  std::size_t line_no = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    ++line_no;
    auto line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    auto line = text.substr(line_start, line_end - line_start);
    if (const auto comment = line.find("//"); comment != line.npos) {
      line = line.substr(0, comment);
    }
    std::size_t item_start = 0;
    while (item_start <= line.size()) {
      auto item_end = line.find(';', item_start);
      if (item_end == std::string_view::npos) item_end = line.size();
      const auto raw = line.substr(item_start, item_end - item_start);
      const auto token = detail::trim(raw);
      if (!token.empty()) {
        const auto column =
            item_start + static_cast<std::size_t>(token.data() - raw.data()) +
            1;
        for (char c : token) {
          if (c == ' ' || c == '\t') {
            throw ParseError("unexpected whitespace inside '" +
                                 std::string(token) + "'",
                             line_no, column);
          }
        }
        instructions.push_back(
            parser.parse_instruction(token, line_no, column));
      }
      item_start = item_end + 1;
    }
    line_start = line_end + 1;
  }
  if (instructions.empty()) throw ParseError("empty instruction sequence");
  return InstructionSequence(std::move(instructions));
}

// Canonical single-line form, "; " between instructions.
inline std::string render(const InstructionSequence& seq) {
  std::string out;
  for (const auto& instr : seq) {
    if (!out.empty()) out += "; ";
    out += instr.str();
  }
  return out;
}

// One instruction per line; parses back to the same sequence.
inline std::string render_lines(const InstructionSequence& seq) {
  std::string out;
  for (const auto& instr : seq) {
    out += instr.str();
    out += '\n';
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os,
                                const InstructionSequence& seq) {
  return os << render(seq);
}

inline std::size_t length(const InstructionSequence& seq) { return seq.size(); }

inline bool is_loop_free(const InstructionSequence& seq) {
  for (const auto& instr : seq) {
    if (instr.op == Instruction::Op::backward_jump) return false;
  }
  return true;
}

inline std::set<Focus> foci_used(const InstructionSequence& seq) {
  std::set<Focus> foci;
  for (const auto& instr : seq) {
    if (instr.performs_action() && instr.action.is_focused()) {
      foci.insert(instr.action.focus());
    }
  }
  return foci;
}

}  // namespace pglb

#endif  // PGLB_ISA_HPP_
