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

#include "pglb/isa.hpp"

#include <functional>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pglb/error.hpp"
#include "test_support.hpp"

namespace pglb {
namespace {

using Op = Instruction::Op;

TEST(ParseTest, SingleTermination) {
  const auto seq = parse("!t");
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq.at(1), Instruction::terminate_true());
}

TEST(ParseTest, LoopProgram) {
  const auto seq = parse(testing::kLoopProgram);
  const InstructionSequence expected{
      Instruction::basic(Action::plain("a")),
      Instruction::positive_test(Action::plain("b")),
      Instruction::forward_jump(2),
      Instruction::forward_jump(3),
      Instruction::basic(Action::plain("c")),
      Instruction::backward_jump(4),
      Instruction::positive_test(Action::plain("d")),
      Instruction::terminate_true(),
      Instruction::terminate_false()};
  EXPECT_EQ(seq, expected);
}

TEST(ParseTest, FocusedTest) {
  const auto seq = parse("+in:1.get; #2; !t; !f");
  const InstructionSequence expected{
      Instruction::positive_test(Action::focused(Focus::input(1), kGet)),
      Instruction::forward_jump(2), Instruction::terminate_true(),
      Instruction::terminate_false()};
  EXPECT_EQ(seq, expected);
}

TEST(ParseTest, FociKinds) {
  const auto seq = parse("aux:0.set:t; 7.get; reg_a.set:f; -in:12.get");
  EXPECT_EQ(seq.at(1).action.focus(), Focus::auxiliary(0));
  EXPECT_EQ(seq.at(1).action.method(), kSetTrue);
  EXPECT_EQ(seq.at(2).action.focus(), Focus::named("7"));
  EXPECT_EQ(seq.at(3).action.focus(), Focus::named("reg_a"));
  EXPECT_EQ(seq.at(4).op, Op::negative_test);
  EXPECT_EQ(seq.at(4).action.focus(), Focus::input(12));
}

TEST(ParseTest, NewlinesCommentsAndUnicodeMinus) {
  const auto seq = parse(
      "// header comment\n"
      "\xE2\x88\x92in:1.get   // negative test\n"
      "#2;\n"
      "\n"
      "!t; !f\n");
  EXPECT_EQ(render(seq), "-in:1.get; #2; !t; !f");
}

TEST(ParseTest, ZeroJumpsAreLegal) {
  const auto seq = parse("#0; \\#0");
  EXPECT_EQ(seq.at(1), Instruction::forward_jump(0));
  EXPECT_EQ(seq.at(2), Instruction::backward_jump(0));
}

TEST(ParseTest, ErrorsCarryPositions) {
  try {
    parse("a; +b;\n  #x");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("  ;  // nothing\n"), ParseError);
  EXPECT_THROW(parse("tau"), ParseError);
  EXPECT_THROW(parse("+"), ParseError);
  EXPECT_THROW(parse("in:x.get"), ParseError);
  EXPECT_THROW(parse("f."), ParseError);
  EXPECT_THROW(parse("a b"), ParseError);
  EXPECT_THROW(parse("!x"), ParseError);
  EXPECT_THROW(parse("#99999999999999999999999"), ParseError);
}

TEST(RenderTest, Examples) {
  EXPECT_EQ(render(InstructionSequence{Instruction::terminate_true()}), "!t");
  EXPECT_EQ(render(parse(testing::kLoopProgram)),
            "a; +b; #2; #3; c; \\#4; +d; !t; !f");
  EXPECT_EQ(render(InstructionSequence{Instruction::basic(Action::plain("a")),
                                       Instruction::backward_jump(1)}),
            "a; \\#1");
}

TEST(RenderTest, LinesFormParsesBack) {
  const auto seq = parse(testing::kE123);
  EXPECT_EQ(parse(render_lines(seq)), seq);
}

// Exhaustive round trip: all sequences of length <= 4 over 17 instructions
// and of length 5..6 over a reduced alphabet of 7.
TEST(RoundTripProperty, ParseRenderIdentity) {
  const std::vector<Action> actions = {
      Action::plain("a"), Action::focused(Focus::input(1), kGet),
      Action::focused(Focus::auxiliary(2), kSetTrue)};
  std::vector<Instruction> full;
  for (const auto& a : actions) {
    full.push_back(Instruction::basic(a));
    full.push_back(Instruction::positive_test(a));
    full.push_back(Instruction::negative_test(a));
  }
  for (std::size_t l = 0; l < 3; ++l) {
    full.push_back(Instruction::forward_jump(l));
    full.push_back(Instruction::backward_jump(l));
  }
  full.push_back(Instruction::terminate_true());
  full.push_back(Instruction::terminate_false());
  ASSERT_EQ(full.size(), 17u);
  const std::vector<Instruction> reduced = {
      full[0], full[4], full[8], full[9], full[12], full[15], full[16]};

  std::size_t checked = 0;
  std::vector<Instruction> current;
  const std::function<void(const std::vector<Instruction>&, std::size_t)>
      walk = [&](const std::vector<Instruction>& alphabet, std::size_t len) {
        if (current.size() == len) {
          const InstructionSequence seq(current);
          const auto text = render(seq);
          ASSERT_EQ(parse(text), seq) << text;
          ASSERT_EQ(render(parse(text)), text);
          ++checked;
          return;
        }
        for (const auto& u : alphabet) {
          current.push_back(u);
          walk(alphabet, len);
          current.pop_back();
        }
      };
  for (std::size_t len = 1; len <= 4; ++len) walk(full, len);
  for (std::size_t len = 5; len <= 6; ++len) walk(reduced, len);
  EXPECT_EQ(checked, 17u + 289u + 4913u + 83521u + 16807u + 117649u);
}

TEST(RoundTripProperty, RenderIsCanonicalAfterOneTrip) {
  const std::string messy = "a ;+b;\n#2 ;  \\#1\n\n!t";
  const auto once = render(parse(messy));
  EXPECT_EQ(once, "a; +b; #2; \\#1; !t");
  EXPECT_EQ(render(parse(once)), once);
}

TEST(LengthTest, CountsInstructions) {
  EXPECT_EQ(length(parse(testing::kLoopProgram)), 9u);
  EXPECT_EQ(length(parse("!t")), 1u);
}

TEST(LengthTest, ConcatenationAddsLengths) {
  testing::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_program(rng, 12, 2, 2);
    const auto b = testing::random_program(rng, 12, 2, 2);
    const auto ab = a + b;
    EXPECT_EQ(length(ab), length(a) + length(b));
    EXPECT_EQ(ab.at(length(a) + 1), b.at(1));
  }
}

TEST(LoopFreeTest, Examples) {
  EXPECT_FALSE(is_loop_free(parse("a; \\#1")));
  EXPECT_TRUE(is_loop_free(parse("!t")));
  EXPECT_TRUE(is_loop_free(parse("a; #0; +b; !f")));
}

TEST(FociUsedTest, Examples) {
  EXPECT_TRUE(foci_used(parse("!t")).empty());
  EXPECT_EQ(foci_used(parse(testing::kEq12)),
            (std::set<Focus>{Focus::named("1"), Focus::named("2")}));
  EXPECT_EQ(foci_used(parse("a; +in:2.get; aux:1.set:f; in:2.get")),
            (std::set<Focus>{Focus::input(2), Focus::auxiliary(1)}));
}

TEST(FocusTest, RenderingIsInjective) {
  const std::vector<Focus> foci = {Focus::input(1), Focus::auxiliary(1),
                                   Focus::named("1"), Focus::input(10),
                                   Focus::auxiliary(0), Focus::named("in")};
  std::set<std::string> names;
  for (const auto& f : foci) names.insert(f.str());
  EXPECT_EQ(names.size(), foci.size());
}

}  // namespace
}  // namespace pglb
