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

#include "pglb/interaction.hpp"

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pglb/error.hpp"
#include "pglb/extraction.hpp"
#include "test_support.hpp"

namespace pglb {
namespace {

using testing::Rng;

const std::vector<Reply> kValues = {Reply::t, Reply::f, Reply::d};

ServiceFamily registers(const std::vector<std::pair<std::string, Reply>>& regs) {
  ServiceFamily u;
  for (const auto& [f, r] : regs) {
    u = compose(u, ServiceFamily::single(Focus::named(f), BooleanRegister(r)));
  }
  return u;
}

RegularThread term(const FiniteThread& t) { return RegularThread::from_finite(t); }

// Straightforward walk with a step budget large enough to cover every
// configuration of registers r0..r2 and the thread's states.
Reply bounded_walk(const RegularThread& t, ServiceFamily u) {
  const std::size_t budget = t.size() * 27 + 2;
  auto s = t.root();
  for (std::size_t step = 0; step < budget; ++step) {
    const auto& st = t.state(s);
    switch (st.kind) {
      case ThreadKind::success:
        return Reply::t;
      case ThreadKind::failure:
        return Reply::f;
      case ThreadKind::deadlock:
        return Reply::d;
      case ThreadKind::post:
        break;
    }
    if (st.action.is_tau()) {
      s = st.on_true;
      continue;
    }
    if (!st.action.is_focused()) return Reply::d;
    const Service* svc = u.find(st.action.focus());
    if (!svc) return Reply::d;
    const Reply r = svc->reply(st.action.method());
    if (r == Reply::d) return Reply::d;
    u = u.with(st.action.focus(), svc->derive(st.action.method()));
    s = r == Reply::t ? st.on_true : st.on_false;
  }
  return Reply::d;
}

TEST(UseTest, Terminals) {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const auto u = testing::random_family(rng);
    EXPECT_TRUE(bisimilar(use_apply(term(FiniteThread::success()), u),
                          term(FiniteThread::success())));
    EXPECT_TRUE(bisimilar(use_apply(term(FiniteThread::failure()), u),
                          term(FiniteThread::failure())));
    EXPECT_TRUE(bisimilar(use_apply(RegularThread::deadlock(), u),
                          RegularThread::deadlock()));
  }
}

TEST(UseTest, AbsentFocusKeepsPost) {
  const auto t = extract(parse("+x.get; !t; !f"));
  EXPECT_TRUE(bisimilar(use_apply(t, ServiceFamily{}), t));
  EXPECT_TRUE(bisimilar(use_apply(t, registers({{"y", Reply::t}})), t));
}

TEST(UseTest, ProcessedActionsBecomeTau) {
  const auto t = extract(parse("+x.get; !t; !f"));
  const auto s = FiniteThread::success();
  const auto f = FiniteThread::failure();
  const auto tau = Action::tau();
  EXPECT_TRUE(bisimilar(use_apply(t, registers({{"x", Reply::t}})),
                        term(FiniteThread::prefix(tau, s))));
  EXPECT_TRUE(bisimilar(use_apply(t, registers({{"x", Reply::f}})),
                        term(FiniteThread::prefix(tau, f))));
  EXPECT_TRUE(bisimilar(use_apply(t, registers({{"x", Reply::d}})),
                        RegularThread::deadlock()));
  const auto w = extract(parse("x.set:f; +x.get; !t; !f"));
  EXPECT_TRUE(bisimilar(use_apply(w, registers({{"x", Reply::t}})),
                        term(FiniteThread::prefix(tau, FiniteThread::prefix(tau, f)))));
}

TEST(UseTest, TauIsPassedThrough) {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const auto t = testing::random_thread(rng, 5);
    const auto u = testing::random_family(rng);
    EXPECT_TRUE(bisimilar(use_apply(testing::tau_prefix(t), u), testing::tau_prefix(use_apply(t, u))));
  }
}

// x ⊴ f.m ⊵ y over a family holding f: tau into the branch picked by the
// reply with f's service derived, or D on a d reply.
TEST(UseProperty, ProcessedPost) {
  Rng rng(40);
  const std::vector<Method> methods = {kGet, kSetTrue, kSetFalse};
  for (int i = 0; i < 500; ++i) {
    const auto x = testing::random_thread(rng, 4);
    const auto y = testing::random_thread(rng, 4);
    const Focus f = Focus::named("r" + std::to_string(testing::uniform(rng, 0, 2)));
    const auto m = methods[testing::uniform(rng, 0, 2)];
    const auto u = testing::random_family(rng).with(
        f, BooleanRegister(testing::random_reply(rng)));
    const auto t = testing::post_of(x, Action::focused(f, m), y);
    const Service& s = *u.find(f);
    const auto derived = u.with(f, s.derive(m));
    const auto used = use_apply(t, u);
    switch (s.reply(m)) {
      case Reply::t:
        EXPECT_TRUE(bisimilar(used, testing::tau_prefix(use_apply(x, derived))));
        break;
      case Reply::f:
        EXPECT_TRUE(bisimilar(used, testing::tau_prefix(use_apply(y, derived))));
        break;
      case Reply::d:
        EXPECT_TRUE(bisimilar(used, RegularThread::deadlock()));
        break;
    }
  }
}

TEST(UseTest, StateCapIsEnforced) {
  const auto t = extract(parse(testing::kEq12));
  EXPECT_THROW(use_apply(t, registers({{"1", Reply::t}, {"2", Reply::t}}), 2),
               ResourceError);
}

TEST(ReplyTest, Terminals) {
  Rng rng(33);
  for (int i = 0; i < 50; ++i) {
    const auto u = testing::random_family(rng);
    EXPECT_EQ(reply(term(FiniteThread::success()), u), Reply::t);
    EXPECT_EQ(reply(term(FiniteThread::failure()), u), Reply::f);
    EXPECT_EQ(reply(RegularThread::deadlock(), u), Reply::d);
  }
}

TEST(ReplyTest, EqualityOfTwoRegisters) {
  const auto t = extract(parse(testing::kEq12));
  for (Reply b1 : kValues) {
    for (Reply b2 : kValues) {
      Reply expected = Reply::f;
      if (b1 == Reply::d || b2 == Reply::d) {
        expected = Reply::d;
      } else if (b1 == b2) {
        expected = Reply::t;
      }
      EXPECT_EQ(reply(t, registers({{"1", b1}, {"2", b2}})), expected)
          << b1 << b2;
    }
  }
}

TEST(ReplyTest, EqualityOfThreeRegisters) {
  const auto t = use_apply(extract(parse(testing::kE123)),
                           registers({{"0", Reply::t}}));
  for (auto id : t.reachable()) {
    const auto& s = t.state(id);
    if (s.kind == ThreadKind::post && s.action.is_focused()) {
      EXPECT_NE(s.action.focus(), Focus::named("0"));
    }
  }
  for (Reply b1 : kValues) {
    for (Reply b2 : kValues) {
      for (Reply b3 : kValues) {
        Reply expected = Reply::f;
        if (b1 == Reply::d || b2 == Reply::d ||
            (b1 == b2 && b3 == Reply::d)) {
          expected = Reply::d;
        } else if (b1 == b2 && b2 == b3) {
          expected = Reply::t;
        }
        EXPECT_EQ(reply(t, registers({{"1", b1}, {"2", b2}, {"3", b3}})),
                  expected)
            << b1 << b2 << b3;
      }
    }
  }
}

TEST(ReplyTest, AbsentFocusGivesD) {
  const auto t = extract(parse("+x.get; !t; !f"));
  EXPECT_EQ(reply(t, ServiceFamily{}), Reply::d);
  EXPECT_EQ(reply(t, encapsulate({Focus::named("x")}, registers({{"x", Reply::t}}))),
            Reply::d);
  EXPECT_EQ(reply(extract(parse("a; !t")), registers({{"a", Reply::t}})), Reply::d);
}

TEST(ReplyTest, NonTerminationGivesD) {
  EXPECT_EQ(reply(extract(parse("x.get; \\#1")), registers({{"x", Reply::t}})),
            Reply::d);
  // Toggles x forever.
  EXPECT_EQ(reply(extract(parse("-x.get; #3; x.set:f; \\#3; x.set:t; \\#5")),
                  registers({{"x", Reply::t}})),
            Reply::d);
  // Loops until x is false, then stops.
  EXPECT_EQ(reply(extract(parse("+x.get; #2; !f; x.set:f; \\#4")),
                  registers({{"x", Reply::t}})),
            Reply::f);
}

TEST(ReplyProperty, TauTransparency) {
  Rng rng(34);
  for (int i = 0; i < 500; ++i) {
    const auto t = testing::random_thread(rng, 6);
    const auto u = testing::random_family(rng);
    EXPECT_EQ(reply(testing::tau_prefix(t), u), reply(t, u));
  }
}

TEST(ReplyProperty, EncapsulatedFocusGivesD) {
  Rng rng(35);
  for (int i = 0; i < 500; ++i) {
    const auto u = testing::random_family(rng);
    const auto l = testing::random_thread(rng, 4);
    const auto r = testing::random_thread(rng, 4);
    // x ⊴ r0.get ⊵ y over ∂_{r0}(u)
    const auto t = testing::post_of(l, testing::reg("r0", kGet), r);
    EXPECT_EQ(reply(t, encapsulate({Focus::named("r0")}, u)), Reply::d);
  }
}

TEST(ReplyProperty, MatchesBoundedWalk) {
  Rng rng(36);
  for (int i = 0; i < 2000; ++i) {
    const auto t = testing::random_thread(rng, 8, true);
    const auto u = testing::random_family(rng);
    EXPECT_EQ(reply(t, u), bounded_walk(t, u));
  }
}

// (T/u)!v = T!(u ⊕ v) for families on disjoint foci.
TEST(ReplyProperty, UseThenReply) {
  Rng rng(37);
  const std::vector<Focus> all = {Focus::named("r0"), Focus::named("r1"),
                                  Focus::named("r2")};
  for (int i = 0; i < 1000; ++i) {
    const auto t = testing::random_thread(rng, 8, true);
    const auto w = testing::random_family(rng);
    std::set<Focus> left;
    for (const auto& f : all) {
      if (testing::coin(rng)) left.insert(f);
    }
    std::set<Focus> right;
    for (const auto& f : all) {
      if (!left.contains(f)) right.insert(f);
    }
    const auto u = encapsulate(right, w);
    const auto v = encapsulate(left, w);
    EXPECT_EQ(reply(use_apply(t, u), v), reply(t, w));
  }
}

// π_n(T/u) = π_n(T)/u
TEST(UseProperty, ProjectionDistributes) {
  Rng rng(38);
  for (int i = 0; i < 100; ++i) {
    const auto t = testing::random_thread(rng, 6);
    const auto u = testing::random_family(rng);
    const auto used = use_apply(t, u);
    for (std::size_t n = 0; n <= 20; ++n) {
      EXPECT_EQ(project(used, n), use_apply(project(t, n), u)) << n;
    }
  }
}

TEST(ComputeTest, EqualityOnInputs) {
  const auto prog = parse("+in:1.get; #2; #4; +in:2.get; !t; !f; "
                          "-in:2.get; \\#3; \\#3");
  EXPECT_EQ(compute(prog, {true, true}, 0), Reply::t);
  EXPECT_EQ(compute(prog, {false, false}, 0), Reply::t);
  EXPECT_EQ(compute(prog, {true, false}, 0), Reply::f);
  EXPECT_EQ(compute(prog, {true}, 0), Reply::d);
}

TEST(ComputeTest, AuxiliaryRegistersStartTrue) {
  EXPECT_EQ(compute(parse("+aux:1.get; !t; !f"), {}, 1), Reply::t);
  EXPECT_EQ(compute(parse("aux:1.set:f; +aux:1.get; !t; !f"), {}, 1), Reply::f);
  EXPECT_EQ(compute(parse("+aux:2.get; !t; !f"), {}, 1), Reply::d);
}

TEST(TraceTest, EqualityRun) {
  const auto prog = parse("+in:1.get; #2; #4; +in:2.get; !t; !f; "
                          "-in:2.get; \\#3; \\#3");
  const auto log = trace(prog, {true, true}, 0, 100);
  ASSERT_EQ(log.size(), 4u);
  EXPECT_EQ(log[0].str(), "pos 1: +in:1.get replied t");
  EXPECT_EQ(log[1].str(), "pos 2: #2");
  EXPECT_EQ(log[2].str(), "pos 4: +in:2.get replied t");
  EXPECT_EQ(log[3].str(), "pos 5: !t terminate S+");
  EXPECT_EQ(trace_outcome(log), Reply::t);
}

TEST(TraceTest, DeadlocksAndTruncation) {
  auto log = trace(parse("#1; \\#1"), {}, 0, 100);
  EXPECT_EQ(log.back().str(), "deadlock: infinite jump chain");
  EXPECT_EQ(trace_outcome(log), Reply::d);
  log = trace(parse("in:3.get; !t"), {true}, 0, 100);
  EXPECT_EQ(log.back().str(), "deadlock: no service for in:3.get");
  log = trace(parse("#4; !t"), {}, 0, 100);
  EXPECT_EQ(log.back().str(), "deadlock: position 0 out of range");
  log = trace(parse("aux:1.get; \\#1"), {}, 1, 10);
  EXPECT_EQ(log.size(), 11u);
  EXPECT_EQ(log.back().event, TraceStep::Event::truncated);
  EXPECT_EQ(trace_outcome(log), std::nullopt);
}

TEST(TraceProperty, AgreesWithCompute) {
  Rng rng(39);
  for (int i = 0; i < 2000; ++i) {
    const auto prog = testing::random_program(rng, 14, 2, 2);
    const auto inputs = testing::bits_of(testing::uniform(rng, 0, 3), 2);
    const auto log = trace(prog, inputs, 2, 10000);
    const auto expected = trace_outcome(log).value_or(Reply::d);
    EXPECT_EQ(compute(prog, inputs, 2), expected) << render(prog);
  }
}

}  // namespace
}  // namespace pglb
