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

// Interaction of threads with service families: the use operator T/u, the
// reply operator T!u, and the computation scheme for partial Boolean
// functions built from them.
//
// Both operators run over configurations (thread state, state of every
// service in the family). Services are interned per focus so a family state
// is a vector of small integers. Nontermination is decided by cycle
// detection on configurations, which is exact for finite-state services;
// a per-service state cap turns anything else into a ResourceError.

#ifndef PGLB_INTERACTION_HPP_
#define PGLB_INTERACTION_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pglb/error.hpp"
#include "pglb/extraction.hpp"
#include "pglb/isa.hpp"
#include "pglb/services.hpp"
#include "pglb/threads.hpp"

namespace pglb {

inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 20;

namespace detail {

// Interned view of a service family.
class FamilyRuntime {
 public:
  using StateIndex = std::uint32_t;
  using Config = std::vector<StateIndex>;
  static constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);

  struct Step {
    Reply reply;
    StateIndex next;
  };

  FamilyRuntime(const ServiceFamily& family, std::size_t state_cap)
      : state_cap_(state_cap) {
    for (const auto& [focus, service] : family) {
      slot_of_.emplace(focus, slots_.size());
      foci_.push_back(focus);
      slots_.emplace_back();
      intern(slots_.back(), service, focus);
    }
  }

  std::size_t size() const { return slots_.size(); }

  // Slot of the service addressed by `a`, or kNoSlot when `a` is not a
  // focused action or its focus is not in the family.
  std::size_t slot(const Action& a) const {
    if (!a.is_focused()) return kNoSlot;
    auto it = slot_of_.find(a.focus());
    return it == slot_of_.end() ? kNoSlot : it->second;
  }

  std::uint32_t method_id(const Method& m) {
    auto [it, inserted] = methods_.emplace(m.name, methods_.size());
    if (inserted) method_list_.push_back(m);
    return it->second;
  }

  Config initial() const { return Config(slots_.size(), 0); }

  Step apply(std::size_t slot, StateIndex state, std::uint32_t method) {
    auto& s = slots_[slot];
    const std::uint64_t key =
        (static_cast<std::uint64_t>(state) << 32) | method;
    if (auto it = s.transitions.find(key); it != s.transitions.end()) {
      return it->second;
    }
    const Service& current = s.states[state];
    const Method& m = method_list_[method];
    const Reply r = current.reply(m);
    const StateIndex next = intern(s, current.derive(m), foci_[slot]);
    const Step step{r, next};
    s.transitions.emplace(key, step);
    return step;
  }

  ServiceFamily family(const Config& config) const {
    ServiceFamily u;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      u = compose(u, ServiceFamily::single(foci_[i],
                                           slots_[i].states[config[i]]));
    }
    return u;
  }

 private:
  struct Slot {
    std::vector<Service> states;
    std::unordered_map<std::string, StateIndex> ids;
    std::unordered_map<std::uint64_t, Step> transitions;
  };

  StateIndex intern(Slot& s, const Service& service, const Focus& focus) {
    auto [it, inserted] = s.ids.emplace(
        service.state_key(), static_cast<StateIndex>(s.states.size()));
    if (inserted) {
      if (s.states.size() >= state_cap_) {
        throw ResourceError("service at focus " + focus.str() +
                            " exceeds the state cap of " +
                            std::to_string(state_cap_));
      }
      s.states.push_back(service);
    }
    return it->second;
  }

  std::size_t state_cap_;
  std::vector<Focus> foci_;
  std::map<Focus, std::size_t> slot_of_;
  std::vector<Slot> slots_;
  std::unordered_map<std::string, std::uint32_t> methods_;
  std::vector<Method> method_list_;
};

// Per-state slot and method ids of a thread against one family runtime.
struct Addressing {
  std::vector<std::size_t> slot;
  std::vector<std::uint32_t> method;

  Addressing(const RegularThread& t, FamilyRuntime& runtime)
      : slot(t.size(), FamilyRuntime::kNoSlot), method(t.size(), 0) {
    for (std::size_t id = 0; id < t.size(); ++id) {
      const auto& s = t.state(id);
      if (s.kind != ThreadKind::post) continue;
      slot[id] = runtime.slot(s.action);
      if (slot[id] != FamilyRuntime::kNoSlot) {
        method[id] = runtime.method_id(s.action.method());
      }
    }
  }
};

}  // namespace detail

// T/u materialized over the reachable configurations. Processed actions
// become tau-prefixes (or D on a reply d); actions whose focus is not in u
// are kept with their two continuations.
inline RegularThread use_apply(const RegularThread& thread,
                               const ServiceFamily& family,
                               std::size_t state_cap = kDefaultStateCap) {
  using detail::FamilyRuntime;
  using StateId = RegularThread::StateId;
  FamilyRuntime runtime(family, state_cap);
  const detail::Addressing addr(thread, runtime);

  using Key = std::pair<StateId, FamilyRuntime::Config>;
  std::map<Key, StateId> ids;
  std::vector<Key> pending;
  std::vector<RegularThread::State> out;
  const auto node = [&](StateId s, FamilyRuntime::Config c) -> StateId {
    Key key{s, std::move(c)};
    auto [it, inserted] = ids.emplace(key, out.size());
    if (inserted) {
      if (out.size() >= state_cap) {
        throw ResourceError("use operator exceeds the configuration cap of " +
                            std::to_string(state_cap));
      }
      out.emplace_back();
      pending.push_back(std::move(key));
    }
    return it->second;
  };

  const StateId root = node(thread.root(), runtime.initial());
  for (std::size_t next = 0; next < pending.size(); ++next) {
    const auto [s, config] = pending[next];
    const auto& st = thread.state(s);
    RegularThread::State result{st.kind, {}, 0, 0};
    if (st.kind == ThreadKind::post) {
      const std::size_t slot = addr.slot[s];
      if (slot == FamilyRuntime::kNoSlot) {
        result.action = st.action;
        result.on_true = node(st.on_true, config);
        result.on_false = node(st.on_false, config);
      } else {
        const auto step = runtime.apply(slot, config[slot], addr.method[s]);
        if (step.reply == Reply::d) {
          result.kind = ThreadKind::deadlock;
        } else {
          auto derived = config;
          derived[slot] = step.next;
          const StateId cont = node(
              step.reply == Reply::t ? st.on_true : st.on_false, derived);
          result.action = Action::tau();
          result.on_true = cont;
          result.on_false = cont;
        }
      }
    }
    out[next] = std::move(result);
  }
  return RegularThread(std::move(out), root);
}

// T/u on a finite term.
inline FiniteThread use_apply(const FiniteThread& term,
                              const ServiceFamily& family,
                              std::size_t state_cap = kDefaultStateCap) {
  using detail::FamilyRuntime;
  FamilyRuntime runtime(family, state_cap);
  std::map<std::pair<const void*, FamilyRuntime::Config>, FiniteThread> memo;
  const std::function<FiniteThread(const FiniteThread&,
                                   const FamilyRuntime::Config&)>
      go = [&](const FiniteThread& t,
               const FamilyRuntime::Config& config) -> FiniteThread {
    if (!t.is_post()) return t;
    auto key = std::make_pair(t.identity(), config);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    FiniteThread result = FiniteThread::deadlock();
    const std::size_t slot = runtime.slot(t.action());
    if (slot == FamilyRuntime::kNoSlot) {
      result = FiniteThread::post(t.action(), go(t.on_true(), config),
                                  go(t.on_false(), config));
    } else {
      const auto step = runtime.apply(slot, config[slot],
                                      runtime.method_id(t.action().method()));
      if (step.reply != Reply::d) {
        auto derived = config;
        derived[slot] = step.next;
        result = FiniteThread::prefix(
            Action::tau(),
            go(step.reply == Reply::t ? t.on_true() : t.on_false(), derived));
      }
    }
    memo.emplace(std::move(key), result);
    return result;
  };
  return go(term, runtime.initial());
}

// T!u: the Boolean value delivered at termination of T/u, d if T/u
// deadlocks, hits an action no service in u can process, or runs forever.
inline Reply reply(const RegularThread& thread, const ServiceFamily& family,
                   std::size_t state_cap = kDefaultStateCap) {
  using detail::FamilyRuntime;
  using StateId = RegularThread::StateId;
  FamilyRuntime runtime(family, state_cap);
  const detail::Addressing addr(thread, runtime);

  struct Config {
    StateId state;
    FamilyRuntime::Config services;
    bool operator==(const Config&) const = default;
  };
  // Advances one configuration; returns the final reply when the walk ends.
  const auto advance = [&](Config& c) -> std::optional<Reply> {
    const auto& st = thread.state(c.state);
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
      c.state = st.on_true;
      return std::nullopt;
    }
    const std::size_t slot = addr.slot[c.state];
    if (slot == FamilyRuntime::kNoSlot) return Reply::d;
    const auto step = runtime.apply(slot, c.services[slot], addr.method[c.state]);
    if (step.reply == Reply::d) return Reply::d;
    c.services[slot] = step.next;
    c.state = step.reply == Reply::t ? st.on_true : st.on_false;
    return std::nullopt;
  };

  // Brent's cycle detection over the deterministic configuration walk.
  Config tortoise{thread.root(), runtime.initial()};
  Config hare = tortoise;
  if (auto done = advance(hare)) return *done;
  std::size_t power = 1;
  std::size_t lambda = 1;
  while (!(hare.state == tortoise.state && hare == tortoise)) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    if (auto done = advance(hare)) return *done;
    ++lambda;
  }
  return Reply::d;
}

// An instruction sequence prepared for repeated evaluation under the
// computation scheme: |I| / ⊕_{i<=l} aux:i.B(t), then ! ⊕ in:i.B(b_i).
class Computation {
 public:
  Computation(const InstructionSequence& program, std::size_t aux_count,
              std::size_t state_cap = kDefaultStateCap)
      : state_cap_(state_cap),
        used_(use_apply(extract(program),
                        register_family(std::vector<Reply>{}, aux_count).first,
                        state_cap)) {}

  const RegularThread& thread() const { return used_; }

  Reply operator()(const std::vector<bool>& inputs) const {
    return reply(used_, register_family(inputs, 0).second, state_cap_);
  }

 private:
  std::size_t state_cap_;
  RegularThread used_;
};

// (|I| / ⊕ aux:i.B(t)) ! ⊕ in:i.B(b_i)
inline Reply compute(const InstructionSequence& program,
                     const std::vector<bool>& inputs, std::size_t aux_count,
                     std::size_t state_cap = kDefaultStateCap) {
  return Computation(program, aux_count, state_cap)(inputs);
}

// One executed step of a program under the computation scheme.
struct TraceStep {
  enum class Event { action, jump, terminate, deadlock, truncated };

  Event event = Event::action;
  std::size_t position = 0;
  std::optional<Instruction> instruction;
  std::optional<Reply> reply;
  std::string note;

  std::string str() const {
    const std::string where = "pos " + std::to_string(position) + ": ";
    switch (event) {
      case Event::action:
        return where + instruction->str() + " replied " + to_char(*reply);
      case Event::jump:
        return where + instruction->str();
      case Event::terminate:
        return where + instruction->str() +
               (instruction->op == Instruction::Op::terminate_true
                    ? " terminate S+"
                    : " terminate S-");
      case Event::deadlock:
        return "deadlock: " + note;
      case Event::truncated:
        break;
    }
    return "truncated: " + note;
  }
};

// Step-by-step execution of `program` with the auxiliary registers serving
// first and the input registers second. Stops at termination, deadlock or
// after max_steps records, in which case the last record is `truncated`.
inline std::vector<TraceStep> trace(const InstructionSequence& program,
                                    const std::vector<bool>& inputs,
                                    std::size_t aux_count,
                                    std::size_t max_steps) {
  using Event = TraceStep::Event;
  using Op = Instruction::Op;
  auto [aux_family, input_family] = register_family(inputs, aux_count);
  ServiceFamily aux = std::move(aux_family);
  ServiceFamily in = std::move(input_family);
  std::vector<TraceStep> log;
  const std::size_t k = program.size();
  std::size_t pos = 1;
  for (;;) {
    if (log.size() >= max_steps) {
      log.push_back({Event::truncated, pos, std::nullopt, std::nullopt,
                     "after " + std::to_string(max_steps) + " steps"});
      break;
    }
    if (pos == 0 || pos > k) {
      log.push_back({Event::deadlock, pos, std::nullopt, std::nullopt,
                     "position " + std::to_string(pos) + " out of range"});
      break;
    }
    const Instruction& u = program.at(pos);
    if (u.is_jump()) {
      log.push_back({Event::jump, pos, u, std::nullopt, {}});
      if (!resolve_jumps(program, pos)) {
        log.push_back({Event::deadlock, pos, std::nullopt, std::nullopt,
                       "infinite jump chain"});
        break;
      }
      if (u.op == Op::forward_jump) {
        pos = u.distance > k - pos ? 0 : pos + u.distance;
      } else {
        pos = pos > u.distance ? pos - u.distance : 0;
      }
      continue;
    }
    if (u.op == Op::terminate_true || u.op == Op::terminate_false) {
      log.push_back({Event::terminate, pos, u, std::nullopt, {}});
      break;
    }
    Reply r = Reply::d;
    std::string why = "no service for " + u.action.str();
    ServiceFamily* owner = nullptr;
    if (u.action.is_focused()) {
      if (aux.contains(u.action.focus())) {
        owner = &aux;
      } else if (in.contains(u.action.focus())) {
        owner = &in;
      }
    }
    if (owner) {
      const Focus& f = u.action.focus();
      const Service& s = *owner->find(f);
      r = s.reply(u.action.method());
      *owner = owner->with(f, s.derive(u.action.method()));
      why = u.action.str() + " rejected";
    }
    log.push_back({Event::action, pos, u, r, {}});
    if (r == Reply::d) {
      log.push_back({Event::deadlock, pos, std::nullopt, std::nullopt, why});
      break;
    }
    const bool skip = (u.op == Op::positive_test && r == Reply::f) ||
                      (u.op == Op::negative_test && r == Reply::t);
    pos += skip ? 2 : 1;
  }
  return log;
}

// Reply at the end of a trace; nullopt if it was truncated.
inline std::optional<Reply> trace_outcome(const std::vector<TraceStep>& log) {
  if (log.empty()) return std::nullopt;
  const auto& last = log.back();
  switch (last.event) {
    case TraceStep::Event::terminate:
      return last.instruction->op == Instruction::Op::terminate_true
                 ? Reply::t
                 : Reply::f;
    case TraceStep::Event::deadlock:
      return Reply::d;
    default:
      return std::nullopt;
  }
}

}  // namespace pglb

#endif  // PGLB_INTERACTION_HPP_
