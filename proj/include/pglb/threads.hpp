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

// Thread algebra values. FiniteThread is an immutable term over S+, S-, D and
// postconditional composition; RegularThread is a finite graph of thread
// states (one recursion equation per state). Behaviours are compared with
// bisimilar(); approximations with project() and aip_equal().

#ifndef PGLB_THREADS_HPP_
#define PGLB_THREADS_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pglb/isa.hpp"

namespace pglb {

enum class ThreadKind { success, failure, deadlock, post };

namespace detail {

inline std::size_t hash_mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct PairHash {
  template <typename A, typename B>
  std::size_t operator()(const std::pair<A, B>& p) const {
    return hash_mix(std::hash<A>{}(p.first), std::hash<B>{}(p.second));
  }
};

}  // namespace detail

class FiniteThread {
 public:
  static FiniteThread success() { return FiniteThread(terminal(0)); }
  static FiniteThread failure() { return FiniteThread(terminal(1)); }
  static FiniteThread deadlock() { return FiniteThread(terminal(2)); }

  // T ⊴ a ⊵ T'
  static FiniteThread post(Action a, const FiniteThread& on_true,
                           const FiniteThread& on_false) {
    auto node = std::make_shared<Node>();
    node->kind = ThreadKind::post;
    node->hash = detail::hash_mix(
        detail::hash_mix(std::hash<std::string>{}(a.str()),
                         on_true.node_->hash),
        on_false.node_->hash * 31 + 7);
    node->depth = 1 + std::max(on_true.depth(), on_false.depth());
    node->size = 1 + on_true.node_->size + on_false.node_->size;
    node->action = std::move(a);
    node->on_true = on_true.node_;
    node->on_false = on_false.node_;
    return FiniteThread(std::move(node));
  }

  // a ∘ T, i.e. T ⊴ a ⊵ T with a shared successor.
  static FiniteThread prefix(Action a, const FiniteThread& next) {
    return post(std::move(a), next, next);
  }

  ThreadKind kind() const { return node_->kind; }
  bool is_post() const { return node_->kind == ThreadKind::post; }
  const Action& action() const { return node_->action; }
  FiniteThread on_true() const { return FiniteThread(node_->on_true); }
  FiniteThread on_false() const { return FiniteThread(node_->on_false); }

  // Number of actions on the longest path.
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  // Identity of the shared node; equal identities imply equal terms.
  const void* identity() const { return node_.get(); }

  // A post node whose two branches are the same term (a ∘ T).
  bool is_prefix() const {
    return is_post() && FiniteThread(node_->on_true) == FiniteThread(node_->on_false);
  }

  // Syntactic term equality.
  friend bool operator==(const FiniteThread& lhs, const FiniteThread& rhs) {
    std::unordered_set<std::pair<const Node*, const Node*>, detail::PairHash>
        proven;
    return equal(lhs.node_.get(), rhs.node_.get(), proven);
  }

  std::string str() const;

 private:
  struct Node {
    ThreadKind kind = ThreadKind::deadlock;
    Action action;
    std::shared_ptr<const Node> on_true;
    std::shared_ptr<const Node> on_false;
    std::size_t hash = 0;
    std::size_t depth = 0;
    std::size_t size = 1;
  };

  explicit FiniteThread(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  static std::shared_ptr<const Node> terminal(int which) {
    static const std::shared_ptr<const Node> nodes[3] = {
        make_terminal(ThreadKind::success, 0x51),
        make_terminal(ThreadKind::failure, 0x52),
        make_terminal(ThreadKind::deadlock, 0x53)};
    return nodes[which];
  }

  static std::shared_ptr<const Node> make_terminal(ThreadKind kind,
                                                   std::size_t hash) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->hash = hash;
    return node;
  }

  static bool equal(
      const Node* a, const Node* b,
      std::unordered_set<std::pair<const Node*, const Node*>,
                         detail::PairHash>& proven) {
    if (a == b) return true;
    if (a->kind != b->kind || a->hash != b->hash || a->depth != b->depth ||
        a->size != b->size) {
      return false;
    }
    if (a->kind != ThreadKind::post) return true;
    if (proven.contains({a, b})) return true;
    if (a->action != b->action) return false;
    if (!equal(a->on_true.get(), b->on_true.get(), proven) ||
        !equal(a->on_false.get(), b->on_false.get(), proven)) {
      return false;
    }
    proven.insert({a, b});
    return true;
  }

  std::shared_ptr<const Node> node_;
};

namespace detail {

// Shared layout for thread terms: "a ∘ X" for action prefix,
// "L ⊴ a ⊵ R" for postconditional composition. ∘ binds strongest, so only
// proper postconditional operands get parentheses.
// With expand set, a named term is written out instead of referenced.
template <typename Term, typename Access>
std::string render_term(const Term& term, const Access& access,
                        bool expand = false) {
  if (auto leaf = access.leaf(term); leaf && !(expand && access.is_post(term))) {
    return *leaf;
  }
  const auto operand = [&](const Term& t) {
    auto text = render_term(t, access);
    if (!access.leaf(t) && !access.is_prefix(t)) text = "(" + text + ")";
    return text;
  };
  const auto& on_true = access.on_true(term);
  if (access.is_prefix(term)) {
    return access.action(term).str() + " ∘ " + operand(on_true);
  }
  return operand(on_true) + " ⊴ " + access.action(term).str() +
         " ⊵ " + operand(access.on_false(term));
}

inline std::string terminal_name(ThreadKind kind) {
  switch (kind) {
    case ThreadKind::success:
      return "S+";
    case ThreadKind::failure:
      return "S-";
    case ThreadKind::deadlock:
    case ThreadKind::post:
      break;
  }
  return "D";
}

struct FiniteAccess {
  bool is_post(const FiniteThread& t) const { return t.is_post(); }
  std::optional<std::string> leaf(const FiniteThread& t) const {
    if (t.is_post()) return std::nullopt;
    return terminal_name(t.kind());
  }
  bool is_prefix(const FiniteThread& t) const { return t.is_prefix(); }
  const Action& action(const FiniteThread& t) const { return t.action(); }
  FiniteThread on_true(const FiniteThread& t) const { return t.on_true(); }
  FiniteThread on_false(const FiniteThread& t) const { return t.on_false(); }
};

}  // namespace detail

inline std::string FiniteThread::str() const {
  return detail::render_term(*this, detail::FiniteAccess{});
}

inline std::ostream& operator<<(std::ostream& os, const FiniteThread& t) {
  return os << t.str();
}

// Finite-state thread: every state is S+, S-, D or a postconditional node
// whose successors are state ids of the same graph.
class RegularThread {
 public:
  using StateId = std::size_t;

  struct State {
    ThreadKind kind = ThreadKind::deadlock;
    Action action;
    StateId on_true = 0;
    StateId on_false = 0;

    bool operator==(const State&) const = default;
  };

  RegularThread(std::vector<State> states, StateId root)
      : states_(std::move(states)), root_(root) {
    if (states_.empty()) throw std::invalid_argument("thread has no states");
    if (root_ >= states_.size()) {
      throw std::invalid_argument("thread root out of range");
    }
    for (const auto& s : states_) {
      if (s.kind == ThreadKind::post &&
          (s.on_true >= states_.size() || s.on_false >= states_.size())) {
        throw std::invalid_argument("thread refers to a missing state");
      }
    }
  }

  static RegularThread deadlock() {
    return RegularThread({State{ThreadKind::deadlock, {}, 0, 0}}, 0);
  }

  // Graph of a finite term; shared subterms become shared states.
  static RegularThread from_finite(const FiniteThread& term) {
    std::vector<State> states;
    std::unordered_map<const void*, StateId> seen;
    const std::function<StateId(const FiniteThread&)> build =
        [&](const FiniteThread& t) -> StateId {
      if (auto it = seen.find(t.identity()); it != seen.end()) {
        return it->second;
      }
      const StateId id = states.size();
      states.push_back(State{t.kind(), {}, 0, 0});
      if (t.is_post()) {
        const StateId on_true = build(t.on_true());
        const StateId on_false = build(t.on_false());
        states[id] = State{ThreadKind::post, t.action(), on_true, on_false};
      }
      seen.emplace(t.identity(), id);
      return id;
    };
    const StateId root = build(term);
    return RegularThread(std::move(states), root);
  }

  std::size_t size() const { return states_.size(); }
  StateId root() const { return root_; }
  const State& state(StateId id) const { return states_.at(id); }
  const std::vector<State>& states() const { return states_; }

  RegularThread with_root(StateId root) const {
    return RegularThread(states_, root);
  }

  // States reachable from the root, in breadth-first order.
  std::vector<StateId> reachable() const {
    std::vector<StateId> order{root_};
    std::vector<bool> seen(states_.size(), false);
    seen[root_] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& s = states_[order[i]];
      if (s.kind != ThreadKind::post) continue;
      for (StateId next : {s.on_true, s.on_false}) {
        if (!seen[next]) {
          seen[next] = true;
          order.push_back(next);
        }
      }
    }
    return order;
  }

  bool operator==(const RegularThread&) const = default;

 private:
  std::vector<State> states_;
  StateId root_;
};

// Incremental construction of RegularThread values, including recursive ones:
// reserve() a state, refer to it, define it later.
class ThreadBuilder {
 public:
  using StateId = RegularThread::StateId;

  StateId success() { return add({ThreadKind::success, {}, 0, 0}); }
  StateId failure() { return add({ThreadKind::failure, {}, 0, 0}); }
  StateId deadlock() { return add({ThreadKind::deadlock, {}, 0, 0}); }
  StateId post(Action a, StateId on_true, StateId on_false) {
    return add({ThreadKind::post, std::move(a), on_true, on_false});
  }
  StateId prefix(Action a, StateId next) {
    return post(std::move(a), next, next);
  }

  StateId reserve() { return add({ThreadKind::deadlock, {}, 0, 0}); }
  void define(StateId id, Action a, StateId on_true, StateId on_false) {
    states_.at(id) = {ThreadKind::post, std::move(a), on_true, on_false};
  }
  void define_prefix(StateId id, Action a, StateId next) {
    define(id, std::move(a), next, next);
  }

  RegularThread build(StateId root) const {
    return RegularThread(states_, root);
  }

 private:
  StateId add(RegularThread::State s) {
    states_.push_back(std::move(s));
    return states_.size() - 1;
  }

  std::vector<RegularThread::State> states_;
};

// π_n on finite terms.
inline FiniteThread project(const FiniteThread& term, std::size_t n) {
  std::unordered_map<std::pair<const void*, std::size_t>, FiniteThread,
                     detail::PairHash>
      memo;
  const std::function<FiniteThread(const FiniteThread&, std::size_t)> cut =
      [&](const FiniteThread& t, std::size_t depth) -> FiniteThread {
    if (depth == 0) return FiniteThread::deadlock();
    if (!t.is_post()) return t;
    if (t.depth() < depth) return t;
    const auto key = std::make_pair(t.identity(), depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto result = FiniteThread::post(t.action(), cut(t.on_true(), depth - 1),
                                     cut(t.on_false(), depth - 1));
    memo.emplace(key, result);
    return result;
  };
  return cut(term, n);
}

// π_n(T): T cut off after n actions, cut points replaced by D.
inline FiniteThread project(const RegularThread& thread, std::size_t n) {
  using StateId = RegularThread::StateId;
  // Built bottom-up by depth so a state shared by several paths is one node.
  std::vector<FiniteThread> level(thread.size(), FiniteThread::deadlock());
  for (std::size_t depth = 1; depth <= n; ++depth) {
    std::vector<FiniteThread> next;
    next.reserve(thread.size());
    for (StateId id = 0; id < thread.size(); ++id) {
      const auto& s = thread.state(id);
      switch (s.kind) {
        case ThreadKind::success:
          next.push_back(FiniteThread::success());
          break;
        case ThreadKind::failure:
          next.push_back(FiniteThread::failure());
          break;
        case ThreadKind::deadlock:
          next.push_back(FiniteThread::deadlock());
          break;
        case ThreadKind::post:
          if (s.on_true == s.on_false) {
            next.push_back(FiniteThread::prefix(s.action, level[s.on_true]));
          } else {
            next.push_back(FiniteThread::post(s.action, level[s.on_true],
                                              level[s.on_false]));
          }
          break;
      }
    }
    level = std::move(next);
  }
  return level[thread.root()];
}

// The projective sequence (π_n(T)) of a regular thread.
class ProjectiveSequence {
 public:
  explicit ProjectiveSequence(RegularThread thread)
      : thread_(std::move(thread)) {}

  FiniteThread operator[](std::size_t n) const { return project(thread_, n); }

 private:
  RegularThread thread_;
};

namespace detail {

// Coarsest stable partition of the states of both graphs, as class ids over
// the disjoint union (states of `u` offset by t.size()).
inline std::vector<std::size_t> bisimulation_classes(const RegularThread& t,
                                                     const RegularThread& u) {
  const std::size_t n = t.size() + u.size();
  const auto state = [&](std::size_t v) -> const RegularThread::State& {
    return v < t.size() ? t.state(v) : u.state(v - t.size());
  };
  const auto offset = [&](std::size_t v, std::size_t succ) {
    return v < t.size() ? succ : succ + t.size();
  };

  std::vector<std::size_t> cls(n);
  {
    std::map<std::pair<ThreadKind, std::string>, std::size_t> labels;
    for (std::size_t v = 0; v < n; ++v) {
      const auto& s = state(v);
      const auto key = std::make_pair(
          s.kind, s.kind == ThreadKind::post ? s.action.str() : std::string());
      cls[v] = labels.emplace(key, labels.size()).first->second;
    }
  }
  std::size_t classes = 0;
  for (;;) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t>
        signatures;
    std::vector<std::size_t> refined(n);
    for (std::size_t v = 0; v < n; ++v) {
      const auto& s = state(v);
      std::tuple<std::size_t, std::size_t, std::size_t> key{cls[v], 0, 0};
      if (s.kind == ThreadKind::post) {
        key = {cls[v], cls[offset(v, s.on_true)], cls[offset(v, s.on_false)]};
      }
      refined[v] = signatures.emplace(key, signatures.size()).first->second;
    }
    cls = std::move(refined);
    if (signatures.size() == classes) break;
    classes = signatures.size();
  }
  return cls;
}

}  // namespace detail

// Behavioural equality of the two root states.
inline bool bisimilar(const RegularThread& t, const RegularThread& u) {
  const auto cls = detail::bisimulation_classes(t, u);
  return cls[t.root()] == cls[t.size() + u.root()];
}

// π_n(T) = π_n(U) as terms for every n <= depth.
inline bool aip_equal(const RegularThread& t, const RegularThread& u,
                      std::size_t depth) {
  for (std::size_t n = 0; n <= depth; ++n) {
    if (!(project(t, n) == project(u, n))) return false;
  }
  return true;
}

namespace detail {

struct EquationAccess {
  const RegularThread* thread;
  const std::map<RegularThread::StateId, std::size_t>* names;

  bool is_post(RegularThread::StateId id) const {
    return thread->state(id).kind == ThreadKind::post;
  }
  std::optional<std::string> leaf(RegularThread::StateId id) const {
    const auto& s = thread->state(id);
    if (s.kind != ThreadKind::post) return terminal_name(s.kind);
    if (auto it = names->find(id); it != names->end()) {
      return "E" + std::to_string(it->second);
    }
    return std::nullopt;
  }
  bool is_prefix(RegularThread::StateId id) const {
    const auto& s = thread->state(id);
    return s.on_true == s.on_false;
  }
  const Action& action(RegularThread::StateId id) const {
    return thread->state(id).action;
  }
  RegularThread::StateId on_true(RegularThread::StateId id) const {
    return thread->state(id).on_true;
  }
  RegularThread::StateId on_false(RegularThread::StateId id) const {
    return thread->state(id).on_false;
  }
};

}  // namespace detail

// Recursive specification of the reachable part of `thread`, one line per
// equation ("E0 = a ∘ E1"). The root and every state entered from more than
// one place get a name; all other states are written inline.
inline std::vector<std::string> equations(const RegularThread& thread) {
  using StateId = RegularThread::StateId;
  const auto order = thread.reachable();
  std::map<StateId, std::set<StateId>> parents;
  for (StateId id : order) {
    const auto& s = thread.state(id);
    if (s.kind != ThreadKind::post) continue;
    parents[s.on_true].insert(id);
    parents[s.on_false].insert(id);
  }
  std::map<StateId, std::size_t> names;
  for (StateId id : order) {
    if (thread.state(id).kind != ThreadKind::post) continue;
    const bool self_loop = parents[id].contains(id);
    if (id == thread.root() || parents[id].size() > 1 || self_loop) {
      names.emplace(id, names.size());
    }
  }
  std::vector<std::string> lines;
  if (names.empty()) {
    lines.push_back("E0 = " + detail::terminal_name(
                                  thread.state(thread.root()).kind));
    return lines;
  }
  std::vector<std::pair<std::size_t, StateId>> by_name;
  for (const auto& [id, name] : names) by_name.emplace_back(name, id);
  std::sort(by_name.begin(), by_name.end());
  for (const auto& [name, id] : by_name) {
    detail::EquationAccess access{&thread, &names};
    lines.push_back("E" + std::to_string(name) + " = " +
                    detail::render_term(id, access, true));
  }
  return lines;
}

// Graphviz rendering: one node per state, labelled t/f edges from posts.
inline std::string to_dot(const RegularThread& thread) {
  std::string out = "digraph thread {\n  rankdir=TB;\n";
  for (RegularThread::StateId id : thread.reachable()) {
    const auto& s = thread.state(id);
    const auto node = "  s" + std::to_string(id);
    if (s.kind == ThreadKind::post) {
      out += node + " [shape=box,label=\"" + s.action.str() + "\"];\n";
      out += node + " -> s" + std::to_string(s.on_true) + " [label=\"t\"];\n";
      out += node + " -> s" + std::to_string(s.on_false) +
             " [label=\"f\",style=dashed];\n";
    } else {
      out += node + " [shape=plaintext,label=\"" +
             detail::terminal_name(s.kind) + "\"];\n";
    }
  }
  out += "  start [shape=point];\n  start -> s" +
         std::to_string(thread.root()) + ";\n}\n";
  return out;
}

}  // namespace pglb

#endif  // PGLB_THREADS_HPP_
