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

// Services, Boolean registers and service families.
//
// A service is any value type with
//   Reply reply(const Method&) const;
//   T derive(const Method&) const;
//   std::string state_key() const;   // injective on reachable states
//   bool is_empty() const;           // rejects every method
// wrapped in the type-erased Service. The wrapper enforces the sink
// condition: after a rejected request (reply d) the service proceeds as the
// empty service δ, and all empty services share one state key.

#ifndef PGLB_SERVICES_HPP_
#define PGLB_SERVICES_HPP_

#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pglb/isa.hpp"

namespace pglb {

enum class Reply { t, f, d };

inline char to_char(Reply r) {
  switch (r) {
    case Reply::t:
      return 't';
    case Reply::f:
      return 'f';
    case Reply::d:
      break;
  }
  return 'd';
}

inline std::ostream& operator<<(std::ostream& os, Reply r) {
  return os << to_char(r);
}

inline Reply to_reply(bool b) { return b ? Reply::t : Reply::f; }

template <typename T>
concept ServiceModel = requires(const T& s, const Method& m) {
                         { s.reply(m) } -> std::same_as<Reply>;
                         { s.derive(m) } -> std::convertible_to<T>;
                         { s.state_key() } -> std::convertible_to<std::string>;
                         { s.is_empty() } -> std::same_as<bool>;
                       } && std::copy_constructible<T>;

// δ: replies d to everything and stays δ.
struct EmptyService {
  Reply reply(const Method&) const { return Reply::d; }
  EmptyService derive(const Method&) const { return {}; }
  std::string state_key() const { return "δ"; }
  bool is_empty() const { return true; }
};

// B(x) over methods set:t, set:f and get. B(d) is the empty service.
class BooleanRegister {
 public:
  explicit BooleanRegister(Reply value) : value_(value) {}

  Reply value() const { return value_; }

  Reply reply(const Method& m) const {
    if (value_ == Reply::d || !known(m)) return Reply::d;
    return m == kGet ? value_ : Reply::t;
  }

  BooleanRegister derive(const Method& m) const {
    if (value_ == Reply::d || !known(m)) return BooleanRegister(Reply::d);
    if (m == kSetTrue) return BooleanRegister(Reply::t);
    if (m == kSetFalse) return BooleanRegister(Reply::f);
    return *this;
  }

  std::string state_key() const {
    return std::string("B(") + to_char(value_) + ")";
  }
  bool is_empty() const { return value_ == Reply::d; }

  bool operator==(const BooleanRegister&) const = default;

 private:
  static bool known(const Method& m) {
    return m == kGet || m == kSetTrue || m == kSetFalse;
  }

  Reply value_;
};

class Service {
 public:
  template <typename T>
    requires(!std::same_as<std::remove_cvref_t<T>, Service> &&
             ServiceModel<T>)
  Service(T model)  // NOLINT(google-explicit-constructor)
      : self_(std::make_shared<Model<T>>(std::move(model))) {}

  static Service empty() { return Service(EmptyService{}); }

  Reply reply(const Method& m) const { return self_->reply(m); }

  Service derive(const Method& m) const {
    if (self_->reply(m) == Reply::d) return empty();
    return Service(self_->derive(m));
  }

  bool is_empty() const { return self_->is_empty(); }

  std::string state_key() const {
    return is_empty() ? std::string("δ") : self_->state_key();
  }

  friend bool operator==(const Service& a, const Service& b) {
    return a.state_key() == b.state_key();
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual Reply reply(const Method& m) const = 0;
    virtual std::shared_ptr<const Concept> derive(const Method& m) const = 0;
    virtual std::string state_key() const = 0;
    virtual bool is_empty() const = 0;
  };

  template <typename T>
  struct Model final : Concept {
    explicit Model(T m) : model(std::move(m)) {}
    Reply reply(const Method& m) const override { return model.reply(m); }
    std::shared_ptr<const Concept> derive(const Method& m) const override {
      return std::make_shared<Model<T>>(T(model.derive(m)));
    }
    std::string state_key() const override { return model.state_key(); }
    bool is_empty() const override { return model.is_empty(); }
    T model;
  };

  explicit Service(std::shared_ptr<const Concept> self)
      : self_(std::move(self)) {}

  std::shared_ptr<const Concept> self_;
};

// Finite set of services, uniquely named by foci.
class ServiceFamily {
 public:
  ServiceFamily() = default;

  // f.S
  static ServiceFamily single(Focus focus, Service service) {
    ServiceFamily u;
    u.services_.emplace(std::move(focus), std::move(service));
    return u;
  }

  bool empty() const { return services_.empty(); }
  std::size_t size() const { return services_.size(); }
  bool contains(const Focus& f) const { return services_.contains(f); }

  const Service* find(const Focus& f) const {
    auto it = services_.find(f);
    return it == services_.end() ? nullptr : &it->second;
  }

  std::set<Focus> foci() const {
    std::set<Focus> out;
    for (const auto& [f, s] : services_) out.insert(f);
    return out;
  }

  auto begin() const { return services_.begin(); }
  auto end() const { return services_.end(); }

  // Replaces the service at an existing focus (used when a method has been
  // processed: f.∂/∂m S ⊕ ∂_{f}(u)).
  ServiceFamily with(const Focus& f, Service s) const {
    ServiceFamily u = *this;
    u.services_.insert_or_assign(f, std::move(s));
    return u;
  }

  // u ⊕ v: union where a focus present on both sides collapses to δ.
  friend ServiceFamily compose(const ServiceFamily& u, const ServiceFamily& v) {
    ServiceFamily out = u;
    for (const auto& [f, s] : v.services_) {
      auto [it, inserted] = out.services_.emplace(f, s);
      if (!inserted) it->second = Service::empty();
    }
    return out;
  }

  // ∂_F(u): drops every service whose focus is in F.
  friend ServiceFamily encapsulate(const std::set<Focus>& foci,
                                   const ServiceFamily& u) {
    ServiceFamily out;
    for (const auto& [f, s] : u.services_) {
      if (!foci.contains(f)) out.services_.emplace(f, s);
    }
    return out;
  }

  // Extensional: same foci, state-equal services.
  friend bool operator==(const ServiceFamily& a, const ServiceFamily& b) {
    return a.services_ == b.services_;
  }

  std::string str() const {
    if (services_.empty()) return "∅";
    std::string out;
    for (const auto& [f, s] : services_) {
      if (!out.empty()) out += " ⊕ ";
      out += f.str() + "." + s.state_key();
    }
    return out;
  }

 private:
  std::map<Focus, Service> services_;
};

inline std::ostream& operator<<(std::ostream& os, const ServiceFamily& u) {
  return os << u.str();
}

// The two families of the computation scheme for partial Boolean functions:
// first = ⊕ aux:i.B(t) for i = 1..aux_count (applied with the use operator),
// second = ⊕ in:i.B(b_i) (applied with the reply operator).
inline std::pair<ServiceFamily, ServiceFamily> register_family(
    const std::vector<Reply>& inputs, std::size_t aux_count) {
  ServiceFamily use;
  for (std::size_t i = 1; i <= aux_count; ++i) {
    use = compose(use, ServiceFamily::single(Focus::auxiliary(i),
                                             BooleanRegister(Reply::t)));
  }
  ServiceFamily reply;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    reply = compose(reply, ServiceFamily::single(Focus::input(i + 1),
                                                 BooleanRegister(inputs[i])));
  }
  return {std::move(use), std::move(reply)};
}

inline std::pair<ServiceFamily, ServiceFamily> register_family(
    const std::vector<bool>& inputs, std::size_t aux_count) {
  std::vector<Reply> replies;
  replies.reserve(inputs.size());
  for (bool b : inputs) replies.push_back(to_reply(b));
  return register_family(replies, aux_count);
}

}  // namespace pglb

#endif  // PGLB_SERVICES_HPP_
