#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "matcha/stats.hpp"

namespace matcha {

// Memoized lazy stream with structural sharing: every suspension runs at most
// once, and a tail obtained twice is the same object. Collections, matching
// machine nodes and result streams are all instances of this.
template <class T>
class Seq {
  enum class State { kSuspended, kEmpty, kCons };

  struct Node {
    State state = State::kEmpty;
    std::function<Seq()> thunk;  // valid while suspended
    T head{};                    // valid once cons
    std::shared_ptr<Node> tail;  // valid once cons
  };
  using NodePtr = std::shared_ptr<Node>;

 public:
  Seq() : node_(shared_empty()) {}

  static Seq empty() { return Seq(shared_empty()); }

  static Seq cons(T head, Seq tail) {
    auto n = std::make_shared<Node>();
    n->state = State::kCons;
    n->head = std::move(head);
    n->tail = std::move(tail.node_);
    return Seq(std::move(n));
  }

  static Seq single(T head) { return cons(std::move(head), empty()); }

  static Seq suspend(std::function<Seq()> thunk) {
    auto n = std::make_shared<Node>();
    n->state = State::kSuspended;
    n->thunk = std::move(thunk);
    return Seq(std::move(n));
  }

  // Stateful producer: each cell pulls the producer once; nullopt terminates.
  static Seq generate(std::function<std::optional<T>()> produce) {
    return suspend([produce]() {
      std::optional<T> v = produce();
      if (!v) return empty();
      return cons(std::move(*v), generate(produce));
    });
  }

  static Seq from_vector(std::vector<T> items) {
    Seq s = empty();
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      s = cons(std::move(*it), std::move(s));
    }
    return s;
  }

  bool is_empty() const {
    force_node(node_);
    return node_->state == State::kEmpty;
  }

  // True only when emptiness is already known without running a suspension.
  bool known_empty() const { return node_->state == State::kEmpty; }

  const T& head() const {
    force_node(node_);
    return node_->head;
  }

  Seq tail() const {
    force_node(node_);
    return Seq(node_->tail);
  }

  // At most the first k elements; forces at most k cells.
  std::vector<T> take(std::size_t k) const {
    std::vector<T> out;
    Seq s = *this;
    while (out.size() < k && !s.is_empty()) {
      out.push_back(s.head());
      s = s.tail();
    }
    return out;
  }

 private:
  explicit Seq(NodePtr n) : node_(std::move(n)) {}

  static NodePtr shared_empty() {
    auto n = std::make_shared<Node>();
    n->state = State::kEmpty;
    return n;
  }

  static void force_node(const NodePtr& n) {
    if (n->state != State::kSuspended) return;
    auto thunk = std::move(n->thunk);
    n->thunk = nullptr;
    ++stats::cells_forced;
    Seq r = thunk();
    force_node(r.node_);
    n->state = r.node_->state;
    if (n->state == State::kCons) {
      n->head = r.node_->head;
      n->tail = r.node_->tail;
    }
  }

  NodePtr node_;
};

template <class T, class S, class F>
Seq<T> seq_map(Seq<S> src, F fn) {
  return Seq<T>::suspend([src, fn]() {
    if (src.is_empty()) return Seq<T>::empty();
    return Seq<T>::cons(fn(src.head()), seq_map<T, S, F>(src.tail(), fn));
  });
}

}  // namespace matcha
