#pragma once

#include <coroutine>
#include <exception>
#include <iterator>
#include <memory>
#include <type_traits>
#include <utility>

namespace termweave {

// Single-pass lazy sequence driven by a coroutine. Values are produced on
// demand, and dropping the generator abandons whatever is left.
//
// Coroutine parameters should be taken by value: the frame outlives the call
// expression that created it.
template <typename T> class Generator {
public:
  using value_type = std::remove_cvref_t<T>;

  struct promise_type {
    const value_type *current = nullptr;
    std::exception_ptr error;

    Generator get_return_object() noexcept {
      return Generator{std::coroutine_handle<promise_type>::from_promise(*this)};
    }
    std::suspend_always initial_suspend() const noexcept { return {}; }
    std::suspend_always final_suspend() const noexcept { return {}; }
    // the argument outlives the suspension, so keeping its address is fine
    std::suspend_always yield_value(const value_type &v) noexcept {
      current = std::addressof(v);
      return {};
    }
    std::suspend_always yield_value(value_type &&v) noexcept {
      current = std::addressof(v);
      return {};
    }
    void return_void() const noexcept {}
    void unhandled_exception() noexcept { error = std::current_exception(); }
    template <typename U> std::suspend_never await_transform(U &&) = delete;
  };

  using handle_type = std::coroutine_handle<promise_type>;

  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using difference_type = std::ptrdiff_t;
    using value_type = Generator::value_type;
    using reference = const value_type &;
    using pointer = const value_type *;

    iterator() = default;
    explicit iterator(handle_type h) : h_(h) {}

    reference operator*() const { return *h_.promise().current; }
    pointer operator->() const { return h_.promise().current; }
    iterator &operator++() {
      resume(h_);
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator &it, std::default_sentinel_t) {
      return !it.h_ || it.h_.done();
    }

  private:
    handle_type h_{};
  };

  Generator() = default;
  Generator(Generator &&o) noexcept : h_(std::exchange(o.h_, {})) {}
  Generator &operator=(Generator o) noexcept {
    std::swap(h_, o.h_);
    return *this;
  }
  ~Generator() {
    if (h_)
      h_.destroy();
  }

  iterator begin() {
    if (h_ && !started_) {
      started_ = true;
      resume(h_);
    }
    return iterator{h_};
  }
  std::default_sentinel_t end() const noexcept { return {}; }

  // Pulls the next value; nullptr once exhausted. Don't mix with begin().
  const value_type *next() {
    if (!h_ || h_.done())
      return nullptr;
    started_ = true;
    resume(h_);
    return h_.done() ? nullptr : h_.promise().current;
  }

private:
  explicit Generator(handle_type h) : h_(h) {}

  static void resume(handle_type h) {
    h.resume();
    if (h.done() && h.promise().error)
      std::rethrow_exception(std::exchange(h.promise().error, {}));
  }

  handle_type h_{};
  bool started_ = false;
};

} // namespace termweave
