#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace termweave {

// Declaration order is the kind order used by the total term order.
enum class TermKind : std::uint8_t { integer, symbol, compound, wildcard };
enum class WildcardKind : std::uint8_t { regular, plus, star };

class Term;

struct WildcardSpec {
  std::string name; // empty means anonymous
  WildcardKind kind = WildcardKind::regular;
  std::string symbol_class; // regular only
  std::shared_ptr<const Term> default_value; // regular only, ground

  bool anonymous() const noexcept { return name.empty(); }
  bool optional() const noexcept { return default_value != nullptr; }
  bool sequence() const noexcept { return kind != WildcardKind::regular; }
};

namespace detail {
struct TermNode;
}

// Immutable, cheaply copyable term handle.
class Term {
public:
  static Term integer(std::int64_t value);
  static Term symbol(std::string name);
  static Term compound(std::string head, std::vector<Term> args);
  static Term wildcard(WildcardSpec spec);

  TermKind kind() const noexcept;
  bool is_integer() const noexcept { return kind() == TermKind::integer; }
  bool is_symbol() const noexcept { return kind() == TermKind::symbol; }
  bool is_compound() const noexcept { return kind() == TermKind::compound; }
  bool is_wildcard() const noexcept { return kind() == TermKind::wildcard; }
  bool is_sequence_wildcard() const noexcept;

  std::int64_t value() const;
  // symbol name or compound head
  const std::string &name() const;
  std::span<const Term> args() const;
  const WildcardSpec &wildcard() const;

  bool ground() const noexcept;
  std::size_t size() const noexcept; // node count
  std::size_t hash() const noexcept;
  bool same_node(const Term &o) const noexcept { return node_ == o.node_; }

  friend bool operator==(const Term &a, const Term &b);
  friend std::strong_ordering operator<=>(const Term &a, const Term &b);

private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

// Ordering used for commutative argument lists: ground terms first.
bool canonical_arg_less(const Term &a, const Term &b);

std::string to_string(const Term &t);

struct TermHash {
  std::size_t operator()(const Term &t) const noexcept { return t.hash(); }
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

class SignatureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SubstitutionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace termweave
