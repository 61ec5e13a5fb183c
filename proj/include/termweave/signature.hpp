#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace termweave {

struct Arity {
  bool variadic = false;
  std::size_t count = 0; // exact arity, or the variadic minimum

  static Arity fixed(std::size_t n) { return {false, n}; }
  static Arity at_least(std::size_t n) { return {true, n}; }
  bool admits(std::size_t n) const { return variadic ? n >= count : n == count; }
  friend bool operator==(const Arity &, const Arity &) = default;
};

struct OperationSignature {
  std::string name;
  Arity arity;
  bool associative = false;
  bool commutative = false;
  bool one_identity = false;

  friend bool operator==(const OperationSignature &, const OperationSignature &) = default;
};

// Head declarations plus symbol classes. `List` is always declared as a
// plain variadic head so list syntax works without a signature file.
class SignatureTable {
public:
  SignatureTable();

  const OperationSignature &declare(OperationSignature op);
  void declare_class(std::string name, std::vector<std::string> members);

  const OperationSignature *find(std::string_view name) const;
  const OperationSignature &at(std::string_view name) const;
  bool has_class(std::string_view name) const;
  bool in_class(std::string_view cls, std::string_view symbol) const;

  const std::map<std::string, OperationSignature, std::less<>> &operations() const { return ops_; }
  const std::map<std::string, std::set<std::string>, std::less<>> &classes() const { return classes_; }

  // Round-trips through parse().
  std::string to_text() const;

  static SignatureTable parse(std::string_view text);
  static SignatureTable load(const std::filesystem::path &file);

private:
  std::map<std::string, OperationSignature, std::less<>> ops_;
  std::map<std::string, std::set<std::string>, std::less<>> classes_;
  bool list_redeclared_ = false;
};

} // namespace termweave
