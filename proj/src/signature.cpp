#include "termweave/signature.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "termweave/term.hpp"

namespace termweave {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)))
      return false;
  return true;
}

std::size_t parse_count(std::string_view s, std::size_t line) {
  if (s.empty())
    throw SignatureError("line " + std::to_string(line) + ": missing arity count");
  std::size_t n = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw SignatureError("line " + std::to_string(line) + ": bad arity '" + std::string(s) + "'");
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

} // namespace

SignatureTable::SignatureTable() {
  ops_.emplace("List", OperationSignature{"List", Arity::at_least(0)});
}

const OperationSignature &SignatureTable::declare(OperationSignature op) {
  if (!is_identifier(op.name))
    throw SignatureError("bad operation name '" + op.name + "'");
  if ((op.associative || op.one_identity) && !op.arity.variadic)
    throw SignatureError("'" + op.name + "': associative and one_identity heads must be variadic");
  auto it = ops_.find(op.name);
  if (it != ops_.end()) {
    // the implicit List may be redeclared once
    static const OperationSignature implicit_list{"List", Arity::at_least(0)};
    if (op.name != "List" || it->second != implicit_list || list_redeclared_)
      throw SignatureError("duplicate operation '" + op.name + "'");
    list_redeclared_ = true;
    it->second = std::move(op);
    return it->second;
  }
  return ops_.emplace(op.name, op).first->second;
}

void SignatureTable::declare_class(std::string name, std::vector<std::string> members) {
  if (!is_identifier(name))
    throw SignatureError("bad class name '" + name + "'");
  if (classes_.count(name))
    throw SignatureError("duplicate class '" + name + "'");
  std::set<std::string> set;
  for (auto &m : members) {
    if (!is_identifier(m))
      throw SignatureError("class '" + name + "': bad member '" + m + "'");
    if (auto op = find(m); op && !op->arity.admits(0))
      throw SignatureError("class '" + name + "': member '" + m + "' is not a constant");
    set.insert(std::move(m));
  }
  classes_.emplace(std::move(name), std::move(set));
}

const OperationSignature *SignatureTable::find(std::string_view name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

const OperationSignature &SignatureTable::at(std::string_view name) const {
  if (auto *op = find(name))
    return *op;
  throw SignatureError("undeclared head '" + std::string(name) + "'");
}

bool SignatureTable::has_class(std::string_view name) const { return classes_.find(name) != classes_.end(); }

bool SignatureTable::in_class(std::string_view cls, std::string_view symbol) const {
  auto it = classes_.find(cls);
  return it != classes_.end() && it->second.count(std::string(symbol));
}

std::string SignatureTable::to_text() const {
  std::string out;
  for (const auto &[name, op] : ops_) {
    if (name == "List" && !list_redeclared_)
      continue;
    out += "op " + name + (op.arity.variadic ? " variadic:" : " fixed:") + std::to_string(op.arity.count);
    if (op.associative)
      out += " associative";
    if (op.commutative)
      out += " commutative";
    if (op.one_identity)
      out += " one_identity";
    out += '\n';
  }
  for (const auto &[name, members] : classes_) {
    out += "class " + name;
    for (const auto &m : members)
      out += " " + m;
    out += '\n';
  }
  return out;
}

SignatureTable SignatureTable::parse(std::string_view text) {
  SignatureTable sig;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> w;
    for (std::string s; words >> s;)
      w.push_back(std::move(s));
    if (w.empty())
      continue;
    const auto where = "line " + std::to_string(lineno) + ": ";
    if (w[0] == "op") {
      if (w.size() < 3)
        throw SignatureError(where + "expected 'op NAME ARITY [flags]'");
      OperationSignature op;
      op.name = w[1];
      const auto colon = w[2].find(':');
      const std::string kind = w[2].substr(0, colon);
      if (colon == std::string::npos || (kind != "fixed" && kind != "variadic"))
        throw SignatureError(where + "arity must be fixed:N or variadic:N");
      const std::size_t n = parse_count(std::string_view(w[2]).substr(colon + 1), lineno);
      op.arity = kind == "fixed" ? Arity::fixed(n) : Arity::at_least(n);
      for (std::size_t i = 3; i < w.size(); ++i) {
        if (w[i] == "associative")
          op.associative = true;
        else if (w[i] == "commutative")
          op.commutative = true;
        else if (w[i] == "one_identity")
          op.one_identity = true;
        else
          throw SignatureError(where + "unknown flag '" + w[i] + "'");
      }
      try {
        sig.declare(std::move(op));
      } catch (const SignatureError &e) {
        throw SignatureError(where + e.what());
      }
    } else if (w[0] == "class") {
      if (w.size() < 2)
        throw SignatureError(where + "expected 'class NAME members...'");
      try {
        sig.declare_class(w[1], std::vector<std::string>(w.begin() + 2, w.end()));
      } catch (const SignatureError &e) {
        throw SignatureError(where + e.what());
      }
    } else {
      throw SignatureError(where + "unknown declaration '" + w[0] + "'");
    }
  }
  return sig;
}

SignatureTable SignatureTable::load(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in)
    throw SignatureError("cannot read signature file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

} // namespace termweave
