#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "termweave/signature.hpp"
#include "termweave/substitution.hpp"
#include "termweave/term.hpp"

namespace termweave {

enum class ConstraintStatus { satisfied, violated, not_ready };

struct ConstraintResult {
  ConstraintStatus status = ConstraintStatus::satisfied;
  std::string diagnostic; // set when evaluation itself failed
};

// Either an expression in the small comparison language
//   a < b && sum(x) == 5
// or a predicate registered by the host under an id.
class Constraint {
public:
  using Predicate = std::function<bool(const Substitution &)>;

  static Constraint parse(std::string_view text);
  static Constraint host(std::string id, std::vector<std::string> vars, Predicate fn);

  const std::vector<std::string> &required_variables() const { return vars_; }
  // source text, or "host:<id>"
  const std::string &text() const { return text_; }
  bool is_host() const { return static_cast<bool>(fn_); }

  ConstraintResult evaluate(const Substitution &sigma) const;

  friend bool operator==(const Constraint &a, const Constraint &b) { return a.text_ == b.text_; }

  struct Expr;

private:
  std::string text_;
  std::vector<std::string> vars_;
  std::shared_ptr<const Expr> expr_;
  Predicate fn_;
};

struct Pattern {
  Term term;
  std::vector<Constraint> constraints;

  // Checks that constraint variables occur in the term.
  static Pattern make(Term term, std::vector<Constraint> constraints = {});
  // `TERM [; where CONSTRAINT]`
  static Pattern parse(std::string_view line, const SignatureTable &sig);
  static Pattern parse_declaring(std::string_view line, SignatureTable &sig);

  std::string to_string() const;
};

// All constraints whose variables are bound hold. Unready ones pass.
bool constraints_hold(const std::vector<Constraint> &cs, const Substitution &sigma);

// Splits off a `; where ...` suffix. Returns (head, constraint text or empty).
std::pair<std::string_view, std::string_view> split_where(std::string_view line);

} // namespace termweave
