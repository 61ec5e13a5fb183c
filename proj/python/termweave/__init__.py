"""Associative-commutative pattern matching and term rewriting."""

from ._core import (
    CodegenError,
    ManyToOneMatcher,
    ParseError,
    Pattern,
    Rule,
    RuleError,
    Signature,
    Term,
    bench,
    match,
    parse_rules,
    replace_all,
)

__all__ = [
    "CodegenError",
    "ManyToOneMatcher",
    "ParseError",
    "Pattern",
    "Rule",
    "RuleError",
    "Signature",
    "Term",
    "bench",
    "match",
    "parse_rules",
    "replace_all",
]
