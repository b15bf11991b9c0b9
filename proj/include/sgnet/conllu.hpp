#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgnet/error.hpp"

namespace sgnet {

// One token of a dependency-annotated sentence. Token indices and head links
// are 1-based as in the CoNLL-U format; head 0 marks the root. Special
// (reserved) tokens never participate in the parse and always carry head 0.
struct Token {
  int index = 0;
  std::string form;
  int head = 0;
  std::string deprel;
  bool is_special = false;

  bool operator==(const Token&) const = default;
};

// A rooted dependency tree over the non-special tokens of one sentence.
struct DependencyTree {
  std::vector<Token> tokens;  // in sentence order, token i at tokens[i-1]
  int root_index = 0;         // 1-based index of the unique non-special token with head 0

  int size() const { return static_cast<int>(tokens.size()); }
  const Token& token(int index1) const { return tokens[static_cast<std::size_t>(index1 - 1)]; }

  bool operator==(const DependencyTree&) const = default;
};

// First violated invariant found by validate_tree, with the offending
// 1-based token index (0 when no single token is at fault).
struct TreeIssue {
  std::string message;
  int index = 0;
};

// Returns nullopt iff all DependencyTree invariants hold: token indices are
// 1..n in order, heads are 0 or valid non-special indices, specials have
// head 0, exactly one non-special root exists, and the head graph over
// non-special tokens is acyclic.
std::optional<TreeIssue> validate_tree(const DependencyTree& tree);

// Parses CoNLL-U text: sentences separated by blank lines, token lines with
// >= 8 tab-separated columns (1 = index, 2 = form, 7 = head, 8 = deprel),
// '#' comments, multiword ranges ("3-4") and enhanced-dependency ids ("8.1")
// skipped. Only columns 1, 2, 7 and 8 are consumed. Every returned tree
// passes validate_tree; malformed input throws ParseError with the 1-based
// line number.
std::vector<DependencyTree> parse_conllu(std::string_view text);

// Companion minimal format: one "index<TAB>form<TAB>head" token per line,
// blank-line sentence delimiter, '#' comments. Deprel defaults to "dep".
std::vector<DependencyTree> parse_index_form_head(std::string_view text);

// Serializes to standard 10-column CoNLL-U (unused columns "_"); parsing the
// result yields a tree equal to the input field-for-field.
std::string to_conllu(const DependencyTree& tree);

// Convenience constructor used by tests and the synthetic generator: forms
// and 1-based heads in sentence order. Throws if the result does not
// validate.
DependencyTree make_tree(const std::vector<std::string>& forms, const std::vector<int>& heads,
                         const std::vector<std::string>& deprels = {});

}  // namespace sgnet
