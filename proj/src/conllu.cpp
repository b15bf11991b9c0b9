#include "sgnet/conllu.hpp"

#include <charconv>
#include <cstdlib>

namespace sgnet {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_int(std::string_view s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && !s.empty();
}

bool is_range_or_decimal_id(std::string_view s) {
  // "3-4" multiword ranges and "8.1" enhanced-dependency ids; a leading '-'
  // is not a range, it is a malformed index and falls through to parse_int.
  if (s.empty() || s.front() < '0' || s.front() > '9') return false;
  return s.find('-') != std::string_view::npos || s.find('.') != std::string_view::npos;
}

struct PendingToken {
  Token token;
  int line = 0;
};

std::vector<DependencyTree> parse_lines(std::string_view text, bool conllu_columns) {
  std::vector<DependencyTree> trees;
  std::vector<PendingToken> pending;

  auto flush = [&](int end_line) {
    if (pending.empty()) return;
    DependencyTree tree;
    tree.tokens.reserve(pending.size());
    for (const auto& p : pending) tree.tokens.push_back(p.token);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const int expected = static_cast<int>(i) + 1;
      if (pending[i].token.index != expected) {
        const bool dup = pending[i].token.index <= static_cast<int>(i);
        throw ParseError(pending[i].line, std::string(dup ? "duplicate" : "non-contiguous") +
                                              " token index " +
                                              std::to_string(pending[i].token.index));
      }
    }
    if (auto issue = validate_tree(tree)) {
      // Report against the offending token's source line when one is named.
      int line = end_line;
      if (issue->index >= 1 && issue->index <= static_cast<int>(pending.size())) {
        line = pending[static_cast<std::size_t>(issue->index - 1)].line;
      }
      throw ParseError(line, "sentence " + std::to_string(trees.size() + 1) + ": " +
                                 issue->message);
    }
    for (const auto& t : tree.tokens) {
      if (t.head == 0) tree.root_index = t.index;
    }
    trees.push_back(std::move(tree));
    pending.clear();
  };

  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush(line_no);
      continue;
    }
    if (line.front() == '#') continue;

    const auto cols = split(line, '\t');
    const std::size_t min_cols = conllu_columns ? 8 : 3;
    if (cols.size() < min_cols) {
      throw ParseError(line_no, "expected >= " + std::to_string(min_cols) +
                                    " tab-separated columns, got " + std::to_string(cols.size()));
    }
    if (is_range_or_decimal_id(cols[0])) continue;  // multiword range / enhanced id

    Token tok;
    if (!parse_int(cols[0], tok.index)) {
      throw ParseError(line_no, "non-integer token index '" + std::string(cols[0]) + "'");
    }
    tok.form = std::string(cols[1]);
    const std::string_view head_col = conllu_columns ? cols[6] : cols[2];
    if (!parse_int(head_col, tok.head)) {
      throw ParseError(line_no, "non-integer head '" + std::string(head_col) + "'");
    }
    tok.deprel = conllu_columns ? std::string(cols[7]) : "dep";
    pending.push_back({std::move(tok), line_no});
  }
  flush(line_no);
  return trees;
}

}  // namespace

std::optional<TreeIssue> validate_tree(const DependencyTree& tree) {
  const int n = tree.size();
  for (int i = 1; i <= n; ++i) {
    const Token& t = tree.token(i);
    if (t.index != i) return TreeIssue{"token index " + std::to_string(t.index) + " out of order", i};
    if (t.head == t.index) return TreeIssue{"head equals index", i};
    if (t.head < 0 || t.head > n) return TreeIssue{"head " + std::to_string(t.head) + " out of range", i};
    if (t.head != 0 && tree.token(t.head).is_special) {
      return TreeIssue{"head points at a special token", i};
    }
    if (t.is_special && t.head != 0) return TreeIssue{"special token with nonzero head", i};
  }

  int root = 0;
  for (int i = 1; i <= n; ++i) {
    const Token& t = tree.token(i);
    if (t.is_special) continue;
    if (t.head == 0) {
      if (root != 0) return TreeIssue{"multiple roots", i};
      root = i;
    }
  }
  if (root == 0 && n > 0) return TreeIssue{"no root", 0};
  if (tree.root_index != 0 && tree.root_index != root) {
    return TreeIssue{"root_index does not match the token with head 0", tree.root_index};
  }

  // Cycle check: every non-special token must reach the root by head links.
  for (int i = 1; i <= n; ++i) {
    if (tree.token(i).is_special) continue;
    int cur = i;
    int steps = 0;
    while (tree.token(cur).head != 0) {
      cur = tree.token(cur).head;
      if (++steps > n) return TreeIssue{"cycle detected", i};
    }
  }
  return std::nullopt;
}

std::vector<DependencyTree> parse_conllu(std::string_view text) {
  return parse_lines(text, /*conllu_columns=*/true);
}

std::vector<DependencyTree> parse_index_form_head(std::string_view text) {
  return parse_lines(text, /*conllu_columns=*/false);
}

std::string to_conllu(const DependencyTree& tree) {
  std::string out;
  for (const Token& t : tree.tokens) {
    out += std::to_string(t.index);
    out += '\t';
    out += t.form;
    out += "\t_\t_\t_\t_\t";
    out += std::to_string(t.head);
    out += '\t';
    out += t.deprel;
    out += "\t_\t_\n";
  }
  out += '\n';
  return out;
}

DependencyTree make_tree(const std::vector<std::string>& forms, const std::vector<int>& heads,
                         const std::vector<std::string>& deprels) {
  detail::check(forms.size() == heads.size(), "make_tree: forms/heads size mismatch");
  DependencyTree tree;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Token t;
    t.index = static_cast<int>(i) + 1;
    t.form = forms[i];
    t.head = heads[i];
    t.deprel = i < deprels.size() ? deprels[i] : "dep";
    if (t.head == 0) tree.root_index = t.index;
    tree.tokens.push_back(std::move(t));
  }
  if (auto issue = validate_tree(tree)) {
    throw Error("make_tree: " + issue->message + " at index " + std::to_string(issue->index));
  }
  return tree;
}

}  // namespace sgnet
