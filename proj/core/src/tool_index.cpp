// Copyright 2026 The orbench Authors
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
#include "orbench/tool_index.hpp"

#include <algorithm>
#include <sstream>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

std::size_t indent_of(std::string_view line) {
  std::size_t n = 0;
  while (n < line.size() && (line[n] == ' ' || line[n] == '\t')) ++n;
  return n;
}

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

std::string leading_identifier(std::string_view s) {
  std::size_t n = 0;
  while (n < s.size() && is_ident_char(s[n])) ++n;
  return std::string(s.substr(0, n));
}

// Strips a trailing "# comment" outside of string literals.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

// Net bracket depth change across s, ignoring brackets in string literals.
int bracket_delta(std::string_view s) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      --depth;
    }
  }
  return depth;
}

// Splits at depth-0 occurrences of sep.
std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  char quote = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      --depth;
    } else if (c == sep && depth == 0) {
      parts.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.emplace_back(s.substr(start));
  return parts;
}

// First depth-0 position of c at or after from.
std::size_t find_top_level(std::string_view s, char c, std::size_t from = 0) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    char ch = s[i];
    if (quote) {
      if (ch == '\\') {
        ++i;
      } else if (ch == quote) {
        quote = 0;
      }
      continue;
    }
    if (ch == '"' || ch == '\'') {
      quote = ch;
    } else if (depth == 0 && ch == c) {
      return i;
    } else if (ch == '(' || ch == '[' || ch == '{') {
      ++depth;
    } else if (ch == ')' || ch == ']' || ch == '}') {
      --depth;
    }
  }
  return std::string_view::npos;
}

Parameter parse_parameter(std::string_view text) {
  Parameter p;
  std::string_view t = trim(text);
  std::size_t eq = find_top_level(t, '=');
  std::string_view head = t.substr(0, eq);
  if (eq != std::string_view::npos) p.default_value = trim_copy(t.substr(eq + 1));
  std::size_t colon = find_top_level(head, ':');
  p.name = trim_copy(head.substr(0, colon));
  if (colon != std::string_view::npos) {
    p.annotation = trim_copy(head.substr(colon + 1));
  }
  return p;
}

struct Scope {
  std::string name;
  std::size_t indent;
};

std::string qualify(const std::vector<Scope>& scopes, const std::string& name) {
  std::string q;
  for (const auto& s : scopes) {
    q += s.name;
    q += '.';
  }
  return q + name;
}

// Reads a docstring starting at lines[i] (which must open with a triple
// quote). Advances i past the closing line.
std::optional<std::string> read_docstring(
    const std::vector<std::string>& lines, std::size_t& i,
    const std::filesystem::path& origin) {
  std::string_view first = trim(lines[i]);
  std::string_view delim;
  if (first.starts_with("\"\"\"")) {
    delim = "\"\"\"";
  } else if (first.starts_with("'''")) {
    delim = "'''";
  } else {
    return std::nullopt;
  }
  const std::size_t open_line = i + 1;
  std::string body(first.substr(3));
  std::size_t close = body.find(delim);
  if (close != std::string::npos) {
    ++i;
    return trim_copy(body.substr(0, close));
  }
  std::string doc = body;
  for (++i; i < lines.size(); ++i) {
    std::string_view l = lines[i];
    std::size_t c = l.find(delim);
    if (c != std::string_view::npos) {
      doc += '\n';
      doc += trim(l.substr(0, c));
      ++i;
      return trim_copy(doc);
    }
    doc += '\n';
    doc += trim(l);
  }
  throw StubParseError(origin, open_line, "unterminated docstring");
}

}  // namespace

std::string_view SignatureEntry::short_name() const {
  std::string_view q = qualified_name;
  std::size_t dot = q.rfind('.');
  return dot == std::string_view::npos ? q : q.substr(dot + 1);
}

std::string SignatureEntry::signature_text() const {
  std::string s = qualified_name;
  if (kind == MemberKind::Attribute) {
    if (!return_annotation.empty()) s += ": " + return_annotation;
    return s;
  }
  s += '(';
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    const auto& p = parameters[i];
    if (i) s += ", ";
    s += p.name;
    if (!p.annotation.empty()) s += ": " + p.annotation;
    if (!p.default_value.empty()) {
      s += p.annotation.empty() ? "=" : " = ";
      s += p.default_value;
    }
  }
  s += ')';
  if (!return_annotation.empty()) s += " -> " + return_annotation;
  return s;
}

namespace {

std::string_view kind_name(MemberKind k) {
  switch (k) {
    case MemberKind::Function:
      return "function";
    case MemberKind::Method:
      return "method";
    case MemberKind::Property:
      return "property";
    case MemberKind::Attribute:
      return "attribute";
  }
  return "?";
}

MemberKind kind_from_name(std::string_view s) {
  if (s == "method") return MemberKind::Method;
  if (s == "property") return MemberKind::Property;
  if (s == "attribute") return MemberKind::Attribute;
  return MemberKind::Function;
}

}  // namespace

nlohmann::json to_json(const SignatureEntry& e) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : e.parameters) {
    params.push_back(
        {{"name", p.name}, {"annotation", p.annotation}, {"default", p.default_value}});
  }
  return {{"qualified_name", e.qualified_name},
          {"kind", kind_name(e.kind)},
          {"parameters", params},
          {"return_annotation", e.return_annotation},
          {"doc", e.doc}};
}

SignatureEntry signature_from_json(const nlohmann::json& j) {
  SignatureEntry e;
  e.qualified_name = j.at("qualified_name").get<std::string>();
  e.kind = kind_from_name(j.value("kind", "function"));
  for (const auto& p : j.value("parameters", nlohmann::json::array())) {
    e.parameters.push_back({p.value("name", ""), p.value("annotation", ""),
                            p.value("default", "")});
  }
  e.return_annotation = j.value("return_annotation", "");
  e.doc = j.value("doc", "");
  return e;
}

std::string_view to_string(ToolResult::Kind kind) {
  switch (kind) {
    case ToolResult::Kind::Found:
      return "Found";
    case ToolResult::Kind::Suggestions:
      return "Suggestions";
    case ToolResult::Kind::Empty:
      return "Empty";
  }
  return "?";
}

nlohmann::json to_json(const ToolResult& r) {
  nlohmann::json j = {{"kind", to_string(r.kind)}};
  if (r.entry) j["entry"] = to_json(*r.entry);
  if (r.kind == ToolResult::Kind::Suggestions) j["suggestions"] = r.suggestions;
  return j;
}

ToolResult tool_result_from_json(const nlohmann::json& j) {
  ToolResult r;
  const std::string kind = j.value("kind", "Empty");
  if (kind == "Found") {
    r.kind = ToolResult::Kind::Found;
  } else if (kind == "Suggestions") {
    r.kind = ToolResult::Kind::Suggestions;
  }
  if (j.contains("entry")) r.entry = signature_from_json(j.at("entry"));
  if (j.contains("suggestions")) {
    r.suggestions = j.at("suggestions").get<std::vector<std::string>>();
  }
  return r;
}

std::string render_tool_result(const ToolResult& result) {
  switch (result.kind) {
    case ToolResult::Kind::Found: {
      std::string out = "SIGNATURE: " + result.entry->signature_text();
      out += "\nDOC: ";
      out += result.entry->doc.empty() ? "(none)" : result.entry->doc;
      return out;
    }
    case ToolResult::Kind::Suggestions: {
      std::string out = "Did you mean: ";
      for (std::size_t i = 0; i < result.suggestions.size(); ++i) {
        if (i) out += ", ";
        out += result.suggestions[i];
      }
      return out;
    }
    case ToolResult::Kind::Empty:
      break;
  }
  return "No such member";
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

void SignatureIndex::insert(SignatureEntry entry,
                            const std::filesystem::path& origin,
                            std::size_t line) {
  auto [it, inserted] = entries_.insert_or_assign(entry.qualified_name, entry);
  if (!inserted) {
    warnings_.push_back(origin.string() + ":" + std::to_string(line) +
                        ": duplicate declaration of " + it->first +
                        " replaces the earlier one");
  }
}

void SignatureIndex::add_stub_text(std::string_view text,
                                   const std::filesystem::path& origin) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string l;
    while (std::getline(in, l)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines.push_back(std::move(l));
    }
  }

  std::vector<Scope> scopes;
  bool pending_property = false;
  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string_view raw = lines[i];
    const std::string_view code = strip_comment(raw);
    if (trim(code).empty()) {
      ++i;
      continue;
    }
    const std::size_t indent = indent_of(code);
    while (!scopes.empty() && indent <= scopes.back().indent) scopes.pop_back();
    std::string_view stmt = trim(code);
    const std::size_t line_no = i + 1;

    if (stmt.starts_with("@")) {
      if (stmt == "@property") pending_property = true;
      ++i;
      continue;
    }

    if (stmt.starts_with("class ")) {
      std::string name = leading_identifier(trim(stmt.substr(6)));
      if (name.empty()) throw StubParseError(origin, line_no, "class without a name");
      if (!stmt.ends_with(":") && !stmt.ends_with("...")) {
        throw StubParseError(origin, line_no, "class header must end with ':'");
      }
      scopes.push_back({name, indent});
      pending_property = false;
      ++i;
      // Skip a class docstring so it is not mistaken for a member.
      while (i < lines.size() && trim(lines[i]).empty()) ++i;
      if (i < lines.size()) read_docstring(lines, i, origin);
      continue;
    }

    if (stmt.starts_with("def ") || stmt.starts_with("async def ")) {
      std::string joined(stmt);
      int depth = bracket_delta(stmt);
      std::size_t j = i + 1;
      while (depth > 0 && j < lines.size()) {
        std::string_view more = trim(strip_comment(lines[j]));
        joined += ' ';
        joined += more;
        depth += bracket_delta(more);
        ++j;
      }
      if (depth != 0) {
        throw StubParseError(origin, line_no, "unbalanced parentheses in def");
      }
      std::string_view sig = joined;
      sig.remove_prefix(sig.find("def ") + 4);
      std::string name = leading_identifier(trim(sig));
      if (name.empty()) throw StubParseError(origin, line_no, "def without a name");
      const std::size_t open = sig.find('(');
      if (open == std::string_view::npos) {
        throw StubParseError(origin, line_no, "def without a parameter list");
      }
      // Matching close paren of the parameter list.
      std::size_t close = std::string_view::npos;
      int d = 0;
      for (std::size_t k = open; k < sig.size(); ++k) {
        if (sig[k] == '(') ++d;
        if (sig[k] == ')' && --d == 0) {
          close = k;
          break;
        }
      }
      std::string_view tail = trim(sig.substr(close + 1));
      const std::size_t colon = find_top_level(tail, ':');
      if (colon == std::string_view::npos) {
        throw StubParseError(origin, line_no, "def header must end with ':'");
      }
      SignatureEntry e;
      e.qualified_name = qualify(scopes, name);
      e.kind = pending_property ? MemberKind::Property
               : scopes.empty() ? MemberKind::Function
                                : MemberKind::Method;
      pending_property = false;
      std::string_view head = trim(tail.substr(0, colon));
      if (head.starts_with("->")) e.return_annotation = trim_copy(head.substr(2));
      for (const auto& part :
           split_top_level(sig.substr(open + 1, close - open - 1), ',')) {
        if (trim(part).empty()) continue;
        e.parameters.push_back(parse_parameter(part));
      }
      std::string_view inline_body = trim(tail.substr(colon + 1));
      i = j;
      if (inline_body.empty()) {
        while (i < lines.size() && trim(lines[i]).empty()) ++i;
        if (i < lines.size() && indent_of(lines[i]) > indent) {
          if (auto doc = read_docstring(lines, i, origin)) e.doc = *doc;
          // Skip the remaining body ("..." or pass).
          while (i < lines.size() &&
                 (trim(lines[i]).empty() || indent_of(lines[i]) > indent)) {
            ++i;
          }
        }
      }
      insert(std::move(e), origin, line_no);
      continue;
    }

    // Annotated attribute: "name: annotation [= value]".
    const std::size_t colon = find_top_level(stmt, ':');
    std::string name = leading_identifier(stmt);
    if (!name.empty() && colon == name.size()) {
      SignatureEntry e;
      e.qualified_name = qualify(scopes, name);
      e.kind = MemberKind::Attribute;
      std::string_view rest = stmt.substr(colon + 1);
      e.return_annotation = trim_copy(rest.substr(0, find_top_level(rest, '=')));
      ++i;
      if (i < lines.size() && indent_of(lines[i]) == indent) {
        if (auto doc = read_docstring(lines, i, origin)) e.doc = *doc;
      }
      insert(std::move(e), origin, line_no);
      continue;
    }
    // Imports, aliases and anything else carry no signature.
    ++i;
  }
}

SignatureIndex SignatureIndex::from_stub_text(
    std::string_view text, const std::filesystem::path& origin) {
  SignatureIndex index;
  index.add_stub_text(text, origin);
  return index;
}

SignatureIndex SignatureIndex::build(
    std::span<const std::filesystem::path> stub_paths,
    const std::optional<std::filesystem::path>& sidecar_docs) {
  SignatureIndex index;
  for (const auto& p : stub_paths) index.add_stub_text(read_text_file(p), p);
  if (sidecar_docs) {
    const auto docs = nlohmann::json::parse(read_text_file(*sidecar_docs));
    for (auto it = docs.begin(); it != docs.end(); ++it) {
      auto e = index.entries_.find(it.key());
      if (e == index.entries_.end()) {
        index.warnings_.push_back(sidecar_docs->string() + ": no member " +
                                  it.key() + " for sidecar doc");
        continue;
      }
      e->second.doc = it.value().get<std::string>();
    }
  }
  return index;
}

SignatureIndex SignatureIndex::from_json(const nlohmann::json& j) {
  SignatureIndex index;
  for (const auto& e : j.at("entries")) {
    auto entry = signature_from_json(e);
    index.entries_.insert_or_assign(entry.qualified_name, std::move(entry));
  }
  return index;
}

nlohmann::json SignatureIndex::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [name, e] : entries_) arr.push_back(orbench::to_json(e));
  return {{"entries", arr}};
}

ToolResult SignatureIndex::lookup(std::string_view name,
                                  const LookupOptions& options) const {
  ToolResult result;
  const std::string query = trim_copy(name);
  if (query.empty()) return result;

  if (auto it = entries_.find(query); it != entries_.end()) {
    result.kind = ToolResult::Kind::Found;
    result.entry = it->second;
    return result;
  }
  for (const auto& [qualified, e] : entries_) {
    if (e.short_name() == query) {
      result.kind = ToolResult::Kind::Found;
      result.entry = e;
      return result;
    }
  }

  const bool qualified_query = query.find('.') != std::string::npos;
  std::vector<std::string> candidates;
  for (const auto& [qualified, e] : entries_) {
    candidates.emplace_back(qualified_query ? std::string_view(qualified)
                                            : e.short_name());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<std::pair<std::size_t, std::string>> scored;
  for (auto& c : candidates) {
    const std::size_t dist = levenshtein(query, c);
    const double norm = static_cast<double>(dist) /
                        static_cast<double>(std::max(query.size(), c.size()));
    if (norm <= options.max_normalized_distance) {
      scored.emplace_back(dist, std::move(c));
    }
  }
  if (scored.empty()) return result;
  std::sort(scored.begin(), scored.end());
  result.kind = ToolResult::Kind::Suggestions;
  for (std::size_t k = 0; k < scored.size() && k < options.max_suggestions;
       ++k) {
    result.suggestions.push_back(scored[k].second);
  }
  return result;
}

}  // namespace orbench
