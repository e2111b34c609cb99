#pragma once

// Temporal HAL-interface dependencies ("a call of A must precede every call
// of B") and the line-oriented catalog format they are stored in:
//
//   hal spidev
//   d1: open < read
//   d17: ioctl(WR_MODE32) < ioctl(MSG)

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halcheck/error.hpp"
#include "halcheck/generated/catalog_data.hpp"

namespace halcheck {

inline constexpr std::string_view kRequestDispatchFunction = "ioctl";

// A HAL function identity. `request` discriminates ioctl calls and is
// present exactly when the function is ioctl.
struct HalCall {
  std::string function;
  std::optional<std::string> request;

  friend bool operator==(const HalCall&, const HalCall&) = default;
  friend auto operator<=>(const HalCall&, const HalCall&) = default;
};

inline HalCall hal_call(std::string function) { return HalCall{std::move(function), std::nullopt}; }

inline HalCall ioctl_call(std::string request) {
  return HalCall{std::string(kRequestDispatchFunction), std::move(request)};
}

inline std::string to_string(const HalCall& call) {
  if (call.request) return call.function + "(" + *call.request + ")";
  return call.function;
}

struct TemporalDependency {
  std::string id;
  HalCall antecedent;
  HalCall consequent;

  friend bool operator==(const TemporalDependency&, const TemporalDependency&) = default;
};

inline std::string to_string(const TemporalDependency& dep) {
  return dep.id + ": " + to_string(dep.antecedent) + " < " + to_string(dep.consequent);
}

namespace detail {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline bool is_identifier(std::string_view s) {
  return !s.empty() && is_ident_start(s.front()) &&
         std::all_of(s.begin() + 1, s.end(), is_ident_char);
}

inline void validate_call(const HalCall& call, SourceLoc loc) {
  if (!is_identifier(call.function))
    throw CatalogError(loc, "invalid function name '" + call.function + "'");
  const bool dispatch = call.function == kRequestDispatchFunction;
  if (call.request && !dispatch)
    throw CatalogError(loc, "request constant on non-ioctl function '" + call.function + "'");
  if (!call.request && dispatch)
    throw CatalogError(loc, "ioctl requires a request constant");
  if (call.request && !is_identifier(*call.request))
    throw CatalogError(loc, "invalid request constant '" + *call.request + "'");
}

}  // namespace detail

// Ordered set of dependencies over one HAL. Order is significant: every
// report lists dependencies in catalog order.
class Catalog {
public:
  Catalog() = default;
  explicit Catalog(std::string hal_name) : hal_name_(std::move(hal_name)) {}

  const std::string& hal_name() const { return hal_name_; }
  std::span<const TemporalDependency> dependencies() const { return deps_; }
  std::size_t size() const { return deps_.size(); }
  bool empty() const { return deps_.empty(); }

  // Throws CatalogError if `dep` breaks a catalog invariant.
  void add(TemporalDependency dep, SourceLoc loc = {}) {
    if (!detail::is_identifier(dep.id))
      throw CatalogError(loc, "invalid dependency id '" + dep.id + "'");
    detail::validate_call(dep.antecedent, loc);
    detail::validate_call(dep.consequent, loc);
    if (dep.antecedent == dep.consequent)
      throw CatalogError(loc, "dependency " + dep.id + ": antecedent equals consequent (" +
                                  to_string(dep.antecedent) + ")");
    if (find(dep.id))
      throw CatalogError(loc, "duplicate dependency id '" + dep.id + "'");
    deps_.push_back(std::move(dep));
  }

  const TemporalDependency* find(std::string_view id) const {
    auto it = std::find_if(deps_.begin(), deps_.end(), [&](const auto& d) { return d.id == id; });
    return it == deps_.end() ? nullptr : &*it;
  }

  // HAL function names mentioned by any dependency.
  std::set<std::string> functions() const {
    std::set<std::string> out;
    for (const auto& d : deps_) {
      out.insert(d.antecedent.function);
      out.insert(d.consequent.function);
    }
    return out;
  }

  // ioctl request constants mentioned by any dependency.
  std::set<std::string> requests() const {
    std::set<std::string> out;
    for (const auto& d : deps_) {
      if (d.antecedent.request) out.insert(*d.antecedent.request);
      if (d.consequent.request) out.insert(*d.consequent.request);
    }
    return out;
  }

  // Subset in catalog order. Throws Error naming the first unknown id.
  Catalog restrict_to(std::span<const std::string> ids) const {
    for (const auto& id : ids)
      if (!find(id)) throw Error("unknown dependency id '" + id + "'");
    Catalog out(hal_name_);
    for (const auto& d : deps_)
      if (std::find(ids.begin(), ids.end(), d.id) != ids.end()) out.deps_.push_back(d);
    return out;
  }

  friend bool operator==(const Catalog&, const Catalog&) = default;

private:
  std::string hal_name_;
  std::vector<TemporalDependency> deps_;
};

namespace detail {

struct CatalogToken {
  enum class Kind { Ident, Colon, Less, LParen, RParen } kind;
  std::string text;
  SourceLoc loc;
};

inline std::vector<CatalogToken> tokenize_catalog_line(std::string_view line, int line_no) {
  std::vector<CatalogToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const SourceLoc loc{line_no, static_cast<int>(i) + 1};
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      out.push_back({CatalogToken::Kind::Ident, std::string(line.substr(i, j - i)), loc});
      i = j;
      continue;
    }
    CatalogToken::Kind kind;
    switch (c) {
      case ':': kind = CatalogToken::Kind::Colon; break;
      case '<': kind = CatalogToken::Kind::Less; break;
      case '(': kind = CatalogToken::Kind::LParen; break;
      case ')': kind = CatalogToken::Kind::RParen; break;
      default: throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), loc});
    ++i;
  }
  return out;
}

class CatalogLineParser {
public:
  CatalogLineParser(std::vector<CatalogToken> tokens, SourceLoc eol)
      : tokens_(std::move(tokens)), eol_(eol) {}

  const CatalogToken& expect(CatalogToken::Kind kind, const char* what) {
    if (pos_ >= tokens_.size()) throw SyntaxError(eol_, std::string("expected ") + what);
    const auto& tok = tokens_[pos_];
    if (tok.kind != kind)
      throw SyntaxError(tok.loc, std::string("expected ") + what + ", found '" + tok.text + "'");
    ++pos_;
    return tok;
  }

  bool accept(CatalogToken::Kind kind) {
    if (pos_ < tokens_.size() && tokens_[pos_].kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_end() {
    if (pos_ < tokens_.size())
      throw SyntaxError(tokens_[pos_].loc, "unexpected '" + tokens_[pos_].text + "' after entry");
  }

  HalCall call() {
    HalCall out{expect(CatalogToken::Kind::Ident, "function name").text, std::nullopt};
    if (accept(CatalogToken::Kind::LParen)) {
      out.request = expect(CatalogToken::Kind::Ident, "request constant").text;
      expect(CatalogToken::Kind::RParen, "')'");
    }
    return out;
  }

private:
  std::vector<CatalogToken> tokens_;
  std::size_t pos_ = 0;
  SourceLoc eol_;
};

}  // namespace detail

// Parses catalog text. A text without any entries or header yields an empty
// catalog; otherwise the first content line must be `hal NAME`.
inline Catalog parse_catalog(std::string_view text) {
  Catalog out;
  bool have_header = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    auto tokens = detail::tokenize_catalog_line(line, line_no);
    if (tokens.empty()) continue;
    const SourceLoc first = tokens.front().loc;
    detail::CatalogLineParser p(std::move(tokens), {line_no, static_cast<int>(line.size()) + 1});

    if (!have_header) {
      const auto& kw = p.expect(detail::CatalogToken::Kind::Ident, "'hal' header");
      if (kw.text != "hal") throw SyntaxError(kw.loc, "expected 'hal' header, found '" + kw.text + "'");
      const auto& name = p.expect(detail::CatalogToken::Kind::Ident, "HAL name");
      if (!detail::is_identifier(name.text))
        throw SyntaxError(name.loc, "invalid HAL name '" + name.text + "'");
      p.expect_end();
      out = Catalog(name.text);
      have_header = true;
      continue;
    }

    TemporalDependency dep;
    dep.id = p.expect(detail::CatalogToken::Kind::Ident, "dependency id").text;
    p.expect(detail::CatalogToken::Kind::Colon, "':'");
    dep.antecedent = p.call();
    p.expect(detail::CatalogToken::Kind::Less, "'<'");
    dep.consequent = p.call();
    p.expect_end();
    out.add(std::move(dep), first);
  }
  return out;
}

inline std::string render_catalog(const Catalog& catalog) {
  std::string out;
  if (catalog.hal_name().empty() && catalog.empty()) return out;
  out += "hal " + catalog.hal_name() + "\n";
  for (const auto& d : catalog.dependencies()) out += to_string(d) + "\n";
  return out;
}

// The spidev catalog shipped in catalogs/spidev.deps, compiled in.
inline const Catalog& builtin_spidev_catalog() {
  static const Catalog catalog = parse_catalog(generated::spidev_deps);
  return catalog;
}

}  // namespace halcheck
