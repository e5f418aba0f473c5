#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace orbi {

struct SourceLoc {
  std::string file;
  int line = 0;
  int col = 0;
};

enum class Severity { Error, Warning };

/// A single finding. `code` is a stable machine-readable identifier:
/// E-* for errors raised by the checkers, L1..L4 for guideline lints.
struct Diagnostic {
  std::string code;
  Severity severity = Severity::Error;
  SourceLoc loc;
  std::string message;
  std::string hint;
};

namespace codes {
inline constexpr const char* Lex = "E-LEX";
inline constexpr const char* Parse = "E-PARSE";
inline constexpr const char* Directive = "E-DIR";
inline constexpr const char* Kind = "E-KIND";
inline constexpr const char* Type = "E-TYPE";
inline constexpr const char* Level = "E-LEVEL";
inline constexpr const char* Recon = "E-RECON";
inline constexpr const char* Duplicate = "E-DUP";
inline constexpr const char* Unbound = "E-UNBOUND";
inline constexpr const char* SchemaMismatch = "E-SCHEMA";
inline constexpr const char* UnknownSchema = "E-UNKNOWN-SCHEMA";
inline constexpr const char* UnknownRelation = "E-UNKNOWN-REL";
inline constexpr const char* UnknownCtxVar = "E-CTXVAR";
inline constexpr const char* Arity = "E-ARITY";
inline constexpr const char* UnknownDest = "E-DEST-UNKNOWN";
inline constexpr const char* AmbiguousDest = "E-DEST-AMBIG";
inline constexpr const char* Conflict = "E-DIR-CONFLICT";
inline constexpr const char* Shape = "E-SHAPE";
inline constexpr const char* EmptyRendering = "E-EMPTY";
inline constexpr const char* NoCtxInScope = "E-NOCTX";
// warning: an explicit theorem variable had to pick among several contexts
inline constexpr const char* CtxChoice = "W-CTX";
}  // namespace codes

/// Thrown by single-shot operations; batch drivers catch it per item and
/// record the carried diagnostic.
class OrbiError : public std::runtime_error {
 public:
  explicit OrbiError(Diagnostic d)
      : std::runtime_error(d.code + ": " + d.message), diag_(std::move(d)) {}

  const Diagnostic& diagnostic() const { return diag_; }
  const std::string& code() const { return diag_.code; }

 private:
  Diagnostic diag_;
};

[[noreturn]] inline void fail(const char* code, std::string message,
                              SourceLoc loc = {}, std::string hint = {}) {
  throw OrbiError(Diagnostic{code, Severity::Error, std::move(loc),
                             std::move(message), std::move(hint)});
}

class Diagnostics {
 public:
  void add(Diagnostic d) { items_.push_back(std::move(d)); }
  void error(const char* code, std::string message, SourceLoc loc = {},
             std::string hint = {}) {
    add({code, Severity::Error, std::move(loc), std::move(message),
         std::move(hint)});
  }
  void warning(const char* code, std::string message, SourceLoc loc = {},
               std::string hint = {}) {
    add({code, Severity::Warning, std::move(loc), std::move(message),
         std::move(hint)});
  }

  bool has_errors() const {
    for (const auto& d : items_)
      if (d.severity == Severity::Error) return true;
    return false;
  }
  bool has(const std::string& code) const {
    for (const auto& d : items_)
      if (d.code == code) return true;
    return false;
  }
  size_t error_count() const {
    size_t n = 0;
    for (const auto& d : items_) n += d.severity == Severity::Error;
    return n;
  }
  const std::vector<Diagnostic>& items() const { return items_; }
  void append(const Diagnostics& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

 private:
  std::vector<Diagnostic> items_;
};

/// `file:line:col: [CODE] message`
std::string format_line(const Diagnostic& d);
/// One JSON object, no trailing newline.
std::string format_json(const Diagnostic& d);

}  // namespace orbi
