#pragma once

// Document-level AST of an .orbi file: declarations, schemas, context
// patterns, propositions, inductive context relations, theorems and
// directives, in source order.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "orbi/diagnostic.hpp"
#include "orbi/syntax.hpp"

namespace orbi {

enum class Section {
  Syntax,
  Judgments,
  Rules,
  Schemas,
  Definitions,
  Directives,
  Theorems
};

const char* section_name(Section s);
std::optional<Section> section_from_name(const std::string& word);

/// `name: tp.` or `name: kind.`. `implicit_count` is the number of leading
/// Pi binders added by implicit-argument reconstruction (zero as parsed).
struct Decl {
  std::string name;
  std::variant<TpRef, KindRef> classifier;
  int implicit_count = 0;

  bool is_family() const { return std::holds_alternative<KindRef>(classifier); }
  const TpRef& type() const { return std::get<TpRef>(classifier); }
  const KindRef& kind() const { return std::get<KindRef>(classifier); }
};

struct BlockEntry {
  std::string label;
  TpRef type;
};

/// Later entries may mention earlier labels as free names.
struct Block {
  std::vector<BlockEntry> entries;
};

struct Schema {
  std::string name;
  std::vector<Block> alternatives;
};

struct CtxEntry {
  std::string label;
  Block block;
};

/// `[]`, `[g]`, `[g, b:block (...), ...]` or `[b:block (...)]`. The context
/// variable, when present, is always the head.
struct CtxPattern {
  std::optional<std::string> head;
  std::vector<CtxEntry> entries;

  bool empty() const { return !head && entries.empty(); }
};

class Prp;
using PrpRef = std::shared_ptr<const Prp>;

class Prp {
 public:
  struct RelApp {
    std::string name;
    std::vector<CtxPattern> ctxs;
  };
  struct Judgment {
    CtxPattern ctx;
    std::string family;
    std::vector<TermRef> args;
  };
  struct TermEq {
    TermRef lhs, rhs;
  };
  struct False {};
  struct True {};
  struct And {
    PrpRef lhs, rhs;
  };
  struct Or {
    PrpRef lhs, rhs;
  };
  struct Imp {
    PrpRef lhs, rhs;
  };
  struct ForallCtx {
    std::string var;
    std::string schema;
    PrpRef body;
  };
  struct ForallTm {
    std::string var;
    TpRef type;
    PrpRef body;
  };
  struct ExistsTm {
    std::string var;
    TpRef type;
    PrpRef body;
  };
  using Node = std::variant<RelApp, Judgment, TermEq, False, True, And, Or,
                            Imp, ForallCtx, ForallTm, ExistsTm>;

  explicit Prp(Node n) : node(std::move(n)) {}

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }

  Node node;
};

template <class T>
PrpRef mk_prp(T node) {
  return std::make_shared<Prp>(Prp::Node(std::move(node)));
}

struct DefClause {
  std::string name;
  PrpRef body;  // premises -> ... -> head, all RelApp
};

struct InductiveDef {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // (ctx var, schema)
  std::vector<DefClause> clauses;
};

struct Theorem {
  std::string name;
  PrpRef statement;
};

enum class System { Hy, Ab, Bel, Tw };
enum class What { Wf, Explicit, Implicit };

const char* system_name(System s);
std::optional<System> system_from_name(const std::string& id);
const char* what_name(What w);

/// Destination of an annotation: a bare identifier, or `owner.name` for a
/// relation parameter or a theorem-bound variable.
struct Dest {
  std::optional<std::string> owner;
  std::string name;

  std::string str() const { return owner ? *owner + "." + name : name; }
};

struct Annotation {
  What what;
  std::set<System> systems;
  Dest dest;
};

struct Separator {
  Section section;
};

using Directive = std::variant<Separator, Annotation>;

struct Item {
  Section section = Section::Syntax;
  SourceLoc loc;
  std::string source_text;  // verbatim slice of the input, terminator included
  std::variant<Decl, Schema, InductiveDef, Theorem, Annotation> node;

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
};

struct OrbiSpec {
  std::string file;
  std::vector<Item> items;

  std::vector<const Item*> in_section(Section s) const;
  std::vector<const Decl*> decls(Section s) const;
  std::vector<const Schema*> schemas() const;
  std::vector<const InductiveDef*> definitions() const;
  std::vector<const Annotation*> directives() const;
  std::vector<const Theorem*> theorems() const;
};

// Structural equality up to bound-variable names and source locations.
bool equal(const Block& a, const Block& b);
bool equal(const CtxPattern& a, const CtxPattern& b);
bool equal(const PrpRef& a, const PrpRef& b);
bool equal(const Item& a, const Item& b);
bool equal(const OrbiSpec& a, const OrbiSpec& b);

std::string pretty(const Decl& d);
std::string pretty(const Block& b);
std::string pretty(const Schema& s);
std::string pretty(const CtxPattern& c);
std::string pretty(const PrpRef& p);
std::string pretty(const InductiveDef& d);
std::string pretty(const Theorem& t);
std::string pretty(const Annotation& a);
/// Canonical layout of a whole file; a separator line opens every section.
std::string pretty(const OrbiSpec& spec);

}  // namespace orbi
