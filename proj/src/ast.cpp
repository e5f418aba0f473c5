#include "orbi/ast.hpp"

#include <array>

namespace orbi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<const char*, 7> kSectionNames = {
    "Syntax", "Judgments", "Rules", "Schemas",
    "Definitions", "Directives", "Theorems"};

}  // namespace

const char* section_name(Section s) {
  return kSectionNames[static_cast<size_t>(s)];
}

std::optional<Section> section_from_name(const std::string& word) {
  for (size_t i = 0; i < kSectionNames.size(); ++i)
    if (word == kSectionNames[i]) return static_cast<Section>(i);
  return std::nullopt;
}

const char* system_name(System s) {
  switch (s) {
    case System::Hy: return "hy";
    case System::Ab: return "ab";
    case System::Bel: return "bel";
    case System::Tw: return "tw";
  }
  return "?";
}

std::optional<System> system_from_name(const std::string& id) {
  if (id == "hy") return System::Hy;
  if (id == "ab") return System::Ab;
  if (id == "bel") return System::Bel;
  if (id == "tw") return System::Tw;
  return std::nullopt;
}

const char* what_name(What w) {
  switch (w) {
    case What::Wf: return "wf";
    case What::Explicit: return "explicit";
    case What::Implicit: return "implicit";
  }
  return "?";
}

// ---------------------------------------------------------------------------

std::vector<const Item*> OrbiSpec::in_section(Section s) const {
  std::vector<const Item*> out;
  for (const auto& it : items)
    if (it.section == s) out.push_back(&it);
  return out;
}

std::vector<const Decl*> OrbiSpec::decls(Section s) const {
  std::vector<const Decl*> out;
  for (const auto& it : items)
    if (it.section == s)
      if (const auto* d = it.as<Decl>()) out.push_back(d);
  return out;
}

namespace {
template <class T>
std::vector<const T*> collect(const std::vector<Item>& items) {
  std::vector<const T*> out;
  for (const auto& it : items)
    if (const auto* x = it.as<T>()) out.push_back(x);
  return out;
}
}  // namespace

std::vector<const Schema*> OrbiSpec::schemas() const {
  return collect<Schema>(items);
}
std::vector<const InductiveDef*> OrbiSpec::definitions() const {
  return collect<InductiveDef>(items);
}
std::vector<const Annotation*> OrbiSpec::directives() const {
  return collect<Annotation>(items);
}
std::vector<const Theorem*> OrbiSpec::theorems() const {
  return collect<Theorem>(items);
}

// ---------------------------------------------------------------------------

bool equal(const Block& a, const Block& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i].label != b.entries[i].label ||
        !alpha_equal(a.entries[i].type, b.entries[i].type))
      return false;
  return true;
}

bool equal(const CtxPattern& a, const CtxPattern& b) {
  if (a.head != b.head || a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i].label != b.entries[i].label ||
        !equal(a.entries[i].block, b.entries[i].block))
      return false;
  return true;
}

bool equal(const PrpRef& a, const PrpRef& b) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Prp::RelApp& x) {
            const auto* y = b->as<Prp::RelApp>();
            if (x.name != y->name || x.ctxs.size() != y->ctxs.size())
              return false;
            for (size_t i = 0; i < x.ctxs.size(); ++i)
              if (!equal(x.ctxs[i], y->ctxs[i])) return false;
            return true;
          },
          [&](const Prp::Judgment& x) {
            const auto* y = b->as<Prp::Judgment>();
            if (!equal(x.ctx, y->ctx) || x.family != y->family ||
                x.args.size() != y->args.size())
              return false;
            for (size_t i = 0; i < x.args.size(); ++i)
              if (!alpha_equal(x.args[i], y->args[i])) return false;
            return true;
          },
          [&](const Prp::TermEq& x) {
            const auto* y = b->as<Prp::TermEq>();
            return alpha_equal(x.lhs, y->lhs) && alpha_equal(x.rhs, y->rhs);
          },
          [&](const Prp::False&) { return true; },
          [&](const Prp::True&) { return true; },
          [&](const Prp::And& x) {
            const auto* y = b->as<Prp::And>();
            return equal(x.lhs, y->lhs) && equal(x.rhs, y->rhs);
          },
          [&](const Prp::Or& x) {
            const auto* y = b->as<Prp::Or>();
            return equal(x.lhs, y->lhs) && equal(x.rhs, y->rhs);
          },
          [&](const Prp::Imp& x) {
            const auto* y = b->as<Prp::Imp>();
            return equal(x.lhs, y->lhs) && equal(x.rhs, y->rhs);
          },
          [&](const Prp::ForallCtx& x) {
            const auto* y = b->as<Prp::ForallCtx>();
            return x.var == y->var && x.schema == y->schema &&
                   equal(x.body, y->body);
          },
          [&](const Prp::ForallTm& x) {
            const auto* y = b->as<Prp::ForallTm>();
            return x.var == y->var && alpha_equal(x.type, y->type) &&
                   equal(x.body, y->body);
          },
          [&](const Prp::ExistsTm& x) {
            const auto* y = b->as<Prp::ExistsTm>();
            return x.var == y->var && alpha_equal(x.type, y->type) &&
                   equal(x.body, y->body);
          },
      },
      a->node);
}

bool equal(const Item& a, const Item& b) {
  if (a.section != b.section || a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Decl& x) {
            const auto& y = std::get<Decl>(b.node);
            if (x.name != y.name || x.is_family() != y.is_family() ||
                x.implicit_count != y.implicit_count)
              return false;
            return x.is_family() ? alpha_equal(x.kind(), y.kind())
                                 : alpha_equal(x.type(), y.type());
          },
          [&](const Schema& x) {
            const auto& y = std::get<Schema>(b.node);
            if (x.name != y.name ||
                x.alternatives.size() != y.alternatives.size())
              return false;
            for (size_t i = 0; i < x.alternatives.size(); ++i)
              if (!equal(x.alternatives[i], y.alternatives[i])) return false;
            return true;
          },
          [&](const InductiveDef& x) {
            const auto& y = std::get<InductiveDef>(b.node);
            if (x.name != y.name || x.params != y.params ||
                x.clauses.size() != y.clauses.size())
              return false;
            for (size_t i = 0; i < x.clauses.size(); ++i)
              if (x.clauses[i].name != y.clauses[i].name ||
                  !equal(x.clauses[i].body, y.clauses[i].body))
                return false;
            return true;
          },
          [&](const Theorem& x) {
            const auto& y = std::get<Theorem>(b.node);
            return x.name == y.name && equal(x.statement, y.statement);
          },
          [&](const Annotation& x) {
            const auto& y = std::get<Annotation>(b.node);
            return x.what == y.what && x.systems == y.systems &&
                   x.dest.owner == y.dest.owner && x.dest.name == y.dest.name;
          },
      },
      a.node);
}

bool equal(const OrbiSpec& a, const OrbiSpec& b) {
  if (a.items.size() != b.items.size()) return false;
  for (size_t i = 0; i < a.items.size(); ++i)
    if (!equal(a.items[i], b.items[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::string pretty(const Decl& d) {
  return d.name + ": " +
         (d.is_family() ? pretty(d.kind()) : pretty(d.type())) + ".";
}

std::string pretty(const Block& b) {
  std::string s = "block (";
  for (size_t i = 0; i < b.entries.size(); ++i) {
    if (i) s += ", ";
    s += b.entries[i].label + ":" + pretty(b.entries[i].type);
  }
  return s + ")";
}

std::string pretty(const Schema& s) {
  std::string out = "schema " + s.name + " = ";
  for (size_t i = 0; i < s.alternatives.size(); ++i) {
    if (i) out += " + ";
    out += pretty(s.alternatives[i]);
  }
  return out + ";";
}

namespace {

std::string ctx_inner(const CtxPattern& c) {
  std::string s = c.head.value_or("");
  for (const auto& e : c.entries) {
    if (!s.empty()) s += ", ";
    s += e.label + ":" + pretty(e.block);
  }
  return s;
}

enum PrpPrec { kQuant = 0, kImp = 1, kOr = 2, kAnd = 3, kAtom = 4 };

std::string term_operand(const TermRef& t) {
  // Lambdas extend to the right, so they are parenthesized next to `=`.
  std::string s = pretty(t);
  return t->as<Term::Lam>() ? "(" + s + ")" : s;
}

std::string prp(const PrpRef& p, int prec) {
  auto paren = [&](int own, std::string s) {
    return prec > own ? "(" + s + ")" : s;
  };
  return std::visit(
      overloaded{
          [&](const Prp::RelApp& r) {
            std::string s = r.name;
            for (const auto& c : r.ctxs) s += " " + pretty(c);
            return s;
          },
          [&](const Prp::Judgment& j) {
            std::string inner = ctx_inner(j.ctx);
            std::string s = "[" + inner + (inner.empty() ? "|- " : " |- ") +
                            j.family;
            for (const auto& a : j.args) {
              std::string t = pretty(a);
              bool atomic = a->as<Term::Var>() || a->as<Term::Const>();
              s += " " + (atomic ? t : "(" + t + ")");
            }
            return s + "]";
          },
          [&](const Prp::TermEq& e) {
            return paren(kAnd, term_operand(e.lhs) + " = " + term_operand(e.rhs));
          },
          [&](const Prp::False&) { return std::string("false"); },
          [&](const Prp::True&) { return std::string("true"); },
          [&](const Prp::And& a) {
            return paren(kAnd, prp(a.lhs, kAtom) + " & " + prp(a.rhs, kAnd));
          },
          [&](const Prp::Or& o) {
            return paren(kOr, prp(o.lhs, kAnd) + " || " + prp(o.rhs, kOr));
          },
          [&](const Prp::Imp& i) {
            return paren(kImp, prp(i.lhs, kOr) + " -> " + prp(i.rhs, kImp));
          },
          [&](const Prp::ForallCtx& q) {
            std::string head = "{" + q.var + ":" + q.schema + "}";
            return paren(kQuant, head + (q.body->as<Prp::ForallCtx>() ||
                                                 q.body->as<Prp::ForallTm>() ||
                                                 q.body->as<Prp::ExistsTm>()
                                             ? ""
                                             : " ") +
                                     prp(q.body, kQuant));
          },
          [&](const Prp::ForallTm& q) {
            std::string head = "{" + q.var + ":" + pretty(q.type) + "}";
            return paren(kQuant, head + (q.body->as<Prp::ForallCtx>() ||
                                                 q.body->as<Prp::ForallTm>() ||
                                                 q.body->as<Prp::ExistsTm>()
                                             ? ""
                                             : " ") +
                                     prp(q.body, kQuant));
          },
          [&](const Prp::ExistsTm& q) {
            std::string head = "<" + q.var + ":" + pretty(q.type) + ">";
            return paren(kQuant, head + (q.body->as<Prp::ForallCtx>() ||
                                                 q.body->as<Prp::ForallTm>() ||
                                                 q.body->as<Prp::ExistsTm>()
                                             ? ""
                                             : " ") +
                                     prp(q.body, kQuant));
          },
      },
      p->node);
}

}  // namespace

std::string pretty(const CtxPattern& c) { return "[" + ctx_inner(c) + "]"; }

std::string pretty(const PrpRef& p) { return prp(p, kQuant); }

std::string pretty(const InductiveDef& d) {
  std::string s = "inductive " + d.name + " :";
  for (const auto& [var, schema] : d.params) s += " {" + var + ":" + schema + "}";
  s += " prop =";
  for (const auto& c : d.clauses) s += "\n| " + c.name + ": " + pretty(c.body);
  return s + ";";
}

std::string pretty(const Theorem& t) {
  return "theorem " + t.name + ": " + pretty(t.statement) + ";";
}

std::string pretty(const Annotation& a) {
  std::string s = std::string("%% ") + what_name(a.what) + " [";
  bool first = true;
  for (System sy : a.systems) {
    if (!first) s += ",";
    s += system_name(sy);
    first = false;
  }
  return s + "] in " + a.dest.str();
}

std::string pretty(const OrbiSpec& spec) {
  std::string out;
  std::optional<Section> current;
  for (const auto& it : spec.items) {
    if (current != it.section) {
      if (current) out += "\n";
      out += std::string("%% ") + section_name(it.section) + "\n";
      current = it.section;
    }
    out += std::visit([](const auto& node) { return pretty(node); }, it.node);
    out += "\n";
  }
  return out;
}

}  // namespace orbi
