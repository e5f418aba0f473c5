#include "orbi/lint.hpp"

#include <cctype>
#include <map>

namespace orbi {

namespace {

bool upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}
bool lower(const std::string& s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0]));
}
std::string flip_case(std::string s) {
  if (s.empty()) return s;
  auto c = static_cast<unsigned char>(s[0]);
  s[0] = static_cast<char>(std::isupper(c) ? std::tolower(c) : std::toupper(c));
  return s;
}
std::string tick(const std::string& s) { return "`" + s + "`"; }

class Linter {
 public:
  explicit Linter(const CheckedSpec& cs) : cs_(cs) {}

  std::vector<Diagnostic> run() {
    for (const auto& item : cs_.spec.items) {
      loc_ = item.loc;
      if (const auto* d = item.as<Decl>()) {
        decl(*d, item.section);
      } else if (const auto* s = item.as<Schema>()) {
        owner_ = "schema " + tick(s->name);
        for (const auto& b : s->alternatives) block(b);
      } else if (const auto* r = item.as<InductiveDef>()) {
        relation(*r);
      } else if (const auto* t = item.as<Theorem>()) {
        owner_ = "theorem " + tick(t->name);
        prp(t->statement);
      }
    }
    return std::move(out_);
  }

 private:
  void warn(const char* code, std::string msg, std::string hint) {
    out_.push_back({code, Severity::Warning, loc_, std::move(msg), std::move(hint)});
  }

  void decl(const Decl& d, Section section) {
    owner_ = tick(d.name);
    rule_ = section == Section::Rules;
    if (d.is_family()) {
      kind(d.kind());
      return;
    }
    if (rule_) {
      if (const SigEntry* e = cs_.sig.find(d.name); e && e->ok) {
        TpRef t = e->decl.type();
        for (int i = 0; i < e->decl.implicit_count; ++i) {
          const auto* pi = t->as<Tp::Pi>();
          if (lower(pi->hint))
            warn("L1", "schematic variable " + tick(pi->hint) + " in rule " +
                           owner_ + " should be upper case",
                 "rename it to " + tick(flip_case(pi->hint)));
          t = pi->cod;
        }
      }
    }
    tp(d.type(), true);
    rule_ = false;
  }

  void kind(const KindRef& k) {
    if (const auto* a = k->as<Kind::Arrow>()) {
      tp(a->dom, false);
      kind(a->cod);
    } else if (const auto* p = k->as<Kind::Pi>()) {
      if (!occurs_bound(p->cod, 0))
        warn("L3", "Pi binder " + tick(p->hint) + " in " + owner_ +
                       " is not used in its body",
             "write `" + pretty(p->dom) + " -> ...` instead");
      tp(p->dom, false);
      kind(p->cod);
    }
  }

  // `outer`: still in the leading quantifier prefix of a declaration, where
  // binders name schematic variables rather than eigenvariables.
  void tp(const TpRef& a, bool outer) {
    if (const auto* at = a->as<Tp::Atom>()) {
      for (const auto& t : at->args) term(t);
      return;
    }
    if (const auto* ar = a->as<Tp::Arrow>()) {
      tp(ar->dom, false);
      tp(ar->cod, outer);
      return;
    }
    const auto* pi = a->as<Tp::Pi>();
    if (!occurs_bound(pi->cod, 0)) {
      warn("L3", "Pi binder " + tick(pi->hint) + " in " + owner_ +
                     " is not used in its body",
           "write `" + pretty(pi->dom) + " -> ...` instead");
    } else if (!is_level0_type(cs_.sig, pi->dom)) {
      warn("L2", "Pi binder " + tick(pi->hint) + " in " + owner_ +
                     " quantifies over " + tick(pretty(pi->dom)) +
                     ", which is not a level-0 type",
           "quantify over syntax-level types only");
    }
    if (rule_ && !outer && upper(pi->hint))
      warn("L1", "eigenvariable " + tick(pi->hint) + " in rule " + owner_ +
                     " should be lower case",
           "rename it to " + tick(flip_case(pi->hint)));
    tp(pi->dom, false);
    tp(pi->cod, outer);
  }

  void term(const TermRef& t) {
    if (const auto* l = t->as<Term::Lam>()) {
      if (rule_ && upper(l->hint))
        warn("L1", "eigenvariable " + tick(l->hint) + " in rule " + owner_ +
                       " should be lower case",
             "rename it to " + tick(flip_case(l->hint)));
      term(l->body);
    } else if (const auto* a = t->as<Term::App>()) {
      term(a->fn);
      term(a->arg);
    }
  }

  void block(const Block& b) {
    for (const auto& e : b.entries) tp(e.type, false);
  }

  void ctx_var(const std::string& v) {
    if (upper(v))
      warn("L1", "context variable " + tick(v) + " in " + owner_ +
                     " should be lower case",
           "rename it to " + tick(flip_case(v)));
  }

  void ctx(const CtxPattern& c) {
    std::map<std::string, size_t> seen;  // variable -> block index
    for (size_t i = 0; i < c.entries.size(); ++i) {
      const CtxEntry& e = c.entries[i];
      block(e.block);
      for (const auto& be : e.block.entries) {
        auto [it, fresh] = seen.emplace(be.label, i);
        if (!fresh && it->second != i)
          warn("L4", "variable " + tick(be.label) + " is declared in blocks " +
                         tick(c.entries[it->second].label) + " and " + tick(e.label) +
                         " of the same context in " + owner_,
               "rename it in block " + tick(e.label));
      }
    }
  }

  void relation(const InductiveDef& d) {
    owner_ = "relation " + tick(d.name);
    for (const auto& [v, s] : d.params) ctx_var(v);
    for (const auto& c : d.clauses) {
      std::set<std::string> reported;
      prp_ctx_vars(c.body, reported);
      prp(c.body);
    }
  }

  void prp_ctx_vars(const PrpRef& p, std::set<std::string>& reported) {
    if (const auto* r = p->as<Prp::RelApp>()) {
      for (const auto& c : r->ctxs)
        if (c.head && reported.insert(*c.head).second) ctx_var(*c.head);
    } else if (const auto* i = p->as<Prp::Imp>()) {
      prp_ctx_vars(i->lhs, reported);
      prp_ctx_vars(i->rhs, reported);
    }
  }

  void prp(const PrpRef& p) {
    if (const auto* r = p->as<Prp::RelApp>()) {
      for (const auto& c : r->ctxs) ctx(c);
    } else if (const auto* j = p->as<Prp::Judgment>()) {
      ctx(j->ctx);
    } else if (const auto* a = p->as<Prp::And>()) {
      prp(a->lhs);
      prp(a->rhs);
    } else if (const auto* o = p->as<Prp::Or>()) {
      prp(o->lhs);
      prp(o->rhs);
    } else if (const auto* i = p->as<Prp::Imp>()) {
      prp(i->lhs);
      prp(i->rhs);
    } else if (const auto* f = p->as<Prp::ForallCtx>()) {
      ctx_var(f->var);
      prp(f->body);
    } else if (const auto* t = p->as<Prp::ForallTm>()) {
      prp(t->body);
    } else if (const auto* x = p->as<Prp::ExistsTm>()) {
      prp(x->body);
    }
  }

  const CheckedSpec& cs_;
  SourceLoc loc_;
  std::string owner_;
  bool rule_ = false;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> lint(const CheckedSpec& spec) { return Linter(spec).run(); }

}  // namespace orbi
