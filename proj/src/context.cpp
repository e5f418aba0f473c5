#include "orbi/context.hpp"

#include "orbi/parser.hpp"

namespace orbi {

namespace {

std::string tick(const std::string& s) { return "`" + s + "`"; }

void collect_names(const TermRef& t, std::set<std::string>& out) {
  if (const auto* c = t->as<Term::Const>()) {
    out.insert(c->name);
  } else if (const auto* l = t->as<Term::Lam>()) {
    out.insert(l->hint);
    collect_names(l->body, out);
  } else if (const auto* a = t->as<Term::App>()) {
    collect_names(a->fn, out);
    collect_names(a->arg, out);
  }
}

void collect_names(const TpRef& t, std::set<std::string>& out) {
  if (const auto* at = t->as<Tp::Atom>()) {
    out.insert(at->family);
    for (const auto& a : at->args) collect_names(a, out);
  } else if (const auto* ar = t->as<Tp::Arrow>()) {
    collect_names(ar->dom, out);
    collect_names(ar->cod, out);
  } else {
    const auto* pi = t->as<Tp::Pi>();
    out.insert(pi->hint);
    collect_names(pi->dom, out);
    collect_names(pi->cod, out);
  }
}

void collect_names(const KindRef& k, std::set<std::string>& out) {
  if (const auto* a = k->as<Kind::Arrow>()) {
    collect_names(a->dom, out);
    collect_names(a->cod, out);
  } else if (const auto* p = k->as<Kind::Pi>()) {
    out.insert(p->hint);
    collect_names(p->dom, out);
    collect_names(p->cod, out);
  }
}

void collect_names(const Block& b, std::set<std::string>& out) {
  for (const auto& e : b.entries) {
    out.insert(e.label);
    collect_names(e.type, out);
  }
}

void collect_names(const CtxPattern& c, std::set<std::string>& out) {
  if (c.head) out.insert(*c.head);
  for (const auto& e : c.entries) {
    out.insert(e.label);
    collect_names(e.block, out);
  }
}

void collect_names(const PrpRef& p, std::set<std::string>& out) {
  if (const auto* r = p->as<Prp::RelApp>()) {
    out.insert(r->name);
    for (const auto& c : r->ctxs) collect_names(c, out);
  } else if (const auto* j = p->as<Prp::Judgment>()) {
    collect_names(j->ctx, out);
    out.insert(j->family);
    for (const auto& a : j->args) collect_names(a, out);
  } else if (const auto* e = p->as<Prp::TermEq>()) {
    collect_names(e->lhs, out);
    collect_names(e->rhs, out);
  } else if (const auto* a = p->as<Prp::And>()) {
    collect_names(a->lhs, out);
    collect_names(a->rhs, out);
  } else if (const auto* o = p->as<Prp::Or>()) {
    collect_names(o->lhs, out);
    collect_names(o->rhs, out);
  } else if (const auto* i = p->as<Prp::Imp>()) {
    collect_names(i->lhs, out);
    collect_names(i->rhs, out);
  } else if (const auto* f = p->as<Prp::ForallCtx>()) {
    out.insert(f->var);
    out.insert(f->schema);
    collect_names(f->body, out);
  } else if (const auto* t = p->as<Prp::ForallTm>()) {
    out.insert(t->var);
    collect_names(t->type, out);
    collect_names(t->body, out);
  } else if (const auto* x = p->as<Prp::ExistsTm>()) {
    out.insert(x->var);
    collect_names(x->type, out);
    collect_names(x->body, out);
  }
}

std::set<std::string> spec_identifiers(const OrbiSpec& spec) {
  std::set<std::string> out;
  for (const auto& item : spec.items) {
    if (const auto* d = item.as<Decl>()) {
      out.insert(d->name);
      if (d->is_family())
        collect_names(d->kind(), out);
      else
        collect_names(d->type(), out);
    } else if (const auto* s = item.as<Schema>()) {
      out.insert(s->name);
      for (const auto& b : s->alternatives) collect_names(b, out);
    } else if (const auto* r = item.as<InductiveDef>()) {
      out.insert(r->name);
      for (const auto& [v, s] : r->params) out.insert(v);
      for (const auto& c : r->clauses) {
        out.insert(c.name);
        collect_names(c.body, out);
      }
    } else if (const auto* t = item.as<Theorem>()) {
      out.insert(t->name);
      collect_names(t->statement, out);
    }
  }
  return out;
}

const Schema& find_schema(const SchemaTable& schemas, const std::string& name) {
  auto it = schemas.find(name);
  if (it == schemas.end())
    fail(codes::UnknownSchema, "unknown schema " + tick(name));
  return it->second;
}

// Splits `P1 -> ... -> Pn -> H` into premises and head.
PrpRef split_clause(const PrpRef& body, std::vector<PrpRef>& premises) {
  PrpRef cur = body;
  while (const auto* imp = cur->as<Prp::Imp>()) {
    premises.push_back(imp->lhs);
    cur = imp->rhs;
  }
  return cur;
}

}  // namespace

void check_block(const Signature& sig, const Block& b) {
  TypingCtx ctx;
  std::set<std::string> seen;
  for (const auto& e : b.entries) {
    if (!seen.insert(e.label).second)
      fail(codes::Duplicate, "label " + tick(e.label) +
                                 " occurs twice in one block");
    if (sig.find(e.label))
      fail(codes::Duplicate, "block label " + tick(e.label) +
                                 " shadows a signature declaration");
    check_tp(sig, ctx, e.type);
    ctx.emplace_back(e.label, e.type);
  }
}

void check_schema(const Signature& sig, const Schema& s) {
  if (sig.find(s.name))
    fail(codes::Duplicate, "schema " + tick(s.name) +
                               " clashes with a signature declaration");
  for (const auto& b : s.alternatives) check_block(sig, b);
}

bool block_matches(const Block& instance, const Block& alternative) {
  if (instance.entries.size() != alternative.entries.size()) return false;
  for (size_t i = 0; i < instance.entries.size(); ++i) {
    TpRef t = instance.entries[i].type;
    for (size_t j = 0; j < i; ++j)
      t = replace_free(t, instance.entries[j].label,
                       mk_const(alternative.entries[j].label));
    if (!tp_equal(t, alternative.entries[i].type)) return false;
  }
  return true;
}

void check_ctx_pattern(const Signature& sig, const SchemaTable& schemas,
                       const std::string& schema, const CtxPattern& c,
                       const CtxVarScope& scope) {
  const Schema& s = find_schema(schemas, schema);
  if (c.head) {
    auto it = scope.find(*c.head);
    if (it == scope.end())
      fail(codes::UnknownCtxVar, "context variable " + tick(*c.head) +
                                     " is not bound here");
    if (it->second != schema)
      fail(codes::SchemaMismatch,
           "context variable " + tick(*c.head) + " has schema " +
               tick(it->second) + " but is used where " + tick(schema) +
               " is expected");
  }
  for (const auto& e : c.entries) {
    check_block(sig, e.block);
    bool ok = false;
    for (const auto& alt : s.alternatives) ok = ok || block_matches(e.block, alt);
    if (!ok)
      fail(codes::SchemaMismatch, "block " + tick(pretty(e.block)) +
                                      " is not an instance of schema " +
                                      tick(schema),
           {}, "alternatives: " + pretty(s));
  }
}

void check_inductive_def(const Signature& sig, const SchemaTable& schemas,
                         const RelationTable& relations,
                         const InductiveDef& d) {
  if (sig.find(d.name) || schemas.count(d.name) || relations.count(d.name))
    fail(codes::Duplicate, "relation " + tick(d.name) + " is already declared");
  std::set<std::string> vars;
  for (const auto& [v, s] : d.params) {
    if (!vars.insert(v).second)
      fail(codes::Duplicate, "parameter " + tick(v) + " occurs twice");
    find_schema(schemas, s);
  }

  auto params_of = [&](const std::string& rel)
      -> const std::vector<std::pair<std::string, std::string>>& {
    if (rel == d.name) return d.params;
    auto it = relations.find(rel);
    if (it == relations.end())
      fail(codes::UnknownRelation, "unknown relation " + tick(rel));
    return it->second.params;
  };
  auto check_arity = [&](const Prp::RelApp& r) {
    const auto& ps = params_of(r.name);
    if (r.ctxs.size() != ps.size())
      fail(codes::Arity, tick(r.name) + " expects " + std::to_string(ps.size()) +
                             " context arguments, got " +
                             std::to_string(r.ctxs.size()));
    return ps;
  };

  std::set<std::string> names;
  for (const auto& clause : d.clauses) {
    try {
      if (!names.insert(clause.name).second)
        fail(codes::Duplicate, "clause " + tick(clause.name) + " occurs twice");
      std::vector<PrpRef> premises;
      PrpRef head = split_clause(clause.body, premises);
      const auto* h = head->as<Prp::RelApp>();
      if (!h || h->name != d.name)
        fail(codes::Shape, "clause must conclude " + tick(d.name));
      check_arity(*h);

      // Context variables are bound implicitly by the clause; each takes the
      // schema of the position it occupies in the conclusion.
      CtxVarScope scope;
      for (size_t i = 0; i < h->ctxs.size(); ++i) {
        const auto& c = h->ctxs[i];
        if (!c.head) continue;
        auto [it, fresh] = scope.emplace(*c.head, d.params[i].second);
        if (!fresh && it->second != d.params[i].second)
          fail(codes::SchemaMismatch,
               "context variable " + tick(*c.head) + " is used at schemas " +
                   tick(it->second) + " and " + tick(d.params[i].second));
      }
      for (size_t i = 0; i < h->ctxs.size(); ++i)
        check_ctx_pattern(sig, schemas, d.params[i].second, h->ctxs[i], scope);

      for (const auto& p : premises) {
        const auto* r = p->as<Prp::RelApp>();
        if (!r)
          fail(codes::Shape, "premises of a context relation must be "
                             "relation applications");
        auto ps = check_arity(*r);
        for (size_t i = 0; i < r->ctxs.size(); ++i) {
          const auto& c = r->ctxs[i];
          if (!c.entries.empty())
            fail(codes::Shape, "premise arguments must be context variables "
                               "or []; got " + tick(pretty(c)));
          check_ctx_pattern(sig, schemas, ps[i].second, c, scope);
        }
      }
    } catch (const OrbiError& e) {
      Diagnostic diag = e.diagnostic();
      diag.message = "in clause " + tick(clause.name) + ": " + diag.message;
      throw OrbiError(diag);
    }
  }
}

namespace {

class TheoremScope {
 public:
  TheoremScope(const Signature& sig, const SchemaTable& schemas,
               const RelationTable& relations, Diagnostics& diags,
               SourceLoc loc, std::string thm)
      : sig_(sig), schemas_(schemas), relations_(relations), diags_(diags),
        loc_(std::move(loc)), thm_(std::move(thm)) {}

  void prp(const PrpRef& p) {
    if (const auto* r = p->as<Prp::RelApp>()) {
      auto it = relations_.find(r->name);
      if (it == relations_.end()) {
        report(codes::UnknownRelation, "unknown relation " + tick(r->name));
      } else if (it->second.params.size() != r->ctxs.size()) {
        report(codes::Arity, tick(r->name) + " expects " +
                                 std::to_string(it->second.params.size()) +
                                 " context arguments, got " +
                                 std::to_string(r->ctxs.size()));
      }
      for (const auto& c : r->ctxs) ctx(c);
    } else if (const auto* j = p->as<Prp::Judgment>()) {
      judgment(*j);
    } else if (const auto* e = p->as<Prp::TermEq>()) {
      term(e->lhs, {});
      term(e->rhs, {});
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
      if (!schemas_.count(f->schema))
        report(codes::UnknownSchema, "unknown schema " + tick(f->schema));
      ctx_vars_.push_back(f->var);
      prp(f->body);
      ctx_vars_.pop_back();
    } else if (const auto* t = p->as<Prp::ForallTm>()) {
      quantified(t->var, t->type, t->body);
    } else if (const auto* x = p->as<Prp::ExistsTm>()) {
      quantified(x->var, x->type, x->body);
    }
  }

 private:
  void report(const char* code, const std::string& msg) {
    diags_.error(code, "in theorem " + tick(thm_) + ": " + msg, loc_);
  }

  bool has(const std::vector<std::string>& v, const std::string& n) const {
    for (const auto& x : v)
      if (x == n) return true;
    return false;
  }

  void quantified(const std::string& var, const TpRef& type,
                  const PrpRef& body) {
    try {
      check_tp(sig_, {}, type);
      if (!is_level0_type(sig_, type))
        report(codes::Level, "quantifier " + tick(var) + " ranges over " +
                                 tick(pretty(type)) +
                                 ", which is not a level-0 type");
    } catch (const OrbiError& e) {
      report(e.diagnostic().code.c_str(), e.diagnostic().message);
    }
    term_vars_.push_back(var);
    prp(body);
    term_vars_.pop_back();
  }

  // Returns the labels the pattern brings into scope.
  std::vector<std::string> ctx(const CtxPattern& c) {
    if (c.head && !has(ctx_vars_, *c.head))
      report(codes::UnknownCtxVar,
             "context variable " + tick(*c.head) + " is not bound");
    std::vector<std::string> labels;
    for (const auto& e : c.entries) {
      try {
        check_block(sig_, e.block);
      } catch (const OrbiError& err) {
        report(err.diagnostic().code.c_str(), err.diagnostic().message);
      }
      for (const auto& be : e.block.entries) labels.push_back(be.label);
    }
    return labels;
  }

  void judgment(const Prp::Judgment& j) {
    std::vector<std::string> labels = ctx(j.ctx);
    const SigEntry* e = sig_.find(j.family);
    if (!e || !e->decl.is_family()) {
      report(codes::Unbound, "unknown judgment " + tick(j.family));
    } else if (e->level != Level::One) {
      report(codes::Level, tick(j.family) + " is not a judgment (level-1 family)");
    } else {
      size_t arity = 0;
      for (KindRef k = e->decl.kind(); !k->as<Kind::Type>(); ++arity) {
        if (const auto* a = k->as<Kind::Arrow>())
          k = a->cod;
        else
          k = k->as<Kind::Pi>()->cod;
      }
      if (arity != j.args.size())
        report(codes::Arity, tick(j.family) + " expects " +
                                 std::to_string(arity) + " arguments, got " +
                                 std::to_string(j.args.size()));
    }
    for (const auto& a : j.args) term(a, labels);
  }

  void term(const TermRef& t, const std::vector<std::string>& labels) {
    std::vector<std::string> names;
    free_names(t, names);
    for (const auto& n : names) {
      if (has(term_vars_, n) || has(labels, n)) continue;
      const SigEntry* e = sig_.find(n);
      if (e && !e->decl.is_family()) continue;
      report(codes::Unbound, "unbound variable " + tick(n));
    }
  }

  const Signature& sig_;
  const SchemaTable& schemas_;
  const RelationTable& relations_;
  Diagnostics& diags_;
  SourceLoc loc_;
  std::string thm_;
  std::vector<std::string> ctx_vars_;
  std::vector<std::string> term_vars_;
};

}  // namespace

void scope_check_theorem(const Signature& sig, const SchemaTable& schemas,
                         const RelationTable& relations, const Theorem& t,
                         Diagnostics& diags, const SourceLoc& loc) {
  TheoremScope(sig, schemas, relations, diags, loc, t.name).prp(t.statement);
}

CheckedSpec check_spec(OrbiSpec spec, Diagnostics& diags) {
  CheckedSpec out;
  out.sig = check_signature(spec, diags);
  out.identifiers = spec_identifiers(spec);

  auto record = [&](const OrbiError& e, const Item& item) {
    Diagnostic d = e.diagnostic();
    if (d.loc.line == 0) d.loc = item.loc;
    diags.add(std::move(d));
  };

  std::set<std::string> theorem_names;
  for (const auto& item : spec.items) {
    try {
      if (const auto* s = item.as<Schema>()) {
        if (out.schemas.count(s->name))
          fail(codes::Duplicate, "schema " + tick(s->name) + " is already declared");
        try {
          check_schema(out.sig, *s);
        } catch (const OrbiError& e) {
          Diagnostic d = e.diagnostic();
          d.message = "in schema " + tick(s->name) + ": " + d.message;
          throw OrbiError(d);
        }
        out.schemas.emplace(s->name, *s);
      } else if (const auto* r = item.as<InductiveDef>()) {
        try {
          check_inductive_def(out.sig, out.schemas, out.relations, *r);
        } catch (const OrbiError& e) {
          Diagnostic d = e.diagnostic();
          d.message = "in relation " + tick(r->name) + ": " + d.message;
          throw OrbiError(d);
        }
        out.relations.emplace(r->name, *r);
      } else if (const auto* t = item.as<Theorem>()) {
        if (!theorem_names.insert(t->name).second)
          fail(codes::Duplicate, "theorem " + tick(t->name) + " is already declared");
        size_t before = diags.error_count();
        scope_check_theorem(out.sig, out.schemas, out.relations, *t, diags,
                            item.loc);
        if (diags.error_count() == before) out.theorems.push_back(*t);
      }
    } catch (const OrbiError& e) {
      record(e, item);
    }
  }
  out.spec = std::move(spec);
  return out;
}

CheckedSpec check_source(std::string_view source, Diagnostics& diags,
                         const std::string& file) {
  return check_spec(parse_spec(source, diags, file), diags);
}

}  // namespace orbi
