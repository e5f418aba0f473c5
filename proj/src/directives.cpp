#include "orbi/directives.hpp"

#include <optional>
#include <vector>

namespace orbi {

bool AnnotationTable::param_explicit(const std::string& rel,
                                     const std::string& p) const {
  auto it = explicit_relation_params.find(rel);
  return it != explicit_relation_params.end() && it->second.count(p) > 0;
}

bool AnnotationTable::theorem_var_explicit(const std::string& thm,
                                           const std::string& v) const {
  auto it = explicit_theorem_vars.find(thm);
  return it != explicit_theorem_vars.end() && it->second.count(v) > 0;
}

namespace {

enum class DestKind { Family, Rule, Schema, Param, TheoremVar };

struct Target {
  DestKind kind;
  std::string owner;  // relation or theorem for Param / TheoremVar
  std::string name;
  std::optional<TpRef> var_type;  // term-quantified theorem variables

  std::string key() const {
    return std::to_string(static_cast<int>(kind)) + ":" + owner + "." + name;
  }
  std::string describe() const {
    switch (kind) {
      case DestKind::Family: return "type family `" + name + "`";
      case DestKind::Rule: return "rule `" + name + "`";
      case DestKind::Schema: return "schema `" + name + "`";
      case DestKind::Param:
        return "parameter `" + name + "` of relation `" + owner + "`";
      case DestKind::TheoremVar:
        return "variable `" + name + "` of theorem `" + owner + "`";
    }
    return name;
  }
};

// Variables bound by a theorem's quantifiers, outermost first.
void bound_vars(const PrpRef& p,
                std::vector<std::pair<std::string, std::optional<TpRef>>>& out) {
  if (const auto* f = p->as<Prp::ForallCtx>()) {
    out.emplace_back(f->var, std::nullopt);
    bound_vars(f->body, out);
  } else if (const auto* t = p->as<Prp::ForallTm>()) {
    out.emplace_back(t->var, t->type);
    bound_vars(t->body, out);
  } else if (const auto* x = p->as<Prp::ExistsTm>()) {
    out.emplace_back(x->var, x->type);
    bound_vars(x->body, out);
  } else if (const auto* a = p->as<Prp::And>()) {
    bound_vars(a->lhs, out);
    bound_vars(a->rhs, out);
  } else if (const auto* o = p->as<Prp::Or>()) {
    bound_vars(o->lhs, out);
    bound_vars(o->rhs, out);
  } else if (const auto* i = p->as<Prp::Imp>()) {
    bound_vars(i->lhs, out);
    bound_vars(i->rhs, out);
  }
}

std::vector<Target> candidates(const CheckedSpec& cs, const Dest& dest) {
  std::vector<Target> out;
  auto theorem_var = [&](const Theorem& t, const std::string& name) {
    std::vector<std::pair<std::string, std::optional<TpRef>>> vars;
    bound_vars(t.statement, vars);
    for (const auto& [v, type] : vars)
      if (v == name) {
        out.push_back({DestKind::TheoremVar, t.name, name, type});
        return;
      }
  };

  if (dest.owner) {
    if (auto it = cs.relations.find(*dest.owner); it != cs.relations.end()) {
      for (const auto& [v, s] : it->second.params)
        if (v == dest.name) out.push_back({DestKind::Param, *dest.owner, v, {}});
    }
    for (const auto& t : cs.theorems)
      if (t.name == *dest.owner) theorem_var(t, dest.name);
    return out;
  }

  if (const SigEntry* e = cs.sig.find(dest.name)) {
    if (e->decl.is_family())
      out.push_back({DestKind::Family, "", dest.name, {}});
    else if (e->section == Section::Rules)
      out.push_back({DestKind::Rule, "", dest.name, {}});
  }
  if (cs.schemas.count(dest.name))
    out.push_back({DestKind::Schema, "", dest.name, {}});
  for (const auto& [rel, def] : cs.relations)
    for (const auto& [v, s] : def.params)
      if (v == dest.name) out.push_back({DestKind::Param, rel, v, {}});
  for (const auto& t : cs.theorems) theorem_var(t, dest.name);
  return out;
}

struct Resolved {
  What what;
  Target target;
  SourceLoc loc;
};

}  // namespace

AnnotationTable resolve(const CheckedSpec& cs, System target,
                        Diagnostics& diags) {
  AnnotationTable table;
  table.target = target;

  std::vector<Resolved> resolved;
  for (const auto& item : cs.spec.items) {
    const auto* a = item.as<Annotation>();
    if (!a || !a->systems.count(target)) continue;
    std::vector<Target> found = candidates(cs, a->dest);
    if (found.empty()) {
      diags.error(codes::UnknownDest,
                  "directive destination `" + a->dest.str() +
                      "` names no family, rule, schema, relation parameter "
                      "or theorem variable",
                  item.loc);
      continue;
    }
    if (found.size() > 1) {
      std::string all;
      for (const auto& t : found) all += (all.empty() ? "" : ", ") + t.describe();
      diags.error(codes::AmbiguousDest,
                  "directive destination `" + a->dest.str() +
                      "` is ambiguous: " + all,
                  item.loc, "qualify it as `owner.name`");
      continue;
    }
    const Target& t = found.front();
    if (a->what == What::Wf) {
      if (t.kind != DestKind::Family) {
        diags.error(codes::Directive,
                    "`wf` applies to type families, not to " + t.describe(),
                    item.loc);
        continue;
      }
      if (cs.sig.level_of(t.name) != Level::Zero) {
        diags.error(codes::Level,
                    "`wf` needs a level-0 family; " + t.describe() +
                        " is a judgment",
                    item.loc);
        continue;
      }
    } else if (t.kind == DestKind::Family) {
      diags.error(codes::Directive,
                  std::string("`") + what_name(a->what) +
                      "` does not apply to " + t.describe() +
                      "; use `wf` to request its predicate",
                  item.loc);
      continue;
    } else if (t.kind == DestKind::TheoremVar && !t.var_type) {
      diags.error(codes::Directive,
                  std::string("`") + what_name(a->what) +
                      "` applies to term variables, not to context variable `" +
                      t.name + "`",
                  item.loc);
      continue;
    }
    resolved.push_back({a->what, t, item.loc});
  }

  std::map<std::string, const Resolved*> explicit_at, implicit_at;
  for (const auto& r : resolved) {
    if (r.what == What::Explicit) explicit_at.emplace(r.target.key(), &r);
    if (r.what == What::Implicit) implicit_at.emplace(r.target.key(), &r);
  }
  std::set<std::string> conflicted;
  for (const auto& [key, r] : implicit_at) {
    auto it = explicit_at.find(key);
    if (it == explicit_at.end()) continue;
    conflicted.insert(key);
    const Resolved* later =
        it->second->loc.line > r->loc.line ? it->second : r;
    diags.error(codes::Conflict,
                r->target.describe() + " is marked both explicit and implicit "
                "for " + system_name(target),
                later->loc, "keep only one of the two directives");
  }

  for (const auto& r : resolved) {
    if (r.what == What::Wf) table.wf_families.insert(r.target.name);
  }
  for (const auto& r : resolved) {
    if (r.what != What::Explicit || conflicted.count(r.target.key())) continue;
    const Target& t = r.target;
    switch (t.kind) {
      case DestKind::Rule: table.explicit_rules.insert(t.name); break;
      case DestKind::Schema: table.explicit_schemas.insert(t.name); break;
      case DestKind::Param:
        table.explicit_relation_params[t.owner].insert(t.name);
        break;
      case DestKind::TheoremVar: {
        bool proof_theoretic = target == System::Ab || target == System::Hy;
        const auto* atom = (*t.var_type)->as<Tp::Atom>();
        if (proof_theoretic &&
            (!atom || !table.wf_families.count(atom->family))) {
          diags.error(codes::Directive,
                      t.describe() + " has type `" + pretty(*t.var_type) +
                          "`, which has no wf predicate for " +
                          system_name(target),
                      r.loc,
                      "add `%% wf [" + std::string(system_name(target)) +
                          "] in " + pretty(*t.var_type) + "`");
          continue;
        }
        table.explicit_theorem_vars[t.owner].insert(t.name);
        break;
      }
      case DestKind::Family: break;
    }
  }
  return table;
}

AnnotationTable resolve_or_throw(const CheckedSpec& spec, System target) {
  Diagnostics diags;
  AnnotationTable t = resolve(spec, target, diags);
  for (const auto& d : diags.items())
    if (d.severity == Severity::Error) throw OrbiError(d);
  return t;
}

}  // namespace orbi
