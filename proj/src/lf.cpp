#include "orbi/lf.hpp"

#include <algorithm>
#include <set>

namespace orbi {

const SigEntry* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

void Signature::add(SigEntry entry) {
  if (index_.count(entry.decl.name))
    fail(codes::Duplicate, "`" + entry.decl.name + "` is already declared",
         entry.loc);
  index_[entry.decl.name] = entries_.size();
  entries_.push_back(std::move(entry));
}

Level Signature::level_of(const std::string& family) const {
  const SigEntry* e = find(family);
  return e && e->decl.is_family() ? e->level : Level::Unknown;
}

std::vector<const SigEntry*> Signature::constructors_of(
    const std::string& family) const {
  std::vector<const SigEntry*> out;
  for (const auto& e : entries_)
    if (!e.decl.is_family() && e.section == Section::Syntax &&
        target_family(e.decl.type()) == family)
      out.push_back(&e);
  return out;
}

std::vector<const SigEntry*> Signature::rules() const {
  std::vector<const SigEntry*> out;
  for (const auto& e : entries_)
    if (!e.decl.is_family() && e.section == Section::Rules) out.push_back(&e);
  return out;
}

// ---------------------------------------------------------------------------

std::string target_family(const TpRef& a) {
  TpRef cur = a;
  while (true) {
    if (const auto* at = cur->as<Tp::Atom>()) return at->family;
    if (const auto* ar = cur->as<Tp::Arrow>()) {
      cur = ar->cod;
    } else {
      cur = cur->as<Tp::Pi>()->cod;
    }
  }
}

bool is_level0_type(const Signature& sig, const TpRef& a) {
  if (const auto* at = a->as<Tp::Atom>())
    return at->args.empty() && sig.level_of(at->family) == Level::Zero;
  if (const auto* ar = a->as<Tp::Arrow>())
    return is_level0_type(sig, ar->dom) && is_level0_type(sig, ar->cod);
  const auto* pi = a->as<Tp::Pi>();
  return is_level0_type(sig, pi->dom) && is_level0_type(sig, pi->cod);
}

namespace {

TpRef canonical(const TpRef& a) {
  if (a->as<Tp::Atom>()) return a;
  if (const auto* ar = a->as<Tp::Arrow>())
    return mk_arrow(canonical(ar->dom), canonical(ar->cod));
  const auto* pi = a->as<Tp::Pi>();
  if (!occurs_bound(pi->cod, 0))
    return mk_arrow(canonical(pi->dom), canonical(shift(pi->cod, -1, 0)));
  return mk_pi(pi->hint, canonical(pi->dom), canonical(pi->cod));
}

std::string quote(const TpRef& a) { return "`" + pretty(a) + "`"; }

int arrow_count(const TpRef& a) {
  int n = 0;
  TpRef cur = a;
  while (true) {
    if (const auto* ar = cur->as<Tp::Arrow>()) {
      cur = ar->cod;
    } else if (const auto* pi = cur->as<Tp::Pi>()) {
      cur = pi->cod;
    } else {
      return n;
    }
    ++n;
  }
}

class Checker {
 public:
  Checker(const Signature& sig, TypingCtx ctx)
      : sig_(sig), ctx_(std::move(ctx)) {}

  /// Enables reconstruction mode for the given schematic names.
  void set_schematic(std::vector<std::string> names) {
    schematic_order_ = std::move(names);
    schematic_.clear();
    for (const auto& n : schematic_order_) schematic_[n] = nullptr;
  }
  const std::map<std::string, TpRef>& schematic() const { return schematic_; }

  TpRef infer(const TermRef& t) {
    std::vector<TermRef> args;
    TermRef head = spine(t, args);
    if (head->as<Term::Lam>()) return infer_redex(head, args);
    if (const auto* v = head->as<Term::Var>())
      fail(codes::Type, "unexpected loose bound variable #" +
                            std::to_string(v->index));
    const std::string& name = head->as<Term::Const>()->name;
    if (is_schematic(name)) {
      if (!schematic_[name])
        fail(codes::Recon, "cannot infer the type of schematic variable `" +
                               name + "` at this occurrence");
      return apply_schematic(name, args, nullptr);
    }
    return apply(lookup(name), args, name);
  }

  void check(const TermRef& t, const TpRef& expected_raw) {
    TpRef expected = normalize(expected_raw);
    if (const auto* lam = t->as<Term::Lam>()) {
      TpRef dom, cod;
      std::string x = fresh(lam->hint);
      if (const auto* ar = expected->as<Tp::Arrow>()) {
        dom = ar->dom;
        cod = ar->cod;
      } else if (const auto* pi = expected->as<Tp::Pi>()) {
        dom = pi->dom;
        cod = subst(pi->cod, mk_const(x));
      } else {
        fail(codes::Type, "a lambda cannot have type " + quote(expected));
      }
      ctx_.emplace_back(x, dom);
      check(subst(lam->body, mk_const(x)), cod);
      ctx_.pop_back();
      return;
    }
    std::vector<TermRef> args;
    TermRef head = spine(t, args);
    if (const auto* c = head->as<Term::Const>();
        c && is_schematic(c->name)) {
      if (!schematic_[c->name]) {
        assign(c->name, args, expected);
        return;
      }
      apply_schematic(c->name, args, expected);
      return;
    }
    TpRef actual = infer(t);
    if (!tp_equal(actual, expected))
      fail(codes::Type, "type mismatch for `" + pretty(t) + "`: expected " +
                            quote(expected) + ", got " + quote(actual));
  }

  void check_tp(const TpRef& a) {
    if (const auto* at = a->as<Tp::Atom>()) {
      if (at->family == "type")
        fail(codes::Level,
             "`type` is a kind; a family cannot be indexed by a family",
             {}, "index families by level-0 types only");
      const SigEntry* e = sig_.find(at->family);
      if (!e) {
        bool local = std::any_of(ctx_.begin(), ctx_.end(), [&](const auto& p) {
          return p.first == at->family;
        });
        fail(local ? codes::Kind : codes::Unbound,
             local ? "`" + at->family + "` is a variable, not a type family"
                   : "unbound type family `" + at->family + "`");
      }
      if (!e->decl.is_family())
        fail(codes::Kind, "`" + at->family + "` is a constant, not a type family");
      KindRef k = e->decl.kind();
      for (const auto& arg : at->args) {
        if (const auto* ka = k->as<Kind::Arrow>()) {
          check(arg, ka->dom);
          k = ka->cod;
        } else if (const auto* kp = k->as<Kind::Pi>()) {
          check(arg, kp->dom);
          k = subst(kp->cod, arg);
        } else {
          fail(codes::Kind, "family `" + at->family + "` is applied to " +
                                std::to_string(at->args.size()) +
                                " arguments, more than its kind allows");
        }
      }
      if (!k->as<Kind::Type>())
        fail(codes::Kind, "family `" + at->family + "` is applied to " +
                              std::to_string(at->args.size()) +
                              " arguments, fewer than its kind requires");
      return;
    }
    if (const auto* ar = a->as<Tp::Arrow>()) {
      check_tp(ar->dom);
      check_tp(ar->cod);
      return;
    }
    const auto* pi = a->as<Tp::Pi>();
    check_tp(pi->dom);
    std::string x = fresh(pi->hint);
    ctx_.emplace_back(x, pi->dom);
    check_tp(subst(pi->cod, mk_const(x)));
    ctx_.pop_back();
  }

  void check_kind(const KindRef& k) {
    if (k->as<Kind::Type>()) return;
    if (const auto* ka = k->as<Kind::Arrow>()) {
      check_tp(ka->dom);
      check_kind(ka->cod);
      return;
    }
    const auto* kp = k->as<Kind::Pi>();
    check_tp(kp->dom);
    std::string x = fresh(kp->hint);
    ctx_.emplace_back(x, kp->dom);
    check_kind(subst(kp->cod, mk_const(x)));
    ctx_.pop_back();
  }

 private:
  bool is_schematic(const std::string& name) const {
    return schematic_.count(name) > 0 && !local_type(name);
  }

  const TpRef* local_type(const std::string& name) const {
    for (auto it = ctx_.rbegin(); it != ctx_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  TpRef lookup(const std::string& name) const {
    if (const TpRef* t = local_type(name)) return *t;
    if (const SigEntry* e = sig_.find(name)) {
      if (e->decl.is_family())
        fail(codes::Type, "`" + name + "` is a type family, not a term");
      return e->decl.type();
    }
    fail(codes::Unbound, "unbound identifier `" + name + "`");
  }

  bool taken(const std::string& name) const {
    return local_type(name) || sig_.find(name) || schematic_.count(name);
  }

  std::string fresh(const std::string& hint) const {
    std::string name = hint.empty() ? "x" : hint;
    while (taken(name)) name += "'";
    return name;
  }

  TpRef apply(TpRef type, const std::vector<TermRef>& args,
              const std::string& head) {
    for (const auto& arg : args) {
      type = normalize(type);
      if (const auto* ar = type->as<Tp::Arrow>()) {
        check(arg, ar->dom);
        type = ar->cod;
      } else if (const auto* pi = type->as<Tp::Pi>()) {
        check(arg, pi->dom);
        type = subst(pi->cod, arg);
      } else {
        fail(codes::Type, "`" + head + "` is applied to too many arguments: " +
                              "expected " + quote(type) +
                              " to be a function type");
      }
    }
    return normalize(type);
  }

  TpRef infer_redex(TermRef cur, const std::vector<TermRef>& args) {
    std::vector<std::string> opened;
    size_t i = 0;
    while (cur->as<Term::Lam>() && i < args.size()) {
      TpRef dom = infer(args[i]);
      std::string x = fresh(cur->as<Term::Lam>()->hint);
      ctx_.emplace_back(x, dom);
      opened.push_back(x);
      cur = subst(cur->as<Term::Lam>()->body, mk_const(x));
      ++i;
    }
    if (cur->as<Term::Lam>())
      fail(codes::Type, "cannot infer the type of an unannotated lambda",
           {}, "use the lambda as an argument whose type is known");
    std::vector<TermRef> rest(args.begin() + static_cast<long>(i), args.end());
    TpRef result = infer(mk_apps(cur, rest));
    ctx_.resize(ctx_.size() - opened.size());
    for (size_t k = opened.size(); k-- > 0;)
      result = replace_free(result, opened[k], args[k]);
    return normalize(result);
  }

  // Pattern occurrence of an unassigned schematic variable: `X y1 .. yn`
  // with distinct local yi gets type T(y1) -> ... -> T(yn) -> expected.
  void assign(const std::string& name, const std::vector<TermRef>& args,
              const TpRef& expected) {
    std::vector<TpRef> doms;
    require_pattern(name, args, doms);
    TpRef type = expected;
    for (size_t k = doms.size(); k-- > 0;) type = mk_arrow(doms[k], type);
    std::vector<std::string> names;
    free_names(type, names);
    for (const auto& n : names)
      if (local_type(n))
        fail(codes::Recon, "type of schematic variable `" + name +
                               "` would depend on the bound variable `" + n +
                               "`");
    if (!is_level0_type(sig_, type))
      fail(codes::Recon,
           "schematic variable `" + name + "` would need type " + quote(type) +
               ", which is not a level-0 type",
           {}, "quantify only over syntax-level types");
    schematic_[name] = type;
  }

  void require_pattern(const std::string& name,
                       const std::vector<TermRef>& args,
                       std::vector<TpRef>& doms) const {
    std::set<std::string> seen;
    for (const auto& a : args) {
      const auto* c = a->as<Term::Const>();
      const TpRef* t = c ? local_type(c->name) : nullptr;
      if (!t || !seen.insert(c->name).second)
        fail(codes::Recon, "occurrence `" + pretty(mk_apps(mk_const(name), args)) +
                               "` is not a pattern: schematic variables must "
                               "be applied to distinct bound variables");
      doms.push_back(*t);
    }
  }

  TpRef apply_schematic(const std::string& name,
                        const std::vector<TermRef>& args,
                        const TpRef& expected) {
    const TpRef& known = schematic_[name];
    if (static_cast<int>(args.size()) > arrow_count(known))
      fail(codes::Recon, "schematic variable `" + name + "` is used at " +
                             quote(known) + " and at a function type");
    std::vector<TpRef> doms;
    require_pattern(name, args, doms);
    try {
      TpRef result = apply(known, args, name);
      if (expected && !tp_equal(result, expected))
        fail(codes::Type, "");
      return result;
    } catch (const OrbiError& e) {
      if (e.code() != codes::Type) throw;
      fail(codes::Recon, "schematic variable `" + name +
                             "` is used at incompatible types (inferred " +
                             quote(known) + ")");
    }
  }

  const Signature& sig_;
  TypingCtx ctx_;
  std::vector<std::string> schematic_order_;
  std::map<std::string, TpRef> schematic_;
};

bool level0_indices(const Signature& sig, const KindRef& k, std::string& bad) {
  KindRef cur = k;
  while (true) {
    TpRef dom;
    if (const auto* a = cur->as<Kind::Arrow>()) {
      dom = a->dom;
      cur = a->cod;
    } else if (const auto* p = cur->as<Kind::Pi>()) {
      dom = p->dom;
      cur = p->cod;
    } else {
      return true;
    }
    if (!is_level0_type(sig, dom)) {
      bad = pretty(dom);
      return false;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

bool tp_equal(const TpRef& a, const TpRef& b) {
  return alpha_equal(canonical(normalize(a)), canonical(normalize(b)));
}

TpRef infer_type(const Signature& sig, const TypingCtx& ctx, const TermRef& t) {
  return Checker(sig, ctx).infer(t);
}

void check_term(const Signature& sig, const TypingCtx& ctx, const TermRef& t,
                const TpRef& expected) {
  Checker(sig, ctx).check(t, expected);
}

void check_tp(const Signature& sig, const TypingCtx& ctx, const TpRef& a) {
  Checker(sig, ctx).check_tp(a);
}

void check_kind(const Signature& sig, const TypingCtx& ctx, const KindRef& k) {
  Checker(sig, ctx).check_kind(k);
}

Decl reconstruct_implicits(const Signature& sig, const Decl& rule) {
  if (rule.is_family()) return rule;
  std::vector<std::string> names, free;
  free_names(rule.type(), free);
  for (const auto& n : free)
    if (!sig.find(n)) names.push_back(n);
  if (names.empty()) return rule;

  Checker checker(sig, {});
  checker.set_schematic(names);
  checker.check_tp(rule.type());

  TpRef type = rule.type();
  for (size_t k = names.size(); k-- > 0;) {
    const TpRef& t = checker.schematic().at(names[k]);
    if (!t)
      fail(codes::Recon,
           "could not infer a type for schematic variable `" + names[k] + "`");
    type = mk_pi(names[k], t, abstract(type, names[k]));
  }
  return Decl{rule.name, type, static_cast<int>(names.size())};
}

Signature check_signature(const OrbiSpec& spec, Diagnostics& diags) {
  Signature sig;
  for (const auto& item : spec.items) {
    const auto* decl = item.as<Decl>();
    if (!decl) continue;
    SigEntry entry{*decl, Level::Unknown, item.section, item.loc, true};
    try {
      if (sig.find(decl->name))
        fail(codes::Duplicate, "`" + decl->name + "` is already declared");
      if (decl->is_family()) {
        if (item.section == Section::Syntax) {
          entry.level = Level::Zero;
          if (!decl->kind()->as<Kind::Type>())
            fail(codes::Level,
                 "syntax-level family `" + decl->name +
                     "` must have kind `type`",
                 {}, "declare indexed families in the Judgments section");
        } else if (item.section == Section::Judgments) {
          entry.level = Level::One;
          Checker(sig, {}).check_kind(decl->kind());
          std::string bad;
          if (!level0_indices(sig, decl->kind(), bad))
            fail(codes::Level, "judgment `" + decl->name + "` is indexed by `" +
                                   bad + "`, which is not a level-0 type");
        } else {
          fail(codes::Level, "type family `" + decl->name +
                                 "` must be declared in the Syntax or "
                                 "Judgments section");
        }
      } else if (item.section == Section::Syntax) {
        entry.level = Level::Zero;
        Checker(sig, {}).check_tp(decl->type());
        if (!is_level0_type(sig, decl->type()))
          fail(codes::Level, "constructor `" + decl->name +
                                 "` must have a type built from level-0 "
                                 "families only");
      } else if (item.section == Section::Rules) {
        entry.level = Level::One;
        entry.decl = reconstruct_implicits(sig, *decl);
        Checker(sig, {}).check_tp(entry.decl.type());
        if (sig.level_of(target_family(entry.decl.type())) != Level::One)
          fail(codes::Level, "rule `" + decl->name +
                                 "` must conclude a judgment (a level-1 family)");
      } else {
        fail(codes::Level, "constant `" + decl->name +
                               "` must be declared in the Syntax or Rules "
                               "section");
      }
    } catch (const OrbiError& e) {
      Diagnostic d = e.diagnostic();
      if (d.loc.file.empty() && d.loc.line == 0) d.loc = item.loc;
      if (d.message.find(decl->name) == std::string::npos)
        d.message = "in `" + decl->name + "`: " + d.message;
      diags.add(std::move(d));
      entry.ok = false;
      if (sig.find(decl->name)) continue;
    }
    sig.add(std::move(entry));
  }
  return sig;
}

}  // namespace orbi
