#include "orbi/translate.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace orbi {

GoalRef mk_goal_atom(std::string pred, std::vector<TermRef> args, bool wf) {
  return std::make_shared<Goal>(Goal::Node(Goal::Atom{std::move(pred),
                                                      std::move(args), wf}));
}
GoalRef mk_goal_pi(std::string var, GoalRef body) {
  return std::make_shared<Goal>(Goal::Node(Goal::Pi{std::move(var),
                                                    std::move(body)}));
}
GoalRef mk_goal_imp(GoalRef hyp, GoalRef body) {
  return std::make_shared<Goal>(Goal::Node(Goal::Imp{std::move(hyp),
                                                     std::move(body)}));
}

namespace {

enum class Dialect { Ab, Hy };

std::string tick(const std::string& s) { return "`" + s + "`"; }

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

/// `base`, else `base1`, `base2`, ...
std::string fresh(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string s = base + std::to_string(i);
    if (!taken.count(s)) return s;
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

bool simple(const std::string& s) {
  return s.find(' ') == std::string::npos || (s.front() == '(' && s.back() == ')');
}
std::string wrap(const std::string& s) { return simple(s) ? s : "(" + s + ")"; }

// Terms ---------------------------------------------------------------------

class TermPrinter {
 public:
  explicit TermPrinter(Dialect d) : d_(d) {}

  // prec: 0 top, 1 function position, 2 argument position
  std::string term(const TermRef& t, int prec) {
    if (const auto* v = t->as<Term::Var>())
      return scope_[scope_.size() - 1 - static_cast<size_t>(v->index)];
    if (const auto* c = t->as<Term::Const>()) return c->name;
    if (const auto* l = t->as<Term::Lam>()) {
      std::vector<std::string> fv;
      free_names(l->body, fv);
      std::set<std::string> taken(fv.begin(), fv.end());
      taken.insert(scope_.begin(), scope_.end());
      std::string x = fresh(l->hint.empty() ? "x" : l->hint, taken);
      scope_.push_back(x);
      std::string body = term(l->body, 0);
      scope_.pop_back();
      std::string s = d_ == Dialect::Ab ? x + "\\ " + body : "fun " + x + " => " + body;
      return prec > 0 ? "(" + s + ")" : s;
    }
    const auto* a = t->as<Term::App>();
    std::string s = term(a->fn, 1) + " " + term(a->arg, 2);
    return prec > 1 ? "(" + s + ")" : s;
  }

 private:
  Dialect d_;
  std::vector<std::string> scope_;
};

std::string render_term(const TermRef& t, Dialect d, int prec) {
  return TermPrinter(d).term(t, prec);
}

std::string render_atom(const std::string& pred, const std::vector<TermRef>& args,
                        Dialect d) {
  std::string s = pred;
  for (const auto& a : args) s += " " + render_term(a, d, 2);
  return s;
}

// Goals ---------------------------------------------------------------------

std::string ab_goal(const GoalRef& g) {
  if (const auto* a = g->as<Goal::Atom>())
    return render_atom(a->pred, a->args, Dialect::Ab);
  if (const auto* p = g->as<Goal::Pi>()) return "pi " + p->var + "\\ " + ab_goal(p->body);
  const auto* i = g->as<Goal::Imp>();
  std::string hyp = ab_goal(i->hyp);
  if (!i->hyp->as<Goal::Atom>()) hyp = "(" + hyp + ")";
  return hyp + " => " + ab_goal(i->body);
}

// Hybrid's object logic: atom, T, Conj, Imp, All.
std::string hy_goal(const GoalRef& g) {
  if (const auto* a = g->as<Goal::Atom>())
    return "atom " + wrap(render_atom(a->pred, a->args, Dialect::Hy));
  if (const auto* p = g->as<Goal::Pi>())
    return "All (fun " + p->var + " => " + hy_goal(p->body) + ")";
  const auto* i = g->as<Goal::Imp>();
  std::string hyp;
  if (const auto* a = i->hyp->as<Goal::Atom>())
    hyp = wrap(render_atom(a->pred, a->args, Dialect::Hy));
  else
    hyp = "(" + hy_goal(i->hyp) + ")";
  return "Imp " + hyp + " " + wrap(hy_goal(i->body));
}

std::string hy_conj(const std::vector<GoalRef>& goals, size_t from = 0) {
  if (from == goals.size()) return "T";
  if (from + 1 == goals.size()) return hy_goal(goals[from]);
  return "Conj " + wrap(hy_goal(goals[from])) + " " + wrap(hy_conj(goals, from + 1));
}

bool goal_mentions(const GoalRef& g, const std::string& name) {
  if (const auto* a = g->as<Goal::Atom>())
    return std::any_of(a->args.begin(), a->args.end(),
                       [&](const TermRef& t) { return mentions_free(t, name); });
  if (const auto* p = g->as<Goal::Pi>())
    return p->var != name && goal_mentions(p->body, name);
  const auto* i = g->as<Goal::Imp>();
  return goal_mentions(i->hyp, name) || goal_mentions(i->body, name);
}

// Level-0 types as Hybrid object types.
std::string hy_type(const TpRef& a) {
  if (a->as<Tp::Atom>()) return "uexp";
  TpRef dom, cod;
  if (const auto* ar = a->as<Tp::Arrow>()) {
    dom = ar->dom;
    cod = ar->cod;
  } else {
    dom = a->as<Tp::Pi>()->dom;
    cod = a->as<Tp::Pi>()->cod;
  }
  std::string d = hy_type(dom);
  if (!dom->as<Tp::Atom>()) d = "(" + d + ")";
  return d + " -> " + hy_type(cod);
}

std::string hy_binders(const std::vector<std::pair<std::string, std::string>>& vars) {
  std::vector<std::string> groups;
  for (size_t i = 0; i < vars.size();) {
    std::string names = vars[i].first;
    size_t j = i + 1;
    while (j < vars.size() && vars[j].second == vars[i].second)
      names += " " + vars[j++].first;
    groups.push_back("(" + names + ":" + vars[i].second + ")");
    i = j;
  }
  return join(groups, " ");
}

// Clause construction --------------------------------------------------------

/// Splits a (level-0, hence non-dependent) Pi or arrow.
bool split_arrow(const TpRef& a, TpRef& dom, TpRef& cod, std::string& hint) {
  if (const auto* ar = a->as<Tp::Arrow>()) {
    dom = ar->dom;
    cod = ar->cod;
    hint = "x";
    return true;
  }
  if (const auto* pi = a->as<Tp::Pi>()) {
    dom = pi->dom;
    cod = shift(pi->cod, -1, 0);
    hint = pi->hint;
    return true;
  }
  return false;
}

class GoalBuilder {
 public:
  GoalBuilder(const Signature& sig, const std::set<std::string>& wf,
              std::set<std::string> taken)
      : sig_(sig), wf_(wf), taken_(std::move(taken)) {}

  void reserve(const std::string& name) { taken_.insert(name); }

  /// WF(A, t): the wf formula for `t : A`, or nothing when no family in A's
  /// result position has a predicate.
  GoalRef wf_goal(const TpRef& a, const TermRef& t) {
    if (const auto* at = a->as<Tp::Atom>()) {
      if (!wf_.count(at->family)) return nullptr;
      return mk_goal_atom("is_" + at->family, {t}, true);
    }
    TpRef dom, cod;
    std::string hint;
    split_arrow(a, dom, cod, hint);
    std::string x = pick_wf_var();
    taken_.insert(x);
    GoalRef hyp = wf_goal(dom, mk_const(x));
    GoalRef body = wf_goal(cod, eta_contract(mk_app(t, mk_const(x))));
    taken_.erase(x);
    if (!body) return nullptr;
    return mk_goal_pi(x, hyp ? mk_goal_imp(hyp, body) : body);
  }

  /// A premise of a rule (or a block entry of level 1).
  GoalRef premise(const TpRef& a, bool explicit_wf) {
    if (const auto* at = a->as<Tp::Atom>()) {
      std::vector<TermRef> args;
      for (const auto& t : at->args) args.push_back(eta_contract(normalize(t)));
      return mk_goal_atom(at->family, std::move(args));
    }
    if (const auto* pi = a->as<Tp::Pi>()) {
      if (is_level0_type(sig_, pi->dom)) return bind(pi->hint, pi->dom, pi->cod, true, explicit_wf);
      if (occurs_bound(pi->cod, 0))
        fail(codes::Shape,
             "premise quantifies over " + tick(pretty(pi->dom)) +
                 ", which is not a level-0 type",
             {}, "quantify only over syntax-level types");
      return mk_goal_imp(premise(pi->dom, explicit_wf),
                         premise(shift(pi->cod, -1, 0), explicit_wf));
    }
    const auto* ar = a->as<Tp::Arrow>();
    if (is_level0_type(sig_, ar->dom)) return bind("x", ar->dom, ar->cod, false, explicit_wf);
    return mk_goal_imp(premise(ar->dom, explicit_wf), premise(ar->cod, explicit_wf));
  }

 private:
  GoalRef bind(const std::string& hint, const TpRef& dom, const TpRef& cod,
               bool dependent, bool explicit_wf) {
    std::string x = fresh(hint.empty() ? "x" : hint, taken_);
    taken_.insert(x);
    TpRef body_tp = dependent ? subst(cod, mk_const(x)) : cod;
    GoalRef body = premise(body_tp, explicit_wf);
    GoalRef hyp = explicit_wf ? wf_goal(dom, mk_const(x)) : nullptr;
    taken_.erase(x);
    GoalRef g = hyp ? mk_goal_imp(hyp, body) : body;
    // A binder nobody mentions is dropped; `pi x\ G` and G agree.
    return goal_mentions(g, x) ? mk_goal_pi(x, g) : g;
  }

  std::string pick_wf_var() const {
    for (const char* c : {"x", "y", "z", "w"})
      if (!taken_.count(c)) return c;
    return fresh("x", taken_);
  }

  const Signature& sig_;
  const std::set<std::string>& wf_;
  std::set<std::string> taken_;
};

std::set<std::string> signature_names(const Signature& sig) {
  std::set<std::string> out;
  for (const auto& e : sig.entries()) out.insert(e.decl.name);
  return out;
}

}  // namespace

std::vector<Clause> gen_wf_predicates(const Signature& sig,
                                      const std::set<std::string>& wf) {
  std::vector<Clause> out;
  for (const auto& fam : sig.entries()) {
    if (!fam.decl.is_family() || !wf.count(fam.decl.name)) continue;
    if (fam.level != Level::Zero)
      fail(codes::Level, "cannot generate a wf predicate for " +
                             tick(fam.decl.name) + ", which is not level 0",
           fam.loc);
  }
  for (const std::string& f : wf)
    if (sig.level_of(f) != Level::Zero)
      fail(codes::Level, "cannot generate a wf predicate for " + tick(f) +
                             ", which is not a level-0 family");

  std::set<std::string> sig_names = signature_names(sig);
  for (const auto& fam : sig.entries()) {
    if (!fam.decl.is_family() || !wf.count(fam.decl.name)) continue;
    for (const SigEntry* c : sig.constructors_of(fam.decl.name)) {
      Clause clause;
      clause.name = "is_" + fam.decl.name + "_" + c->decl.name;
      std::set<std::string> taken = sig_names;
      GoalBuilder gb(sig, wf, taken);
      std::vector<std::string> pool = {"M", "N", "L", "P", "Q", "R", "S", "U", "V", "W"};
      size_t next = 0;
      auto name = [&]() {
        while (next < pool.size() && taken.count(pool[next])) ++next;
        std::string n = next < pool.size() ? pool[next++] : fresh("M", taken);
        taken.insert(n);
        gb.reserve(n);
        return n;
      };

      TermRef head = mk_const(c->decl.name);
      TpRef a = c->decl.type();
      TpRef dom, cod;
      std::string hint;
      while (split_arrow(a, dom, cod, hint)) {
        std::string v = name();
        clause.vars.emplace_back(v, dom);
        head = mk_app(head, mk_const(v));
        a = cod;
      }
      for (const auto& [v, t] : clause.vars)
        if (GoalRef g = gb.wf_goal(t, mk_const(v))) clause.body.push_back(g);
      clause.head = Goal::Atom{"is_" + fam.decl.name, {head}, true};
      out.push_back(std::move(clause));
    }
  }
  return out;
}

Clause translate_rule(const Signature& sig, const Decl& rule,
                      const AnnotationTable& ann) {
  bool explicit_wf = ann.rule_explicit(rule.name);
  std::set<std::string> taken = signature_names(sig);
  Clause clause;
  clause.name = rule.name;
  std::vector<GoalRef> premises;
  TpRef a = rule.type();

  auto add_var = [&](const std::string& hint, const TpRef& type) {
    std::string v = fresh(capitalize(hint.empty() ? "X" : hint), taken);
    taken.insert(v);
    clause.vars.emplace_back(v, type);
    return v;
  };
  // Premises are built once every clause variable has its name.
  std::vector<TpRef> pending;

  while (true) {
    if (const auto* pi = a->as<Tp::Pi>()) {
      if (is_level0_type(sig, pi->dom)) {
        std::string v = add_var(pi->hint, pi->dom);
        a = subst(pi->cod, mk_const(v));
        continue;
      }
      if (occurs_bound(pi->cod, 0))
        fail(codes::Shape, "rule " + tick(rule.name) + " depends on a " +
                               "premise of type " + tick(pretty(pi->dom)));
      pending.push_back(pi->dom);
      a = shift(pi->cod, -1, 0);
      continue;
    }
    if (const auto* ar = a->as<Tp::Arrow>()) {
      if (is_level0_type(sig, ar->dom))
        add_var("X", ar->dom);
      else
        pending.push_back(ar->dom);
      a = ar->cod;
      continue;
    }
    break;
  }

  GoalBuilder builder(sig, ann.wf_families, taken);
  for (const auto& t : pending) premises.push_back(builder.premise(t, explicit_wf));

  const auto* head = a->as<Tp::Atom>();
  std::vector<TermRef> args;
  for (const auto& t : head->args) args.push_back(eta_contract(normalize(t)));
  clause.head = Goal::Atom{head->family, std::move(args), false};

  if (explicit_wf)
    for (const auto& [v, t] : clause.vars)
      if (const auto* at = t->as<Tp::Atom>(); at && ann.wf_families.count(at->family))
        clause.body.push_back(mk_goal_atom("is_" + at->family, {mk_const(v)}, true));
  for (auto& p : premises) clause.body.push_back(std::move(p));
  return clause;
}

std::string render_ab(const GoalRef& g) { return ab_goal(g); }

std::string render_ab(const Clause& c) {
  std::string s = render_atom(c.head.pred, c.head.args, Dialect::Ab);
  if (!c.body.empty()) {
    std::vector<std::string> goals;
    for (size_t i = 0; i < c.body.size(); ++i) {
      std::string g = ab_goal(c.body[i]);
      bool last = i + 1 == c.body.size();
      goals.push_back(c.body[i]->as<Goal::Atom>() || last ? g : "(" + g + ")");
    }
    s += " :- " + join(goals, ", ");
  }
  return s + ".";
}

std::string render_hy(const Clause& c) {
  std::string s = "| " + c.name + " : ";
  if (!c.vars.empty()) {
    std::vector<std::pair<std::string, std::string>> vars;
    for (const auto& [v, t] : c.vars) vars.emplace_back(v, hy_type(t));
    s += "forall " + hy_binders(vars) + ",\n    ";
  }
  return s + "prog " + wrap(render_atom(c.head.pred, c.head.args, Dialect::Hy)) +
         " " + wrap(hy_conj(c.body));
}

std::string TargetDoc::render() const {
  std::string out;
  for (size_t i = 0; i < blocks.size(); ++i)
    out += (i ? "\n\n" : "") + blocks[i].text;
  return out.empty() ? out : out + "\n";
}

// Contexts as lists ----------------------------------------------------------

namespace {

struct BlockRendering {
  std::vector<std::string> atoms;
  std::vector<std::pair<std::string, TpRef>> fresh_vars;  // level-0 labels
};

BlockRendering render_block(const Signature& sig, const Block& b,
                            const std::set<std::string>& wf, bool explicit_wf,
                            Dialect d) {
  BlockRendering out;
  std::set<std::string> taken = signature_names(sig);
  for (const auto& e : b.entries) taken.insert(e.label);
  GoalBuilder gb(sig, wf, taken);
  for (const auto& e : b.entries) {
    GoalRef g;
    if (is_level0_type(sig, e.type)) {
      out.fresh_vars.emplace_back(e.label, e.type);
      if (explicit_wf) g = gb.wf_goal(e.type, mk_const(e.label));
    } else {
      g = gb.premise(e.type, explicit_wf);
    }
    if (!g) continue;
    if (const auto* a = g->as<Goal::Atom>())
      out.atoms.push_back(render_atom(a->pred, a->args, d));
    else
      out.atoms.push_back("(" + (d == Dialect::Ab ? ab_goal(g) : hy_goal(g)) + ")");
  }
  return out;
}

[[noreturn]] void empty_block(const Block& b, const std::string& where,
                              const std::string& dest) {
  fail(codes::EmptyRendering,
       "block " + tick(pretty(b)) + " in " + where +
           " has no atoms once typing information is left implicit",
       {}, "mark it explicit: `%% explicit [ab,hy] in " + dest + "`");
}

std::string list_var(const std::set<std::string>& ids, const std::string& base) {
  if (base == "As") {
    for (char c = 'A'; c <= 'Z'; ++c) {
      std::string s = std::string(1, c) + "s";
      if (!ids.count(s)) return s;
    }
  }
  return fresh(base, ids);
}

std::string hy_stem(const std::string& schema) {
  if (schema.size() > 1 && schema.back() == 'G') return schema.substr(0, schema.size() - 1);
  return schema;
}

// A context pattern as a list: newest block first, entries in order.
struct CtxList {
  std::vector<std::string> atoms;
  std::optional<std::string> tail;  // rendered head variable
  std::string render() const {
    std::string t = tail ? *tail : "nil";
    if (atoms.empty()) return t;
    return "(" + join(atoms, " :: ") + " :: " + t + ")";
  }
};

}  // namespace

DocBlock translate_schema(const CheckedSpec& cs, const Schema& s,
                          const AnnotationTable& ann) {
  bool explicit_wf = ann.schema_explicit(s.name);
  Dialect d = ann.target == System::Hy ? Dialect::Hy : Dialect::Ab;
  std::vector<BlockRendering> alts;
  for (const auto& b : s.alternatives) {
    alts.push_back(render_block(cs.sig, b, ann.wf_families, explicit_wf, d));
    if (alts.back().atoms.empty()) empty_block(b, "schema " + tick(s.name), s.name);
  }

  std::ostringstream out;
  if (d == Dialect::Ab) {
    std::string as = list_var(cs.identifiers, "As");
    out << "Define " << s.name << " : olist -> prop by\n";
    out << "  " << s.name << " nil" << (alts.empty() ? "." : ";");
    for (size_t i = 0; i < alts.size(); ++i) {
      out << "\n  ";
      if (!alts[i].fresh_vars.empty()) {
        std::vector<std::string> names;
        for (const auto& [v, t] : alts[i].fresh_vars) names.push_back(v);
        out << "nabla " << join(names, " ") << ", ";
      }
      out << s.name << " (" << join(alts[i].atoms, " :: ") << " :: " << as
          << ") := " << s.name << " " << as << (i + 1 == alts.size() ? "." : ";");
    }
  } else {
    std::string gamma = fresh("Gamma", cs.identifiers);
    std::string stem = hy_stem(s.name);
    out << "Inductive " << s.name << " : list atm -> Prop :=\n";
    out << "| nil_" << stem << " : " << s.name << " nil";
    for (size_t i = 0; i < alts.size(); ++i) {
      std::string ctor = "cns_" + stem + (alts.size() > 1 ? std::to_string(i + 1) : "");
      std::vector<std::pair<std::string, std::string>> binders = {{gamma, "list atm"}};
      std::string guards;
      for (const auto& [v, t] : alts[i].fresh_vars) {
        binders.emplace_back(v, hy_type(t));
        if (t->as<Tp::Atom>()) guards += "proper " + v + " -> ";
      }
      out << "\n| " << ctor << " : forall " << hy_binders(binders) << ",\n    "
          << guards << s.name << " " << gamma << " -> " << s.name << " ("
          << join(alts[i].atoms, " :: ") << " :: " << gamma << ")";
    }
    out << ".";
  }
  return {s.name, out.str()};
}

DocBlock translate_relation(const CheckedSpec& cs, const InductiveDef& def,
                            const AnnotationTable& ann) {
  Dialect d = ann.target == System::Hy ? Dialect::Hy : Dialect::Ab;
  std::ostringstream out;
  std::string list_type = d == Dialect::Ab ? "olist" : "list atm";
  out << (d == Dialect::Ab ? "Define " : "Inductive ") << def.name << " : ";
  for (size_t i = 0; i < def.params.size(); ++i) out << list_type << " -> ";
  out << (d == Dialect::Ab ? "prop by" : "Prop :=");

  for (size_t ci = 0; ci < def.clauses.size(); ++ci) {
    const DefClause& clause = def.clauses[ci];
    std::vector<PrpRef> premises;
    PrpRef cur = clause.body;
    while (const auto* imp = cur->as<Prp::Imp>()) {
      premises.push_back(imp->lhs);
      cur = imp->rhs;
    }
    const auto* head = cur->as<Prp::RelApp>();

    // Context variable names, in order of first appearance.
    std::vector<std::string> ctx_order;
    std::map<std::string, std::string> ctx_name;
    std::set<std::string> taken = signature_names(cs.sig);
    auto note_ctx = [&](const CtxPattern& c) {
      if (!c.head || ctx_name.count(*c.head)) return;
      std::string n = fresh(capitalize(*c.head), taken);
      taken.insert(n);
      ctx_name[*c.head] = n;
      ctx_order.push_back(*c.head);
    };
    for (const auto& c : head->ctxs) note_ctx(c);
    for (const auto& p : premises)
      for (const auto& c : p->as<Prp::RelApp>()->ctxs) note_ctx(c);

    std::vector<std::pair<std::string, TpRef>> fresh_vars;
    std::vector<std::string> args;
    for (size_t i = 0; i < head->ctxs.size(); ++i) {
      const CtxPattern& c = head->ctxs[i];
      bool explicit_wf = ann.param_explicit(def.name, def.params[i].first);
      CtxList list;
      if (c.head) list.tail = ctx_name[*c.head];
      for (auto it = c.entries.rbegin(); it != c.entries.rend(); ++it) {
        BlockRendering r = render_block(cs.sig, it->block, ann.wf_families, explicit_wf, d);
        if (r.atoms.empty())
          empty_block(it->block, "clause " + tick(clause.name),
                      def.name + "." + def.params[i].first);
        list.atoms.insert(list.atoms.end(), r.atoms.begin(), r.atoms.end());
      }
      for (const auto& e : c.entries)
        for (const auto& be : e.block.entries)
          if (is_level0_type(cs.sig, be.type) &&
              std::none_of(fresh_vars.begin(), fresh_vars.end(),
                           [&](const auto& fv) { return fv.first == be.label; }))
            fresh_vars.emplace_back(be.label, be.type);
      args.push_back(list.render());
    }
    std::string head_s = def.name;
    for (const auto& a : args) head_s += " " + a;

    std::vector<std::string> prem_s;
    for (const auto& p : premises) {
      const auto* r = p->as<Prp::RelApp>();
      std::string s = r->name;
      for (const auto& c : r->ctxs) s += " " + (c.head ? ctx_name[*c.head] : std::string("nil"));
      prem_s.push_back(s);
    }

    bool last = ci + 1 == def.clauses.size();
    if (d == Dialect::Ab) {
      out << "\n  ";
      if (!fresh_vars.empty()) {
        std::vector<std::string> names;
        for (const auto& [v, t] : fresh_vars) names.push_back(v);
        out << "nabla " << join(names, " ") << ", ";
      }
      out << head_s;
      if (!prem_s.empty()) out << " := " << join(prem_s, " /\\ ");
      out << (last ? "." : ";");
    } else {
      out << "\n| " << clause.name << " : ";
      std::vector<std::pair<std::string, std::string>> binders;
      for (const auto& c : ctx_order) binders.emplace_back(ctx_name[c], "list atm");
      std::string guards;
      for (const auto& [v, t] : fresh_vars) {
        binders.emplace_back(v, hy_type(t));
        if (t->as<Tp::Atom>()) guards += "proper " + v + " -> ";
      }
      if (!binders.empty()) out << "forall " << hy_binders(binders) << ",\n    ";
      out << guards;
      for (const auto& p : prem_s) out << p << " -> ";
      out << head_s << (last ? "." : "");
    }
  }
  if (def.clauses.empty()) out << ".";
  return {def.name, out.str()};
}

// Theorems -------------------------------------------------------------------

namespace {

constexpr int kQuant = 0, kImp = 1, kOr = 2, kAnd = 3, kAtom = 4;

void judgment_contexts(const PrpRef& p, const std::string& var,
                       std::vector<std::string>& out) {
  if (const auto* j = p->as<Prp::Judgment>()) {
    bool uses = std::any_of(j->args.begin(), j->args.end(),
                            [&](const TermRef& t) { return mentions_free(t, var); });
    if (uses && j->ctx.head &&
        std::find(out.begin(), out.end(), *j->ctx.head) == out.end())
      out.push_back(*j->ctx.head);
    return;
  }
  auto rec = [&](const PrpRef& q) { judgment_contexts(q, var, out); };
  if (const auto* a = p->as<Prp::And>()) { rec(a->lhs); rec(a->rhs); }
  else if (const auto* o = p->as<Prp::Or>()) { rec(o->lhs); rec(o->rhs); }
  else if (const auto* i = p->as<Prp::Imp>()) { rec(i->lhs); rec(i->rhs); }
  else if (const auto* f = p->as<Prp::ForallCtx>()) { if (f->var != var) rec(f->body); }
  else if (const auto* t = p->as<Prp::ForallTm>()) { if (t->var != var) rec(t->body); }
  else if (const auto* x = p->as<Prp::ExistsTm>()) { if (x->var != var) rec(x->body); }
}

class TheoremTranslator {
 public:
  TheoremTranslator(const CheckedSpec& cs, const Theorem& t,
                    const AnnotationTable& ann, Diagnostics& diags,
                    SourceLoc loc)
      : cs_(cs), thm_(t), ann_(ann), diags_(diags), loc_(std::move(loc)) {
    collect_vars(t.statement);
  }

  std::string ab(const PrpRef& p, int prec) {
    auto paren = [&](int own, const std::string& s) {
      return prec > own ? "(" + s + ")" : s;
    };
    if (p->as<Prp::ForallCtx>() || p->as<Prp::ForallTm>() || p->as<Prp::ExistsTm>()) {
      bool exists = p->as<Prp::ExistsTm>() != nullptr;
      std::vector<std::string> names, ants;
      PrpRef cur = p;
      size_t pushed = 0;
      while (true) {
        if (const auto* f = exists ? nullptr : cur->as<Prp::ForallCtx>()) {
          std::string n = ctx_display(f->var);
          scope_.push_back(f->var);
          ++pushed;
          names.push_back(n);
          ants.push_back(f->schema + " " + n);
          cur = f->body;
        } else if (const auto* t = exists ? nullptr : cur->as<Prp::ForallTm>()) {
          names.push_back(t->var);
          if (auto a = wf_antecedent(t->var, t->type, t->body)) ants.push_back(*a);
          cur = t->body;
        } else if (const auto* x = exists ? cur->as<Prp::ExistsTm>() : nullptr) {
          names.push_back(x->var);
          if (auto a = wf_antecedent(x->var, x->type, x->body)) ants.push_back(*a);
          cur = x->body;
        } else {
          break;
        }
      }
      std::string body = ab(cur, ants.empty() ? kQuant : (exists ? kAnd : kImp));
      scope_.resize(scope_.size() - pushed);
      ants.push_back(body);
      std::string s = (exists ? "exists " : "forall ") + join(names, " ") + ", " +
                      join(ants, exists ? " /\\ " : " -> ");
      return paren(kQuant, s);
    }
    if (const auto* i = p->as<Prp::Imp>())
      return paren(kImp, ab(i->lhs, kOr) + " -> " + ab(i->rhs, kImp));
    if (const auto* o = p->as<Prp::Or>())
      return paren(kOr, ab(o->lhs, kAnd) + " \\/ " + ab(o->rhs, kOr));
    if (const auto* a = p->as<Prp::And>())
      return paren(kAnd, ab(a->lhs, kAtom) + " /\\ " + ab(a->rhs, kAnd));
    if (p->as<Prp::True>()) return "true";
    if (p->as<Prp::False>()) return "false";
    if (const auto* e = p->as<Prp::TermEq>())
      return render_term(e->lhs, Dialect::Ab, 2) + " = " + render_term(e->rhs, Dialect::Ab, 2);
    if (const auto* r = p->as<Prp::RelApp>()) {
      std::string s = r->name;
      for (const auto& c : r->ctxs) s += " " + ctx_list(c);
      return s;
    }
    const auto* j = p->as<Prp::Judgment>();
    std::vector<std::string> hyps;
    if (j->ctx.head) hyps.push_back(ctx_display(*j->ctx.head));
    for (const auto& e : j->ctx.entries) {
      BlockRendering r = render_block(cs_.sig, e.block, ann_.wf_families, false, Dialect::Ab);
      hyps.insert(hyps.end(), r.atoms.begin(), r.atoms.end());
    }
    std::string goal = render_atom(j->family, j->args, Dialect::Ab);
    return "{" + (hyps.empty() ? goal : join(hyps, ", ") + " |- " + goal) + "}";
  }

  std::string bel(const PrpRef& p, int prec) {
    auto paren = [&](int own, const std::string& s) {
      return prec > own ? "(" + s + ")" : s;
    };
    if (const auto* f = p->as<Prp::ForallCtx>()) {
      scope_.push_back(f->var);
      std::string body = bel(f->body, kQuant);
      scope_.pop_back();
      return paren(kQuant, "{" + f->var + ":" + f->schema + "} " + body);
    }
    if (const auto* t = p->as<Prp::ForallTm>())
      return paren(kQuant, "{" + t->var + ":" + bel_type(t->var, t->type, t->body) +
                               "} " + bel(t->body, kQuant));
    if (const auto* x = p->as<Prp::ExistsTm>())
      return paren(kQuant, "<" + x->var + ":" + bel_type(x->var, x->type, x->body) +
                               "> " + bel(x->body, kQuant));
    if (const auto* i = p->as<Prp::Imp>())
      return paren(kImp, bel(i->lhs, kOr) + " -> " + bel(i->rhs, kImp));
    if (const auto* o = p->as<Prp::Or>())
      return paren(kOr, bel(o->lhs, kAnd) + " || " + bel(o->rhs, kOr));
    if (const auto* a = p->as<Prp::And>())
      return paren(kAnd, bel(a->lhs, kAtom) + " & " + bel(a->rhs, kAnd));
    if (p->as<Prp::TermEq>()) return paren(kAnd, pretty(p));
    return pretty(p);
  }

 private:
  void collect_vars(const PrpRef& p) {
    if (const auto* f = p->as<Prp::ForallCtx>()) { taken_.insert(f->var); collect_vars(f->body); }
    else if (const auto* t = p->as<Prp::ForallTm>()) { taken_.insert(t->var); collect_vars(t->body); }
    else if (const auto* x = p->as<Prp::ExistsTm>()) { taken_.insert(x->var); collect_vars(x->body); }
    else if (const auto* a = p->as<Prp::And>()) { collect_vars(a->lhs); collect_vars(a->rhs); }
    else if (const auto* o = p->as<Prp::Or>()) { collect_vars(o->lhs); collect_vars(o->rhs); }
    else if (const auto* i = p->as<Prp::Imp>()) { collect_vars(i->lhs); collect_vars(i->rhs); }
  }

  std::string ctx_display(const std::string& var) {
    auto it = display_.find(var);
    if (it != display_.end()) return it->second;
    std::string n = capitalize(var);
    if (n != var && taken_.count(n)) n = fresh(n, taken_);
    taken_.insert(n);
    return display_[var] = n;
  }

  std::string ctx_list(const CtxPattern& c) {
    CtxList list;
    if (c.head) list.tail = ctx_display(*c.head);
    for (auto it = c.entries.rbegin(); it != c.entries.rend(); ++it) {
      BlockRendering r = render_block(cs_.sig, it->block, ann_.wf_families, false, Dialect::Ab);
      list.atoms.insert(list.atoms.end(), r.atoms.begin(), r.atoms.end());
    }
    return list.render();
  }

  // The context an explicit variable's typing assumption lives in.
  std::optional<std::string> context_for(const std::string& var, const PrpRef& body) {
    if (!ann_.theorem_var_explicit(thm_.name, var)) return std::nullopt;
    if (scope_.empty())
      fail(codes::NoCtxInScope,
           "explicit variable " + tick(var) + " of theorem " + tick(thm_.name) +
               " has no context quantifier in scope",
           loc_, "bind a context with `{g:schema}` before " + tick(var));
    std::vector<std::string> used;
    judgment_contexts(body, var, used);
    std::vector<std::string> in_scope;
    for (const auto& u : used)
      if (std::find(scope_.begin(), scope_.end(), u) != scope_.end()) in_scope.push_back(u);
    if (in_scope.size() == 1) return in_scope.front();
    if (scope_.size() > 1)
      diags_.warning(codes::CtxChoice,
                     "variable " + tick(var) + " of theorem " + tick(thm_.name) +
                         " is not used under a unique context; assuming " +
                         tick(scope_.front()),
                     loc_);
    return scope_.front();
  }

  std::optional<std::string> wf_antecedent(const std::string& var, const TpRef& type,
                                           const PrpRef& body) {
    auto ctx = context_for(var, body);
    if (!ctx) return std::nullopt;
    const auto* at = type->as<Tp::Atom>();
    return "{" + ctx_display(*ctx) + " |- is_" + at->family + " " + var + "}";
  }

  std::string bel_type(const std::string& var, const TpRef& type, const PrpRef& body) {
    auto ctx = context_for(var, body);
    if (!ctx) return pretty(type);
    return "[" + *ctx + " |- " + pretty(type) + "]";
  }

  const CheckedSpec& cs_;
  const Theorem& thm_;
  const AnnotationTable& ann_;
  Diagnostics& diags_;
  SourceLoc loc_;
  std::vector<std::string> scope_;  // context variables, outermost first
  std::set<std::string> taken_;
  std::map<std::string, std::string> display_;
};

std::string comment_out(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += (out.empty() ? "" : "\n") + ("% " + line);
  return out;
}

const Item* item_named(const OrbiSpec& spec, const std::string& name) {
  for (const auto& it : spec.items) {
    if (const auto* t = it.as<Theorem>(); t && t->name == name) return &it;
  }
  return nullptr;
}

}  // namespace

DocBlock translate_theorem(const CheckedSpec& cs, const Theorem& t,
                           const AnnotationTable& ann, Diagnostics& diags,
                           const SourceLoc& loc) {
  switch (ann.target) {
    case System::Ab:
    case System::Hy: {
      TheoremTranslator tr(cs, t, ann, diags, loc);
      return {t.name, "Theorem " + t.name + " :\n" + tr.ab(t.statement, kQuant) + "."};
    }
    case System::Bel: {
      TheoremTranslator tr(cs, t, ann, diags, loc);
      return {t.name, "% theorem " + t.name + "\n" + tr.bel(t.statement, kQuant) + "."};
    }
    case System::Tw: {
      const Item* it = item_named(cs.spec, t.name);
      return {t.name, comment_out(it ? it->source_text : pretty(t))};
    }
  }
  return {t.name, ""};
}

TargetDoc translate_spec(const CheckedSpec& cs, System target, Diagnostics& diags) {
  TargetDoc doc;
  doc.target = target;
  AnnotationTable ann = resolve(cs, target, diags);

  auto guarded = [&](const SourceLoc& loc, auto&& fn) {
    try {
      fn();
    } catch (const OrbiError& e) {
      Diagnostic d = e.diagnostic();
      if (d.loc.line == 0) d.loc = loc;
      diags.add(std::move(d));
    }
  };
  auto verbatim = [&](auto pred, const std::string& tag, bool comment) {
    std::vector<std::string> texts;
    for (const auto& it : cs.spec.items)
      if (pred(it)) texts.push_back(it.source_text);
    if (texts.empty()) return;
    std::string text = join(texts, "\n");
    doc.blocks.push_back({tag, comment ? comment_out(text) : text});
  };

  if (target == System::Ab || target == System::Hy) {
    std::vector<Clause> wf, rules;
    guarded({}, [&] { wf = gen_wf_predicates(cs.sig, ann.wf_families); });
    for (const SigEntry* r : cs.sig.rules()) {
      if (!r->ok) continue;
      guarded(r->loc, [&] { rules.push_back(translate_rule(cs.sig, r->decl, ann)); });
    }
    if (target == System::Ab) {
      auto block = [&](const std::vector<Clause>& cl, const std::string& tag) {
        if (cl.empty()) return;
        std::vector<std::string> lines;
        for (const auto& c : cl) lines.push_back(render_ab(c));
        doc.blocks.push_back({tag, join(lines, "\n")});
      };
      block(wf, "wf");
      block(rules, "rules");
    } else if (!wf.empty() || !rules.empty()) {
      std::vector<std::string> lines;
      for (const auto& c : wf) lines.push_back(render_hy(c));
      for (const auto& c : rules) lines.push_back(render_hy(c));
      doc.blocks.push_back(
          {"prog", "Inductive prog : atm -> oo -> Prop :=\n" + join(lines, "\n") + "."});
    }
    for (const auto& it : cs.spec.items) {
      if (const auto* s = it.as<Schema>(); s && cs.schemas.count(s->name))
        guarded(it.loc, [&] { doc.blocks.push_back(translate_schema(cs, *s, ann)); });
    }
    for (const auto& it : cs.spec.items) {
      if (const auto* d = it.as<InductiveDef>(); d && cs.relations.count(d->name))
        guarded(it.loc, [&] { doc.blocks.push_back(translate_relation(cs, *d, ann)); });
    }
  } else {
    bool tw = target == System::Tw;
    for (Section s : {Section::Syntax, Section::Judgments, Section::Rules})
      verbatim([&](const Item& it) { return it.section == s && it.as<Decl>(); },
               section_name(s), false);
    verbatim([](const Item& it) { return it.as<Schema>() != nullptr; }, "Schemas", tw);
    for (const auto& it : cs.spec.items)
      if (it.as<InductiveDef>())
        doc.blocks.push_back({it.as<InductiveDef>()->name,
                              tw ? comment_out(it.source_text) : it.source_text});
  }

  for (const auto& t : cs.theorems) {
    const Item* it = item_named(cs.spec, t.name);
    SourceLoc loc = it ? it->loc : SourceLoc{};
    guarded(loc, [&] { doc.blocks.push_back(translate_theorem(cs, t, ann, diags, loc)); });
  }
  return doc;
}

}  // namespace orbi
