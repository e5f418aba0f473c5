#include "orbi/syntax.hpp"

#include <algorithm>

namespace orbi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

TermRef mk_var(int index, std::string hint) {
  return std::make_shared<Term>(Term::Var{index, std::move(hint)});
}
TermRef mk_const(std::string name) {
  return std::make_shared<Term>(Term::Const{std::move(name)});
}
TermRef mk_lam(std::string hint, TermRef body) {
  return std::make_shared<Term>(Term::Lam{std::move(hint), std::move(body)});
}
TermRef mk_app(TermRef fn, TermRef arg) {
  return std::make_shared<Term>(Term::App{std::move(fn), std::move(arg)});
}
TermRef mk_apps(TermRef head, const std::vector<TermRef>& args) {
  for (const auto& a : args) head = mk_app(std::move(head), a);
  return head;
}
TpRef mk_atom(std::string family, std::vector<TermRef> args) {
  return std::make_shared<Tp>(Tp::Atom{std::move(family), std::move(args)});
}
TpRef mk_arrow(TpRef dom, TpRef cod) {
  return std::make_shared<Tp>(Tp::Arrow{std::move(dom), std::move(cod)});
}
TpRef mk_pi(std::string hint, TpRef dom, TpRef cod) {
  return std::make_shared<Tp>(
      Tp::Pi{std::move(hint), std::move(dom), std::move(cod)});
}
KindRef mk_type() { return std::make_shared<Kind>(Kind::Type{}); }
KindRef mk_karrow(TpRef dom, KindRef cod) {
  return std::make_shared<Kind>(Kind::Arrow{std::move(dom), std::move(cod)});
}
KindRef mk_kpi(std::string hint, TpRef dom, KindRef cod) {
  return std::make_shared<Kind>(
      Kind::Pi{std::move(hint), std::move(dom), std::move(cod)});
}

TermRef spine(const TermRef& t, std::vector<TermRef>& args) {
  args.clear();
  TermRef cur = t;
  while (const auto* app = cur->as<Term::App>()) {
    args.push_back(app->arg);
    cur = app->fn;
  }
  std::reverse(args.begin(), args.end());
  return cur;
}

// ---------------------------------------------------------------------------
// Generic traversal: `on_var(index, hint, depth)` rebuilds variables,
// `on_const(name, depth)` rebuilds free names. Everything else is structural.

namespace {

template <class VarFn, class ConstFn>
TermRef map_term(const TermRef& t, int depth, const VarFn& on_var,
                 const ConstFn& on_const) {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) { return on_var(v, depth, t); },
          [&](const Term::Const& c) { return on_const(c, depth, t); },
          [&](const Term::Lam& l) {
            auto body = map_term(l.body, depth + 1, on_var, on_const);
            return body == l.body ? t : mk_lam(l.hint, body);
          },
          [&](const Term::App& a) {
            auto fn = map_term(a.fn, depth, on_var, on_const);
            auto arg = map_term(a.arg, depth, on_var, on_const);
            return fn == a.fn && arg == a.arg ? t : mk_app(fn, arg);
          },
      },
      t->node);
}

template <class VarFn, class ConstFn>
TpRef map_tp(const TpRef& t, int depth, const VarFn& on_var,
             const ConstFn& on_const) {
  return std::visit(
      overloaded{
          [&](const Tp::Atom& a) {
            std::vector<TermRef> args;
            bool same = true;
            for (const auto& arg : a.args) {
              args.push_back(map_term(arg, depth, on_var, on_const));
              same = same && args.back() == arg;
            }
            return same ? t : mk_atom(a.family, std::move(args));
          },
          [&](const Tp::Arrow& a) {
            auto dom = map_tp(a.dom, depth, on_var, on_const);
            auto cod = map_tp(a.cod, depth, on_var, on_const);
            return dom == a.dom && cod == a.cod ? t : mk_arrow(dom, cod);
          },
          [&](const Tp::Pi& p) {
            auto dom = map_tp(p.dom, depth, on_var, on_const);
            auto cod = map_tp(p.cod, depth + 1, on_var, on_const);
            return dom == p.dom && cod == p.cod ? t : mk_pi(p.hint, dom, cod);
          },
      },
      t->node);
}

template <class VarFn, class ConstFn>
KindRef map_kind(const KindRef& k, int depth, const VarFn& on_var,
                 const ConstFn& on_const) {
  return std::visit(
      overloaded{
          [&](const Kind::Type&) { return k; },
          [&](const Kind::Arrow& a) {
            auto dom = map_tp(a.dom, depth, on_var, on_const);
            auto cod = map_kind(a.cod, depth, on_var, on_const);
            return dom == a.dom && cod == a.cod ? k : mk_karrow(dom, cod);
          },
          [&](const Kind::Pi& p) {
            auto dom = map_tp(p.dom, depth, on_var, on_const);
            auto cod = map_kind(p.cod, depth + 1, on_var, on_const);
            return dom == p.dom && cod == p.cod ? k
                                                : mk_kpi(p.hint, dom, cod);
          },
      },
      k->node);
}

const auto keep_const = [](const Term::Const&, int, const TermRef& self) {
  return self;
};

auto shifter(int by, int cutoff) {
  return [by, cutoff](const Term::Var& v, int depth, const TermRef& self) {
    return v.index >= depth + cutoff ? mk_var(v.index + by, v.hint) : self;
  };
}

auto substituter(const TermRef& rep) {
  return [rep](const Term::Var& v, int depth, const TermRef& self) {
    if (v.index == depth) return shift(rep, depth, 0);
    if (v.index > depth) return mk_var(v.index - 1, v.hint);
    return self;
  };
}

}  // namespace

TermRef shift(const TermRef& t, int by, int cutoff) {
  if (by == 0) return t;
  return map_term(t, 0, shifter(by, cutoff), keep_const);
}
TpRef shift(const TpRef& t, int by, int cutoff) {
  if (by == 0) return t;
  return map_tp(t, 0, shifter(by, cutoff), keep_const);
}
KindRef shift(const KindRef& k, int by, int cutoff) {
  if (by == 0) return k;
  return map_kind(k, 0, shifter(by, cutoff), keep_const);
}

TermRef subst(const TermRef& body, const TermRef& replacement) {
  return map_term(body, 0, substituter(replacement), keep_const);
}
TpRef subst(const TpRef& body, const TermRef& replacement) {
  return map_tp(body, 0, substituter(replacement), keep_const);
}
KindRef subst(const KindRef& body, const TermRef& replacement) {
  return map_kind(body, 0, substituter(replacement), keep_const);
}

namespace {
const auto keep_var = [](const Term::Var&, int, const TermRef& self) {
  return self;
};
auto replacer(const std::string& name, const TermRef& rep) {
  return [&name, rep](const Term::Const& c, int depth, const TermRef& self) {
    return c.name == name ? shift(rep, depth, 0) : self;
  };
}
auto abstractor_const(const std::string& name) {
  return [&name](const Term::Const& c, int depth, const TermRef& self) {
    return c.name == name ? mk_var(depth, name) : self;
  };
}
}  // namespace

TermRef replace_free(const TermRef& t, const std::string& name,
                     const TermRef& replacement) {
  return map_term(t, 0, keep_var, replacer(name, replacement));
}
TpRef replace_free(const TpRef& t, const std::string& name,
                   const TermRef& replacement) {
  return map_tp(t, 0, keep_var, replacer(name, replacement));
}

TermRef abstract(const TermRef& t, const std::string& name) {
  return map_term(t, 0, shifter(1, 0), abstractor_const(name));
}
TpRef abstract(const TpRef& t, const std::string& name) {
  return map_tp(t, 0, shifter(1, 0), abstractor_const(name));
}

// ---------------------------------------------------------------------------

bool occurs_bound(const TermRef& t, int index) {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) { return v.index == index; },
          [&](const Term::Const&) { return false; },
          [&](const Term::Lam& l) { return occurs_bound(l.body, index + 1); },
          [&](const Term::App& a) {
            return occurs_bound(a.fn, index) || occurs_bound(a.arg, index);
          },
      },
      t->node);
}

bool occurs_bound(const TpRef& t, int index) {
  return std::visit(
      overloaded{
          [&](const Tp::Atom& a) {
            return std::any_of(a.args.begin(), a.args.end(),
                               [&](const TermRef& arg) {
                                 return occurs_bound(arg, index);
                               });
          },
          [&](const Tp::Arrow& a) {
            return occurs_bound(a.dom, index) || occurs_bound(a.cod, index);
          },
          [&](const Tp::Pi& p) {
            return occurs_bound(p.dom, index) ||
                   occurs_bound(p.cod, index + 1);
          },
      },
      t->node);
}

bool occurs_bound(const KindRef& k, int index) {
  return std::visit(
      overloaded{
          [&](const Kind::Type&) { return false; },
          [&](const Kind::Arrow& a) {
            return occurs_bound(a.dom, index) || occurs_bound(a.cod, index);
          },
          [&](const Kind::Pi& p) {
            return occurs_bound(p.dom, index) ||
                   occurs_bound(p.cod, index + 1);
          },
      },
      k->node);
}

void free_names(const TermRef& t, std::vector<std::string>& out) {
  std::visit(overloaded{
                 [&](const Term::Var&) {},
                 [&](const Term::Const& c) {
                   if (std::find(out.begin(), out.end(), c.name) == out.end())
                     out.push_back(c.name);
                 },
                 [&](const Term::Lam& l) { free_names(l.body, out); },
                 [&](const Term::App& a) {
                   free_names(a.fn, out);
                   free_names(a.arg, out);
                 },
             },
             t->node);
}

void free_names(const TpRef& t, std::vector<std::string>& out) {
  std::visit(overloaded{
                 [&](const Tp::Atom& a) {
                   for (const auto& arg : a.args) free_names(arg, out);
                 },
                 [&](const Tp::Arrow& a) {
                   free_names(a.dom, out);
                   free_names(a.cod, out);
                 },
                 [&](const Tp::Pi& p) {
                   free_names(p.dom, out);
                   free_names(p.cod, out);
                 },
             },
             t->node);
}

bool mentions_free(const TermRef& t, const std::string& name) {
  std::vector<std::string> names;
  free_names(t, names);
  return std::find(names.begin(), names.end(), name) != names.end();
}
bool mentions_free(const TpRef& t, const std::string& name) {
  std::vector<std::string> names;
  free_names(t, names);
  return std::find(names.begin(), names.end(), name) != names.end();
}

// ---------------------------------------------------------------------------

bool alpha_equal(const TermRef& a, const TermRef& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Term::Var& v) { return v.index == b->as<Term::Var>()->index; },
          [&](const Term::Const& c) {
            return c.name == b->as<Term::Const>()->name;
          },
          [&](const Term::Lam& l) {
            return alpha_equal(l.body, b->as<Term::Lam>()->body);
          },
          [&](const Term::App& x) {
            const auto* y = b->as<Term::App>();
            return alpha_equal(x.fn, y->fn) && alpha_equal(x.arg, y->arg);
          },
      },
      a->node);
}

bool alpha_equal(const TpRef& a, const TpRef& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Tp::Atom& x) {
            const auto* y = b->as<Tp::Atom>();
            if (x.family != y->family || x.args.size() != y->args.size())
              return false;
            for (size_t i = 0; i < x.args.size(); ++i)
              if (!alpha_equal(x.args[i], y->args[i])) return false;
            return true;
          },
          [&](const Tp::Arrow& x) {
            const auto* y = b->as<Tp::Arrow>();
            return alpha_equal(x.dom, y->dom) && alpha_equal(x.cod, y->cod);
          },
          [&](const Tp::Pi& x) {
            const auto* y = b->as<Tp::Pi>();
            return alpha_equal(x.dom, y->dom) && alpha_equal(x.cod, y->cod);
          },
      },
      a->node);
}

bool alpha_equal(const KindRef& a, const KindRef& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Kind::Type&) { return true; },
          [&](const Kind::Arrow& x) {
            const auto* y = b->as<Kind::Arrow>();
            return alpha_equal(x.dom, y->dom) && alpha_equal(x.cod, y->cod);
          },
          [&](const Kind::Pi& x) {
            const auto* y = b->as<Kind::Pi>();
            return alpha_equal(x.dom, y->dom) && alpha_equal(x.cod, y->cod);
          },
      },
      a->node);
}

// ---------------------------------------------------------------------------

TermRef normalize(const TermRef& t) {
  return std::visit(
      overloaded{
          [&](const Term::Var&) { return t; },
          [&](const Term::Const&) { return t; },
          [&](const Term::Lam& l) {
            auto body = normalize(l.body);
            return body == l.body ? t : mk_lam(l.hint, body);
          },
          [&](const Term::App& a) -> TermRef {
            auto fn = normalize(a.fn);
            auto arg = normalize(a.arg);
            if (const auto* lam = fn->as<Term::Lam>())
              return normalize(subst(lam->body, arg));
            return fn == a.fn && arg == a.arg ? t : mk_app(fn, arg);
          },
      },
      t->node);
}

TpRef normalize(const TpRef& t) {
  return std::visit(
      overloaded{
          [&](const Tp::Atom& a) {
            std::vector<TermRef> args;
            for (const auto& arg : a.args) args.push_back(normalize(arg));
            return mk_atom(a.family, std::move(args));
          },
          [&](const Tp::Arrow& a) {
            return mk_arrow(normalize(a.dom), normalize(a.cod));
          },
          [&](const Tp::Pi& p) {
            return mk_pi(p.hint, normalize(p.dom), normalize(p.cod));
          },
      },
      t->node);
}

KindRef normalize(const KindRef& k) {
  return std::visit(
      overloaded{
          [&](const Kind::Type&) { return k; },
          [&](const Kind::Arrow& a) {
            return mk_karrow(normalize(a.dom), normalize(a.cod));
          },
          [&](const Kind::Pi& p) {
            return mk_kpi(p.hint, normalize(p.dom), normalize(p.cod));
          },
      },
      k->node);
}

TermRef eta_contract(const TermRef& t) {
  return std::visit(
      overloaded{
          [&](const Term::Var&) { return t; },
          [&](const Term::Const&) { return t; },
          [&](const Term::App& a) {
            return mk_app(eta_contract(a.fn), eta_contract(a.arg));
          },
          [&](const Term::Lam& l) -> TermRef {
            auto body = eta_contract(l.body);
            if (const auto* app = body->as<Term::App>()) {
              const auto* v = app->arg->as<Term::Var>();
              if (v && v->index == 0 && !occurs_bound(app->fn, 0))
                return shift(app->fn, -1, 0);
            }
            return mk_lam(l.hint, body);
          },
      },
      t->node);
}

// ---------------------------------------------------------------------------

std::string fresh_name(const std::string& hint,
                       const std::set<std::string>& taken) {
  std::string name = hint.empty() ? "x" : hint;
  while (taken.count(name)) name += "'";
  return name;
}

namespace {

void kind_free_names(const KindRef& k, std::vector<std::string>& out) {
  if (const auto* a = k->as<Kind::Arrow>()) {
    free_names(a->dom, out);
    kind_free_names(a->cod, out);
  } else if (const auto* p = k->as<Kind::Pi>()) {
    free_names(p->dom, out);
    kind_free_names(p->cod, out);
  }
}

class Printer {
 public:
  explicit Printer(std::vector<std::string> scope) : scope_(std::move(scope)) {}

  // prec: 0 top, 1 function position, 2 argument position
  std::string term(const TermRef& t, int prec) {
    return std::visit(
        overloaded{
            [&](const Term::Var& v) { return var_name(v.index); },
            [&](const Term::Const& c) { return c.name; },
            [&](const Term::Lam& l) {
              std::string name = pick(l.hint, [&](std::vector<std::string>& fv) {
                free_names(l.body, fv);
              });
              scope_.push_back(name);
              std::string s = "\\" + name + ". " + term(l.body, 0);
              scope_.pop_back();
              return prec > 0 ? "(" + s + ")" : s;
            },
            [&](const Term::App& a) {
              std::string s = term(a.fn, 1) + " " + term(a.arg, 2);
              return prec > 1 ? "(" + s + ")" : s;
            },
        },
        t->node);
  }

  // prec: 0 top, 1 arrow domain
  std::string tp(const TpRef& t, int prec) {
    return std::visit(
        overloaded{
            [&](const Tp::Atom& a) {
              std::string s = a.family;
              for (const auto& arg : a.args) s += " " + term(arg, 2);
              return s;
            },
            [&](const Tp::Arrow& a) {
              std::string s = tp(a.dom, 1) + " -> " + tp(a.cod, 0);
              return prec > 0 ? "(" + s + ")" : s;
            },
            [&](const Tp::Pi& p) {
              std::string dom = tp(p.dom, 0);
              std::string name = pick(p.hint, [&](std::vector<std::string>& fv) {
                free_names(p.cod, fv);
              });
              scope_.push_back(name);
              std::string s = "{" + name + ":" + dom + "} " + tp(p.cod, 0);
              scope_.pop_back();
              return prec > 0 ? "(" + s + ")" : s;
            },
        },
        t->node);
  }

  std::string kind(const KindRef& k) {
    return std::visit(
        overloaded{
            [&](const Kind::Type&) { return std::string("type"); },
            [&](const Kind::Arrow& a) {
              return tp(a.dom, 1) + " -> " + kind(a.cod);
            },
            [&](const Kind::Pi& p) {
              std::string dom = tp(p.dom, 0);
              std::string name = pick(p.hint, [&](std::vector<std::string>& fv) {
                kind_free_names(p.cod, fv);
              });
              scope_.push_back(name);
              std::string s = "{" + name + ":" + dom + "} " + kind(p.cod);
              scope_.pop_back();
              return s;
            },
        },
        k->node);
  }

 private:
  std::string var_name(int index) const {
    if (index < 0 || index >= static_cast<int>(scope_.size()))
      return "#" + std::to_string(index);
    return scope_[scope_.size() - 1 - index];
  }

  template <class Collect>
  std::string pick(const std::string& hint, Collect collect) {
    std::vector<std::string> fv;
    collect(fv);
    std::set<std::string> taken(fv.begin(), fv.end());
    taken.insert(scope_.begin(), scope_.end());
    return fresh_name(hint, taken);
  }

  std::vector<std::string> scope_;
};

}  // namespace

std::string pretty(const TermRef& t) { return Printer({}).term(t, 0); }
std::string pretty(const TpRef& t) { return Printer({}).tp(t, 0); }
std::string pretty(const KindRef& k) { return Printer({}).kind(k); }
std::string pretty(const TermRef& t, std::vector<std::string> scope) {
  return Printer(std::move(scope)).term(t, 0);
}
std::string pretty(const TpRef& t, std::vector<std::string> scope) {
  return Printer(std::move(scope)).tp(t, 0);
}

}  // namespace orbi
