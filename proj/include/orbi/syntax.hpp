#pragma once

// Three-layer LF syntax: objects (Term), type families (Tp) and kinds (Kind).
//
// Bound variables are de Bruijn indices counted over every enclosing binder
// (term lambdas and Pi binders share one numbering). Binder names are kept
// only as printing hints. Any identifier not captured by a binder is a
// `Const`: signature constants, schematic variables, block labels and
// theorem variables are all free names resolved by the checkers.

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace orbi {

class Term;
class Tp;
class Kind;
using TermRef = std::shared_ptr<const Term>;
using TpRef = std::shared_ptr<const Tp>;
using KindRef = std::shared_ptr<const Kind>;

class Term {
 public:
  struct Var {
    int index;
    std::string hint;
  };
  struct Const {
    std::string name;
  };
  struct Lam {
    std::string hint;
    TermRef body;
  };
  struct App {
    TermRef fn;
    TermRef arg;
  };
  using Node = std::variant<Var, Const, Lam, App>;

  explicit Term(Node n) : node(std::move(n)) {}

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }

  Node node;
};

class Tp {
 public:
  struct Atom {
    std::string family;
    std::vector<TermRef> args;
  };
  struct Arrow {
    TpRef dom;
    TpRef cod;
  };
  struct Pi {
    std::string hint;
    TpRef dom;
    TpRef cod;
  };
  using Node = std::variant<Atom, Arrow, Pi>;

  explicit Tp(Node n) : node(std::move(n)) {}

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }

  Node node;
};

class Kind {
 public:
  struct Type {};
  struct Arrow {
    TpRef dom;
    KindRef cod;
  };
  struct Pi {
    std::string hint;
    TpRef dom;
    KindRef cod;
  };
  using Node = std::variant<Type, Arrow, Pi>;

  explicit Kind(Node n) : node(std::move(n)) {}

  template <class T>
  const T* as() const { return std::get_if<T>(&node); }

  Node node;
};

// constructors
TermRef mk_var(int index, std::string hint = "x");
TermRef mk_const(std::string name);
TermRef mk_lam(std::string hint, TermRef body);
TermRef mk_app(TermRef fn, TermRef arg);
TermRef mk_apps(TermRef head, const std::vector<TermRef>& args);
TpRef mk_atom(std::string family, std::vector<TermRef> args = {});
TpRef mk_arrow(TpRef dom, TpRef cod);
TpRef mk_pi(std::string hint, TpRef dom, TpRef cod);
KindRef mk_type();
KindRef mk_karrow(TpRef dom, KindRef cod);
KindRef mk_kpi(std::string hint, TpRef dom, KindRef cod);

/// Splits a left-nested application into head and arguments.
TermRef spine(const TermRef& t, std::vector<TermRef>& args);

// De Bruijn plumbing. `cutoff` is the number of binders already passed.
TermRef shift(const TermRef& t, int by, int cutoff = 0);
TpRef shift(const TpRef& t, int by, int cutoff = 0);
KindRef shift(const KindRef& k, int by, int cutoff = 0);

/// Instantiates the outermost binder of `body` (index 0) with `replacement`.
/// `replacement` lives in the scope outside the binder.
TermRef subst(const TermRef& body, const TermRef& replacement);
TpRef subst(const TpRef& body, const TermRef& replacement);
KindRef subst(const KindRef& body, const TermRef& replacement);

/// Replaces the free name `name` by `replacement` everywhere.
TermRef replace_free(const TermRef& t, const std::string& name,
                     const TermRef& replacement);
TpRef replace_free(const TpRef& t, const std::string& name,
                   const TermRef& replacement);

/// Turns free occurrences of `name` into the index of a new outermost binder.
TermRef abstract(const TermRef& t, const std::string& name);
TpRef abstract(const TpRef& t, const std::string& name);

bool occurs_bound(const TermRef& t, int index);
bool occurs_bound(const TpRef& t, int index);
bool occurs_bound(const KindRef& k, int index);

void free_names(const TermRef& t, std::vector<std::string>& out);
void free_names(const TpRef& t, std::vector<std::string>& out);
bool mentions_free(const TermRef& t, const std::string& name);
bool mentions_free(const TpRef& t, const std::string& name);

bool alpha_equal(const TermRef& a, const TermRef& b);
bool alpha_equal(const TpRef& a, const TpRef& b);
bool alpha_equal(const KindRef& a, const KindRef& b);

/// Beta-normal form (no eta).
TermRef normalize(const TermRef& t);
TpRef normalize(const TpRef& t);
KindRef normalize(const KindRef& k);

/// Eta-contracts `\x. f x` to `f` when x is not free in f, bottom-up.
TermRef eta_contract(const TermRef& t);

/// Concrete-syntax printers with minimal parenthesization.
std::string pretty(const TermRef& t);
std::string pretty(const TpRef& t);
std::string pretty(const KindRef& k);

/// Printers seeded with names for indices that are free in the node
/// (innermost binder last).
std::string pretty(const TermRef& t, std::vector<std::string> scope);
std::string pretty(const TpRef& t, std::vector<std::string> scope);

/// Returns `hint` or the first priming of it (`x'`, `x''`, ...) that is not
/// in `taken`.
std::string fresh_name(const std::string& hint,
                       const std::set<std::string>& taken);

}  // namespace orbi
