#pragma once

// Normalized cochain complex in dimensions 0-2 over a finite group, with
// values in a Z/m module.
//
// Conventions (fixed once, used everywhere):
//   (d mu)(g)          = mu*g - mu
//   (d nu)(g1,g2)      = nu(g2) - nu(g1 g2) + nu(g1)*g2
//   (d c)(g1,g2,g3)    = c(g2,g3) - c(g1 g2,g3) + c(g1,g2 g3) - c(g1,g2)*g3
//
// Cochains are normalized: any identity argument makes the value zero.
// Dense cochains are tables over the BFS element indexing of their domain;
// lazy 2-cochains are function-backed with an invisible memo and are the
// only representation allowed for large groups.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "coex/common.hpp"
#include "coex/gmodule.hpp"
#include "coex/intlin.hpp"
#include "coex/perm.hpp"

namespace coex {

using GroupPtr = std::shared_ptr<const PermGroup>;
using ModulePtr = std::shared_ptr<const ModuleOps>;

class Cochain1 {
 public:
  Cochain1(GroupPtr domain, ModulePtr mod);  // zero cochain

  const PermGroup& domain() const { return *domain_; }
  const ModuleOps& module() const { return *mod_; }
  GroupPtr domain_ptr() const { return domain_; }
  ModulePtr module_ptr() const { return mod_; }

  const Vec& eval(const Permutation& g) const;
  const Vec& eval_index(int idx) const { return values_[idx]; }
  void set_index(int idx, Vec v);
  int size() const { return static_cast<int>(values_.size()); }

  bool operator==(const Cochain1& rhs) const { return values_ == rhs.values_; }

 private:
  GroupPtr domain_;
  ModulePtr mod_;
  std::vector<Vec> values_;  // indexed by BFS element index; values_[0] = 0
};

class Cochain2 {
 public:
  using Fn = std::function<Vec(const Permutation&, const Permutation&)>;

  static Cochain2 dense(GroupPtr domain, ModulePtr mod);
  static Cochain2 lazy(GroupPtr domain, ModulePtr mod, Fn fn);

  Cochain2(const Cochain2& other)
      : domain_(other.domain_), mod_(other.mod_), is_dense_(other.is_dense_),
        n_(other.n_), table_(other.table_), fn_(other.fn_) {}
  Cochain2(Cochain2&& other) noexcept
      : domain_(std::move(other.domain_)), mod_(std::move(other.mod_)),
        is_dense_(other.is_dense_), n_(other.n_), table_(std::move(other.table_)),
        fn_(std::move(other.fn_)) {}
  Cochain2& operator=(const Cochain2& other) {
    if (this != &other) {
      domain_ = other.domain_;
      mod_ = other.mod_;
      is_dense_ = other.is_dense_;
      n_ = other.n_;
      table_ = other.table_;
      fn_ = other.fn_;
      std::lock_guard<std::mutex> lock(memo_mutex_);
      memo_.clear();
    }
    return *this;
  }

  const PermGroup& domain() const { return *domain_; }
  const ModuleOps& module() const { return *mod_; }
  GroupPtr domain_ptr() const { return domain_; }
  ModulePtr module_ptr() const { return mod_; }
  bool is_dense() const { return is_dense_; }

  Vec eval(const Permutation& g, const Permutation& h) const;
  // Pure evaluation that never touches the memo; safe to hammer from
  // parallel loops as long as the backing function is thread safe.
  Vec eval_direct(const Permutation& g, const Permutation& h) const;

  void set(const Permutation& g, const Permutation& h, Vec v);
  const Vec& table_at(int i, int j) const;  // dense only

 private:
  Cochain2(GroupPtr domain, ModulePtr mod, bool dense);

  GroupPtr domain_;
  ModulePtr mod_;
  bool is_dense_;
  int n_ = 0;                // |G| for dense tables
  std::vector<Vec> table_;   // dense: n_*n_ entries
  Fn fn_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::vector<int>, Vec, VecIntHash> memo_;
};

// Differentials
Cochain1 differential0(const Vec& mu, GroupPtr domain, ModulePtr mod);
Cochain2 differential1(const Cochain1& nu);
struct Cochain3Eval {
  std::function<Vec(const Permutation&, const Permutation&, const Permutation&)> eval;
};
Cochain3Eval differential2(const Cochain2& c);

// Flat coordinates for dense cochains (unknown/equation indexing shared by
// the solver and the cohomology machinery).
struct CochainIndexer {
  CochainIndexer(GroupPtr domain, int k, int n);

  GroupPtr domain;
  int k;  // module rank
  int n;  // cochain dimension, 1 or 2
  Int count;  // number of nonidentity elements
  Int size() const;
  Int index1(Int elem, int coord) const { return (elem - 1) * k + coord; }
  Int index2(Int e1, Int e2, int coord) const {
    return ((e1 - 1) * count + (e2 - 1)) * k + coord;
  }

  Vec flatten(const Cochain1& c) const;
  Vec flatten(const Cochain2& c) const;
  Cochain1 unflatten1(const Vec& v, ModulePtr mod) const;
  Cochain2 unflatten2(const Vec& v, ModulePtr mod) const;
};

// ---------------------------------------------------------------------------
// Coboundary solving

struct SolveOptions {
  Int dense_budget = 20'000'000;   // cap on dense matrix entries
  bool parallel = true;
  std::uint64_t seed = 0;
  int cocycle_check_samples = 1000;
  std::size_t element_limit = 1u << 20;
  bool skip_cocycle_check = false;
};

struct CoboundaryResult {
  std::optional<Cochain1> phi;   // dphi = c when present
  Int unknowns = 0;
  Int rank = 0;
  std::optional<std::pair<Permutation, Permutation>> violating_pair;
};

// Solves d phi = c with phi a normalized 1-cochain on `domain` (a subgroup of
// c's domain). Throws InputError when c is not a 2-cocycle on the domain.
CoboundaryResult solve_coboundary(const Cochain2& c, const PermGroup& domain,
                                  const SolveOptions& opts = {});

// Solves d mu = c for a 0-cochain mu (a module element): mu*g - mu = c(g)
// for every g in the cochain's domain. Returns nullopt when c is not
// principal. The solution is verified before it is returned.
std::optional<Vec> solve_principal(const Cochain1& c, const SolveOptions& opts = {});

// ---------------------------------------------------------------------------
// Cohomology

struct CohomologyGroup {
  int dimension;
  Int modulus;
  GroupPtr domain;
  ModulePtr module;
  Int order;                           // |H^n|
  std::vector<Int> invariant_factors;  // ascending divisor chain
  std::vector<Vec> generators;         // flat cochain coordinates
  std::vector<Int> generator_orders;
  LatticeHnf coboundaries;             // image lattice: membership = coboundary test
  LatticeHnf cocycles;

  bool is_coboundary_vec(const Vec& flat) const { return coboundaries.contains(flat); }
  Vec class_label(const Vec& flat) const { return coboundaries.canonical_residue(flat); }
  bool is_cocycle_vec(const Vec& flat) const { return cocycles.contains(flat); }
  // All class representatives (the zero class first); guarded by cap.
  std::vector<Vec> all_classes(Int cap = 20000) const;
};

CohomologyGroup cohomology_group(GroupPtr G, ModulePtr mod, int n,
                                 const SolveOptions& opts = {});

// ---------------------------------------------------------------------------
// Induced maps of cochains (restriction, postcomposition with epsilon or
// with evaluation at the identity)

enum class InducedKind { Epsilon, Alpha, Shapiro };

struct InducedContext {
  GroupPtr G;
  std::shared_ptr<const PermGroup> H;
  std::shared_ptr<const GModule> L;
  std::shared_ptr<const CoinducedModule> M;
};

Cochain1 induced_map(InducedKind kind, const Cochain1& c, const InducedContext& ctx);
Cochain2 induced_map(InducedKind kind, const Cochain2& c, const InducedContext& ctx);

// ---------------------------------------------------------------------------
// Extensions of G by an abelian kernel, realized on L x G

class ExtensionData {
 public:
  struct Elem {
    Vec l;
    Permutation g;
    bool operator==(const Elem& rhs) const { return l == rhs.l && g == rhs.g; }
  };

  // Verifies normalization and the cocycle identity (exhaustively for small
  // dense cocycles, by seeded sampling otherwise).
  ExtensionData(GroupPtr G, ModulePtr L, Cochain2 delta, const SolveOptions& opts = {});

  const PermGroup& base() const { return *G_; }
  const ModuleOps& kernel_module() const { return *L_; }
  const Cochain2& cocycle() const { return delta_; }
  GroupPtr base_ptr() const { return G_; }
  ModulePtr kernel_ptr() const { return L_; }

  Elem identity() const { return {L_->zero(), Permutation(G_->degree())}; }
  Elem mult(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem iota(Vec l) const { return {std::move(l), Permutation(G_->degree())}; }
  Elem section(const Permutation& g) const { return {L_->zero(), g}; }
  bool is_identity(const Elem& e) const { return e.g.is_identity() && vec_is_zero(e.l); }

  Int order() const;  // |L|^rank * |G|; throws when it does not fit

 private:
  GroupPtr G_;
  ModulePtr L_;
  Cochain2 delta_;
};

// Cocycle of the canonical section s(g) = (0, g); inverse of the constructor.
Cochain2 extract_cocycle(const ExtensionData& E);

}  // namespace coex
