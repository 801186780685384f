#pragma once

// Finite right G-modules over Z/m and co-induced modules.
//
// A module element is a Vec of residues in [0, m). Actions are right actions:
// act(act(v, g), h) == act(v, g*h). Co-induced module elements are indexed by
// the left transversal of H in G: the block at position i is the value of the
// underlying function at rep r_i, and the value elsewhere extends by
// mu(r*h) = mu(r)*h.

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coex/common.hpp"
#include "coex/perm.hpp"

namespace coex {

Vec vec_add(const Vec& a, const Vec& b, Int m);
Vec vec_sub(const Vec& a, const Vec& b, Int m);
Vec vec_neg(const Vec& a, Int m);
bool vec_is_zero(const Vec& a);

class ModuleOps {
 public:
  virtual ~ModuleOps() = default;
  virtual Int modulus() const = 0;
  virtual int rank() const = 0;
  virtual const PermGroup& group() const = 0;
  virtual Vec act(const Vec& v, const Permutation& g) const = 0;

  Vec zero() const { return Vec(rank(), 0); }
  // rows of the action matrix of g: row i = act(e_i, g)
  std::vector<Vec> action_matrix(const Permutation& g) const;
};

// Module given by explicit data on the group's generators.
class GModule final : public ModuleOps {
 public:
  enum class Kind { Trivial, CoordPerm, Matrix };

  static GModule trivial(std::shared_ptr<const PermGroup> G, Int m, int k);
  // One coordinate permutation per generator; out[i] = v[cp[i]].
  static GModule coord_perm(std::shared_ptr<const PermGroup> G, Int m,
                            std::vector<std::vector<int>> gen_coord_perms, int k);
  // Natural permutation module on the group's points (rank = degree).
  static GModule permutation(std::shared_ptr<const PermGroup> G, Int m);
  // One k x k row-major matrix per generator, acting on row vectors.
  static GModule matrices(std::shared_ptr<const PermGroup> G, Int m,
                          std::vector<std::vector<Vec>> gen_matrices);

  GModule(const GModule& other)
      : G_(other.G_), m_(other.m_), k_(other.k_), kind_(other.kind_),
        gen_cp_(other.gen_cp_), gen_mat_(other.gen_mat_) {}
  GModule& operator=(const GModule& other) {
    if (this != &other) {
      G_ = other.G_;
      m_ = other.m_;
      k_ = other.k_;
      kind_ = other.kind_;
      gen_cp_ = other.gen_cp_;
      gen_mat_ = other.gen_mat_;
      std::lock_guard<std::mutex> lock(memo_mutex_);
      cp_memo_.clear();
      mat_memo_.clear();
    }
    return *this;
  }

  Int modulus() const override { return m_; }
  int rank() const override { return k_; }
  const PermGroup& group() const override { return *G_; }
  Vec act(const Vec& v, const Permutation& g) const override;

  Kind kind() const { return kind_; }
  // Same action data viewed as a module for a subgroup H <= G.
  GModule restricted_to(std::shared_ptr<const PermGroup> H) const;

  // Sampled consistency: act(act(v,g),h) == act(v, g*h) on `samples` seeded
  // random triples. Throws InputError when the generator data does not
  // define a module.
  void validate(Rng& rng, int samples = 100) const;

 private:
  GModule(std::shared_ptr<const PermGroup> G, Int m, int k, Kind kind)
      : G_(std::move(G)), m_(m), k_(k), kind_(kind) {}

  // word of g in the stored generators, via the BFS tree
  std::vector<int> generator_word(const Permutation& g) const;

  std::shared_ptr<const PermGroup> G_;
  Int m_;
  int k_;
  Kind kind_;
  std::vector<std::vector<int>> gen_cp_;
  std::vector<std::vector<Vec>> gen_mat_;

  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::vector<int>, std::vector<int>, VecIntHash> cp_memo_;
  mutable std::unordered_map<std::vector<int>, std::vector<Vec>, VecIntHash> mat_memo_;
};

// Coind_H^G(L_H) realized on the left transversal of H in G.
class CoinducedModule final : public ModuleOps {
 public:
  CoinducedModule(std::shared_ptr<const GModule> L, std::shared_ptr<const PermGroup> H);

  Int modulus() const override { return L_->modulus(); }
  int rank() const override { return L_->rank() * transversal_.index(); }
  const PermGroup& group() const override { return L_->group(); }
  Vec act(const Vec& v, const Permutation& g) const override;

  const GModule& base() const { return *L_; }
  const PermGroup& subgroup() const { return *H_; }
  const CosetTransversal& transversal() const { return transversal_; }
  int index() const { return transversal_.index(); }

  Vec epsilon(const Vec& l) const;   // (l * r_i)_i
  Vec evaluate(const Vec& mu) const;  // value at the identity (block 0)

  // mu extended to all of G: mu(r*h) = mu(r)*h
  Vec value_at(const Vec& mu, const Permutation& x) const;

  // Explicit per-generator module data over G, for the cohomology machinery.
  GModule materialize() const;

 private:
  Vec block(const Vec& v, int i) const;

  std::shared_ptr<const GModule> L_;
  std::shared_ptr<const PermGroup> H_;
  CosetTransversal transversal_;
};

// G-equivariant map between co-induced modules (Lemma-8 style maps).
struct ModuleMap {
  std::shared_ptr<const CoinducedModule> source;
  std::shared_ptr<const CoinducedModule> target;
  std::function<Vec(const Vec&)> apply;
};

// Isomorphism Coind_H -> Coind_{H^g}, (mu psi)(x) = mu(x g^-1) * g.
ModuleMap conjugate_iso(std::shared_ptr<const CoinducedModule> M, const Permutation& g);

// Monomorphism Coind_H -> Coind_K for K <= H; the underlying function G -> L
// is unchanged, only re-indexed on the finer transversal.
ModuleMap refine_map(std::shared_ptr<const CoinducedModule> M,
                     std::shared_ptr<const PermGroup> K);

}  // namespace coex
