#pragma once

// Double covers 2.A_n (4 <= n <= 9) inside the even Clifford algebra.
//
// Generators e_1..e_n satisfy e_i^2 = +1 and e_i e_j = -e_j e_i. The lift of
// an even permutation is a product of (e_i - e_{i+1}) factors along its
// canonical transposition word, divided by 2^(word length / 2). Every element
// of the cover is a dyadic-integer combination of even-cardinality monomials,
// so all arithmetic is exact 64-bit integer work with overflow detection.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/perm.hpp"

namespace coex {

class SpinElement {
 public:
  struct Term {
    std::uint16_t mask;  // subset of points, even cardinality
    Int coeff;
  };

  static SpinElement one(int n);
  static SpinElement minus_one(int n);

  int points() const { return n_; }
  int shift() const { return shift_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Permutation& projection() const { return proj_; }

  SpinElement multiply(const SpinElement& rhs) const;
  SpinElement negated() const;
  // Inverse via the reversal anti-automorphism; valid for lifts of group
  // elements (products of unit reflection pairs).
  SpinElement inverse() const;

  bool is_plus_one() const;
  bool is_minus_one() const;

  bool operator==(const SpinElement& rhs) const {
    return n_ == rhs.n_ && shift_ == rhs.shift_ && terms_ == rhs.terms_;
  }

  // +1 / -1 when rhs equals this element up to sign, nullopt otherwise.
  std::optional<int> sign_relative_to(const SpinElement& rhs) const;

 private:
  friend SpinElement clifford_product(const SpinElement&, const SpinElement&);
  friend class SpinContext;
  friend SpinElement reflection_pair_product(int n, int a, int b);

  void normalize();

  int n_ = 0;
  int shift_ = 0;
  std::vector<Term> terms_;  // sorted by mask, no zero coefficients
  Permutation proj_;
};

inline bool operator==(const SpinElement::Term& a, const SpinElement::Term& b) {
  return a.mask == b.mask && a.coeff == b.coeff;
}

SpinElement clifford_product(const SpinElement& a, const SpinElement& b);

// (e_a - e_{a+1}) * (e_b - e_{b+1}) with the 1/2 normalization folded into the
// shift; a, b are 0-based lower points of adjacent transpositions.
SpinElement reflection_pair_product(int n, int a, int b);

// Canonical sections of A_n into the even Clifford algebra, with a
// per-context memo (preload the subgroup being worked on; everything else is
// computed on the fly and cached up to a cap).
class SpinContext {
 public:
  explicit SpinContext(int n);

  int points() const { return n_; }

  SpinElement section(const Permutation& g) const;
  // Stable pointer into the memo (inserted on first use); the preferred form
  // in hot loops since it avoids copying term vectors.
  const SpinElement* section_ptr(const Permutation& g) const;
  void preload(const std::vector<Permutation>& elems, bool parallel = false);

  // 0 when s(g) s(h) = s(gh), 1 when it equals -s(gh); anything else is an
  // invariant violation.
  Int cocycle(const Permutation& g, const Permutation& h) const;

  // The spin cocycle as a lazy 2-cochain over `domain` (a subgroup of A_n on
  // the same points) with values in the trivial Z/2 module.
  Cochain2 as_cochain2(GroupPtr domain, ModulePtr z2) const;

 private:
  SpinElement compute_section(const Permutation& g) const;

  int n_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::vector<int>, SpinElement, VecIntHash> memo_;
};

}  // namespace coex
