#pragma once

// Small finite fields GF(q) for q <= 13 via tabulated polynomial arithmetic,
// and the projective-line permutation actions built from them. Field elements
// are indexed 0..q-1 by their coefficient vectors base p; the irreducible
// polynomials are fixed in gfq.cpp.

#include <array>
#include <memory>
#include <unordered_map>
#include <vector>

#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/perm.hpp"

namespace coex {

class Gfq {
 public:
  explicit Gfq(Int q);

  Int q() const { return q_; }
  Int p() const { return p_; }
  int degree() const { return e_; }

  Int add(Int a, Int b) const { return add_[a * q_ + b]; }
  Int sub(Int a, Int b) const { return add(a, neg(b)); }
  Int mul(Int a, Int b) const { return mul_[a * q_ + b]; }
  Int neg(Int a) const { return neg_[a]; }
  Int inv(Int a) const;
  Int frobenius(Int a) const { return frob_[a]; }  // a^p
  Int primitive() const { return primitive_; }
  Int pow_of_primitive(int k) const;  // t^k

 private:
  Int q_, p_;
  int e_;
  std::vector<Int> add_, mul_, neg_, frob_;
  Int primitive_;
};

// 2x2 matrices over GF(q), row-major (a, b, c, d).
using Mat2 = std::array<Int, 4>;

Mat2 mat2_mul(const Gfq& F, const Mat2& A, const Mat2& B);
Mat2 mat2_neg(const Gfq& F, const Mat2& A);

// Right Moebius action on the projective line (points 0..q-1 are the field
// elements, point q is infinity): x * M = T_{M^{-1}}(x), so that
// x * (M N) = (x * M) * N and the matrix-to-permutation map is a
// homomorphism for apply-left-first composition. M must have det 1.
Permutation moebius_right_perm(const Gfq& F, const Mat2& M);

struct Psl2Data {
  std::shared_ptr<Gfq> field;
  std::shared_ptr<PermGroup> group;  // PSL2(q) on q+1 points
  std::shared_ptr<PermGroup> borel;  // stabilizer of infinity
  // canonical +-representative matrices, keyed by permutation images (odd q)
  std::unordered_map<std::vector<int>, Mat2, VecIntHash> canon;

  // sign cocycle of SL2(q) -> PSL2(q) from the canonical matrix section
  Cochain2 cocycle(GroupPtr domain, ModulePtr z2) const;
};

Psl2Data build_psl2(Int q);

// PGammaL2(8) = PSL2(8):3 on the 9 points of the projective line over GF(8).
std::shared_ptr<PermGroup> build_pgl28();

}  // namespace coex
