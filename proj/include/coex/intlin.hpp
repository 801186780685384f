#pragma once

// Exact linear algebra over Z/m and over integer lattices containing m*Z^N.
//
// Three layers:
//   - Gf2System / GfpSystem: streaming Gaussian elimination with right-hand
//     sides, used by the coboundary solvers. Equations are inserted one at a
//     time; inconsistency is detected on insert.
//   - LatticeHnf: upper-triangular Hermite basis of a full-rank lattice
//     L with m*Z^N <= L <= Z^N. All entries stay below m.
//   - snf_mod: diagonalization of a relation matrix modulo m, with the
//     column transform tracked so quotient-group generators can be read off.

#include <cstdint>
#include <optional>
#include <vector>

#include "coex/common.hpp"

namespace coex {

Int ext_gcd(Int a, Int b, Int& x, Int& y);  // returns gcd >= 0, a*x + b*y = gcd
Int inv_mod(Int a, Int m);                  // requires gcd(a, m) = 1

// Streaming eliminator over GF(2). Unknowns and right-hand sides are bit
// vectors packed into 64-bit words.
class Gf2System {
 public:
  Gf2System(int unknowns, int rhs_bits);

  int unknowns() const { return unknowns_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool consistent() const { return consistent_; }
  bool full_rank() const { return rank() == unknowns_; }

  // Inserts lhs . x = rhs. Returns false when this equation made the system
  // inconsistent (0 = 1 after reduction).
  bool add(std::vector<std::uint64_t> lhs, std::vector<std::uint64_t> rhs);

  // Particular solution with free unknowns set to 0; column `rhs_index`
  // of the right-hand side block. Requires consistent().
  std::vector<std::uint64_t> solve(int rhs_index) const;

  static std::size_t words_for(int bits) { return (static_cast<std::size_t>(bits) + 63) / 64; }

 private:
  int unknowns_;
  int rhs_bits_;
  std::size_t lhs_words_;
  std::size_t rhs_words_;
  bool consistent_ = true;
  std::vector<int> pivot_of_row_;
  std::vector<int> row_of_pivot_;  // -1 when the column has no pivot
  std::vector<std::vector<std::uint64_t>> rows_;  // lhs || rhs packed
};

// Streaming eliminator over GF(p), p prime. Rows are kept pivot-normalized.
class GfpSystem {
 public:
  GfpSystem(int unknowns, int rhs_cols, Int p);

  int rank() const { return static_cast<int>(rows_.size()); }
  bool consistent() const { return consistent_; }
  bool full_rank() const { return rank() == unknowns_; }

  bool add(std::vector<Int> lhs, std::vector<Int> rhs);
  std::vector<Int> solve(int rhs_index) const;  // free unknowns = 0

 private:
  int unknowns_;
  int rhs_cols_;
  Int p_;
  bool consistent_ = true;
  std::vector<int> pivot_of_row_;
  std::vector<int> row_of_pivot_;
  std::vector<std::vector<Int>> rows_;
};

// Upper-triangular Hermite basis of a lattice with m*Z^N <= L <= Z^N.
// Row i has its pivot at column i; pivots lie in [1, m] and divide m's
// multiples in the sense that the lattice always contains m*e_i.
class LatticeHnf {
 public:
  LatticeHnf(int n, Int m);  // starts as m*Z^N

  int dim() const { return n_; }
  Int modulus() const { return m_; }
  Int pivot(int i) const { return rows_[i][i]; }
  const std::vector<Vec>& rows() const { return rows_; }

  void insert(Vec row);               // adds a generator (any integer row)
  bool contains(Vec v) const;         // exact integer lattice membership
  Vec canonical_residue(Vec v) const;  // unique representative of v + L

  // |L / m*Z^N| as exact integer; throws on overflow (not expected at the
  // sizes this library guards).
  Int index_over_mzn() const;

 private:
  void reduce_above(int i);

  int n_;
  Int m_;
  std::vector<Vec> rows_;
};

// Diagonalizes the relation matrix `rows` (each of length n) modulo m and
// returns, per coordinate, the order of the corresponding cyclic factor of
// Z^n / (row space + m*Z^n), together with generators for the nontrivial
// factors expressed in the original coordinates (entries mod m).
struct SmithModResult {
  std::vector<Int> factor_orders;      // aligned with generators, all > 1
  std::vector<Vec> generators;         // rows, length n, entries in [0, m)
  Int group_order = 1;                 // product of factor_orders
  std::vector<Int> invariant_factors;  // canonical divisor chain of the group
};
SmithModResult snf_mod(std::vector<Vec> rows, int n, Int m);

// Kernel construction: the lattice {v in Z^N : <v, form> = 0 mod m for all
// inserted forms}. Forms may be sparse; see add_form overloads.
class KernelLattice {
 public:
  KernelLattice(int n, Int m);

  void add_form(const Vec& dense_form);
  void add_form_sparse(const std::vector<std::pair<int, Int>>& entries);

  // Finalized Hermite basis of the kernel lattice (contains m*Z^N).
  LatticeHnf to_hnf() const;

 private:
  void refine(const Vec& t_values);  // t_i = <basis_i, form> mod m

  int n_;
  Int m_;
  std::vector<Vec> basis_;  // current generating rows, entries in [0, m)
};

std::vector<Int> prime_factors(Int m);         // distinct primes, ascending
bool is_prime_power(Int m, Int* p, int* e);

// |outer / inner| for nested full-rank triangular lattices (inner <= outer),
// computed from the pivot products with stepwise cancellation.
Int lattice_quotient_order(const LatticeHnf& inner, const LatticeHnf& outer);

}  // namespace coex
