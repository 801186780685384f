#pragma once

// Liftability of subgroups: does the preimage of H in an extension S of G
// split over the kernel? Witnessed by a 1-cochain phi with d phi = delta|_H.
// Two strategies: a sign search over lifts of the subgroup generators (for
// central Z/2 kernels) and the general linear solver. An exhaustive
// complement search over small multiplication oracles serves as the
// independent cross-check.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/perm.hpp"

namespace coex {

struct SplittingData {
  std::shared_ptr<const PermGroup> subgroup;
  Cochain1 phi;           // d phi = delta restricted to the subgroup
  std::string strategy;   // "sign-search" or "linear"
  Int verified_pairs = 0; // pairs of the exhaustive d phi = delta check
};

struct LiftOptions {
  enum class Strategy { Auto, SignSearch, Linear };
  Strategy strategy = Strategy::Auto;
  bool parallel = true;
  Int dense_budget = 20'000'000;
  Int verify_exhaustive_limit = 2000;
  std::size_t element_limit = 1u << 20;
  int max_signsearch_gens = 6;
};

struct LiftResult {
  std::optional<SplittingData> split;
  std::string strategy;
  Int unknowns = 0;
  Int rank = 0;  // linear strategy only
  std::optional<std::pair<Permutation, Permutation>> violating_pair;
};

LiftResult lift_test(const ExtensionData& S, const PermGroup& H, const LiftOptions& opts = {});

// ---------------------------------------------------------------------------
// Small-group oracles

struct FiniteGroupOracle {
  int size = 0;
  int id = 0;
  std::vector<int> gens;
  std::function<int(int, int)> mult;

  std::vector<int> inverses() const;
};

FiniteGroupOracle oracle_from_permgroup(const PermGroup& G);
// Preimage of H inside the extension S, on index pairs (kernel, subgroup).
FiniteGroupOracle oracle_from_extension(const ExtensionData& S, const PermGroup& H);
// Kernel image iota(L) inside the extension oracle, as sorted element indices.
std::vector<int> extension_kernel_indices(const ExtensionData& S, const PermGroup& H);

// Exhaustive complement search: a subgroup K with K meet N = 1 and
// |K| = |E|/|N|. N must be the sorted element list of an abelian normal
// subgroup. Guard: |E| <= 5000.
std::optional<std::vector<int>> complement_search(const FiniteGroupOracle& E,
                                                  const std::vector<int>& N);

// ---------------------------------------------------------------------------
// Subgroup enumeration (cyclic lattice closure), up to equality

struct Subgroup {
  std::vector<int> element_indices;  // sorted, into G's BFS order
  std::shared_ptr<PermGroup> group;
};

std::vector<Subgroup> enumerate_subgroups(const PermGroup& G, Int order_limit = 360);

}  // namespace coex
