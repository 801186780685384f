#pragma once

// Curated subgroup catalogs for A_n (4 <= n <= 9), the double-cover
// liftability pipeline, the PSL2(q) wreath criterion, and upper bounds for
// the minimal co-induction index. Catalog generators ship as JSON data with
// provenance notes; orders are re-verified at load time. Maximality itself is
// catalog metadata and is not re-verified here.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/liftsplit.hpp"
#include "coex/perm.hpp"
#include "coex/spincover.hpp"

namespace coex {

struct SubgroupSpec {
  std::string name;
  std::vector<std::string> generators;  // cycle strings on n points
  Int order = 0;
  Int index = 0;
  std::string classes;     // conjugacy-class multiplicity metadata
  std::string provenance;  // construction note
};

// Loads data_dir/catalog_a<n>.json and verifies every entry: generated order
// equals the stated order, the generators lie in A_n, and the index matches.
// Throws CatalogError on any mismatch.
std::vector<SubgroupSpec> an_maximal_catalog(int n, const std::string& data_dir);
std::vector<SubgroupSpec> an_candidate_list(int n, const std::string& data_dir);

// Parses and verifies one entry against its ambient A_n.
PermGroup spec_group(const SubgroupSpec& spec, const PermGroup& ambient);

struct EntryVerdict {
  std::string name;
  Int order = 0;
  Int index = 0;
  bool liftable = false;
  std::string strategy;
  Int verified_pairs = 0;   // exhaustive d phi = delta pairs when liftable
  Int unknowns = 0;
  std::string violating_pair;  // certificate when not liftable
  double millis = 0;
};

struct VerificationReport {
  int n = 0;
  std::vector<EntryVerdict> entries;
  Int liftable_count = 0;
  std::vector<std::string> liftable_names;
};

struct CaseworkOptions {
  bool parallel = true;
  LiftOptions::Strategy strategy = LiftOptions::Strategy::Auto;
  std::uint64_t seed = 0;
};

// Builds the spin cocycle of 2.A_n and runs the lift test on every catalog
// entry; entries may be verified concurrently, the report is assembled in
// catalog order.
VerificationReport verify_double_cover_liftability(int n, const std::string& data_dir,
                                                   const CaseworkOptions& opts = {});

struct Psl2Criterion {
  Int q = 0;
  bool formula_verdict = false;
  bool lift_verdict = false;
};

// Intro criterion specialized to PSL2(q), r = 2: the formula verdict is
// 2 does not divide (q-1)/gcd(2,q-1); the lift verdict tests the point
// stabilizer of infinity against the SL2 -> PSL2 sign cocycle. Asserts the
// two verdicts agree.
Psl2Criterion psl2_criterion(Int q, const CaseworkOptions& opts = {});

struct MinIndexBound {
  int n = 0;
  Int bound = 0;
  SubgroupSpec witness;
  std::string label;  // always marks the value as an upper bound
};

// n <= 5: exhaustive over all subgroups of A_n. n >= 6: minimum over the
// catalog closed under the shipped candidate list.
MinIndexBound min_liftable_index_bound(int n, const std::string& data_dir,
                                       const CaseworkOptions& opts = {});

// The ambient alternating group on n points.
std::shared_ptr<PermGroup> alternating_group(int n);

// Spin cover of A_n packaged as an extension (kernel: trivial Z/2).
struct SpinCoverData {
  std::shared_ptr<PermGroup> an;
  std::shared_ptr<SpinContext> ctx;
  std::shared_ptr<GModule> z2;
  std::shared_ptr<ExtensionData> ext;
};
SpinCoverData build_spin_cover(int n);

}  // namespace coex
