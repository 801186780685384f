#include "coex/casework.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "coex/gfq.hpp"
#include "json.hpp"

namespace coex {

std::shared_ptr<PermGroup> alternating_group(int n) {
  if (n < 3) throw InputError("alternating group needs n >= 3");
  std::vector<Permutation> gens;
  for (int k = 3; k <= n; ++k) {
    gens.push_back(Permutation::parse_cycles("(1,2," + std::to_string(k) + ")", n));
  }
  return std::make_shared<PermGroup>(n, gens);
}

SpinCoverData build_spin_cover(int n) {
  SpinCoverData data;
  data.an = alternating_group(n);
  data.ctx = std::make_shared<SpinContext>(n);
  data.z2 = std::make_shared<GModule>(GModule::trivial(data.an, 2, 1));
  data.ext = std::make_shared<ExtensionData>(data.an, data.z2,
                                             data.ctx->as_cochain2(data.an, data.z2));
  return data;
}

// ---------------------------------------------------------------------------
// catalog loading

namespace {

std::vector<SubgroupSpec> load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CatalogError("malformed catalog JSON in " + path + ": " + e.what());
  }
  if (!doc.is_array()) throw CatalogError("catalog must be a JSON array: " + path);
  std::vector<SubgroupSpec> out;
  for (const auto& item : doc) {
    SubgroupSpec spec;
    spec.name = item.at("name").get<std::string>();
    for (const auto& g : item.at("generators")) spec.generators.push_back(g.get<std::string>());
    spec.order = item.at("order").get<Int>();
    spec.index = item.at("index").get<Int>();
    if (item.contains("classes")) spec.classes = item.at("classes").get<std::string>();
    if (item.contains("provenance")) spec.provenance = item.at("provenance").get<std::string>();
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

PermGroup spec_group(const SubgroupSpec& spec, const PermGroup& ambient) {
  std::vector<Permutation> gens;
  for (const auto& s : spec.generators) {
    gens.push_back(Permutation::parse_cycles(s, ambient.degree()));
  }
  PermGroup g(ambient.degree(), gens);
  if (g.order() != spec.order) {
    throw CatalogError("catalog entry '" + spec.name + "' generates order " +
                       std::to_string(g.order()) + ", expected " + std::to_string(spec.order));
  }
  if (!ambient.contains_group(g)) {
    throw CatalogError("catalog entry '" + spec.name + "' is not inside the ambient group");
  }
  if (spec.index != ambient.order() / g.order()) {
    throw CatalogError("catalog entry '" + spec.name + "' has index " +
                       std::to_string(ambient.order() / g.order()) + ", expected " +
                       std::to_string(spec.index));
  }
  return g;
}

std::vector<SubgroupSpec> an_maximal_catalog(int n, const std::string& data_dir) {
  if (n < 4 || n > 9) throw InputError("catalogs cover 4 <= n <= 9");
  auto specs = load_spec_file(data_dir + "/catalog_a" + std::to_string(n) + ".json");
  auto an = alternating_group(n);
  for (const auto& spec : specs) spec_group(spec, *an);  // load-time integrity
  return specs;
}

std::vector<SubgroupSpec> an_candidate_list(int n, const std::string& data_dir) {
  const std::string path = data_dir + "/candidates_a" + std::to_string(n) + ".json";
  std::ifstream probe(path);
  if (!probe) return {};
  auto specs = load_spec_file(path);
  auto an = alternating_group(n);
  for (const auto& spec : specs) spec_group(spec, *an);
  return specs;
}

// ---------------------------------------------------------------------------
// verification pipeline

namespace {

EntryVerdict run_entry(const SpinCoverData& cover, const SubgroupSpec& spec,
                       const CaseworkOptions& opts, bool parallel_inner) {
  EntryVerdict v;
  v.name = spec.name;
  v.order = spec.order;
  v.index = spec.index;
  const auto start = std::chrono::steady_clock::now();

  PermGroup h = spec_group(spec, *cover.an);
  LiftOptions lopts;
  lopts.strategy = opts.strategy;
  lopts.parallel = parallel_inner;
  auto r = lift_test(*cover.ext, h, lopts);
  v.liftable = r.split.has_value();
  v.strategy = r.strategy;
  v.unknowns = r.unknowns;
  if (r.split) v.verified_pairs = r.split->verified_pairs;
  if (r.violating_pair) {
    v.violating_pair = r.violating_pair->first.cycles() + " , " +
                       r.violating_pair->second.cycles();
  }
  v.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
  return v;
}

}  // namespace

VerificationReport verify_double_cover_liftability(int n, const std::string& data_dir,
                                                   const CaseworkOptions& opts) {
  if (n < 4 || n > 9) throw InputError("double-cover verification covers 4 <= n <= 9");
  const auto specs = an_maximal_catalog(n, data_dir);
  SpinCoverData cover = build_spin_cover(n);

  VerificationReport report;
  report.n = n;
  report.entries.resize(specs.size());
  // entries run in catalog order; the heavy verification kernels inside each
  // lift test are what get sharded across threads (entry costs are too uneven
  // for entry-level sharding to pay off)
  for (std::size_t i = 0; i < specs.size(); ++i) {
    report.entries[i] = run_entry(cover, specs[i], opts, opts.parallel);
  }
  for (const auto& e : report.entries) {
    if (e.liftable) {
      ++report.liftable_count;
      report.liftable_names.push_back(e.name);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// PSL2 criterion

Psl2Criterion psl2_criterion(Int q, const CaseworkOptions& opts) {
  if (q % 2 == 0 || q < 3 || q > 13) {
    throw InputError("psl2 criterion needs odd q with 3 <= q <= 13");
  }
  Psl2Criterion out;
  out.q = q;
  out.formula_verdict = ((q - 1) / 2) % 2 == 1;

  Psl2Data data = build_psl2(q);
  auto z2 = std::make_shared<GModule>(GModule::trivial(data.group, 2, 1));
  ExtensionData ext(data.group, z2, data.cocycle(data.group, z2));
  LiftOptions lopts;
  lopts.strategy = opts.strategy;
  lopts.parallel = opts.parallel;
  out.lift_verdict = lift_test(ext, *data.borel, lopts).split.has_value();

  if (out.formula_verdict != out.lift_verdict) {
    throw InvariantError("psl2 criterion mismatch at q = " + std::to_string(q) +
                         ": formula says " + (out.formula_verdict ? "liftable" : "not") +
                         ", lift test says " + (out.lift_verdict ? "liftable" : "not"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// minimal liftable index bound

MinIndexBound min_liftable_index_bound(int n, const std::string& data_dir,
                                       const CaseworkOptions& opts) {
  if (n < 4 || n > 9) throw InputError("min index bound covers 4 <= n <= 9");
  SpinCoverData cover = build_spin_cover(n);
  MinIndexBound out;
  out.n = n;
  out.label = "upper bound for f(n), not f(n) itself";

  LiftOptions lopts;
  lopts.strategy = opts.strategy;
  lopts.parallel = opts.parallel;

  if (n <= 5) {
    // exhaustive over every subgroup, smallest index first
    auto subs = enumerate_subgroups(*cover.an);
    std::stable_sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
      return a.group->order() > b.group->order();
    });
    for (const auto& sub : subs) {
      if (!lift_test(*cover.ext, *sub.group, lopts).split.has_value()) continue;
      out.bound = cover.an->order() / sub.group->order();
      SubgroupSpec witness;
      witness.name = "subgroup of order " + std::to_string(sub.group->order());
      for (const auto& g : sub.group->generators()) witness.generators.push_back(g.cycles());
      witness.order = sub.group->order();
      witness.index = out.bound;
      witness.provenance = "exhaustive enumeration of all subgroups of A_" + std::to_string(n);
      out.witness = std::move(witness);
      return out;
    }
    throw InvariantError("no liftable subgroup found (the identity subgroup always lifts)");
  }

  std::vector<SubgroupSpec> pool = an_maximal_catalog(n, data_dir);
  for (auto& extra : an_candidate_list(n, data_dir)) pool.push_back(std::move(extra));
  std::stable_sort(pool.begin(), pool.end(),
                   [](const SubgroupSpec& a, const SubgroupSpec& b) { return a.index < b.index; });
  for (const auto& spec : pool) {
    PermGroup h = spec_group(spec, *cover.an);
    if (lift_test(*cover.ext, h, lopts).split.has_value()) {
      out.bound = spec.index;
      out.witness = spec;
      return out;
    }
  }
  throw InvariantError("no liftable subgroup in the catalog or candidate pool");
}

}  // namespace coex
