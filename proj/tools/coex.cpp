// Command-line front end: every subcommand reads JSON inputs, runs one
// library operation and emits a JSON report. Identical inputs and seed give
// byte-identical reports; timing is only included behind --timing.
//
// Exit codes: 0 success, 1 mathematical invariant violation, 2 input or
// parse error, 3 resource budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "coex/casework.hpp"
#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/embed.hpp"
#include "coex/gmodule.hpp"
#include "coex/json_io.hpp"
#include "coex/liftsplit.hpp"
#include "coex/perm.hpp"
#include "coex/spincover.hpp"

using namespace coex;

namespace {

struct RunConfig {
  std::string output;
  std::uint64_t seed = 0;
  Int samples = 1000;
  Int budget = 20'000'000;
  bool serial = false;
  bool timing = false;
  std::string data_dir = "data/v1";
  std::string strategy = "auto";
};

void emit(const RunConfig& cfg, const OrderedJson& doc) {
  if (cfg.output.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw InputError("cannot write output file: " + cfg.output);
    out << doc.dump(2) << "\n";
  }
}

LiftOptions lift_options(const RunConfig& cfg) {
  LiftOptions opts;
  opts.parallel = !cfg.serial;
  opts.dense_budget = cfg.budget;
  if (cfg.strategy == "sign") {
    opts.strategy = LiftOptions::Strategy::SignSearch;
  } else if (cfg.strategy == "linear") {
    opts.strategy = LiftOptions::Strategy::Linear;
  } else if (cfg.strategy == "auto") {
    opts.strategy = LiftOptions::Strategy::Auto;
  } else {
    throw InputError("unknown strategy: " + cfg.strategy);
  }
  return opts;
}

SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions opts;
  opts.dense_budget = cfg.budget;
  opts.parallel = !cfg.serial;
  opts.seed = cfg.seed;
  return opts;
}

// extension from either the built-in spin source or a cocycle file
struct ExtensionInputs {
  GroupPtr group;
  std::shared_ptr<GModule> module;
  std::shared_ptr<SpinContext> spin;  // kept alive for lazy cocycles
  std::shared_ptr<ExtensionData> ext;
};

ExtensionInputs make_extension(const RunConfig& cfg, const std::string& group_path,
                               const std::string& cocycle, const std::string& module_path) {
  ExtensionInputs in;
  in.group = load_group(group_path);
  if (cocycle == "spin") {
    for (const auto& g : in.group->generators()) {
      if (g.parity() != 0) {
        throw InputError("spin cocycle needs an even permutation group");
      }
    }
    in.spin = std::make_shared<SpinContext>(in.group->degree());
    in.module = std::make_shared<GModule>(GModule::trivial(in.group, 2, 1));
    in.ext = std::make_shared<ExtensionData>(in.group, in.module,
                                             in.spin->as_cochain2(in.group, in.module),
                                             solve_options(cfg));
  } else {
    if (module_path.empty()) throw InputError("--module is required with a cocycle file");
    in.module = load_module(module_path, in.group);
    in.ext = std::make_shared<ExtensionData>(in.group, in.module,
                                             load_cocycle(cocycle, in.group, in.module),
                                             solve_options(cfg));
  }
  return in;
}

OrderedJson lift_result_json(const LiftResult& r) {
  OrderedJson j;
  j["liftable"] = r.split.has_value();
  j["strategy"] = r.strategy;
  OrderedJson cert;
  if (r.split) {
    cert["verified_pairs"] = r.split->verified_pairs;
    Int support = 0;
    for (int e = 1; e < r.split->phi.size(); ++e) {
      if (!vec_is_zero(r.split->phi.eval_index(e))) ++support;
    }
    cert["phi_support"] = support;
  } else {
    cert["unknowns"] = r.unknowns;
    cert["rank"] = r.rank;
    if (r.violating_pair) {
      cert["violating_pair"] =
          OrderedJson::array({r.violating_pair->first.cycles(), r.violating_pair->second.cycles()});
    }
  }
  j["certificate"] = cert;
  return j;
}

int run(CLI::App& app, const RunConfig& cfg,
        const std::map<std::string, std::string>& args) {
  auto get = [&](const std::string& key) { return args.at(key); };

  if (app.got_subcommand("order")) {
    auto g = load_group(get("group"));
    OrderedJson j;
    j["order"] = g->order();
    j["degree"] = g->degree();
    emit(cfg, j);
    return 0;
  }

  if (app.got_subcommand("cohomology")) {
    auto g = load_group(get("group"));
    auto mod = load_module(get("module"), g);
    const int dim = std::stoi(get("dim"));
    auto h = cohomology_group(g, mod, dim, solve_options(cfg));
    OrderedJson j;
    j["dimension"] = h.dimension;
    j["invariant_factors"] = h.invariant_factors;
    j["class_count"] = h.order;
    emit(cfg, j);
    return 0;
  }

  if (app.got_subcommand("lift-test")) {
    auto in = make_extension(cfg, get("group"), get("cocycle"), get("module"));
    auto sub = load_group(get("subgroup"));
    auto r = lift_test(*in.ext, *sub, lift_options(cfg));
    OrderedJson j;
    j["group"] = group_summary(*in.group);
    j["subgroup"] = group_summary(*sub);
    j["index"] = in.group->order() / sub->order();
    OrderedJson lr = lift_result_json(r);
    for (auto& [key, value] : lr.items()) j[key] = value;
    emit(cfg, j);
    return 0;
  }

  if (app.got_subcommand("embed")) {
    auto in = make_extension(cfg, get("group"), get("cocycle"), get("module"));
    auto sub = load_group(get("subgroup"));
    auto r = lift_test(*in.ext, *sub, lift_options(cfg));
    OrderedJson j;
    j["group"] = group_summary(*in.group);
    j["subgroup"] = group_summary(*sub);
    j["index"] = in.group->order() / sub->order();
    if (!r.split) {
      j["liftable"] = false;
      j["certificate"] = lift_result_json(r)["certificate"];
      emit(cfg, j);
      return 0;
    }
    j["liftable"] = true;
    auto M = std::make_shared<CoinducedModule>(in.module, sub);
    EmbedOptions eopts;
    eopts.samples = cfg.samples;
    eopts.seed = cfg.seed;
    eopts.parallel = !cfg.serial;
    EmbeddingMap beta = build_embedding(in.ext, M, *r.split, eopts);
    VerifyReport report = verify_subextension(beta, eopts);
    OrderedJson checks;
    checks["hom_pairs"] = report.hom_pairs;
    checks["failures"] = report.failures;
    checks["epsilon_ok"] = report.epsilon_ok;
    checks["projection_ok"] = report.projection_ok;
    checks["injective"] = report.injective;
    j["checks"] = checks;
    j["seed"] = report.seed;
    emit(cfg, j);
    return report.all_ok() ? 0 : 1;
  }

  if (app.got_subcommand("complements")) {
    auto g = load_group(get("group"));
    auto mod = load_module(get("module"), g);
    auto classes = complement_classes(g, mod, solve_options(cfg));
    OrderedJson j;
    j["group"] = group_summary(*g);
    j["classes"] = static_cast<Int>(classes.size());
    const std::string sub_path = get("subgroup");
    if (!sub_path.empty()) {
      auto sub = load_group(sub_path);
      OrderedJson merges = OrderedJson::array();
      for (std::size_t i = 0; i < classes.size(); ++i) {
        auto res = aux_merge_test(g, sub, mod, classes[i], solve_options(cfg));
        OrderedJson entry;
        entry["class"] = static_cast<Int>(i);
        entry["is_class_of_g"] = classes[i].is_class_of_g;
        entry["m_conjugate_to_g"] = res.m_conjugate_to_g;
        entry["intersection_l_conjugate_to_h"] = res.intersection_l_conjugate_to_h;
        merges.push_back(entry);
      }
      j["merge"] = merges;
    }
    emit(cfg, j);
    return 0;
  }

  if (app.got_subcommand("verify-an")) {
    const int n = std::stoi(get("n"));
    CaseworkOptions opts;
    opts.parallel = !cfg.serial;
    opts.strategy = lift_options(cfg).strategy;
    auto report = verify_double_cover_liftability(n, cfg.data_dir, opts);
    OrderedJson j;
    j["n"] = report.n;
    OrderedJson entries = OrderedJson::array();
    for (const auto& e : report.entries) {
      OrderedJson entry;
      entry["name"] = e.name;
      entry["order"] = e.order;
      entry["index"] = e.index;
      entry["liftable"] = e.liftable;
      entry["strategy"] = e.strategy;
      if (e.liftable) {
        entry["verified_pairs"] = e.verified_pairs;
      } else if (!e.violating_pair.empty()) {
        entry["violating_pair"] = e.violating_pair;
      }
      if (cfg.timing) entry["millis"] = e.millis;
      entries.push_back(entry);
    }
    j["entries"] = entries;
    j["liftable_count"] = report.liftable_count;
    j["liftable"] = report.liftable_names;
    emit(cfg, j);
    return 0;
  }

  if (app.got_subcommand("psl2")) {
    const Int q = std::stoll(get("q"));
    CaseworkOptions opts;
    opts.parallel = !cfg.serial;
    auto r = psl2_criterion(q, opts);
    OrderedJson j;
    j["q"] = r.q;
    j["formula"] = r.formula_verdict;
    j["lift"] = r.lift_verdict;
    emit(cfg, j);
    return 0;
  }

  if (app.got_subcommand("min-index")) {
    const int n = std::stoi(get("n"));
    CaseworkOptions opts;
    opts.parallel = !cfg.serial;
    auto r = min_liftable_index_bound(n, cfg.data_dir, opts);
    OrderedJson j;
    j["n"] = r.n;
    j["upper_bound_for_f"] = r.bound;
    OrderedJson w;
    w["name"] = r.witness.name;
    w["generators"] = r.witness.generators;
    w["order"] = r.witness.order;
    w["index"] = r.witness.index;
    j["witness"] = w;
    j["note"] = r.label;
    emit(cfg, j);
    return 0;
  }

  throw InputError("no subcommand given; see --help");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact tools for subextension embeddings into split extensions of co-induced modules"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("COEX_BUDGET")) {
    cfg.budget = std::strtoll(env, nullptr, 10);
  }
  app.add_option("--output", cfg.output, "write the JSON report to a file instead of stdout");
  app.add_option("--seed", cfg.seed, "seed for sampled checks (default 0)");
  app.add_option("--samples", cfg.samples, "sample count for verification (default 1000)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--budget", cfg.budget, "dense matrix entry budget (env COEX_BUDGET)");
  app.add_flag("--serial", cfg.serial, "disable the OpenMP kernels");
  app.add_flag("--timing", cfg.timing, "include timings in reports (breaks byte-for-byte determinism)");
  app.add_option("--data-dir", cfg.data_dir, "catalog data directory (default data/v1)");
  app.add_option("--strategy", cfg.strategy, "lift strategy: auto | sign | linear");

  std::map<std::string, std::string> args{{"group", ""},    {"module", ""}, {"cocycle", ""},
                                          {"subgroup", ""}, {"dim", ""},    {"n", ""},
                                          {"q", ""}};

  auto* order = app.add_subcommand("order", "order of a permutation group");
  order->add_option("group", args["group"], "group JSON file")->required();

  auto* coh = app.add_subcommand("cohomology", "H^n(G, L) by integer linear algebra");
  coh->add_option("--group", args["group"])->required();
  coh->add_option("--module", args["module"])->required();
  coh->add_option("--dim", args["dim"], "dimension, 1 or 2")->required();

  auto* lift = app.add_subcommand("lift-test", "does the subgroup preimage split?");
  lift->add_option("--group", args["group"])->required();
  lift->add_option("--module", args["module"]);
  lift->add_option("--cocycle", args["cocycle"], "spin or a cocycle JSON file")->required();
  lift->add_option("--subgroup", args["subgroup"])->required();

  auto* embed = app.add_subcommand("embed", "build and verify the subextension embedding");
  embed->add_option("--group", args["group"])->required();
  embed->add_option("--module", args["module"]);
  embed->add_option("--cocycle", args["cocycle"], "spin or a cocycle JSON file")->required();
  embed->add_option("--subgroup", args["subgroup"])->required();

  auto* comp = app.add_subcommand("complements", "complement classes and the merge test");
  comp->add_option("--group", args["group"])->required();
  comp->add_option("--module", args["module"])->required();
  comp->add_option("--subgroup", args["subgroup"]);

  auto* van = app.add_subcommand("verify-an", "double-cover liftability over the A_n catalog");
  van->add_option("--n", args["n"], "4..9")->required();

  auto* psl = app.add_subcommand("psl2", "wreath criterion for PSL2(q)");
  psl->add_option("--q", args["q"], "odd prime power, 3..13")->required();

  auto* mini = app.add_subcommand("min-index", "upper bound for the minimal co-induction index");
  mini->add_option("--n", args["n"], "4..9")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return run(app, cfg, args);
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
