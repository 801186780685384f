#pragma once

// JSON schemas for groups, modules, cocycles and reports.
//
//   group:   {"degree": n, "generators": ["(1,2,3)", ...]}
//   module:  {"modulus": m, "rank": k,
//             "action": "trivial" | "permutation" | {"matrices": [[..], ...]}}
//            one row-major k x k matrix per group generator, entries in [0,m)
//   cocycle: [{"g": "<cycles>", "h": "<cycles>", "value": [residues]}, ...]
//            omitted pairs are zero
//
// Reports are emitted with ordered keys so identical inputs produce
// byte-identical output.

#include <memory>
#include <string>

#include "coex/cochain.hpp"
#include "coex/common.hpp"
#include "coex/gmodule.hpp"
#include "coex/perm.hpp"
#include "json.hpp"

namespace coex {

using OrderedJson = nlohmann::ordered_json;

GroupPtr load_group(const std::string& path);
std::shared_ptr<GModule> load_module(const std::string& path, GroupPtr G);
Cochain2 load_cocycle(const std::string& path, GroupPtr G, ModulePtr L);

OrderedJson group_summary(const PermGroup& g);

}  // namespace coex
