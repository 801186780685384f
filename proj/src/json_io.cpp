#include "coex/json_io.hpp"

#include <fstream>

namespace coex {

namespace {

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  try {
    nlohmann::json doc;
    in >> doc;
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace

GroupPtr load_group(const std::string& path) {
  const auto doc = parse_file(path);
  if (!doc.contains("degree") || !doc.contains("generators")) {
    throw InputError("group file needs \"degree\" and \"generators\": " + path);
  }
  const int degree = doc.at("degree").get<int>();
  if (degree < 1 || degree > 64) throw InputError("group degree out of range: " + path);
  std::vector<Permutation> gens;
  for (const auto& s : doc.at("generators")) {
    gens.push_back(Permutation::parse_cycles(s.get<std::string>(), degree));
  }
  return std::make_shared<PermGroup>(degree, gens);
}

std::shared_ptr<GModule> load_module(const std::string& path, GroupPtr G) {
  const auto doc = parse_file(path);
  const Int m = doc.at("modulus").get<Int>();
  const int k = doc.at("rank").get<int>();
  if (m < 2) throw InputError("module modulus must be >= 2: " + path);
  if (k < 1 || k > 256) throw InputError("module rank out of range: " + path);
  const auto& action = doc.at("action");
  std::shared_ptr<GModule> out;
  if (action.is_string() && action.get<std::string>() == "trivial") {
    out = std::make_shared<GModule>(GModule::trivial(G, m, k));
  } else if (action.is_string() && action.get<std::string>() == "permutation") {
    if (k != G->degree()) {
      throw InputError("permutation action requires rank = degree: " + path);
    }
    out = std::make_shared<GModule>(GModule::permutation(G, m));
  } else if (action.is_object() && action.contains("matrices")) {
    std::vector<std::vector<Vec>> mats;
    for (const auto& flat : action.at("matrices")) {
      if (static_cast<int>(flat.size()) != k * k) {
        throw InputError("matrix size must be rank x rank, row-major: " + path);
      }
      std::vector<Vec> rows(k, Vec(k));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) rows[i][j] = flat[i * k + j].get<Int>();
      }
      mats.push_back(std::move(rows));
    }
    if (mats.size() != G->generators().size()) {
      throw InputError("need one matrix per group generator: " + path);
    }
    out = std::make_shared<GModule>(GModule::matrices(G, m, std::move(mats)));
  } else {
    throw InputError("module action must be \"trivial\", \"permutation\" or {matrices}: " + path);
  }
  Rng rng(0);
  out->validate(rng);  // sampled consistency check, deterministic
  return out;
}

Cochain2 load_cocycle(const std::string& path, GroupPtr G, ModulePtr L) {
  const auto doc = parse_file(path);
  if (!doc.is_array()) throw InputError("cocycle file must be a JSON array: " + path);
  Cochain2 out = Cochain2::dense(G, L);
  for (const auto& rec : doc) {
    const Permutation g = Permutation::parse_cycles(rec.at("g").get<std::string>(), G->degree());
    const Permutation h = Permutation::parse_cycles(rec.at("h").get<std::string>(), G->degree());
    Vec value;
    for (const auto& v : rec.at("value")) value.push_back(v.get<Int>());
    if (static_cast<int>(value.size()) != L->rank()) {
      throw InputError("cocycle value rank mismatch in " + path);
    }
    if (!G->contains(g) || !G->contains(h)) {
      throw InputError("cocycle entry outside the group in " + path);
    }
    out.set(g, h, std::move(value));
  }
  return out;
}

OrderedJson group_summary(const PermGroup& g) {
  OrderedJson j;
  j["degree"] = g.degree();
  j["order"] = g.order();
  OrderedJson gens = OrderedJson::array();
  for (const auto& p : g.generators()) gens.push_back(p.cycles());
  j["generators"] = gens;
  return j;
}

}  // namespace coex
