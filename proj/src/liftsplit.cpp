#include "coex/liftsplit.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace coex {

namespace {

bool kernel_is_central_z2(const ExtensionData& S, const PermGroup& H) {
  const ModuleOps& L = S.kernel_module();
  if (L.modulus() != 2 || L.rank() != 1) return false;
  for (const auto& h : H.generators()) {
    const auto mat = L.action_matrix(h);
    if (mat[0][0] != 1) return false;
  }
  return true;
}

// Exhaustive d phi = delta check over H x H; returns the number of verified
// pairs, throws InvariantError on any mismatch.
Int verify_splitting(const ExtensionData& S, const PermGroup::Bfs& bfs,
                     const std::vector<Int>& phi_bits, const Cochain2& delta,
                     bool trivial_z2, const LiftOptions& opts) {
  const Int n = static_cast<Int>(bfs.elems.size());
  const Int total = (n - 1) * (n - 1);
  std::atomic<bool> ok{true};
  const Int chunk = 2048;
  const Int nchunks = (total + chunk - 1) / chunk;
  const Int m = delta.module().modulus();
  parallel_for(static_cast<std::size_t>(nchunks), opts.parallel, [&](std::size_t ci) {
    if (!ok.load(std::memory_order_relaxed)) return;
    const Int lo = static_cast<Int>(ci) * chunk;
    const Int hi = std::min(lo + chunk, total);
    for (Int p = lo; p < hi; ++p) {
      const Int a = 1 + p / (n - 1);
      const Int b = 1 + p % (n - 1);
      const Permutation prod = bfs.elems[a] * bfs.elems[b];
      const auto it = bfs.index.find(prod.images());
      const Int ab = it->second;
      Int lhs;
      if (trivial_z2) {
        lhs = phi_bits[a] ^ phi_bits[b] ^ (ab == 0 ? 0 : phi_bits[ab]);
      } else {
        lhs = mod_reduce(phi_bits[b] - (ab == 0 ? 0 : phi_bits[ab]) +
                             delta.module().act({phi_bits[a]}, bfs.elems[b])[0],
                         m);
      }
      if (lhs != delta.eval_direct(bfs.elems[a], bfs.elems[b])[0]) {
        ok.store(false, std::memory_order_relaxed);
        return;
      }
    }
  });
  if (!ok.load()) {
    throw InvariantError("splitting verification failed: d phi != delta on H x H");
  }
  return total;
}

LiftResult lift_sign_search(const ExtensionData& S, const PermGroup& H,
                            const LiftOptions& opts) {
  LiftResult res;
  res.strategy = "sign-search";
  const Cochain2& delta = S.cocycle();
  const auto& bfs = H.bfs(opts.element_limit);
  const Int n = static_cast<Int>(bfs.elems.size());
  const auto& gens = H.generators();
  const int t = static_cast<int>(gens.size());
  res.unknowns = t;

  // delta on tree edges and on all closure edges (h, gen); independent
  // evaluations, sharded across threads
  std::vector<Int> treeval(n, 0);
  parallel_for(static_cast<std::size_t>(n - 1), opts.parallel, [&](std::size_t i) {
    const Int j = static_cast<Int>(i) + 1;
    treeval[j] = delta.eval_direct(bfs.elems[bfs.parent[j]], gens[bfs.gen[j]])[0];
  });
  std::vector<Int> closureval(static_cast<std::size_t>(n) * t, 0);
  std::vector<int> prodidx(static_cast<std::size_t>(n) * t, 0);
  parallel_for(static_cast<std::size_t>(n), opts.parallel, [&](std::size_t j) {
    for (int gi = 0; gi < t; ++gi) {
      const Permutation prod = bfs.elems[j] * gens[gi];
      prodidx[j * t + gi] = bfs.index.find(prod.images())->second;
      if (j > 0) closureval[j * t + gi] = delta.eval_direct(bfs.elems[j], gens[gi])[0];
    }
  });

  std::vector<Int> phi(n, 0);
  for (unsigned eps = 0; eps < (1u << t); ++eps) {
    phi[0] = 0;
    for (Int j = 1; j < n; ++j) {
      phi[j] = phi[bfs.parent[j]] ^ ((eps >> bfs.gen[j]) & 1) ^ treeval[j];
    }
    bool good = true;
    for (Int j = 0; j < n && good; ++j) {
      for (int gi = 0; gi < t; ++gi) {
        const Int want = phi[prodidx[j * t + gi]];
        if ((phi[j] ^ ((eps >> gi) & 1) ^ closureval[j * t + gi]) != want) {
          good = false;
          if (eps == 0 && !res.violating_pair) {
            res.violating_pair = {bfs.elems[j], gens[gi]};
          }
          break;
        }
      }
    }
    if (!good) continue;

    auto Hp = std::make_shared<PermGroup>(H);
    Cochain1 out(Hp, S.kernel_ptr());
    for (Int j = 1; j < n; ++j) out.set_index(static_cast<int>(j), {phi[j]});
    SplittingData split{Hp, std::move(out), "sign-search", 0};
    if (n - 1 <= opts.verify_exhaustive_limit) {
      split.verified_pairs = verify_splitting(S, bfs, phi, delta, true, opts);
    }
    res.split = std::move(split);
    return res;
  }
  return res;
}

LiftResult lift_linear(const ExtensionData& S, const PermGroup& H, const LiftOptions& opts) {
  LiftResult res;
  res.strategy = "linear";
  SolveOptions sopts;
  sopts.dense_budget = opts.dense_budget;
  sopts.parallel = opts.parallel;
  sopts.element_limit = opts.element_limit;
  sopts.skip_cocycle_check = true;  // verified when the extension was built
  auto r = solve_coboundary(S.cocycle(), H, sopts);
  res.unknowns = r.unknowns;
  res.rank = r.rank;
  res.violating_pair = r.violating_pair;
  if (r.phi) {
    auto Hp = std::make_shared<PermGroup>(H);
    SplittingData split{Hp, std::move(*r.phi), "linear", 0};
    // the solver verified d phi = c over every pair already
    const Int n = static_cast<Int>(H.order());
    split.verified_pairs = (n - 1) * (n - 1);
    res.split = std::move(split);
  }
  return res;
}

}  // namespace

LiftResult lift_test(const ExtensionData& S, const PermGroup& H, const LiftOptions& opts) {
  if (!S.base().contains_group(H)) throw InputError("lift_test: H is not a subgroup of G");
  const bool sign_ok = kernel_is_central_z2(S, H) &&
                       static_cast<int>(H.generators().size()) <= opts.max_signsearch_gens;
  switch (opts.strategy) {
    case LiftOptions::Strategy::SignSearch:
      if (!sign_ok) {
        throw InputError("sign-search strategy requires a central Z/2 kernel and few generators");
      }
      return lift_sign_search(S, H, opts);
    case LiftOptions::Strategy::Linear:
      return lift_linear(S, H, opts);
    case LiftOptions::Strategy::Auto:
      return sign_ok ? lift_sign_search(S, H, opts) : lift_linear(S, H, opts);
  }
  throw InvariantError("unreachable strategy");
}

// ---------------------------------------------------------------------------
// Oracles

std::vector<int> FiniteGroupOracle::inverses() const {
  std::vector<int> inv(size, -1);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (mult(a, b) == id) {
        inv[a] = b;
        break;
      }
    }
  }
  return inv;
}

FiniteGroupOracle oracle_from_permgroup(const PermGroup& G) {
  const auto& bfs = G.bfs();
  auto bfs_ptr = std::make_shared<PermGroup>(G);
  FiniteGroupOracle o;
  o.size = static_cast<int>(bfs.elems.size());
  o.id = 0;
  for (const auto& g : G.generators()) o.gens.push_back(G.element_index(g));
  o.mult = [bfs_ptr](int a, int b) {
    const auto& bb = bfs_ptr->bfs();
    return bb.index.find((bb.elems[a] * bb.elems[b]).images())->second;
  };
  return o;
}

namespace {

struct ExtensionOracleData {
  const ExtensionData* S;
  std::shared_ptr<PermGroup> H;
  Int m = 0;
  int k = 0;
  Int lcount = 0;

  Int l_index(const Vec& l) const {
    Int idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * m + l[i];
    return idx;
  }
  Vec l_vec(Int idx) const {
    Vec l(k);
    for (int i = 0; i < k; ++i) {
      l[i] = idx % m;
      idx /= m;
    }
    return l;
  }
};

}  // namespace

FiniteGroupOracle oracle_from_extension(const ExtensionData& S, const PermGroup& H) {
  auto data = std::make_shared<ExtensionOracleData>();
  data->S = &S;
  data->H = std::make_shared<PermGroup>(H);
  data->m = S.kernel_module().modulus();
  data->k = S.kernel_module().rank();
  data->lcount = 1;
  for (int i = 0; i < data->k; ++i) {
    data->lcount *= data->m;
    if (data->lcount > 5000) throw ResourceError("extension kernel too large for an oracle");
  }
  const Int size = data->lcount * H.order();
  if (size > 5000) throw ResourceError("extension preimage exceeds the oracle size guard");

  FiniteGroupOracle o;
  o.size = static_cast<int>(size);
  o.id = 0;
  const Int horder = H.order();
  o.mult = [data, horder](int a, int b) {
    const auto& bfs = data->H->bfs();
    ExtensionData::Elem ea{data->l_vec(a / horder), bfs.elems[a % horder]};
    ExtensionData::Elem eb{data->l_vec(b / horder), bfs.elems[b % horder]};
    auto prod = data->S->mult(ea, eb);
    const Int hidx = bfs.index.find(prod.g.images())->second;
    return static_cast<int>(data->l_index(prod.l) * horder + hidx);
  };
  // generators: lifts of the subgroup generators plus the kernel units
  for (const auto& h : H.generators()) {
    o.gens.push_back(static_cast<int>(H.element_index(h)));
  }
  for (int i = 0; i < data->k; ++i) {
    Vec unit(data->k, 0);
    unit[i] = 1;
    o.gens.push_back(static_cast<int>(data->l_index(unit) * horder));
  }
  return o;
}

std::vector<int> extension_kernel_indices(const ExtensionData& S, const PermGroup& H) {
  Int lcount = 1;
  for (int i = 0; i < S.kernel_module().rank(); ++i) lcount *= S.kernel_module().modulus();
  std::vector<int> out;
  const Int horder = H.order();
  for (Int l = 0; l < lcount; ++l) out.push_back(static_cast<int>(l * horder));
  return out;
}

std::optional<std::vector<int>> complement_search(const FiniteGroupOracle& E,
                                                  const std::vector<int>& N) {
  if (E.size > 5000) throw ResourceError("complement_search: group exceeds the size guard");
  if (N.empty() || N[0] != E.id) throw InputError("complement_search: N must contain the identity");
  const auto inv = E.inverses();
  std::set<int> nset(N.begin(), N.end());
  // N abelian and normal
  for (int a : N) {
    for (int b : N) {
      if (E.mult(a, b) != E.mult(b, a)) throw InputError("complement_search: N is not abelian");
    }
  }
  for (int g = 0; g < E.size; ++g) {
    for (int a : N) {
      if (!nset.count(E.mult(E.mult(g, a), inv[g]))) {
        throw InputError("complement_search: N is not normal");
      }
    }
  }
  if (static_cast<int>(N.size()) == E.size) return std::vector<int>{E.id};

  // quotient cosets keyed by their minimal element
  std::vector<int> coset_key(E.size, -1);
  for (int e = 0; e < E.size; ++e) {
    if (coset_key[e] >= 0) continue;
    int key = e;
    std::vector<int> members;
    for (int a : N) {
      const int x = E.mult(e, a);
      members.push_back(x);
      key = std::min(key, x);
    }
    for (int x : members) coset_key[x] = key;
  }
  const int target = E.size / static_cast<int>(N.size());

  // prune generators to a small set that still generates the quotient
  std::vector<int> pruned;
  {
    std::set<int> qclosure{coset_key[E.id]};
    for (int g : E.gens) {
      if (qclosure.count(coset_key[g])) continue;
      pruned.push_back(g);
      // close under the current pruned set
      std::vector<int> frontier{E.id};
      std::set<int> seen{E.id};
      qclosure.clear();
      qclosure.insert(coset_key[E.id]);
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (int p : pruned) {
          const int x = E.mult(frontier[i], p);
          if (seen.insert(x).second) frontier.push_back(x);
          qclosure.insert(coset_key[x]);
        }
      }
      if (static_cast<int>(qclosure.size()) == target) break;
    }
  }
  const int t = static_cast<int>(pruned.size());
  double combos = 1;
  for (int i = 0; i < t; ++i) combos *= static_cast<double>(N.size());
  if (combos > 1e6) throw ResourceError("complement_search: too many lift choices");

  std::vector<int> choice(t, 0);
  while (true) {
    // candidate generators: pruned[i] * N[choice[i]]
    std::vector<int> cand;
    for (int i = 0; i < t; ++i) cand.push_back(E.mult(pruned[i], N[choice[i]]));
    // closure
    std::vector<int> frontier{E.id};
    std::set<int> seen{E.id};
    bool overflow = false;
    for (std::size_t i = 0; i < frontier.size() && !overflow; ++i) {
      for (int c : cand) {
        const int x = E.mult(frontier[i], c);
        if (seen.insert(x).second) {
          frontier.push_back(x);
          if (static_cast<int>(seen.size()) > target) {
            overflow = true;
            break;
          }
        }
      }
    }
    if (!overflow && static_cast<int>(seen.size()) == target) {
      bool trivial_meet = true;
      for (int x : seen) {
        if (x != E.id && nset.count(x)) {
          trivial_meet = false;
          break;
        }
      }
      if (trivial_meet) return std::vector<int>(seen.begin(), seen.end());
    }
    // next choice vector
    int pos = 0;
    while (pos < t) {
      if (++choice[pos] < static_cast<int>(N.size())) break;
      choice[pos] = 0;
      ++pos;
    }
    if (pos == t) break;
    if (t == 0) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Subgroup enumeration

std::vector<Subgroup> enumerate_subgroups(const PermGroup& G, Int order_limit) {
  if (G.order() > order_limit) {
    throw ResourceError("subgroup enumeration guarded at order " + std::to_string(order_limit));
  }
  const auto& bfs = G.bfs();
  const int n = static_cast<int>(bfs.elems.size());
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      mult[a][b] = bfs.index.find((bfs.elems[a] * bfs.elems[b]).images())->second;
    }
  }

  auto closure = [&](std::vector<int> seed) {
    std::set<int> seen(seed.begin(), seed.end());
    seen.insert(0);
    std::vector<int> frontier(seen.begin(), seen.end());
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (int s : seed) {
        const int x = mult[frontier[i]][s];
        if (seen.insert(x).second) frontier.push_back(x);
      }
    }
    return std::vector<int>(seen.begin(), seen.end());
  };

  std::set<std::vector<int>> found;
  found.insert({0});
  // cyclic subgroups
  for (int e = 1; e < n; ++e) found.insert(closure({e}));
  // pairwise joins until stable; each round scans the current list fully
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> list(found.begin(), found.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        std::vector<int> seed = list[i];
        seed.insert(seed.end(), list[j].begin(), list[j].end());
        auto joined = closure(seed);
        if (found.insert(joined).second) changed = true;
      }
    }
  }

  std::vector<std::vector<int>> ordered(found.begin(), found.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Subgroup> out;
  for (auto& idxs : ordered) {
    std::vector<Permutation> gens;
    for (int i : idxs) {
      if (i != 0) gens.push_back(bfs.elems[i]);
    }
    Subgroup s;
    s.element_indices = std::move(idxs);
    s.group = std::make_shared<PermGroup>(G.degree(), gens);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace coex
