#include "coex/cochain.hpp"

#include <algorithm>
#include <atomic>

namespace coex {

// ---------------------------------------------------------------------------
// Cochain1

Cochain1::Cochain1(GroupPtr domain, ModulePtr mod)
    : domain_(std::move(domain)), mod_(std::move(mod)) {
  values_.assign(domain_->elements().size(), mod_->zero());
}

const Vec& Cochain1::eval(const Permutation& g) const {
  return values_[domain_->element_index(g)];
}

void Cochain1::set_index(int idx, Vec v) {
  if (idx == 0) {
    if (!vec_is_zero(v)) throw InputError("normalized cochain: value at identity must be 0");
    return;
  }
  for (auto& x : v) x = mod_reduce(x, mod_->modulus());
  values_[idx] = std::move(v);
}

// ---------------------------------------------------------------------------
// Cochain2

Cochain2::Cochain2(GroupPtr domain, ModulePtr mod, bool dense)
    : domain_(std::move(domain)), mod_(std::move(mod)), is_dense_(dense) {}

Cochain2 Cochain2::dense(GroupPtr domain, ModulePtr mod) {
  Cochain2 c(domain, mod, true);
  c.n_ = static_cast<int>(c.domain_->elements().size());
  c.table_.assign(static_cast<std::size_t>(c.n_) * c.n_, c.mod_->zero());
  return c;
}

Cochain2 Cochain2::lazy(GroupPtr domain, ModulePtr mod, Fn fn) {
  Cochain2 c(std::move(domain), std::move(mod), false);
  c.fn_ = std::move(fn);
  return c;
}

Vec Cochain2::eval_direct(const Permutation& g, const Permutation& h) const {
  if (g.is_identity() || h.is_identity()) return mod_->zero();
  if (is_dense_) {
    return table_[static_cast<std::size_t>(domain_->element_index(g)) * n_ +
                  domain_->element_index(h)];
  }
  return fn_(g, h);
}

Vec Cochain2::eval(const Permutation& g, const Permutation& h) const {
  if (g.is_identity() || h.is_identity()) return mod_->zero();
  if (is_dense_) return eval_direct(g, h);
  std::vector<int> key;
  key.reserve(g.images().size() * 2);
  key.insert(key.end(), g.images().begin(), g.images().end());
  key.insert(key.end(), h.images().begin(), h.images().end());
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Vec v = fn_(g, h);
  std::lock_guard<std::mutex> lock(memo_mutex_);
  if (memo_.size() < (1u << 20)) memo_.emplace(std::move(key), v);
  return v;
}

void Cochain2::set(const Permutation& g, const Permutation& h, Vec v) {
  if (!is_dense_) throw InputError("cannot set values of a lazy cochain");
  if (g.is_identity() || h.is_identity()) {
    if (!vec_is_zero(v)) throw InputError("normalized cochain: identity slots must be 0");
    return;
  }
  for (auto& x : v) x = mod_reduce(x, mod_->modulus());
  table_[static_cast<std::size_t>(domain_->element_index(g)) * n_ + domain_->element_index(h)] =
      std::move(v);
}

const Vec& Cochain2::table_at(int i, int j) const {
  if (!is_dense_) throw InputError("table_at on a lazy cochain");
  return table_[static_cast<std::size_t>(i) * n_ + j];
}

// ---------------------------------------------------------------------------
// Differentials

Cochain1 differential0(const Vec& mu, GroupPtr domain, ModulePtr mod) {
  Cochain1 out(domain, mod);
  const auto& elems = domain->elements();
  for (std::size_t i = 1; i < elems.size(); ++i) {
    out.set_index(static_cast<int>(i),
                  vec_sub(mod->act(mu, elems[i]), mu, mod->modulus()));
  }
  return out;
}

Cochain2 differential1(const Cochain1& nu) {
  auto domain = nu.domain_ptr();
  auto mod = nu.module_ptr();
  Cochain2 out = Cochain2::dense(domain, mod);
  const auto& elems = domain->elements();
  const Int m = mod->modulus();
  for (std::size_t i = 1; i < elems.size(); ++i) {
    for (std::size_t j = 1; j < elems.size(); ++j) {
      const Permutation prod = elems[i] * elems[j];
      Vec v = vec_sub(nu.eval_index(static_cast<int>(j)), nu.eval(prod), m);
      v = vec_add(v, mod->act(nu.eval_index(static_cast<int>(i)), elems[j]), m);
      out.set(elems[i], elems[j], std::move(v));
    }
  }
  return out;
}

Cochain3Eval differential2(const Cochain2& c) {
  Cochain3Eval out;
  const Cochain2* cp = &c;
  out.eval = [cp](const Permutation& g1, const Permutation& g2, const Permutation& g3) {
    const Int m = cp->module().modulus();
    Vec v = vec_sub(cp->eval(g2, g3), cp->eval(g1 * g2, g3), m);
    v = vec_add(v, cp->eval(g1, g2 * g3), m);
    v = vec_sub(v, cp->module().act(cp->eval(g1, g2), g3), m);
    return v;
  };
  return out;
}

// ---------------------------------------------------------------------------
// CochainIndexer

CochainIndexer::CochainIndexer(GroupPtr domain_in, int k_in, int n_in)
    : domain(std::move(domain_in)), k(k_in), n(n_in) {
  count = static_cast<Int>(domain->elements().size()) - 1;
}

Int CochainIndexer::size() const {
  Int s = k;
  for (int i = 0; i < n; ++i) s *= count;
  return s;
}

Vec CochainIndexer::flatten(const Cochain1& c) const {
  Vec out(size());
  for (Int e = 1; e <= count; ++e) {
    const Vec& v = c.eval_index(static_cast<int>(e));
    for (int i = 0; i < k; ++i) out[index1(e, i)] = v[i];
  }
  return out;
}

Vec CochainIndexer::flatten(const Cochain2& c) const {
  Vec out(size());
  const auto& elems = domain->elements();
  for (Int e1 = 1; e1 <= count; ++e1) {
    for (Int e2 = 1; e2 <= count; ++e2) {
      Vec v = c.eval_direct(elems[e1], elems[e2]);
      for (int i = 0; i < k; ++i) out[index2(e1, e2, i)] = v[i];
    }
  }
  return out;
}

Cochain1 CochainIndexer::unflatten1(const Vec& v, ModulePtr mod) const {
  Cochain1 out(domain, mod);
  for (Int e = 1; e <= count; ++e) {
    Vec val(k);
    for (int i = 0; i < k; ++i) val[i] = v[index1(e, i)];
    out.set_index(static_cast<int>(e), std::move(val));
  }
  return out;
}

Cochain2 CochainIndexer::unflatten2(const Vec& v, ModulePtr mod) const {
  Cochain2 out = Cochain2::dense(domain, mod);
  const auto& elems = domain->elements();
  for (Int e1 = 1; e1 <= count; ++e1) {
    for (Int e2 = 1; e2 <= count; ++e2) {
      Vec val(k);
      for (int i = 0; i < k; ++i) val[i] = v[index2(e1, e2, i)];
      out.set(elems[e1], elems[e2], std::move(val));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cocycle precheck

namespace {

void check_cocycle(const Cochain2& c, const PermGroup& domain, const SolveOptions& opts) {
  Cochain3Eval d2 = differential2(c);
  const Int order = domain.order();
  if (order * order * order <= 1000000) {
    const auto& elems = domain.elements(opts.element_limit);
    for (std::size_t i = 1; i < elems.size(); ++i) {
      for (std::size_t j = 1; j < elems.size(); ++j) {
        for (std::size_t l = 1; l < elems.size(); ++l) {
          if (!vec_is_zero(d2.eval(elems[i], elems[j], elems[l]))) {
            throw InputError("not a 2-cocycle: identity fails at (" + elems[i].cycles() +
                             ", " + elems[j].cycles() + ", " + elems[l].cycles() + ")");
          }
        }
      }
    }
    return;
  }
  Rng rng(opts.seed);
  for (int s = 0; s < opts.cocycle_check_samples; ++s) {
    const Permutation a = domain.random_element(rng);
    const Permutation b = domain.random_element(rng);
    const Permutation e = domain.random_element(rng);
    if (!vec_is_zero(d2.eval(a, b, e))) {
      throw InputError("not a 2-cocycle: identity fails at (" + a.cycles() + ", " +
                       b.cycles() + ", " + e.cycles() + ")");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// solve_coboundary

CoboundaryResult solve_coboundary(const Cochain2& c, const PermGroup& domain,
                                  const SolveOptions& opts) {
  if (!c.domain().contains_group(domain)) {
    throw InputError("solve_coboundary: domain is not a subgroup of the cochain domain");
  }
  if (!opts.skip_cocycle_check) check_cocycle(c, domain, opts);

  const Int m = c.module().modulus();
  const int k = c.module().rank();
  const auto& elems = domain.elements(opts.element_limit);
  const Int cnt = static_cast<Int>(elems.size()) - 1;

  CoboundaryResult res;
  res.unknowns = cnt * k;
  auto domain_ptr = std::make_shared<PermGroup>(domain);
  if (cnt == 0) {
    res.phi = Cochain1(domain_ptr, c.module_ptr());
    return res;
  }

  if (res.unknowns * res.unknowns > opts.dense_budget) {
    throw ResourceError("coboundary system of " + std::to_string(res.unknowns) +
                        " unknowns exceeds the dense budget");
  }

  // product table indices and action matrices, precomputed serially
  std::vector<int> prod(static_cast<std::size_t>(cnt + 1) * (cnt + 1));
  for (Int a = 1; a <= cnt; ++a) {
    for (Int b = 1; b <= cnt; ++b) {
      prod[a * (cnt + 1) + b] = domain.element_index(elems[a] * elems[b]);
    }
  }
  bool trivial_action = true;
  std::vector<std::vector<Vec>> rho(cnt + 1);
  for (Int e = 1; e <= cnt; ++e) {
    rho[e] = c.module().action_matrix(elems[e]);
    for (int i = 0; i < k && trivial_action; ++i) {
      for (int j = 0; j < k; ++j) {
        if (rho[e][i][j] != (i == j ? 1 : 0)) {
          trivial_action = false;
          break;
        }
      }
    }
  }

  const CochainIndexer idx(domain_ptr, k, 1);
  const Int total_pairs = cnt * cnt;

  // cocycle values are fetched once per pair via a deterministic pass
  auto c_at = [&](Int pair) {
    const Int a = 1 + pair / cnt;
    const Int b = 1 + pair % cnt;
    return c.eval_direct(elems[a], elems[b]);
  };

  // equation emitter: k scalar equations per pair
  auto emit_gf2 = [&](Int pair, Gf2System& sys) -> bool {
    const Int a = 1 + pair / cnt;
    const Int b = 1 + pair % cnt;
    const Int ab = prod[a * (cnt + 1) + b];
    const Vec rhs = c_at(pair);
    const std::size_t words = Gf2System::words_for(static_cast<int>(res.unknowns));
    for (int coord = 0; coord < k; ++coord) {
      std::vector<std::uint64_t> lhs(words, 0);
      auto toggle = [&](Int u) { lhs[u / 64] ^= 1ull << (u % 64); };
      toggle(idx.index1(b, coord));
      if (ab != 0) toggle(idx.index1(ab, coord));
      if (trivial_action) {
        toggle(idx.index1(a, coord));
      } else {
        for (int i = 0; i < k; ++i) {
          if (rho[b][i][coord] & 1) toggle(idx.index1(a, i));
        }
      }
      if (!sys.add(std::move(lhs), {static_cast<std::uint64_t>(rhs[coord] & 1)})) {
        res.violating_pair = {elems[a], elems[b]};
        return false;
      }
    }
    return true;
  };
  auto emit_gfp = [&](Int pair, GfpSystem& sys) -> bool {
    const Int a = 1 + pair / cnt;
    const Int b = 1 + pair % cnt;
    const Int ab = prod[a * (cnt + 1) + b];
    const Vec rhs = c_at(pair);
    for (int coord = 0; coord < k; ++coord) {
      std::vector<Int> lhs(res.unknowns, 0);
      lhs[idx.index1(b, coord)] += 1;
      if (ab != 0) lhs[idx.index1(ab, coord)] -= 1;
      for (int i = 0; i < k; ++i) lhs[idx.index1(a, i)] += rho[b][i][coord];
      if (!sys.add(std::move(lhs), {rhs[coord]})) {
        res.violating_pair = {elems[a], elems[b]};
        return false;
      }
    }
    return true;
  };

  // verification pass shared by every strategy; returns the first violating
  // pair index or -1. Deterministic: minimum over all violations.
  auto verify = [&](const std::vector<Vec>& phi) -> Int {
    std::atomic<Int> first{total_pairs};
    const Int chunk = 4096;
    const Int nchunks = (total_pairs + chunk - 1) / chunk;
    parallel_for(static_cast<std::size_t>(nchunks), opts.parallel, [&](std::size_t ci) {
      const Int lo = static_cast<Int>(ci) * chunk;
      const Int hi = std::min(lo + chunk, total_pairs);
      if (lo >= first.load(std::memory_order_relaxed)) return;
      for (Int p = lo; p < hi; ++p) {
        const Int a = 1 + p / cnt;
        const Int b = 1 + p % cnt;
        const Int ab = prod[a * (cnt + 1) + b];
        Vec lhs = phi[b];
        if (ab != 0) lhs = vec_sub(lhs, phi[ab], m);
        if (trivial_action) {
          lhs = vec_add(lhs, phi[a], m);
        } else {
          lhs = vec_add(lhs, c.module().act(phi[a], elems[b]), m);
        }
        if (lhs != c_at(p)) {
          Int cur = first.load(std::memory_order_relaxed);
          while (p < cur && !first.compare_exchange_weak(cur, p)) {
          }
          break;
        }
      }
    });
    const Int f = first.load();
    return f == total_pairs ? -1 : f;
  };

  auto make_phi_tables = [&](const std::function<Int(Int)>& coord_of) {
    std::vector<Vec> phi(cnt + 1, Vec(k, 0));
    for (Int e = 1; e <= cnt; ++e) {
      for (int i = 0; i < k; ++i) phi[e][i] = coord_of(idx.index1(e, i));
    }
    return phi;
  };
  auto finish = [&](std::vector<Vec> phi) {
    Cochain1 out(domain_ptr, c.module_ptr());
    for (Int e = 1; e <= cnt; ++e) out.set_index(static_cast<int>(e), phi[e]);
    res.phi = std::move(out);
    return res;
  };

  const auto mprimes = prime_factors(m);
  const bool m_prime = mprimes.size() == 1 && mprimes[0] == m;
  if (m_prime) {
    // prime modulus (GF(2) bitset specialization or general GF(p))
    if (m == 2) {
      Gf2System sys(static_cast<int>(res.unknowns), 1);
      Int next = 0;
      while (next < total_pairs && !sys.full_rank()) {
        if (!emit_gf2(next, sys)) {
          res.rank = sys.rank();
          return res;
        }
        ++next;
      }
      while (true) {
        const auto x = sys.solve(0);
        auto phi = make_phi_tables(
            [&](Int u) { return static_cast<Int>((x[u / 64] >> (u % 64)) & 1); });
        const Int bad = verify(phi);
        if (bad < 0) {
          res.rank = sys.rank();
          return finish(std::move(phi));
        }
        if (!emit_gf2(bad, sys)) {
          res.rank = sys.rank();
          return res;
        }
      }
    } else {
      GfpSystem sys(static_cast<int>(res.unknowns), 1, m);
      Int next = 0;
      while (next < total_pairs && !sys.full_rank()) {
        if (!emit_gfp(next, sys)) {
          res.rank = sys.rank();
          return res;
        }
        ++next;
      }
      while (true) {
        const auto x = sys.solve(0);
        auto phi = make_phi_tables([&](Int u) { return x[u]; });
        const Int bad = verify(phi);
        if (bad < 0) {
          res.rank = sys.rank();
          return finish(std::move(phi));
        }
        if (!emit_gfp(bad, sys)) {
          res.rank = sys.rank();
          return res;
        }
      }
    }
  }

  // composite modulus: homogenized kernel lattice over t, x coordinates
  if (total_pairs * k * (res.unknowns + 1) > opts.dense_budget * 4) {
    throw ResourceError("composite-modulus coboundary system exceeds the dense budget");
  }
  KernelLattice kernel(static_cast<int>(res.unknowns) + 1, m);
  for (Int p = 0; p < total_pairs; ++p) {
    const Int a = 1 + p / cnt;
    const Int b = 1 + p % cnt;
    const Int ab = prod[a * (cnt + 1) + b];
    const Vec rhs = c_at(p);
    for (int coord = 0; coord < k; ++coord) {
      std::vector<std::pair<int, Int>> entries;
      entries.emplace_back(0, mod_reduce(-rhs[coord], m));
      entries.emplace_back(1 + idx.index1(b, coord), 1);
      if (ab != 0) entries.emplace_back(1 + idx.index1(ab, coord), m - 1);
      for (int i = 0; i < k; ++i) {
        if (rho[b][i][coord] != 0) {
          entries.emplace_back(1 + idx.index1(a, i), rho[b][i][coord]);
        }
      }
      kernel.add_form_sparse(entries);
    }
  }
  const auto hnf = kernel.to_hnf();
  res.rank = 0;
  if (hnf.pivot(0) != 1) return res;  // no element with t = 1: unsolvable
  const auto& row0 = hnf.rows()[0];
  auto phi = make_phi_tables([&](Int u) { return mod_reduce(row0[u + 1], m); });
  if (verify(phi) >= 0) {
    throw InvariantError("composite coboundary solution failed verification");
  }
  return finish(std::move(phi));
}

std::optional<Vec> solve_principal(const Cochain1& c, const SolveOptions& opts) {
  const ModuleOps& mod = c.module();
  const Int m = mod.modulus();
  const int k = mod.rank();
  const auto& elems = c.domain().elements(opts.element_limit);

  auto verify = [&](const Vec& mu) {
    for (std::size_t e = 1; e < elems.size(); ++e) {
      if (vec_sub(mod.act(mu, elems[e]), mu, m) != c.eval_index(static_cast<int>(e))) {
        return false;
      }
    }
    return true;
  };

  const auto mprimes = prime_factors(m);
  if (mprimes.size() == 1 && mprimes[0] == m) {
    GfpSystem sys(k, 1, m);
    for (std::size_t e = 1; e < elems.size(); ++e) {
      const auto rho = mod.action_matrix(elems[e]);
      const Vec& rhs = c.eval_index(static_cast<int>(e));
      for (int coord = 0; coord < k; ++coord) {
        std::vector<Int> lhs(k);
        for (int i = 0; i < k; ++i) lhs[i] = rho[i][coord] - (i == coord ? 1 : 0);
        if (!sys.add(std::move(lhs), {rhs[coord]})) return std::nullopt;
      }
    }
    Vec mu = sys.solve(0);
    if (!verify(mu)) throw InvariantError("solve_principal: verification failed");
    return mu;
  }
  // composite modulus: homogenized kernel lattice over (t, mu)
  KernelLattice kernel(k + 1, m);
  for (std::size_t e = 1; e < elems.size(); ++e) {
    const auto rho = mod.action_matrix(elems[e]);
    const Vec& rhs = c.eval_index(static_cast<int>(e));
    for (int coord = 0; coord < k; ++coord) {
      std::vector<std::pair<int, Int>> entries;
      entries.emplace_back(0, mod_reduce(-rhs[coord], m));
      for (int i = 0; i < k; ++i) {
        const Int v = mod_reduce(rho[i][coord] - (i == coord ? 1 : 0), m);
        if (v != 0) entries.emplace_back(1 + i, v);
      }
      kernel.add_form_sparse(entries);
    }
  }
  const auto hnf = kernel.to_hnf();
  if (hnf.pivot(0) != 1) return std::nullopt;
  Vec mu(hnf.rows()[0].begin() + 1, hnf.rows()[0].end());
  for (auto& x : mu) x = mod_reduce(x, m);
  if (!verify(mu)) throw InvariantError("solve_principal: verification failed");
  return mu;
}

// ---------------------------------------------------------------------------
// cohomology_group

namespace {

// accumulate sparse entries, merging duplicate columns
void accum(std::vector<std::pair<int, Int>>& entries, Int col, Int val, Int m) {
  for (auto& [c, v] : entries) {
    if (c == col) {
      v = mod_reduce(v + val, m);
      return;
    }
  }
  entries.emplace_back(static_cast<int>(col), mod_reduce(val, m));
}

}  // namespace

std::vector<Vec> CohomologyGroup::all_classes(Int cap) const {
  if (order > cap) throw ResourceError("class enumeration exceeds cap");
  const Int n = coboundaries.dim();
  std::vector<Vec> out;
  out.reserve(order);
  std::vector<Int> digits(generators.size(), 0);
  while (true) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < generators.size(); ++i) {
      for (Int j = 0; j < n; ++j) v[j] = mod_reduce(v[j] + digits[i] * generators[i][j], modulus);
    }
    out.push_back(std::move(v));
    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < generator_orders[pos]) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
    if (digits.empty()) break;
  }
  return out;
}

CohomologyGroup cohomology_group(GroupPtr G, ModulePtr mod, int n, const SolveOptions& opts) {
  if (n != 1 && n != 2) throw InputError("cohomology dimension must be 1 or 2");
  const auto& elems = G->elements(opts.element_limit);
  const Int cnt = static_cast<Int>(elems.size()) - 1;
  const int k = mod->rank();
  const Int m = mod->modulus();

  Int N = k, P = k;
  for (int i = 0; i < n; ++i) N *= cnt;
  for (int i = 0; i < n + 1; ++i) P *= cnt;
  if (N * P > opts.dense_budget) {
    throw ResourceError("cochain complex of size " + std::to_string(N) + " x " +
                        std::to_string(P) + " exceeds the dense budget");
  }

  std::vector<int> prod(static_cast<std::size_t>(cnt + 1) * (cnt + 1));
  for (Int a = 1; a <= cnt; ++a) {
    for (Int b = 1; b <= cnt; ++b) {
      prod[a * (cnt + 1) + b] = G->element_index(elems[a] * elems[b]);
    }
  }
  std::vector<std::vector<Vec>> rho(cnt + 1);
  for (Int e = 1; e <= cnt; ++e) rho[e] = mod->action_matrix(elems[e]);

  const CochainIndexer idx(G, k, n);

  // --- cocycle lattice: kernel of d_n
  KernelLattice kernel(static_cast<int>(N), m);
  if (n == 1) {
    for (Int a = 1; a <= cnt; ++a) {
      for (Int b = 1; b <= cnt; ++b) {
        const Int ab = prod[a * (cnt + 1) + b];
        for (int coord = 0; coord < k; ++coord) {
          std::vector<std::pair<int, Int>> entries;
          accum(entries, idx.index1(b, coord), 1, m);
          if (ab != 0) accum(entries, idx.index1(ab, coord), -1, m);
          for (int i = 0; i < k; ++i) {
            if (rho[b][i][coord] != 0) accum(entries, idx.index1(a, i), rho[b][i][coord], m);
          }
          kernel.add_form_sparse(entries);
        }
      }
    }
  } else {
    for (Int a = 1; a <= cnt; ++a) {
      for (Int b = 1; b <= cnt; ++b) {
        const Int ab = prod[a * (cnt + 1) + b];
        for (Int e = 1; e <= cnt; ++e) {
          const Int be = prod[b * (cnt + 1) + e];
          for (int coord = 0; coord < k; ++coord) {
            std::vector<std::pair<int, Int>> entries;
            accum(entries, idx.index2(b, e, coord), 1, m);
            if (ab != 0) accum(entries, idx.index2(ab, e, coord), -1, m);
            if (be != 0) accum(entries, idx.index2(a, be, coord), 1, m);
            for (int i = 0; i < k; ++i) {
              if (rho[e][i][coord] != 0) {
                accum(entries, idx.index2(a, b, i), -rho[e][i][coord], m);
              }
            }
            kernel.add_form_sparse(entries);
          }
        }
      }
    }
  }
  LatticeHnf cocycles = kernel.to_hnf();

  // --- coboundary lattice: image of d_{n-1}
  LatticeHnf image(static_cast<int>(N), m);
  if (n == 1) {
    for (int i = 0; i < k; ++i) {
      Vec row(N, 0);
      for (Int e = 1; e <= cnt; ++e) {
        for (int coord = 0; coord < k; ++coord) {
          row[idx.index1(e, coord)] = mod_reduce(rho[e][i][coord] - (i == coord ? 1 : 0), m);
        }
      }
      image.insert(std::move(row));
    }
  } else {
    for (Int h = 1; h <= cnt; ++h) {
      for (int i = 0; i < k; ++i) {
        Vec row(N, 0);
        for (Int g1 = 1; g1 <= cnt; ++g1) {
          row[idx.index2(g1, h, i)] = mod_reduce(row[idx.index2(g1, h, i)] + 1, m);
        }
        for (Int g2 = 1; g2 <= cnt; ++g2) {
          if (g2 == h) continue;  // g1 = h g2^{-1} must be nonidentity
          // find g1 with g1*g2 = h
          const Permutation g1p = elems[h] * elems[g2].inverse();
          const Int g1 = G->element_index(g1p);
          if (g1 == 0) continue;
          row[idx.index2(g1, g2, i)] = mod_reduce(row[idx.index2(g1, g2, i)] - 1, m);
        }
        for (Int g2 = 1; g2 <= cnt; ++g2) {
          for (int coord = 0; coord < k; ++coord) {
            row[idx.index2(h, g2, coord)] =
                mod_reduce(row[idx.index2(h, g2, coord)] + rho[g2][i][coord], m);
          }
        }
        image.insert(std::move(row));
      }
    }
  }

  // d o d = 0 sanity: the image must sit inside the cocycle lattice
  for (const auto& row : image.rows()) {
    if (!cocycles.contains(row)) {
      throw InvariantError("differential squared is nonzero: image not inside kernel");
    }
  }

  // --- dual description of the image, then the relation lattice on the
  // kernel generators
  KernelLattice perp(static_cast<int>(N), m);
  for (const auto& row : image.rows()) perp.add_form(row);
  LatticeHnf iperp = perp.to_hnf();

  KernelLattice relations(static_cast<int>(N), m);
  for (const auto& f : iperp.rows()) {
    Vec t(N, 0);
    bool nonzero = false;
    for (Int i = 0; i < N; ++i) {
      Int acc = 0;
      for (Int j = 0; j < N; ++j) acc += cocycles.rows()[i][j] * f[j];
      t[i] = mod_reduce(acc, m);
      nonzero = nonzero || t[i] != 0;
    }
    if (nonzero) relations.add_form(t);
  }

  auto snf = snf_mod(relations.to_hnf().rows(), static_cast<int>(N), m);

  const Int expected = lattice_quotient_order(image, cocycles);
  if (snf.group_order != expected) {
    throw InvariantError("cohomology order mismatch: " + std::to_string(snf.group_order) +
                         " vs " + std::to_string(expected));
  }

  CohomologyGroup out{n,
                      m,
                      G,
                      mod,
                      snf.group_order,
                      snf.invariant_factors,
                      {},
                      {},
                      std::move(image),
                      std::move(cocycles)};
  for (std::size_t i = 0; i < snf.generators.size(); ++i) {
    Vec flat(N, 0);
    for (Int j = 0; j < N; ++j) {
      Int acc = 0;
      for (Int l = 0; l < N; ++l) acc += snf.generators[i][l] * out.cocycles.rows()[l][j];
      flat[j] = mod_reduce(acc, m);
    }
    out.generators.push_back(std::move(flat));
    out.generator_orders.push_back(snf.factor_orders[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// induced maps

Cochain1 induced_map(InducedKind kind, const Cochain1& c, const InducedContext& ctx) {
  if (!ctx.G->contains_group(*ctx.H)) throw InputError("induced_map: H is not a subgroup of G");
  switch (kind) {
    case InducedKind::Epsilon: {
      Cochain1 out(ctx.G, ctx.M);
      const auto& elems = ctx.G->elements();
      for (std::size_t e = 1; e < elems.size(); ++e) {
        out.set_index(static_cast<int>(e), ctx.M->epsilon(c.eval_index(static_cast<int>(e))));
      }
      return out;
    }
    case InducedKind::Alpha: {
      Cochain1 out(ctx.H, c.module_ptr());
      const auto& elems = ctx.H->elements();
      for (std::size_t e = 1; e < elems.size(); ++e) {
        out.set_index(static_cast<int>(e), c.eval(elems[e]));
      }
      return out;
    }
    case InducedKind::Shapiro: {
      Cochain1 out(ctx.H, ctx.L);
      const auto& elems = ctx.H->elements();
      for (std::size_t e = 1; e < elems.size(); ++e) {
        out.set_index(static_cast<int>(e), ctx.M->evaluate(c.eval(elems[e])));
      }
      return out;
    }
  }
  throw InvariantError("unreachable induced kind");
}

Cochain2 induced_map(InducedKind kind, const Cochain2& c, const InducedContext& ctx) {
  if (!ctx.G->contains_group(*ctx.H)) throw InputError("induced_map: H is not a subgroup of G");
  switch (kind) {
    case InducedKind::Epsilon: {
      Cochain2 out = Cochain2::dense(ctx.G, ctx.M);
      const auto& elems = ctx.G->elements();
      for (std::size_t i = 1; i < elems.size(); ++i) {
        for (std::size_t j = 1; j < elems.size(); ++j) {
          out.set(elems[i], elems[j], ctx.M->epsilon(c.eval_direct(elems[i], elems[j])));
        }
      }
      return out;
    }
    case InducedKind::Alpha: {
      Cochain2 out = Cochain2::dense(ctx.H, c.module_ptr());
      const auto& elems = ctx.H->elements();
      for (std::size_t i = 1; i < elems.size(); ++i) {
        for (std::size_t j = 1; j < elems.size(); ++j) {
          out.set(elems[i], elems[j], c.eval_direct(elems[i], elems[j]));
        }
      }
      return out;
    }
    case InducedKind::Shapiro: {
      Cochain2 out = Cochain2::dense(ctx.H, ctx.L);
      const auto& elems = ctx.H->elements();
      for (std::size_t i = 1; i < elems.size(); ++i) {
        for (std::size_t j = 1; j < elems.size(); ++j) {
          out.set(elems[i], elems[j], ctx.M->evaluate(c.eval_direct(elems[i], elems[j])));
        }
      }
      return out;
    }
  }
  throw InvariantError("unreachable induced kind");
}

// ---------------------------------------------------------------------------
// ExtensionData

ExtensionData::ExtensionData(GroupPtr G, ModulePtr L, Cochain2 delta, const SolveOptions& opts)
    : G_(std::move(G)), L_(std::move(L)), delta_(std::move(delta)) {
  check_cocycle(delta_, *G_, opts);
}

ExtensionData::Elem ExtensionData::mult(const Elem& a, const Elem& b) const {
  const Int m = L_->modulus();
  Vec l = vec_add(L_->act(a.l, b.g), b.l, m);
  l = vec_add(l, delta_.eval_direct(a.g, b.g), m);
  return {std::move(l), a.g * b.g};
}

ExtensionData::Elem ExtensionData::inv(const Elem& a) const {
  const Int m = L_->modulus();
  const Permutation gi = a.g.inverse();
  Vec l = vec_neg(L_->act(a.l, gi), m);
  l = vec_sub(l, delta_.eval_direct(a.g, gi), m);
  return {std::move(l), gi};
}

Int ExtensionData::order() const {
  __int128 size = 1;
  for (int i = 0; i < L_->rank(); ++i) {
    size *= L_->modulus();
    if (size > static_cast<__int128>(INT64_MAX)) throw ResourceError("extension order overflow");
  }
  size *= G_->order();
  if (size > static_cast<__int128>(INT64_MAX)) throw ResourceError("extension order overflow");
  return static_cast<Int>(size);
}

Cochain2 extract_cocycle(const ExtensionData& E) {
  auto G = E.base_ptr();
  Cochain2 out = Cochain2::dense(G, E.kernel_ptr());
  const auto& elems = G->elements();
  for (std::size_t i = 1; i < elems.size(); ++i) {
    for (std::size_t j = 1; j < elems.size(); ++j) {
      out.set(elems[i], elems[j], E.mult(E.section(elems[i]), E.section(elems[j])).l);
    }
  }
  return out;
}

}  // namespace coex
