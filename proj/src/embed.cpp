#include "coex/embed.hpp"

#include <algorithm>
#include <atomic>

namespace coex {

EmbeddingMap::EmbeddingMap(std::shared_ptr<const ExtensionData> S,
                           std::shared_ptr<const CoinducedModule> M, SplittingData split)
    : S_(std::move(S)), M_(std::move(M)), split_(std::move(split)) {
  if (S_->kernel_module().modulus() != M_->modulus() ||
      S_->kernel_module().rank() != M_->base().rank()) {
    throw InputError("embedding: kernel module does not match the co-induced base");
  }
  if (!M_->subgroup().contains_group(*split_.subgroup) ||
      !split_.subgroup->contains_group(M_->subgroup())) {
    throw InputError("embedding: splitting subgroup differs from the co-induction subgroup");
  }
}

Vec EmbeddingMap::sigma_l(const Permutation& x) const {
  const auto [i, h] = M_->transversal().factor(x);
  const Permutation& rep = M_->transversal().reps()[i];
  // sigma(x) = (0, rep) * (-phi(h), h)
  ExtensionData::Elem kappa{vec_neg(split_.phi.eval(h), S_->kernel_module().modulus()), h};
  return S_->mult(S_->section(rep), kappa).l;
}

SemidirectElem EmbeddingMap::beta(const ExtensionData::Elem& s) const {
  const int k = S_->kernel_module().rank();
  const int n = M_->index();
  Vec f(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    const Permutation& rep = M_->transversal().reps()[i];
    const Permutation gx = s.g * rep;
    ExtensionData::Elem sig_gx{sigma_l(gx), gx};
    ExtensionData::Elem sig_x{sigma_l(rep), rep};
    ExtensionData::Elem val = S_->mult(S_->mult(S_->inv(sig_gx), s), sig_x);
    if (!val.g.is_identity()) {
      throw InvariantError("embedding: f_s value escaped the kernel");
    }
    std::copy(val.l.begin(), val.l.end(), f.begin() + static_cast<std::ptrdiff_t>(i) * k);
  }
  return {std::move(f), s.g};
}

SemidirectElem EmbeddingMap::target_identity() const {
  return {M_->zero(), Permutation(S_->base().degree())};
}

SemidirectElem EmbeddingMap::target_mult(const SemidirectElem& a, const SemidirectElem& b) const {
  return {vec_add(M_->act(a.f, b.g), b.f, M_->modulus()), a.g * b.g};
}

bool EmbeddingMap::target_is_identity(const SemidirectElem& e) const {
  return e.g.is_identity() && vec_is_zero(e.f);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ExtensionData::Elem> extension_generators(const ExtensionData& S) {
  std::vector<ExtensionData::Elem> gens;
  for (const auto& g : S.base().generators()) gens.push_back(S.section(g));
  const int k = S.kernel_module().rank();
  for (int i = 0; i < k; ++i) {
    Vec unit(k, 0);
    unit[i] = 1;
    gens.push_back(S.iota(std::move(unit)));
  }
  return gens;
}

ExtensionData::Elem random_extension_elem(const ExtensionData& S, Rng& rng) {
  Vec l(S.kernel_module().rank());
  for (auto& x : l) x = rng.residue(S.kernel_module().modulus());
  return {std::move(l), S.base().random_element(rng)};
}

}  // namespace

VerifyReport verify_subextension(const EmbeddingMap& beta, const EmbedOptions& opts) {
  const ExtensionData& S = beta.source();
  VerifyReport report;
  report.seed = opts.seed;
  report.samples = opts.samples;

  std::vector<std::pair<ExtensionData::Elem, ExtensionData::Elem>> pairs;
  const auto gens = extension_generators(S);
  for (const auto& a : gens) {
    for (const auto& b : gens) pairs.emplace_back(a, b);
  }
  if (opts.exhaustive) {
    const Int total = S.order();
    if (total > 5000) throw ResourceError("exhaustive pair verification guarded at |S| <= 5000");
    std::vector<ExtensionData::Elem> all;
    const auto& elems = S.base().elements();
    const Int m = S.kernel_module().modulus();
    const int k = S.kernel_module().rank();
    Int lcount = 1;
    for (int i = 0; i < k; ++i) lcount *= m;
    for (Int li = 0; li < lcount; ++li) {
      Vec l(k);
      Int rest = li;
      for (int i = 0; i < k; ++i) {
        l[i] = rest % m;
        rest /= m;
      }
      for (const auto& g : elems) all.push_back({l, g});
    }
    for (const auto& a : all) {
      for (const auto& b : all) pairs.emplace_back(a, b);
    }
  } else {
    Rng rng(opts.seed);
    for (Int t = 0; t < opts.samples; ++t) {
      pairs.emplace_back(random_extension_elem(S, rng), random_extension_elem(S, rng));
    }
  }

  report.hom_pairs = static_cast<Int>(pairs.size());
  std::atomic<Int> failures{0};
  parallel_for(pairs.size(), opts.parallel, [&](std::size_t i) {
    const auto& [a, b] = pairs[i];
    const SemidirectElem lhs = beta.target_mult(beta.beta(a), beta.beta(b));
    const SemidirectElem rhs = beta.beta(S.mult(a, b));
    if (!(lhs == rhs)) failures.fetch_add(1, std::memory_order_relaxed);
  });
  report.failures = failures.load();

  // epsilon compatibility on the kernel units
  const int k = S.kernel_module().rank();
  report.epsilon_ok = true;
  for (int i = 0; i < k; ++i) {
    Vec unit(k, 0);
    unit[i] = 1;
    const SemidirectElem img = beta.beta(S.iota(unit));
    if (!img.g.is_identity() || img.f != beta.target_module().epsilon(unit)) {
      report.epsilon_ok = false;
    }
  }

  // projection compatibility on the sampled pairs
  report.projection_ok = true;
  for (const auto& [a, b] : pairs) {
    if (!(beta.beta(a).g == a.g) || !(beta.beta(b).g == b.g)) {
      report.projection_ok = false;
      break;
    }
  }

  // injectivity through the kernel candidates: beta(iota(l)) = 1 forces l = 0
  report.injective = true;
  {
    const Int m = S.kernel_module().modulus();
    Int lcount = 1;
    bool exhaustive_kernel = true;
    for (int i = 0; i < k; ++i) {
      lcount *= m;
      if (lcount > 4096) {
        exhaustive_kernel = false;
        break;
      }
    }
    if (exhaustive_kernel) {
      for (Int li = 1; li < lcount; ++li) {
        Vec l(k);
        Int rest = li;
        for (int i = 0; i < k; ++i) {
          l[i] = rest % m;
          rest /= m;
        }
        if (beta.target_is_identity(beta.beta(S.iota(l)))) {
          report.injective = false;
          break;
        }
      }
    } else {
      Rng rng(opts.seed + 1);
      for (int t = 0; t < 200 && report.injective; ++t) {
        Vec l(k);
        for (auto& x : l) x = rng.residue(m);
        if (!vec_is_zero(l) && beta.target_is_identity(beta.beta(S.iota(l)))) {
          report.injective = false;
        }
      }
    }
  }
  return report;
}

EmbeddingMap build_embedding(std::shared_ptr<const ExtensionData> S,
                             std::shared_ptr<const CoinducedModule> M,
                             const SplittingData& split, const EmbedOptions& opts) {
  EmbeddingMap map(std::move(S), std::move(M), split);
  const VerifyReport report = verify_subextension(map, opts);
  if (!report.all_ok()) {
    throw InvariantError("embedding diagram verification failed (" +
                         std::to_string(report.failures) + " of " +
                         std::to_string(report.hom_pairs) + " pairs)");
  }
  return map;
}

// ---------------------------------------------------------------------------
// complement classes and the merge test

std::vector<ComplementClass> complement_classes(GroupPtr G, ModulePtr L,
                                                const SolveOptions& opts) {
  auto h1 = cohomology_group(G, L, 1, opts);
  const CochainIndexer idx(G, L->rank(), 1);
  std::vector<ComplementClass> out;
  for (const auto& flat : h1.all_classes()) {
    ComplementClass cls{idx.unflatten1(flat, L), vec_is_zero(flat), h1.class_label(flat)};
    out.push_back(std::move(cls));
  }
  return out;
}

MergeTestResult aux_merge_test(GroupPtr G, std::shared_ptr<const PermGroup> H,
                               std::shared_ptr<const GModule> L, const ComplementClass& cls,
                               const SolveOptions& opts) {
  if (!G->contains_group(*H)) throw InputError("aux_merge_test: H is not a subgroup of G");
  auto M = std::make_shared<CoinducedModule>(L, H);

  // left side: the complement is M-conjugate to G iff epsilon . d is
  // principal in C^1(G, M)
  Cochain1 eps_d(G, M);
  for (int e = 1; e < eps_d.size(); ++e) {
    eps_d.set_index(e, M->epsilon(cls.cocycle.eval_index(e)));
  }
  auto mu = solve_principal(eps_d, opts);

  // right side: the intersection with L x| H is L-conjugate to H iff the
  // restriction of d to H is principal in C^1(H, L)
  auto LH = std::make_shared<GModule>(L->restricted_to(H));
  Cochain1 restr(H, LH);
  const auto& helems = H->elements(opts.element_limit);
  for (std::size_t e = 1; e < helems.size(); ++e) {
    restr.set_index(static_cast<int>(e), cls.cocycle.eval(helems[e]));
  }
  auto l = solve_principal(restr, opts);

  if (mu.has_value() != l.has_value()) {
    throw InvariantError("merge test mismatch: M-conjugacy and L-conjugacy disagree");
  }
  MergeTestResult res;
  res.m_conjugate_to_g = mu.has_value();
  res.intersection_l_conjugate_to_h = l.has_value();
  res.witness_mu = std::move(mu);
  res.witness_l = std::move(l);
  return res;
}

}  // namespace coex
