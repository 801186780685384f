#include "coex/gmodule.hpp"

#include <algorithm>

#include "coex/intlin.hpp"

namespace coex {

Vec vec_add(const Vec& a, const Vec& b, Int m) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_reduce(a[i] + b[i], m);
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b, Int m) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_reduce(a[i] - b[i], m);
  return out;
}

Vec vec_neg(const Vec& a, Int m) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_reduce(-a[i], m);
  return out;
}

bool vec_is_zero(const Vec& a) {
  for (Int v : a) {
    if (v != 0) return false;
  }
  return true;
}

std::vector<Vec> ModuleOps::action_matrix(const Permutation& g) const {
  std::vector<Vec> rows(rank());
  Vec e(rank(), 0);
  for (int i = 0; i < rank(); ++i) {
    e[i] = 1;
    rows[i] = act(e, g);
    e[i] = 0;
  }
  return rows;
}

// ---------------------------------------------------------------------------
// GModule

GModule GModule::trivial(std::shared_ptr<const PermGroup> G, Int m, int k) {
  if (m < 2 || k < 1) throw InputError("module needs modulus >= 2 and rank >= 1");
  return GModule(std::move(G), m, k, Kind::Trivial);
}

GModule GModule::coord_perm(std::shared_ptr<const PermGroup> G, Int m,
                            std::vector<std::vector<int>> gen_coord_perms, int k) {
  if (m < 2 || k < 1) throw InputError("module needs modulus >= 2 and rank >= 1");
  if (gen_coord_perms.size() != G->generators().size()) {
    throw InputError("coordinate permutation count must match generator count");
  }
  for (const auto& cp : gen_coord_perms) {
    if (static_cast<int>(cp.size()) != k) throw InputError("coordinate permutation size mismatch");
    Permutation check{std::vector<int>(cp.begin(), cp.end())};  // validates bijection
  }
  GModule mod(std::move(G), m, k, Kind::CoordPerm);
  mod.gen_cp_ = std::move(gen_coord_perms);
  return mod;
}

GModule GModule::permutation(std::shared_ptr<const PermGroup> G, Int m) {
  // e_p * g = e_{p^g}, so out[i] = v[i^{g^-1}].
  std::vector<std::vector<int>> cps;
  const int k = G->degree();
  for (const auto& g : G->generators()) {
    const Permutation gi = g.inverse();
    std::vector<int> cp(k);
    for (int i = 0; i < k; ++i) cp[i] = gi[i];
    cps.push_back(std::move(cp));
  }
  return coord_perm(std::move(G), m, std::move(cps), k);
}

GModule GModule::matrices(std::shared_ptr<const PermGroup> G, Int m,
                          std::vector<std::vector<Vec>> gen_matrices) {
  if (m < 2) throw InputError("module needs modulus >= 2");
  if (gen_matrices.size() != G->generators().size()) {
    throw InputError("matrix count must match generator count");
  }
  if (gen_matrices.empty()) throw InputError("matrix module needs at least one generator");
  const int k = static_cast<int>(gen_matrices[0].size());
  for (auto& mat : gen_matrices) {
    if (static_cast<int>(mat.size()) != k) throw InputError("matrix size mismatch");
    for (auto& row : mat) {
      if (static_cast<int>(row.size()) != k) throw InputError("matrix row size mismatch");
      for (auto& v : row) v = mod_reduce(v, m);
    }
    // invertible mod m iff full rank mod every prime divisor of m
    for (Int p : prime_factors(m)) {
      GfpSystem sys(k, 0, p);
      for (const auto& row : mat) sys.add(row, {});
      if (!sys.full_rank()) throw InputError("action matrix is not invertible mod m");
    }
  }
  GModule mod(std::move(G), m, k, Kind::Matrix);
  mod.gen_mat_ = std::move(gen_matrices);
  return mod;
}

std::vector<int> GModule::generator_word(const Permutation& g) const {
  const auto& bfs = G_->bfs();
  auto it = bfs.index.find(g.images());
  if (it == bfs.index.end()) throw InputError("module action: element not in group");
  std::vector<int> word;
  int idx = it->second;
  while (idx != 0) {
    word.push_back(bfs.gen[idx]);
    idx = bfs.parent[idx];
  }
  std::reverse(word.begin(), word.end());  // element = gen[w0] * gen[w1] * ...
  return word;
}

Vec GModule::act(const Vec& v, const Permutation& g) const {
  if (static_cast<int>(v.size()) != k_) throw InputError("module element rank mismatch");
  if (kind_ == Kind::Trivial) {
    Vec out(v);
    for (auto& x : out) x = mod_reduce(x, m_);
    return out;
  }
  if (g.is_identity()) {
    Vec out(v);
    for (auto& x : out) x = mod_reduce(x, m_);
    return out;
  }
  if (kind_ == Kind::CoordPerm) {
    std::vector<int> cp;
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = cp_memo_.find(g.images());
      if (it != cp_memo_.end()) cp = it->second;
    }
    if (cp.empty()) {
      // element = gen[w0]*gen[w1]*...; right action composes the coordinate
      // permutations in the same order: cp_total[i] = cp_w0[cp_w1[...[i]]]
      std::vector<int> total(k_);
      for (int i = 0; i < k_; ++i) total[i] = i;
      for (int w : generator_word(g)) {
        const auto& step = gen_cp_[w];
        std::vector<int> next(k_);
        for (int i = 0; i < k_; ++i) next[i] = total[step[i]];
        total = std::move(next);
      }
      cp = total;
      std::lock_guard<std::mutex> lock(memo_mutex_);
      cp_memo_.emplace(g.images(), cp);
    }
    Vec out(k_);
    for (int i = 0; i < k_; ++i) out[i] = mod_reduce(v[cp[i]], m_);
    return out;
  }
  // Matrix kind
  std::vector<Vec> mat;
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = mat_memo_.find(g.images());
    if (it != mat_memo_.end()) mat = it->second;
  }
  if (mat.empty()) {
    std::vector<Vec> total;  // identity
    for (int w : generator_word(g)) {
      const auto& step = gen_mat_[w];
      if (total.empty()) {
        total = step;
        continue;
      }
      // total = total * step (row-vector convention: v*(AB) = (v*A)*B)
      std::vector<Vec> next(k_, Vec(k_, 0));
      for (int i = 0; i < k_; ++i) {
        for (int l = 0; l < k_; ++l) {
          const Int c = total[i][l];
          if (c == 0) continue;
          for (int j = 0; j < k_; ++j) {
            next[i][j] = mod_reduce(next[i][j] + c * step[l][j], m_);
          }
        }
      }
      total = std::move(next);
    }
    if (total.empty()) {
      total.assign(k_, Vec(k_, 0));
      for (int i = 0; i < k_; ++i) total[i][i] = 1;
    }
    mat = total;
    std::lock_guard<std::mutex> lock(memo_mutex_);
    mat_memo_.emplace(g.images(), mat);
  }
  Vec out(k_, 0);
  for (int i = 0; i < k_; ++i) {
    const Int c = mod_reduce(v[i], m_);
    if (c == 0) continue;
    for (int j = 0; j < k_; ++j) out[j] = mod_reduce(out[j] + c * mat[i][j], m_);
  }
  return out;
}

GModule GModule::restricted_to(std::shared_ptr<const PermGroup> H) const {
  if (!G_->contains_group(*H)) throw InputError("restriction: H is not a subgroup");
  if (H->generators().empty()) return trivial(std::move(H), m_, k_);
  switch (kind_) {
    case Kind::Trivial:
      return trivial(std::move(H), m_, k_);
    case Kind::CoordPerm: {
      std::vector<std::vector<int>> cps;
      for (const auto& h : H->generators()) {
        // recover the coordinate permutation of h via the action on units
        std::vector<int> cp(k_);
        Vec e(k_, 0);
        std::vector<int> where(k_, -1);
        for (int i = 0; i < k_; ++i) {
          e[i] = 1;
          Vec img = act(e, h);
          e[i] = 0;
          for (int j = 0; j < k_; ++j) {
            if (img[j] != 0) {
              where[j] = i;  // out[j] = v[i]
              break;
            }
          }
        }
        for (int j = 0; j < k_; ++j) cp[j] = where[j];
        cps.push_back(std::move(cp));
      }
      return coord_perm(std::move(H), m_, std::move(cps), k_);
    }
    case Kind::Matrix: {
      std::vector<std::vector<Vec>> mats;
      for (const auto& h : H->generators()) mats.push_back(action_matrix(h));
      return matrices(std::move(H), m_, std::move(mats));
    }
  }
  throw InvariantError("unreachable module kind");
}

void GModule::validate(Rng& rng, int samples) const {
  const auto& elems = G_->elements();
  for (int s = 0; s < samples; ++s) {
    const Permutation& g = elems[rng.below(elems.size())];
    const Permutation& h = elems[rng.below(elems.size())];
    Vec v(k_);
    for (auto& x : v) x = rng.residue(m_);
    if (act(act(v, g), h) != act(v, g * h)) {
      throw InputError("generator data does not define a module action");
    }
  }
}

// ---------------------------------------------------------------------------
// CoinducedModule

CoinducedModule::CoinducedModule(std::shared_ptr<const GModule> L,
                                 std::shared_ptr<const PermGroup> H)
    : L_(std::move(L)), H_(std::move(H)), transversal_(L_->group(), *H_) {}

Vec CoinducedModule::block(const Vec& v, int i) const {
  const int k = L_->rank();
  return Vec(v.begin() + static_cast<std::ptrdiff_t>(i) * k,
             v.begin() + static_cast<std::ptrdiff_t>(i + 1) * k);
}

Vec CoinducedModule::act(const Vec& v, const Permutation& g) const {
  if (static_cast<int>(v.size()) != rank()) throw InputError("coinduced element rank mismatch");
  const int k = L_->rank();
  const int n = index();
  Vec out(rank());
  for (int i = 0; i < n; ++i) {
    // (mu g)(r_i) = mu(g r_i) = mu(r_j h) = mu(r_j) * h
    auto [j, h] = transversal_.factor(g * transversal_.reps()[i]);
    Vec val = L_->act(block(v, j), h);
    std::copy(val.begin(), val.end(), out.begin() + static_cast<std::ptrdiff_t>(i) * k);
  }
  return out;
}

Vec CoinducedModule::epsilon(const Vec& l) const {
  if (static_cast<int>(l.size()) != L_->rank()) throw InputError("epsilon: rank mismatch");
  const int k = L_->rank();
  Vec out(rank());
  for (int i = 0; i < index(); ++i) {
    Vec val = L_->act(l, transversal_.reps()[i]);
    std::copy(val.begin(), val.end(), out.begin() + static_cast<std::ptrdiff_t>(i) * k);
  }
  return out;
}

Vec CoinducedModule::evaluate(const Vec& mu) const {
  if (static_cast<int>(mu.size()) != rank()) throw InputError("evaluate: rank mismatch");
  return block(mu, 0);
}

Vec CoinducedModule::value_at(const Vec& mu, const Permutation& x) const {
  auto [i, h] = transversal_.factor(x);
  return L_->act(block(mu, i), h);
}

GModule CoinducedModule::materialize() const {
  const auto& G = L_->group();
  auto Gp = std::make_shared<PermGroup>(G);
  const int k = L_->rank();
  const int n = index();
  if (L_->kind() == GModule::Kind::Trivial) {
    // pure block permutation: out block i = v block j
    std::vector<std::vector<int>> cps;
    for (const auto& g : G.generators()) {
      std::vector<int> cp(rank());
      for (int i = 0; i < n; ++i) {
        auto [j, h] = transversal_.factor(g * transversal_.reps()[i]);
        (void)h;
        for (int c = 0; c < k; ++c) cp[i * k + c] = j * k + c;
      }
      cps.push_back(std::move(cp));
    }
    return GModule::coord_perm(Gp, modulus(), std::move(cps), rank());
  }
  std::vector<std::vector<Vec>> mats;
  for (const auto& g : G.generators()) mats.push_back(action_matrix(g));
  return GModule::matrices(Gp, modulus(), std::move(mats));
}

// ---------------------------------------------------------------------------
// Lemma-8 maps

ModuleMap conjugate_iso(std::shared_ptr<const CoinducedModule> M, const Permutation& g) {
  const auto& G = M->group();
  if (!G.contains(g)) throw InputError("conjugate_iso: g is not in G");
  const Permutation gi = g.inverse();
  std::vector<Permutation> conj_gens;
  for (const auto& h : M->subgroup().generators()) conj_gens.push_back(gi * h * g);
  auto Hg = std::make_shared<PermGroup>(G.degree(), conj_gens);
  auto Lp = std::make_shared<GModule>(M->base());
  auto target = std::make_shared<CoinducedModule>(Lp, Hg);

  auto source = M;
  const Permutation g_copy = g;
  ModuleMap map;
  map.source = source;
  map.target = target;
  map.apply = [source, target, g_copy, gi](const Vec& mu) {
    const int k = source->base().rank();
    Vec out(target->rank());
    for (int i = 0; i < target->index(); ++i) {
      // (mu psi)(r'_i) = mu(r'_i g^-1) * g
      Vec val = source->base().act(
          source->value_at(mu, target->transversal().reps()[i] * gi), g_copy);
      std::copy(val.begin(), val.end(), out.begin() + static_cast<std::ptrdiff_t>(i) * k);
    }
    return out;
  };
  return map;
}

ModuleMap refine_map(std::shared_ptr<const CoinducedModule> M,
                     std::shared_ptr<const PermGroup> K) {
  if (!M->subgroup().contains_group(*K)) throw InputError("refine_map: K is not a subgroup of H");
  auto Lp = std::make_shared<GModule>(M->base());
  auto target = std::make_shared<CoinducedModule>(Lp, K);
  auto source = M;
  ModuleMap map;
  map.source = source;
  map.target = target;
  map.apply = [source, target](const Vec& mu) {
    const int k = source->base().rank();
    Vec out(target->rank());
    for (int i = 0; i < target->index(); ++i) {
      Vec val = source->value_at(mu, target->transversal().reps()[i]);
      std::copy(val.begin(), val.end(), out.begin() + static_cast<std::ptrdiff_t>(i) * k);
    }
    return out;
  };
  return map;
}

}  // namespace coex
