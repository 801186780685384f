#include "coex/perm.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace coex {

Permutation::Permutation(int degree) : images_(degree) {
  for (int i = 0; i < degree; ++i) images_[i] = i;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= degree() || seen[x]) {
      throw InputError("permutation image array is not a bijection");
    }
    seen[x] = 1;
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

int Permutation::parity() const {
  // Parity of the number of inversions equals the sign parity.
  std::vector<char> visited(images_.size(), 0);
  int transpositions = 0;
  for (int i = 0; i < degree(); ++i) {
    if (visited[i]) continue;
    int len = 0;
    int j = i;
    while (!visited[j]) {
      visited[j] = 1;
      j = images_[j];
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions & 1;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw InputError("permutation degrees differ");
  std::vector<int> out(images_.size());
  for (int i = 0; i < degree(); ++i) out[i] = rhs.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (int i = 0; i < degree(); ++i) out[images_[i]] = i;
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

std::string Permutation::cycles() const {
  std::vector<char> visited(images_.size(), 0);
  std::ostringstream out;
  bool any = false;
  for (int i = 0; i < degree(); ++i) {
    if (visited[i] || images_[i] == i) {
      visited[i] = 1;
      continue;
    }
    any = true;
    out << '(';
    int j = i;
    bool first = true;
    while (!visited[j]) {
      visited[j] = 1;
      if (!first) out << ',';
      out << (j + 1);
      first = false;
      j = images_[j];
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation Permutation::parse_cycles(const std::string& text, int degree) {
  std::vector<int> images(degree);
  for (int i = 0; i < degree; ++i) images[i] = i;
  std::vector<char> used(degree, 0);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw InputError("empty permutation string");

  bool any_cycle = false;
  while (pos < text.size()) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') throw InputError("expected '(' in cycle notation: " + text);
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw InputError("expected point number in cycle: " + text);
      int point = std::stoi(text.substr(start, pos - start));
      if (point < 1 || point > degree) {
        throw InputError("point " + std::to_string(point) + " out of range 1.." +
                         std::to_string(degree));
      }
      if (used[point - 1]) throw InputError("cycles are not disjoint: " + text);
      used[point - 1] = 1;
      cycle.push_back(point - 1);
      skip_ws();
      if (pos < text.size() && (text[pos] == ',' || std::isspace(static_cast<unsigned char>(text[pos])))) {
        if (text[pos] == ',') ++pos;
      }
    }
    any_cycle = true;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  if (!any_cycle) throw InputError("no cycles found in: " + text);
  return Permutation(std::move(images));
}

std::vector<int> transposition_word(const Permutation& g) {
  std::vector<int> arr = g.images();
  std::vector<int> word;
  const int n = static_cast<int>(arr.size());
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (int p = 0; p + 1 < n; ++p) {
      if (arr[p] > arr[p + 1]) {
        std::swap(arr[p], arr[p + 1]);
        word.push_back(p);
        swapped = true;
      }
    }
  }
  return word;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(int degree, std::vector<Permutation> generators) : degree_(degree) {
  for (auto& g : generators) {
    if (g.degree() != degree_) throw InputError("generator degree mismatch");
    if (!g.is_identity()) gens_.push_back(std::move(g));
  }
  build_chain();
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

void PermGroup::recompute_orbit(Level& lvl) const {
  lvl.orbit.clear();
  lvl.orbit_pos.assign(degree_, -1);
  lvl.reps.clear();
  lvl.orbit.push_back(lvl.base_point);
  lvl.orbit_pos[lvl.base_point] = 0;
  lvl.reps.push_back(Permutation(degree_));
  for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
    const int p = lvl.orbit[i];
    for (const auto& s : lvl.gens) {
      const int q = s[p];
      if (lvl.orbit_pos[q] < 0) {
        lvl.orbit_pos[q] = static_cast<int>(lvl.orbit.size());
        lvl.orbit.push_back(q);
        lvl.reps.push_back(lvl.reps[i] * s);
      }
    }
  }
}

bool PermGroup::sift(const Permutation& g, Permutation* residue, std::size_t* level) const {
  Permutation cur = g;
  for (std::size_t ell = 0; ell < chain_.size(); ++ell) {
    if (cur.is_identity()) {
      if (residue) *residue = cur;
      if (level) *level = ell;
      return true;
    }
    const Level& lvl = chain_[ell];
    const int image = cur[lvl.base_point];
    const int pos = lvl.orbit_pos[image];
    if (pos < 0) {
      if (residue) *residue = cur;
      if (level) *level = ell;
      return false;
    }
    cur = cur * lvl.reps[pos].inverse();
  }
  if (residue) *residue = cur;
  if (level) *level = chain_.size();
  return cur.is_identity();
}

void PermGroup::build_chain() {
  chain_.clear();

  // Schreier-Sims with nested generating sets: the set stored at level l
  // generates the stabilizer of the base points above it, so a new element
  // joins every level whose base points it fixes. A worklist carries the
  // Schreier generators of each level that changed; the chain is complete
  // once every one of them sifts to the identity.
  std::vector<Permutation> work(gens_.rbegin(), gens_.rend());

  auto enqueue_level = [&](std::size_t ell) {
    const Level& lvl = chain_[ell];
    for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
      for (const auto& s : lvl.gens) {
        const int q = s[lvl.orbit[i]];
        Permutation schreier = lvl.reps[i] * s * lvl.reps[lvl.orbit_pos[q]].inverse();
        if (!schreier.is_identity()) work.push_back(std::move(schreier));
      }
    }
  };

  while (!work.empty()) {
    Permutation g = std::move(work.back());
    work.pop_back();
    // Sift through the current chain; a clean sift means g is already in the
    // group generated by the stored elements.
    Permutation cur = g;
    for (const Level& lvl : chain_) {
      if (cur.is_identity()) break;
      const int pos = lvl.orbit_pos[cur[lvl.base_point]];
      if (pos < 0) break;
      cur = cur * lvl.reps[pos].inverse();
    }
    if (cur.is_identity()) continue;

    // First level whose base point cur moves; cur belongs to the generating
    // sets of every level up to and including it.
    std::size_t j = 0;
    while (j < chain_.size() && cur[chain_[j].base_point] == chain_[j].base_point) ++j;
    if (j == chain_.size()) {
      Level lvl;
      for (int p = 0; p < degree_; ++p) {
        if (cur[p] != p) {
          lvl.base_point = p;
          break;
        }
      }
      chain_.push_back(std::move(lvl));
    }
    for (std::size_t i = 0; i <= j; ++i) {
      auto& gens = chain_[i].gens;
      if (std::find(gens.begin(), gens.end(), cur) == gens.end()) gens.push_back(cur);
      recompute_orbit(chain_[i]);
    }
    for (std::size_t i = 0; i <= j; ++i) enqueue_level(i);
  }

  order_ = 1;
  for (const auto& lvl : chain_) order_ *= static_cast<Int>(lvl.orbit.size());
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  Permutation residue;
  std::size_t level = 0;
  return sift(g, &residue, &level);
}

bool PermGroup::contains_group(const PermGroup& other) const {
  for (const auto& g : other.generators()) {
    if (!contains(g)) return false;
  }
  return true;
}

Permutation PermGroup::random_element(Rng& rng) const {
  Permutation x(degree_);
  for (std::size_t ell = chain_.size(); ell-- > 0;) {
    const Level& lvl = chain_[ell];
    const std::size_t idx = rng.below(lvl.orbit.size());
    x = x * lvl.reps[idx];
  }
  return x;
}

const PermGroup::Bfs& PermGroup::bfs(std::size_t limit) const {
  std::lock_guard<std::mutex> lock(bfs_mutex_);
  if (bfs_) return *bfs_;
  if (static_cast<std::size_t>(order_) > limit) {
    throw ResourceError("group of order " + std::to_string(order_) +
                        " exceeds enumeration limit " + std::to_string(limit));
  }
  auto data = std::make_shared<Bfs>();
  Permutation id(degree_);
  data->elems.push_back(id);
  data->parent.push_back(-1);
  data->gen.push_back(-1);
  data->index.emplace(id.images(), 0);
  for (std::size_t i = 0; i < data->elems.size(); ++i) {
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      Permutation c = data->elems[i] * gens_[k];
      if (data->index.find(c.images()) == data->index.end()) {
        data->index.emplace(c.images(), static_cast<int>(data->elems.size()));
        data->elems.push_back(std::move(c));
        data->parent.push_back(static_cast<int>(i));
        data->gen.push_back(static_cast<int>(k));
      }
    }
  }
  if (static_cast<Int>(data->elems.size()) != order_) {
    throw InvariantError("BFS enumeration size " + std::to_string(data->elems.size()) +
                         " disagrees with chain order " + std::to_string(order_));
  }
  bfs_ = std::move(data);
  return *bfs_;
}

int PermGroup::element_index(const Permutation& g) const {
  const Bfs& b = bfs();
  auto it = b.index.find(g.images());
  if (it == b.index.end()) throw InputError("element not in group: " + g.cycles());
  return it->second;
}

std::vector<const Permutation*> PermGroup::chain_factorization(const Permutation& g) const {
  // g = reps[L-1] * ... * reps[0] in application order (deepest level first).
  std::vector<const Permutation*> factors;
  Permutation cur = g;
  std::vector<const Permutation*> reversed;
  for (std::size_t ell = 0; ell < chain_.size(); ++ell) {
    if (cur.is_identity()) break;
    const Level& lvl = chain_[ell];
    const int pos = lvl.orbit_pos[cur[lvl.base_point]];
    if (pos < 0) throw InputError("element not in group: " + g.cycles());
    reversed.push_back(&lvl.reps[pos]);
    cur = cur * lvl.reps[pos].inverse();
  }
  if (!cur.is_identity()) throw InputError("element not in group: " + g.cycles());
  factors.assign(reversed.rbegin(), reversed.rend());
  return factors;
}

// ---------------------------------------------------------------------------
// CosetTransversal

CosetTransversal::CosetTransversal(const PermGroup& G, const PermGroup& H)
    : G_(std::make_shared<PermGroup>(G)), H_(std::make_shared<PermGroup>(H)) {
  if (G.degree() != H.degree()) throw InputError("transversal: degree mismatch");
  if (!G.contains_group(H)) throw InputError("transversal: H is not a subgroup of G");
  const Int expected = G.order() / H.order();
  reps_.push_back(Permutation(G.degree()));
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    for (const auto& g : G.generators()) {
      const Permutation cand = g * reps_[i];  // left multiplication: coset g*(rH)
      bool known = false;
      for (const auto& r : reps_) {
        if (H_->contains(r.inverse() * cand)) {
          known = true;
          break;
        }
      }
      if (!known) reps_.push_back(cand);
    }
    if (static_cast<Int>(reps_.size()) > expected) break;
  }
  if (static_cast<Int>(reps_.size()) != expected) {
    throw InvariantError("transversal size " + std::to_string(reps_.size()) +
                         " differs from index " + std::to_string(expected));
  }
}

std::pair<int, Permutation> CosetTransversal::factor(const Permutation& x) const {
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(x.images());
    if (it != memo_.end()) {
      return {it->second, reps_[it->second].inverse() * x};
    }
  }
  if (!G_->contains(x)) throw InputError("factor: element not in G: " + x.cycles());
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    Permutation h = reps_[i].inverse() * x;
    if (H_->contains(h)) {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      if (memo_.size() < (1u << 20)) memo_.emplace(x.images(), static_cast<int>(i));
      return {static_cast<int>(i), std::move(h)};
    }
  }
  throw InvariantError("factor: no coset representative matched " + x.cycles());
}

}  // namespace coex
