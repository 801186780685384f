#pragma once

// Finite permutations and permutation groups.
//
// Conventions used across the whole library:
//   - points are 0-based internally, 1-based in all I/O;
//   - permutations act on the right: p^g = g[p], and (x*y) means
//     "apply x, then y", so p^(x*y) = (p^x)^y;
//   - cosets are left cosets, G = disjoint union of r*H.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coex/common.hpp"

namespace coex {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);                 // identity
  explicit Permutation(std::vector<int> images);    // validated bijection

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int p) const { return images_[p]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  int parity() const;  // 0 even, 1 odd

  // Composition: apply *this first, then rhs.
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;

  bool operator==(const Permutation& rhs) const { return images_ == rhs.images_; }
  bool operator!=(const Permutation& rhs) const { return images_ != rhs.images_; }
  bool operator<(const Permutation& rhs) const { return images_ < rhs.images_; }

  // Disjoint cycle notation, 1-based: "(1,2,3)(4,5)"; identity is "()".
  std::string cycles() const;
  static Permutation parse_cycles(const std::string& text, int degree);

 private:
  std::vector<int> images_;
};

struct VecIntHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct PermHash {
  std::size_t operator()(const Permutation& p) const { return VecIntHash{}(p.images()); }
};

// Canonical word for g as a product of adjacent transpositions (i, i+1),
// produced by bubble-sorting the image array. Entries are the 0-based lower
// point of each transposition; the product, applying the leftmost factor
// first, equals g.
std::vector<int> transposition_word(const Permutation& g);

// Permutation group with a deterministic stabilizer chain (smallest moved
// point first, BFS transversals).
class PermGroup {
 public:
  PermGroup(int degree, std::vector<Permutation> generators);

  PermGroup(const PermGroup& other)
      : degree_(other.degree_),
        gens_(other.gens_),
        chain_(other.chain_),
        order_(other.order_),
        bfs_(other.shared_bfs()) {}
  PermGroup& operator=(const PermGroup& other) {
    if (this != &other) {
      degree_ = other.degree_;
      gens_ = other.gens_;
      chain_ = other.chain_;
      order_ = other.order_;
      bfs_ = other.shared_bfs();
    }
    return *this;
  }

  static PermGroup trivial(int degree);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  Int order() const { return order_; }

  bool contains(const Permutation& g) const;
  // True when every generator of other lies in *this.
  bool contains_group(const PermGroup& other) const;

  Permutation random_element(Rng& rng) const;

  struct Bfs {
    std::vector<Permutation> elems;  // elems[0] = identity, BFS order
    std::vector<int> parent;         // index of parent element (-1 for identity)
    std::vector<int> gen;            // generator index used from parent
    std::unordered_map<std::vector<int>, int, VecIntHash> index;
  };

  // Full element enumeration by BFS over the generators; deterministic.
  // Guarded: throws ResourceError when the order exceeds limit.
  const Bfs& bfs(std::size_t limit = 1u << 20) const;
  const std::vector<Permutation>& elements(std::size_t limit = 1u << 20) const {
    return bfs(limit).elems;
  }
  int element_index(const Permutation& g) const;

  // Expresses g as a product of stored transversal permutations; used by
  // module actions to evaluate arbitrary group elements through generator
  // matrices. Returns the factors in application order.
  std::vector<const Permutation*> chain_factorization(const Permutation& g) const;

 private:
  struct Level {
    int base_point = -1;
    std::vector<int> orbit;                 // discovery order, orbit[0] = base
    std::vector<int> orbit_pos;             // point -> position, -1 outside
    std::vector<Permutation> reps;          // reps[i] maps base to orbit[i]
    std::vector<Permutation> gens;          // generators acting at this level
  };

  void build_chain();
  bool sift(const Permutation& g, Permutation* residue, std::size_t* level) const;
  void recompute_orbit(Level& lvl) const;
  std::shared_ptr<Bfs> shared_bfs() const {
    std::lock_guard<std::mutex> lock(bfs_mutex_);
    return bfs_;
  }

  int degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> chain_;
  Int order_ = 1;

  mutable std::mutex bfs_mutex_;
  mutable std::shared_ptr<Bfs> bfs_;
};

// Left coset transversal for H <= G: reps[0] = identity and every x in G
// factors uniquely as reps[i] * h with h in H.
class CosetTransversal {
 public:
  CosetTransversal(const PermGroup& G, const PermGroup& H);

  int index() const { return static_cast<int>(reps_.size()); }
  const std::vector<Permutation>& reps() const { return reps_; }
  const PermGroup& group() const { return *G_; }
  const PermGroup& subgroup() const { return *H_; }

  // x = reps[i] * h; throws InputError when x is not in G.
  std::pair<int, Permutation> factor(const Permutation& x) const;
  int rep_index(const Permutation& x) const { return factor(x).first; }

 private:
  std::shared_ptr<const PermGroup> G_;
  std::shared_ptr<const PermGroup> H_;
  std::vector<Permutation> reps_;

  // coset key -> rep index, filled on demand; purely an invisible cache.
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::vector<int>, int, VecIntHash> memo_;
};

}  // namespace coex
