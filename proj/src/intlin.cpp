#include "coex/intlin.hpp"

#include <algorithm>
#include <numeric>

namespace coex {

Int ext_gcd(Int a, Int b, Int& x, Int& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

Int inv_mod(Int a, Int m) {
  Int x, y;
  Int g = ext_gcd(mod_reduce(a, m), m, x, y);
  if (g != 1) throw InvariantError("inv_mod: element not invertible");
  return mod_reduce(x, m);
}

std::vector<Int> prime_factors(Int m) {
  std::vector<Int> out;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

bool is_prime_power(Int m, Int* p, int* e) {
  auto primes = prime_factors(m);
  if (primes.size() != 1) return false;
  if (p) *p = primes[0];
  int count = 0;
  while (m > 1) {
    m /= primes[0];
    ++count;
  }
  if (e) *e = count;
  return true;
}

// ---------------------------------------------------------------------------
// Gf2System

Gf2System::Gf2System(int unknowns, int rhs_bits)
    : unknowns_(unknowns),
      rhs_bits_(rhs_bits),
      lhs_words_(words_for(unknowns)),
      rhs_words_(words_for(rhs_bits)),
      row_of_pivot_(unknowns, -1) {
  (void)rhs_bits_;
}

namespace {
inline int lowest_set_bit(const std::vector<std::uint64_t>& w, std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i) {
    if (w[i]) return static_cast<int>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(w[i])));
  }
  return -1;
}
inline void xor_into(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
inline bool all_zero(const std::vector<std::uint64_t>& w, std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i) {
    if (w[i]) return false;
  }
  return true;
}
}  // namespace

bool Gf2System::add(std::vector<std::uint64_t> lhs, std::vector<std::uint64_t> rhs) {
  lhs.resize(lhs_words_);
  rhs.resize(rhs_words_);
  std::vector<std::uint64_t> row;
  row.reserve(lhs_words_ + rhs_words_);
  row.insert(row.end(), lhs.begin(), lhs.end());
  row.insert(row.end(), rhs.begin(), rhs.end());

  while (true) {
    const int p = lowest_set_bit(row, lhs_words_);
    if (p < 0) break;
    const int r = row_of_pivot_[p];
    if (r < 0) {
      pivot_of_row_.push_back(p);
      row_of_pivot_[p] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    xor_into(row, rows_[r]);
  }
  // lhs reduced to zero: rhs must be zero too.
  bool rhs_zero = true;
  for (std::size_t i = lhs_words_; i < row.size(); ++i) {
    if (row[i]) {
      rhs_zero = false;
      break;
    }
  }
  if (!rhs_zero) consistent_ = false;
  return rhs_zero;
}

std::vector<std::uint64_t> Gf2System::solve(int rhs_index) const {
  if (!consistent_) throw InvariantError("Gf2System::solve on inconsistent system");
  std::vector<std::uint64_t> x(lhs_words_, 0);
  // Process pivots in descending column order.
  std::vector<int> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pivot_of_row_[a] > pivot_of_row_[b]; });
  const std::size_t rhs_word = lhs_words_ + static_cast<std::size_t>(rhs_index) / 64;
  const std::uint64_t rhs_mask = 1ull << (rhs_index % 64);
  for (int r : order) {
    const auto& row = rows_[r];
    // parity of row.lhs & x
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < lhs_words_; ++i) acc ^= row[i] & x[i];
    int parity = __builtin_parityll(acc);
    int rhs_bit = (row[rhs_word] & rhs_mask) ? 1 : 0;
    // pivot bit of x is currently 0, so parity excludes it
    if (parity != rhs_bit) {
      const int p = pivot_of_row_[r];
      x[p / 64] |= 1ull << (p % 64);
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// GfpSystem

GfpSystem::GfpSystem(int unknowns, int rhs_cols, Int p)
    : unknowns_(unknowns), rhs_cols_(rhs_cols), p_(p), row_of_pivot_(unknowns, -1) {}

bool GfpSystem::add(std::vector<Int> lhs, std::vector<Int> rhs) {
  lhs.resize(unknowns_);
  rhs.resize(rhs_cols_);
  std::vector<Int> row;
  row.reserve(lhs.size() + rhs.size());
  for (Int v : lhs) row.push_back(mod_reduce(v, p_));
  for (Int v : rhs) row.push_back(mod_reduce(v, p_));

  while (true) {
    int p = -1;
    for (int i = 0; i < unknowns_; ++i) {
      if (row[i] != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) break;
    const int r = row_of_pivot_[p];
    if (r < 0) {
      // normalize pivot to 1
      const Int inv = inv_mod(row[p], p_);
      for (auto& v : row) v = mod_reduce(v * inv, p_);
      pivot_of_row_.push_back(p);
      row_of_pivot_[p] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    const Int c = row[p];
    const auto& pivot_row = rows_[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = mod_reduce(row[i] - c * pivot_row[i], p_);
    }
  }
  for (std::size_t i = unknowns_; i < row.size(); ++i) {
    if (row[i] != 0) {
      consistent_ = false;
      return false;
    }
  }
  return true;
}

std::vector<Int> GfpSystem::solve(int rhs_index) const {
  if (!consistent_) throw InvariantError("GfpSystem::solve on inconsistent system");
  std::vector<Int> x(unknowns_, 0);
  std::vector<int> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pivot_of_row_[a] > pivot_of_row_[b]; });
  for (int r : order) {
    const auto& row = rows_[r];
    Int acc = row[unknowns_ + rhs_index];
    for (int i = 0; i < unknowns_; ++i) {
      if (row[i] != 0 && x[i] != 0) acc = mod_reduce(acc - row[i] * x[i], p_);
    }
    x[pivot_of_row_[r]] = mod_reduce(acc, p_);  // pivot coefficient is 1
  }
  return x;
}

// ---------------------------------------------------------------------------
// LatticeHnf

LatticeHnf::LatticeHnf(int n, Int m) : n_(n), m_(m) {
  if (m < 2) throw InputError("LatticeHnf: modulus must be >= 2");
  rows_.assign(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) rows_[i][i] = m;
}

void LatticeHnf::insert(Vec row) {
  if (static_cast<int>(row.size()) != n_) throw InputError("LatticeHnf: row size mismatch");
  for (auto& v : row) v = mod_reduce(v, m_);
  for (int i = 0; i < n_; ++i) {
    if (row[i] == 0) continue;
    const Int a = rows_[i][i];
    const Int b = row[i];
    Int x, y;
    const Int g = ext_gcd(a, b, x, y);
    // combined has pivot g; new row has zero at column i.
    Vec combined(n_, 0);
    for (int j = i; j < n_; ++j) {
      const Int c = x * rows_[i][j] + y * row[j];
      combined[j] = (j == i) ? g : mod_reduce(c, m_);
    }
    const Int qa = a / g;
    const Int qb = b / g;
    for (int j = i; j < n_; ++j) {
      const Int c = qa * row[j] - qb * rows_[i][j];
      row[j] = (j == i) ? 0 : mod_reduce(c, m_);
    }
    rows_[i] = std::move(combined);
    reduce_above(i);
  }
}

void LatticeHnf::reduce_above(int i) {
  const Int p = rows_[i][i];
  for (int j = 0; j < i; ++j) {
    const Int q = rows_[j][i] / p;
    if (q == 0) continue;
    for (int kk = i; kk < n_; ++kk) {
      const Int c = rows_[j][kk] - q * rows_[i][kk];
      rows_[j][kk] = (kk == i) ? c : mod_reduce(c, m_);
    }
  }
}

bool LatticeHnf::contains(Vec v) const {
  if (static_cast<int>(v.size()) != n_) throw InputError("LatticeHnf: vector size mismatch");
  for (auto& x : v) x = mod_reduce(x, m_);
  for (int i = 0; i < n_; ++i) {
    if (v[i] == 0) continue;
    const Int p = rows_[i][i];
    if (v[i] % p != 0) return false;
    const Int q = v[i] / p;
    for (int j = i; j < n_; ++j) v[j] = mod_reduce(v[j] - q * rows_[i][j], m_);
  }
  return true;
}

Vec LatticeHnf::canonical_residue(Vec v) const {
  if (static_cast<int>(v.size()) != n_) throw InputError("LatticeHnf: vector size mismatch");
  for (auto& x : v) x = mod_reduce(x, m_);
  for (int i = 0; i < n_; ++i) {
    const Int p = rows_[i][i];
    const Int q = v[i] / p;
    if (q != 0) {
      for (int j = i; j < n_; ++j) v[j] = v[j] - q * rows_[i][j];
    }
    for (int j = i; j < n_; ++j) v[j] = mod_reduce(v[j], m_);
    v[i] = mod_reduce(v[i], p);
  }
  return v;
}

Int LatticeHnf::index_over_mzn() const {
  __int128 acc = 1;
  for (int i = 0; i < n_; ++i) {
    acc *= m_ / rows_[i][i];
    if (acc > static_cast<__int128>(INT64_MAX)) {
      throw ResourceError("lattice index does not fit in 64 bits");
    }
  }
  return static_cast<Int>(acc);
}

Int lattice_quotient_order(const LatticeHnf& inner, const LatticeHnf& outer) {
  if (inner.dim() != outer.dim()) throw InputError("lattice dimension mismatch");
  // per-prime exponent accounting avoids intermediate overflow
  std::vector<std::pair<Int, Int>> exps;  // prime -> exponent
  auto account = [&](Int v, Int sign) {
    for (Int p = 2; p * p <= v; ++p) {
      while (v % p == 0) {
        v /= p;
        auto it = std::find_if(exps.begin(), exps.end(),
                               [&](const auto& pe) { return pe.first == p; });
        if (it == exps.end()) exps.emplace_back(p, sign);
        else it->second += sign;
      }
    }
    if (v > 1) {
      auto it = std::find_if(exps.begin(), exps.end(),
                             [&](const auto& pe) { return pe.first == v; });
      if (it == exps.end()) exps.emplace_back(v, sign);
      else it->second += sign;
    }
  };
  for (int i = 0; i < inner.dim(); ++i) {
    account(inner.pivot(i), 1);
    account(outer.pivot(i), -1);
  }
  __int128 out = 1;
  for (const auto& [p, e] : exps) {
    if (e < 0) throw InvariantError("lattice_quotient_order: inner is not inside outer");
    for (Int i = 0; i < e; ++i) {
      out *= p;
      if (out > static_cast<__int128>(INT64_MAX)) {
        throw ResourceError("lattice quotient order too large");
      }
    }
  }
  return static_cast<Int>(out);
}

// ---------------------------------------------------------------------------
// snf_mod

SmithModResult snf_mod(std::vector<Vec> rows, int n, Int m) {
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw InputError("snf_mod: row size mismatch");
    for (auto& v : r) v = mod_reduce(v, m);
  }
  const int nrows = static_cast<int>(rows.size());

  // einv tracks the inverse of the accumulated column transform; row i of
  // einv is the original-coordinate vector that maps to e_i.
  std::vector<Vec> einv(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) einv[i][i] = 1;

  auto col_subtract = [&](int target, int source, Int q) {
    // column[target] -= q * column[source]; einv: row[source] += q * row[target]
    for (int i = 0; i < nrows; ++i) {
      rows[i][target] = mod_reduce(rows[i][target] - q * rows[i][source], m);
    }
    for (int j = 0; j < n; ++j) {
      einv[source][j] = mod_reduce(einv[source][j] + q * einv[target][j], m);
    }
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < nrows; ++i) std::swap(rows[i][a], rows[i][b]);
    std::swap(einv[a], einv[b]);
  };

  const int steps = std::min(nrows, n);
  int t = 0;
  while (t < steps) {
    // locate minimal positive entry in the remaining submatrix
    int bi = -1, bj = -1;
    Int best = 0;
    for (int i = t; i < nrows; ++i) {
      for (int j = t; j < n; ++j) {
        const Int v = rows[i][j];
        if (v != 0 && (bi < 0 || v < best)) {
          bi = i;
          bj = j;
          best = v;
        }
      }
    }
    if (bi < 0) break;
    if (bi != t) std::swap(rows[bi], rows[t]);
    if (bj != t) col_swap(bj, t);
    const Int p = rows[t][t];
    bool clean = true;
    for (int i = t + 1; i < nrows; ++i) {
      if (rows[i][t] == 0) continue;
      const Int q = rows[i][t] / p;
      for (int j = t; j < n; ++j) rows[i][j] = mod_reduce(rows[i][j] - q * rows[t][j], m);
      if (rows[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < n; ++j) {
      if (rows[t][j] == 0) continue;
      const Int q = rows[t][j] / p;
      col_subtract(j, t, q);
      if (rows[t][j] != 0) clean = false;
    }
    if (clean) ++t;
  }

  SmithModResult res;
  __int128 order = 1;
  for (int c = 0; c < n; ++c) {
    const Int d = (c < steps) ? rows[c][c] : 0;
    Int x, y;
    const Int f = ext_gcd(d, m, x, y);
    if (f > 1) {
      res.factor_orders.push_back(f);
      Vec gen(n);
      for (int j = 0; j < n; ++j) gen[j] = einv[c][j];
      res.generators.push_back(std::move(gen));
      order *= f;
      if (order > static_cast<__int128>(INT64_MAX)) {
        throw ResourceError("snf_mod: quotient order does not fit in 64 bits");
      }
    }
  }
  res.group_order = static_cast<Int>(order);

  // canonical divisor chain from the factor multiset
  std::vector<Int> primes;
  for (Int f : res.factor_orders) {
    for (Int p : prime_factors(f)) {
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::vector<int>> exps(primes.size());
  for (Int f : res.factor_orders) {
    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
      int e = 0;
      while (f % primes[pi] == 0) {
        f /= primes[pi];
        ++e;
      }
      if (e > 0) exps[pi].push_back(e);
    }
  }
  std::size_t chain_len = 0;
  for (auto& v : exps) {
    std::sort(v.rbegin(), v.rend());
    chain_len = std::max(chain_len, v.size());
  }
  std::vector<Int> chain(chain_len, 1);
  for (std::size_t pi = 0; pi < primes.size(); ++pi) {
    for (std::size_t k = 0; k < exps[pi].size(); ++k) {
      Int pw = 1;
      for (int e = 0; e < exps[pi][k]; ++e) pw *= primes[pi];
      chain[k] *= pw;
    }
  }
  std::sort(chain.begin(), chain.end());  // ascending divisor chain
  res.invariant_factors = std::move(chain);
  return res;
}

// ---------------------------------------------------------------------------
// KernelLattice

KernelLattice::KernelLattice(int n, Int m) : n_(n), m_(m) {
  basis_.assign(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) basis_[i][i] = 1;
}

void KernelLattice::refine(const Vec& t) {
  bool nonzero = false;
  for (Int v : t) {
    if (v != 0) {
      nonzero = true;
      break;
    }
  }
  if (!nonzero) return;

  // W = integer combination of basis rows with <W, form> = g = gcd(m, t_i).
  Int g = m_;
  Vec w(n_, 0);
  for (int i = 0; i < n_; ++i) {
    if (t[i] == 0) continue;
    Int x, y;
    const Int g2 = ext_gcd(g, t[i], x, y);
    for (int j = 0; j < n_; ++j) {
      w[j] = mod_reduce(x * w[j] + y * basis_[i][j], m_);
    }
    g = g2;
    if (g == 1) break;
  }

  LatticeHnf hnf(n_, m_);
  for (int i = 0; i < n_; ++i) {
    Vec row(n_);
    const Int q = t[i] / g;
    for (int j = 0; j < n_; ++j) row[j] = mod_reduce(basis_[i][j] - q * w[j], m_);
    hnf.insert(std::move(row));
  }
  {
    Vec row(n_);
    const Int q = m_ / g;
    for (int j = 0; j < n_; ++j) row[j] = mod_reduce(q * w[j], m_);
    hnf.insert(std::move(row));
  }
  basis_ = hnf.rows();
}

void KernelLattice::add_form(const Vec& form) {
  if (static_cast<int>(form.size()) != n_) throw InputError("KernelLattice: form size mismatch");
  Vec t(n_, 0);
  for (int i = 0; i < n_; ++i) {
    Int acc = 0;
    for (int j = 0; j < n_; ++j) acc += basis_[i][j] * form[j];
    t[i] = mod_reduce(acc, m_);
  }
  refine(t);
}

void KernelLattice::add_form_sparse(const std::vector<std::pair<int, Int>>& entries) {
  Vec t(n_, 0);
  for (int i = 0; i < n_; ++i) {
    Int acc = 0;
    for (const auto& [col, val] : entries) acc += basis_[i][col] * val;
    t[i] = mod_reduce(acc, m_);
  }
  refine(t);
}

LatticeHnf KernelLattice::to_hnf() const {
  LatticeHnf hnf(n_, m_);
  for (const auto& row : basis_) hnf.insert(row);
  return hnf;
}

}  // namespace coex
