#include "coex/spincover.hpp"

#include <algorithm>
#include <array>

namespace coex {

namespace {

constexpr Int kCoeffGuard = Int(1) << 58;

// parity of |{a in A : a > b}| summed over b in B
inline int reorder_sign(std::uint16_t ma, std::uint16_t mb) {
  int inv = 0;
  std::uint16_t rest = mb;
  while (rest) {
    const int b = __builtin_ctz(rest);
    rest &= static_cast<std::uint16_t>(rest - 1);
    inv += __builtin_popcount(ma >> (b + 1));
  }
  return inv & 1;
}

// sign lookup for masks on at most 9 points (the hot path)
const std::int8_t* sign_table_9() {
  static const std::vector<std::int8_t> table = [] {
    std::vector<std::int8_t> t(512 * 512);
    for (std::uint32_t a = 0; a < 512; ++a) {
      for (std::uint32_t b = 0; b < 512; ++b) {
        t[(a << 9) | b] = reorder_sign(static_cast<std::uint16_t>(a),
                                       static_cast<std::uint16_t>(b))
                              ? -1
                              : 1;
      }
    }
    return t;
  }();
  return table.data();
}

inline Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out) || out > kCoeffGuard || out < -kCoeffGuard) {
    throw ArithmeticError("spin coefficient overflow");
  }
  return out;
}

inline Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out) || out > kCoeffGuard || out < -kCoeffGuard) {
    throw ArithmeticError("spin coefficient overflow");
  }
  return out;
}

}  // namespace

SpinElement SpinElement::one(int n) {
  SpinElement e;
  e.n_ = n;
  e.shift_ = 0;
  e.terms_ = {{0, 1}};
  e.proj_ = Permutation(n);
  return e;
}

SpinElement SpinElement::minus_one(int n) {
  SpinElement e = one(n);
  e.terms_[0].coeff = -1;
  return e;
}

void SpinElement::normalize() {
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const Term& t) { return t.coeff == 0; }),
               terms_.end());
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mask < b.mask; });
  while (shift_ > 0 && !terms_.empty()) {
    bool all_even = true;
    for (const Term& t : terms_) {
      if (t.coeff & 1) {
        all_even = false;
        break;
      }
    }
    if (!all_even) break;
    for (Term& t : terms_) t.coeff /= 2;
    --shift_;
  }
  if (terms_.empty()) shift_ = 0;  // the zero element (never a group lift)
}

SpinElement clifford_product(const SpinElement& a, const SpinElement& b) {
  if (a.n_ != b.n_) throw InputError("clifford_product: point count mismatch");
  SpinElement out;
  out.n_ = a.n_;
  out.shift_ = a.shift_ + b.shift_;
  out.proj_ = a.proj_ * b.proj_;

  // dense accumulator over even masks; identify an even mask by dropping the
  // top point's bit (recoverable from the parity of the rest)
  const int key_bits = a.n_ - 1;
  const std::size_t slots = static_cast<std::size_t>(1) << key_bits;
  thread_local std::vector<Int> acc;
  if (acc.size() < slots) acc.assign(slots, 0);
  const std::uint16_t key_mask = static_cast<std::uint16_t>((1u << key_bits) - 1);

  if (a.n_ <= 9) {
    const std::int8_t* table = sign_table_9();
    for (const auto& ta : a.terms_) {
      const std::int8_t* row = table + (static_cast<std::size_t>(ta.mask) << 9);
      const Int ca = ta.coeff;
      for (const auto& tb : b.terms_) {
        const std::uint16_t key = (ta.mask ^ tb.mask) & key_mask;
        acc[key] = checked_add(acc[key], row[tb.mask] * checked_mul(ca, tb.coeff));
      }
    }
  } else {
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        const Int c = reorder_sign(ta.mask, tb.mask) ? -checked_mul(ta.coeff, tb.coeff)
                                                     : checked_mul(ta.coeff, tb.coeff);
        const std::uint16_t key = (ta.mask ^ tb.mask) & key_mask;
        acc[key] = checked_add(acc[key], c);
      }
    }
  }
  out.terms_.reserve(64);
  for (std::size_t key = 0; key < slots; ++key) {
    if (acc[key] == 0) continue;
    std::uint16_t mask = static_cast<std::uint16_t>(key);
    if (__builtin_popcount(static_cast<unsigned>(key)) & 1) {
      mask |= static_cast<std::uint16_t>(1u << key_bits);
    }
    out.terms_.push_back({mask, acc[key]});
    acc[key] = 0;
  }
  out.normalize();
  return out;
}

SpinElement SpinElement::multiply(const SpinElement& rhs) const {
  return clifford_product(*this, rhs);
}

SpinElement SpinElement::negated() const {
  SpinElement out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

SpinElement SpinElement::inverse() const {
  // reversal: e_{i1..ik} -> e_{ik..i1} = (-1)^{k(k-1)/2} e_{i1..ik}
  SpinElement out = *this;
  for (auto& t : out.terms_) {
    const int k = __builtin_popcount(t.mask);
    if ((k * (k - 1) / 2) & 1) t.coeff = -t.coeff;
  }
  out.proj_ = proj_.inverse();
  return out;
}

bool SpinElement::is_plus_one() const {
  return shift_ == 0 && terms_.size() == 1 && terms_[0].mask == 0 && terms_[0].coeff == 1;
}

bool SpinElement::is_minus_one() const {
  return shift_ == 0 && terms_.size() == 1 && terms_[0].mask == 0 && terms_[0].coeff == -1;
}

std::optional<int> SpinElement::sign_relative_to(const SpinElement& rhs) const {
  if (n_ != rhs.n_ || shift_ != rhs.shift_ || terms_.size() != rhs.terms_.size()) {
    return std::nullopt;
  }
  if (terms_.empty()) return 1;
  int sign = 0;  // unknown
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].mask != rhs.terms_[i].mask) return std::nullopt;
    if (terms_[i].coeff == rhs.terms_[i].coeff) {
      if (sign == -1) return std::nullopt;
      sign = 1;
    } else if (terms_[i].coeff == -rhs.terms_[i].coeff) {
      if (sign == 1) return std::nullopt;
      sign = -1;
    } else {
      return std::nullopt;
    }
  }
  return sign;
}

SpinElement reflection_pair_product(int n, int a, int b) {
  // (e_a - e_{a+1})(e_b - e_{b+1}) / 2
  SpinElement out;
  out.n_ = n;
  out.shift_ = 1;
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::vector<int> im = id;
  std::swap(im[b], im[b + 1]);  // apply t_b first, then t_a
  std::swap(im[a], im[a + 1]);
  // projection of the pair U_a * U_b corresponds to t_b then t_a under the
  // tracked composition; assembled below in section building order
  Permutation tb_then_ta{im};
  out.proj_ = tb_then_ta;

  auto add_term = [&](int x, int y, Int sgn) {
    // e_x * e_y
    std::uint16_t mask;
    Int c = sgn;
    if (x == y) {
      mask = 0;
    } else {
      mask = static_cast<std::uint16_t>((1u << x) | (1u << y));
      if (x > y) c = -c;
    }
    for (auto& t : out.terms_) {
      if (t.mask == mask) {
        t.coeff += c;
        return;
      }
    }
    out.terms_.push_back({mask, c});
  };
  add_term(a, b, 1);
  add_term(a, b + 1, -1);
  add_term(a + 1, b, -1);
  add_term(a + 1, b + 1, 1);
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// SpinContext

SpinContext::SpinContext(int n) : n_(n) {
  if (n < 4 || n > 9) throw InputError("spin cover supports 4 <= n <= 9");
}

SpinElement SpinContext::compute_section(const Permutation& g) const {
  if (g.degree() != n_) throw InputError("spin section: degree mismatch");
  if (g.parity() != 0) throw InputError("spin section: permutation must be even");
  const std::vector<int> word = transposition_word(g);
  if (word.empty()) return SpinElement::one(n_);
  // s(g) = U_{w_1} * U_{w_2} * ... * U_{w_k}, two reflections at a time.
  SpinElement acc = reflection_pair_product(n_, word[0], word[1]);
  for (std::size_t i = 2; i + 1 < word.size(); i += 2) {
    acc = clifford_product(acc, reflection_pair_product(n_, word[i], word[i + 1]));
  }
  acc.proj_ = g;
  return acc;
}

SpinElement SpinContext::section(const Permutation& g) const { return *section_ptr(g); }

const SpinElement* SpinContext::section_ptr(const Permutation& g) const {
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(g.images());
    if (it != memo_.end()) return &it->second;
  }
  SpinElement s = compute_section(g);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    if (memo_.size() < 80000) {
      auto [it, inserted] = memo_.emplace(g.images(), std::move(s));
      (void)inserted;
      return &it->second;
    }
  }
  // memo full: hand out a thread-local slot; a small ring keeps the pointers
  // alive across the three lookups a cocycle evaluation performs
  thread_local std::array<SpinElement, 4> ring;
  thread_local int ring_pos = 0;
  SpinElement& slot = ring[ring_pos];
  ring_pos = (ring_pos + 1) & 3;
  slot = std::move(s);
  return &slot;
}

void SpinContext::preload(const std::vector<Permutation>& elems, bool parallel) {
  if (!parallel) {
    for (const auto& g : elems) section_ptr(g);
    return;
  }
  std::vector<SpinElement> computed(elems.size());
  parallel_for(elems.size(), true, [&](std::size_t i) { computed[i] = compute_section(elems[i]); });
  std::lock_guard<std::mutex> lock(memo_mutex_);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    memo_.emplace(elems[i].images(), std::move(computed[i]));
  }
}

Int SpinContext::cocycle(const Permutation& g, const Permutation& h) const {
  if (g.is_identity() || h.is_identity()) return 0;
  const SpinElement* sg = section_ptr(g);
  const SpinElement* sh = section_ptr(h);
  const SpinElement* sgh = section_ptr(g * h);
  const SpinElement prod = clifford_product(*sg, *sh);
  const auto sign = prod.sign_relative_to(*sgh);
  if (!sign) {
    throw InvariantError("spin section product is not +-s(gh) at (" + g.cycles() + ", " +
                         h.cycles() + ")");
  }
  return *sign == 1 ? 0 : 1;
}

Cochain2 SpinContext::as_cochain2(GroupPtr domain, ModulePtr z2) const {
  if (domain->degree() != n_) throw InputError("spin cocycle: degree mismatch");
  if (z2->modulus() != 2 || z2->rank() != 1) {
    throw InputError("spin cocycle takes values in the trivial Z/2 module");
  }
  const SpinContext* self = this;
  return Cochain2::lazy(std::move(domain), std::move(z2),
                        [self](const Permutation& g, const Permutation& h) {
                          return Vec{self->cocycle(g, h)};
                        });
}

}  // namespace coex
