#include "coex/gfq.hpp"

#include <array>

namespace coex {

namespace {

// fixed irreducible polynomials: coefficients of x^e in terms of lower powers
// GF(4): x^2 = x + 1; GF(8): x^3 = x + 1; GF(9): x^2 = x + 1 over GF(3)
// (x^2 + 2x + 2 = 0  =>  x^2 = -2x - 2 = x + 1 mod 3)
struct FieldSpec {
  Int q, p;
  int e;
  std::array<Int, 3> top;  // x^e = top[0] + top[1] x + top[2] x^2
};

FieldSpec spec_for(Int q) {
  switch (q) {
    case 2: return {2, 2, 1, {0, 0, 0}};
    case 3: return {3, 3, 1, {0, 0, 0}};
    case 4: return {4, 2, 2, {1, 1, 0}};
    case 5: return {5, 5, 1, {0, 0, 0}};
    case 7: return {7, 7, 1, {0, 0, 0}};
    case 8: return {8, 2, 3, {1, 1, 0}};
    case 9: return {9, 3, 2, {1, 1, 0}};
    case 11: return {11, 11, 1, {0, 0, 0}};
    case 13: return {13, 13, 1, {0, 0, 0}};
    default:
      throw InputError("GF(q) supported only for prime powers q <= 13, got q = " +
                       std::to_string(q));
  }
}

}  // namespace

Gfq::Gfq(Int q) {
  const FieldSpec spec = spec_for(q);
  q_ = spec.q;
  p_ = spec.p;
  e_ = spec.e;

  auto coeffs = [&](Int a) {
    std::array<Int, 3> c{0, 0, 0};
    for (int i = 0; i < e_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  };
  auto index_of = [&](const std::array<Int, 3>& c) {
    Int idx = 0;
    for (int i = e_ - 1; i >= 0; --i) idx = idx * p_ + c[i];
    return idx;
  };

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  frob_.resize(q_);
  for (Int a = 0; a < q_; ++a) {
    const auto ca = coeffs(a);
    std::array<Int, 3> na{};
    for (int i = 0; i < e_; ++i) na[i] = mod_reduce(-ca[i], p_);
    neg_[a] = index_of(na);
    for (Int b = 0; b < q_; ++b) {
      const auto cb = coeffs(b);
      std::array<Int, 3> s{};
      for (int i = 0; i < e_; ++i) s[i] = mod_reduce(ca[i] + cb[i], p_);
      add_[a * q_ + b] = index_of(s);

      // polynomial product, reduced by the fixed irreducible
      std::array<Int, 5> prod{};
      for (int i = 0; i < e_; ++i) {
        for (int j = 0; j < e_; ++j) {
          prod[i + j] = mod_reduce(prod[i + j] + ca[i] * cb[j], p_);
        }
      }
      for (int d = 2 * e_ - 2; d >= e_; --d) {
        const Int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < e_; ++i) {
          prod[d - e_ + i] = mod_reduce(prod[d - e_ + i] + c * spec.top[i], p_);
        }
      }
      std::array<Int, 3> r{prod[0], prod[1], prod[2]};
      mul_[a * q_ + b] = index_of(r);
    }
  }
  for (Int a = 0; a < q_; ++a) {
    Int x = a;
    for (Int i = 1; i < p_; ++i) x = mul(x, a);
    frob_[a] = x;
  }
  primitive_ = 0;
  for (Int g = 1; g < q_ && primitive_ == 0; ++g) {
    Int x = g;
    Int count = 1;
    while (x != 1) {
      x = mul(x, g);
      ++count;
      if (count > q_) break;
    }
    if (count == q_ - 1) primitive_ = g;
  }
  if (primitive_ == 0 && q_ > 2) throw InvariantError("no primitive element found");
  if (q_ == 2) primitive_ = 1;
}

Int Gfq::inv(Int a) const {
  if (a == 0) throw InputError("GF(q): division by zero");
  for (Int b = 1; b < q_; ++b) {
    if (mul(a, b) == 1) return b;
  }
  throw InvariantError("GF(q): no inverse found");
}

Int Gfq::pow_of_primitive(int k) const {
  Int x = 1;
  for (int i = 0; i < k; ++i) x = mul(x, primitive_);
  return x;
}

Mat2 mat2_mul(const Gfq& F, const Mat2& A, const Mat2& B) {
  return {F.add(F.mul(A[0], B[0]), F.mul(A[1], B[2])),
          F.add(F.mul(A[0], B[1]), F.mul(A[1], B[3])),
          F.add(F.mul(A[2], B[0]), F.mul(A[3], B[2])),
          F.add(F.mul(A[2], B[1]), F.mul(A[3], B[3]))};
}

Mat2 mat2_neg(const Gfq& F, const Mat2& A) {
  return {F.neg(A[0]), F.neg(A[1]), F.neg(A[2]), F.neg(A[3])};
}

Permutation moebius_right_perm(const Gfq& F, const Mat2& M) {
  const Int det = F.sub(F.mul(M[0], M[3]), F.mul(M[1], M[2]));
  if (det != 1) throw InputError("moebius action requires det 1");
  const Int q = F.q();
  const Int a = M[0], b = M[1], c = M[2], d = M[3];
  std::vector<int> images(q + 1);
  // x * M = (d x - b) / (a - c x); infinity is the point q
  for (Int x = 0; x < q; ++x) {
    const Int num = F.sub(F.mul(d, x), b);
    const Int den = F.sub(a, F.mul(c, x));
    images[x] = (den == 0) ? static_cast<int>(q) : static_cast<int>(F.mul(num, F.inv(den)));
  }
  if (c == 0) {
    images[q] = static_cast<int>(q);
  } else {
    images[q] = static_cast<int>(F.neg(F.mul(d, F.inv(c))));
  }
  return Permutation(std::move(images));
}

namespace {

// canonical +-representative: the first nonzero entry in scan order must be
// the smaller index of {z, -z}
Mat2 canonical_sign(const Gfq& F, const Mat2& M) {
  for (int i = 0; i < 4; ++i) {
    if (M[i] != 0) {
      return (F.neg(M[i]) < M[i]) ? mat2_neg(F, M) : M;
    }
  }
  throw InvariantError("zero matrix in canonical_sign");
}

std::vector<Mat2> sl2_generator_matrices(const Gfq& F) {
  std::vector<Mat2> gens;
  for (int i = 0; i < F.degree(); ++i) {
    gens.push_back({1, F.pow_of_primitive(i), 0, 1});  // translations by a basis
  }
  gens.push_back({0, F.neg(1), 1, 0});  // x -> -1/x
  return gens;
}

}  // namespace

Psl2Data build_psl2(Int q) {
  Psl2Data data;
  data.field = std::make_shared<Gfq>(q);
  const Gfq& F = *data.field;

  const auto mats = sl2_generator_matrices(F);
  std::vector<Permutation> gens;
  for (const auto& M : mats) gens.push_back(moebius_right_perm(F, M));
  data.group = std::make_shared<PermGroup>(static_cast<int>(q) + 1, gens);

  const Int expected = q * (q * q - 1) / (q % 2 == 1 ? 2 : 1);
  if (data.group->order() != expected) {
    throw InvariantError("PSL2(" + std::to_string(q) + ") order " +
                         std::to_string(data.group->order()) + " != " +
                         std::to_string(expected));
  }

  // Borel subgroup: stabilizer of infinity, generated by the translations
  // and the diagonal torus element
  std::vector<Permutation> borel_gens;
  for (int i = 0; i < F.degree(); ++i) {
    borel_gens.push_back(moebius_right_perm(F, {1, F.pow_of_primitive(i), 0, 1}));
  }
  if (q > 3) {
    const Int t = F.primitive();
    borel_gens.push_back(moebius_right_perm(F, {t, 0, 0, F.inv(t)}));
  }
  data.borel = std::make_shared<PermGroup>(static_cast<int>(q) + 1, borel_gens);
  const Int borel_expected = q * (q - 1) / (q % 2 == 1 ? 2 : 1);
  if (data.borel->order() != borel_expected) {
    throw InvariantError("Borel subgroup order mismatch for q = " + std::to_string(q));
  }

  // canonical matrix table for the sign cocycle (odd q only)
  if (q % 2 == 1) {
    std::vector<Mat2> queue{Mat2{1, 0, 0, 1}};
    data.canon.emplace(Permutation(static_cast<int>(q) + 1).images(), queue[0]);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const auto& T : mats) {
        const Mat2 P = canonical_sign(F, mat2_mul(F, queue[i], T));
        const Permutation perm = moebius_right_perm(F, P);
        if (data.canon.emplace(perm.images(), P).second) queue.push_back(P);
      }
    }
    if (static_cast<Int>(data.canon.size()) != data.group->order()) {
      throw InvariantError("canonical matrix table size mismatch");
    }
  }
  return data;
}

Cochain2 Psl2Data::cocycle(GroupPtr domain, ModulePtr z2) const {
  if (field->q() % 2 == 0) throw InputError("sign cocycle needs odd q");
  if (z2->modulus() != 2 || z2->rank() != 1) {
    throw InputError("sign cocycle takes values in the trivial Z/2 module");
  }
  const Psl2Data* self = this;
  return Cochain2::lazy(
      std::move(domain), std::move(z2), [self](const Permutation& g, const Permutation& h) {
        const Gfq& F = *self->field;
        const auto ig = self->canon.find(g.images());
        const auto ih = self->canon.find(h.images());
        const auto igh = self->canon.find((g * h).images());
        if (ig == self->canon.end() || ih == self->canon.end() || igh == self->canon.end()) {
          throw InputError("psl2 cocycle evaluated outside the group");
        }
        const Mat2 prod = mat2_mul(F, ig->second, ih->second);
        if (prod == igh->second) return Vec{0};
        if (prod == mat2_neg(F, igh->second)) return Vec{1};
        throw InvariantError("canonical matrix product is not +-M(gh)");
      });
}

std::shared_ptr<PermGroup> build_pgl28() {
  Gfq F(8);
  std::vector<Permutation> gens;
  for (const auto& M : sl2_generator_matrices(F)) gens.push_back(moebius_right_perm(F, M));
  // Frobenius x -> x^2, fixing infinity
  std::vector<int> images(9);
  for (Int x = 0; x < 8; ++x) images[x] = static_cast<int>(F.frobenius(x));
  images[8] = 8;
  gens.push_back(Permutation(std::move(images)));
  auto out = std::make_shared<PermGroup>(9, gens);
  if (out->order() != 1512) {
    throw InvariantError("PGammaL2(8) order " + std::to_string(out->order()) + " != 1512");
  }
  return out;
}

}  // namespace coex
