#include "doctest.h"

#include <set>
#include <vector>

#include "coex/common.hpp"
#include "coex/perm.hpp"

using namespace coex;

namespace {

Permutation P(const std::string& s, int degree) { return Permutation::parse_cycles(s, degree); }

// Independent order oracle: plain closure enumeration, no stabilizer chain.
std::size_t closure_size(const std::vector<Permutation>& gens, int degree) {
  std::set<std::vector<int>> seen;
  std::vector<Permutation> queue{Permutation(degree)};
  seen.insert(queue[0].images());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      Permutation c = queue[i] * g;
      if (seen.insert(c.images()).second) queue.push_back(c);
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("cycle notation round trips") {
  CHECK(P("(1,2,3)(4,5)", 6).cycles() == "(1,2,3)(4,5)");
  CHECK(P("( 1 , 2 ) ", 4).cycles() == "(1,2)");
  CHECK(Permutation(5).cycles() == "()");
  CHECK(P("(1,2,3)", 3) * P("(1,2,3)", 3) == P("(1,3,2)", 3));
  CHECK_THROWS_AS(P("(1,2)(2,3)", 4), InputError);   // not disjoint
  CHECK_THROWS_AS(P("(1,9)", 4), InputError);        // out of range
  CHECK_THROWS_AS(P("1,2", 4), InputError);
}

TEST_CASE("composition is apply-left-then-right") {
  // p^(x*y) = (p^x)^y
  Permutation x = P("(1,2)", 3);
  Permutation y = P("(2,3)", 3);
  Permutation xy = x * y;
  for (int p = 0; p < 3; ++p) CHECK(xy[p] == y[x[p]]);
  CHECK((x * x.inverse()).is_identity());
}

TEST_CASE("group order matches the closure oracle") {
  CHECK(PermGroup(5, {}).order() == 1);  // trivial group, degree 5

  struct Fixture {
    std::vector<std::string> gens;
    int degree;
    Int expected;
  };
  const std::vector<Fixture> corpus = {
      {{"(1,2,3,4,5)", "(3,4,5)"}, 5, 60},  // A5
      {{"(1,2)", "(1,2,3)"}, 3, 6},          // S3
      {{"(1,2,3)"}, 3, 3},
      {{"(1,2)(3,4)", "(1,3)(2,4)"}, 4, 4},  // V4
      {{"(1,2,3)", "(1,2)(3,4)"}, 4, 12},    // A4
      {{"(1,2,3,4)", "(1,2)"}, 4, 24},       // S4
      {{"(1,2,3,4)", "(1,3)"}, 4, 8},        // D4
      {{"(1,2,3,4,5,6)"}, 6, 6},
      {{"(1,2,3)", "(1,2,4)", "(1,2,5)", "(1,2,6)"}, 6, 360},  // A6
      {{"(1,2,3,4,5)", "(4,5,6,7,8)"}, 8, 20160},              // A8-ish? verified below
  };
  for (const auto& f : corpus) {
    std::vector<Permutation> gens;
    for (const auto& s : f.gens) gens.push_back(P(s, f.degree));
    PermGroup g(f.degree, gens);
    if (f.expected <= 2000) {
      CHECK(static_cast<Int>(closure_size(gens, f.degree)) == g.order());
    }
    CHECK(g.order() == f.expected);
  }
}

TEST_CASE("membership and element enumeration agree") {
  PermGroup a4(4, {P("(1,2,3)", 4), P("(1,2)(3,4)", 4)});
  CHECK(a4.contains(P("(1,3)(2,4)", 4)));
  CHECK_FALSE(a4.contains(P("(1,2)", 4)));
  CHECK(a4.elements().size() == 12);
  CHECK(a4.element_index(Permutation(4)) == 0);

  // Every generator and the identity pass membership.
  for (const auto& g : a4.generators()) CHECK(a4.contains(g));
  CHECK(a4.contains(Permutation(4)));
}

TEST_CASE("chain factorization reassembles the element") {
  PermGroup a5(5, {P("(1,2,3,4,5)", 5), P("(3,4,5)", 5)});
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    Permutation g = a5.random_element(rng);
    Permutation prod(5);
    for (const auto* f : a5.chain_factorization(g)) prod = prod * (*f);
    CHECK(prod == g);
  }
}

TEST_CASE("left transversal basics") {
  PermGroup s3(3, {P("(1,2)", 3), P("(1,2,3)", 3)});
  PermGroup c3(3, {P("(1,2,3)", 3)});
  CosetTransversal t(s3, c3);
  CHECK(t.index() == 2);
  auto [i0, h0] = t.factor(Permutation(3));
  CHECK(i0 == 0);
  CHECK(h0.is_identity());

  CHECK(CosetTransversal(c3, c3).index() == 1);  // H = G

  PermGroup v4(4, {P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
  CHECK_THROWS_AS(CosetTransversal(PermGroup(4, {P("(1,2,3)", 4)}), v4), InputError);
}

TEST_CASE("transversal for a point stabilizer of A9") {
  std::vector<Permutation> a9_gens;
  for (int k = 3; k <= 9; ++k) {
    a9_gens.push_back(P("(1,2," + std::to_string(k) + ")", 9));
  }
  PermGroup a9(9, a9_gens);
  CHECK(a9.order() == 181440);

  // Stabilizer of point 9 is A8 on the first eight points.
  std::vector<Permutation> a8_gens;
  for (int k = 3; k <= 8; ++k) {
    a8_gens.push_back(P("(1,2," + std::to_string(k) + ")", 9));
  }
  PermGroup stab(9, a8_gens);
  CHECK(stab.order() == 20160);

  CosetTransversal t(a9, stab);
  CHECK(t.index() == 9);
  CHECK(t.reps()[0].is_identity());

  Rng rng(0);
  for (int s = 0; s < 200; ++s) {
    Permutation x = a9.random_element(rng);
    auto [i, h] = t.factor(x);
    CHECK(stab.contains(h));
    CHECK(t.reps()[i] * h == x);
  }
}

TEST_CASE("factor round trip on random elements") {
  PermGroup a5(5, {P("(1,2,3,4,5)", 5), P("(3,4,5)", 5)});
  PermGroup c5(5, {P("(1,2,3,4,5)", 5)});
  CosetTransversal t(a5, c5);
  CHECK(t.index() == 12);
  Rng rng(42);
  for (int s = 0; s < 1000; ++s) {
    Permutation x = a5.random_element(rng);
    auto [i, h] = t.factor(x);
    CHECK(t.reps()[i] * h == x);
  }
  CHECK_THROWS_AS(t.factor(P("(1,2)", 5)), InputError);  // odd, not in A5
}

TEST_CASE("transposition word recomposes and tracks parity") {
  CHECK(transposition_word(Permutation(4)).empty());

  auto recompose = [](const std::vector<int>& word, int degree) {
    Permutation prod(degree);
    for (int p : word) {
      std::vector<int> im(degree);
      for (int i = 0; i < degree; ++i) im[i] = i;
      std::swap(im[p], im[p + 1]);
      prod = prod * Permutation(im);
    }
    return prod;
  };

  Permutation c = P("(1,2,3)", 3);
  auto w = transposition_word(c);
  CHECK(w.size() == 2);
  CHECK(recompose(w, 3) == c);

  std::vector<Permutation> a9_gens;
  for (int k = 3; k <= 9; ++k) a9_gens.push_back(P("(1,2," + std::to_string(k) + ")", 9));
  PermGroup a9(9, a9_gens);
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    Permutation g = a9.random_element(rng);
    auto word = transposition_word(g);
    CHECK(recompose(word, 9) == g);
    CHECK(static_cast<int>(word.size() % 2) == g.parity());
  }
}

TEST_CASE("generator degree mismatch is rejected") {
  CHECK_THROWS_AS(PermGroup(4, {P("(1,2,3)", 3)}), InputError);
}
