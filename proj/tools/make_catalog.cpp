// Generates the subgroup catalog and candidate data files under data/v1/.
// The shipped JSON is committed; this tool records how it was produced and
// re-verifies every order against the stabilizer chain before writing.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "coex/casework.hpp"
#include "coex/common.hpp"
#include "coex/gfq.hpp"
#include "coex/perm.hpp"
#include "json.hpp"

using namespace coex;
using nlohmann::ordered_json;

namespace {

Permutation P(const std::string& s, int degree) { return Permutation::parse_cycles(s, degree); }

// Schreier generators of the even-permutation subgroup of <gens>
std::vector<Permutation> even_part(const std::vector<Permutation>& gens) {
  const Permutation* odd = nullptr;
  for (const auto& g : gens) {
    if (g.parity() == 1) {
      odd = &g;
      break;
    }
  }
  if (!odd) return gens;
  std::vector<Permutation> out;
  auto push = [&](const Permutation& g) {
    if (g.is_identity()) return;
    for (const auto& have : out) {
      if (have == g) return;
    }
    out.push_back(g);
  };
  const Permutation oi = odd->inverse();
  for (const auto& g : gens) {
    if (g.parity() == 0) {
      push(g);
      push((*odd) * g * oi);
    } else {
      push(g * oi);
      push((*odd) * g);
    }
  }
  return out;
}

std::vector<std::string> cycle_strings(const std::vector<Permutation>& gens) {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(g.cycles());
  return out;
}

struct Entry {
  std::string name;
  std::vector<Permutation> gens;
  Int order;
  std::string classes;
  std::string provenance;
};

// (S_k x S_{n-k}) meet A_n
Entry intransitive(int n, int k) {
  std::vector<Permutation> gens;
  auto cyc = [&](int lo, int hi) {  // (lo,lo+1,...,hi), 1-based
    std::string s = "(";
    for (int i = lo; i <= hi; ++i) s += std::to_string(i) + (i < hi ? "," : ")");
    return P(s, n);
  };
  if (k >= 2) {
    gens.push_back(P("(1,2)", n));
    if (k >= 3) gens.push_back(cyc(1, k));
  }
  if (n - k >= 2) {
    gens.push_back(P("(" + std::to_string(k + 1) + "," + std::to_string(k + 2) + ")", n));
    if (n - k >= 3) gens.push_back(cyc(k + 1, n));
  }
  Int order = 1;
  for (int i = 2; i <= k; ++i) order *= i;
  for (int i = 2; i <= n - k; ++i) order *= i;
  order /= 2;
  Entry e;
  e.name = "(S" + std::to_string(k) + " x S" + std::to_string(n - k) + ") meet A" +
           std::to_string(n);
  e.gens = even_part(gens);
  e.order = order;
  e.classes = "one A" + std::to_string(n) + "-class";
  e.provenance = "even part of the natural S" + std::to_string(k) + " x S" +
                 std::to_string(n - k) + " on the split point set";
  return e;
}

// (S_a wr S_b) meet A_n, n = a*b
Entry imprimitive(int n, int a, int b) {
  std::vector<Permutation> gens;
  gens.push_back(P("(1,2)", n));
  if (a >= 3) {
    std::string s = "(";
    for (int i = 1; i <= a; ++i) s += std::to_string(i) + (i < a ? "," : ")");
    gens.push_back(P(s, n));
  }
  {  // swap blocks 1 and 2
    std::string s;
    for (int i = 1; i <= a; ++i) {
      s += "(" + std::to_string(i) + "," + std::to_string(a + i) + ")";
    }
    gens.push_back(P(s, n));
  }
  if (b >= 3) {  // cycle all blocks
    std::string s;
    for (int i = 1; i <= a; ++i) {
      s += "(";
      for (int j = 0; j < b; ++j) s += std::to_string(j * a + i) + (j + 1 < b ? "," : ")");
    }
    gens.push_back(P(s, n));
  }
  Int fact_a = 1, fact_b = 1;
  for (int i = 2; i <= a; ++i) fact_a *= i;
  for (int i = 2; i <= b; ++i) fact_b *= i;
  Int order = fact_b;
  for (int i = 0; i < b; ++i) order *= fact_a;
  order /= 2;
  Entry e;
  e.name = "(S" + std::to_string(a) + " wr S" + std::to_string(b) + ") meet A" +
           std::to_string(n);
  e.gens = even_part(gens);
  e.order = order;
  e.classes = "one A" + std::to_string(n) + "-class";
  e.provenance = "even part of the block wreath product on " + std::to_string(b) +
                 " blocks of " + std::to_string(a);
  return e;
}

Entry conjugate_entry(const Entry& e, int n, const std::string& suffix) {
  const Permutation t = P("(1,2)", n);
  const Permutation ti = t.inverse();
  Entry out = e;
  out.gens.clear();
  for (const auto& g : e.gens) out.gens.push_back(ti * g * t);
  out.name = e.name + suffix;
  out.provenance = e.provenance + "; conjugated by (1,2) for the second A_n-class";
  return out;
}

// GL3(2) acting on the nonzero vectors of F_2^3; vector v sits at 0-based
// point index v + shift (shift = -1 puts vectors 1..7 on points 1..7).
std::vector<Permutation> gl32_gens(int degree, int shift) {
  // row-vector right action v -> v * M
  auto apply = [&](int v, const int M[3][3]) {
    int out = 0;
    for (int i = 0; i < 3; ++i) {
      if (!(v & (1 << i))) continue;
      for (int j = 0; j < 3; ++j) out ^= M[i][j] << j;
    }
    return out;
  };
  const int A[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};  // basis cycle
  const int B[3][3] = {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};  // transvection
  std::vector<Permutation> out;
  for (const auto& M : {A, B}) {
    std::vector<int> images(degree);
    for (int i = 0; i < degree; ++i) images[i] = i;
    for (int v = 1; v <= 7; ++v) {
      images[v + shift] = apply(v, M) + shift;
    }
    out.push_back(Permutation(images));
  }
  return out;
}

Entry l27(int n) {
  Entry e;
  e.name = "L2(7) on 7 points";
  e.gens = gl32_gens(n, -1);
  e.order = 168;
  e.classes = "two A7-classes, fused in S7";
  e.provenance = "PSL(3,2) = L2(7) on the nonzero vectors of F_2^3, point k = vector k";
  return e;
}

Entry agl32(int n) {
  // affine group on F_2^3: translations + GL3(2) fixing 0; points 1..8 = v+1
  std::vector<Permutation> gens;
  for (int t = 1; t <= 4; t <<= 1) {
    std::vector<int> images(n);
    for (int i = 0; i < n; ++i) images[i] = i;
    for (int v = 0; v < 8; ++v) images[v] = v ^ t;
    gens.push_back(Permutation(images));
  }
  auto lin = gl32_gens(n, 0);  // vector v sits at 0-based point v
  gens.insert(gens.end(), lin.begin(), lin.end());
  Entry e;
  e.name = "AGL3(2)";
  e.gens = gens;
  e.order = 1344;
  e.classes = "two A8-classes, fused in S8";
  e.provenance = "translations of F_2^3 with GL3(2), point k = vector k-1";
  return e;
}

Entry asl23() {
  // affine special group on F_3^2: points 1..9, point = 1 + x + 3y
  const int n = 9;
  auto point = [](int x, int y) { return 1 + x + 3 * y; };
  std::vector<Permutation> gens;
  auto add_map = [&](auto&& fn, const char* /*label*/) {
    std::vector<int> images(n);
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) {
        auto [nx, ny] = fn(x, y);
        images[point(x, y) - 1] = point(nx, ny) - 1;
      }
    }
    gens.push_back(Permutation(images));
  };
  add_map([](int x, int y) { return std::pair<int, int>{(x + 1) % 3, y}; }, "t1");
  add_map([](int x, int y) { return std::pair<int, int>{x, (y + 1) % 3}; }, "t2");
  // right action by [[1,1],[0,1]]: (x, y) -> (x, x + y)
  add_map([](int x, int y) { return std::pair<int, int>{x, (x + y) % 3}; }, "u");
  // right action by [[0,2],[1,0]]: (x, y) -> (y, 2x)
  add_map([](int x, int y) { return std::pair<int, int>{y, (2 * x) % 3}; }, "w");
  Entry e;
  e.name = "ASL2(3)";
  e.gens = gens;
  e.order = 216;
  e.classes = "one A9-class";
  e.provenance = "translations of AG(2,3) with SL2(3), point = 1 + x + 3y";
  return e;
}

Entry pgl28() {
  auto g = build_pgl28();
  Entry e;
  e.name = "PGammaL2(8)";
  e.gens = g->generators();
  e.order = 1512;
  e.classes = "two A9-classes, fused in S9";
  e.provenance =
      "PSL2(8) on the projective line over GF(8) (x^3 = x + 1) with the Frobenius x -> x^2; "
      "points 1..8 = field elements 0..7, point 9 = infinity";
  return e;
}

Entry psl25_on_6() {
  Psl2Data data = build_psl2(5);
  Entry e;
  e.name = "PSL2(5) transitive on 6 points";
  e.gens = data.group->generators();
  e.order = 60;
  e.classes = "one A6-class, distinct from the point stabilizer class";
  e.provenance = "Moebius action on the projective line over GF(5); point 6 = infinity";
  return e;
}

Entry a_point_stab(int n) {
  std::vector<Permutation> gens;
  for (int k = 3; k <= n - 1; ++k) gens.push_back(P("(1,2," + std::to_string(k) + ")", n));
  Int order = 1;  // (n-1)!/2
  for (int i = 2; i <= n - 1; ++i) order *= i;
  order /= 2;
  Entry e;
  e.name = "A" + std::to_string(n - 1) + " (point stabilizer)";
  e.gens = gens;
  e.order = order;
  e.classes = "one A" + std::to_string(n) + "-class";
  e.provenance = "stabilizer of the last point";
  return e;
}

Entry agammal18() {
  Gfq F(8);
  const int n = 8;
  std::vector<Permutation> gens;
  auto add_map = [&](auto&& fn) {
    std::vector<int> images(n);
    for (Int x = 0; x < 8; ++x) images[x] = static_cast<int>(fn(x));
    gens.push_back(Permutation(images));
  };
  add_map([&](Int x) { return F.add(x, 1); });
  add_map([&](Int x) { return F.mul(x, F.primitive()); });
  add_map([&](Int x) { return F.frobenius(x); });
  Entry e;
  e.name = "AGammaL1(8)";
  e.gens = gens;
  e.order = 168;
  e.classes = "non-maximal candidate";
  e.provenance = "x -> ax + b with the Frobenius, on GF(8) (x^3 = x + 1); point k = element k-1";
  return e;
}

Entry agl18() {
  Gfq F(8);
  const int n = 8;
  std::vector<Permutation> gens;
  auto add_map = [&](auto&& fn) {
    std::vector<int> images(n);
    for (Int x = 0; x < 8; ++x) images[x] = static_cast<int>(fn(x));
    gens.push_back(Permutation(images));
  };
  add_map([&](Int x) { return F.add(x, 1); });
  add_map([&](Int x) { return F.mul(x, F.primitive()); });
  Entry e;
  e.name = "AGL1(8)";
  e.gens = gens;
  e.order = 56;
  e.classes = "non-maximal candidate";
  e.provenance = "x -> ax + b on GF(8); point k = element k-1";
  return e;
}

Entry named(const std::string& name, const std::vector<std::string>& gens, int n, Int order,
            const std::string& prov) {
  Entry e;
  e.name = name;
  for (const auto& s : gens) e.gens.push_back(P(s, n));
  e.order = order;
  e.classes = "non-maximal candidate";
  e.provenance = prov;
  return e;
}

ordered_json to_json(const Entry& e, int n, Int an_order) {
  ordered_json j;
  j["name"] = e.name;
  j["generators"] = cycle_strings(e.gens);
  j["order"] = e.order;
  j["index"] = an_order / e.order;
  j["classes"] = e.classes;
  j["provenance"] = e.provenance;
  return j;
}

void write_file(const std::string& path, const std::vector<Entry>& entries, int n) {
  auto an = alternating_group(n);
  ordered_json doc = ordered_json::array();
  for (const auto& e : entries) {
    PermGroup g(n, e.gens);
    if (g.order() != e.order) {
      throw InvariantError("entry '" + e.name + "' generates order " +
                           std::to_string(g.order()) + ", wanted " + std::to_string(e.order));
    }
    if (!an->contains_group(g)) {
      throw InvariantError("entry '" + e.name + "' is not inside A_" + std::to_string(n));
    }
    doc.push_back(to_json(e, n, an->order()));
  }
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
  std::cout << path << ": " << entries.size() << " entries\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data/v1";

  write_file(dir + "/catalog_a4.json",
             {named("V4", {"(1,2)(3,4)", "(1,3)(2,4)"}, 4, 4, "the Klein four-subgroup"),
              named("C3", {"(1,2,3)"}, 4, 3, "a point stabilizer")},
             4);

  write_file(dir + "/catalog_a5.json",
             {a_point_stab(5),
              named("D10", {"(1,2,3,4,5)", "(2,5)(3,4)"}, 5, 10,
                    "dihedral normalizer of a 5-cycle"),
              named("S3", {"(1,2,3)", "(1,2)(4,5)"}, 5, 6, "even part of S3 x S2")},
             5);

  write_file(dir + "/catalog_a6.json",
             {a_point_stab(6), psl25_on_6(), imprimitive(6, 3, 2), intransitive(6, 2),
              imprimitive(6, 2, 3)},
             6);

  {
    Entry l = l27(7);
    write_file(dir + "/catalog_a7.json",
               {a_point_stab(7), l, conjugate_entry(l, 7, " #2"), intransitive(7, 2),
                intransitive(7, 3)},
               7);
  }

  {
    Entry a = agl32(8);
    write_file(dir + "/catalog_a8.json",
               {a_point_stab(8), a, conjugate_entry(a, 8, " #2"), intransitive(8, 2),
                imprimitive(8, 4, 2), intransitive(8, 3)},
               8);
  }

  {
    Entry p = pgl28();
    write_file(dir + "/catalog_a9.json",
               {a_point_stab(9), intransitive(9, 2), intransitive(9, 3), intransitive(9, 4),
                imprimitive(9, 3, 3), p, conjugate_entry(p, 9, " #2"), asl23()},
               9);
  }

  // candidate pools for the f(n) upper bound (documented non-maximal cases)
  write_file(dir + "/candidates_a6.json",
             {named("3^2 (Sylow 3)", {"(1,2,3)", "(4,5,6)"}, 6, 9,
                    "largest odd-order subgroup; every involution of A6 is a double "
                    "transposition, so even-order subgroups cannot lift"),
              named("C5", {"(1,2,3,4,5)"}, 6, 5, "odd order")},
             6);
  write_file(dir + "/candidates_a7.json",
             {named("F21", {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}, 7, 21,
                    "Frobenius normalizer of a 7-cycle; the largest odd-order subgroup"),
              named("3^2", {"(1,2,3)", "(4,5,6)"}, 7, 9, "odd order")},
             7);
  write_file(dir + "/candidates_a8.json",
             {agammal18(), agl18(),
              named("F21", {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}, 8, 21, "odd order")},
             8);
  write_file(
      dir + "/candidates_a9.json",
      {named("A7 (two-point stabilizer)",
             {"(1,2,3)", "(1,2,4)", "(1,2,5)", "(1,2,6)", "(1,2,7)"}, 9, 2520,
             "with the catalog entries of indices 9, 36 and 84, this covers every subgroup "
             "of index below 120: any such subgroup lies in a maximal one of index 9, 36 or "
             "84, and the only one deep enough is this A7 at index 72")},
      9);

  std::cout << "done\n";
  return 0;
}
