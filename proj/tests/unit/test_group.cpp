#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "vst/coset_graph.hpp"
#include "vst/error.hpp"
#include "vst/group.hpp"

using namespace vst;

namespace {

Element perm(const char* cycles, std::size_t degree = 5) { return Permutation::from_cycles(cycles, degree).images(); }

Element random_perm(std::mt19937_64& rng, std::size_t degree) {
  Element e(degree);
  for (std::size_t i = 0; i < degree; ++i) e[i] = static_cast<std::uint32_t>(i);
  std::shuffle(e.begin(), e.end(), rng);
  return e;
}

}  // namespace

TEST_CASE("compose reads left to right") {
  Group z7(GroupKind{CyclicKind{7}});
  CHECK(z7.compose({1}, {2}) == Element{3});
  CHECK(z7.compose({5}, {4}) == Element{2});

  Group s3(GroupKind{PermutationKind{3}});
  CHECK(s3.compose({1, 0, 2}, {0, 2, 1}) == Element{2, 0, 1});
  CHECK(compose(Permutation({1, 0, 2}), Permutation({0, 2, 1})).images() == Element{2, 0, 1});
}

TEST_CASE("mismatched elements are structural errors") {
  Group s3(GroupKind{PermutationKind{3}});
  CHECK_THROWS_AS((void)s3.compose({0, 1}, {0, 1, 2}), Error);
  try {
    s3.check({0, 0, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::structural);
  }
  CHECK_THROWS_AS(Permutation({0, 2, 2}), Error);
  CHECK_THROWS_AS(Group(GroupKind{CyclicKind{1}}), Error);
}

TEST_CASE("group laws on random elements") {
  std::mt19937_64 rng(7);
  Group s6(GroupKind{PermutationKind{6}});
  const auto id = s6.identity();
  for (int i = 0; i < 100; ++i) {
    auto a = random_perm(rng, 6), b = random_perm(rng, 6), c = random_perm(rng, 6);
    CHECK(s6.compose(a, id) == a);
    CHECK(s6.compose(id, a) == a);
    CHECK(s6.compose(s6.compose(a, b), c) == s6.compose(a, s6.compose(b, c)));
    CHECK(s6.compose(a, s6.inverse(a)) == id);
  }
  ProductKind p;
  p.factors = {GroupKind{CyclicKind{4}}, GroupKind{PermutationKind{3}}};
  Group prod(GroupKind{p});
  CHECK(prod.width() == 4);
  CHECK(prod.compose({3, 1, 0, 2}, {2, 0, 2, 1}) == Element{1, 2, 0, 1});
}

TEST_CASE("cycle notation") {
  CHECK(perm("(13)(24)") == Element{2, 3, 0, 1, 4});
  CHECK(perm("(1 3)(2 4)") == perm("(1,3)(2,4)"));
  CHECK(perm("()") == Element{0, 1, 2, 3, 4});
  CHECK(Permutation::from_cycles("(34)(125)", 5).to_cycles() == "(1 2 5)(3 4)");
  CHECK_THROWS_AS(Permutation::from_cycles("(16)", 5), Error);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2", 5), Error);
}

// All 120 permutations of five points, by brute force.
std::vector<Element> all_s5() {
  std::vector<Element> out;
  Element e{0, 1, 2, 3, 4};
  do out.push_back(e);
  while (std::next_permutation(e.begin(), e.end()));
  return out;
}

std::vector<Element> stabilizer_brute_force() {
  std::vector<Element> out;
  for (const auto& e : all_s5()) {
    if ((e[0] == 0 || e[0] == 1) && (e[1] == 0 || e[1] == 1)) out.push_back(e);
  }
  return out;
}

TEST_CASE("enumerate_group") {
  Group z4(GroupKind{CyclicKind{4}});
  std::vector<Element> gens{{1}};
  auto t = enumerate_group(z4, gens);
  REQUIRE(t.size() == 4);
  CHECK(t[0] == Element{0});
  CHECK(t.index_of({3}) == 3);

  GroupSpec spec;
  spec.kind.kind = PermutationKind{5};
  spec.generators = {perm("(13)(24)"), perm("(13)(25)"), perm("(14)(25)")};
  spec.subgroup = stabilizer_brute_force();
  auto s5 = enumerate_group(spec);
  REQUIRE(s5.size() == 120);
  CHECK(s5[0] == Element{0, 1, 2, 3, 4});
  std::set<Element> got(s5.elements().begin(), s5.elements().end());
  auto want = all_s5();
  CHECK(got == std::set<Element>(want.begin(), want.end()));

  Group big(GroupKind{CyclicKind{1'000'000}});
  try {
    (void)enumerate_group(big, gens, 100'000);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::capacity);
    CHECK(std::string(e.what()).find("100000") != std::string::npos);
  }
}

TEST_CASE("library stabilizer matches brute force") {
  auto lib = petersen_stabilizer();
  auto ref = stabilizer_brute_force();
  CHECK(lib.size() == 12);
  CHECK(std::set<Element>(lib.begin(), lib.end()) == std::set<Element>(ref.begin(), ref.end()));
}

TEST_CASE("subgroup validation") {
  Group z6(GroupKind{CyclicKind{6}});
  std::vector<Element> h{{0}, {3}};
  CHECK(validate_subgroup(z6, h).size() == 2);
  std::vector<Element> no_id{{3}};
  CHECK_THROWS_AS(validate_subgroup(z6, no_id), Error);
  std::vector<Element> not_closed{{0}, {2}};
  try {
    validate_subgroup(z6, not_closed);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::validation);
  }
  std::vector<Element> two{{2}};
  CHECK(subgroup_closure(z6, two).size() == 3);
}

TEST_CASE("coset_canonicalize") {
  Group z6(GroupKind{CyclicKind{6}});
  std::vector<Element> h{{0}, {3}};
  CHECK(coset_canonicalize(z6, {4}, h) == Element{1});
  CHECK(coset_canonicalize(z6, {2}, h) == Element{2});

  std::vector<Element> trivial{{0}};
  for (std::uint32_t g = 0; g < 6; ++g) CHECK(coset_canonicalize(z6, {g}, trivial) == Element{g});

  Group s5(GroupKind{PermutationKind{5}});
  auto b = stabilizer_brute_force();
  std::set<Element> reps;
  for (const auto& g : all_s5()) {
    auto r = coset_canonicalize(s5, g, b);
    CHECK(coset_canonicalize(s5, r, b) == r);
    reps.insert(r);
  }
  CHECK(reps.size() == 10);
  CHECK(reps.size() * b.size() == 120);

  // Same representative iff same left coset: g^-1 g' in B.
  std::mt19937_64 rng(3);
  auto all = all_s5();
  for (int i = 0; i < 200; ++i) {
    const auto& g = all[rng() % all.size()];
    const auto& k = all[rng() % all.size()];
    const auto q = s5.compose(s5.inverse(g), k);
    const bool same = std::find(b.begin(), b.end(), q) != b.end();
    CHECK(same == (coset_canonicalize(s5, g, b) == coset_canonicalize(s5, k, b)));
  }
}
