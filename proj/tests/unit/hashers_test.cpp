#include <doctest.h>

#include "flylsh/hashers.hpp"

using namespace flylsh;

namespace {

Activations acts(std::vector<double> values) {
  Activations a;
  a.values = std::move(values);
  return a;
}

std::string bits(const BitVector& v) { return v.to_string(); }

}  // namespace

TEST_CASE("activations sum the sampled indices") {
  const auto p = SparseProjection::from_rows(4, {{0, 2}, {1, 3}});
  const auto a = activations(p, Vector{{1.0, 2.0, 3.0, 4.0}});
  CHECK(a.values[0] == doctest::Approx(4.0));
  CHECK(a.values[1] == doctest::Approx(6.0));

  const auto zero = activations(p, Vector{{0.0, 0.0, 0.0, 0.0}});
  CHECK(zero.values[0] == 0.0);
  CHECK(zero.values[1] == 0.0);

  const auto p3 = SparseProjection::from_rows(3, {{0, 2}});
  const auto sym = activations(p3, Vector{{-1.0, 0.0, 1.0}});
  CHECK(sym.values[0] == doctest::Approx(0.0));

  CHECK_THROWS_AS(activations(p, Vector{{1.0, 2.0}}), DimensionError);
}

TEST_CASE("flyhash keeps the top m activations") {
  const auto h = flyhash(acts({0.5, -1.0, 2.0, 0.1, 0.0, 3.0}), 2);
  CHECK(bits(h) == "001001");
  CHECK(h.ones_count() == 2);

  SUBCASE("ties break to the lowest index") {
    const auto tied = flyhash(acts({1.0, 1.0, 1.0, 1.0}), 2);
    CHECK(bits(tied) == "1100");
  }

  SUBCASE("m equal to the dimension sets everything") {
    CHECK(bits(flyhash(acts({3.0, 2.0, 1.0}), 3)) == "111");
  }

  SUBCASE("m beyond the dimension is rejected") {
    CHECK_THROWS_AS(flyhash(acts({1.0, 2.0}), 3), ParameterError);
    CHECK_THROWS_AS(flyhash(acts({1.0, 2.0}), 0), ParameterError);
  }
}

TEST_CASE("densefly thresholds at zero, inclusive") {
  CHECK(bits(densefly(acts({0.5, -1.0, 2.0, 0.1, 0.0, 3.0}))) == "101111");
  CHECK(bits(densefly(acts({-0.5, -1.0, -2.0}))) == "000");
  CHECK(bits(densefly(acts({0.0}))) == "1");
  CHECK_THROWS_AS(densefly(acts({})), ParameterError);
}

TEST_CASE("simhash signs the dot products") {
  SUBCASE("hand-computed row") {
    const auto g = DenseProjection::from_rows(2, {{-1.0, 0.5}});
    CHECK(bits(simhash(g, Vector{{1.0, 0.0}})) == "0");  // dot = -1
    CHECK(bits(simhash(g, Vector{{0.0, 1.0}})) == "1");  // dot = 0.5
  }

  SUBCASE("zero vector hashes to all ones via the >= 0 rule") {
    const auto g = make_dense_projection(8, 12, RngSeed{4});
    const auto h = simhash(g, Vector{std::vector<double>(8, 0.0)});
    CHECK(h.ones_count() == 12);
  }

  SUBCASE("positive scaling preserves the hash") {
    const auto g = make_dense_projection(16, 24, RngSeed{5});
    Vector x;
    Rng rng = Rng::stream(RngSeed{6}, StreamDomain::misc);
    for (int i = 0; i < 16; ++i) x.values.push_back(rng.normal());
    Vector x2 = x;
    for (double& v : x2.values) v *= 2.0;
    CHECK(simhash(g, x) == simhash(g, x2));
  }

  SUBCASE("dimension mismatch") {
    const auto g = make_dense_projection(8, 4, RngSeed{4});
    CHECK_THROWS_AS(simhash(g, Vector{{1.0}}), DimensionError);
  }
}

TEST_CASE("wtahash marks the per-block argmax") {
  SUBCASE("identity permutation") {
    const auto perms = PermutationSet::from_perms(3, 3, {{0, 1, 2}});
    CHECK(bits(wtahash(perms, Vector{{9.0, 1.0, 5.0}})) == "100");
  }

  SUBCASE("constant input ties to the first position of every block") {
    const auto perms = make_permutations(10, 4, 3, RngSeed{8});
    const auto h = wtahash(perms, Vector{std::vector<double>(10, 2.5)});
    CHECK(bits(h) == "100100100100");
  }

  SUBCASE("k = 1 gives a single 1 per block for any input") {
    const auto perms = make_permutations(5, 1, 1, RngSeed{9});
    CHECK(bits(wtahash(perms, Vector{{3.0, -1.0, 4.0, 0.0, 2.0}})) == "1");
  }

  SUBCASE("a non-identity permutation reorders the window") {
    // perm = [2,0,1], k = 2: window looks at x[2], x[0]
    const auto perms = PermutationSet::from_perms(3, 2, {{2, 0, 1}});
    CHECK(bits(wtahash(perms, Vector{{9.0, 1.0, 5.0}})) == "01");
    CHECK(bits(wtahash(perms, Vector{{1.0, 9.0, 5.0}})) == "10");
  }

  SUBCASE("dimension mismatch") {
    const auto perms = make_permutations(4, 2, 2, RngSeed{10});
    CHECK_THROWS_AS(wtahash(perms, Vector{{1.0, 2.0}}), DimensionError);
  }
}

TEST_CASE("pseudo-hash thresholds block sums strictly") {
  CHECK(bits(pseudo_hash(acts({1.0, -2.0, 3.0, 4.0}), 2, 2)) == "01");
  CHECK(bits(pseudo_hash(acts({0.0, 0.0, 0.0, 0.0}), 2, 2)) == "00");
  CHECK(bits(pseudo_hash(acts({2.0, -2.0}), 2, 1)) == "10");
  CHECK_THROWS_AS(pseudo_hash(acts({1.0, 2.0, 3.0}), 2, 2), ParameterError);
}
