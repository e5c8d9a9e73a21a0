#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "swolff/diagrams.hpp"
#include "swolff/random_models.hpp"

using namespace swolff;

TEST_CASE("admissible trees agree with brute-force enumeration") {
  for (int n = 2; n <= 8; ++n) {
    std::set<std::vector<int>> expected;
    for (const auto& seq : oracle::all_trees(n)) {
      if (oracle::admissible(seq)) expected.insert(seq);
    }
    const auto trees = enumerate_admissible(n);
    std::set<std::vector<int>> got;
    for (const auto& t : trees) {
      got.insert(t.encoding());
      CHECK(t.admissible());
    }
    CHECK(got == expected);
    CHECK(got.size() == trees.size());
  }
}

TEST_CASE("tree counts for n = 3 to 6") {
  CHECK(enumerate_admissible(3).size() == 1);
  CHECK(enumerate_admissible(4).size() == 3);
  CHECK(enumerate_admissible(5).size() == 7);
  CHECK(enumerate_admissible(6).size() == 20);
  CHECK_THROWS_AS(enumerate_admissible(11), Error);
}

TEST_CASE("encodings round trip and bad encodings are rejected") {
  for (const auto& t : enumerate_s_admissible(6)) {
    CHECK(DiagramTree::from_encoding(t.encoding()).encoding() == t.encoding());
    CHECK(t.s_admissible());
  }
  CHECK_THROWS_AS(DiagramTree::from_encoding({2, 0}), Error);
  CHECK_THROWS_AS(DiagramTree::from_encoding({1, 0, 0}), Error);
}

TEST_CASE("weights of the fourth-order trees") {
  const CoefficientTable c = bernoulli_coefficients(4);
  for (const auto& t : enumerate_admissible(4)) {
    Rational expected = 1;
    for (int u = 0; u < t.size(); ++u) {
      const int k = t.child_count(u);
      if (u == 0) expected *= c.b(k);
      else if (k >= 2) expected *= c.a(k);
    }
    CHECK(tree_weight(t) == expected);
  }
  CHECK_THROWS_AS(tree_weight(DiagramTree::from_encoding({2, 0, 0})), Error);
}

TEST_CASE("diagram sums reproduce the recursion") {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    ModelShape shape{6, 2, 1.0, 0.2, 1.0};
    const RandomModel m = random_gapped_model(rng, shape);
    const SpectralSplit s = make_split(m.h0, m.window);
    const SeriesCoefficients h = heff_series(make_problem(s, m.v, 0.0), 5);
    const SeriesCoefficients g = generator_series(make_problem(s, m.v, 0.0), 5);
    const SeriesCoefficients hd = heff_via_diagrams(s, m.v, 5);
    const SeriesCoefficients gd = s_via_diagrams(s, m.v, 5);
    for (int q = 1; q <= 5; ++q) {
      const auto k = static_cast<std::size_t>(q);
      CHECK(operator_norm(hd.coeffs[k] - h.coeffs[k]) < 1e-12);
      CHECK(operator_norm(gd.coeffs[k] - g.coeffs[k]) < 1e-12);
    }
  }
}

TEST_CASE("fourth-order tree operators in closed form") {
  Rng rng(29);
  const RandomModel m = random_gapped_model(rng, {});
  const SpectralSplit s = make_split(m.h0, m.window);
  const Matrix& p0 = s.p0;
  const Matrix vod = block_off_diagonal_part(m.v, p0);
  const Matrix vd = m.v - vod;
  const auto ad = [](const Matrix& a, const Matrix& x) { return commutator(a, x); };
  const Matrix s1 = superop_L(s, vod);
  DiagramEvaluator ev(s, m.v);
  for (const auto& t : enumerate_admissible(4)) {
    Matrix expected;
    if (t.encoding() == std::vector<int>{1, 1, 1, 0}) {
      const Matrix inner = superop_L(s, ad(vd, superop_L(s, ad(vd, s1))));
      expected = -p0 * ad(vod, inner) * p0;
    } else if (t.encoding() == std::vector<int>{1, 2, 0, 0}) {
      expected = -p0 * ad(vod, superop_L(s, ad(s1, ad(s1, vod)))) * p0;
    } else {
      expected = p0 * ad(s1, ad(s1, ad(s1, vod))) * p0;
    }
    CHECK(operator_norm(ev.evaluate(t) - expected) < 1e-12);
  }
}
