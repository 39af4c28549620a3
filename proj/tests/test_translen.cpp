#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tlen/translen.hpp"

using namespace tlen;
using namespace tlen::testing;

static Automorphism aut(int rank, const std::vector<std::string>& images) {
  Automorphism a;
  a.rank = rank;
  for (const auto& s : images) a.images.push_back(parse_word(s, rank));
  return a;
}

static const Automorphism kTwist = aut(2, {"ab", "b"});
static const Automorphism kFib = aut(2, {"b", "ab"});
static const Automorphism kSwap = aut(2, {"b", "a"});
static const Automorphism kUpg2 = aut(2, {"AB", "B"});  // square is a twist conjugate
static const double kGolden = 1.6180339887498949;

TEST_CASE("lambda_lower_abelian frozen values") {
  CHECK(lambda_lower_abelian(Automorphism::identity(2)) == 1.0);
  CHECK(lambda_lower_abelian(kTwist) == 1.0);  // unipotent, exactly 1
  CHECK(lambda_lower_abelian(kSwap) == 1.0);   // order 2 on homology
  CHECK(lambda_lower_abelian(kUpg2) == 1.0);   // quasi-unipotent at s = 2
  CHECK(lambda_lower_abelian(kFib) == doctest::Approx(kGolden).epsilon(1e-9));
}

TEST_CASE("upg_power") {
  CHECK(upg_power(Automorphism::identity(2)) == 1);
  CHECK(upg_power(kTwist) == 1);
  CHECK(upg_power(kUpg2) == 2);
  CHECK(upg_power(kSwap) == 2);
  CHECK_THROWS_AS(upg_power(kFib, 12), NotFoundWithinBudget);
}

TEST_CASE("growth_classify torsion") {
  GrowthClassification g = growth_classify(kSwap);
  CHECK(g.verdict == Growth::FiniteOrder);
  CHECK(g.period == 2);
  CHECK(growth_classify(Automorphism::identity(3)).period == 1);
  GrowthClassification c3 = growth_classify(aut(3, {"b", "c", "a"}));
  CHECK(c3.verdict == Growth::FiniteOrder);
  CHECK(c3.period == 3);
  // inner automorphisms are trivial in Out
  CHECK(growth_classify(aut(2, {"a", "abA"})).period == 1);
}

TEST_CASE("growth_classify twist is linear with L_k = k+1") {
  GrowthClassification g = growth_classify(kTwist);
  CHECK(g.verdict == Growth::Polynomial);
  CHECK(g.degree == 1);
  REQUIRE(g.k_used >= 20);
  for (int k = 1; k <= g.k_used; ++k) CHECK(g.lengths[k - 1] == static_cast<size_t>(k) + 1);
}

TEST_CASE("growth_classify exponential fixture") {
  GrowthClassification g = growth_classify(kFib);
  CHECK(g.verdict == Growth::Exponential);
  CHECK(g.lambda_hat == doctest::Approx(kGolden).epsilon(0.05));
  CHECK(g.rho_abelian == doctest::Approx(kGolden).epsilon(1e-9));
  CHECK(g.r2_exp >= 0.999);
}

TEST_CASE("growth_classify quadratic in rank 3") {
  GrowthClassification g = growth_classify(aut(3, {"ab", "bc", "c"}));
  CHECK(g.verdict == Growth::Polynomial);
  CHECK(g.degree == 2);
}

TEST_CASE("growth_classify pair guard on a partial conjugation") {
  GrowthClassification g = growth_classify(aut(3, {"a", "b", "acA"}));
  CHECK(g.verdict == Growth::Inconclusive);
  CHECK(g.pair_guard);
}

TEST_CASE("tau_lower_exponential") {
  TauEstimate t = tau_lower_exponential(kFib);
  CHECK(t.method == TauEstimate::Case1Exponential);
  CHECK(t.lower == doctest::Approx(std::log2(kGolden)).epsilon(1e-9));
  CHECK(t.lambda > 1.0);
  CHECK_THROWS_AS(tau_lower_exponential(kTwist), NotCertifiedExponential);
  CHECK_THROWS_AS(tau_lower_exponential(Automorphism::identity(2)), NotCertifiedExponential);
}

TEST_CASE("tau_lower_exponential scales exactly under squaring") {
  TauEstimate t1 = tau_lower_exponential(kFib);
  TauEstimate t2 = tau_lower_exponential(compose(kFib, kFib));
  CHECK(std::fabs(t2.lower - 2 * t1.lower) <= 1e-12);
}

TEST_CASE("tau_lower_polynomial twist certificate") {
  TauEstimate t = tau_lower_polynomial(kTwist, 4);
  CHECK(t.method == TauEstimate::Case2Upg);
  CHECK(t.lower == 0.25);  // 1/C with C=4, s=1
  CHECK(t.s == 1);
  CHECK(t.slope_int == 1);
  CHECK(t.witness == "a");
  // the whole table against direct iteration
  CyclicWord c = CyclicWord::from_cyclically_reduced(2, parse_word("a", 2).letters());
  for (size_t k = 0; k < t.alpha_table.size(); ++k) {
    c = apply_cyclic(kTwist, c);
    CHECK(t.alpha_table[k] == alpha_tilde(c));
    CHECK(t.alpha_table[k] == static_cast<int>(k) + 1);
  }
  CHECK(t.intercept == 0);
}

TEST_CASE("tau_lower_polynomial with s = 2") {
  TauEstimate t = tau_lower_polynomial(kUpg2, 4);
  CHECK(t.s == 2);
  CHECK(t.slope_int == 2);  // the square is a double twist
  CHECK(t.lower == 0.25);   // 2/(4*2)
  // oracle: alpha_tilde along the orbit of [a] under two applications
  CyclicWord c = CyclicWord::from_cyclically_reduced(2, parse_word("a", 2).letters());
  for (int k = 1; k <= 10; ++k) {
    c = apply_cyclic(kUpg2, apply_cyclic(kUpg2, c));
    CHECK(alpha_tilde(c) == 2 * k);
  }
}

TEST_CASE("tau_lower_polynomial without witness") {
  CHECK_THROWS_AS(tau_lower_polynomial(Automorphism::identity(2), 4), NoWitnessFound);
}

TEST_CASE("tau_upper") {
  CHECK(tau_upper(Automorphism::identity(3), 4) == 0.0);
  for (const auto& g : generator_set(2)) CHECK(tau_upper(g.aut, 4) <= 1.0);
  double u = tau_upper(kTwist, 20);
  CHECK(u <= 1.0);
  CHECK(u >= 0.25);
}

TEST_CASE("tau_estimate finite order") {
  TauEstimate t = tau_estimate(kSwap);
  CHECK(t.method == TauEstimate::FiniteOrder);
  CHECK(t.lower == 0.0);
  CHECK(t.upper == 0.0);
  CHECK(tau_estimate(aut(2, {"A", "b"})).upper == 0.0);
}

TEST_CASE("tau_estimate twist bracket [1/C, 1]") {
  TauEstimate t = tau_estimate(kTwist);
  CHECK(t.method == TauEstimate::Case2Upg);
  CHECK(t.lower == 0.25);
  CHECK(t.upper_computed);
  CHECK(t.upper == 1.0);
  CHECK(t.growth.verdict == Growth::Polynomial);
}

TEST_CASE("tau_estimate exponential bracket") {
  TauEstimate t = tau_estimate(kFib);
  CHECK(t.method == TauEstimate::Case1Exponential);
  CHECK(t.lower == doctest::Approx(std::log2(kGolden)).epsilon(1e-9));
  CHECK(t.upper_computed);
  CHECK(t.lower <= t.upper);
  CHECK(t.upper <= 2.0);
}

TEST_CASE("tau_estimate upg bracket") {
  TauEstimate t = tau_estimate(kUpg2);
  CHECK(t.method == TauEstimate::Case2Upg);
  CHECK(t.lower == 0.25);
  CHECK(t.lower <= t.upper);
}

TEST_CASE("tau_estimate brackets on random products") {
  Rng rng(307);
  TauOptions opt;
  opt.growth.k_max = 12;
  opt.growth.length_budget = 8000;
  opt.growth.torsion_cap = 6;
  opt.k_max_upper = 3;
  opt.upper_length_budget = 4000;
  int certified = 0;
  for (int t = 0; t < 60; ++t) {
    int rank = 2 + t % 2;
    Automorphism phi = random_automorphism(rank, 10, rng);
    TauEstimate est = tau_estimate(phi, opt);
    if (est.upper_computed) CHECK(est.lower <= est.upper);
    CHECK(est.lower >= 0.0);
    if (est.method == TauEstimate::Case1Exponential || est.method == TauEstimate::Case2Upg) {
      CHECK(est.lower > 0.0);
      ++certified;
    }
  }
  CHECK(certified > 20);  // random products are mostly certifiably exponential
}

TEST_CASE("tau_estimate is conjugation invariant") {
  Rng rng(311);
  TauOptions opt;
  opt.growth.k_max = 20;
  opt.k_max_upper = 4;
  for (int t = 0; t < 6; ++t) {
    ReducedWord u = random_reduced_word(2, 1 + t, rng);
    for (const Automorphism& phi : {kTwist, kFib, kUpg2}) {
      Automorphism conj;
      conj.rank = 2;
      for (const auto& w : phi.images) conj.images.push_back(concat(concat(u, w), invert(u)));
      TauEstimate a = tau_estimate(phi, opt);
      TauEstimate b = tau_estimate(conj, opt);
      CHECK(a.lower == b.lower);  // canonical-first pipeline: bit identical
      CHECK(a.upper == b.upper);
      CHECK(a.method == b.method);
    }
  }
}

TEST_CASE("doubling inequality for generators") {
  CHECK(verify_doubling(2, 3000, 30, 17).empty());
  CHECK(verify_doubling(3, 800, 24, 17).empty());
  CHECK(verify_doubling_exhaustive(2, 8).empty());
}
