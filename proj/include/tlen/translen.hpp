#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlen/automorphism.hpp"

namespace tlen {

enum class Growth { FiniteOrder, Polynomial, Exponential, Inconclusive };

struct GrowthClassification {
  Growth verdict = Growth::Inconclusive;
  int period = 0;          // finite order
  int degree = 0;          // polynomial: rounded log-log slope
  double lambda_hat = 0;   // exponential: exp of tail slope of log L_k
  double rho_abelian = 1;  // certified spectral lower bound from homology

  // evidence
  std::vector<size_t> lengths;       // L_k = max_i l(O^k([x_i])), k = 1..k_used
  std::vector<size_t> pair_lengths;  // same over [x_i x_j] probes, bounded-orbit guard
  int k_used = 0;
  double r2_exp = 0, r2_poly = 0, loglog_slope = 0;
  bool pair_guard = false;  // generator probes bounded but pair probes grow
  std::string note;
};

struct GrowthOptions {
  int k_max = 40;
  size_t length_budget = 200000;
  int torsion_cap = 24;
};

GrowthClassification growth_classify(const Automorphism& O, const GrowthOptions& opt = {});

// Spectral radius of the abelianization: exact 1.0 on quasi-unipotent
// matrices, otherwise power iteration (200 steps or relative change < 1e-12).
// Always >= 1; a value > 1 certifies exponential growth.
double lambda_lower_abelian(const Automorphism& O);

// Least s <= s_max with (A^s - I)^rank = 0 for A the abelianization.
int upg_power(const Automorphism& O, int s_max = 24);

// Evidence behind an upper bound: a generator word of length upper*k whose
// evaluation is outer-equal to the k-th power of the chain base.  Cheap to
// replay, so certificates can be re-checked without redoing the search.
struct UpperWitness {
  bool found = false;
  int k = 0;
  bool raw_chain = false;  // steps give O^k itself, not its canonical rep
  GeneratorWord steps;
};

struct TauEstimate {
  enum Method { Case1Exponential, Case2Upg, FiniteOrder, Inconclusive } method = Inconclusive;
  double lower = 0;
  double upper = 0;
  bool upper_computed = false;
  UpperWitness upper_witness;

  // constants behind the bound
  double lambda = 0;  // case 1
  int C = 0, s = 0;   // case 2

  // case 2 certificate: witness necklace and its alpha-tilde table at k = 1..K
  std::string witness;
  std::vector<int> alpha_table;
  double slope = 0;   // fitted
  int slope_int = 0;  // rounded, used in the bound
  int intercept = 0;  // pointwise min of alpha_k - slope_int*k

  GrowthClassification growth;
  std::string note;
};

// lower = log2(lambda); requires lambda_lower_abelian(O) > 1.
TauEstimate tau_lower_exponential(const Automorphism& O);

// Witness search for linear alpha-tilde growth under O^s; lower = m/(C*s)
// with m the integer slope. Throws NoWitnessFound when nothing certifies.
TauEstimate tau_lower_polynomial(const Automorphism& O, int C, int k_max = 40);

// min over k <= k_max of |nielsen_decompose(O^k)| / k; sound by subadditivity.
double tau_upper(const Automorphism& O, int k_max = 12, size_t length_budget = 20000,
                 UpperWitness* witness = nullptr);

struct TauOptions {
  GrowthOptions growth;
  int bcc_depth = 0;  // 0: 8 for rank 2, 6 above
  int k_max_upper = 8;
  int k_max_poly = 40;
  size_t upper_length_budget = 20000;
};

TauEstimate tau_estimate(const Automorphism& O, const TauOptions& opt = {});

struct DoublingViolation {
  std::string generator;
  CyclicWord word;
  size_t before = 0, after = 0;
};

// Checks l(g([w])) <= 2*l([w]) for every Nielsen generator and inverse.
std::vector<DoublingViolation> verify_doubling(int n, int samples, int maxlen, uint64_t seed);
std::vector<DoublingViolation> verify_doubling_exhaustive(int n, int maxlen);

}  // namespace tlen
