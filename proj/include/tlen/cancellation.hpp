#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tlen/automorphism.hpp"

namespace tlen {

struct BccProfile {
  std::vector<int> by_depth;  // value at search depths 1..L
  bool stabilized = false;    // constant over the last three depths
  int value() const { return by_depth.empty() ? 0 : by_depth.back(); }
};

// Max cancellation between phi(u) and phi(v) over reduced u, v with
// |u|,|v| <= L and u·v reduced. Enumerates boundary words once: the
// cancellation equals the longest common prefix of phi(u^-1) and phi(v),
// and u·v reduced just says the preimages start with different letters.
BccProfile bcc_profile(const Automorphism& phi, int L);
int bcc_estimate(const Automorphism& phi, int L);

struct CancellationReport {
  int rank = 0;
  int search_depth = 0;
  bool stabilized = false;
  std::map<std::string, int> per_generator;  // C(g); twists come with their inverses
  std::map<std::string, int> symmetrized;    // C_g = 2*max{C(g), C(g^-1)}
  int lemma1_word_constant = 0;              // max C_g over twists
  int lemma1_cyclic_constant = 0;            // 2 * word constant, wrap-around allowance
  int certify_doublings = 0;                 // set by lemma1_certified
};

CancellationReport lemma1_constants(int n, int L);

struct Lemma1Violation {
  std::string generator;
  CyclicWord word;
  int alpha_before = 0;
  int alpha_after = 0;
};

// Checks alpha_tilde(g(c)) <= alpha_tilde(c) + C for sampled necklaces and
// every generator (default: all Nielsen generators and their inverses).
std::vector<Lemma1Violation> verify_lemma1(
    int n, int C, int samples, int maxlen, uint64_t seed,
    const std::vector<LabeledAutomorphism>* gens = nullptr);

// Same check over every necklace of length <= maxlen.
std::vector<Lemma1Violation> verify_lemma1_exhaustive(
    int n, int C, int maxlen, const std::vector<LabeledAutomorphism>* gens = nullptr);

// lemma1_constants, then verify_lemma1; on violations the cyclic constant is
// doubled and re-verified, at most three times, after which it is an Error.
CancellationReport lemma1_certified(int n, int L, int samples, int maxlen, uint64_t seed);

}  // namespace tlen
