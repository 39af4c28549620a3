#pragma once

// Shared test utilities: seeded generators and slow reference oracles that
// implement the definitions directly, independent of the library code.

#include <random>
#include <vector>

#include "tlen/automorphism.hpp"
#include "tlen/word.hpp"

namespace tlen::testing {

using Rng = std::mt19937_64;

inline Letter random_letter(int rank, Rng& rng) {
  std::uniform_int_distribution<int> idx(1, rank);
  std::uniform_int_distribution<int> sgn(0, 1);
  return make_letter(idx(rng), sgn(rng) ? 1 : -1);
}

inline ReducedWord random_reduced_word(int rank, size_t len, Rng& rng) {
  std::vector<Letter> ls;
  ls.reserve(len);
  while (ls.size() < len) {
    Letter l = random_letter(rank, rng);
    if (!ls.empty() && l == ls.back().inverse()) continue;
    ls.push_back(l);
  }
  return ReducedWord::from_reduced(rank, std::move(ls));
}

inline CyclicWord random_cyclic_word(int rank, size_t len, Rng& rng) {
  if (len == 0) return CyclicWord(rank);
  for (;;) {
    ReducedWord w = random_reduced_word(rank, len, rng);
    if (w.letters().front() != w.letters().back().inverse() || len == 1)
      return CyclicWord::from_cyclically_reduced(rank, w.letters());
  }
}

inline Automorphism random_automorphism(int rank, int steps, Rng& rng) {
  auto gens = symmetrized_generator_set(rank);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  Automorphism a = Automorphism::identity(rank);
  for (int s = 0; s < steps; ++s) a = compose(a, gens[pick(rng)].aut);
  return a;
}

// repeated full-scan cancellation, the slow counterpart of the stack reducer
inline std::vector<Letter> naive_reduce(std::vector<Letter> ls) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < ls.size(); ++i) {
      if (ls[i] == ls[i + 1].inverse()) {
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return ls;
}

// alpha straight from the definition: try every (start, period, count)
inline int alpha_brute(const std::vector<Letter>& w) {
  if (w.empty()) return 0;
  const size_t L = w.size();
  int best = 1;
  for (size_t i = 0; i < L; ++i)
    for (size_t d = 1; i + d <= L; ++d) {
      size_t p = 1;
      while (i + (p + 1) * d <= L) {
        bool match = true;
        for (size_t t = 0; t < d && match; ++t)
          if (!(w[i + p * d + t] == w[i + t])) match = false;
        if (!match) break;
        ++p;
      }
      if (static_cast<int>(p) > best) best = static_cast<int>(p);
    }
  return best;
}

// alpha_tilde as literally specified: max of alpha over all rotations
inline int alpha_tilde_rotations(const CyclicWord& c) {
  const auto& ls = c.letters();
  if (ls.empty()) return 0;
  int best = 0;
  for (size_t r = 0; r < ls.size(); ++r) {
    std::vector<Letter> rot(ls.begin() + r, ls.end());
    rot.insert(rot.end(), ls.begin(), ls.begin() + r);
    best = std::max(best, alpha_brute(rot));
  }
  return best;
}

}  // namespace tlen::testing
