#pragma once

#include <random>

#include "tlen/word.hpp"

namespace tlen {

using Rng = std::mt19937_64;

inline Letter random_letter(int rank, Rng& rng) {
  int idx = 1 + static_cast<int>(rng() % rank);
  return make_letter(idx, (rng() & 1) ? 1 : -1);
}

// Uniform-ish reduced word of exactly len letters (no adjacent cancellations).
inline ReducedWord random_reduced_word(int rank, size_t len, Rng& rng) {
  std::vector<Letter> out;
  out.reserve(len);
  while (out.size() < len) {
    Letter l = random_letter(rank, rng);
    if (!out.empty() && l == out.back().inverse()) continue;
    out.push_back(l);
  }
  return ReducedWord::from_reduced(rank, std::move(out));
}

// Cyclically reduced necklace of exactly len letters.
inline CyclicWord random_cyclic_word(int rank, size_t len, Rng& rng) {
  for (;;) {
    ReducedWord w = random_reduced_word(rank, len, rng);
    const auto& ls = w.letters();
    if (len >= 2 && ls.front() == ls.back().inverse()) continue;
    return CyclicWord::from_cyclically_reduced(rank, ls);
  }
}

}  // namespace tlen
