#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tlen {

// A letter of the free group F_n: x_i encoded as +i, its inverse as -i (i >= 1).
struct Letter {
  int16_t v = 0;

  int index() const { return v < 0 ? -v : v; }
  int sign() const { return v < 0 ? -1 : 1; }
  Letter inverse() const { return Letter{static_cast<int16_t>(-v)}; }
  bool operator==(const Letter&) const = default;
};

// Total order used for canonical forms: a < A < b < B < c < C < ...
inline int order_key(Letter l) { return 2 * (l.index() - 1) + (l.v < 0 ? 1 : 0); }

Letter make_letter(int index, int sign);

// Freely reduced word: no adjacent letter/inverse pair. Immutable after construction.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(int rank) : rank_(rank) {}

  // Frees-reduces an arbitrary letter sequence.
  static ReducedWord reduce(int rank, std::span<const Letter> letters);
  // Trusts the caller that `letters` is already reduced (checked in debug builds).
  static ReducedWord from_reduced(int rank, std::vector<Letter> letters);

  int rank() const { return rank_; }
  size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter at(size_t i) const { return letters_[i]; }

  bool operator==(const ReducedWord&) const = default;

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

// Cyclically reduced word stored as its lexicographically minimal rotation
// (under order_key), i.e. a canonical necklace representative.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(int rank) : rank_(rank) {}

  // `letters` must be cyclically reduced; rotation is canonicalized here.
  static CyclicWord from_cyclically_reduced(int rank, std::vector<Letter> letters);

  int rank() const { return rank_; }
  size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  ReducedWord as_word() const { return ReducedWord::from_reduced(rank_, letters_); }
  CyclicWord inverse() const;

  bool operator==(const CyclicWord&) const = default;

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

ReducedWord concat(const ReducedWord& u, const ReducedWord& v);
ReducedWord invert(const ReducedWord& w);

// Letters cancelled when forming concat(u, v): (|u| + |v| - |uv|) / 2.
int cancellation_count(const ReducedWord& u, const ReducedWord& v);

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
std::pair<CyclicWord, ReducedWord> cyclic_reduce(const ReducedWord& w);

// Largest p such that some u^p (u a nonempty reduced word) occurs as a
// contiguous subword.  Zero for the empty word, at least 1 otherwise;
// negative exponents are covered because u^-p occurs iff (u^-1)^p does.
int alpha(const ReducedWord& w);

// Max of alpha over all rotations of the necklace.
int alpha_tilde(const CyclicWord& c);

// Same scans over plain integer sequences (shared with graph edge paths).
int alpha_scan(std::span<const int32_t> w);
int alpha_cyclic_scan(std::span<const int32_t> w);

// shortlex comparison under order_key: length first, then letter order
bool word_less(const ReducedWord& a, const ReducedWord& b);

// Text codec: x_1..x_26 as a..z, inverses as A..Z; "1" or "" is the identity.
std::string format_word(std::span<const Letter> letters);
ReducedWord parse_word(const std::string& text, int rank = 0);  // rank 0: infer

// Least-rotation index of `s` under order_key (Booth two-pointer scheme).
size_t least_rotation(std::span<const Letter> s);

}  // namespace tlen
