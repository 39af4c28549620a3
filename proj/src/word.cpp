#include "tlen/word.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tlen {

Letter make_letter(int index, int sign) {
  if (index < 1 || index > 32767) throw std::invalid_argument("letter index out of range");
  if (sign != 1 && sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
  return Letter{static_cast<int16_t>(sign * index)};
}

static void check_letters(int rank, std::span<const Letter> letters) {
  for (Letter l : letters) {
    if (l.v == 0 || l.index() > rank)
      throw std::invalid_argument("letter outside rank " + std::to_string(rank));
  }
}

ReducedWord ReducedWord::reduce(int rank, std::span<const Letter> letters) {
  if (rank < 0) throw std::invalid_argument("negative rank");
  check_letters(rank, letters);
  std::vector<Letter> buf;
  buf.reserve(letters.size());
  for (Letter l : letters) {
    if (!buf.empty() && buf.back() == l.inverse())
      buf.pop_back();
    else
      buf.push_back(l);
  }
  ReducedWord w(rank);
  w.letters_ = std::move(buf);
  return w;
}

ReducedWord ReducedWord::from_reduced(int rank, std::vector<Letter> letters) {
  check_letters(rank, letters);
#ifndef NDEBUG
  for (size_t i = 0; i + 1 < letters.size(); ++i)
    assert(letters[i] != letters[i + 1].inverse() && "word not freely reduced");
#endif
  ReducedWord w(rank);
  w.letters_ = std::move(letters);
  return w;
}

size_t least_rotation(std::span<const Letter> s) {
  const size_t n = s.size();
  if (n < 2) return 0;
  size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    int a = order_key(s[(i + k) % n]);
    int b = order_key(s[(j + k) % n]);
    if (a == b) {
      ++k;
    } else {
      if (a > b)
        i += k + 1;
      else
        j += k + 1;
      if (i == j) ++j;
      k = 0;
    }
  }
  return std::min(i, j);
}

CyclicWord CyclicWord::from_cyclically_reduced(int rank, std::vector<Letter> letters) {
  check_letters(rank, letters);
  if (!letters.empty() && letters.front() == letters.back().inverse())
    throw std::invalid_argument("word not cyclically reduced");
#ifndef NDEBUG
  for (size_t i = 0; i + 1 < letters.size(); ++i)
    assert(letters[i] != letters[i + 1].inverse());
#endif
  size_t r = least_rotation(letters);
  std::rotate(letters.begin(), letters.begin() + r, letters.end());
  CyclicWord c(rank);
  c.letters_ = std::move(letters);
  return c;
}

CyclicWord CyclicWord::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (Letter& l : inv) l = l.inverse();
  return from_cyclically_reduced(rank_, std::move(inv));
}

ReducedWord concat(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank() != v.rank()) throw std::invalid_argument("concat: rank mismatch");
  std::vector<Letter> buf = u.letters();
  for (Letter l : v.letters()) {
    if (!buf.empty() && buf.back() == l.inverse())
      buf.pop_back();
    else
      buf.push_back(l);
  }
  return ReducedWord::from_reduced(u.rank(), std::move(buf));
}

ReducedWord invert(const ReducedWord& w) {
  std::vector<Letter> inv(w.letters().rbegin(), w.letters().rend());
  for (Letter& l : inv) l = l.inverse();
  return ReducedWord::from_reduced(w.rank(), std::move(inv));
}

int cancellation_count(const ReducedWord& u, const ReducedWord& v) {
  ReducedWord uv = concat(u, v);
  return static_cast<int>((u.length() + v.length() - uv.length()) / 2);
}

std::pair<CyclicWord, ReducedWord> cyclic_reduce(const ReducedWord& w) {
  const auto& ls = w.letters();
  size_t i = 0, j = ls.size();
  while (j - i >= 2 && ls[i] == ls[j - 1].inverse()) {
    ++i;
    --j;
  }
  std::vector<Letter> core(ls.begin() + i, ls.begin() + j);
  std::vector<Letter> conj(ls.begin(), ls.begin() + i);
  return {CyclicWord::from_cyclically_reduced(w.rank(), std::move(core)),
          ReducedWord::from_reduced(w.rank(), std::move(conj))};
}

int alpha_scan(std::span<const int32_t> w) {
  const size_t L = w.size();
  if (L == 0) return 0;
  int best = 1;
  for (size_t d = 1; 2 * d <= L; ++d) {
    // run = longest match of w[i..] against w[i+d..]; a block of period d
    // starting at i holds 1 + run/d full copies.
    size_t run = 0;
    for (size_t ii = L - d; ii-- > 0;) {
      run = (w[ii] == w[ii + d]) ? run + 1 : 0;
      int p = static_cast<int>(1 + run / d);
      if (p > best) best = p;
    }
  }
  return best;
}

int alpha_cyclic_scan(std::span<const int32_t> w) {
  const size_t n = w.size();
  if (n == 0) return 0;
  std::vector<int32_t> D(w.begin(), w.end());
  D.insert(D.end(), w.begin(), w.end());
  int best = 1;
  for (size_t d = 1; 2 * d <= n; ++d) {
    size_t cap = n / d;  // the repeated block must fit in one full turn
    size_t run = 0;
    for (size_t ii = 2 * n - d; ii-- > 0;) {
      run = (D[ii] == D[ii + d]) ? run + 1 : 0;
      if (ii < n) {
        size_t p = std::min(1 + run / d, cap);
        if (static_cast<int>(p) > best) best = static_cast<int>(p);
      }
    }
  }
  return best;
}

static std::vector<int32_t> to_ints(std::span<const Letter> ls) {
  std::vector<int32_t> v(ls.size());
  for (size_t i = 0; i < ls.size(); ++i) v[i] = ls[i].v;
  return v;
}

int alpha(const ReducedWord& w) {
  auto v = to_ints(w.letters());
  return alpha_scan(v);
}

int alpha_tilde(const CyclicWord& c) {
  auto v = to_ints(c.letters());
  return alpha_cyclic_scan(v);
}

bool word_less(const ReducedWord& a, const ReducedWord& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto& x = a.letters();
  const auto& y = b.letters();
  for (size_t i = 0; i < x.size(); ++i) {
    int ka = order_key(x[i]), kb = order_key(y[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

std::string format_word(std::span<const Letter> letters) {
  if (letters.empty()) return "1";
  std::string s;
  s.reserve(letters.size());
  for (Letter l : letters) {
    if (l.index() > 26) throw std::invalid_argument("text encoding needs rank <= 26");
    s += static_cast<char>((l.v > 0 ? 'a' : 'A') + l.index() - 1);
  }
  return s;
}

ReducedWord parse_word(const std::string& text, int rank) {
  std::vector<Letter> ls;
  int max_index = 0;
  if (text != "1") {
    ls.reserve(text.size());
    for (char c : text) {
      Letter l;
      if (c >= 'a' && c <= 'z')
        l = make_letter(c - 'a' + 1, 1);
      else if (c >= 'A' && c <= 'Z')
        l = make_letter(c - 'A' + 1, -1);
      else
        throw std::invalid_argument(std::string("bad word character '") + c + "'");
      max_index = std::max(max_index, l.index());
      ls.push_back(l);
    }
  }
  if (rank == 0) rank = std::max(max_index, 1);
  return ReducedWord::reduce(rank, ls);
}

}  // namespace tlen
