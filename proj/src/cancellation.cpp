#include "tlen/cancellation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>

#include "tlen/errors.hpp"
#include "tlen/random.hpp"

namespace tlen {

namespace {

int lcp_len(std::span<const int32_t> a, std::span<const int32_t> b) {
  size_t m = std::min(a.size(), b.size());
  size_t i = 0;
  while (i < m && a[i] == b[i]) ++i;
  return static_cast<int>(i);
}

double boundary_count(int n, int L) {
  double est = 0, layer = 2.0 * n;
  for (int k = 1; k <= L; ++k) {
    est += layer;
    layer *= 2.0 * n - 1;
  }
  return est;
}

}  // namespace

BccProfile bcc_profile(const Automorphism& phi, int L) {
  if (phi.rank < 1 || phi.images.size() != static_cast<size_t>(phi.rank))
    throw std::invalid_argument("bcc_profile: malformed automorphism");
  if (L < 1) throw std::invalid_argument("bcc_profile: depth must be >= 1");

  BccProfile prof;
  prof.by_depth.assign(L, 0);
  auto finish = [&]() -> BccProfile& {
    prof.stabilized = L >= 3 && prof.by_depth[L - 1] == prof.by_depth[L - 2] &&
                      prof.by_depth[L - 2] == prof.by_depth[L - 3];
    return prof;
  };

  bool letter_images = true;
  for (const auto& w : phi.images) letter_images = letter_images && w.length() == 1;
  if (letter_images) return finish();  // letter substitutions keep junctions reduced

  const int n = phi.rank;
  if (boundary_count(n, L) > 5e7)
    throw BudgetExceeded("bcc_profile: boundary enumeration too large");

  // One entry per reduced boundary word w, 1 <= |w| <= L: the image phi(w)
  // flattened into buf, the first letter of w as tag, and |w|.
  std::vector<int32_t> buf;
  std::vector<size_t> off{0};
  std::vector<int16_t> tag;
  std::vector<int8_t> wlen;

  std::vector<Letter> path;
  std::function<void()> rec = [&] {
    for (int idx = 1; idx <= n; ++idx)
      for (int s : {1, -1}) {
        Letter l = make_letter(idx, s);
        if (!path.empty() && l == path.back().inverse()) continue;
        path.push_back(l);
        ReducedWord img = apply(phi, ReducedWord::from_reduced(n, path));
        for (Letter x : img.letters()) buf.push_back(x.v);
        off.push_back(buf.size());
        tag.push_back(path.front().v);
        wlen.push_back(static_cast<int8_t>(path.size()));
        if (static_cast<int>(path.size()) < L) rec();
        path.pop_back();
      }
  };
  rec();

  auto span_of = [&](uint32_t i) {
    return std::span<const int32_t>(buf.data() + off[i], off[i + 1] - off[i]);
  };
  std::vector<uint32_t> order(tag.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    auto sa = span_of(a), sb = span_of(b);
    auto c = std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
    if (c != 0) return c < 0;
    if (tag[a] != tag[b]) return tag[a] < tag[b];
    return a < b;
  });

  // Cancellation between phi(u), phi(v) for u·v reduced = common prefix of
  // phi(u^-1), phi(v) with first(u^-1) != first(v). In sorted order the best
  // partner for an entry is the nearest earlier one with a different tag.
  for (int d = 1; d <= L; ++d) {
    int best = 0;
    bool have_prev = false, cand_valid = false;
    uint32_t prev = 0;
    int cand = 0;
    for (uint32_t ix : order) {
      if (wlen[ix] > d) continue;
      if (have_prev) {
        int a = lcp_len(span_of(prev), span_of(ix));
        if (tag[prev] != tag[ix]) {
          cand = a;
          cand_valid = true;
        } else if (cand_valid) {
          cand = std::min(cand, a);
        }
        if (cand_valid) best = std::max(best, cand);
      }
      prev = ix;
      have_prev = true;
    }
    prof.by_depth[d - 1] = best;
  }
  return finish();
}

int bcc_estimate(const Automorphism& phi, int L) { return bcc_profile(phi, L).value(); }

CancellationReport lemma1_constants(int n, int L) {
  if (n < 2) throw std::invalid_argument("lemma1_constants: rank must be >= 2");
  CancellationReport rep;
  rep.rank = n;
  rep.search_depth = L;
  rep.stabilized = true;
  for (const auto& g : generator_set(n)) {
    BccProfile p = bcc_profile(g.aut, L);
    rep.stabilized = rep.stabilized && p.stabilized;
    rep.per_generator[g.label.text()] = p.value();
    int cg = p.value();
    int cginv = cg;  // permutations and inversions are involutions
    if (g.label.kind == GenLabel::Twist) {
      GenLabel invl = g.label.inverse();
      BccProfile q = bcc_profile(label_automorphism(invl, n), L);
      rep.stabilized = rep.stabilized && q.stabilized;
      rep.per_generator[invl.text()] = q.value();
      cginv = q.value();
    }
    int sym = 2 * std::max(cg, cginv);
    rep.symmetrized[g.label.text()] = sym;
    if (g.label.kind == GenLabel::Twist)
      rep.lemma1_word_constant = std::max(rep.lemma1_word_constant, sym);
  }
  rep.lemma1_cyclic_constant = 2 * rep.lemma1_word_constant;
  return rep;
}

std::vector<Lemma1Violation> verify_lemma1(int n, int C, int samples, int maxlen, uint64_t seed,
                                           const std::vector<LabeledAutomorphism>* gens) {
  if (n < 1 || maxlen < 1 || samples < 0)
    throw std::invalid_argument("verify_lemma1: bad parameters");
  std::vector<LabeledAutomorphism> own;
  if (!gens) {
    own = symmetrized_generator_set(n);
    gens = &own;
  }
  Rng rng(seed);
  std::vector<Lemma1Violation> out;
  for (int t = 0; t < samples; ++t) {
    size_t len = 1 + rng() % maxlen;
    CyclicWord c = random_cyclic_word(n, len, rng);
    int a0 = alpha_tilde(c);
    for (const auto& g : *gens) {
      CyclicWord img = apply_cyclic(g.aut, c);
      int a1 = alpha_tilde(img);
      if (a1 > a0 + C) out.push_back({g.label.text(), c, a0, a1});
    }
  }
  return out;
}

std::vector<Lemma1Violation> verify_lemma1_exhaustive(
    int n, int C, int maxlen, const std::vector<LabeledAutomorphism>* gens) {
  if (n < 1 || maxlen < 1) throw std::invalid_argument("verify_lemma1_exhaustive: bad parameters");
  if (boundary_count(n, maxlen) > 2e6)
    throw BudgetExceeded("verify_lemma1_exhaustive: word enumeration too large");
  std::vector<LabeledAutomorphism> own;
  if (!gens) {
    own = symmetrized_generator_set(n);
    gens = &own;
  }
  std::vector<Lemma1Violation> out;
  std::set<std::vector<int16_t>> seen;
  std::vector<Letter> path;
  std::function<void()> rec = [&] {
    for (int idx = 1; idx <= n; ++idx)
      for (int s : {1, -1}) {
        Letter l = make_letter(idx, s);
        if (!path.empty() && l == path.back().inverse()) continue;
        path.push_back(l);
        if (!(l == path.front().inverse())) {  // cyclically reduced
          CyclicWord c = CyclicWord::from_cyclically_reduced(n, path);
          std::vector<int16_t> key;
          for (Letter x : c.letters()) key.push_back(x.v);
          if (seen.insert(std::move(key)).second) {
            int a0 = alpha_tilde(c);
            for (const auto& g : *gens) {
              CyclicWord img = apply_cyclic(g.aut, c);
              int a1 = alpha_tilde(img);
              if (a1 > a0 + C) out.push_back({g.label.text(), c, a0, a1});
            }
          }
        }
        if (static_cast<int>(path.size()) < maxlen) rec();
        path.pop_back();
      }
  };
  rec();
  return out;
}

CancellationReport lemma1_certified(int n, int L, int samples, int maxlen, uint64_t seed) {
  CancellationReport rep = lemma1_constants(n, L);
  for (int k = 0; k <= 3; ++k) {
    if (verify_lemma1(n, rep.lemma1_cyclic_constant, samples, maxlen, seed + k).empty()) {
      rep.certify_doublings = k;
      return rep;
    }
    if (k < 3) rep.lemma1_cyclic_constant *= 2;
  }
  throw Error("lemma1_certified: cyclic constant failed certification after 3 doublings");
}

}  // namespace tlen
