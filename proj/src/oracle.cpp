#include "tlen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <thread>

namespace tlen {

namespace {

struct Candidate {
  std::string key;
  Automorphism rep;
};

// Expand frontier[lo, hi) by every generator; emit candidates not already in
// dist.  dist is only read here, so threads can share it without locking.
void expand_range(const std::vector<Automorphism>& frontier, size_t lo, size_t hi,
                  const std::vector<LabeledAutomorphism>& gens,
                  const std::unordered_map<std::string, int>& dist,
                  std::vector<Candidate>& out) {
  for (size_t i = lo; i < hi; ++i) {
    for (const auto& g : gens) {
      OuterClass oc = outer_canonical(compose(frontier[i], g.aut));
      std::string k = oc.key();
      if (dist.find(k) != dist.end()) continue;
      out.push_back(Candidate{std::move(k), oc.representative()});
    }
  }
}

}  // namespace

BallIndex build_ball(int n, int R, size_t node_budget, int threads) {
  if (n < 2) throw std::invalid_argument("build_ball: rank must be >= 2");
  if (R < 0) throw std::invalid_argument("build_ball: negative radius");
  if (threads < 1) throw std::invalid_argument("build_ball: threads must be >= 1");
  if (node_budget < 1) throw std::invalid_argument("build_ball: budget below 1 node");

  BallIndex ix;
  ix.rank = n;
  ix.requested_radius = R;

  const auto gens = symmetrized_generator_set(n);
  OuterClass idc = outer_canonical(Automorphism::identity(n));
  ix.dist.emplace(idc.key(), 0);
  ix.layer_sizes.push_back(1);
  std::vector<Automorphism> frontier{idc.representative()};

  for (int r = 1; r <= R; ++r) {
    std::vector<std::vector<Candidate>> parts(threads);
    if (threads == 1) {
      expand_range(frontier, 0, frontier.size(), gens, ix.dist, parts[0]);
    } else {
      std::vector<std::thread> pool;
      size_t chunk = (frontier.size() + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        size_t lo = std::min(static_cast<size_t>(t) * chunk, frontier.size());
        size_t hi = std::min(lo + chunk, frontier.size());
        pool.emplace_back(expand_range, std::cref(frontier), lo, hi, std::cref(gens),
                          std::cref(ix.dist), std::ref(parts[t]));
      }
      for (auto& th : pool) th.join();
    }

    // merge-sort-dedup makes the layer independent of thread count and of
    // the order candidates were produced in
    std::vector<Candidate> merged;
    for (auto& p : parts)
      merged.insert(merged.end(), std::make_move_iterator(p.begin()),
                    std::make_move_iterator(p.end()));
    std::sort(merged.begin(), merged.end(),
              [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](const Candidate& a, const Candidate& b) { return a.key == b.key; }),
                 merged.end());

    if (merged.empty()) break;
    if (ix.dist.size() + merged.size() > node_budget) {
      ix.truncated = true;  // drop the whole layer: table stays generator-closed
      break;
    }

    std::vector<Automorphism> next;
    next.reserve(merged.size());
    for (auto& c : merged) {
      ix.dist.emplace(std::move(c.key), r);
      next.push_back(std::move(c.rep));
    }
    ix.layer_sizes.push_back(next.size());
    ix.radius = r;
    frontier = std::move(next);
  }
  return ix;
}

std::optional<int> exact_norm(const BallIndex& index, const Automorphism& O) {
  if (O.rank != index.rank) throw std::invalid_argument("exact_norm: rank mismatch");
  auto it = index.dist.find(outer_canonical(O).key());
  if (it == index.dist.end()) return std::nullopt;
  return it->second;
}

std::vector<ReducedWord> decode_tuple_key(const std::string& key, int rank) {
  if (key.size() % 2 != 0) throw std::invalid_argument("decode_tuple_key: odd byte length");
  std::vector<ReducedWord> out;
  std::vector<Letter> cur;
  for (size_t p = 0; p + 2 <= key.size(); p += 2) {
    auto v = static_cast<int16_t>(static_cast<uint8_t>(key[p]) |
                                  (static_cast<uint16_t>(static_cast<uint8_t>(key[p + 1])) << 8));
    if (v == 0) {
      out.push_back(ReducedWord::from_reduced(rank, std::move(cur)));
      cur.clear();
    } else {
      cur.push_back(Letter{v});
    }
  }
  if (!cur.empty()) throw std::invalid_argument("decode_tuple_key: missing terminator");
  return out;
}

TauBoundsReport verify_tau_bounds(const BallIndex& index, const Automorphism& O,
                                  const TauEstimate& est, int k_cap) {
  if (O.rank != index.rank) throw std::invalid_argument("verify_tau_bounds: rank mismatch");
  TauBoundsReport rep;
  rep.rank = index.rank;
  rep.lower = est.lower;

  Automorphism base = outer_canonical(O).representative();
  auto n1 = exact_norm(index, base);
  if (!n1) return rep;  // base class outside the ball: nothing checkable
  rep.base_in_ball = true;
  rep.norm1 = *n1;

  const double eps = 1e-9;
  const size_t len_cap = 2000000;
  Automorphism P = base;
  for (int k = 1; k <= k_cap; ++k) {
    if (k > 1) {
      P = outer_canonical(compose(P, base)).representative();
      if (P.total_image_length() > len_cap) break;
    }
    auto nk = exact_norm(index, P);
    if (!nk) continue;  // power left the ball: skipped, not failed
    TauBoundsRow row;
    row.k = k;
    row.norm = *nk;
    row.ratio = static_cast<double>(*nk) / k;
    auto need = static_cast<long long>(std::ceil(k * est.lower - eps));
    row.lower_ok = *nk >= need;
    row.upper_ok = *nk <= static_cast<long long>(k) * rep.norm1;
    if (!row.lower_ok)
      rep.violations.push_back("k=" + std::to_string(k) + ": norm " + std::to_string(*nk) +
                               " < ceil(k*lower) = " + std::to_string(need));
    if (!row.upper_ok)
      rep.violations.push_back("k=" + std::to_string(k) + ": norm " + std::to_string(*nk) +
                               " > k*norm1 = " + std::to_string(static_cast<long long>(k) * rep.norm1));
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace tlen
