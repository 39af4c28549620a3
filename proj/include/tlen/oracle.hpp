#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tlen/automorphism.hpp"
#include "tlen/translen.hpp"

namespace tlen {

// Exact ball in Out(F_n) under the symmetrized elementary generators:
// canonical class -> word norm, computed by breadth-first search from the
// identity.  Ground truth for validating every translation-length bound at
// desk scale.
struct BallIndex {
  int rank = 0;
  int radius = 0;             // last fully completed layer
  int requested_radius = 0;
  bool truncated = false;     // node budget cut the build short
  std::vector<size_t> layer_sizes;            // layer_sizes[r] = |sphere r|
  std::unordered_map<std::string, int> dist;  // canonical tuple key -> norm

  size_t size() const { return dist.size(); }
};

// Layer-synchronous BFS with canonical-form dedup.  Each new layer is merged
// and sorted before insertion, so layer sizes and table contents are
// identical for every `threads` value.  When a completed layer would push the
// table past node_budget the build stops cleanly: that layer is dropped,
// `radius` records the last completed one and `truncated` is set, keeping the
// table closed under the generating set within radius-1.
BallIndex build_ball(int n, int R, size_t node_budget = 10000000, int threads = 1);

// Exact word norm of the outer class of O, or nullopt outside the ball
// (never an estimate in either direction).  Throws on rank mismatch.
std::optional<int> exact_norm(const BallIndex& index, const Automorphism& O);

// Inverse of OuterClass::key(): recover the canonical image tuple.
std::vector<ReducedWord> decode_tuple_key(const std::string& key, int rank);

struct TauBoundsRow {
  int k = 0;
  int norm = 0;       // exact ‖O^k‖
  double ratio = 0;   // norm / k, the empirical tau sequence
  bool lower_ok = true;
  bool upper_ok = true;
};

struct TauBoundsReport {
  int rank = 0;
  int norm1 = 0;      // exact ‖O‖
  double lower = 0;   // bound under test
  bool base_in_ball = false;
  std::vector<TauBoundsRow> rows;           // one per in-ball power
  std::vector<std::string> violations;      // empty unless a bound is wrong
  bool ok() const { return violations.empty(); }
};

// For every k <= k_cap with [O^k] inside the ball, checks the certified
// bracket against exact norms:
//   ‖O^k‖ >= ceil(k * est.lower - 1e-9)   and   ‖O^k‖ <= k * ‖O‖.
// Out-of-ball powers are skipped, not failed.  Violations are report rows,
// and they mean a bug somewhere.
TauBoundsReport verify_tau_bounds(const BallIndex& index, const Automorphism& O,
                                  const TauEstimate& est, int k_cap = 50);

}  // namespace tlen
