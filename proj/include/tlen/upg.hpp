#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tlen/errors.hpp"

namespace tlen {

// Edge path over a graph's directed edges: entry +i is E_i (1-based), -i its
// reverse.  Tight means no entry is followed by its negation.
using EdgePath = std::vector<int32_t>;

EdgePath tighten(EdgePath p);
EdgePath reverse_path(const EdgePath& p);
bool is_tight(const EdgePath& p);

// Filtered homotopy equivalence in upper-triangular form: edges are listed in
// filtration order and f(E_i) = E_i . u_i where the suffix u_i is a closed
// path crossing only E_1..E_{i-1}.  Vertices are fixed pointwise (forced by
// the edge-image shape on every vertex an edge touches).
struct GraphEdge {
  std::string name;
  int from = 0, to = 0;
  EdgePath suffix;  // u_i
};

struct FilteredGraphMap {
  std::vector<int> vertices;     // vertex ids, dense 0..V-1
  std::vector<GraphEdge> edges;  // edges[i-1] = E_i
  std::vector<int> vertex_image;  // empty means identity

  int edge_count() const { return static_cast<int>(edges.size()); }
};

struct ValidationIssue {
  int index = 0;  // stratum i, or 0 for map-level problems
  std::string what;
};
struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
};

// Semantic checks: stratification (u_i in lower strata), u_i closed at the
// terminal vertex of E_i, tightness, fixed vertices, and the level-1
// splitting of f(E_i) = E_i . u_i (no cancellation at the junction).
// Unresolvable references (edge/vertex indices out of range) throw instead:
// such a structure cannot even be interpreted.
ValidationReport validate_upg_rep(const FilteredGraphMap& m);

// One application of f with tightening.
EdgePath map_path(const FilteredGraphMap& m, const EdgePath& g);
// [[f^k(g)]]; throws BudgetExceeded once an intermediate exceeds edge_budget.
EdgePath iterate_path(const FilteredGraphMap& m, EdgePath g, int k,
                      size_t edge_budget = 10000000);

// Power scans over the edge alphabet (alpha of word_core with edges as
// letters); the cyclic version reduces around the wrap first.
int path_alpha(const EdgePath& g);
int path_alpha_tilde(const EdgePath& g);

// E_i v^power Ē_j with f(E_i) = E_i v^l, f(E_j) = E_j v^s for one closed
// Nielsen loop v; negative power means the reversed loop.
struct ExceptionalPath {
  int i = 0, j = 0;
  long long power = 0;
  EdgePath nielsen_loop;
  int l = 0, s = 0;
};

// Pure arithmetic transport: power -> k*(l-s) + power.  Must agree with
// iterate_path on the realized path for every k.
ExceptionalPath exceptional_closed_form(ExceptionalPath e, long long k);
EdgePath realize(const ExceptionalPath& e);
// Checks e against the map: j < i (i == j leaves l and s ambiguous, so it is
// rejected rather than guessed), suffixes are v^l and v^s, v a closed Nielsen
// loop.  Throws std::invalid_argument.
void check_exceptional(const FilteredGraphMap& m, const ExceptionalPath& e);

// Twist stratum data: f(E_i) = E_i . loop^exp with loop a primitive closed
// Nielsen loop.  Keyed by edge index; these edges head exceptional paths.
struct TwistEdge {
  EdgePath loop;
  int exp = 0;
};
std::map<int, TwistEdge> twist_edges(const FilteredGraphMap& m);

struct NielsenPathRecord {
  EdgePath path;
  bool indivisible = false;
};
// [[f^k(p)]] == p for k = 1..k_checks.
bool verify_nielsen(const FilteredGraphMap& m, const EdgePath& p, int k_checks = 10);

struct SplitPiece {
  bool exceptional = false;
  EdgePath path;
  int i = 0, j = 0;        // filled for exceptional pieces
  long long power = 0;
};
struct Splitting {
  int M = 0;
  std::vector<SplitPiece> pieces;  // decomposition of [[f^M(sigma)]]
};

// Least M <= k_max such that the greedy parse of [[f^M(sigma)]] into single
// edges and exceptional subpaths (longest exceptional match first) is a
// genuine splitting: componentwise images concatenate into [[f^{M+1}(sigma)]]
// with no cancellation at the junctions, and the same holds one level up.
// Throws NotFoundWithinBudget.
Splitting detect_splitting(const FilteredGraphMap& m, const EdgePath& sigma, int k_max);

struct WitnessCertificate {
  EdgePath sigma;              // closed, not fixed by f
  int K = 0;
  std::vector<int> alpha_table;  // path_alpha_tilde of [[f^k(sigma)]], k = 1..K
  double slope = 0;              // least-squares slope of the table
  int intercept = 0;             // min over k of alpha_table[k-1] - k
};

// Searches closed paths (loop edges in filtration order, then E_i u_i style
// loops, then products of up to three loops at a shared vertex) for one whose
// alpha-tilde table grows with slope >= 0.98 under iteration.  Throws
// NoWitnessFound when the pool is exhausted: the map may be finite order or
// the budget too small.
WitnessCertificate find_witness(const FilteredGraphMap& m, int K = 50);

}  // namespace tlen
