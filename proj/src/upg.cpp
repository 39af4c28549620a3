#include "tlen/upg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "tlen/word.hpp"

namespace tlen {

namespace {

void push_entry(EdgePath& out, int32_t e) {
  if (!out.empty() && out.back() == -e)
    out.pop_back();
  else
    out.push_back(e);
}

int edge_index(int32_t e) { return e > 0 ? e : -e; }

int from_of(const FilteredGraphMap& m, int32_t e) {
  const GraphEdge& ge = m.edges[edge_index(e) - 1];
  return e > 0 ? ge.from : ge.to;
}
int to_of(const FilteredGraphMap& m, int32_t e) {
  const GraphEdge& ge = m.edges[edge_index(e) - 1];
  return e > 0 ? ge.to : ge.from;
}

// endpoints of a nonempty path, or nullopt if entries are not incident
std::optional<std::pair<int, int>> path_endpoints(const FilteredGraphMap& m, const EdgePath& p) {
  if (p.empty()) return std::nullopt;
  int start = from_of(m, p.front());
  int cur = start;
  for (int32_t e : p) {
    if (from_of(m, e) != cur) return std::nullopt;
    cur = to_of(m, e);
  }
  return std::make_pair(start, cur);
}

void check_refs(const FilteredGraphMap& m) {
  std::set<int> verts(m.vertices.begin(), m.vertices.end());
  if (verts.empty()) throw std::invalid_argument("graph map: no vertices");
  if (!m.vertex_image.empty() && m.vertex_image.size() != m.vertices.size())
    throw std::invalid_argument("graph map: vertex_image size mismatch");
  const int K = m.edge_count();
  for (const GraphEdge& ge : m.edges) {
    if (!verts.count(ge.from) || !verts.count(ge.to))
      throw std::invalid_argument("graph map: edge endpoint is not a vertex");
    for (int32_t e : ge.suffix)
      if (e == 0 || edge_index(e) > K)
        throw std::invalid_argument("graph map: suffix references a missing edge");
  }
}

}  // namespace

EdgePath tighten(EdgePath p) {
  EdgePath out;
  out.reserve(p.size());
  for (int32_t e : p) push_entry(out, e);
  return out;
}

EdgePath reverse_path(const EdgePath& p) {
  EdgePath out;
  out.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back(-*it);
  return out;
}

bool is_tight(const EdgePath& p) {
  for (size_t i = 1; i < p.size(); ++i)
    if (p[i] == -p[i - 1]) return false;
  return true;
}

ValidationReport validate_upg_rep(const FilteredGraphMap& m) {
  check_refs(m);
  ValidationReport rep;
  auto flag = [&rep](int i, std::string what) { rep.issues.push_back({i, std::move(what)}); };

  if (!m.vertex_image.empty())
    for (size_t v = 0; v < m.vertices.size(); ++v)
      if (m.vertex_image[v] != m.vertices[v]) {
        flag(0, "vertex " + std::to_string(m.vertices[v]) +
                    " not fixed; the edge-image shape forces fixed vertices");
        break;
      }

  for (int i = 1; i <= m.edge_count(); ++i) {
    const GraphEdge& ge = m.edges[i - 1];
    bool strata_ok = true;
    for (int32_t e : ge.suffix)
      if (edge_index(e) >= i) {
        flag(i, "lower-stratum violation at i=" + std::to_string(i) + ": suffix crosses " +
                    m.edges[edge_index(e) - 1].name);
        strata_ok = false;
        break;
      }
    if (!is_tight(ge.suffix)) flag(i, "suffix of " + ge.name + " is not tight");
    if (!ge.suffix.empty()) {
      auto ends = path_endpoints(m, ge.suffix);
      if (!ends)
        flag(i, "suffix of " + ge.name + " is not a path (non-incident edges)");
      else if (*ends != std::make_pair(ge.to, ge.to))
        flag(i, "suffix of " + ge.name + " is not closed at the terminal vertex");
      // level-1 splitting of f(E_i) = E_i . u_i: no cancellation at the dot
      if (strata_ok && !ge.suffix.empty() && ge.suffix.front() == -i)
        flag(i, "level-1 splitting violation at i=" + std::to_string(i));
    }
  }
  return rep;
}

EdgePath map_path(const FilteredGraphMap& m, const EdgePath& g) {
  EdgePath out;
  for (int32_t e : g) {
    if (e > 0) {
      push_entry(out, e);
      for (int32_t s : m.edges[e - 1].suffix) push_entry(out, s);
    } else {
      const EdgePath& u = m.edges[-e - 1].suffix;
      for (auto it = u.rbegin(); it != u.rend(); ++it) push_entry(out, -*it);
      push_entry(out, e);
    }
  }
  return out;
}

EdgePath iterate_path(const FilteredGraphMap& m, EdgePath g, int k, size_t edge_budget) {
  if (k < 0) throw std::invalid_argument("iterate_path: negative k");
  for (int t = 0; t < k; ++t) {
    g = map_path(m, g);
    if (g.size() > edge_budget) throw BudgetExceeded("iterate_path: edge budget exceeded");
  }
  return g;
}

int path_alpha(const EdgePath& g) { return alpha_scan(g); }

int path_alpha_tilde(const EdgePath& g) {
  size_t lo = 0, hi = g.size();
  while (hi - lo >= 2 && g[lo] == -g[hi - 1]) {
    ++lo;
    --hi;
  }
  return alpha_cyclic_scan(std::span<const int32_t>(g.data() + lo, hi - lo));
}

ExceptionalPath exceptional_closed_form(ExceptionalPath e, long long k) {
  e.power = k * (e.l - e.s) + e.power;
  return e;
}

EdgePath realize(const ExceptionalPath& e) {
  EdgePath out{e.i};
  const EdgePath loop = e.power >= 0 ? e.nielsen_loop : reverse_path(e.nielsen_loop);
  long long reps = e.power >= 0 ? e.power : -e.power;
  for (long long t = 0; t < reps; ++t) out.insert(out.end(), loop.begin(), loop.end());
  out.push_back(-e.j);
  return tighten(std::move(out));
}

void check_exceptional(const FilteredGraphMap& m, const ExceptionalPath& e) {
  check_refs(m);
  const int K = m.edge_count();
  if (e.i < 1 || e.i > K || e.j < 1 || e.j > K)
    throw std::invalid_argument("exceptional path: edge index out of range");
  if (e.i == e.j)
    throw std::invalid_argument("exceptional path: i == j leaves the twist exponents ambiguous");
  if (e.j > e.i) throw std::invalid_argument("exceptional path: requires j < i");
  if (e.l <= 0 || e.s <= 0) throw std::invalid_argument("exceptional path: l, s must be positive");
  if (e.nielsen_loop.empty() || !is_tight(e.nielsen_loop))
    throw std::invalid_argument("exceptional path: loop must be nonempty and tight");
  auto ends = path_endpoints(m, e.nielsen_loop);
  if (!ends || ends->first != ends->second)
    throw std::invalid_argument("exceptional path: loop is not closed");
  if (ends->first != m.edges[e.i - 1].to || ends->first != m.edges[e.j - 1].to)
    throw std::invalid_argument("exceptional path: loop not based at the edges' terminal vertex");
  if (!verify_nielsen(m, e.nielsen_loop, 1))
    throw std::invalid_argument("exceptional path: loop is not a Nielsen path");
  auto power_of = [&e](int reps) {
    EdgePath p;
    for (int t = 0; t < reps; ++t)
      p.insert(p.end(), e.nielsen_loop.begin(), e.nielsen_loop.end());
    return p;
  };
  if (m.edges[e.i - 1].suffix != power_of(e.l))
    throw std::invalid_argument("exceptional path: suffix of E_i is not loop^l");
  if (m.edges[e.j - 1].suffix != power_of(e.s))
    throw std::invalid_argument("exceptional path: suffix of E_j is not loop^s");
}

bool verify_nielsen(const FilteredGraphMap& m, const EdgePath& p, int k_checks) {
  if (p.empty() || !is_tight(p)) return false;
  EdgePath g = p;
  for (int k = 0; k < k_checks; ++k) {
    g = map_path(m, g);
    if (g != p) return false;
  }
  return true;
}

// Edges whose suffix is a power of a fixed loop; these head exceptional paths.
std::map<int, TwistEdge> twist_edges(const FilteredGraphMap& m) {
  std::map<int, TwistEdge> out;
  for (int i = 1; i <= m.edge_count(); ++i) {
    const EdgePath& u = m.edges[i - 1].suffix;
    if (u.empty() || map_path(m, u) != u) continue;
    TwistEdge te{u, 1};
    const size_t n = u.size();
    for (size_t d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      bool repeats = true;
      for (size_t q = d; q < n && repeats; ++q) repeats = u[q] == u[q % d];
      if (!repeats) continue;
      EdgePath root(u.begin(), u.begin() + d);
      auto ends = path_endpoints(m, root);
      if (!ends || ends->first != ends->second) continue;
      if (map_path(m, root) != root) continue;
      te = TwistEdge{std::move(root), static_cast<int>(n / d)};
      break;
    }
    out.emplace(i, std::move(te));
  }
  return out;
}

namespace {

size_t count_copies(const EdgePath& g, size_t start, const EdgePath& pat) {
  size_t copies = 0;
  while (start + pat.size() <= g.size() &&
         std::equal(pat.begin(), pat.end(), g.begin() + start)) {
    start += pat.size();
    ++copies;
  }
  return copies;
}

std::vector<SplitPiece> greedy_parse(const std::map<int, TwistEdge>& twists, const EdgePath& g) {
  std::vector<SplitPiece> pieces;
  size_t pos = 0;
  while (pos < g.size()) {
    int32_t e = g[pos];
    bool matched = false;
    auto it = e > 0 ? twists.find(e) : twists.end();
    if (it != twists.end()) {
      const EdgePath& loop = it->second.loop;
      const EdgePath rloop = reverse_path(loop);
      // longest run of loop copies (either direction) followed by a mate
      long long best_t = -1, best_sign = 1;
      for (int dir = 0; dir < 2; ++dir) {
        const EdgePath& pat = dir == 0 ? loop : rloop;
        auto t_max = static_cast<long long>(count_copies(g, pos + 1, pat));
        for (long long t = t_max; t >= 0; --t) {
          if (t <= best_t) break;
          size_t q = pos + 1 + static_cast<size_t>(t) * pat.size();
          if (q >= g.size() || g[q] >= 0) continue;
          auto jt = twists.find(-g[q]);
          if (jt == twists.end() || jt->second.loop != loop) continue;
          best_t = t;
          best_sign = dir == 0 ? 1 : -1;
          break;
        }
      }
      if (best_t >= 0) {
        size_t end = pos + 1 + static_cast<size_t>(best_t) * loop.size();
        SplitPiece piece;
        piece.exceptional = true;
        piece.path.assign(g.begin() + pos, g.begin() + end + 1);
        piece.i = e;
        piece.j = -g[end];
        piece.power = best_t * best_sign;
        pieces.push_back(std::move(piece));
        pos = end + 1;
        matched = true;
      }
    }
    if (!matched) {
      pieces.push_back(SplitPiece{false, {e}, 0, 0, 0});
      ++pos;
    }
  }
  return pieces;
}

// the parse is a 1-splitting iff componentwise images concatenate into
// [[f(g)]] without junction cancellation, i.e. the lengths add up
bool is_one_splitting(const FilteredGraphMap& m, const std::vector<SplitPiece>& pieces,
                      const EdgePath& g) {
  size_t total = 0;
  for (const SplitPiece& p : pieces) total += map_path(m, p.path).size();
  return total == map_path(m, g).size();
}

double fit_slope(const std::vector<int>& ys) {
  const auto n = static_cast<double>(ys.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t q = 0; q < ys.size(); ++q) {
    double x = static_cast<double>(q) + 1, y = ys[q];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

}  // namespace

Splitting detect_splitting(const FilteredGraphMap& m, const EdgePath& sigma, int k_max) {
  if (!is_tight(sigma)) throw std::invalid_argument("detect_splitting: sigma not tight");
  auto ends = path_endpoints(m, sigma);
  if (!ends || ends->first != ends->second)
    throw std::invalid_argument("detect_splitting: sigma must be a closed path");
  const auto twists = twist_edges(m);
  const size_t budget = 10000000;

  EdgePath g = sigma;
  for (int M = 0; M <= k_max; ++M) {
    auto pieces = greedy_parse(twists, g);
    if (is_one_splitting(m, pieces, g)) {
      EdgePath g1 = map_path(m, g);
      if (is_one_splitting(m, greedy_parse(twists, g1), g1)) return Splitting{M, pieces};
    }
    g = map_path(m, g);
    if (g.size() > budget) break;
  }
  throw NotFoundWithinBudget("detect_splitting: no persistent splitting within k_max");
}

WitnessCertificate find_witness(const FilteredGraphMap& m, int K) {
  if (K < 2) throw std::invalid_argument("find_witness: K must be >= 2");

  std::vector<EdgePath> pool;
  std::set<EdgePath> seen;
  auto add = [&](EdgePath p) {
    p = tighten(std::move(p));
    if (p.empty()) return;
    auto ends = path_endpoints(m, p);
    if (!ends || ends->first != ends->second) return;
    if (seen.insert(p).second) pool.push_back(std::move(p));
  };

  // loops by filtration index, then edge-with-suffix loops, then short products
  for (int i = 1; i <= m.edge_count(); ++i)
    if (m.edges[i - 1].from == m.edges[i - 1].to) add(EdgePath{i});
  for (int i = 1; i <= m.edge_count(); ++i) {
    const GraphEdge& ge = m.edges[i - 1];
    EdgePath p{i};
    p.insert(p.end(), ge.suffix.begin(), ge.suffix.end());
    if (ge.from == ge.to) {
      add(p);
    } else {
      p.push_back(-i);
      add(std::move(p));
    }
  }
  const size_t base = pool.size();
  for (size_t a = 0; a < base; ++a)
    for (size_t b = 0; b < base; ++b) {
      if (a == b) continue;
      EdgePath ab = pool[a];
      ab.insert(ab.end(), pool[b].begin(), pool[b].end());
      add(ab);
      for (size_t c = 0; c < base && base <= 12; ++c) {
        EdgePath abc = ab;
        abc.insert(abc.end(), pool[c].begin(), pool[c].end());
        add(abc);
      }
    }

  for (const EdgePath& sigma : pool) {
    if (map_path(m, sigma) == sigma) continue;  // fixed paths certify nothing
    WitnessCertificate cert;
    cert.sigma = sigma;
    cert.K = K;
    EdgePath g = sigma;
    bool ok = true;
    for (int k = 1; k <= K && ok; ++k) {
      g = map_path(m, g);
      if (g.size() > 10000000) ok = false;
      cert.alpha_table.push_back(path_alpha_tilde(g));
    }
    if (!ok) continue;
    cert.slope = fit_slope(cert.alpha_table);
    cert.intercept = cert.alpha_table[0] - 1;
    for (int k = 1; k <= K; ++k)
      cert.intercept = std::min(cert.intercept, cert.alpha_table[k - 1] - k);
    if (cert.slope >= 0.98) return cert;
  }
  throw NoWitnessFound("find_witness: no closed path with certified linear alpha growth");
}

}  // namespace tlen
