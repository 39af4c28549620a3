#include "tlen/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "tlen/errors.hpp"
#include "tlen/word.hpp"

namespace tlen {

ordered_json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return ordered_json::parse(buf);
}

std::string json_dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json load_json(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() already carries line/column for string input
    throw Error(path + ": " + e.what());
  }
}

ordered_json word_to_json(const ReducedWord& w) {
  if (w.rank() <= 26) return format_word(w.letters());
  ordered_json a = ordered_json::array();
  for (Letter l : w.letters()) a.push_back(static_cast<int>(l.v));
  return a;
}

ReducedWord word_from_json(const ordered_json& j, int rank) {
  if (j.is_string()) return parse_word(j.get<std::string>(), rank);
  if (!j.is_array()) throw std::invalid_argument("word: expected string or integer array");
  std::vector<Letter> ls;
  for (const auto& e : j) {
    int v = e.get<int>();
    int idx = v < 0 ? -v : v;
    if (v == 0 || idx > rank)
      throw std::invalid_argument("word: letter " + std::to_string(v) + " out of range");
    ls.push_back(Letter{static_cast<int16_t>(v)});
  }
  return ReducedWord::reduce(rank, ls);
}

ordered_json aut_to_json(const Automorphism& a) {
  ordered_json j;
  j["rank"] = a.rank;
  ordered_json imgs = ordered_json::array();
  for (const auto& w : a.images) imgs.push_back(word_to_json(w));
  j["images"] = imgs;
  return j;
}

Automorphism aut_from_json(const ordered_json& j) {
  if (!j.contains("rank") || !j.contains("images"))
    throw std::invalid_argument("automorphism: need \"rank\" and \"images\"");
  int n = j.at("rank").get<int>();
  if (n < 1) throw std::invalid_argument("automorphism: rank must be >= 1");
  const auto& imgs = j.at("images");
  if (!imgs.is_array() || static_cast<int>(imgs.size()) != n)
    throw std::invalid_argument("automorphism: expected " + std::to_string(n) + " images");
  Automorphism a;
  a.rank = n;
  for (const auto& e : imgs) a.images.push_back(word_from_json(e, n));
  return a;
}

static const char* op_name(GenLabel::Kind k) {
  switch (k) {
    case GenLabel::Perm: return "perm";
    case GenLabel::Inv: return "inv";
    case GenLabel::Twist: return "twist";
    case GenLabel::TwistInv: return "twist_inv";
  }
  return "?";
}

ordered_json genword_to_json(const GeneratorWord& gw) {
  ordered_json a = ordered_json::array();
  for (const GenLabel& g : gw) {
    ordered_json e;
    e["op"] = op_name(g.kind);
    e["i"] = g.i;
    if (g.kind != GenLabel::Inv) e["j"] = g.j;
    a.push_back(e);
  }
  return a;
}

GeneratorWord genword_from_json(const ordered_json& j) {
  if (!j.is_array()) throw std::invalid_argument("generator word: expected an array");
  GeneratorWord gw;
  for (const auto& e : j) {
    std::string op = e.at("op").get<std::string>();
    GenLabel g{};
    if (op == "perm") g.kind = GenLabel::Perm;
    else if (op == "inv") g.kind = GenLabel::Inv;
    else if (op == "twist") g.kind = GenLabel::Twist;
    else if (op == "twist_inv") g.kind = GenLabel::TwistInv;
    else throw std::invalid_argument("generator word: unknown op \"" + op + "\"");
    g.i = e.at("i").get<int>();
    g.j = e.value("j", 0);
    gw.push_back(g);
  }
  return gw;
}

ordered_json path_to_json(const EdgePath& p, const FilteredGraphMap& m) {
  ordered_json a = ordered_json::array();
  for (int32_t e : p) {
    int idx = e < 0 ? -e : e;
    if (idx < 1 || idx > m.edge_count())
      throw std::invalid_argument("path: edge index " + std::to_string(e) + " out of range");
    const std::string& nm = m.edges[idx - 1].name;
    a.push_back(e < 0 ? "~" + nm : nm);
  }
  return a;
}

static EdgePath path_from_names(const ordered_json& j,
                                const std::unordered_map<std::string, int>& by_name) {
  if (!j.is_array()) throw std::invalid_argument("path: expected an array of edge names");
  EdgePath p;
  for (const auto& e : j) {
    std::string s = e.get<std::string>();
    bool rev = !s.empty() && s[0] == '~';
    if (rev) s.erase(0, 1);
    auto it = by_name.find(s);
    if (it == by_name.end()) throw std::invalid_argument("path: unknown edge \"" + s + "\"");
    p.push_back(rev ? -it->second : it->second);
  }
  return p;
}

static std::unordered_map<std::string, int> edge_index(const FilteredGraphMap& m) {
  std::unordered_map<std::string, int> by_name;
  for (int i = 1; i <= m.edge_count(); ++i) by_name[m.edges[i - 1].name] = i;
  return by_name;
}

EdgePath path_from_json(const ordered_json& j, const FilteredGraphMap& m) {
  return path_from_names(j, edge_index(m));
}

ordered_json graph_to_json(const FilteredGraphMap& m) {
  ordered_json j;
  j["vertices"] = m.vertices;
  ordered_json edges = ordered_json::array();
  for (const GraphEdge& e : m.edges) {
    ordered_json je;
    je["name"] = e.name;
    je["from"] = e.from;
    je["to"] = e.to;
    je["suffix"] = path_to_json(e.suffix, m);
    edges.push_back(je);
  }
  j["edges"] = edges;
  if (!m.vertex_image.empty()) j["vertex_image"] = m.vertex_image;
  return j;
}

FilteredGraphMap graph_from_json(const ordered_json& j) {
  if (!j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph map: need \"vertices\" and \"edges\"");
  FilteredGraphMap m;
  m.vertices = j.at("vertices").get<std::vector<int>>();
  std::unordered_map<std::string, int> by_name;
  for (const auto& je : j.at("edges")) {
    GraphEdge e;
    e.name = je.at("name").get<std::string>();
    e.from = je.at("from").get<int>();
    e.to = je.at("to").get<int>();
    if (!by_name.emplace(e.name, m.edge_count() + 1).second)
      throw std::invalid_argument("graph map: duplicate edge \"" + e.name + "\"");
    m.edges.push_back(std::move(e));
  }
  int i = 0;
  for (const auto& je : j.at("edges"))
    m.edges[i++].suffix = path_from_names(je.at("suffix"), by_name);
  if (j.contains("vertex_image")) m.vertex_image = j.at("vertex_image").get<std::vector<int>>();
  return m;
}

FilteredGraphMap load_graph(const std::string& path) { return graph_from_json(load_json(path)); }

static const char* growth_name(Growth g) {
  switch (g) {
    case Growth::FiniteOrder: return "finite-order";
    case Growth::Polynomial: return "polynomial";
    case Growth::Exponential: return "exponential";
    case Growth::Inconclusive: return "inconclusive";
  }
  return "?";
}

ordered_json growth_to_json(const GrowthClassification& g) {
  ordered_json j;
  j["verdict"] = growth_name(g.verdict);
  j["period"] = g.period;
  j["degree"] = g.degree;
  j["lambda_hat"] = json_number(g.lambda_hat);
  j["rho_abelian"] = json_number(g.rho_abelian);
  j["k_used"] = g.k_used;
  j["lengths"] = g.lengths;
  j["pair_lengths"] = g.pair_lengths;
  j["r2_exp"] = json_number(g.r2_exp);
  j["r2_poly"] = json_number(g.r2_poly);
  j["loglog_slope"] = json_number(g.loglog_slope);
  j["pair_guard"] = g.pair_guard;
  j["note"] = g.note;
  return j;
}

ordered_json cancellation_to_json(const CancellationReport& r) {
  ordered_json j;
  j["rank"] = r.rank;
  j["search_depth"] = r.search_depth;
  j["stabilized"] = r.stabilized;
  j["per_generator"] = r.per_generator;    // std::map: keys come out sorted
  j["symmetrized"] = r.symmetrized;
  j["lemma1_word_constant"] = r.lemma1_word_constant;
  j["lemma1_cyclic_constant"] = r.lemma1_cyclic_constant;
  j["certify_doublings"] = r.certify_doublings;
  return j;
}

ordered_json witness_to_json(const WitnessCertificate& w, const FilteredGraphMap& m) {
  ordered_json j;
  j["sigma"] = path_to_json(w.sigma, m);
  j["K"] = w.K;
  j["alpha_table"] = w.alpha_table;
  j["slope"] = json_number(w.slope);
  j["intercept"] = w.intercept;
  return j;
}

ordered_json splitting_to_json(const Splitting& s, const FilteredGraphMap& m) {
  ordered_json j;
  j["M"] = s.M;
  ordered_json pieces = ordered_json::array();
  for (const SplitPiece& p : s.pieces) {
    ordered_json jp;
    jp["type"] = p.exceptional ? "exceptional" : "edge";
    jp["path"] = path_to_json(p.path, m);
    if (p.exceptional) {
      jp["i"] = p.i;
      jp["j"] = p.j;
      jp["power"] = p.power;
    }
    pieces.push_back(jp);
  }
  j["pieces"] = pieces;
  return j;
}

ordered_json validation_to_json(const ValidationReport& r) {
  ordered_json j;
  j["valid"] = r.valid();
  ordered_json issues = ordered_json::array();
  for (const ValidationIssue& i : r.issues)
    issues.push_back(ordered_json{{"index", i.index}, {"what", i.what}});
  j["issues"] = issues;
  return j;
}

ordered_json tau_bounds_to_json(const TauBoundsReport& r) {
  ordered_json j;
  j["rank"] = r.rank;
  j["norm1"] = r.norm1;
  j["lower"] = json_number(r.lower);
  j["base_in_ball"] = r.base_in_ball;
  ordered_json rows = ordered_json::array();
  for (const TauBoundsRow& row : r.rows) {
    ordered_json jr;
    jr["k"] = row.k;
    jr["norm"] = row.norm;
    jr["ratio"] = json_number(row.ratio);
    jr["lower_ok"] = row.lower_ok;
    jr["upper_ok"] = row.upper_ok;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  j["violations"] = r.violations;
  j["ok"] = r.ok();
  return j;
}

static const char* method_name(TauEstimate::Method m) {
  switch (m) {
    case TauEstimate::Case1Exponential: return "case1-exponential";
    case TauEstimate::Case2Upg: return "case2-upg";
    case TauEstimate::FiniteOrder: return "finite-order";
    case TauEstimate::Inconclusive: return "inconclusive";
  }
  return "?";
}

ordered_json tau_to_json(const TauEstimate& t) {
  ordered_json j;
  j["method"] = method_name(t.method);
  j["lower"] = json_number(t.lower);
  j["upper"] = t.upper_computed ? json_number(t.upper) : ordered_json(nullptr);
  if (t.upper_witness.found) {
    ordered_json w;
    w["k"] = t.upper_witness.k;
    w["chain"] = t.upper_witness.raw_chain ? "raw" : "canonical";
    w["steps"] = genword_to_json(t.upper_witness.steps);
    j["upper_witness"] = w;
  }
  if (t.method == TauEstimate::Case1Exponential) j["lambda"] = json_number(t.lambda);
  if (t.method == TauEstimate::Case2Upg) {
    j["C"] = t.C;
    j["s"] = t.s;
    j["witness"] = t.witness;
    j["alpha_table"] = t.alpha_table;
    j["slope"] = json_number(t.slope);
    j["slope_int"] = t.slope_int;
    j["intercept"] = t.intercept;
  }
  j["growth"] = growth_to_json(t.growth);
  j["note"] = t.note;
  return j;
}

ordered_json tau_certificate(const Automorphism& O, const TauEstimate& t) {
  ordered_json j;
  j["format"] = "tau-certificate";
  j["version"] = 1;
  j["aut"] = aut_to_json(O);
  j["estimate"] = tau_to_json(t);
  return j;
}

namespace {

struct Checker {
  CertificateCheck out;
  void fail(const std::string& s) {
    out.ok = false;
    out.problems.push_back(s);
  }
  void pass(const std::string& s) { out.checked.push_back(s); }
  void expect(bool cond, const std::string& claim) {
    if (cond) pass(claim);
    else fail(claim + ": FAILED");
  }
};

Automorphism nth_power(const Automorphism& a, int k) {
  Automorphism p = a;
  for (int i = 1; i < k; ++i) p = compose(p, a);
  return p;
}

bool close12(double a, double b) {
  // stored values went through 12-significant-digit rounding
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

CertificateCheck recheck_tau_certificate(const ordered_json& cert) {
  Checker c;
  if (cert.value("format", "") != "tau-certificate") {
    c.fail("not a tau certificate (missing format tag)");
    return c.out;
  }
  Automorphism O = aut_from_json(cert.at("aut"));
  const ordered_json& est = cert.at("estimate");
  const std::string method = est.at("method").get<std::string>();
  const double lower = est.at("lower").get<double>();
  Automorphism rep = outer_canonical(O).representative();

  if (method == "inconclusive") {
    c.out.inconclusive = true;
    c.pass("inconclusive certificate: no claims to re-check");
    return c.out;
  }

  if (method == "finite-order") {
    int p = est.at("growth").at("period").get<int>();
    if (p < 1) {
      c.fail("finite-order period must be >= 1");
    } else {
      OuterClass id = outer_canonical(Automorphism::identity(O.rank));
      c.expect(outer_canonical(nth_power(rep, p)) == id,
               "O^" + std::to_string(p) + " is the identity outer class");
    }
    c.expect(lower == 0, "finite order: lower bound is 0");
    c.expect(est.at("upper").is_number() && est.at("upper").get<double>() == 0,
             "finite order: upper bound is 0");
    return c.out;
  }

  if (method == "case1-exponential") {
    double lam = est.at("lambda").get<double>();
    double lam2 = lambda_lower_abelian(O);
    c.expect(lam2 > 1.0 + 1e-12, "abelianization certifies exponential growth");
    c.expect(close12(lam, lam2), "stored lambda matches recomputed spectral bound");
    c.expect(close12(lower, std::log2(lam2)), "lower = log2(lambda)");
  } else if (method == "case2-upg") {
    int C = est.at("C").get<int>();
    int s = est.at("s").get<int>();
    int m = est.at("slope_int").get<int>();
    int b = est.at("intercept").get<int>();
    std::vector<int> table = est.at("alpha_table").get<std::vector<int>>();
    c.expect(C >= 1 && s >= 1 && m >= 1, "constants C, s, slope are positive");
    c.expect(s == upg_power(O), "stored power s matches the abelianization");
    c.expect(close12(lower, static_cast<double>(m) / (static_cast<double>(C) * s)),
             "lower = slope / (C * s)");

    ReducedWord w = parse_word(est.at("witness").get<std::string>(), O.rank);
    Automorphism P = outer_canonical(nth_power(rep, s)).representative();
    bool table_ok = true, bound_ok = true;
    CyclicWord cw = cyclic_reduce(w).first;
    for (size_t k = 1; k <= table.size(); ++k) {
      cw = apply_cyclic(P, cw);
      if (alpha_tilde(cw) != table[k - 1]) table_ok = false;
      if (table[k - 1] < m * static_cast<int>(k) + b) bound_ok = false;
    }
    c.expect(table_ok, "alpha table replays from the witness necklace");
    c.expect(bound_ok, "alpha_k >= slope*k + intercept pointwise");
  } else {
    c.fail("unknown method \"" + method + "\"");
    return c.out;
  }

  if (est.at("upper").is_number()) {
    double upper = est.at("upper").get<double>();
    if (!est.contains("upper_witness")) {
      c.fail("finite upper bound without a decomposition witness");
    } else {
      const ordered_json& w = est.at("upper_witness");
      int k = w.at("k").get<int>();
      GeneratorWord steps = genword_from_json(w.at("steps"));
      c.expect(k >= 1 && close12(upper, static_cast<double>(steps.size()) / k),
               "upper = |steps| / k");
      Automorphism A = evaluate(steps, O.rank);
      if (w.at("chain").get<std::string>() == "raw") {
        c.expect(A == nth_power(rep, k), "steps evaluate to the k-th power");
      } else {
        OuterClass cur = outer_canonical(rep);
        for (int i = 1; i < k; ++i)
          cur = outer_canonical(compose(cur.representative(), rep));
        c.expect(A == cur.representative(),
                 "steps evaluate to the canonical power representative");
      }
    }
    c.expect(lower <= upper + 1e-12, "lower <= upper");
  }
  return c.out;
}

std::string growth_csv(const TauEstimate& t) {
  std::ostringstream ss;
  ss << "k,L_k,alpha_k\n";
  size_t rows = std::max(t.growth.lengths.size(), t.alpha_table.size());
  for (size_t k = 1; k <= rows; ++k) {
    ss << k << ',';
    if (k <= t.growth.lengths.size()) ss << t.growth.lengths[k - 1];
    ss << ',';
    if (k <= t.alpha_table.size()) ss << t.alpha_table[k - 1];
    ss << '\n';
  }
  return ss.str();
}

void save_ball(const BallIndex& b, const std::string& path) {
  ordered_json head;
  head["format"] = "ball-snapshot";
  head["version"] = 1;
  head["rank"] = b.rank;
  head["radius"] = b.radius;
  head["requested_radius"] = b.requested_radius;
  head["truncated"] = b.truncated;
  head["generators"] = "symmetrized-elementary";
  head["layer_sizes"] = b.layer_sizes;

  std::vector<std::pair<int, std::string>> lines;
  lines.reserve(b.dist.size());
  for (const auto& [key, d] : b.dist) {
    ordered_json rec;
    rec["d"] = d;
    ordered_json imgs = ordered_json::array();
    for (const ReducedWord& w : decode_tuple_key(key, b.rank)) imgs.push_back(word_to_json(w));
    rec["images"] = imgs;
    lines.emplace_back(d, rec.dump());
  }
  std::sort(lines.begin(), lines.end());

  std::ostringstream ss;
  ss << head.dump() << '\n';
  for (const auto& [d, line] : lines) ss << line << '\n';
  write_text_file(path, ss.str());
}

BallIndex load_ball(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty snapshot: " + path);
  ordered_json head = ordered_json::parse(line);
  if (head.value("format", "") != "ball-snapshot")
    throw Error("not a ball snapshot: " + path);
  BallIndex b;
  b.rank = head.at("rank").get<int>();
  b.radius = head.at("radius").get<int>();
  b.requested_radius = head.at("requested_radius").get<int>();
  b.truncated = head.at("truncated").get<bool>();
  b.layer_sizes = head.at("layer_sizes").get<std::vector<size_t>>();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ordered_json rec = ordered_json::parse(line);
    OuterClass oc;
    oc.rank = b.rank;
    for (const auto& e : rec.at("images")) oc.images.push_back(word_from_json(e, b.rank));
    b.dist[oc.key()] = rec.at("d").get<int>();
  }
  size_t total = 0;
  for (size_t s : b.layer_sizes) total += s;
  if (total != b.dist.size()) throw Error("snapshot layer sizes disagree with records: " + path);
  return b;
}

}  // namespace tlen
