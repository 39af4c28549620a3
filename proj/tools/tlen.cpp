// Command-line front end: batch experiments over the library, emitting
// self-contained JSON certificates plus derived CSV tables.
// Exit codes: 0 = pass, 1 = inconclusive/empty, 2 = violation or bug.

#include <CLI11.hpp>

#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "tlen/cancellation.hpp"
#include "tlen/json_io.hpp"
#include "tlen/oracle.hpp"
#include "tlen/translen.hpp"
#include "tlen/upg.hpp"

using namespace tlen;
namespace fs = std::filesystem;

namespace {

struct Config {
  int rank = 2;
  std::vector<Automorphism> auts;
  int k_max = 40;                 // growth probe depth
  size_t length_budget = 200000;  // growth probe word cap
  int bcc_depth = 0;              // 0: 8 for rank 2, 6 above
  int oracle_radius = 0;          // 0: 4 for rank 2, 3 above
  size_t node_budget = 10000000;
  int threads = 1;
  int samples = 2000;
  int maxlen = 30;
  uint64_t seed = 1;
  std::string out = ".";
};

// every subcommand takes these; explicit flags override the config file
struct Common {
  std::string config_path;
  std::string out;
  uint64_t seed = 0;
  bool seed_set = false;
  void attach(CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config JSON");
    sub->add_option("--out", out, "output directory (default .)");
    sub->add_option("--seed", seed, "seed for randomized suites")
        ->each([this](const std::string&) { seed_set = true; });
  }
  Config load() const {
    Config cfg;
    if (!config_path.empty()) {
      ordered_json j = load_json(config_path);
      cfg.rank = j.value("rank", cfg.rank);
      cfg.k_max = j.value("k_max", cfg.k_max);
      cfg.length_budget = j.value("length_budget", cfg.length_budget);
      cfg.bcc_depth = j.value("bcc_depth", cfg.bcc_depth);
      cfg.oracle_radius = j.value("oracle_radius", cfg.oracle_radius);
      cfg.node_budget = j.value("node_budget", cfg.node_budget);
      cfg.threads = j.value("threads", cfg.threads);
      cfg.samples = j.value("samples", cfg.samples);
      cfg.maxlen = j.value("maxlen", cfg.maxlen);
      cfg.seed = j.value("seed", cfg.seed);
      cfg.out = j.value("out", cfg.out);
      if (j.contains("auts"))
        for (const auto& ja : j.at("auts")) cfg.auts.push_back(aut_from_json(ja));
      if (j.contains("aut_files"))
        for (const auto& jf : j.at("aut_files"))
          cfg.auts.push_back(aut_from_json(load_json(jf.get<std::string>())));
      if (cfg.rank < 1 || cfg.k_max < 1 || cfg.length_budget < 1 || cfg.node_budget < 1 ||
          cfg.threads < 1 || cfg.samples < 0 || cfg.maxlen < 1)
        throw Error(config_path + ": budgets must be positive");
    }
    if (!out.empty()) cfg.out = out;
    if (seed_set) cfg.seed = seed;
    return cfg;
  }
};

void emit(const Config& cfg, const std::string& name, const ordered_json& j) {
  fs::create_directories(cfg.out);
  write_text_file((fs::path(cfg.out) / name).string(), json_dump(j));
}

void print_report(const ordered_json& j) { std::cout << json_dump(j); }

std::string item_name(const char* stem, size_t i, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, i + 1, ext);
  return buf;
}

Automorphism inline_aut(int rank, const std::vector<std::string>& images) {
  Automorphism a;
  a.rank = rank;
  for (const auto& s : images) a.images.push_back(parse_word(s, rank));
  if (static_cast<int>(a.images.size()) != rank)
    throw std::invalid_argument("expected " + std::to_string(rank) + " images, got " +
                                std::to_string(a.images.size()));
  return a;
}

ordered_json matrix_to_json(const IntMatrix& M) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < M.n; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < M.n; ++c) row.push_back(M.at(r, c));
    rows.push_back(row);
  }
  return rows;
}

int resolved_radius(const Config& cfg) {
  if (cfg.oracle_radius > 0) return cfg.oracle_radius;
  return cfg.rank == 2 ? 4 : 3;
}

// ---- word ----

int run_word(const Common& common, const std::vector<std::string>& inputs, int rank) {
  Config cfg = common.load();
  if (rank > 0) cfg.rank = rank;
  ordered_json items = ordered_json::array();
  for (const std::string& in : inputs) {
    ReducedWord w = parse_word(in, rank > 0 ? cfg.rank : 0);
    CyclicWord c = cyclic_reduce(w).first;
    ordered_json ji;
    ji["input"] = in;
    ji["rank"] = w.rank();
    ji["reduced"] = word_to_json(w);
    ji["length"] = w.length();
    ji["alpha"] = alpha(w);
    ji["cyclic"] = word_to_json(c.as_word());
    ji["alpha_tilde"] = alpha_tilde(c);
    ji["inverse"] = word_to_json(invert(w));
    items.push_back(ji);
  }
  ordered_json j{{"command", "word"}, {"items", items}};
  print_report(j);
  return 0;
}

// ---- aut ----

int run_aut(const Common& common, const std::string& aut_file,
            const std::vector<std::string>& images, int rank) {
  Config cfg = common.load();
  if (rank > 0) cfg.rank = rank;
  std::vector<Automorphism> auts = cfg.auts;
  if (!aut_file.empty()) auts.push_back(aut_from_json(load_json(aut_file)));
  if (!images.empty()) auts.push_back(inline_aut(cfg.rank, images));
  if (auts.empty()) {
    std::cerr << "aut: no input (use --aut FILE, inline images, or a config)\n";
    return 1;
  }
  ordered_json items = ordered_json::array();
  for (const Automorphism& a : auts) {
    GeneratorWord gw = nielsen_decompose(a);  // throws NotAnAutomorphism on bad input
    ordered_json ji;
    ji["aut"] = aut_to_json(a);
    ji["canonical"] = aut_to_json(outer_canonical(a).representative());
    ji["decomposition_length"] = gw.size();
    ji["decomposition"] = genword_to_json(gw);
    ji["abelianization"] = matrix_to_json(abelianization_matrix(a));
    ji["lambda_abelian"] = json_number(lambda_lower_abelian(a));
    ji["upg_power"] = upg_power(a);
    items.push_back(ji);
  }
  ordered_json j{{"command", "aut"}, {"items", items}};
  print_report(j);
  return 0;
}

// ---- bcc ----

int run_bcc(const Common& common, int rank, int depth, int samples, int maxlen) {
  Config cfg = common.load();
  if (rank > 0) cfg.rank = rank;
  if (depth > 0) cfg.bcc_depth = depth;
  if (samples >= 0) cfg.samples = samples;
  if (maxlen > 0) cfg.maxlen = maxlen;
  int L = cfg.bcc_depth > 0 ? cfg.bcc_depth : (cfg.rank == 2 ? 8 : 6);
  CancellationReport r = cfg.samples > 0
                             ? lemma1_certified(cfg.rank, L, cfg.samples, cfg.maxlen, cfg.seed)
                             : lemma1_constants(cfg.rank, L);
  ordered_json j{{"command", "bcc"}, {"report", cancellation_to_json(r)}};
  emit(cfg, "bcc_rank" + std::to_string(cfg.rank) + ".json", j);
  print_report(j);
  return r.stabilized ? 0 : 1;
}

// ---- tau ----

int run_tau(const Common& common, const std::vector<std::string>& aut_files,
            const std::vector<std::string>& images, int rank) {
  Config cfg = common.load();
  if (rank > 0) cfg.rank = rank;
  std::vector<Automorphism> auts = cfg.auts;
  for (const std::string& f : aut_files) auts.push_back(aut_from_json(load_json(f)));
  if (!images.empty()) auts.push_back(inline_aut(cfg.rank, images));
  if (auts.empty()) {
    ordered_json j{{"command", "tau"}, {"warning", "empty batch: no input automorphisms"}};
    print_report(j);
    return 1;
  }

  TauOptions opt;
  opt.growth.k_max = cfg.k_max;
  opt.growth.length_budget = cfg.length_budget;
  opt.bcc_depth = cfg.bcc_depth;

  struct Item {
    TauEstimate est;
    std::string error;
  };
  std::vector<Item> results(auts.size());
  auto work = [&](size_t i) {
    try {
      results[i].est = tau_estimate(auts[i], opt);
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  };
  if (cfg.threads > 1) {
    std::vector<std::future<void>> fut;
    for (size_t i = 0; i < auts.size(); ++i)
      fut.push_back(std::async(std::launch::async, work, i));
    for (auto& f : fut) f.get();
  } else {
    for (size_t i = 0; i < auts.size(); ++i) work(i);
  }

  // assembly: single-threaded, ordered by input index
  int rc = 0;
  ordered_json items = ordered_json::array();
  for (size_t i = 0; i < auts.size(); ++i) {
    ordered_json ji;
    ji["index"] = i + 1;
    ji["aut"] = aut_to_json(auts[i]);
    if (!results[i].error.empty()) {
      ji["error"] = results[i].error;
      rc = 2;
    } else {
      const TauEstimate& est = results[i].est;
      std::string cert = item_name("tau", i, "json");
      std::string csv = item_name("tau", i, "csv");
      emit(cfg, cert, tau_certificate(auts[i], est));
      fs::create_directories(cfg.out);
      write_text_file((fs::path(cfg.out) / csv).string(), growth_csv(est));
      ji["certificate"] = cert;
      ji["csv"] = csv;
      ordered_json je = tau_to_json(est);
      ji["method"] = je["method"];
      ji["lower"] = je["lower"];
      ji["upper"] = je["upper"];
      if (est.method == TauEstimate::Inconclusive) rc = std::max(rc, 1);
      if (est.upper_computed && est.lower > est.upper + 1e-12) rc = 2;  // bug
    }
    items.push_back(ji);
  }
  ordered_json j{{"command", "tau"}, {"out", cfg.out}, {"items", items}, {"exit", rc}};
  print_report(j);
  return rc;
}

// ---- verify ----

int run_verify(const Common& common, const std::vector<std::string>& certs, int lemma1_c,
               int rank) {
  Config cfg = common.load();
  if (rank > 0) cfg.rank = rank;

  if (!certs.empty()) {
    // re-check emitted certificates; evidence is replayed, searches are not
    int rc = 0;
    ordered_json items = ordered_json::array();
    for (const std::string& f : certs) {
      CertificateCheck chk = recheck_tau_certificate(load_json(f));
      ordered_json ji;
      ji["file"] = f;
      ji["ok"] = chk.ok;
      ji["inconclusive"] = chk.inconclusive;
      ji["checked"] = chk.checked;
      ji["problems"] = chk.problems;
      items.push_back(ji);
      if (!chk.ok) rc = 2;
      else if (chk.inconclusive) rc = std::max(rc, 1);
    }
    ordered_json j{{"command", "verify"}, {"mode", "certificates"}, {"items", items},
                   {"exit", rc}};
    emit(cfg, "verify.json", j);
    print_report(j);
    return rc;
  }

  int depth = cfg.bcc_depth > 0 ? cfg.bcc_depth : (cfg.rank == 2 ? 8 : 6);
  CancellationReport cr = lemma1_constants(cfg.rank, depth);
  int C = lemma1_c >= 0 ? lemma1_c : cr.lemma1_cyclic_constant;

  ordered_json suites = ordered_json::array();
  size_t empty_suites = 0, failed_suites = 0;
  auto add_suite = [&](const std::string& name, size_t checks, size_t violations,
                       ordered_json detail = nullptr) {
    ordered_json js{{"suite", name}, {"checks", checks}, {"violations", violations},
                    {"ok", violations == 0}};
    if (checks == 0 && violations == 0) {
      js["warning"] = "empty suite";
      ++empty_suites;
    }
    if (!detail.is_null()) js["detail"] = detail;
    suites.push_back(js);
    if (violations > 0) ++failed_suites;
  };

  {
    auto v = verify_lemma1(cfg.rank, C, cfg.samples, cfg.maxlen, cfg.seed);
    add_suite("lemma1-sampled", cfg.samples, v.size());
    if (cfg.rank == 2) {
      auto ve = verify_lemma1_exhaustive(cfg.rank, C, 8);
      add_suite("lemma1-exhaustive-len8", 1, ve.size());
    }
  }
  {
    auto v = verify_doubling(cfg.rank, cfg.samples, cfg.maxlen, cfg.seed);
    add_suite("doubling-sampled", cfg.samples, v.size());
    if (cfg.rank == 2) {
      auto ve = verify_doubling_exhaustive(cfg.rank, 8);
      add_suite("doubling-exhaustive-len8", 1, ve.size());
    }
  }
  {
    std::vector<Automorphism> auts = cfg.auts;
    if (auts.empty()) {
      auts.push_back(label_automorphism(GenLabel{GenLabel::Twist, 1, 2}, cfg.rank));
      if (cfg.rank == 2) auts.push_back(inline_aut(2, {"b", "ab"}));
    }
    BallIndex ball = build_ball(cfg.rank, resolved_radius(cfg), cfg.node_budget, cfg.threads);
    for (size_t i = 0; i < auts.size(); ++i) {
      TauOptions opt;
      opt.growth.k_max = cfg.k_max;
      opt.growth.length_budget = cfg.length_budget;
      opt.bcc_depth = cfg.bcc_depth;
      TauEstimate est = tau_estimate(auts[i], opt);
      TauBoundsReport rep = verify_tau_bounds(ball, auts[i], est);
      add_suite("oracle-bounds-" + std::to_string(i + 1), rep.rows.size(),
                rep.violations.size(), tau_bounds_to_json(rep));
    }
  }

  int rc = failed_suites > 0 ? 2 : (empty_suites > 0 ? 1 : 0);
  ordered_json j{{"command", "verify"},
                 {"mode", "suites"},
                 {"rank", cfg.rank},
                 {"cyclic_constant", C},
                 {"constants", cancellation_to_json(cr)},
                 {"suites", suites},
                 {"passed", suites.size() - failed_suites},
                 {"failed", failed_suites},
                 {"exit", rc}};
  if (empty_suites > 0) j["warning"] = "some suites ran zero checks";
  emit(cfg, "verify.json", j);
  print_report(j);
  return rc;
}

// ---- upg ----

int run_upg(const Common& common, const std::string& graph_path, int witness_k, int diff_k) {
  Config cfg = common.load();
  FilteredGraphMap m = load_graph(graph_path);
  ordered_json j{{"command", "upg"}, {"graph", graph_path}};

  ValidationReport vr = validate_upg_rep(m);
  j["validation"] = validation_to_json(vr);
  if (!vr.valid()) {
    j["exit"] = 2;
    emit(cfg, "upg_report.json", j);
    print_report(j);
    return 2;
  }

  int rc = 0;
  try {
    WitnessCertificate wc = find_witness(m, witness_k);
    j["witness"] = witness_to_json(wc, m);
  } catch (const NoWitnessFound& e) {
    j["witness"] = nullptr;
    j["witness_note"] = e.what();
    rc = 1;
  }

  // closed-form transport vs honest iteration for every exceptional family
  ordered_json families = ordered_json::array();
  auto twists = twist_edges(m);
  for (auto it = twists.begin(); it != twists.end(); ++it) {
    for (auto jt = twists.begin(); jt != it; ++jt) {
      if (it->second.loop != jt->second.loop) continue;
      ExceptionalPath e;
      e.i = it->first;
      e.j = jt->first;
      e.power = 1;
      e.nielsen_loop = it->second.loop;
      e.l = it->second.exp;
      e.s = jt->second.exp;
      check_exceptional(m, e);
      ordered_json rows = ordered_json::array();
      bool all_match = true;
      EdgePath iterated = realize(e);
      for (int k = 1; k <= diff_k; ++k) {
        iterated = iterate_path(m, iterated, 1);
        ExceptionalPath ck = exceptional_closed_form(e, k);
        bool match = realize(ck) == iterated;
        all_match &= match;
        rows.push_back(ordered_json{{"k", k}, {"power", ck.power}, {"match", match}});
      }
      ordered_json fam;
      fam["i"] = e.i;
      fam["j"] = e.j;
      fam["l"] = e.l;
      fam["s"] = e.s;
      fam["loop"] = path_to_json(e.nielsen_loop, m);
      fam["match_all"] = all_match;
      fam["rows"] = rows;
      families.push_back(fam);
      if (!all_match) rc = 2;  // closed form disagreeing with iteration is a bug
    }
  }
  j["exceptional_families"] = families;
  j["exit"] = rc;
  emit(cfg, "upg_report.json", j);
  print_report(j);
  return rc;
}

// ---- oracle ----

std::string ball_name(int rank, int radius) {
  return "ball_rank" + std::to_string(rank) + "_r" + std::to_string(radius) + ".jsonl";
}

int run_oracle_build(const Common& common, int rank, int radius) {
  Config cfg = common.load();
  if (rank > 0) cfg.rank = rank;
  if (radius > 0) cfg.oracle_radius = radius;
  int R = resolved_radius(cfg);
  BallIndex b = build_ball(cfg.rank, R, cfg.node_budget, cfg.threads);
  fs::create_directories(cfg.out);
  std::string file = ball_name(b.rank, b.radius);
  save_ball(b, (fs::path(cfg.out) / file).string());
  ordered_json j{{"command", "oracle-build"}, {"rank", b.rank},
                 {"radius", b.radius}, {"requested_radius", b.requested_radius},
                 {"truncated", b.truncated}, {"classes", b.size()},
                 {"layer_sizes", b.layer_sizes}, {"file", file}};
  print_report(j);
  return b.truncated ? 1 : 0;
}

int run_oracle_norm(const Common& common, const std::string& aut_file,
                    const std::string& ball_file) {
  Config cfg = common.load();
  Automorphism a = aut_from_json(load_json(aut_file));
  BallIndex b;
  std::string source;
  if (!ball_file.empty()) {
    b = load_ball(ball_file);
    source = ball_file;
  } else {
    // prefer the largest snapshot already in the output directory
    int best = -1;
    for (int r = 12; r >= 1; --r) {
      fs::path p = fs::path(cfg.out) / ball_name(a.rank, r);
      if (fs::exists(p)) {
        best = r;
        source = p.string();
        break;
      }
    }
    if (best > 0) {
      b = load_ball(source);
    } else {
      cfg.rank = a.rank;
      b = build_ball(a.rank, resolved_radius(cfg), cfg.node_budget, cfg.threads);
      source = "(built in memory)";
    }
  }
  std::optional<int> norm = exact_norm(b, a);
  ordered_json j{{"command", "oracle-norm"}, {"aut", aut_to_json(a)}, {"ball", source},
                 {"radius", b.radius},
                 {"norm", norm ? ordered_json(*norm) : ordered_json(nullptr)}};
  print_report(j);
  return norm ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free-group translation length toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  Common c_word, c_aut, c_bcc, c_tau, c_verify, c_upg, c_obuild, c_onorm;

  auto* sub_word = app.add_subcommand("word", "reduce words, report powers and necklaces");
  std::vector<std::string> word_inputs;
  int word_rank = 0;
  sub_word->add_option("words", word_inputs, "words (a-z letters, A-Z inverses)")->required();
  sub_word->add_option("--rank", word_rank, "ambient rank (default: inferred)");
  c_word.attach(sub_word);
  sub_word->callback([&] { rc = run_word(c_word, word_inputs, word_rank); });

  auto* sub_aut = app.add_subcommand("aut", "canonicalize and decompose automorphisms");
  std::string aut_file;
  std::vector<std::string> aut_images;
  int aut_rank = 0;
  sub_aut->add_option("--aut", aut_file, "automorphism JSON file");
  sub_aut->add_option("images", aut_images, "inline generator images");
  sub_aut->add_option("--rank", aut_rank, "rank for inline images");
  c_aut.attach(sub_aut);
  sub_aut->callback([&] { rc = run_aut(c_aut, aut_file, aut_images, aut_rank); });

  auto* sub_bcc = app.add_subcommand("bcc", "bounded cancellation constants");
  int bcc_rank = 0, bcc_depth = 0, bcc_samples = -1, bcc_maxlen = 0;
  sub_bcc->add_option("--rank", bcc_rank, "free group rank");
  sub_bcc->add_option("--depth", bcc_depth, "search depth L");
  sub_bcc->add_option("--samples", bcc_samples, "certification samples (0: skip)");
  sub_bcc->add_option("--maxlen", bcc_maxlen, "max sampled necklace length");
  c_bcc.attach(sub_bcc);
  sub_bcc->callback([&] { rc = run_bcc(c_bcc, bcc_rank, bcc_depth, bcc_samples, bcc_maxlen); });

  auto* sub_tau = app.add_subcommand("tau", "certified translation length brackets");
  std::vector<std::string> tau_files, tau_images;
  int tau_rank = 0;
  sub_tau->add_option("--aut", tau_files, "automorphism JSON file (repeatable)");
  sub_tau->add_option("images", tau_images, "inline generator images");
  sub_tau->add_option("--rank", tau_rank, "rank for inline images");
  c_tau.attach(sub_tau);
  sub_tau->callback([&] { rc = run_tau(c_tau, tau_files, tau_images, tau_rank); });

  auto* sub_verify = app.add_subcommand("verify", "invariant suites and certificate re-checks");
  std::vector<std::string> verify_certs;
  int verify_c = -1, verify_rank = 0;
  sub_verify->add_option("--cert", verify_certs, "certificate JSON to re-check (repeatable)");
  sub_verify->add_option("--lemma1-c", verify_c, "override the cyclic constant under test");
  sub_verify->add_option("--rank", verify_rank, "free group rank");
  c_verify.attach(sub_verify);
  sub_verify->callback([&] { rc = run_verify(c_verify, verify_certs, verify_c, verify_rank); });

  auto* sub_upg = app.add_subcommand("upg", "filtered graph maps: validate, witness, transport");
  std::string upg_graph;
  int upg_wk = 50, upg_dk = 50;
  sub_upg->add_option("--graph", upg_graph, "graph map JSON fixture")->required();
  sub_upg->add_option("--witness-k", upg_wk, "alpha table length for the witness");
  sub_upg->add_option("--diff-k", upg_dk, "closed-form vs iteration table length");
  c_upg.attach(sub_upg);
  sub_upg->callback([&] { rc = run_upg(c_upg, upg_graph, upg_wk, upg_dk); });

  auto* sub_oracle = app.add_subcommand("oracle", "exact norm balls");
  sub_oracle->require_subcommand(1);
  auto* ob = sub_oracle->add_subcommand("build", "BFS a ball and snapshot it");
  int ob_rank = 0, ob_radius = 0;
  ob->add_option("--rank", ob_rank, "free group rank");
  ob->add_option("--radius", ob_radius, "requested radius");
  c_obuild.attach(ob);
  ob->callback([&] { rc = run_oracle_build(c_obuild, ob_rank, ob_radius); });
  auto* on = sub_oracle->add_subcommand("norm", "exact word norm of an outer class");
  std::string on_aut, on_ball;
  on->add_option("--aut", on_aut, "automorphism JSON file")->required();
  on->add_option("--ball", on_ball, "ball snapshot (default: search --out, else build)");
  c_onorm.attach(on);
  on->callback([&] { rc = run_oracle_norm(c_onorm, on_aut, on_ball); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
