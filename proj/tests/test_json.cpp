#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "tlen/json_io.hpp"
#include "tlen/oracle.hpp"
#include "tlen/translen.hpp"

using namespace tlen;

static Automorphism aut(int rank, const std::vector<std::string>& images) {
  Automorphism a;
  a.rank = rank;
  for (const auto& s : images) a.images.push_back(parse_word(s, rank));
  return a;
}

static FilteredGraphMap graph(std::vector<GraphEdge> edges, int vertices = 1) {
  FilteredGraphMap m;
  for (int v = 0; v < vertices; ++v) m.vertices.push_back(v);
  m.edges = std::move(edges);
  return m;
}

static const Automorphism kTwist = aut(2, {"ab", "b"});
static const Automorphism kFib = aut(2, {"b", "ab"});
static const Automorphism kSwap = aut(2, {"b", "a"});

TEST_CASE("json_number pins 12 significant digits") {
  CHECK(json_number(0.6942419136306174).dump() == "0.694241913631");
  CHECK(json_number(1.0 / 3.0).dump() == "0.333333333333");
  CHECK(json_number(0.25).dump() == "0.25");
  CHECK(json_number(0.0).dump() == "0");
  CHECK(json_number(1e100).dump() == "1e+100");
  CHECK(json_number(std::numeric_limits<double>::infinity()).is_null());
  // same value in, same bytes out
  CHECK(json_number(0.1 + 0.2).dump() == json_number(0.30000000000000004).dump());
}

TEST_CASE("fixture files match the in-code models") {
  auto same = [](const FilteredGraphMap& a, const FilteredGraphMap& b) {
    return graph_to_json(a) == graph_to_json(b);
  };
  FilteredGraphMap dehn = load_graph(std::string(TLEN_FIXTURE_DIR) + "/dehn_twist.json");
  FilteredGraphMap three = load_graph(std::string(TLEN_FIXTURE_DIR) + "/three_stratum.json");
  FilteredGraphMap four = load_graph(std::string(TLEN_FIXTURE_DIR) + "/four_stratum.json");
  CHECK(same(dehn, graph({{"E1", 0, 0, {}}, {"E2", 0, 0, {1}}})));
  CHECK(same(three, graph({{"E1", 0, 0, {}}, {"E2", 0, 0, {1, 1, 1}}, {"E3", 0, 0, {1}}})));
  CHECK(same(four, graph({{"E1", 0, 0, {}},
                          {"E2", 0, 0, {1}},
                          {"E3", 0, 0, {2}},
                          {"E4", 0, 0, {1, 1}}})));
  CHECK(validate_upg_rep(dehn).valid());
  CHECK(validate_upg_rep(three).valid());
  CHECK(validate_upg_rep(four).valid());
}

TEST_CASE("graph round trip keeps reversed suffix entries and vertex images") {
  FilteredGraphMap m = graph({{"E1", 0, 1, {}}, {"E2", 1, 1, {-1, 1}}}, 2);
  m.vertex_image = {0, 1};
  ordered_json j = graph_to_json(m);
  CHECK(j.dump().find("~E1") != std::string::npos);
  FilteredGraphMap back = graph_from_json(j);
  CHECK(graph_to_json(back) == j);
  CHECK(back.edges[1].suffix == EdgePath{-1, 1});
  CHECK(back.vertex_image == std::vector<int>{0, 1});

  // unknown suffix edge
  ordered_json bad = j;
  bad["edges"][1]["suffix"] = {"E9"};
  CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
  // duplicate edge name
  bad = j;
  bad["edges"][1]["name"] = "E1";
  CHECK_THROWS_AS(graph_from_json(bad), std::invalid_argument);
}

TEST_CASE("word and automorphism codecs") {
  CHECK(word_to_json(parse_word("abA", 2)) == ordered_json("abA"));
  CHECK(word_from_json(ordered_json("abA"), 2) == parse_word("abA", 2));
  CHECK(word_from_json(ordered_json("1"), 2).empty());

  // beyond z the text codec runs out of letters; arrays take over
  ReducedWord big = ReducedWord::reduce(
      30, std::vector<Letter>{Letter{27}, Letter{-30}, Letter{1}});
  ordered_json jb = word_to_json(big);
  REQUIRE(jb.is_array());
  CHECK(jb == ordered_json::array({27, -30, 1}));
  CHECK(word_from_json(jb, 30) == big);

  ordered_json ja = aut_to_json(kFib);
  CHECK(ja == ordered_json{{"rank", 2}, {"images", {"b", "ab"}}});
  CHECK(aut_from_json(ja) == kFib);

  CHECK_THROWS_AS(aut_from_json(ordered_json{{"rank", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(aut_from_json(ordered_json{{"rank", 2}, {"images", {"a"}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(word_from_json(ordered_json::array({0}), 2), std::invalid_argument);
  CHECK_THROWS_AS(word_from_json(ordered_json::array({3}), 2), std::invalid_argument);
}

TEST_CASE("generator word codec") {
  GeneratorWord gw{{GenLabel::Twist, 1, 2},
                   {GenLabel::TwistInv, 2, 1},
                   {GenLabel::Perm, 1, 2},
                   {GenLabel::Inv, 2, 0}};
  ordered_json j = genword_to_json(gw);
  CHECK(j[0] == ordered_json{{"op", "twist"}, {"i", 1}, {"j", 2}});
  CHECK(j[3] == ordered_json{{"op", "inv"}, {"i", 2}});
  GeneratorWord back = genword_from_json(j);
  REQUIRE(back.size() == gw.size());
  for (size_t i = 0; i < gw.size(); ++i) CHECK(back[i] == gw[i]);
  CHECK(evaluate(back, 2) == evaluate(gw, 2));

  ordered_json bad = ordered_json::array({ordered_json{{"op", "spin"}, {"i", 1}}});
  CHECK_THROWS_AS(genword_from_json(bad), std::invalid_argument);
}

TEST_CASE("path codec rejects unknown names and bad indices") {
  FilteredGraphMap m = graph({{"E1", 0, 0, {}}, {"E2", 0, 0, {1}}});
  CHECK(path_to_json({2, -1}, m) == ordered_json::array({"E2", "~E1"}));
  CHECK(path_from_json(ordered_json::array({"E2", "~E1"}), m) == EdgePath{2, -1});
  CHECK_THROWS_AS(path_from_json(ordered_json::array({"E3"}), m), std::invalid_argument);
  CHECK_THROWS_AS(path_to_json({3}, m), std::invalid_argument);
}

TEST_CASE("tau certificate replays: polynomial twist") {
  TauEstimate est = tau_estimate(kTwist);
  REQUIRE(est.method == TauEstimate::Case2Upg);
  REQUIRE(est.upper_witness.found);
  ordered_json cert = tau_certificate(kTwist, est);
  CHECK(cert["estimate"]["lower"] == ordered_json(0.25));
  CertificateCheck chk = recheck_tau_certificate(cert);
  CHECK(chk.ok);
  CHECK(!chk.inconclusive);
  CHECK(chk.problems.empty());
  CHECK(chk.checked.size() >= 6);
}

TEST_CASE("tau certificate replays: exponential and finite order") {
  {
    TauEstimate est = tau_estimate(kFib);
    REQUIRE(est.method == TauEstimate::Case1Exponential);
    CertificateCheck chk = recheck_tau_certificate(tau_certificate(kFib, est));
    CHECK(chk.ok);
  }
  {
    TauEstimate est = tau_estimate(kSwap);
    REQUIRE(est.method == TauEstimate::FiniteOrder);
    CertificateCheck chk = recheck_tau_certificate(tau_certificate(kSwap, est));
    CHECK(chk.ok);
  }
  {
    TauEstimate none;  // defaulted: inconclusive, no claims
    CertificateCheck chk = recheck_tau_certificate(tau_certificate(kTwist, none));
    CHECK(chk.ok);
    CHECK(chk.inconclusive);
  }
}

TEST_CASE("tampered certificates fail the recheck") {
  TauEstimate est = tau_estimate(kTwist);
  ordered_json cert = tau_certificate(kTwist, est);

  ordered_json t1 = cert;
  t1["estimate"]["lower"] = 0.9;
  CHECK(!recheck_tau_certificate(t1).ok);

  ordered_json t2 = cert;
  t2["estimate"]["alpha_table"][0] = t2["estimate"]["alpha_table"][0].get<int>() + 1;
  CHECK(!recheck_tau_certificate(t2).ok);

  ordered_json t3 = cert;
  auto& steps = t3["estimate"]["upper_witness"]["steps"];
  steps.push_back(steps[0]);
  CHECK(!recheck_tau_certificate(t3).ok);

  ordered_json t4 = cert;
  t4["estimate"].erase("upper_witness");
  CHECK(!recheck_tau_certificate(t4).ok);

  CHECK(!recheck_tau_certificate(ordered_json{{"format", "something-else"}}).ok);
}

TEST_CASE("growth csv lists probe lengths and the witness table") {
  TauEstimate est = tau_estimate(kTwist);
  std::string csv = growth_csv(est);
  REQUIRE(csv.rfind("k,L_k,alpha_k\n", 0) == 0);
  size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 1 + std::max(est.growth.lengths.size(), est.alpha_table.size()));
  CHECK(csv.find("\n1,") != std::string::npos);
}

TEST_CASE("ball snapshot round trip") {
  BallIndex b = build_ball(2, 3);
  save_ball(b, "ball_roundtrip.jsonl");
  BallIndex back = load_ball("ball_roundtrip.jsonl");
  CHECK(back.rank == b.rank);
  CHECK(back.radius == b.radius);
  CHECK(back.requested_radius == b.requested_radius);
  CHECK(back.truncated == b.truncated);
  CHECK(back.layer_sizes == b.layer_sizes);
  CHECK(back.dist == b.dist);

  // same snapshot twice: byte-identical files
  save_ball(b, "ball_roundtrip2.jsonl");
  CHECK(read_text_file("ball_roundtrip.jsonl") == read_text_file("ball_roundtrip2.jsonl"));

  write_text_file("not_a_ball.jsonl", "{\"format\":\"other\"}\n");
  CHECK_THROWS_AS(load_ball("not_a_ball.jsonl"), Error);
  CHECK_THROWS_AS(load_ball("missing_file.jsonl"), Error);
}
