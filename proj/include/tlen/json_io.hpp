#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tlen/automorphism.hpp"
#include "tlen/cancellation.hpp"
#include "tlen/oracle.hpp"
#include "tlen/translen.hpp"
#include "tlen/upg.hpp"

namespace tlen {

using ordered_json = nlohmann::ordered_json;

// All emitted JSON goes through these two helpers so reports are byte-stable:
// doubles are rounded to 12 significant digits before encoding, and dump()
// fixes indentation.  Same inputs, same bytes.
ordered_json json_number(double x);
std::string json_dump(const ordered_json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
ordered_json load_json(const std::string& path);

// Words: text for rank <= 26 ("abA", "1" for the identity), signed integer
// arrays beyond that.  Readers accept either form at any rank.
ordered_json word_to_json(const ReducedWord& w);
ReducedWord word_from_json(const ordered_json& j, int rank);

// {"rank": 2, "images": ["ab", "b"]}
ordered_json aut_to_json(const Automorphism& a);
Automorphism aut_from_json(const ordered_json& j);

// [{"op": "twist", "i": 1, "j": 2}, ...]; ops: perm, inv, twist, twist_inv
ordered_json genword_to_json(const GeneratorWord& gw);
GeneratorWord genword_from_json(const ordered_json& j);

// {"vertices": [0], "edges": [{"name": "E2", "from": 0, "to": 0,
//  "suffix": ["E1", "E1"]}, ...]}; "~E1" in a path means E1 reversed.
// Optional "vertex_image" array; omitted means the identity.
ordered_json graph_to_json(const FilteredGraphMap& m);
FilteredGraphMap graph_from_json(const ordered_json& j);
FilteredGraphMap load_graph(const std::string& path);

ordered_json path_to_json(const EdgePath& p, const FilteredGraphMap& m);
EdgePath path_from_json(const ordered_json& j, const FilteredGraphMap& m);

// Reports and certificates.
ordered_json growth_to_json(const GrowthClassification& g);
ordered_json cancellation_to_json(const CancellationReport& r);
ordered_json witness_to_json(const WitnessCertificate& w, const FilteredGraphMap& m);
ordered_json splitting_to_json(const Splitting& s, const FilteredGraphMap& m);
ordered_json validation_to_json(const ValidationReport& r);
ordered_json tau_bounds_to_json(const TauBoundsReport& r);
ordered_json tau_to_json(const TauEstimate& t);

// Self-contained translation-length certificate: the automorphism plus the
// estimate, everything needed to re-check the bounds without re-searching.
ordered_json tau_certificate(const Automorphism& O, const TauEstimate& t);

struct CertificateCheck {
  bool ok = true;
  bool inconclusive = false;
  std::vector<std::string> problems;
  std::vector<std::string> checked;  // one line per re-verified claim
};

// Replays the evidence in a tau certificate: witness alpha tables are
// recomputed from the stored necklace, upper-bound generator words are
// re-evaluated and compared against the power chain, spectral constants are
// recomputed from the abelianization.  No search is repeated; stored
// constants (C) are taken as pinned inputs and only their arithmetic is
// checked.
CertificateCheck recheck_tau_certificate(const ordered_json& cert);

// CSV table (k, L_k, alpha_k) from a tau estimate: L_k from the growth probe,
// alpha_k from the witness orbit.  Missing entries are left blank.
std::string growth_csv(const TauEstimate& t);

// Ball snapshots: JSON-lines.  First line is a header with rank, radius and
// the generating-set convention; each following line is one outer class as
// {"d": norm, "images": [...]}.  Lines are sorted by (d, images) so the file
// is schedule-independent.
void save_ball(const BallIndex& b, const std::string& path);
BallIndex load_ball(const std::string& path);

}  // namespace tlen
