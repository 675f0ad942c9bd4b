#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rms/numeric_oracle.hpp>
#include <rms/planar.hpp>
#include <rms/real_structure.hpp>
#include <rms/tree.hpp>

#include <set>
#include <utility>
#include <vector>

using namespace rms;

namespace {

std::vector<LabelInvolution> involutions(int nlo, int nhi) {
  std::vector<LabelInvolution> out;
  for (int n = nlo; n <= nhi; ++n)
    for (int k = 0; 2 * k <= n; ++k) out.push_back({k, n - 2 * k});
  return out;
}

}  // namespace

TEST_CASE("interval endpoints around the smallest wall") {
  // One conjugate pair, two fixed tails: a circle cut by the single wall
  // {12|34}.  Its four lifts split by the anchor position of the edge flag;
  // the two ends of the one-cell must induce opposite comparison signs.
  SignReport rep = verify_signs({1, 2});
  REQUIRE(rep.walls.size() == 1);
  const WallCheck& w = rep.walls[0];
  REQUIRE(w.lifts.size() == 4);
  std::multiset<std::pair<int, int>> seen;
  for (const LiftCheck& lc : w.lifts) {
    INFO("q=" << lc.q << " s=" << lc.s << " measured=" << lc.measured);
    CHECK(lc.deterministic);
    CHECK(lc.measured == lc.predicted);
    CHECK(lc.pass);
    seen.insert({lc.q, lc.measured});
  }
  const std::multiset<std::pair<int, int>> want = {
      {1, 1}, {1, 1}, {0, 0}, {0, 0}};
  CHECK(seen == want);
  CHECK(w.paired);
  CHECK(w.chart_change == 1);
  CHECK(w.reversal_penalty_sign == 1);
  CHECK_FALSE(w.in_w1);
  CHECK_FALSE(w.orientations_agree);
  CHECK(w.pass);
  CHECK(rep.all_pass);
}

TEST_CASE("wall sign sweep matches the comparison values through six tails") {
  for (const LabelInvolution& sigma : involutions(4, 6)) {
    CAPTURE(sigma.k);
    CAPTURE(sigma.l);
    OracleOptions opt;
    opt.threads = 4;
    SignReport rep = verify_signs(sigma, opt);
    CHECK(rep.lift_checks > 0);
    for (const WallCheck& w : rep.walls) {
      INFO("wall " << w.label << " k=" << sigma.k << " l=" << sigma.l);
      for (const LiftCheck& lc : w.lifts) {
        INFO("lift q=" << lc.q << " r=" << lc.r << " s=" << lc.s
                       << std::string(lc.empty_side ? " empty" : "")
                       << " measured=" << lc.measured
                       << " predicted=" << lc.predicted
                       << " det=" << lc.min_abs_det);
        CHECK(lc.pass);
      }
      INFO("paired=" << w.paired << " chart_change=" << w.chart_change
                     << " penalty=" << w.reversal_penalty_sign
                     << " agree=" << w.orientations_agree
                     << " in_w1=" << w.in_w1);
      CHECK(w.pass);
    }
    CHECK(rep.all_pass);
  }
}

TEST_CASE("induced orientations agree exactly on Stiefel-Whitney walls") {
  // Two adjacent chambers glue into an oriented union exactly when they
  // induce opposite orientations on the shared wall, so agreement marks the
  // walls inside the Stiefel-Whitney cycle.
  SignReport five = verify_signs({0, 5});
  std::set<std::string> agreeing, disagreeing;
  for (const WallCheck& w : five.walls) {
    REQUIRE(w.paired);
    CHECK(w.orientations_agree == w.in_w1);
    const std::string tree = w.label.substr(0, w.label.find('#'));
    (w.orientations_agree ? agreeing : disagreeing).insert(tree);
  }
  // Ten splits, three interval orderings of the five-flag vertex each.
  CHECK(five.walls.size() == 30);
  for (const std::string& tree : agreeing) CHECK(!disagreeing.count(tree));
  const std::set<std::string> expected{"{45|123}", "{15|234}", "{14|235}"};
  CHECK(agreeing == expected);

  SignReport torus = verify_signs({2, 0});
  int paired = 0;
  for (const WallCheck& w : torus.walls)
    if (w.paired) {
      ++paired;
      CHECK(w.orientations_agree == w.in_w1);
      // An orientable space has an empty cycle, so every wall glues.
      CHECK(!w.orientations_agree);
    }
  CHECK(paired == 1);  // {13|24} is the only wall with both vertices real
}

TEST_CASE("reversal chart change matches the dictionary sign") {
  for (const LabelInvolution& sigma : involutions(4, 6)) {
    const Tree tau = corolla(sigma.n());
    const TreeInvolution iota = *sigma_invariance(tau, sigma);
    const int k = sigma.k, l = sigma.l;
    // Free real coordinates reorder and negate; pair blocks negate once
    // each; the pinned-pair charts absorb the rest.
    const int want_exp = l > 0 ? k + (l - 1) * (l - 2) / 2 + l : k;
    const int want = want_exp % 2 ? -1 : 1;
    OracleOptions opt;
    opt.seeds = 3;
    for (const OPlanar& o : enumerate_oplanar(tau, iota)) {
      if (o.vertex_data[0].empty_real) continue;
      CAPTURE(k);
      CAPTURE(l);
      CHECK(reversal_chart_sign(sigma, o, opt) == want);
    }
  }
}

TEST_CASE("reports are reproducible and verdicts survive reseeding") {
  const LabelInvolution sigma{1, 3};
  const SignReport a = verify_signs(sigma);
  const SignReport b = verify_signs(sigma);
  OracleOptions threaded;
  threaded.threads = 3;
  const SignReport c = verify_signs(sigma, threaded);
  OracleOptions reseeded;
  reseeded.base_seed = 0xFEEDFACEu;
  const SignReport d = verify_signs(sigma, reseeded);
  REQUIRE(a.walls.size() == b.walls.size());
  REQUIRE(a.walls.size() == c.walls.size());
  REQUIRE(a.walls.size() == d.walls.size());
  for (size_t i = 0; i < a.walls.size(); ++i) {
    CHECK(a.walls[i].label == b.walls[i].label);
    REQUIRE(a.walls[i].lifts.size() == b.walls[i].lifts.size());
    for (size_t j = 0; j < a.walls[i].lifts.size(); ++j) {
      CHECK(a.walls[i].lifts[j].measured == b.walls[i].lifts[j].measured);
      CHECK(a.walls[i].lifts[j].min_abs_det ==
            b.walls[i].lifts[j].min_abs_det);
      CHECK(a.walls[i].lifts[j].measured == c.walls[i].lifts[j].measured);
      // A different seed moves the sample points but not the signs.
      CHECK(a.walls[i].lifts[j].measured == d.walls[i].lifts[j].measured);
    }
    CHECK(a.walls[i].pass == d.walls[i].pass);
  }
  CHECK(a.all_pass);
  CHECK(d.all_pass);
}
