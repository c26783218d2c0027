#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "isolat/harness.hpp"
#include "isolat/lattice_io.hpp"

using namespace isolat;

namespace {

using Mode = BoundCheckReport::Mode;

BoundCheckReport row(double lhs, double rhs, double u, Mode m) { return {"x", "y", lhs, rhs, u, m, Verdict::pass}; }

Campaign tiny() {
  Campaign c = campaign_from_json(Json::parse(R"({
    "corpus": {"fibonacci": [5, 8], "rank1": {"dims": [2, 3], "n": [64], "per_cell": 2},
               "integer": [1, 2], "scaled": [16], "bad": true},
    "bodies_per_dim": 2, "body_dims": [2, 3], "samples": 20000, "budget": 8, "norm_samples": 2000
  })"));
  return c;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Verdicts, Grammar) {
  EXPECT_EQ(decide(row(1, 2, 0, Mode::exact)), Verdict::pass);
  EXPECT_EQ(decide(row(2, 2, 0, Mode::exact)), Verdict::pass);
  EXPECT_EQ(decide(row(2.1, 2, 0, Mode::exact)), Verdict::fail);
  EXPECT_EQ(decide(row(2.1, 2, 0.1, Mode::monte_carlo)), Verdict::pass_with_uncertainty);
  EXPECT_EQ(decide(row(2.31, 2, 0.1, Mode::monte_carlo)), Verdict::fail);
  EXPECT_EQ(decide(row(100, 2, 0, Mode::recorded)), Verdict::recorded);
  EXPECT_EQ(decide(row(1, std::nan(""), 0, Mode::exact)), Verdict::recorded);
  EXPECT_EQ(to_string(Verdict::pass_with_uncertainty), "PASS-with-uncertainty");
}

TEST(Corpus, BuiltinShape) {
  const auto corpus = build_corpus(CorpusSpec{});
  EXPECT_EQ(corpus.size(), 16u + 3 * 4 * 20 + 4 + 1 + 1);
  std::size_t bad = 0;
  std::set<std::string> ids;
  for (const auto& e : corpus) {
    EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    EXPECT_EQ(resolve_lattice(e.id), e.lattice);
    bad += e.id == "rank1:64:1,0";
  }
  EXPECT_EQ(bad, 1u);
  EXPECT_EQ(build_corpus(CorpusSpec{})[40].id, corpus[40].id);
}

TEST(CampaignSpec, RoundTripAndErrors) {
  const Campaign c = tiny();
  const Json j = to_json(c);
  EXPECT_EQ(to_json(campaign_from_json(j)), j);
  EXPECT_FALSE(j.contains("workers"));
  EXPECT_THROW(campaign_from_json(Json::parse(R"({"checks": ["nope"]})")), std::invalid_argument);
  EXPECT_THROW(campaign_from_json(Json::parse(R"({"corpus": 3})")), std::invalid_argument);
  EXPECT_EQ(campaign_from_json(Json::parse(R"({"checks": ["thm2-diagnostic"]})")).checks,
            std::vector<std::string>{"thm2"});
}

TEST(CampaignRun, TablesAndDeterminism) {
  Campaign c = tiny();
  const auto a = run_campaign(c);
  EXPECT_EQ(a.failures, 0u);
  EXPECT_EQ(first_line(a.tables.at("thm1.csv")), "id,d,N,sigma,j_lower,bound,verdict");
  EXPECT_EQ(first_line(a.tables.at("remark.csv")), "d,log_sum,log_lower,log_upper");
  EXPECT_EQ(first_line(a.tables.at("prop1.csv")), "id,gamma,norm,lower_bound,ratio");
  c.workers = 8;
  const auto b = run_campaign(c);
  EXPECT_EQ(a.report.dump(2), b.report.dump(2));
  EXPECT_EQ(a.tables, b.tables);

  const auto dir = std::filesystem::temp_directory_path() / "isolat_harness_test";
  std::filesystem::remove_all(dir);
  const auto files = write_artifacts(a, dir.string());
  EXPECT_EQ(files.size(), 1 + a.tables.size());
  std::ifstream is(dir / "report.json");
  std::stringstream ss;
  ss << is.rdbuf();
  EXPECT_EQ(ss.str(), a.report.dump(2) + "\n");
  std::filesystem::remove_all(dir);
}

TEST(CampaignRun, CorruptionFailsExactlyTheInjectedCheck) {
  for (const std::string check : {"thm1", "lemma3", "remark-lower"}) {
    Campaign c = tiny();
    c.checks = {"thm1", "lemma3", "remark"};
    c.corrupt = Corruption{check, 1e-6};
    const auto r = run_campaign(c);
    EXPECT_GE(r.failures, 1u) << check;
    for (const auto& x : r.rows) {
      if (x.verdict == Verdict::fail) EXPECT_EQ(x.check, check);
    }
  }
}
