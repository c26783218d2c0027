#pragma once

// Verification campaigns: lattice and body corpora, bound checks with a
// fixed verdict grammar, and JSON/CSV artifacts.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isolat/discrepancy.hpp"
#include "isolat/lattice.hpp"
#include "isolat/serialize.hpp"

namespace isolat {

inline constexpr std::uint64_t kCorpusSeed = 20240601;

struct CorpusEntry {
  std::string id;  // a reference accepted by resolve_lattice
  IntegrationLattice lattice;
};

/// Lattice corpus description. The default is the builtin corpus:
/// Fibonacci k = 5..20, 20 random rank-1 generators (1, g_2, ..., g_d) per
/// d ∈ {2,3,4} and N ∈ {64, 256, 1024, 4096}, Z^d for d = 1..4, (1/16)Z and
/// the axis-aligned lattice rank1(64, (1,0)).
struct CorpusSpec {
  int fib_min = 5;
  int fib_max = 20;
  std::vector<std::size_t> rank1_dims{2, 3, 4};
  std::vector<std::int64_t> rank1_n{64, 256, 1024, 4096};
  std::size_t rank1_per_cell = 20;
  std::uint64_t rank1_seed = kCorpusSeed;
  std::vector<std::size_t> integer_dims{1, 2, 3, 4};
  std::vector<std::int64_t> scaled_1d{16};
  bool bad = true;
  std::vector<std::string> refs;  // extra lattice references
};

CorpusSpec corpus_spec_from_json(const Json& j);
Json to_json(const CorpusSpec& c);
std::vector<CorpusEntry> build_corpus(const CorpusSpec& spec);

struct BoundCheckReport {
  enum class Mode { exact, monte_carlo, recorded };

  std::string check;
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;  // NaN when nothing is compared
  double uncertainty = 0.0;
  Mode mode = Mode::exact;
  Verdict verdict = Verdict::pass;
};

/// FAIL iff lhs − 3·uncertainty > rhs. Otherwise PASS for exact comparisons
/// that hold, PASS-with-uncertainty for Monte Carlo ones, RECORDED for
/// comparisons with unknown constants.
Verdict decide(const BoundCheckReport& row);

struct Corruption {
  std::string check;
  double rhs_scale = 1.0;
};

struct Campaign {
  CorpusSpec corpus;
  std::vector<std::string> checks{"thm1", "prop1", "lemma3", "corollary1", "remark", "thm2", "lemma1"};
  std::size_t budget = 64;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1'000'000;
  unsigned workers = 1;
  std::string output_dir;
  std::optional<Corruption> corrupt;
  // Body corpus for the parallel-volume lemmas.
  std::vector<std::size_t> body_dims{2, 3, 4};
  std::size_t bodies_per_dim = 50;
  std::vector<double> rhos{0.01, 0.05, 0.1};
  // Distance norms.
  std::vector<double> gammas{0.5, 1.0, 2.0, kInfinity};
  std::map<std::size_t, std::size_t> grid{{2, 401}, {3, 61}};
  std::map<std::size_t, double> cover_tol{{1, 1e-4}, {2, 1e-4}, {3, 1e-3}, {4, 1e-3}};
  std::uint64_t norm_samples = 100'000;
};

Campaign campaign_from_json(const Json& j);
/// Everything that influences results (no output directory, no workers).
Json to_json(const Campaign& c);

struct CampaignResult {
  std::vector<BoundCheckReport> rows;
  Json report;
  std::map<std::string, std::string> tables;  // file name -> CSV text
  std::size_t failures = 0;
};

CampaignResult run_campaign(const Campaign& c);

/// report.json plus one CSV per table; returns the paths written.
std::vector<std::string> write_artifacts(const CampaignResult& r, const std::string& dir);

/// Stable 64-bit hash (FNV-1a) used to derive per-item seeds.
std::uint64_t stable_hash(std::string_view s);

/// Shortest round-trip decimal form used in CSV tables.
std::string format_double(double v);

}  // namespace isolat
