// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "isolat/distance.hpp"
#include "isolat/harness.hpp"
#include "isolat/lattice_io.hpp"
#include "isolat/reduction.hpp"
#include "isolat/volume.hpp"
#include "oracles.hpp"

using namespace isolat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t count_fail(const std::vector<BoundCheckReport>& rows, std::initializer_list<std::string_view> checks,
                       std::size_t* total = nullptr) {
  std::size_t fails = 0, n = 0;
  for (const auto& r : rows) {
    for (const auto c : checks) {
      if (r.check == c) {
        ++n;
        fails += r.verdict == Verdict::fail;
      }
    }
  }
  if (total) *total = n;
  return fails;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ---- criterion 1 -----------------------------------------------------------

Outcome spectral_exactness(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  std::vector<CorpusEntry> cases;
  for (const auto& e : corpus) {
    if (e.lattice.dim <= 3 && e.lattice.n_points <= 4096) cases.push_back(e);
  }
  cases.push_back({"rank1:5:1,2", resolve_lattice("rank1:5:1,2")});
  for (const std::int64_t n : {1, 2, 3, 10, 97, 1000, 4096}) {
    cases.push_back({"scaled:" + std::to_string(n) + ":1", scaled_integer_lattice(n, 1)});
  }
  for (const auto& e : cases) {
    const auto r = spectral_test(e.lattice);
    const auto window = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(r.dual_norm_sq))));
    const std::int64_t brute = oracle::min_dual_norm_sq(e.lattice, window);
    std::int64_t own = 0;
    for (const auto v : r.shortest_dual) own += v * v;
    const auto s = oracle::scale(e.lattice);
    const bool member = oracle::dual_member(s, std::vector<std::int64_t>(r.shortest_dual.begin(), r.shortest_dual.end()));
    // σ² · |h|² = 1 exactly, and the double σ is the correctly rounded value.
    o.require(brute == r.dual_norm_sq && own == brute && member, e.id + ": dual norm mismatch");
    o.require(r.sigma == 1.0 / std::sqrt(static_cast<double>(brute)), e.id + ": sigma rounding");
    ++checked;
  }
  o.require(spectral_test(resolve_lattice("rank1:5:1,2")).sigma == 1.0 / std::sqrt(5.0), "rank1(5) sigma");
  for (const std::int64_t n : {1, 16, 4096}) {
    o.require(spectral_test(scaled_integer_lattice(n, 1)).sigma == 1.0 / static_cast<double>(n), "(1/N)Z sigma");
  }
  const double t = seconds_since(t0);
  o.require(t < 120, "runtime over 2 min");
  o.detail = o.ok ? fmt("%.0f lattices, brute-force dual minimum matches, %.1fs", static_cast<double>(checked), t)
                  : o.detail;
  return o;
}

// ---- criterion 2 -----------------------------------------------------------

Outcome discrepancy_bound(const CampaignResult& res) {
  Outcome o;
  std::size_t n = 0;
  o.require(count_fail(res.rows, {"thm1", "thm1-slab"}, &n) == 0, "FAIL verdicts present");
  std::map<std::string, double> j_lower;
  std::size_t slabs = 0;
  for (const auto& r : res.rows) {
    if (r.check == "thm1") {
      j_lower[r.id] = r.lhs;
      o.require(r.lhs <= r.rhs, r.id + ": j_lower above min(1, bound)");
    }
  }
  for (const auto& r : res.rows) {
    if (r.check != "thm1-slab") continue;
    ++slabs;
    o.require(r.lhs > 0 && r.rhs >= r.lhs, r.id + ": slab below 0.2·σ·section");
    o.require(j_lower.at(r.id) >= r.rhs, r.id + ": j_lower below slab value");
  }
  o.require(slabs == j_lower.size() && slabs > 0, "missing slab rows");
  if (o.ok) o.detail = fmt("%.0f lattices, 0 FAIL, slab witness >= 0.2*sigma*section > 0 on all", slabs);
  return o;
}

// ---- criteria 3 and 4 ----------------------------------------------------------

Outcome offset_bounds(const CampaignResult& res, double elapsed) {
  Outcome o;
  std::size_t n2 = 0, n3 = 0;
  o.require(count_fail(res.rows, {"lemma2"}, &n2) == 0, "lemma2 FAIL");
  o.require(count_fail(res.rows, {"lemma3"}, &n3) == 0, "lemma3 FAIL");
  o.require(n2 == 3 * 51 * 3 && n3 == n2, "unexpected row count");
  // Closed forms: the cube's outer shell equals Σ binom(d,j) κ_j ρ^j.
  for (const std::size_t d : {2, 3, 4}) {
    for (const double rho : {0.01, 0.05, 0.1}) {
      const auto v = offset_volume(ConvexBody::unit_cube(d), {rho, OffsetSide::outer});
      const double want = static_cast<double>(oracle::cube_shell(d, rho));
      o.require(v.exact && std::fabs(v.value - want) <= 1e-12, "cube outer shell closed form");
    }
  }
  const double sq = offset_volume(ConvexBody::unit_cube(2), {0.1, OffsetSide::outer}).value;
  o.require(std::fabs(sq - (0.4 + M_PI * 0.01)) <= 1e-12, "d=2 rho=0.1 cube shell");
  const ConvexBody disc(Ball{{0.5, 0.5}, 0.3});
  o.require(std::fabs(offset_volume(disc, {0.1, OffsetSide::outer}).value - M_PI * 0.07) <= 1e-12, "annulus");
  o.require(elapsed < 600, "runtime over 10 min");
  if (o.ok) o.detail = fmt("%.0f body/rho rows, 0 FAIL, cube shell d=2 rho=0.1 = %.12f, %.0fs", n2, sq, elapsed);
  return o;
}

Outcome boundary_bound(const CampaignResult& res) {
  Outcome o;
  std::size_t n = 0;
  o.require(count_fail(res.rows, {"corollary1"}, &n) == 0, "corollary1 FAIL");
  o.require(n == 3 * 51 * 3, "unexpected row count");
  if (o.ok) o.detail = fmt("%.0f rows, 0 FAIL", n);
  return o;
}

// ---- criterion 5 -----------------------------------------------------------

Outcome steiner(const CampaignResult& res) {
  Outcome o;
  std::size_t nm = 0, nd = 0;
  o.require(count_fail(res.rows, {"minkowski"}, &nm) == 0, "Minkowski identity outside 3 SE");
  o.require(count_fail(res.rows, {"lemma1"}, &nd) == 0, "derivative check above 1e-3");
  for (const auto& r : res.rows) {
    if (r.check == "lemma1") o.require(r.lhs <= 1e-3, r.id + ": derivative");
    if (r.check == "minkowski") o.require(r.lhs <= 3 * r.uncertainty, r.id + ": Minkowski");
  }
  o.require(nm > 0 && nd > 0, "no rows");
  if (o.ok) o.detail = fmt("%.0f Minkowski rows within 3 SE, %.0f derivative rows within 1e-3", nm, nd);
  return o;
}

// ---- criterion 6 -----------------------------------------------------------

Outcome ball_sum_sandwich(const CampaignResult& res) {
  Outcome o;
  const auto t0 = Clock::now();
  const double s2 = std::exp(log_binom_kappa_sum(2));
  o.require(std::fabs(s2 - (4 + M_PI)) <= 1e-10, "S(2) != 4 + pi");
  for (const std::size_t d : {10, 100, 1000, 10000, 100000}) {
    // Independent log-sum-exp in long double.
    std::vector<long double> terms;
    long double mx = -1e300L;
    for (std::size_t j = 1; j <= d; ++j) {
      const long double t = std::lgamma(d + 1.0L) - std::lgamma(j + 1.0L) - std::lgamma(d - j + 1.0L) +
                            (j / 2.0L) * std::log(static_cast<long double>(M_PI)) - std::lgamma(1.0L + j / 2.0L);
      terms.push_back(t);
      mx = std::max(mx, t);
    }
    long double acc = 0;
    for (const auto t : terms) acc += std::exp(t - mx);
    const double want = static_cast<double>(mx + std::log(acc));
    const double got = log_binom_kappa_sum(d);
    o.require(std::fabs(got - want) <= 1e-9 * std::max(1.0, std::fabs(want)), "log sum oracle mismatch");
    const double dd = static_cast<double>(d);
    const double lower = 0.3 * std::pow(dd, 2.0 / 3.0 - 0.3) * std::log(dd) - 0.5 * std::log(2 * M_PI) - 1 - std::log(dd);
    o.require(std::fabs(log_remark_lower(d, 0.3) - lower) <= 1e-9 * std::max(1.0, std::fabs(lower)), "lower form");
    o.require(lower <= got, "remark lower bound violated");
    if (d >= 1000) {
      const double cap = 5.1 * std::log(dd * std::sqrt(2 * std::exp(3.0) * M_PI));
      o.require(got / std::pow(dd, 2.0 / 3.0) < cap, "upper sandwich violated for d >= 1000");
    }
  }
  std::size_t n = 0;
  o.require(count_fail(res.rows, {"remark-lower", "remark-upper"}, &n) == 0 && n == 10, "remark rows");
  const double t = seconds_since(t0);
  if (o.ok) o.detail = fmt("S(2)-(4+pi) = %.1e, lower <= sum for all d, upper holds for d >= 1000, %.2fs", s2 - 4 - M_PI, t);
  return o;
}

// ---- criterion 7 -----------------------------------------------------------

Outcome norm_lower_bound(const CampaignResult& res, const std::vector<CorpusEntry>& corpus, double elapsed) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t nv = 0, nr = 0;
  o.require(count_fail(res.rows, {"prop1-volume"}, &nv) == 0, "Vol(A) < 1/2");
  o.require(count_fail(res.rows, {"prop1"}, &nr) == 0, "lower bound above the norm");
  o.require(count_fail(res.rows, {"prop1-slab-bound"}) == 0, "Vol(B_t) bound");
  o.require(nv == corpus.size() && nr == 4 * corpus.size(), "row count");
  for (const std::int64_t n : {1, 2, 3, 4, 16, 64, 4096}) {
    const NearestIndex eq(enumerate_points(scaled_integer_lattice(n, 1)));
    const double nn = static_cast<double>(n);
    o.require(std::fabs(distance_norm(eq, 1.0).value - (nn + 1) / (4 * nn * nn)) <= 1e-10, "1d closed form");
  }
  // Covering radius for the d = 2 corpus against a dense node grid.
  const int g = 1001;
  const double slack = std::sqrt(2.0) / (2.0 * (g - 1));
  double widest = 0;
  std::size_t members = 0;
  for (const auto& e : corpus) {
    if (e.lattice.dim != 2) continue;
    const NearestIndex index(enumerate_points(e.lattice));
    const auto cr = covering_radius(index, 1e-4);
    double grid = 0;
    std::vector<double> x(2);
    for (int i = 0; i < g; ++i) {
      x[0] = i / (g - 1.0);
      for (int j = 0; j < g; ++j) {
        x[1] = j / (g - 1.0);
        grid = std::max(grid, index.distance(x));
      }
    }
    widest = std::max(widest, cr.ub - cr.lb);
    o.require(cr.ub - cr.lb <= 1e-4, e.id + ": covering interval too wide");
    o.require(grid <= cr.ub + 1e-12 && cr.lb <= grid + slack, e.id + ": grid oracle outside interval");
    ++members;
  }
  const double t = elapsed + seconds_since(t0);
  o.require(t < 600, "runtime over 10 min");
  if (o.ok) {
    o.detail = fmt("%.0f lattices, 0 FAIL, %.0f d=2 covering intervals (max width %.1e)", nv, members, widest) +
               fmt(", %.0fs", t);
  }
  return o;
}

// ---- criterion 8 -----------------------------------------------------------

Outcome proxy_windows(const CampaignResult& res) {
  Outcome o;
  std::size_t windows = 0;
  double worst = 0;
  for (const auto& r : res.rows) {
    if (r.check != "thm2-window") continue;
    ++windows;
    worst = std::max(worst, r.lhs);
    o.require(r.lhs <= 10, r.id + ": window ratio above 10");
  }
  o.require(windows == 4, "missing windows");
  // γ and exponent from p and q directly: γ = s·p·q/(p − q) for q < p, else ∞;
  // exponent = s − d·max(0, 1/p − 1/q).
  struct Case {
    std::int64_t s;
    Rational p, q;  // 0 encodes ∞
    std::size_t d;
  };
  const std::vector<Case> cases{{2, 2, 0, 2},  {3, 0, 1, 2},  {2, 2, 1, 2},  {2, 2, 1, 3},
                                {1, 3, 2, 1},  {3, Rational(3, 2), 4, 2}, {5, 4, Rational(5, 4), 3},
                                {2, 7, 7, 2},  {4, 0, 0, 3},  {1, 0, Rational(3, 2), 4}};
  for (const auto& c : cases) {
    const Rational ip = c.p == 0 ? Rational(0) : 1 / c.p;
    const Rational iq = c.q == 0 ? Rational(0) : 1 / c.q;
    const ProxySpec spec = proxy_spec(c.s, ip, iq, c.d);
    const bool q_less_p = c.p == 0 ? c.q != 0 : (c.q != 0 && c.q < c.p);
    std::optional<Rational> gamma;
    if (q_less_p) gamma = c.p == 0 ? Rational(c.s) * c.q : Rational(c.s) * c.p * c.q / (c.p - c.q);
    const Rational diff = ip - iq;
    const Rational exponent = Rational(c.s) - Rational(static_cast<long long>(c.d)) * (diff > 0 ? diff : Rational(0));
    o.require(spec.gamma == gamma && spec.exponent == exponent, "proxy closed form mismatch");
  }
  if (o.ok) o.detail = fmt("4 windows, max/min ratio <= %.3f, %.0f (s,p,q,d) closed forms exact", worst,
                           static_cast<double>(cases.size()));
  return o;
}

// ---- criterion 9 -----------------------------------------------------------

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    std::ifstream is(f.path(), std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    out[f.path().filename().string()] = ss.str();
  }
  return out;
}

Outcome determinism() {
  Outcome o;
  Campaign c = campaign_from_json(Json::parse(R"({
    "corpus": {"fibonacci": [5, 12], "rank1": {"dims": [2, 3, 4], "n": [64, 256], "per_cell": 2},
               "integer": [1, 2, 3], "scaled": [16], "bad": true},
    "bodies_per_dim": 4, "samples": 100000, "budget": 16, "norm_samples": 20000, "seed": 7
  })"));
  const auto base = std::filesystem::temp_directory_path() / "isolat_acceptance_determinism";
  std::filesystem::remove_all(base);
  std::map<std::string, std::string> first;
  for (const unsigned w : {1u, 8u, 1u}) {
    c.workers = w;
    const auto dir = base / ("w" + std::to_string(w));
    std::filesystem::remove_all(dir);
    write_artifacts(run_campaign(c), dir.string());
    const auto files = read_dir(dir);
    if (first.empty()) {
      first = files;
      continue;
    }
    o.require(files == first, "artifacts differ between runs");
  }
  std::filesystem::remove_all(base);
  if (o.ok) o.detail = fmt("%.0f artifacts byte-identical at 1, 8 and 1 workers", static_cast<double>(first.size()));
  return o;
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const auto corpus = build_corpus(CorpusSpec{});

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  std::optional<CampaignResult> full;
  double lattice_time = 0, body_time = 0;
  auto campaign = [&]() -> const CampaignResult& {
    if (!full) {
      // One builtin campaign; each criterion reads its own rows.
      Campaign c;
      c.workers = std::max(1u, std::thread::hardware_concurrency());
      c.checks = {"thm1", "prop1"};
      auto t = Clock::now();
      full = run_campaign(c);
      lattice_time = seconds_since(t);
      c.checks = {"lemma3", "corollary1", "lemma1", "remark", "thm2"};
      t = Clock::now();
      auto more = run_campaign(c);
      body_time = seconds_since(t);
      full->rows.insert(full->rows.end(), more.rows.begin(), more.rows.end());
      full->failures += more.failures;
    }
    return *full;
  };

  criteria.emplace_back("spectral test exactness", [&] { return spectral_exactness(corpus); });
  criteria.emplace_back("isotropic discrepancy bound and slab witness", [&] { return discrepancy_bound(campaign()); });
  criteria.emplace_back("inner/outer offset volume bounds", [&] { return offset_bounds(campaign(), body_time); });
  criteria.emplace_back("boundary neighbourhood volume bound", [&] { return boundary_bound(campaign()); });
  criteria.emplace_back("steiner/minkowski identity and derivative", [&] { return steiner(campaign()); });
  criteria.emplace_back("binomial ball-volume sum sandwich", [&] { return ball_sum_sandwich(campaign()); });
  criteria.emplace_back("distance-norm lower bound from the spectral test", [&] { return norm_lower_bound(campaign(), corpus, lattice_time); });
  criteria.emplace_back("error-proxy scaling windows", [&] { return proxy_windows(campaign()); });
  criteria.emplace_back("determinism across worker counts", [&] { return determinism(); });

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::printf("[%s] criterion %zu: %s -- %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.0fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
