#include "isolat/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "isolat/distance.hpp"
#include "isolat/lattice_io.hpp"
#include "isolat/parallel.hpp"
#include "isolat/reduction.hpp"
#include "isolat/volume.hpp"

namespace isolat {

namespace {

using Mode = BoundCheckReport::Mode;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_cell(const std::string& c) {
  if (c.find_first_of(",\"\n") == std::string::npos) return c;
  std::string q = "\"";
  for (const char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + '"';
}

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += csv_cell(cells[i]);
  }
  return s + '\n';
}

std::string fmt_gamma(double g) { return std::isinf(g) ? "inf" : format_double(g); }

bool wants(const Campaign& c, std::string_view name) {
  return std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
}

Json row_json(const BoundCheckReport& r) {
  return Json{{"check", r.check},
              {"id", r.id},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"uncertainty", r.uncertainty},
              {"verdict", std::string(to_string(r.verdict))}};
}

struct Sink {
  const Campaign& c;
  std::vector<BoundCheckReport> rows;

  void add(std::string check, std::string id, double lhs, double rhs, double u, Mode mode) {
    BoundCheckReport r{std::move(check), std::move(id), lhs, rhs, u, mode, Verdict::pass};
    if (c.corrupt && c.corrupt->check == r.check) r.rhs *= c.corrupt->rhs_scale;
    r.verdict = decide(r);
    rows.push_back(std::move(r));
  }
};

std::uint64_t item_seed(std::uint64_t seed, std::string_view what) { return splitmix64(seed ^ stable_hash(what)); }

std::vector<std::int64_t> int_list(const Json& j) { return j.get<std::vector<std::int64_t>>(); }

// ---- checks -------------------------------------------------------------

void run_thm1(const Campaign& c, const std::vector<CorpusEntry>& corpus, Sink& sink, Json& details,
              std::string& table) {
  std::vector<std::optional<Thm1Report>> out(corpus.size());
  parallel_for(corpus.size(), c.workers, [&](std::size_t i) {
    SearchConfig cfg;
    cfg.budget = c.budget;
    cfg.seed = item_seed(c.seed, "thm1/" + corpus[i].id);
    out[i] = verify_thm1(corpus[i].lattice, cfg);
  });
  table = join({"id", "d", "N", "sigma", "j_lower", "bound", "verdict"});
  Json list = Json::array();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& r = *out[i];
    const auto& lat = corpus[i].lattice;
    sink.add("thm1", corpus[i].id, r.j_lower, std::min(1.0, r.bound), 0.0, Mode::exact);
    const Verdict v = sink.rows.back().verdict;
    sink.add("thm1-slab", corpus[i].id, 0.2 * r.sigma * r.slab_section, r.slab_value, 0.0, Mode::exact);
    Json j = r;
    j["verdict"] = std::string(to_string(v));
    list.push_back(Json{{"id", corpus[i].id}, {"d", lat.dim}, {"N", lat.n_points}, {"report", j}});
    table += join({corpus[i].id, std::to_string(lat.dim), std::to_string(lat.n_points), format_double(r.sigma),
                   format_double(r.j_lower), format_double(r.bound), std::string(to_string(v))});
  }
  details["thm1"] = list;
}

NormConfig norm_config(const Campaign& c, std::size_t d, const std::string& id) {
  NormConfig cfg;
  const auto g = c.grid.find(d);
  cfg.resolution = g != c.grid.end() ? g->second : 0;
  cfg.force_mc = d > 1 && cfg.resolution == 0;
  const auto t = c.cover_tol.find(d);
  cfg.tol = t != c.cover_tol.end() ? t->second : 1e-3;
  cfg.samples = d >= 2 ? c.norm_samples : 0;
  cfg.seed = item_seed(c.seed, "norm/" + id);
  cfg.workers = 1;
  return cfg;
}

void run_prop1(const Campaign& c, const std::vector<CorpusEntry>& corpus, Sink& sink, Json& details,
               std::string& table) {
  std::vector<std::optional<Prop1Report>> out(corpus.size());
  parallel_for(corpus.size(), c.workers, [&](std::size_t i) {
    out[i] = verify_prop1(corpus[i].lattice, c.gammas, norm_config(c, corpus[i].lattice.dim, corpus[i].id));
  });
  table = join({"id", "gamma", "norm", "lower_bound", "ratio"});
  Json list = Json::array();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& r = *out[i];
    const auto& id = corpus[i].id;
    sink.add("prop1-volume", id, 0.5, to_double(r.volume_a), 0.0, Mode::exact);
    sink.add("prop1-slab-bound", id, r.volume_b, r.volume_b_bound, 0.0, Mode::exact);
    for (const auto& row : r.rows) {
      if (row.method == "mc") {
        sink.add("prop1", id + "/gamma=" + fmt_gamma(row.gamma), row.lhs, row.norm, (row.norm_upper - row.norm) / 3,
                 Mode::monte_carlo);
      } else {
        sink.add("prop1", id + "/gamma=" + fmt_gamma(row.gamma), row.lhs, row.norm_lower, 0.0, Mode::exact);
      }
      table += join({id, fmt_gamma(row.gamma), format_double(row.norm), format_double(row.lhs),
                     format_double(row.ratio)});
    }
    sink.add("prop1-upper-ratio", id, r.upper_ratio, kNaN, 0.0, Mode::recorded);
    list.push_back(Json{{"id", id}, {"report", r}});
  }
  details["prop1"] = list;
}

struct OffsetRecord {
  std::size_t d = 0;
  std::string body_id;
  std::string kind;
  double rho = 0.0;
  VolumeEstimate outer;
  VolumeEstimate inner;
};

void run_offsets(const Campaign& c, Sink& sink, Json& details, std::string& table) {
  struct Job {
    std::size_t d;
    std::string id;
    const ConvexBody* body;
    double rho;
  };
  std::vector<std::vector<ConvexBody>> bodies;
  std::vector<std::vector<std::string>> ids;
  for (const std::size_t d : c.body_dims) {
    std::vector<ConvexBody> list{ConvexBody::unit_cube(d)};
    std::vector<std::string> names{"cube" + std::to_string(d)};
    auto random = random_body_corpus(d, c.bodies_per_dim, c.seed);
    for (std::size_t i = 0; i < random.size(); ++i) {
      names.push_back("d" + std::to_string(d) + "-" + std::string(random[i].kind()) + "-" + std::to_string(i));
      list.push_back(std::move(random[i]));
    }
    bodies.push_back(std::move(list));
    ids.push_back(std::move(names));
  }
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < bodies.size(); ++a) {
    for (std::size_t b = 0; b < bodies[a].size(); ++b) {
      for (const double rho : c.rhos) jobs.push_back({c.body_dims[a], ids[a][b], &bodies[a][b], rho});
    }
  }
  std::vector<OffsetRecord> out(jobs.size());
  parallel_for(jobs.size(), c.workers, [&](std::size_t i) {
    const Job& job = jobs[i];
    SamplerConfig cfg;
    cfg.samples = c.samples;
    cfg.seed = item_seed(c.seed, "outer/" + job.id + "/" + format_double(job.rho));
    OffsetRecord rec{job.d, job.id, std::string(job.body->kind()), job.rho, {}, {}};
    rec.outer = offset_volume(*job.body, {job.rho, OffsetSide::outer}, cfg);
    cfg.seed = item_seed(c.seed, "inner/" + job.id + "/" + format_double(job.rho));
    rec.inner = offset_volume(*job.body, {job.rho, OffsetSide::inner}, cfg);
    out[i] = std::move(rec);
  });

  table = join({"d", "body", "kind", "rho", "outer", "outer_se", "inner", "inner_se", "lemma3_rhs", "corollary1_rhs"});
  Json list = Json::array();
  for (const auto& r : out) {
    const auto dd = static_cast<double>(r.d);
    const std::string id = r.body_id + "/rho=" + format_double(r.rho);
    const bool exact = r.outer.exact && r.inner.exact;
    const Mode mode = exact ? Mode::exact : Mode::monte_carlo;
    const double both = std::hypot(r.outer.std_error, r.inner.std_error);
    const double l3 = std::pow(2.0, dd + 3) * r.rho;
    const double c1 = dd * std::pow(2.0, dd + 4) * r.rho;
    if (wants(c, "lemma3")) {
      // Rounding slack for closed forms that hold with equality.
      sink.add("lemma2", id, r.inner.value, r.outer.value + (exact ? 1e-12 : 0.0), both, mode);
      const bool outer_max = r.outer.value >= r.inner.value;
      const auto& mx = outer_max ? r.outer : r.inner;
      sink.add("lemma3", id, mx.value, l3, mx.std_error, mode);
    }
    if (wants(c, "corollary1")) sink.add("corollary1", id, r.outer.value + r.inner.value, c1, both, mode);
    table += join({std::to_string(r.d), r.body_id, r.kind, format_double(r.rho), format_double(r.outer.value),
                   format_double(r.outer.std_error), format_double(r.inner.value), format_double(r.inner.std_error),
                   format_double(l3), format_double(c1)});
    list.push_back(Json{{"body", r.body_id}, {"kind", r.kind}, {"d", r.d}, {"rho", r.rho}, {"outer", r.outer},
                        {"inner", r.inner}});
  }
  details["offsets"] = list;
}

void run_lemma1(const Campaign& c, Sink& sink, Json& details) {
  Json list = Json::array();
  std::vector<std::pair<std::string, ConvexBody>> bodies;
  for (const std::size_t d : {2, 3, 4}) bodies.emplace_back("cube" + std::to_string(d), ConvexBody::unit_cube(d));
  bodies.emplace_back("ball2", ConvexBody(Ball{{0.5, 0.5}, 0.3}));
  bodies.emplace_back("ball3", ConvexBody(Ball{{0.5, 0.5, 0.5}, 0.3}));
  constexpr double h = 1e-3;
  for (const auto& [name, body] : bodies) {
    for (const double rho : {-0.1, 0.1, 0.2}) {
      const DerivativeCheck dc = parallel_volume_derivative_check(body, rho, h);
      const std::string id = name + "/rho=" + format_double(rho);
      sink.add("lemma1", id, std::fabs(dc.finite_difference - dc.analytic), 1e-3, 0.0, Mode::exact);
      list.push_back(Json{{"id", id}, {"finite_difference", dc.finite_difference}, {"analytic", dc.analytic}});
    }
    // Minkowski identity Vol(K_ρ^+) = Vol(K + ρB) − Vol(K) against Monte Carlo.
    for (const double rho : c.rhos) {
      SamplerConfig cfg;
      cfg.samples = c.samples;
      cfg.seed = item_seed(c.seed, "minkowski/" + name + "/" + format_double(rho));
      cfg.force_mc = true;
      const VolumeEstimate mc = offset_volume(body, {rho, OffsetSide::outer}, cfg);
      const double exact = steiner_volume(body, rho).value - *body.exact_volume();
      const std::string id = name + "/rho=" + format_double(rho);
      sink.add("minkowski", id, std::fabs(mc.value - exact), 0.0, mc.std_error, Mode::monte_carlo);
      list.push_back(Json{{"id", id}, {"monte_carlo", mc}, {"steiner_minus_volume", exact}});
    }
  }
  details["lemma1"] = list;
}

void run_remark(Sink& sink, Json& details, std::string& table) {
  constexpr double delta = 0.3;
  constexpr double kap = 5.1;
  table = join({"d", "log_sum", "log_lower", "log_upper"});
  Json list = Json::array();
  for (const std::size_t d : {10, 100, 1000, 10000, 100000}) {
    const double s = log_binom_kappa_sum(d);
    const double lo = log_remark_lower(d, delta);
    const double up = log_remark_upper(d, kap);
    const std::string id = "d=" + std::to_string(d);
    sink.add("remark-lower", id, lo, s, 0.0, Mode::exact);
    sink.add("remark-upper", id, s, up, 0.0, d >= 1000 ? Mode::exact : Mode::recorded);
    table += join({std::to_string(d), format_double(s), format_double(lo), format_double(up)});
    list.push_back(Json{{"d", d}, {"delta", delta}, {"kappa", kap}, {"log_sum", s}, {"log_lower", lo}, {"log_upper", up}});
  }
  details["remark"] = list;
}

void run_thm2(const Campaign& c, Sink& sink, Json& details, std::string& table) {
  struct Triple {
    std::int64_t s;
    Rational inv_p, inv_q;
    std::string label;
  };
  const std::vector<Triple> triples{{2, Rational(1, 2), Rational(0), "2-2-inf"},
                                    {3, Rational(0), Rational(1), "3-inf-1"},
                                    {2, Rational(1, 2), Rational(1), "2-2-1"}};
  std::vector<int> ks;
  for (int k = c.corpus.fib_min; k <= c.corpus.fib_max; ++k) ks.push_back(k);
  struct Item {
    double sigma;
    std::int64_t n;
    std::vector<double> proxies;
  };
  std::vector<Item> items(ks.size());
  parallel_for(ks.size(), c.workers, [&](std::size_t i) {
    const IntegrationLattice lat = fibonacci_lattice(ks[i]);
    const std::string id = "fib:" + std::to_string(ks[i]);
    const NearestIndex index(enumerate_points(lat));
    items[i].sigma = spectral_test(lat).sigma;
    items[i].n = lat.n_points;
    std::vector<double> gammas;
    for (const auto& t : triples) gammas.push_back(proxy_spec(t.s, t.inv_p, t.inv_q, 2).gamma_value());
    const auto norms = distance_norms(index, gammas, norm_config(c, 2, id));
    for (std::size_t j = 0; j < triples.size(); ++j) {
      const ProxySpec spec = proxy_spec(triples[j].s, triples[j].inv_p, triples[j].inv_q, 2);
      items[i].proxies.push_back(std::pow(norms[j].value, to_double(spec.exponent)));
    }
  });
  table = join({"k", "N", "sigma", "sigma_sqrtN", "spq", "gamma", "exponent", "proxy", "scaled_proxy"});
  Json list = Json::array();
  std::vector<double> sigma_window;
  std::vector<std::vector<double>> windows(triples.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto n = static_cast<double>(items[i].n);
    const double sn = items[i].sigma * std::sqrt(n);
    sigma_window.push_back(sn);
    const std::string id = "fib:" + std::to_string(ks[i]);
    sink.add("thm2-sigma", id, sn, kNaN, 0.0, Mode::recorded);
    for (std::size_t j = 0; j < triples.size(); ++j) {
      const ProxySpec spec = proxy_spec(triples[j].s, triples[j].inv_p, triples[j].inv_q, 2);
      const double scaled = items[i].proxies[j] * std::pow(n, to_double(spec.exponent) / 2.0);
      windows[j].push_back(scaled);
      sink.add("thm2-proxy", id + "/spq=" + triples[j].label, scaled, kNaN, 0.0, Mode::recorded);
      table += join({std::to_string(ks[i]), std::to_string(items[i].n), format_double(items[i].sigma),
                     format_double(sn), triples[j].label, fmt_gamma(spec.gamma_value()), to_string(spec.exponent),
                     format_double(items[i].proxies[j]), format_double(scaled)});
    }
  }
  auto spread = [](const std::vector<double>& w) {
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    return *hi / *lo;
  };
  Json wins = Json::array();
  sink.add("thm2-window", "sigma_sqrtN", spread(sigma_window), 10.0, 0.0, Mode::recorded);
  wins.push_back(Json{{"window", "sigma_sqrtN"}, {"values", sigma_window}, {"ratio", spread(sigma_window)}});
  for (std::size_t j = 0; j < triples.size(); ++j) {
    sink.add("thm2-window", "proxy/spq=" + triples[j].label, spread(windows[j]), 10.0, 0.0, Mode::recorded);
    wins.push_back(Json{{"window", "proxy/spq=" + triples[j].label},
                        {"spec", proxy_spec(triples[j].s, triples[j].inv_p, triples[j].inv_q, 2)},
                        {"values", windows[j]},
                        {"ratio", spread(windows[j])}});
  }
  list.push_back(Json{{"windows", wins}});
  details["thm2"] = list;
}

}  // namespace

std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Verdict decide(const BoundCheckReport& row) {
  if (row.mode == Mode::recorded || std::isnan(row.rhs)) return Verdict::recorded;
  if (row.lhs - 3.0 * row.uncertainty > row.rhs) return Verdict::fail;
  if (row.mode == Mode::monte_carlo) return Verdict::pass_with_uncertainty;
  return row.lhs <= row.rhs ? Verdict::pass : Verdict::fail;
}

CorpusSpec corpus_spec_from_json(const Json& j) {
  CorpusSpec c;
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "builtin")) return c;
  if (j.is_array()) {
    c = CorpusSpec{0, -1, {}, {}, 0, kCorpusSeed, {}, {}, false, j.get<std::vector<std::string>>()};
    return c;
  }
  if (!j.is_object()) throw std::invalid_argument("corpus must be \"builtin\", a list of references or an object");
  if (j.contains("fibonacci")) {
    const auto f = int_list(j.at("fibonacci"));
    if (f.size() != 2) throw std::invalid_argument("fibonacci expects [k_min, k_max]");
    c.fib_min = static_cast<int>(f[0]);
    c.fib_max = static_cast<int>(f[1]);
  }
  if (j.contains("rank1")) {
    const auto& r = j.at("rank1");
    c.rank1_dims = r.value("dims", c.rank1_dims);
    c.rank1_n = r.value("n", c.rank1_n);
    c.rank1_per_cell = r.value("per_cell", c.rank1_per_cell);
    c.rank1_seed = r.value("seed", c.rank1_seed);
  }
  c.integer_dims = j.value("integer", c.integer_dims);
  c.scaled_1d = j.value("scaled", c.scaled_1d);
  c.bad = j.value("bad", c.bad);
  c.refs = j.value("refs", c.refs);
  return c;
}

Json to_json(const CorpusSpec& c) {
  return Json{{"fibonacci", {c.fib_min, c.fib_max}},
              {"rank1", {{"dims", c.rank1_dims}, {"n", c.rank1_n}, {"per_cell", c.rank1_per_cell}, {"seed", c.rank1_seed}}},
              {"integer", c.integer_dims},
              {"scaled", c.scaled_1d},
              {"bad", c.bad},
              {"refs", c.refs}};
}

std::vector<CorpusEntry> build_corpus(const CorpusSpec& spec) {
  std::vector<std::string> refs;
  for (int k = spec.fib_min; k <= spec.fib_max; ++k) refs.push_back("fib:" + std::to_string(k));
  for (const std::size_t d : spec.rank1_dims) {
    for (const std::int64_t n : spec.rank1_n) {
      RandomStream rng(spec.rank1_seed, stable_hash("rank1/" + std::to_string(d) + "/" + std::to_string(n)));
      // Distinct generators; redraws are bounded so tiny cells cannot loop.
      std::set<std::string> seen;
      for (std::size_t attempt = 0; seen.size() < spec.rank1_per_cell && attempt < 100 * spec.rank1_per_cell;
           ++attempt) {
        std::string ref = "rank1:" + std::to_string(n) + ":1";
        for (std::size_t k = 1; k < d; ++k) ref += "," + std::to_string(rng.integer(1, n - 1));
        if (seen.insert(ref).second) refs.push_back(ref);
      }
    }
  }
  for (const std::size_t d : spec.integer_dims) refs.push_back("Z:" + std::to_string(d));
  for (const std::int64_t n : spec.scaled_1d) refs.push_back("scaled:" + std::to_string(n) + ":1");
  if (spec.bad) refs.push_back("rank1:64:1,0");
  refs.insert(refs.end(), spec.refs.begin(), spec.refs.end());
  std::vector<CorpusEntry> out;
  for (const auto& r : refs) out.push_back({r, resolve_lattice(r)});
  return out;
}

Campaign campaign_from_json(const Json& j) {
  Campaign c;
  if (j.contains("corpus")) c.corpus = corpus_spec_from_json(j.at("corpus"));
  if (j.contains("checks")) {
    c.checks = j.at("checks").get<std::vector<std::string>>();
    for (auto& name : c.checks) {
      if (name == "thm2-diagnostic") name = "thm2";
      if (name == "lemma2") name = "lemma3";
    }
  }
  static const std::vector<std::string> known{"thm1", "prop1", "lemma3", "corollary1", "remark", "thm2", "lemma1"};
  for (const auto& name : c.checks) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown check: " + name);
    }
  }
  c.budget = j.value("budget", c.budget);
  c.seed = j.value("seed", c.seed);
  c.samples = j.value("samples", c.samples);
  c.workers = j.value("workers", c.workers);
  c.output_dir = j.value("output_dir", c.output_dir);
  if (j.contains("corrupt")) {
    c.corrupt = Corruption{j.at("corrupt").at("check").get<std::string>(), j.at("corrupt").value("rhs_scale", 1e-6)};
  }
  c.body_dims = j.value("body_dims", c.body_dims);
  c.bodies_per_dim = j.value("bodies_per_dim", c.bodies_per_dim);
  c.rhos = j.value("rhos", c.rhos);
  if (j.contains("gammas")) {
    c.gammas.clear();
    for (const auto& g : j.at("gammas")) c.gammas.push_back(gamma_from_json(g));
  }
  if (j.contains("grid")) {
    c.grid.clear();
    for (const auto& [k, v] : j.at("grid").items()) c.grid[std::stoul(k)] = v.get<std::size_t>();
  }
  if (j.contains("cover_tol")) {
    for (const auto& [k, v] : j.at("cover_tol").items()) c.cover_tol[std::stoul(k)] = v.get<double>();
  }
  c.norm_samples = j.value("norm_samples", c.norm_samples);
  if (c.budget == 0) throw std::invalid_argument("budget must be >= 1");
  return c;
}

Json to_json(const Campaign& c) {
  Json gammas = Json::array();
  for (const double g : c.gammas) gammas.push_back(gamma_json(g));
  Json grid = Json::object();
  for (const auto& [d, n] : c.grid) grid[std::to_string(d)] = n;
  Json tol = Json::object();
  for (const auto& [d, t] : c.cover_tol) tol[std::to_string(d)] = t;
  Json j{{"corpus", to_json(c.corpus)},
         {"checks", c.checks},
         {"budget", c.budget},
         {"seed", c.seed},
         {"samples", c.samples},
         {"body_dims", c.body_dims},
         {"bodies_per_dim", c.bodies_per_dim},
         {"rhos", c.rhos},
         {"gammas", gammas},
         {"grid", grid},
         {"cover_tol", tol},
         {"norm_samples", c.norm_samples}};
  if (c.corrupt) j["corrupt"] = Json{{"check", c.corrupt->check}, {"rhs_scale", c.corrupt->rhs_scale}};
  return j;
}

CampaignResult run_campaign(const Campaign& c) {
  Sink sink{c, {}};
  Json details = Json::object();
  CampaignResult res;
  const bool lattice_checks = wants(c, "thm1") || wants(c, "prop1");
  const std::vector<CorpusEntry> corpus = lattice_checks ? build_corpus(c.corpus) : std::vector<CorpusEntry>{};

  if (wants(c, "thm1")) run_thm1(c, corpus, sink, details, res.tables["thm1.csv"]);
  if (wants(c, "prop1")) run_prop1(c, corpus, sink, details, res.tables["prop1.csv"]);
  if (wants(c, "lemma3") || wants(c, "corollary1")) run_offsets(c, sink, details, res.tables["lemma.csv"]);
  if (wants(c, "lemma1")) run_lemma1(c, sink, details);
  if (wants(c, "remark")) run_remark(sink, details, res.tables["remark.csv"]);
  if (wants(c, "thm2")) run_thm2(c, sink, details, res.tables["thm2.csv"]);

  std::map<std::string, std::size_t> counts;
  for (const auto v : {Verdict::pass, Verdict::pass_with_uncertainty, Verdict::fail, Verdict::recorded}) {
    counts[std::string(to_string(v))] = 0;
  }
  std::string checks_csv = join({"check", "id", "lhs", "rhs", "uncertainty", "verdict"});
  Json rows = Json::array();
  for (const auto& r : sink.rows) {
    ++counts[std::string(to_string(r.verdict))];
    rows.push_back(row_json(r));
    checks_csv += join({r.check, r.id, format_double(r.lhs), format_double(r.rhs), format_double(r.uncertainty),
                        std::string(to_string(r.verdict))});
  }
  res.tables["checks.csv"] = checks_csv;
  res.failures = counts["FAIL"];
  Json summary = Json::object();
  summary["rows"] = sink.rows.size();
  for (const auto& [k, v] : counts) summary[k] = v;
  res.report = Json{{"campaign", to_json(c)}, {"summary", summary}, {"rows", rows}, {"details", details}};
  res.rows = std::move(sink.rows);
  return res;
}

std::vector<std::string> write_artifacts(const CampaignResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    const fs::path p = fs::path(dir) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << text;
    if (!os) throw std::runtime_error("write failed: " + p.string());
    written.push_back(p.string());
  };
  put("report.json", r.report.dump(2) + "\n");
  for (const auto& [name, text] : r.tables) put(name, text);
  return written;
}

}  // namespace isolat
