// isolat command line tool.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isolat/distance.hpp"
#include "isolat/harness.hpp"
#include "isolat/lattice_io.hpp"
#include "isolat/reduction.hpp"
#include "isolat/serialize.hpp"
#include "isolat/volume.hpp"

namespace {

using namespace isolat;

struct Globals {
  std::uint64_t seed = 1;
  std::uint64_t samples = kDefaultSamples;
  double tol = 1e-4;
  std::string out;
  std::string format = "json";
  unsigned workers = 1;
};

std::string default_out_dir() {
  const char* env = std::getenv("ISOLAT_OUT_DIR");
  return env && *env ? env : "isolat-out";
}

std::string scalar_cell(const Json& v) {
  if (v.is_string()) {
    const auto t = v.get<std::string>();
    return t.find(',') == std::string::npos ? t : "\"" + t + "\"";
  }
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

// Flat objects become a one-row CSV; arrays of flat objects a table.
std::string json_to_csv(const Json& j) {
  const Json rows = j.is_array() ? j : Json::array({j});
  if (rows.empty()) return "";
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows.front().items()) {
    if (!v.is_structured()) keys.push_back(k);
  }
  std::string s;
  for (std::size_t i = 0; i < keys.size(); ++i) s += (i ? "," : "") + keys[i];
  s += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) s += (i ? "," : "") + (r.contains(keys[i]) ? scalar_cell(r[keys[i]]) : "");
    s += '\n';
  }
  return s;
}

void emit(const Globals& g, const std::string& name, const Json& j, const std::string& csv = {}) {
  const std::string text = g.format == "csv" ? (csv.empty() ? json_to_csv(j) : csv) : j.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(g.out);
  const auto path = std::filesystem::path(g.out) / (name + (g.format == "csv" ? ".csv" : ".json"));
  std::ofstream os(path, std::ios::binary);
  if (!(os << text)) throw std::runtime_error("cannot write " + path.string());
  std::cerr << "wrote " << path.string() << "\n";
}

Json read_json(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return Json::parse(arg);
  std::ifstream is(arg);
  if (!is) throw std::runtime_error("cannot open " + arg);
  return Json::parse(is);
}

double parse_gamma(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  return std::stod(s);
}

int run_campaign_cmd(Campaign c, const Globals& g, bool write, bool override_workers = true) {
  if (override_workers) c.workers = g.workers;
  const CampaignResult r = run_campaign(c);
  if (write) {
    const std::string dir = g.out.empty() ? (c.output_dir.empty() ? default_out_dir() : c.output_dir) : g.out;
    for (const auto& p : write_artifacts(r, dir)) std::cerr << "wrote " << p << "\n";
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& row : r.rows) ++counts[std::string(to_string(row.verdict))];
  for (const auto& [k, v] : counts) std::cout << k << ": " << v << "\n";
  for (const auto& row : r.rows) {
    if (row.verdict == Verdict::fail) {
      std::cout << "FAIL " << row.check << " " << row.id << " lhs=" << format_double(row.lhs)
                << " rhs=" << format_double(row.rhs) << " u=" << format_double(row.uncertainty) << "\n";
    }
  }
  return r.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral test, isotropic discrepancy, distance norms and parallel-body volumes"};
  app.require_subcommand(1);
  Globals g;
  g.out = "";
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--samples", g.samples, "Monte Carlo samples");
  app.add_option("--tol", g.tol, "Covering radius tolerance");
  app.add_option("--out", g.out, "Output directory (default: stdout; campaigns use $ISOLAT_OUT_DIR)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.fallthrough();

  std::string ref;
  int rc = 0;

  auto* gen = app.add_subcommand("gen", "Resolve a lattice reference and print its canonical basis");
  gen->add_option("lattice", ref, "fib:K | rank1:N:g1,g2,... | korobov:N:a:d | scaled:N:d | Z:d | file")->required();
  gen->callback([&] {
    const auto lat = resolve_lattice(ref);
    Json j = lat;
    emit(g, "gen", j);
  });

  auto* spec = app.add_subcommand("spectral", "Spectral test of a lattice");
  spec->add_option("lattice", ref)->required();
  spec->callback([&] {
    const auto lat = resolve_lattice(ref);
    Json j{{"lattice", ref}, {"d", lat.dim}, {"N", lat.n_points}, {"report", spectral_test(lat)}};
    if (g.format == "csv") {
      const auto r = spectral_test(lat);
      j = Json{{"lattice", ref}, {"d", lat.dim}, {"N", lat.n_points}, {"sigma", r.sigma},
               {"dual_norm_sq", r.dual_norm_sq}, {"diam_cell", r.diam_cell}};
    }
    emit(g, "spectral", j);
  });

  bool exact_points = false;
  auto* pts = app.add_subcommand("points", "Write the lattice points as CSV");
  pts->add_option("lattice", ref)->required();
  pts->add_flag("--exact", exact_points, "Rational p/q cells");
  pts->callback([&] {
    std::ostringstream os;
    write_points_csv(os, enumerate_points(resolve_lattice(ref)), {exact_points, 17});
    Globals csv = g;
    csv.format = "csv";
    emit(csv, "points", Json(), os.str());
  });

  std::size_t budget = 64;
  auto* iso = app.add_subcommand("isodisc", "Isotropic discrepancy lower bound");
  iso->add_option("lattice", ref)->required();
  iso->add_option("--budget", budget, "Random half-space candidates")->capture_default_str();
  iso->callback([&] {
    const auto lat = resolve_lattice(ref);
    SearchConfig cfg;
    cfg.budget = budget;
    cfg.seed = g.seed;
    cfg.workers = g.workers;
    const auto res = isotropic_lower_bound(enumerate_points(lat), cfg);
    Json j{{"lattice", ref}, {"j_lower", res.best.local_value}, {"best", res.best}};
    if (res.best_uncertified) j["best_uncertified"] = *res.best_uncertified;
    Json all = Json::array();
    for (const auto& w : res.witnesses) all.push_back(w);
    j["witnesses"] = all;
    emit(g, "isodisc", g.format == "csv" ? all : j);
  });

  std::vector<std::string> gammas{"0.5", "1", "2", "inf"};
  std::size_t resolution = 401;
  bool torus = false;
  auto* dn = app.add_subcommand("distnorm", "L_gamma norms of the distance function to the points");
  dn->add_option("lattice", ref)->required();
  dn->add_option("--gamma", gammas, "Exponents (inf allowed)")->capture_default_str();
  dn->add_option("--resolution", resolution, "Grid points per axis for d <= 3 (0 forces Monte Carlo)")
      ->capture_default_str();
  dn->add_flag("--torus", torus, "Periodic metric (diagnostics only)");
  dn->callback([&] {
    const auto lat = resolve_lattice(ref);
    const NearestIndex index(enumerate_points(lat), torus);
    NormConfig cfg;
    cfg.resolution = resolution;
    cfg.force_mc = resolution == 0;
    cfg.samples = std::min<std::uint64_t>(g.samples, kDefaultSamples);
    cfg.seed = g.seed;
    cfg.workers = g.workers;
    cfg.tol = g.tol;
    std::vector<double> gs;
    for (const auto& s : gammas) gs.push_back(parse_gamma(s));
    Json rows = Json::array();
    for (const auto& r : distance_norms(index, gs, cfg)) rows.push_back(r);
    emit(g, "distnorm", g.format == "csv" ? rows : Json{{"lattice", ref}, {"norms", rows}});
  });

  auto* geom = app.add_subcommand("geom", "Parallel-body volumes of a convex body");
  geom->require_subcommand(1);
  std::string body_arg;
  std::size_t cube_dim = 0;
  double rho = 0.1;
  std::string side = "outer";
  bool force_mc = false;
  auto body = [&] {
    if (cube_dim > 0) return ConvexBody::unit_cube(cube_dim);
    if (body_arg.empty()) throw CLI::ValidationError("--body or --cube is required");
    return body_from_json(read_json(body_arg));
  };
  auto sampler = [&] {
    SamplerConfig cfg;
    cfg.samples = g.samples;
    cfg.seed = g.seed;
    cfg.workers = g.workers;
    cfg.force_mc = force_mc;
    return cfg;
  };
  for (const char* name : {"steiner", "offset", "boundary"}) {
    auto* sub = geom->add_subcommand(name);
    sub->add_option("--body", body_arg, "Body JSON (inline or file)");
    sub->add_option("--cube", cube_dim, "Use [0,1]^d");
    sub->add_option("--rho", rho, "Offset radius")->capture_default_str();
    sub->add_flag("--mc", force_mc, "Skip closed forms");
    if (std::string(name) == "offset") {
      sub->add_option("--side", side)->check(CLI::IsMember({"outer", "inner"}))->capture_default_str();
    }
    sub->callback([&, name = std::string(name)] {
      const ConvexBody k = body();
      VolumeEstimate v;
      if (name == "steiner") v = steiner_volume(k, rho, sampler());
      if (name == "offset") v = offset_volume(k, {rho, side == "inner" ? OffsetSide::inner : OffsetSide::outer}, sampler());
      if (name == "boundary") v = boundary_neighborhood_volume(k, rho, sampler());
      Json j{{"operation", name}, {"rho", rho}, {"body", k}, {"estimate", v}};
      if (name == "offset") j["side"] = side;
      if (g.format == "csv") {
        j = Json{{"operation", name}, {"rho", rho}, {"value", v.value}, {"std_error", v.std_error},
                 {"n_samples", v.n_samples}, {"exact", v.exact}};
      }
      emit(g, "geom-" + name, j);
    });
  }

  auto* bounds = app.add_subcommand("bounds", "Closed-form bound evaluations");
  bounds->require_subcommand(1);
  std::vector<std::size_t> dims{10, 100, 1000, 10000, 100000};
  double delta = 0.3;
  double kappa_exp = 5.1;
  auto* remark = bounds->add_subcommand("remark", "log sum binom(d,j) kappa_j against the sandwich");
  remark->add_option("--d", dims)->capture_default_str();
  remark->add_option("--delta", delta)->capture_default_str();
  remark->add_option("--kappa", kappa_exp)->capture_default_str();
  remark->callback([&] {
    Json rows = Json::array();
    for (const std::size_t d : dims) {
      rows.push_back(Json{{"d", d},
                          {"log_sum", log_binom_kappa_sum(d)},
                          {"log_lower", log_remark_lower(d, delta)},
                          {"log_upper", log_remark_upper(d, kappa_exp)}});
    }
    emit(g, "remark", g.format == "csv" ? rows : Json{{"delta", delta}, {"kappa", kappa_exp}, {"rows", rows}});
  });

  auto* verify = app.add_subcommand("verify", "Run one check group over the builtin corpus (or the given lattices)");
  verify->require_subcommand(1);
  std::vector<std::string> verify_refs;
  bool quick = false;
  for (const char* name : {"thm1", "prop1", "lemma3", "corollary1", "all"}) {
    auto* sub = verify->add_subcommand(name);
    sub->add_option("lattices", verify_refs, "Lattice references replacing the builtin corpus");
    sub->add_option("--budget", budget)->capture_default_str();
    sub->add_flag("--quick", quick, "5 bodies per dimension instead of 50");
    sub->callback([&, name = std::string(name)] {
      Campaign c;
      if (name != "all") c.checks = {name};
      if (!verify_refs.empty()) c.corpus = corpus_spec_from_json(Json(verify_refs));
      c.seed = g.seed;
      c.samples = g.samples;
      c.budget = budget;
      if (quick) c.bodies_per_dim = 5;
      rc = run_campaign_cmd(c, g, !g.out.empty() || std::getenv("ISOLAT_OUT_DIR"));
    });
  }

  auto* camp = app.add_subcommand("campaign", "Verification campaigns");
  camp->require_subcommand(1);
  std::string spec_path;
  auto* run = camp->add_subcommand("run", "Run a campaign spec and write report.json plus CSV tables");
  run->add_option("spec", spec_path, "Campaign JSON")->required()->check(CLI::ExistingFile);
  run->callback([&] { rc = run_campaign_cmd(campaign_from_json(read_json(spec_path)), g, true, app.count("--workers") > 0); });

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
