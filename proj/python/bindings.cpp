// Python bindings. Structured results cross the boundary as JSON text and are
// decoded in isolat/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isolat/distance.hpp"
#include "isolat/harness.hpp"
#include "isolat/lattice_io.hpp"
#include "isolat/reduction.hpp"
#include "isolat/serialize.hpp"
#include "isolat/volume.hpp"

namespace py = pybind11;
using namespace isolat;

namespace {

std::string lattice_json(const std::string& ref) { return Json(resolve_lattice(ref)).dump(); }

std::string spectral_json(const std::string& ref) { return Json(spectral_test(resolve_lattice(ref))).dump(); }

std::vector<std::vector<double>> points(const std::string& ref) {
  const auto ps = enumerate_points(resolve_lattice(ref));
  const auto flat = ps.to_double();
  std::vector<std::vector<double>> out(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) out[i].assign(flat.begin() + i * ps.dim, flat.begin() + (i + 1) * ps.dim);
  return out;
}

std::string isodisc_json(const std::string& ref, std::size_t budget, std::uint64_t seed) {
  SearchConfig cfg;
  cfg.budget = budget;
  cfg.seed = seed;
  py::gil_scoped_release release;
  const auto r = isotropic_lower_bound(enumerate_points(resolve_lattice(ref)), cfg);
  Json j{{"j_lower", r.best.local_value}, {"best", r.best}};
  if (r.best_uncertified) j["best_uncertified"] = *r.best_uncertified;
  return j.dump();
}

std::string distnorm_json(const std::string& ref, const std::vector<double>& gammas, std::size_t resolution,
                          std::uint64_t samples, std::uint64_t seed, double tol) {
  NormConfig cfg;
  cfg.resolution = resolution;
  cfg.force_mc = resolution == 0;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.tol = tol;
  py::gil_scoped_release release;
  const NearestIndex index(enumerate_points(resolve_lattice(ref)));
  Json rows = Json::array();
  for (const auto& r : distance_norms(index, gammas, cfg)) rows.push_back(r);
  return rows.dump();
}

std::string covering_json(const std::string& ref, double tol) {
  py::gil_scoped_release release;
  return Json(covering_radius(NearestIndex(enumerate_points(resolve_lattice(ref))), tol)).dump();
}

std::string volume_json(const std::string& op, const std::string& body, double rho, const std::string& side,
                        std::uint64_t samples, std::uint64_t seed, bool force_mc) {
  const ConvexBody k = body_from_json(Json::parse(body));
  SamplerConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.force_mc = force_mc;
  py::gil_scoped_release release;
  VolumeEstimate v;
  if (op == "steiner") {
    v = steiner_volume(k, rho, cfg);
  } else if (op == "offset") {
    if (side != "outer" && side != "inner") throw std::invalid_argument("side must be 'outer' or 'inner'");
    v = offset_volume(k, {rho, side == "inner" ? OffsetSide::inner : OffsetSide::outer}, cfg);
  } else if (op == "boundary") {
    v = boundary_neighborhood_volume(k, rho, cfg);
  } else {
    throw std::invalid_argument("unknown volume operation: " + op);
  }
  return Json(v).dump();
}

std::string thm1_json(const std::string& ref, std::size_t budget, std::uint64_t seed) {
  SearchConfig cfg;
  cfg.budget = budget;
  cfg.seed = seed;
  py::gil_scoped_release release;
  return Json(verify_thm1(resolve_lattice(ref), cfg)).dump();
}

std::string prop1_json(const std::string& ref, const std::vector<double>& gammas) {
  py::gil_scoped_release release;
  return Json(verify_prop1(resolve_lattice(ref), gammas)).dump();
}

std::string campaign_json(const std::string& spec, unsigned workers, const std::string& out_dir) {
  Campaign c = campaign_from_json(Json::parse(spec));
  c.workers = workers;
  py::gil_scoped_release release;
  const auto r = run_campaign(c);
  if (!out_dir.empty()) write_artifacts(r, out_dir);
  return r.report.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "isolat core bindings";
  m.def("lattice", &lattice_json, py::arg("ref"));
  m.def("spectral_test", &spectral_json, py::arg("ref"));
  m.def("points", &points, py::arg("ref"));
  m.def("isodisc", &isodisc_json, py::arg("ref"), py::arg("budget") = 64, py::arg("seed") = 0);
  m.def("distance_norms", &distnorm_json, py::arg("ref"), py::arg("gammas"), py::arg("resolution") = 401,
        py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("tol") = 1e-4);
  m.def("covering_radius", &covering_json, py::arg("ref"), py::arg("tol") = 1e-4);
  m.def("volume", &volume_json, py::arg("op"), py::arg("body"), py::arg("rho"), py::arg("side") = "outer",
        py::arg("samples") = kDefaultSamples, py::arg("seed") = 0, py::arg("force_mc") = false);
  m.def("kappa", &kappa, py::arg("j"));
  m.def("log_binom_kappa_sum", &log_binom_kappa_sum, py::arg("d"));
  m.def("log_remark_lower", &log_remark_lower, py::arg("d"), py::arg("delta"));
  m.def("log_remark_upper", &log_remark_upper, py::arg("d"), py::arg("kappa"));
  m.def("verify_thm1", &thm1_json, py::arg("ref"), py::arg("budget") = 64, py::arg("seed") = 0);
  m.def("verify_prop1", &prop1_json, py::arg("ref"), py::arg("gammas"));
  m.def("run_campaign", &campaign_json, py::arg("spec"), py::arg("workers") = 1, py::arg("out_dir") = "");
}
