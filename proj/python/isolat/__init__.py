"""Spectral test, isotropic discrepancy, distance norms and parallel-body volumes."""

import json
import math

from . import _core

__all__ = [
    "lattice",
    "spectral_test",
    "points",
    "isodisc",
    "distance_norms",
    "covering_radius",
    "steiner_volume",
    "offset_volume",
    "boundary_volume",
    "kappa",
    "log_binom_kappa_sum",
    "log_remark_lower",
    "log_remark_upper",
    "verify_thm1",
    "verify_prop1",
    "run_campaign",
]


def _gammas(gammas):
    return [math.inf if g in ("inf", math.inf) else float(g) for g in gammas]


def _body(body):
    return body if isinstance(body, str) else json.dumps(body)


def lattice(ref):
    """Canonical basis of a lattice reference such as "fib:10" or "rank1:5:1,2"."""
    return json.loads(_core.lattice(ref))


def spectral_test(ref):
    return json.loads(_core.spectral_test(ref))


def points(ref):
    return _core.points(ref)


def isodisc(ref, budget=64, seed=0):
    return json.loads(_core.isodisc(ref, budget, seed))


def distance_norms(ref, gammas=(0.5, 1, 2, "inf"), resolution=401, samples=100_000, seed=0, tol=1e-4):
    return json.loads(_core.distance_norms(ref, _gammas(gammas), resolution, samples, seed, tol))


def covering_radius(ref, tol=1e-4):
    return json.loads(_core.covering_radius(ref, tol))


def steiner_volume(body, rho, samples=1_000_000, seed=0, force_mc=False):
    return json.loads(_core.volume("steiner", _body(body), rho, "outer", samples, seed, force_mc))


def offset_volume(body, rho, side="outer", samples=1_000_000, seed=0, force_mc=False):
    return json.loads(_core.volume("offset", _body(body), rho, side, samples, seed, force_mc))


def boundary_volume(body, rho, samples=1_000_000, seed=0, force_mc=False):
    return json.loads(_core.volume("boundary", _body(body), rho, "outer", samples, seed, force_mc))


kappa = _core.kappa
log_binom_kappa_sum = _core.log_binom_kappa_sum
log_remark_lower = _core.log_remark_lower
log_remark_upper = _core.log_remark_upper


def verify_thm1(ref, budget=64, seed=0):
    return json.loads(_core.verify_thm1(ref, budget, seed))


def verify_prop1(ref, gammas=(0.5, 1, 2, "inf")):
    return json.loads(_core.verify_prop1(ref, _gammas(gammas)))


def run_campaign(spec, workers=1, out_dir=""):
    """Run a campaign given as a dict or JSON text; returns the report."""
    text = spec if isinstance(spec, str) else json.dumps(spec)
    return json.loads(_core.run_campaign(text, workers, out_dir))
