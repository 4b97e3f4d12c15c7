"""Reduced GLT toolkit: grid masks, reduced assemblies, spectra and symbol checks.

The heavy lifting lives in the C++ extension ``rglt._core``; this package adds
thin conveniences so configs can be passed as plain dicts.
"""

import json as _json

from ._core import (  # noqa: F401
    ConfigError,
    Domain,
    __version__,
    acs_p,
    boundary_band_count,
    canonical_expr,
    compare_distributions,
    delinearize,
    eigvals_general,
    eigvals_hermitian,
    eval_expr,
    eval_predicate,
    expanded,
    iter_range,
    lex_compare,
    linearize,
    mask,
    measure_estimate,
    near_boundary_points,
    pmea,
    pseudoinverse,
    restricted,
    singvals,
    zero_out,
)
from . import _core


def _as_json(config):
    return config if isinstance(config, str) else _json.dumps(config)


def domain(spec):
    """Domain from a dict or JSON description, e.g. {"kind": "disk", ...}."""
    return _core.domain(_as_json(spec))


def toeplitz(stencil, n):
    """Dense multilevel Toeplitz matrix from an offset->coefficient mapping."""
    return _core.toeplitz(_as_json(stencil), list(n))


def diag_d(expr, n):
    return _core.diag_d(expr, list(n))


def diag_i(expr, n):
    return _core.diag_i(expr, list(n))


def build_glt(expr, n):
    return _core.build_glt(_as_json(expr), list(n))


def glt_symbol_sample(expr, nx, ntheta, mode="real"):
    return _core.glt_symbol_sample(_as_json(expr), nx, ntheta, mode)


def assemble_sw(config, n):
    """Unscaled Shortley-Weller matrix for a shortley-weller run config."""
    return _core.assemble_sw(_as_json(config), list(n))


def assemble_p1(config, n):
    return _core.assemble_p1(_as_json(config), n)


def method_symbol_sample(config, nx, ntheta, mode="real"):
    return _core.method_symbol_sample(_as_json(config), nx, ntheta, mode)


def run_counts(config, out):
    return _core.run_counts(_as_json(config), out)


def run_spectrum(config, out):
    return _core.run_spectrum(_as_json(config), out)


def run_compare(config, out):
    return _core.run_compare(_as_json(config), out)


def run_acs(config_a, config_b, out):
    return _core.run_acs(_as_json(config_a), _as_json(config_b), out)
