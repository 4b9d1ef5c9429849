"""Objective-Bayes inference for the multivariate skew-t model.

Thin python layer over the C++ core: densities and special functions are
exposed directly, the samplers return plain dictionaries matching the JSON
reports written by the `skewfit` CLI.
"""

import json as _json

try:
    from skewfit import _core  # installed wheel layout
except ImportError:  # in-tree test layout: the built module sits on sys.path
    import _core

__version__ = _core.__version__

st_logpdf = _core.st_logpdf
sn_logpdf = _core.sn_logpdf
mvt_logpdf = _core.mvt_logpdf
mvn_logpdf = _core.mvn_logpdf
student_t_cdf = _core.student_t_cdf
digamma = _core.digamma
kummer_m = _core.kummer_m
parabolic_cylinder_d = _core.parabolic_cylinder_d
log_kv = _core.log_kv
beta_star = _core.beta_star
simulate = _core.simulate


def fit(y, model="st", particles=4000, iterations=5, seed=1, threads=0,
        nu_grid=()):
    """Fit one nested model by population Monte Carlo; returns the report dict."""
    return _json.loads(
        _core._fit_json(y, model, particles, iterations, seed, threads,
                        list(nu_grid)))


def compare(y, particles=4000, iterations=5, seed=1, threads=0, nu_grid=()):
    """Fit all four nested models and return posterior model probabilities."""
    return _json.loads(
        _core._compare_json(y, particles, iterations, seed, threads,
                            list(nu_grid)))


__all__ = [
    "st_logpdf", "sn_logpdf", "mvt_logpdf", "mvn_logpdf", "student_t_cdf",
    "digamma", "kummer_m", "parabolic_cylinder_d", "log_kv", "beta_star",
    "simulate", "fit", "compare", "__version__",
]
