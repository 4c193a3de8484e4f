"""Exact q-series, weight 3/2 Hecke operators and congruence checks for
smallest-parts functions.

Coefficients and exponents come back as ``fractions.Fraction``; series are
``QSeries`` objects backed by the C++ library.
"""

import json as _json

from ._smallparts import (  # noqa: F401
    FormBuilder,
    QSeries,
    SmallpartsError,
    agree,
    delta,
    dilate,
    form_names,
    hecke,
    hecke_combination,
    hurwitz_class_number,
    invert,
    kronecker,
    oracle_count,
    q_derivative,
    reduce_mod,
    rescale_exponents,
    residue_mod,
    restrict_progression,
    statistic,
    sturm_bound,
    suite_claim_ids,
    verify_json,
)


def verify(suite="paper-all", ell=None, m=None, range=None, jobs=1):
    """Run a verification suite; returns the list of report dicts."""
    return _json.loads(verify_json(suite, ell, m, range, jobs, False))


def form(name, q_precision, ell=None, m=None):
    """Build a named form with a fresh builder."""
    return FormBuilder().form(name, q_precision, ell, m)


__all__ = [name for name in dir() if not name.startswith("_")]
