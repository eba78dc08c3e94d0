"""Exact eigenvalue and eigenfunction series for an elliptic quantum
many body model on the circle, with an independent numeric solver for
cross checks.  Series results come back as plain dicts of exact
rational strings; see the command line tool for the same operations."""

import json

try:
    from ecsolver._ecsolver import (
        alpha_json,
        eigenvalue_at,
        eigenvalue_json,
        fhat_json,
        jack_json,
        oracle_eigenvalue,
        selftest,
    )
except ImportError:  # build tree layout: extension module on sys.path
    from _ecsolver import (
        alpha_json,
        eigenvalue_at,
        eigenvalue_json,
        fhat_json,
        jack_json,
        oracle_eigenvalue,
        selftest,
    )

__all__ = [
    "alpha",
    "eigenvalue",
    "eigenvalue_at",
    "fhat",
    "jack",
    "oracle_eigenvalue",
    "selftest",
]


def eigenvalue(n, lam="", lq=3, sg=8, algorithm="lagrange", symbolic=False):
    return json.loads(eigenvalue_json(n, lam, lq, sg, algorithm, symbolic))


def alpha(n, lam="", lq=3, sg=8, window=-1, symbolic=False):
    return json.loads(alpha_json(n, lam, lq, sg, window, symbolic))


def jack(n, lam, sg=8, window=-1):
    return json.loads(jack_json(n, lam, sg, window))


def fhat(n, lam, lq=0, pos_cap=-1):
    return json.loads(fhat_json(n, lam, lq, pos_cap))
