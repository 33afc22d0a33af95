"""Heegner divisors, special-divisor pullbacks and Ceresa/GKS certificates for X_N.

Every operation returns the same document as the matching ``ceresa`` CLI
subcommand with ``--format json``. Exact rationals are strings such as
``"4/3"``; :func:`fraction` turns them into :class:`fractions.Fraction`.
"""

import json
import os
from fractions import Fraction

from . import _core
from ._core import (
    CeresaError,
    CongruenceError,
    DataUnavailable,
    InvalidArgument,
    ParseError,
    ResourceLimit,
    TransientError,
)

__all__ = [
    "CeresaError",
    "CongruenceError",
    "DataUnavailable",
    "InvalidArgument",
    "ParseError",
    "ResourceLimit",
    "TransientError",
    "bound_B",
    "certify",
    "fraction",
    "genus",
    "heegner",
    "hurwitz_class_number",
    "lattice",
    "newforms",
    "pullback",
    "selftest",
]

__version__ = "0.1.0"


# Wheels carry the fixtures next to the module; source builds point the
# extension at the source tree instead.
_PACKAGED_FIXTURES = os.path.join(os.path.dirname(__file__), "data", "newforms")


def _fixtures(fixtures_dir, config):
    if fixtures_dir is not None:
        return str(fixtures_dir)
    if config is None and "CERESA_FIXTURES_DIR" not in os.environ and os.path.isdir(
        _PACKAGED_FIXTURES
    ):
        return _PACKAGED_FIXTURES
    return None


def fraction(text):
    return Fraction(text)


def hurwitz_class_number(n):
    return Fraction(_core.hurwitz_class_number(n))


def bound_B():
    return int(_core.bound_B())


def heegner(N, D, r=None):
    return json.loads(_core.heegner(N, D, r))


def pullback(N, m0, r1):
    return json.loads(_core.pullback(N, str(Fraction(m0)), r1))


def genus(N, curve="xn"):
    return json.loads(_core.genus(N, curve))


def lattice(N):
    return json.loads(_core.lattice(N))


def newforms(M, online=False, config=None, fixtures_dir=None):
    return json.loads(_core.newforms(M, online, config, _fixtures(fixtures_dir, config)))


def certify(N, newforms=True, online=False, config=None, fixtures_dir=None):
    """Certificate for level N (any size; pass big levels as int or str)."""
    return json.loads(_core.certify(str(N), newforms, online, config, _fixtures(fixtures_dir, config)))


def selftest():
    return json.loads(_core.selftest())
