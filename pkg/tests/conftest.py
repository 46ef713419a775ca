"""Shared fixtures: cached ambients and random-object helpers."""

import numpy as np
import pytest

from agcodes.algebra import Ambient
from agcodes.fields import FieldTower
from agcodes.groups import parse_group_spec
from agcodes import codes, operators

_TOWERS = {}
_AMBIENTS = {}


def tower(q, m):
    key = (q, m)
    if key not in _TOWERS:
        _TOWERS[key] = FieldTower(q, m)
    return _TOWERS[key]


def make_ambient(q, m, group_spec):
    key = (q, m, group_spec)
    if key not in _AMBIENTS:
        _AMBIENTS[key] = Ambient(tower(q, m), parse_group_spec(group_spec))
    return _AMBIENTS[key]


# The five ambients used by the bulk property suites: (q, m, group spec).
PROPERTY_AMBIENTS = [
    (2, 1, "cyclic:3"),
    (2, 3, "cyclic:3"),
    (3, 2, "cyclic:2"),
    (2, 2, "cyclic:6"),
    (2, 2, "symmetric:3"),
]


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0DE)


def random_submodule(amb, rng, max_gens=2):
    gens = [amb.random_element(rng) for _ in range(int(rng.integers(1, max_gens + 1)))]
    return codes.span_fg(amb, gens)


def random_ideal(amb, rng):
    return codes.span_ideal(amb, [amb.random_element(rng)])


def random_coefficientwise_operator(amb, rng):
    """Coefficientwise application of a random F-linear map on K; always
    FG-linear."""
    tw = amb.tower
    f_pool = np.asarray(tw.f_elements, dtype=np.int64)
    block = f_pool[rng.integers(0, len(f_pool), (amb.m, amb.m))]
    mat = np.kron(np.eye(amb.n, dtype=np.int64), block)
    return operators.FLinearOperator(amb, mat)


def random_fg_operator(amb, rng):
    """A random FG-linear operator: mixes right multiplications and
    coefficientwise maps."""
    op = operators.rho(amb.random_element(rng))
    if rng.integers(2):
        op = op + random_coefficientwise_operator(amb, rng)
    if rng.integers(2):
        op = op.compose(operators.rho(amb.random_element(rng)))
    return op
