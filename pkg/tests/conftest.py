"""Shared instance builders for the test suite."""

import pytest

from pcpkit import PcpInstance, PolyMap, Polynomial


def poly(arity, terms):
    return Polynomial(arity, terms)


@pytest.fixture
def hyperbola_pair():
    """f = g = (y - 1, xy - 1): unique solution (1, 1), no global bound."""
    y1 = poly(2, {(0, 1): 1.0, (0, 0): -1.0})
    xy1 = poly(2, {(1, 1): 1.0, (0, 0): -1.0})
    f = PolyMap((y1, xy1))
    return PcpInstance(f, f)


@pytest.fixture
def unsolvable_pair():
    """f = g = (x, xy - 1): a P-function pair with no solution."""
    x = poly(2, {(1, 0): 1.0})
    xy1 = poly(2, {(1, 1): 1.0, (0, 0): -1.0})
    f = PolyMap((x, xy1))
    return PcpInstance(f, f)


@pytest.fixture
def affine_shift():
    """f = Id, g = x - 1: unique solution (1, 1), Lipschitz residual."""
    g = PolyMap(
        (
            poly(2, {(1, 0): 1.0, (0, 0): -1.0}),
            poly(2, {(0, 1): 1.0, (0, 0): -1.0}),
        )
    )
    return PcpInstance(PolyMap.identity(2), g)


@pytest.fixture
def identity_pair():
    """f = g = Id: solution {0}, residual exactly ||x||."""
    idm = PolyMap.identity(2)
    return PcpInstance(idm, idm)


@pytest.fixture
def swapped_linear():
    """f = Id, g = (x2 - 1, x1 - 1): leading pair has nonzero solutions."""
    g = PolyMap(
        (
            poly(2, {(0, 1): 1.0, (0, 0): -1.0}),
            poly(2, {(1, 0): 1.0, (0, 0): -1.0}),
        )
    )
    return PcpInstance(PolyMap.identity(2), g)


def scalar_instance(f_terms, g_terms):
    """One-dimensional instance from term dicts keyed by (exponent,)."""
    return PcpInstance(
        PolyMap((poly(1, f_terms),)),
        PolyMap((poly(1, g_terms),)),
    )


@pytest.fixture
def scalar_shift():
    """n = 1: f = x, g = x - 1."""
    return scalar_instance({(1,): 1.0}, {(1,): 1.0, (0,): -1.0})
