import random
from fractions import Fraction

import pytest

from liemd.catalog import build, default_samples, sample_label
from liemd.exact import MatrixQ


@pytest.fixture(scope="session")
def catalog_samples():
    """Every default sample as (label, family id, params, built algebra)."""
    return [(sample_label(fid, p), fid, p, build(fid, p))
            for fid, p in default_samples()]


@pytest.fixture(scope="session")
def catalog_algebras(catalog_samples):
    return [(label, g) for label, _, _, g in catalog_samples]


def random_invertible(rng: random.Random, n: int, span: int = 2) -> MatrixQ:
    while True:
        m = MatrixQ([[rng.randint(-span, span) for _ in range(n)] for _ in range(n)])
        try:
            m.inverse()
            return m
        except ValueError:
            continue


def random_rational(rng: random.Random, num: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))
