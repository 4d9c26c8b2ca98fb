"""Named bivector fixtures used by the test suite and the command line.

canonical2d   constant symplectic structure on the plane
so3           linear structure whose bracket table is the rotation algebra
nonpoisson4d  constant block plus one linear entry; fails Jacobi

The first two are Poisson; nonpoisson4d is the standard counterexample with
Jacobi defect 1 on the coordinate triple (2, 3, 4).  All three have vanishing
row divergence d_i A^{ij}, which several identities in the test suite rely on.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InputError
from .poisson import Multivector
from .superalg import GradedPoly, coeff_space


@lru_cache(maxsize=None)
def canonical2d() -> Multivector:
    return Multivector(2, 2, {(1, 2): 1})


@lru_cache(maxsize=None)
def so3() -> Multivector:
    x = coeff_space(3)
    return Multivector(3, 2, {
        (1, 2): GradedPoly.generator(x, "x3"),
        (2, 3): GradedPoly.generator(x, "x1"),
        (1, 3): -GradedPoly.generator(x, "x2"),
    })


@lru_cache(maxsize=None)
def nonpoisson4d() -> Multivector:
    x = coeff_space(4)
    return Multivector(4, 2, {
        (1, 2): 1,
        (3, 4): GradedPoly.generator(x, "x1"),
    })


FIXTURE_NAMES = ("canonical2d", "so3", "nonpoisson4d")


def fixture(name: str) -> Multivector:
    builders = {"canonical2d": canonical2d, "so3": so3,
                "nonpoisson4d": nonpoisson4d}
    try:
        return builders[name]()
    except KeyError:
        raise InputError(f"unknown structure {name!r}; available: "
                         + ", ".join(FIXTURE_NAMES)) from None


def all_fixtures() -> dict[str, Multivector]:
    return {name: fixture(name) for name in FIXTURE_NAMES}
