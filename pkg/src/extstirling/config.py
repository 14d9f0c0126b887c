"""Fixed parameter grids shared by the tests, the CLI defaults and the scripts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _fr(*items: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(s) for s in items)


@dataclass(frozen=True)
class ProbeSets:
    r: tuple[Fraction, ...] = field(default_factory=lambda: _fr("0", "1", "-1", "1/2", "-3/7", "5"))
    # negative lambda is fine for the exact identities
    lam: tuple[Fraction, ...] = field(default_factory=lambda: _fr("1", "2/3", "-1/2", "5/2"))
    x: tuple[Fraction, ...] = field(default_factory=lambda: _fr("0", "1", "-2/5"))


@dataclass(frozen=True)
class PoissonGrid:
    n_max: int = 4
    lambdas: tuple[float, ...] = (1.0, 2.0)
    rs: tuple[float, ...] = (0.0, 0.5, -0.5)
    samples: int = 1_000_000
    seed: int = 42
    threshold: float = 4.0


PROBES = ProbeSets()
POISSON_GRID = PoissonGrid()
