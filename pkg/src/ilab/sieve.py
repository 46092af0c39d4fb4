"""The derivative-root sieve.

For a polynomial g and each prime p, gamma(p) is the smallest power such
that g' is not identically zero as a function modulo p^gamma(p), and j(p)
counts the roots of g' at that modulus.  W(Y) keeps the inputs avoiding all
those root classes for p <= Y; W^q(Y) relaxes to the primes whose p^gamma
divides q.  Counting is exact (CRT inclusion-exclusion over root classes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import count_congruent_in_range, crt_pair, primes_up_to
from .padic import roots_mod
from .poly import IntPolynomial

LIST_LIMIT = 10**7


def is_identically_zero_mod(f: IntPolynomial, m: int) -> bool:
    """Whether f(n) = 0 mod m for every integer n.

    By the Newton forward-difference basis, vanishing at n = 0..deg(f)
    forces vanishing everywhere.
    """
    if f.is_zero:
        return True
    return all(f.eval_mod(n, m) == 0 for n in range(f.degree + 1))


def gamma_j(g: IntPolynomial, p: int) -> tuple[int, int, tuple[int, ...]]:
    """(gamma, j, roots): minimal gamma with g' not identically zero mod
    p^gamma, and the roots of g' at that modulus."""
    if g.degree < 2:
        raise ValueError("gamma_j requires degree >= 2")
    dg = g.derivative()
    gamma = 1
    while is_identically_zero_mod(dg, p**gamma):
        gamma += 1
    roots = tuple(roots_mod(dg, p**gamma))
    return gamma, len(roots), roots


@dataclass(frozen=True)
class SieveProfile:
    """Per-prime sieve table for a fixed polynomial and real cutoff Y."""

    g: IntPolynomial
    Y: float
    table: dict[int, tuple[int, int, tuple[int, ...]]]

    @classmethod
    def build(cls, g: IntPolynomial, Y: float) -> "SieveProfile":
        table = {p: gamma_j(g, p) for p in primes_up_to(int(math.floor(Y)))}
        return cls(g=g, Y=Y, table=table)

    @property
    def modulus(self) -> int:
        """The wheel period M = prod p^gamma(p)."""
        out = 1
        for p, (gamma, _, _) in self.table.items():
            out *= p**gamma
        return out

    def density(self) -> Fraction:
        """prod (1 - j(p)/p^gamma(p)), exactly."""
        out = Fraction(1)
        for p, (gamma, j, _) in self.table.items():
            out *= 1 - Fraction(j, p**gamma)
        return out


def w_member(profile: SieveProfile, n: int) -> bool:
    """n in W(Y): g'(n) avoids every tabulated root class."""
    for p, (gamma, _, roots) in profile.table.items():
        if n % p**gamma in roots:
            return False
    return True


def wq_member(profile: SieveProfile, q: int, s: int) -> bool:
    """s in W^q(Y): only the primes with p^gamma(p) | q are tested."""
    for p, (gamma, _, roots) in profile.table.items():
        pg = p**gamma
        if q % pg == 0 and s % pg in roots:
            return False
    return True


def _count_avoiding(items: list[tuple[int, tuple[int, ...]]], X: int) -> int:
    """|{n in [1, X] avoiding every root class}| by CRT inclusion-exclusion."""

    def rec(i: int, a: int, m: int) -> int:
        if i == len(items):
            return count_congruent_in_range(X, a % m, m)
        pg, roots = items[i]
        total = rec(i + 1, a, m)
        for r in roots:
            aa, mm = crt_pair(a, m, r, pg)
            total -= rec(i + 1, aa, mm)
        return total

    return rec(0, 0, 1)


def enumerate_w(
    profile: SieveProfile, X: int, want_list: bool = False
) -> tuple[int, list[int] | None]:
    """Exact |[1, X] cap W(Y)|, optionally with the member list.

    The count is computed by inclusion-exclusion over the per-prime root
    classes (exact integers); the list uses a segmented numpy scan and is
    capped at X <= 1e7.
    """
    if X < 1:
        return 0, ([] if want_list else None)
    items = [
        (p**gamma, roots)
        for p, (gamma, _, roots) in sorted(profile.table.items())
        if roots
    ]
    count = _count_avoiding(items, X)
    members = None
    if want_list:
        if X > LIST_LIMIT:
            raise MemoryError(f"member list capped at X <= {LIST_LIMIT}")
        mask = np.ones(X + 1, dtype=bool)
        mask[0] = False
        for pg, roots in items:
            for r in roots:
                start = r if r >= 1 else pg
                mask[start :: pg] = False
        members = np.nonzero(mask)[0].tolist()
        assert len(members) == count
    return count, members


def sieved_array(profile: SieveProfile, X: int) -> np.ndarray:
    """Boolean membership mask of W(Y) over [0, X] (index = n)."""
    if X > LIST_LIMIT * 10:
        raise MemoryError("membership mask too large")
    mask = np.ones(X + 1, dtype=bool)
    mask[0] = False
    for p, (gamma, _, roots) in profile.table.items():
        pg = p**gamma
        for r in roots:
            start = r if r >= 1 else pg
            mask[start::pg] = False
    return mask


@dataclass
class BrunComparison:
    exact: int
    main: float
    relative_error: float
    in_regime: bool


def brun_compare(profile: SieveProfile, X: int) -> BrunComparison:
    """Exact sieve count against the Brun main term X * prod(1 - j/p^gamma).

    The error constant of the main-term estimate is not explicit, so the
    comparison is reported as data; in_regime flags X >= Y^2.
    """
    exact, _ = enumerate_w(profile, X)
    main = float(X * profile.density())
    rel = abs(exact - main) / X if X > 0 else 0.0
    return BrunComparison(
        exact=exact,
        main=main,
        relative_error=rel,
        in_regime=X >= profile.Y**2,
    )


def product_lower_check(profile: SieveProfile) -> tuple[float, float]:
    """(product, (log Y)^(1-k)): the sieve density against its lower-bound shape.

    Only positivity is asserted by callers; the ratio is monitoring data.
    """
    if profile.Y < 2:
        raise ValueError("Y must be at least 2")
    k = profile.g.degree
    product = float(profile.density())
    floor_value = math.log(profile.Y) ** (1 - k)
    return product, floor_value
