"""Difference-free set workbench.

Instances pair an interval [1, N] with a list of generator polynomials; the
forbidden differences are the sumset I(g_1) + ... + I(g_l) of positive image
elements, truncated to [1, N-1].  Verification runs over the forbidden set
with bitset shift-AND; constructions (greedy scan, multiples of a prime,
base-q digit lifts of modular sets) are always re-verified.  Modular
instances search maximum independent sets in the Cayley graph of Z/q with
connection set the k-th power residues (symmetrized).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from .arith import factorize, is_prime
from .auxiliary import image_elements
from .poly import IntPolynomial

FORBIDDEN_LIMIT = 2**28


@dataclass(frozen=True)
class Violation:
    a: int
    a_prime: int
    decomposition: tuple[int, ...]  # one image value per generator, summing to a - a'

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "a_prime": self.a_prime,
            "decomposition": list(self.decomposition),
        }


def _bits_from(members) -> int:
    acc = 0
    for m in members:
        acc |= 1 << m
    return acc


def _lsb_index(m: int) -> int:
    return (m & -m).bit_length() - 1


def forbidden_sumset(generators: Sequence[IntPolynomial], N: int) -> list[int]:
    """I(g_1) + ... + I(g_l) truncated to [1, N-1], as a sorted list."""
    if not generators:
        raise ValueError("at least one generator required")
    acc = {0}
    for g in generators:
        img = image_elements(g, N - 1)
        acc = {a + v for a in acc for v in img if a + v <= N - 1}
        if len(acc) > FORBIDDEN_LIMIT:
            raise MemoryError("forbidden sumset exceeds the memory guard")
        if not acc:
            return []
    return sorted(v for v in acc if v >= 1)


class DiffFreeInstance:
    """A candidate difference-free set A inside [1, N]."""

    def __init__(
        self, N: int, generators: Sequence[IntPolynomial], members
    ):
        self.N = N
        self.generators = tuple(generators)
        self.members = frozenset(int(m) for m in members)
        if self.members and not (1 <= min(self.members) and max(self.members) <= N):
            raise ValueError("members must lie in [1, N]")

    @cached_property
    def bits(self) -> int:
        return _bits_from(self.members)

    @cached_property
    def forbidden(self) -> list[int]:
        return forbidden_sumset(self.generators, self.N)

    @property
    def density(self) -> float:
        return len(self.members) / self.N

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "generators": [list(g.coeffs) for g in self.generators],
            "size": len(self.members),
            "density": self.density,
            "members": sorted(self.members),
        }


def decompose_difference(
    diff: int, generators: Sequence[IntPolynomial], bound: int
) -> Optional[tuple[int, ...]]:
    """Image values (one per generator) summing to diff, or None."""
    images = [image_elements(g, bound) for g in generators]

    def rec(i: int, rem: int) -> Optional[tuple[int, ...]]:
        if i == len(images) - 1:
            return (rem,) if rem in image_sets[i] else None
        for v in images[i]:
            if v >= rem:
                break
            tail = rec(i + 1, rem - v)
            if tail is not None:
                return (v,) + tail
        return None

    image_sets = [set(img) for img in images]
    return rec(0, diff)


def verify(inst: DiffFreeInstance) -> Optional[Violation]:
    """None when no difference of A lies in the forbidden sumset; otherwise a
    witness with its generator decomposition.  Bitset shift-AND over the
    forbidden values."""
    A = inst.bits
    for f in inst.forbidden:
        hit = A & (A >> f)
        if hit:
            a_prime = _lsb_index(hit)
            decomp = decompose_difference(f, inst.generators, inst.N - 1)
            assert decomp is not None
            return Violation(a=a_prime + f, a_prime=a_prime, decomposition=decomp)
    return None


def brute_force_verify(inst: DiffFreeInstance) -> bool:
    """Quadratic double-loop oracle: True when difference-free."""
    members = sorted(inst.members)
    forb = set(inst.forbidden)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if b - a in forb:
                return False
    return True


def greedy(N: int, generators: Sequence[IntPolynomial]) -> DiffFreeInstance:
    """Admit n = 1..N whenever no previously admitted a has n - a forbidden."""
    F = np.array(forbidden_sumset(generators, N), dtype=np.int64)
    blocked = np.zeros(N + 1, dtype=bool)
    admitted = []
    for n in range(1, N + 1):
        if not blocked[n]:
            admitted.append(n)
            if len(F):
                idx = n + F
                blocked[idx[idx <= N]] = True
    return DiffFreeInstance(N, generators, admitted)


def trivial_multiples(N: int, k: int) -> DiffFreeInstance:
    """A = {x p : 1 <= x <= p^(k-1)} for the largest prime
    N^(1/k)/2 <= p <= N^(1/k); difference-free against x^k since every
    difference is a multiple of p smaller than p^k."""
    if N < 2**k:
        raise ValueError("need N >= 2^k")
    hi = int(round(N ** (1.0 / k)))
    while (hi + 1) ** k <= N:
        hi += 1
    while hi**k > N:
        hi -= 1
    lo = -(-hi // 2)  # ceil(N^(1/k) / 2) within integer truncation
    p = next((c for c in range(hi, lo - 1, -1) if is_prime(c)), None)
    assert p is not None, "Bertrand guarantees a prime in [N^(1/k)/2, N^(1/k)]"
    gens = [IntPolynomial([0] * k + [1])]
    inst = DiffFreeInstance(N, gens, [x * p for x in range(1, p ** (k - 1) + 1)])
    assert verify(inst) is None
    return inst


# -- modular search ------------------------------------------------------------


@dataclass
class ModularInstance:
    """Forbidden differences D = nonzero k-th power residues mod q."""

    q: int
    k: int
    D: frozenset[int]
    D_symmetric: bool

    @classmethod
    def build(cls, q: int, k: int) -> "ModularInstance":
        D = frozenset(pow(x, k, q) for x in range(q)) - {0}
        return cls(q=q, k=k, D=D, D_symmetric=frozenset((q - d) % q for d in D) == D)

    @property
    def D_sym(self) -> frozenset[int]:
        return self.D | frozenset((self.q - d) % self.q for d in self.D)


def verify_modular(B, q: int, D) -> bool:
    """True when no two elements of B differ (mod q) by an element of D."""
    elems = sorted(set(b % q for b in B))
    Dset = set(D)
    for i, a in enumerate(elems):
        for b in elems[i + 1 :]:
            if (b - a) % q in Dset or (a - b) % q in Dset:
                return False
    return True


@dataclass
class SearchResult:
    best: tuple[int, ...]
    size: int
    optimal: bool
    nodes: int
    upper_bound: int
    verified: bool


def _greedy_clique_cover_bound(cand: int, adj: list[int]) -> int:
    """Upper bound on the independent set inside cand: greedy clique cover."""
    bound = 0
    rest = cand
    while rest:
        v = _lsb_index(rest)
        clique = 1 << v
        common = adj[v] & rest
        rest &= ~(1 << v)
        while common:
            u = _lsb_index(common)
            clique |= 1 << u
            common &= adj[u] & ~(1 << u)
        rest &= ~clique
        bound += 1
    return bound


def modular_search(
    q: int,
    k: int,
    mode: str = "branch_bound",
    budget: int = 10**9,
    seed: int = 0,
    target: Optional[int] = None,
) -> SearchResult:
    """Maximum independent set in the Cayley graph of (Z/q, symmetrized D).

    mode "exhaustive" (q <= 32) runs branch-and-bound to completion and is
    provably optimal.  mode "branch_bound" warm-starts with seeded greedy
    restarts, then explores within the node budget; it stops early when
    `target` is reached (best-effort semantics) and reports optimal=True only
    if the tree was exhausted.  The returned set is always re-verified.
    """
    if mode == "exhaustive" and q > 32:
        raise ValueError("exhaustive mode requires q <= 32")
    inst = ModularInstance.build(q, k)
    Dsym = set(inst.D) | {(q - d) % q for d in inst.D}
    Dsym.discard(0)
    adj = [0] * q
    for v in range(q):
        for d in Dsym:
            adj[v] |= 1 << ((v + d) % q)
        adj[v] &= ~(1 << v)

    # vertex order: descending forbidden-degree (degree is constant on a
    # Cayley graph; the order is then just vertex index, kept for determinism)
    order = sorted(range(q), key=lambda v: (-bin(adj[v]).count("1"), v))

    best: list[int] = []
    if mode != "exhaustive":
        rng = random.Random(seed)
        for _ in range(3000):
            perm = list(range(q))
            rng.shuffle(perm)
            chosen: list[int] = []
            taken = 0
            banned = 0
            for v in perm:
                b = 1 << v
                if not banned & b:
                    chosen.append(v)
                    taken |= b
                    banned |= b | adj[v]
            if len(chosen) > len(best):
                best = sorted(chosen)
            if target is not None and len(best) >= target:
                break

    nodes = 0
    exhausted = False
    full = (1 << q) - 1
    root_bound = _greedy_clique_cover_bound(full, adj)
    best_bits = _bits_from(best)
    best_size = len(best)
    hit_target = target is not None and best_size >= target

    if not hit_target:
        # iterative DFS over (chosen_size, chosen_bits, candidates)
        stack = [(0, 0, full)]
        recheck = 1 << 14
        exhausted = True
        while stack:
            nodes += 1
            if nodes > budget:
                exhausted = False
                break
            size, chosen, cand = stack.pop()
            if not cand:
                if size > best_size:
                    best_size = size
                    best_bits = chosen
                    if target is not None and best_size >= target:
                        exhausted = False
                        hit_target = True
                        break
                continue
            if size + bin(cand).count("1") <= best_size:
                continue
            if nodes % recheck == 0 and (
                size + _greedy_clique_cover_bound(cand, adj) <= best_size
            ):
                continue
            v = next(u for u in order if cand & (1 << u))
            # exclude branch pushed first so the include branch pops first
            stack.append((size, chosen, cand & ~(1 << v)))
            stack.append((size + 1, chosen | (1 << v), cand & ~(adj[v] | (1 << v))))

    members = tuple(sorted(v for v in range(q) if best_bits & (1 << v)))
    verified = verify_modular(members, q, inst.D)
    assert verified, "search produced an invalid set"
    return SearchResult(
        best=members,
        size=len(members),
        optimal=exhausted,
        nodes=nodes,
        upper_bound=root_bound,
        verified=verified,
    )


@dataclass
class ConstructionRejected:
    """A lifted construction failed its mandatory re-verification."""

    violation: Violation
    q: int
    k: int
    N: int

    def to_json(self) -> dict:
        return {
            "rejected": True,
            "q": self.q,
            "k": self.k,
            "N": self.N,
            "violation": self.violation.to_json(),
        }


def ruzsa_exponent(q: int, B_size: int, k: int) -> float:
    """c = (k - 1 + log|B| / log q) / k."""
    return (k - 1 + math.log(B_size) / math.log(q)) / k


def ruzsa_lift(
    B, q: int, k: int, N: int
) -> Union[DiffFreeInstance, ConstructionRejected]:
    """Base-q digit lift of a k-th-power-difference-free set mod q.

    Digits at positions = 0 mod k are drawn from B, the remaining positions
    range over [0, q).  The construction details are external folklore and
    treated as untrusted: the result is re-verified, and a verification
    failure returns ConstructionRejected with the witness.
    """
    B = sorted(set(int(b) % q for b in B))
    if not B:
        raise ValueError("B must be nonempty")
    for p, e in factorize(q):
        if e > 1:
            raise ValueError("q must be squarefree")
    inst_mod = ModularInstance.build(q, k)
    if not verify_modular(B, q, inst_mod.D):
        raise ValueError("B is not k-th-power-difference-free mod q")

    n_digits = 1
    while q**n_digits <= N:
        n_digits += 1
    members: list[int] = []

    def extend(pos: int, value: int):
        if value > N:
            return
        if pos == n_digits:
            if 1 <= value <= N:
                members.append(value)
            return
        choices = B if pos % k == 0 else range(q)
        base = q**pos
        for d in choices:
            nv = value + d * base
            if nv <= N:
                extend(pos + 1, nv)
            else:
                break

    extend(0, 0)
    gens = [IntPolynomial([0] * k + [1])]
    inst = DiffFreeInstance(N, gens, [m for m in members if m >= 1])
    bad = verify(inst)
    if bad is not None:
        return ConstructionRejected(violation=bad, q=q, k=k, N=N)
    return inst


def exhaustive_max(
    N: int, generators: Sequence[IntPolynomial]
) -> tuple[int, tuple[int, ...]]:
    """Provably optimal maximum difference-free subset of [1, N] (N <= 40)."""
    if N > 40:
        raise ValueError("exact search restricted to N <= 40 (use greedy beyond)")
    F = forbidden_sumset(generators, N)
    adj = [0] * (N + 1)
    for v in range(1, N + 1):
        for f in F:
            if v + f <= N:
                adj[v] |= 1 << (v + f)
            if v - f >= 1:
                adj[v] |= 1 << (v - f)

    best_size = 0
    best_bits = 0
    full = ((1 << (N + 1)) - 1) & ~1  # vertices 1..N

    def rec(chosen_size: int, chosen: int, cand: int):
        nonlocal best_size, best_bits
        if chosen_size + bin(cand).count("1") <= best_size:
            return
        if not cand:
            if chosen_size > best_size:
                best_size = chosen_size
                best_bits = chosen
            return
        v = _lsb_index(cand)
        rec(chosen_size + 1, chosen | (1 << v), cand & ~(adj[v] | (1 << v)))
        rec(chosen_size, chosen, cand & ~(1 << v))

    rec(0, 0, full)
    witness = tuple(v for v in range(1, N + 1) if best_bits & (1 << v))
    return best_size, witness


def density_table(
    N_list: Sequence[int],
    generators: Sequence[IntPolynomial],
    methods: Sequence[str] = ("greedy", "trivial"),
) -> list[dict]:
    """Rows (N, method, size, density, fs_bound_shape, exp_bound_shape).

    The bound shapes are plotted with c = 1 and are reference-only:
    fs = (log N)^(-log log log log N) (blank when the iterated log is
    undefined at desk scale) and exp = exp(-sqrt(log N)) (the two-polynomial
    shape at mu = 1/2).
    """
    is_pure_power = (
        len(generators) == 1
        and generators[0].leading == 1
        and all(c == 0 for c in generators[0].coeffs[:-1])
    )
    rows = []
    for N in N_list:
        shapes = {}
        l1 = math.log(N)
        shapes["exp_bound_shape"] = math.exp(-math.sqrt(l1))
        l4 = l1
        ok = True
        for _ in range(3):
            if l4 <= 0:
                ok = False
                break
            l4 = math.log(l4)
        shapes["fs_bound_shape"] = l1 ** (-l4) if ok else float("nan")
        for method in methods:
            if method == "greedy":
                inst = greedy(N, generators)
            elif method == "trivial":
                if not is_pure_power:
                    continue
                inst = trivial_multiples(N, generators[0].degree)
            else:
                raise ValueError(f"unknown method {method!r}")
            rows.append(
                {
                    "N": N,
                    "method": method,
                    "size": len(inst),
                    "density": inst.density,
                    "fs_bound_shape": shapes["fs_bound_shape"],
                    "exp_bound_shape": shapes["exp_bound_shape"],
                }
            )
    return rows
