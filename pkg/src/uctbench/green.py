"""Restriction, induction and conjugation for representation rings of
cyclic groups, on the level of exact characters.

An element of R(H) for cyclic H of order n is a CycPoly over
Z[1/N][z]/(z^n - 1).  Characters take values in Z[theta_n, 1/N]; the
character map is injective, and its inverse is computed exactly via the
discrete Fourier formula y_e = (1/n) sum_j chi(j) theta^{-e j}, followed by
rationality and denominator checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import zlinalg
from .cyclotomic import (
    CycEltN,
    CycPoly,
    _reduce_mod_phi,
    _strip_supported,
    _tables,
    divisors,
    evaluate_at_root,
    psi,
    totient,
)
from .errors import (
    CharacterSolveError,
    DescentFailure,
    NotADivisor,
    NotAUnit,
)


@dataclass(frozen=True)
class RepElt:
    """Element of the localized representation ring of a cyclic group."""

    value: CycPoly

    @property
    def n(self) -> int:
        return self.value.n

    @property
    def N(self) -> int:
        return self.value.N

    @classmethod
    def zero(cls, n: int, N: int) -> "RepElt":
        return cls(CycPoly.zero(n, N))

    @classmethod
    def one(cls, n: int, N: int) -> "RepElt":
        return cls(CycPoly.one(n, N))

    @classmethod
    def monomial(cls, n: int, N: int, e: int) -> "RepElt":
        return cls(CycPoly.monomial(n, N, e))

    def __add__(self, other: "RepElt") -> "RepElt":
        return RepElt(self.value + other.value)

    def __sub__(self, other: "RepElt") -> "RepElt":
        return RepElt(self.value - other.value)

    def __mul__(self, other):
        if isinstance(other, RepElt):
            return RepElt(self.value * other.value)
        return RepElt(self.value * other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value.is_zero()


@dataclass(frozen=True)
class CharFn:
    """Character of a RepElt: value at h^j in slot j, inside Z[theta_n, 1/N]."""

    n: int
    N: int
    values: tuple[CycEltN, ...]


def to_character(x: RepElt) -> CharFn:
    return CharFn(x.n, x.N, tuple(evaluate_at_root(x.value, j) for j in range(x.n)))


def p_idempotent(n: int, k: int, N: Optional[int] = None) -> RepElt:
    """The projection p_{n,k} (= psi_{n,k} viewed in the representation ring)."""
    return RepElt(psi(n, k, N))


# ---------------------------------------------------------------------------
# moving between cyclotomic rings

_DESCENT_SOLVERS: dict[tuple[int, int], zlinalg.ExactSolver] = {}


def _descent_solver(n: int, k: int) -> zlinalg.ExactSolver:
    key = (n, k)
    got = _DESCENT_SOLVERS.get(key)
    if got is None:
        w = n // k
        powers = _tables(n).powers
        cols = [powers[w * s] for s in range(totient(k))]
        rows = [[col[i] for col in cols] for i in range(totient(n))]
        got = zlinalg.ExactSolver(rows)
        _DESCENT_SOLVERS[key] = got
    return got


def descend(v: CycEltN, k: int) -> CycEltN:
    """Rewrite v in Z[theta_k, 1/N] under theta_k = theta_n^(n/k).

    Raises DescentFailure if v does not lie in the subring.
    """
    n = v.n
    if n % k:
        raise NotADivisor(f"k={k} must divide n={n}")
    if k == n:
        return v
    sol = _descent_solver(n, k).solve(list(v.num))
    if sol is None:
        raise DescentFailure(f"value does not lie in Z[theta_{k}] inside Z[theta_{n}]")
    return CycEltN(k, v.N, sol, v.den)


def include(v: CycEltN, n: int) -> CycEltN:
    """Image of v under Z[theta_k] -> Z[theta_n], theta_k -> theta_n^(n/k)."""
    k = v.n
    if n % k:
        raise NotADivisor(f"{k} must divide {n}")
    if k == n:
        return v
    w = n // k
    acc = [0] * n
    for s, c in enumerate(v.num):
        if c:
            acc[w * s] += c
    return CycEltN(n, v.N, _reduce_mod_phi(n, acc), v.den)


def char_solve(n: int, N: int, values: Sequence[CycEltN]) -> RepElt:
    """The unique RepElt with the given character, by exact inversion of the
    character system (Fourier coefficients with denominator n).

    Raises CharacterSolveError if the values are not the character of an
    element of Z[1/N][z]/(z^n - 1).
    """
    if len(values) != n:
        raise CharacterSolveError(f"need {n} character values, got {len(values)}")
    den = 1
    for v in values:
        if v.n != n or v.N != N:
            raise CharacterSolveError("character values live in the wrong ring")
        den = math.lcm(den, v.den)
    scaled = [
        (tuple(x * (den // v.den) for x in v.num) if not v.is_zero() else None)
        for v in values
    ]
    raw = []
    for e in range(n):
        acc = [0] * n
        for j, vj in enumerate(scaled):
            if vj is None:
                continue
            ej = (e * j) % n
            for s, c in enumerate(vj):
                if c:
                    acc[(s - ej) % n] += c
        reduced = _reduce_mod_phi(n, acc)
        if any(reduced[1:]):
            raise CharacterSolveError(
                f"character system has no solution in the group ring (slot {e})"
            )
        raw.append(reduced[0])
    total_den = n * den
    g = math.gcd(total_den, math.gcd(*raw) if raw else 0)
    if g > 1:
        raw = [x // g for x in raw]
        total_den //= g
    if _strip_supported(total_den, N) != 1:
        raise CharacterSolveError(
            f"solution needs denominator {total_den} outside Z[1/{N}]"
        )
    return RepElt(CycPoly(n, N, tuple(raw), total_den))


# ---------------------------------------------------------------------------
# the Green functor structure maps


def restrict(x: RepElt, k: int) -> RepElt:
    """Restriction to the order-k subgroup: character slots j -> j * n/k,
    descended to Z[theta_k]."""
    n = x.n
    if n % k:
        raise NotADivisor(f"k={k} must divide n={n}")
    w = n // k
    values = [descend(evaluate_at_root(x.value, j * w), k) for j in range(k)]
    return char_solve(k, x.N, values)


def induce(x: RepElt, n: int) -> RepElt:
    """Induction from the order-k subgroup: the character vanishes off the
    subgroup and is multiplied by the index n/k on it."""
    k = x.n
    if n % k:
        raise NotADivisor(f"order {k} must divide {n}")
    w = n // k
    zero = CycEltN.zero(n, x.N)
    values = [zero] * n
    for i in range(k):
        values[w * i] = include(evaluate_at_root(x.value, i), n) * w
    return char_solve(n, x.N, values)


def conjugate_rep(x: RepElt, k: int) -> RepElt:
    """Relabeling z -> z^k for a unit k mod n (the Weyl/Galois action)."""
    if math.gcd(k, x.n) != 1:
        raise NotAUnit(f"k={k} is not a unit mod {x.n}")
    return RepElt(x.value.substitute_power(k))


@dataclass(frozen=True)
class FrobeniusReport:
    """Outcome of checking ind(res(y) * x) = y * ind(x) over monomial bases."""

    n: int
    k: int
    passed: bool
    checked: int
    counterexample: Optional[tuple[int, int]] = None


def frobenius_check(n: int, k: int, N: Optional[int] = None) -> FrobeniusReport:
    """Verify the Frobenius identity for all monomials x = z^a of R(K) and
    y = z^b of R(H), K the order-k subgroup of the cyclic group H of order n."""
    if n % k:
        raise NotADivisor(f"k={k} must divide n={n}")
    if N is None:
        N = n
    ind_cache: dict[tuple, RepElt] = {}

    def cached_induce(u: RepElt) -> RepElt:
        key = (u.value.num, u.value.den)
        got = ind_cache.get(key)
        if got is None:
            got = induce(u, n)
            ind_cache[key] = got
        return got

    monos_k = [RepElt.monomial(k, N, a) for a in range(k)]
    ind_monos = [cached_induce(m) for m in monos_k]
    checked = 0
    for b in range(n):
        y = RepElt.monomial(n, N, b)
        res_y = restrict(y, k)
        for a in range(k):
            lhs = cached_induce(res_y * monos_k[a])
            rhs = y * ind_monos[a]
            checked += 1
            if lhs != rhs:
                return FrobeniusReport(n, k, False, checked, (a, b))
    return FrobeniusReport(n, k, True, checked)


@dataclass(frozen=True)
class GeneratorSummand:
    """One localized summand of C(G/H): the projection p_{n,k} plus whether
    the summand is induced from the proper subgroup of order k."""

    k: int
    idempotent: RepElt
    induced: bool


def decompose_generator(n: int, N: Optional[int] = None) -> list[GeneratorSummand]:
    """The complete orthogonal family {p_{n,k}}_{k | n}; summands with k < n
    are flagged as induced from the order-k subgroup."""
    if N is None:
        N = n
    return [
        GeneratorSummand(k, p_idempotent(n, k, N), induced=k < n)
        for k in divisors(n)
    ]
