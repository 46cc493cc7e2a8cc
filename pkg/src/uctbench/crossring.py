"""Crossed products Z[theta_n, 1/N] x| W for Weyl groups of cyclic subgroup
classes: exact element arithmetic, the integral regular representation, and
the commutative splittings that exist after inverting the group order.

Only the abelian trivial-action splittings are implemented (single-summand
rings, group rings of abelian Weyl groups at n = 1, and +-1-character
splittings for elementary abelian 2-groups); everything else is kept as an
honest unsplit crossed product and handled through its regular
representation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Optional

from .cyclotomic import (
    CycEltN,
    _reduce_mod_phi,
    _tables,
    galois,
    prime_factors,
    totient,
)
from .errors import InsufficientInversion, RingMismatch
from .groups import CyclicClass, FiniteGroup, cyclic_classes
from .zlinalg import IntMatrix


def _radical(N: int) -> int:
    out = 1
    for p in prime_factors(N):
        out *= p
    return out


def _ring_name(d: int, N: int) -> str:
    """Display name of Z[theta_d, 1/N]; the localization shows its radical."""
    rad = _radical(N)
    base = "Z" if rad == 1 else f"Z[1/{rad}]"
    if totient(d) == 1:
        return base
    return f"Z[theta_{d}]" if rad == 1 else f"Z[theta_{d},1/{rad}]"


@dataclass(frozen=True)
class CrossedRing:
    """Presentation of Z[theta_n, 1/N] x| W: the Weyl group is given by its
    coset multiplication table and its action on (Z/n)^x."""

    n: int
    N: int
    weyl_table: tuple[tuple[int, ...], ...]
    weyl_units: tuple[int, ...]

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_units)

    @property
    def rank(self) -> int:
        return totient(self.n) * self.weyl_order

    def weyl_inverse(self, w: int) -> int:
        return next(v for v in range(self.weyl_order) if self.weyl_table[w][v] == 0)

    def describe(self) -> str:
        theta = _ring_name(self.n, self.N)
        if self.weyl_order == 1:
            return theta
        return f"{theta} x| W({self.weyl_order})"


def build_crossed_ring(C: CyclicClass, N: int) -> CrossedRing:
    """The endomorphism ring presentation attached to a cyclic class.

    Requires every prime of |G| to divide N, since the construction lives in
    the localization at the group order.
    """
    order = C.group_order()
    for p in prime_factors(order):
        if N % p:
            raise InsufficientInversion(
                f"prime {p} of the group order {order} does not divide N={N}"
            )
    return CrossedRing(C.n, N, C.weyl_table, C.weyl_units)


@dataclass(frozen=True)
class CrossedElt:
    """Element sum_w a_w * w with a_w in Z[theta_n, 1/N]."""

    ring: CrossedRing
    coeffs: tuple[CycEltN, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ring.weyl_order:
            raise ValueError("one coefficient per Weyl coset required")
        for c in self.coeffs:
            if c.n != self.ring.n or c.N != self.ring.N:
                raise RingMismatch("coefficient lives in the wrong cyclotomic ring")

    @classmethod
    def zero(cls, ring: CrossedRing) -> "CrossedElt":
        z = CycEltN.zero(ring.n, ring.N)
        return cls(ring, (z,) * ring.weyl_order)

    @classmethod
    def one(cls, ring: CrossedRing) -> "CrossedElt":
        coeffs = [CycEltN.zero(ring.n, ring.N)] * ring.weyl_order
        coeffs[0] = CycEltN.one(ring.n, ring.N)
        return cls(ring, tuple(coeffs))

    @classmethod
    def from_parts(cls, ring: CrossedRing, parts: dict[int, CycEltN]) -> "CrossedElt":
        coeffs = [CycEltN.zero(ring.n, ring.N)] * ring.weyl_order
        for w, c in parts.items():
            coeffs[w] = c
        return cls(ring, tuple(coeffs))

    def _check_ring(self, other: "CrossedElt") -> None:
        if self.ring != other.ring:
            raise RingMismatch("elements of different crossed rings")

    def __add__(self, other: "CrossedElt") -> "CrossedElt":
        self._check_ring(other)
        return CrossedElt(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CrossedElt") -> "CrossedElt":
        self._check_ring(other)
        return CrossedElt(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, int):
            return CrossedElt(self.ring, tuple(c * other for c in self.coeffs))
        self._check_ring(other)
        ring = self.ring
        out = [CycEltN.zero(ring.n, ring.N)] * ring.weyl_order
        for w, aw in enumerate(self.coeffs):
            if aw.is_zero():
                continue
            u = ring.weyl_units[w]
            for v, bv in enumerate(other.coeffs):
                if bv.is_zero():
                    continue
                t = ring.weyl_table[w][v]
                out[t] = out[t] + aw * galois(bv, u)
        return CrossedElt(ring, tuple(out))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


def crossed_mul(a: CrossedElt, b: CrossedElt) -> CrossedElt:
    return a * b


# ---------------------------------------------------------------------------
# regular representation


@dataclass(frozen=True)
class RegularRep:
    """Left multiplication matrices on the basis theta^i * w (w-major order):
    one matrix for the ring generator z and one per Weyl coset."""

    ring: CrossedRing
    z: IntMatrix
    cosets: tuple[IntMatrix, ...]


def regular_representation(ring: CrossedRing) -> RegularRep:
    n, m = ring.n, ring.weyl_order
    deg = totient(n)
    rank = deg * m
    powers = _tables(n).powers
    zm = [[0] * rank for _ in range(rank)]
    for w in range(m):
        for i in range(deg):
            col = w * deg + i
            vec = powers[i + 1]
            for s in range(deg):
                if vec[s]:
                    zm[w * deg + s][col] = vec[s]
    cosets = []
    for v in range(m):
        u = ring.weyl_units[v]
        cm = [[0] * rank for _ in range(rank)]
        for w in range(m):
            t = ring.weyl_table[v][w]
            for i in range(deg):
                col = w * deg + i
                vec = powers[(i * u) % n]
                for s in range(deg):
                    if vec[s]:
                        cm[t * deg + s][col] = vec[s]
        cosets.append(IntMatrix.from_rows(cm))
    return RegularRep(ring, IntMatrix.from_rows(zm), tuple(cosets))


def companion_matrix(d: int) -> IntMatrix:
    """Multiplication by theta_d on the basis of Z[theta_d]."""
    deg = totient(d)
    powers = _tables(d).powers
    rows = [[0] * deg for _ in range(deg)]
    for i in range(deg):
        vec = powers[i + 1]
        for s in range(deg):
            rows[s][i] = vec[s]
    return IntMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# splitting into commutative summands


@dataclass(frozen=True)
class RingSummand:
    """One summand of a (possibly split) crossed ring.

    kind is integral_local (Z[1/N]), cyclotomic_local (Z[theta_d, 1/N]) or
    unsplit_crossed; d records the cyclotomic index (d = n for unsplit).
    """

    kind: str
    d: int
    N: int
    multiplicity: int = 1
    provenance: str = ""
    ring: Optional[CrossedRing] = None

    def rank(self) -> int:
        if self.kind == "unsplit_crossed":
            return self.ring.rank
        return totient(self.d)

    def describe(self) -> str:
        if self.kind == "unsplit_crossed":
            return f"unsplit {self.ring.describe()} (rank {self.ring.rank})"
        return _ring_name(self.d if self.kind != "integral_local" else 1, self.N)


def _kind_for(d: int) -> str:
    return "integral_local" if totient(d) == 1 else "cyclotomic_local"


def _is_abelian(table) -> bool:
    m = len(table)
    return all(table[i][j] == table[j][i] for i in range(m) for j in range(m))


def _coset_orders(table) -> list[int]:
    m = len(table)
    orders = []
    for x in range(m):
        cur, k = x, 1
        while cur != 0:
            cur = table[cur][x]
            k += 1
        orders.append(k)
    return orders


def _abelian_characters(table) -> tuple[list[tuple[int, ...]], int]:
    """All characters of an abelian group given by its table, as exponent
    vectors: chi(x) = theta_e^{vals[x]} with e the exponent of the group."""
    m = len(table)
    orders = _coset_orders(table)
    exponent = math.lcm(*orders)
    gens: list[int] = []
    generated = {0}
    while len(generated) < m:
        g = max((x for x in range(m) if x not in generated),
                key=lambda x: (orders[x], -x))
        gens.append(g)
        closure = set(generated)
        frontier = list(closure)
        while frontier:
            x = frontier.pop()
            y = table[x][g]
            if y not in closure:
                closure.add(y)
                frontier.append(y)
            for h in list(closure):
                for prev in (table[x][h], table[h][x]):
                    if prev not in closure:
                        closure.add(prev)
                        frontier.append(prev)
        generated = closure
    chars = []
    for assign in itertools.product(*[range(orders[g]) for g in gens]):
        vals = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for l, g in enumerate(gens):
                y = table[x][g]
                v = (vals[x] + (exponent // orders[g]) * assign[l]) % exponent
                if y in vals:
                    if vals[y] != v:
                        ok = False
                        break
                else:
                    vals[y] = v
                    frontier.append(y)
        if ok and len(vals) == m:
            chars.append(tuple(vals[x] for x in range(m)))
    if len(chars) != m:
        raise RuntimeError("character count must equal the group order")
    return chars, exponent


def _root_sum_integer(exponents: list[int], e: int) -> int:
    """Exact value of sum theta_e^{t} over the given exponents; must be a
    rational integer (Galois-stable input)."""
    acc = [0] * e
    for t in exponents:
        acc[t % e] += 1
    reduced = _reduce_mod_phi(e, acc)
    if any(reduced[1:]):
        raise RuntimeError("root-of-unity sum is not rational")
    return reduced[0]


def _char_order(vals: tuple[int, ...], e: int) -> int:
    g = e
    for v in vals:
        g = math.gcd(g, v)
    return e // g


def _orbit_split(ring: CrossedRing) -> tuple[list[RingSummand], list[CrossedElt]]:
    """Split Z[1/N][W] (n = 1, W abelian) along Galois orbits of characters."""
    chars, e = _abelian_characters(ring.weyl_table)
    units = [u for u in range(1, e + 1) if math.gcd(u, e) == 1]
    seen: set[tuple[int, ...]] = set()
    orbits: list[tuple[int, list[tuple[int, ...]]]] = []
    for chi in sorted(chars):
        if chi in seen:
            continue
        orbit = {tuple((u * v) % e for v in chi) for u in units}
        seen |= orbit
        orbits.append((_char_order(chi, e), sorted(orbit)))
    orbits.sort(key=lambda t: (t[0], t[1][0]))
    m = ring.weyl_order
    summands = []
    idems = []
    for d, orbit in orbits:
        summands.append(RingSummand(_kind_for(d), d, ring.N, provenance=f"character orbit of order {d}"))
        parts = {}
        for w in range(m):
            winv = ring.weyl_inverse(w)
            c = _root_sum_integer([chi[winv] for chi in orbit], e)
            parts[w] = CycEltN.from_int(ring.n, ring.N, c, den=m)
        idems.append(CrossedElt.from_parts(ring, parts))
    return summands, idems


def _sign_split(ring: CrossedRing) -> tuple[list[RingSummand], list[CrossedElt]]:
    """Split Z[theta_n, 1/N][W] for W elementary abelian of exponent 2 using
    its +-1-valued characters."""
    chars, e = _abelian_characters(ring.weyl_table)
    m = ring.weyl_order
    summands = []
    idems = []
    for chi in sorted(chars):
        summands.append(
            RingSummand(_kind_for(ring.n), ring.n, ring.N,
                        provenance="sign character " + "".join(str(v) for v in chi))
        )
        parts = {}
        for w in range(m):
            sign = 1 if chi[w] % e == 0 or e == 1 else -1
            parts[w] = CycEltN.from_int(ring.n, ring.N, sign, den=m)
        idems.append(CrossedElt.from_parts(ring, parts))
    return summands, idems


def _merge_multiplicities(flat: list[RingSummand]) -> list[RingSummand]:
    out: list[RingSummand] = []
    for s in flat:
        if out and (out[-1].kind, out[-1].d, out[-1].N, out[-1].ring) == (s.kind, s.d, s.N, s.ring):
            out[-1] = replace(out[-1], multiplicity=out[-1].multiplicity + s.multiplicity)
        else:
            out.append(s)
    return out


def _split_with_idempotents(
    ring: CrossedRing,
) -> tuple[list[RingSummand], Optional[list[CrossedElt]]]:
    n, N, m = ring.n, ring.N, ring.weyl_order
    if m == 1:
        if all(N % p == 0 for p in prime_factors(n)):
            s = RingSummand(_kind_for(n), n, N, provenance="trivial Weyl group")
            return [s], [CrossedElt.one(ring)]
        return [RingSummand("unsplit_crossed", n, N, ring=ring,
                            provenance="primes of n not inverted")], None
    units_trivial = all(u == 1 or n == 1 for u in ring.weyl_units)
    if n == 1 and _is_abelian(ring.weyl_table) \
            and all(N % p == 0 for p in prime_factors(m)):
        flat, idems = _orbit_split(ring)
        return _merge_multiplicities(flat), idems
    if units_trivial and all(o <= 2 for o in _coset_orders(ring.weyl_table)) \
            and N % 2 == 0:
        flat, idems = _sign_split(ring)
        return _merge_multiplicities(flat), idems
    return [RingSummand("unsplit_crossed", n, N, ring=ring,
                        provenance="no splitting rule applies")], None


def split_ring(ring: CrossedRing) -> list[RingSummand]:
    """Split the ring into summands where an implemented rule applies;
    an unsplit crossed product is a valid outcome."""
    return _split_with_idempotents(ring)[0]


def splitting_idempotents(ring: CrossedRing) -> Optional[list[CrossedElt]]:
    """The complete orthogonal idempotent family realizing split_ring, one
    idempotent per summand copy; None when the ring stays unsplit."""
    return _split_with_idempotents(ring)[1]


# ---------------------------------------------------------------------------
# the target category


@dataclass(frozen=True)
class ClassEntry:
    cyclic_class: CyclicClass
    ring: CrossedRing
    summands: tuple[RingSummand, ...]


@dataclass(frozen=True)
class TargetCategoryReport:
    """Per conjugacy class of cyclic subgroups: the crossed ring and its
    summand list, with N = |G| inverted throughout."""

    group_order: int
    inverted: int
    entries: tuple[ClassEntry, ...]

    def total_summands(self) -> int:
        return sum(s.multiplicity for e in self.entries for s in e.summands)

    def flat_summands(self) -> list[RingSummand]:
        """Multiplicity-expanded summand list; module families index into it."""
        out = []
        for ci, e in enumerate(self.entries):
            for s in e.summands:
                for copy in range(s.multiplicity):
                    out.append(
                        replace(s, multiplicity=1,
                                provenance=f"class {ci} (n={e.cyclic_class.n}): "
                                           f"{s.provenance} copy {copy}")
                    )
        return out

    def to_json_dict(self) -> dict:
        return {
            "group_order": self.group_order,
            "inverted": self.inverted,
            "total_summands": self.total_summands(),
            "classes": [
                {
                    "generator_order": e.cyclic_class.n,
                    "class_size": e.cyclic_class.class_size,
                    "weyl_order": e.cyclic_class.weyl_order,
                    "weyl_units": list(e.cyclic_class.weyl_units),
                    "ring": e.ring.describe(),
                    "summands": [
                        {"kind": s.kind, "d": s.d, "multiplicity": s.multiplicity}
                        for s in e.summands
                    ],
                }
                for e in self.entries
            ],
        }

    def to_text(self) -> str:
        lines = [
            f"group order {self.group_order}, localized at N={self.inverted}",
            f"{'class':>5}  {'n':>3}  {'size':>4}  {'|W|':>3}  ring -> summands",
        ]
        for i, e in enumerate(self.entries):
            parts = []
            for s in e.summands:
                txt = s.describe()
                if s.multiplicity > 1:
                    txt = f"{s.multiplicity} x {txt}"
                parts.append(txt)
            lines.append(
                f"{i:>5}  {e.cyclic_class.n:>3}  {e.cyclic_class.class_size:>4}"
                f"  {e.cyclic_class.weyl_order:>3}  {e.ring.describe()} -> "
                + ", ".join(parts)
            )
        lines.append(f"total: {self.total_summands()} summands")
        return "\n".join(lines)


def target_category(G: FiniteGroup) -> TargetCategoryReport:
    """For each conjugacy class of cyclic subgroups, the split summand list
    of Z[theta_n, 1/|G|] x| W_H, in the canonical class order."""
    N = G.order
    entries = []
    for C in cyclic_classes(G):
        ring = build_crossed_ring(C, N)
        summands = tuple(split_ring(ring))
        entries.append(ClassEntry(C, ring, summands))
    return TargetCategoryReport(G.order, N, tuple(entries))
