"""Finite group arithmetic on explicit Cayley tables.

Groups are kept at desk scale (full multiplication tables), which makes
validation, conjugacy and normalizer computations straightforward
exhaustive loops.  All types are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    InvalidGroupTable,
    NoIdentity,
    NoInverse,
    NonAssociative,
    UnknownPreset,
    UnsupportedSize,
)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table of element indices."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    labels: Optional[tuple[str, ...]] = None
    inv: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.inv:
            e = self.identity
            inv = [-1] * self.order
            for a in range(self.order):
                row = self.mul[a]
                for b in range(self.order):
                    if row[b] == e and self.mul[b][a] == e:
                        inv[a] = b
                        break
            object.__setattr__(self, "inv", tuple(inv))

    def multiply(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        out = self.identity
        while k:
            if k & 1:
                out = self.mul[out][a]
            a = self.mul[a][a]
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        cur = a
        k = 1
        while cur != self.identity:
            cur = self.mul[cur][a]
            k += 1
        return k

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def label(self, a: int) -> str:
        if self.labels:
            return self.labels[a]
        return str(a)


def group_from_table(table: Sequence[Sequence[int]],
                     labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a FiniteGroup.

    Raises InvalidGroupTable (shape/range), NoIdentity, NoInverse or
    NonAssociative naming the offending element or triple.
    """
    rows = [tuple(int(x) for x in row) for row in table]
    n = len(rows)
    if n == 0:
        raise InvalidGroupTable("empty table")
    if any(len(r) != n for r in rows):
        raise InvalidGroupTable("table is not square")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise InvalidGroupTable(f"entry {v} at ({i}, {j}) out of range")
    mul = tuple(rows)
    identity = None
    for e in range(n):
        if all(mul[e][x] == x and mul[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity()
    for a in range(n):
        if not any(mul[a][b] == identity and mul[b][a] == identity for b in range(n)):
            raise NoInverse(a)
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            row_a = mul[a]
            for c in range(n):
                if mul[ab][c] != row_a[mul[b][c]]:
                    raise NonAssociative((a, b, c))
    lab = tuple(str(s) for s in labels) if labels is not None else None
    if lab is not None and len(lab) != n:
        raise InvalidGroupTable("label count does not match order")
    return FiniteGroup(n, mul, identity, lab)


# ---------------------------------------------------------------------------
# presets


def _cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _dihedral_table(n: int) -> list[list[int]]:
    # elements r^i s^j with index i + n*j; s r s^-1 = r^-1
    order = 2 * n

    def mul(a, b):
        i1, j1 = a % n, a // n
        i2, j2 = b % n, b // n
        i = (i1 + i2) % n if j1 == 0 else (i1 - i2) % n
        return i + n * ((j1 + j2) % 2)

    return [[mul(a, b) for b in range(order)] for a in range(order)]


def _symmetric_table(n: int) -> list[list[int]]:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        table.append([index[tuple(p[q[x]] for x in range(n))] for q in perms])
    return table


def _direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    order = a.order * b.order
    mul = []
    for x in range(order):
        xa, xb = divmod(x, b.order)
        row = []
        for y in range(order):
            ya, yb = divmod(y, b.order)
            row.append(a.mul[xa][ya] * b.order + b.mul[xb][yb])
        mul.append(tuple(row))
    return FiniteGroup(order, tuple(mul), a.identity * b.order + b.identity)


def _split_call(spec: str) -> tuple[str, Optional[list[str]]]:
    spec = spec.strip()
    if "(" not in spec:
        return spec, None
    head, _, rest = spec.partition("(")
    if not rest.endswith(")"):
        raise UnknownPreset(f"unbalanced parentheses in {spec!r}")
    body = rest[:-1]
    args, depth, cur = [], 0, []
    for ch in body:
        if ch == "," and depth == 0:
            args.append("".join(cur))
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    args.append("".join(cur))
    return head.strip(), [a.strip() for a in args]


def preset_group(name: str) -> FiniteGroup:
    """Build one of the named groups: cyclic(n), dihedral(n), symmetric(n),
    klein_four, or direct_product(a, b) of presets."""
    head, args = _split_call(name)
    if head == "klein_four":
        if args:
            raise UnknownPreset("klein_four takes no arguments")
        v = preset_group("direct_product(cyclic(2),cyclic(2))")
        return FiniteGroup(4, v.mul, 0, ("1", "a", "b", "ab"))
    if head == "trivial":
        return FiniteGroup(1, ((0,),), 0)
    if head in ("cyclic", "dihedral", "symmetric"):
        if not args or len(args) != 1 or not args[0].isdigit():
            raise UnknownPreset(f"{head} takes one integer argument")
        n = int(args[0])
        if n < 1:
            raise UnsupportedSize(f"{head}({n}): size must be >= 1")
        if head == "cyclic":
            return FiniteGroup(n, tuple(map(tuple, _cyclic_table(n))), 0)
        if head == "dihedral":
            return FiniteGroup(2 * n, tuple(map(tuple, _dihedral_table(n))), 0)
        if n > 8:
            raise UnsupportedSize(f"symmetric({n}) exceeds the supported bound n <= 8")
        return FiniteGroup(
            len(list(itertools.permutations(range(n)))) if n else 1,
            tuple(map(tuple, _symmetric_table(n))),
            0,
        )
    if head == "direct_product":
        if not args or len(args) != 2:
            raise UnknownPreset("direct_product takes two preset arguments")
        return _direct_product(preset_group(args[0]), preset_group(args[1]))
    raise UnknownPreset(f"unknown preset {name!r}")


# ---------------------------------------------------------------------------
# cyclic subgroups and their conjugacy classes


@dataclass(frozen=True)
class CyclicSubgroup:
    """A cyclic subgroup, its order and sorted element list."""

    generator: int
    n: int
    elements: tuple[int, ...]


@dataclass(frozen=True)
class CyclicClass:
    """Conjugacy class of a cyclic subgroup together with its Weyl data.

    weyl_units[w] is the unit k of (Z/n)^x with g h g^-1 = h^k for any g in
    coset w; weyl_table is the multiplication table of the cosets, with the
    identity coset at index 0.
    """

    representative: CyclicSubgroup
    class_size: int
    normalizer: tuple[int, ...]
    coset_reps: tuple[int, ...]
    weyl_units: tuple[int, ...]
    weyl_table: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.representative.n

    @property
    def weyl_order(self) -> int:
        return len(self.coset_reps)

    def group_order(self) -> int:
        # orbit-stabilizer: |G| = class_size * |N_H|
        return self.class_size * len(self.normalizer)


def _generated_subgroup(G: FiniteGroup, g: int) -> frozenset[int]:
    elems = {G.identity}
    cur = g
    while cur != G.identity:
        elems.add(cur)
        cur = G.mul[cur][g]
    return frozenset(elems)


def _conjugate_subgroup(G: FiniteGroup, H: frozenset[int], x: int) -> frozenset[int]:
    return frozenset(G.conjugate(x, h) for h in H)


def all_cyclic_subgroups(G: FiniteGroup) -> list[frozenset[int]]:
    """Every cyclic subgroup, found by brute-force generator enumeration."""
    return sorted({_generated_subgroup(G, g) for g in range(G.order)},
                  key=lambda s: (len(s), sorted(s)))


def cyclic_classes(G: FiniteGroup) -> list[CyclicClass]:
    """One CyclicClass per conjugacy class of cyclic subgroups, including the
    trivial subgroup, sorted by (order, representative elements)."""
    subs = all_cyclic_subgroups(G)
    seen: set[frozenset[int]] = set()
    classes: list[CyclicClass] = []
    for H in subs:
        if H in seen:
            continue
        orbit = {_conjugate_subgroup(G, H, x) for x in range(G.order)}
        seen |= orbit
        rep_set = min(orbit, key=lambda s: sorted(s))
        rep_sorted = tuple(sorted(rep_set))
        n = len(rep_set)
        generator = min(h for h in rep_set if G.element_order(h) == n)
        normalizer = tuple(
            x for x in range(G.order)
            if _conjugate_subgroup(G, rep_set, x) == rep_set
        )
        # left cosets of the representative inside its normalizer
        coset_of: dict[int, int] = {}
        cosets: list[tuple[int, ...]] = []
        for x in normalizer:
            if x in coset_of:
                continue
            coset = tuple(sorted(G.mul[x][h] for h in rep_set))
            idx = len(cosets)
            cosets.append(coset)
            for y in coset:
                coset_of[y] = idx
        id_idx = coset_of[G.identity]
        order_keys = sorted(range(len(cosets)),
                            key=lambda i: (i != id_idx, cosets[i][0]))
        relabel = {old: new for new, old in enumerate(order_keys)}
        coset_of = {x: relabel[i] for x, i in coset_of.items()}
        reps = [0] * len(cosets)
        for old, new in relabel.items():
            reps[new] = G.identity if new == 0 else cosets[old][0]
        # discrete log table of the generator
        dlog = {}
        cur, t = G.identity, 0
        while True:
            dlog[cur] = t
            cur = G.mul[cur][generator]
            t += 1
            if cur == G.identity:
                break
        units = []
        for r in reps:
            if n == 1:
                units.append(1)
            else:
                units.append(dlog[G.conjugate(r, generator)])
        table = tuple(
            tuple(coset_of[G.mul[a][b]] for b in reps) for a in reps
        )
        classes.append(
            CyclicClass(
                representative=CyclicSubgroup(generator, n, rep_sorted),
                class_size=len(orbit),
                normalizer=normalizer,
                coset_reps=tuple(reps),
                weyl_units=tuple(units),
                weyl_table=table,
            )
        )
    classes.sort(key=lambda c: (c.n, c.representative.elements))
    return classes


def weyl_action_on_units(C: CyclicClass, w: int) -> int:
    """The unit k in (Z/n)^x describing conjugation by coset w."""
    return C.weyl_units[w]
