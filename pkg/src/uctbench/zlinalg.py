"""Exact integer linear algebra: Hermite/Smith normal forms, congruence
kernels, and structure of finitely generated abelian groups.

Everything operates on arbitrary-precision Python ints; no floating point.
Pivot choices are deterministic (smallest absolute value, then first
position) so outputs are stable across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


Row = Sequence[int]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Row]) -> "IntMatrix":
        ent = tuple(tuple(int(x) for x in row) for row in rows)
        if ent and any(len(r) != len(ent[0]) for r in ent):
            raise ValueError("ragged rows")
        return cls(ent)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def tolists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bt = other.transpose().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def matvec(self, v: Row) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


def _as_lists(A) -> list[list[int]]:
    if isinstance(A, IntMatrix):
        return A.tolists()
    return [list(r) for r in A]


def _row_sub(M: list[list[int]], i: int, k: int, q: int) -> None:
    Mi, Mk = M[i], M[k]
    for j in range(len(Mi)):
        Mi[j] -= q * Mk[j]


def _row_neg(M: list[list[int]], i: int) -> None:
    M[i] = [-x for x in M[i]]


def _col_sub(M: list[list[int]], j: int, k: int, q: int) -> None:
    for row in M:
        row[j] -= q * row[k]


def _col_swap(M: list[list[int]], j: int, k: int) -> None:
    for row in M:
        row[j], row[k] = row[k], row[j]


def hnf(A) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (H, U) with U unimodular and U*A = H.

    H is in row echelon form with positive pivots; entries above each pivot
    are reduced into [0, pivot).
    """
    M = _as_lists(A)
    r = len(M)
    c = len(M[0]) if M else 0
    U = IntMatrix.identity(r).tolists()
    row = 0
    for col in range(c):
        if row == r:
            break
        # Euclidean elimination below `row` in this column.
        while True:
            nz = [i for i in range(row, r) if M[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(M[i][col]), i))
            if p != row:
                M[row], M[p] = M[p], M[row]
                U[row], U[p] = U[p], U[row]
            rest = [i for i in range(row + 1, r) if M[i][col]]
            if not rest:
                break
            piv = M[row][col]
            for i in rest:
                q = M[i][col] // piv
                if q:
                    _row_sub(M, i, row, q)
                    _row_sub(U, i, row, q)
        if not M[row][col] and not any(M[i][col] for i in range(row, r)):
            continue
        if M[row][col] < 0:
            _row_neg(M, row)
            _row_neg(U, row)
        piv = M[row][col]
        for i in range(row):
            q = M[i][col] // piv
            if q:
                _row_sub(M, i, row, q)
                _row_sub(U, i, row, q)
        row += 1
    return IntMatrix.from_rows(M), IntMatrix.from_rows(U)


def snf(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (D, U, V) with U*A*V = D diagonal,
    nonnegative, and d_i | d_{i+1}."""
    M = _as_lists(A)
    r = len(M)
    c = len(M[0]) if M else 0
    U = IntMatrix.identity(r).tolists()
    V = IntMatrix.identity(c).tolists()
    t = 0
    while t < min(r, c):
        # Locate the smallest nonzero entry of the trailing block.
        best: Optional[tuple[tuple[int, int, int], int, int]] = None
        for i in range(t, r):
            Mi = M[i]
            for j in range(t, c):
                v = Mi[j]
                if v:
                    key = (abs(v), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            M[t], M[bi] = M[bi], M[t]
            U[t], U[bi] = U[bi], U[t]
        if bj != t:
            _col_swap(M, t, bj)
            _col_swap(V, t, bj)
        # Clear row and column t.
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, r):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    _row_sub(M, i, t, q)
                    _row_sub(U, i, t, q)
                    if M[i][t]:
                        M[t], M[i] = M[i], M[t]
                        U[t], U[i] = U[i], U[t]
                        dirty = True
            for j in range(t + 1, c):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    _col_sub(M, j, t, q)
                    _col_sub(V, j, t, q)
                    if M[t][j]:
                        _col_swap(M, t, j)
                        _col_swap(V, t, j)
                        dirty = True
        if M[t][t] < 0:
            _row_neg(M, t)
            _row_neg(U, t)
        # Enforce the divisibility chain before moving on.
        d = M[t][t]
        bad_row = None
        for i in range(t + 1, r):
            Mi = M[i]
            if any(Mi[j] % d for j in range(t + 1, c)):
                bad_row = i
                break
        if bad_row is not None:
            _row_sub(M, t, bad_row, -1)
            _row_sub(U, t, bad_row, -1)
            continue
        t += 1
    return IntMatrix.from_rows(M), IntMatrix.from_rows(U), IntMatrix.from_rows(V)


def det_unimodular(U: IntMatrix) -> int:
    """Determinant of a square integer matrix via fraction-free elimination."""
    M = U.tolists()
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def kernel_basis(A) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {x : A x = 0}, canonical (HNF) rows."""
    M = _as_lists(A)
    r = len(M)
    c = len(M[0]) if M else 0
    if c == 0:
        return []
    # Rows of [A^T | I] span pairs (A u, u); echelon rows with zero head
    # give a basis of the kernel.
    stacked = [[M[i][j] for i in range(r)] + [1 if t == j else 0 for t in range(c)]
               for j in range(c)]
    H, _ = hnf(stacked)
    out = []
    for row in H.entries:
        if any(row[:r]):
            continue
        tail = row[r:]
        if any(tail):
            out.append(tuple(tail))
    return out


def congruence_kernel(A, moduli: Sequence[int]) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^cols : (A x)_i == 0 mod moduli[i]}.

    A modulus of 0 demands exact vanishing of that row.
    """
    M = _as_lists(A)
    r = len(M)
    c = len(M[0]) if M else 0
    if len(moduli) != r:
        raise ValueError("one modulus per row required")
    aug = [list(row) for row in M]
    extra = [i for i in range(r) if moduli[i]]
    for k, i in enumerate(extra):
        for i2 in range(r):
            aug[i2].append(moduli[i] if i2 == i else 0)
    if c == 0:
        return []
    sols = kernel_basis(aug)
    proj = [s[:c] for s in sols]
    if not proj:
        return []
    H, _ = hnf(proj)
    return [tuple(row) for row in H.entries if any(row)]


def lattice_kernel_localized(A, m: int, N: int = 1) -> IntMatrix:
    """Z-basis (rows) of {x in Z^cols : A x == 0 mod m}, m >= 1.

    N records the localization applied by callers downstream; it does not
    affect the lattice itself.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    M = _as_lists(A)
    r = len(M)
    rows = congruence_kernel(M, [m] * r)
    return IntMatrix.from_rows(rows)


class ExactSolver:
    """Reusable exact solver for A x = b over Z (one SNF, many right sides)."""

    def __init__(self, A):
        M = _as_lists(A)
        self.rows = len(M)
        self.cols = len(M[0]) if M else 0
        self.D, self.U, self.V = snf(M)
        self.diag = self.D.diagonal()

    def solve(self, b: Sequence[int]) -> Optional[tuple[int, ...]]:
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        t = self.U.matvec(b)
        y = [0] * self.cols
        k = min(self.rows, self.cols)
        for i in range(k):
            d = self.diag[i]
            if d:
                if t[i] % d:
                    return None
                y[i] = t[i] // d
            elif t[i]:
                return None
        if any(t[i] for i in range(k, self.rows)):
            return None
        return self.V.matvec(y)


def solve_exact(A, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """One integer solution of A x = b, or None if none exists."""
    return ExactSolver(A).solve(b)


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    n = abs(n)
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FinAbGroup:
    """A finitely generated abelian group in invariant-factor form.

    `factors` is the divisibility chain d_1 | d_2 | ... with every d_i >= 2;
    `free_rank` counts Z summands.
    """

    factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a chain: {self.factors}")
        if any(d < 2 for d in self.factors):
            raise ValueError("invariant factors must be >= 2")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Canonicalize an arbitrary list of cyclic orders (0 means Z)."""
        rank = 0
        primary: dict[int, list[int]] = {}
        for d in orders:
            d = abs(int(d))
            if d == 0:
                rank += 1
            elif d > 1:
                for p, e in _factorint(d).items():
                    primary.setdefault(p, []).append(e)
        slots = max((len(v) for v in primary.values()), default=0)
        chain = []
        for i in range(slots):
            f = 1
            for p, exps in primary.items():
                exps_sorted = sorted(exps, reverse=True)
                if i < len(exps_sorted):
                    f *= p ** exps_sorted[i]
            chain.append(f)
        return cls(tuple(sorted(chain)), rank)

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls()

    def is_trivial(self) -> bool:
        return not self.factors and not self.free_rank

    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        return math.prod(self.factors)

    def direct_sum(self, *others: "FinAbGroup") -> "FinAbGroup":
        orders: list[int] = list(self.factors) + [0] * self.free_rank
        for g in others:
            orders.extend(g.factors)
            orders.extend([0] * g.free_rank)
        return FinAbGroup.from_orders(orders)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"C{d}" for d in self.factors]
        return " x ".join(parts) if parts else "0"


def cokernel(columns: Sequence[Sequence[int]], ambient_rank: int) -> FinAbGroup:
    """Structure of Z^ambient_rank / <columns> (columns are relation vectors)."""
    if ambient_rank == 0:
        return FinAbGroup.trivial()
    if not columns:
        return FinAbGroup(free_rank=ambient_rank)
    X = [[col[i] for col in columns] for i in range(ambient_rank)]
    D, _, _ = snf(X)
    diag = D.diagonal()
    nonzero = [d for d in diag if d]
    free = ambient_rank - len(nonzero)
    return FinAbGroup(tuple(d for d in nonzero if d > 1), free)


@dataclass(frozen=True)
class SolutionGroup:
    """Result of solve_mod: generators of the solution lattice reduced mod
    the ambient exponent, plus the group structure of the solution set."""

    generators: tuple[tuple[int, ...], ...]
    group: FinAbGroup
    exponent: int


def solve_mod(A, moduli: Sequence[int]) -> SolutionGroup:
    """Solutions of A x == 0 (mod moduli, rowwise), x taken modulo the lcm
    of the moduli coordinatewise.
    """
    if any(m < 1 for m in moduli):
        raise ValueError("moduli must be >= 1")
    M = _as_lists(A)
    c = len(M[0]) if M else 0
    L = math.lcm(*moduli) if moduli else 1
    basis = congruence_kernel(M, list(moduli))
    # Quotient of the solution lattice by L * Z^c.
    if c == 0:
        return SolutionGroup((), FinAbGroup.trivial(), L)
    Bcols = [[row[i] for row in basis] for i in range(c)]  # c x k (k = len(basis))
    solver = ExactSolver(Bcols)
    rel_cols = []
    for j in range(c):
        target = [L if i == j else 0 for i in range(c)]
        y = solver.solve(target)
        if y is None:
            raise RuntimeError("L*e_j must lie in the solution lattice")
        rel_cols.append(list(y))
    group = cokernel(rel_cols, len(basis))
    gens = tuple(tuple(x % L for x in row) for row in basis)
    return SolutionGroup(gens, group, L)
