"""Exact arithmetic in Z[z], Z[1/N][z]/(z^n - 1) and Z[1/N][z]/(Phi_n).

Elements carry a single shared denominator whose prime factors must divide
the inverted integer N; normalization strips exactly those primes.  The
n-th cyclotomic polynomial is computed by exact division of z^n - 1 by the
product over proper divisors, and cached together with a table of the
powers z^t reduced modulo Phi_n (the workhorse for evaluation, Galois
action and multiplication).  Cache fills are idempotent, so concurrent
initialization is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ModulusMismatch, NotADivisor, NotAUnit, PrimeNotInverted


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def divexact(self, other: "IntPoly") -> "IntPoly":
        """Exact polynomial division; raises if the division leaves a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.coeffs
        lead = d[-1]
        for k in range(len(rem) - len(d), -1, -1):
            top = rem[k + len(d) - 1]
            if top % lead:
                raise ValueError("division is not exact over the integers")
            f = top // lead
            q[k] = f
            if f:
                for j, c in enumerate(d):
                    rem[k + j] -= f * c
        if any(rem):
            raise ValueError("division is not exact")
        return IntPoly(tuple(q))

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    phi = n
    for p in prime_factors(n):
        phi -= phi // p
    return phi


def order_mod(j: int, n: int) -> int:
    """Order of j in the additive group Z/n (1 for j == 0 mod n)."""
    return n // math.gcd(n, j % n)


_CYCLO: dict[int, IntPoly] = {}


def cyclotomic(k: int) -> IntPoly:
    """The k-th cyclotomic polynomial (exact division of z^k - 1 by the
    product of the lower cyclotomic polynomials)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    got = _CYCLO.get(k)
    if got is not None:
        return got
    num = IntPoly((-1,) + (0,) * (k - 1) + (1,))
    den = IntPoly((1,))
    for d in divisors(k)[:-1]:
        den = den * cyclotomic(d)
    phi = num.divexact(den)
    _CYCLO[k] = phi
    return phi


class _RingTables:
    """Per-n reduction data: Phi_n and the powers z^t mod Phi_n."""

    __slots__ = ("n", "deg", "phi", "powers")

    def __init__(self, n: int):
        self.n = n
        phi = cyclotomic(n)
        self.phi = phi.coeffs
        deg = phi.degree
        self.deg = deg
        top = [-c for c in phi.coeffs[:deg]]  # z^deg = top(z)
        powers: list[tuple[int, ...]] = []
        cur = [0] * deg
        if deg:
            cur[0] = 1
        powers.append(tuple(cur))
        limit = max(n, 2 * deg - 1, deg + 1)
        for _ in range(1, limit):
            carry = cur[deg - 1] if deg else 0
            nxt = [0] + cur[: deg - 1]
            if carry:
                for s in range(deg):
                    nxt[s] += carry * top[s]
            cur = nxt
            powers.append(tuple(cur))
        self.powers = powers


_TABLES: dict[int, _RingTables] = {}


def _tables(n: int) -> _RingTables:
    got = _TABLES.get(n)
    if got is None:
        got = _RingTables(n)
        _TABLES[n] = got  # idempotent fill
    return got


def _reduce_mod_phi(n: int, vec) -> tuple[int, ...]:
    """Reduce a coefficient vector (deg < len(powers table)) mod Phi_n."""
    t = _tables(n)
    deg = t.deg
    out = list(vec[:deg]) + [0] * max(0, deg - len(vec))
    powers = t.powers
    for e in range(deg, len(vec)):
        c = vec[e]
        if c:
            row = powers[e]
            for s in range(deg):
                out[s] += c * row[s]
    return tuple(out)


# ---------------------------------------------------------------------------
# denominator bookkeeping


def _strip_supported(d: int, N: int) -> int:
    """Divide out of d every prime that divides N; return what is left."""
    g = math.gcd(d, N)
    while g > 1:
        while d % g == 0:
            d //= g
        g = math.gcd(d, N)
    return d


def _check_supported(den: int, N: int) -> None:
    if _strip_supported(den, N) != 1:
        raise PrimeNotInverted(f"denominator {den} needs primes outside N={N}")


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if all(x == 0 for x in num):
        return tuple(0 for _ in num), 1
    g = math.gcd(den, math.gcd(*num))
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


def _require_inverted(n: int, N: int) -> None:
    for p in prime_factors(n):
        if N % p:
            raise PrimeNotInverted(f"prime {p} of {n} does not divide N={N}")


# ---------------------------------------------------------------------------
# elements of Z[1/N][z]/(z^n - 1)


@dataclass(frozen=True)
class CycPoly:
    """Element of Z[1/N][z]/(z^n - 1): integer vector num over denominator den."""

    n: int
    N: int
    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        if self.n < 1 or self.N < 1 or self.den < 1:
            raise ValueError("n, N, den must be positive")
        if len(self.num) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(self.num)}")
        num, den = _normalize([int(x) for x in self.num], self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        _check_supported(self.den, self.N)

    @classmethod
    def zero(cls, n: int, N: int) -> "CycPoly":
        return cls(n, N, (0,) * n)

    @classmethod
    def one(cls, n: int, N: int) -> "CycPoly":
        return cls(n, N, (1,) + (0,) * (n - 1))

    @classmethod
    def monomial(cls, n: int, N: int, e: int, coeff: int = 1) -> "CycPoly":
        num = [0] * n
        num[e % n] = coeff
        return cls(n, N, tuple(num))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.num)

    def _check_compatible(self, other: "CycPoly") -> None:
        if self.n != other.n or self.N != other.N:
            raise ModulusMismatch(
                f"(n={self.n}, N={self.N}) vs (n={other.n}, N={other.N})"
            )

    def __add__(self, other: "CycPoly") -> "CycPoly":
        self._check_compatible(other)
        l = math.lcm(self.den, other.den)
        fa, fb = l // self.den, l // other.den
        return CycPoly(self.n, self.N,
                       tuple(fa * a + fb * b for a, b in zip(self.num, other.num)), l)

    def __neg__(self) -> "CycPoly":
        return CycPoly(self.n, self.N, tuple(-x for x in self.num), self.den)

    def __sub__(self, other: "CycPoly") -> "CycPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycPoly(self.n, self.N, tuple(other * x for x in self.num), self.den)
        self._check_compatible(other)
        out = [0] * self.n
        n = self.n
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        out[(i + j) % n] += a * b
        return CycPoly(self.n, self.N, tuple(out), self.den * other.den)

    __rmul__ = __mul__

    def substitute_power(self, k: int) -> "CycPoly":
        """Ring map z -> z^k (well defined mod z^n - 1 for any integer k)."""
        out = [0] * self.n
        for i, a in enumerate(self.num):
            if a:
                out[(i * k) % self.n] += a
        return CycPoly(self.n, self.N, tuple(out), self.den)

    def with_inverted(self, N: int) -> "CycPoly":
        """Reinterpret over Z[1/N]; the denominator must stay supported."""
        return CycPoly(self.n, N, self.num, self.den)

    def to_json_dict(self) -> dict:
        """Coefficients as decimal strings, lowest degree first."""
        return {"n": self.n, "N": self.N, "den": str(self.den),
                "coeffs": [str(c) for c in self.num]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CycPoly":
        return cls(int(data["n"]), int(data["N"]),
                   tuple(int(c) for c in data["coeffs"]), int(data["den"]))


def cyc_add(a: CycPoly, b: CycPoly) -> CycPoly:
    return a + b


def cyc_sub(a: CycPoly, b: CycPoly) -> CycPoly:
    return a - b


def cyc_mul(a: CycPoly, b: CycPoly) -> CycPoly:
    return a * b


def psi(n: int, k: int, N: int | None = None) -> CycPoly:
    """The idempotent (z/n) * dPhi_k/dz * prod_{k' | n, k' != k} Phi_{k'},
    reduced mod z^n - 1, over Z[1/N] (N defaults to n)."""
    if N is None:
        N = n
    if n < 1 or k < 1 or n % k:
        raise NotADivisor(f"k={k} must divide n={n}")
    _require_inverted(n, N)
    prod = cyclotomic(k).derivative()
    for kp in divisors(n):
        if kp != k:
            prod = prod * cyclotomic(kp)
    out = [0] * n
    for i, c in enumerate(prod.coeffs):
        if c:
            out[(i + 1) % n] += c  # the leading factor z
    return CycPoly(n, N, tuple(out), n)


# ---------------------------------------------------------------------------
# elements of Z[1/N][z]/(Phi_n)  (the ring Z[theta_n, 1/N])


@dataclass(frozen=True)
class CycEltN:
    """Element of Z[theta_n, 1/N] as a vector of length deg(Phi_n)."""

    n: int
    N: int
    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        if self.n < 1 or self.N < 1 or self.den < 1:
            raise ValueError("n, N, den must be positive")
        deg = totient(self.n)
        if len(self.num) != deg:
            raise ValueError(f"expected {deg} coefficients, got {len(self.num)}")
        num, den = _normalize([int(x) for x in self.num], self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        _check_supported(self.den, self.N)

    @classmethod
    def zero(cls, n: int, N: int) -> "CycEltN":
        return cls(n, N, (0,) * totient(n))

    @classmethod
    def from_int(cls, n: int, N: int, value: int, den: int = 1) -> "CycEltN":
        num = [0] * totient(n)
        if num:
            num[0] = value
        return cls(n, N, tuple(num), den)

    @classmethod
    def one(cls, n: int, N: int) -> "CycEltN":
        return cls.from_int(n, N, 1)

    @classmethod
    def root_power(cls, n: int, N: int, t: int) -> "CycEltN":
        """theta_n^t as a reduced element."""
        return cls(n, N, _tables(n).powers[t % n])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.num)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.num[1:])

    def _check_compatible(self, other: "CycEltN") -> None:
        if self.n != other.n or self.N != other.N:
            raise ModulusMismatch(
                f"(n={self.n}, N={self.N}) vs (n={other.n}, N={other.N})"
            )

    def __add__(self, other: "CycEltN") -> "CycEltN":
        self._check_compatible(other)
        l = math.lcm(self.den, other.den)
        fa, fb = l // self.den, l // other.den
        return CycEltN(self.n, self.N,
                       tuple(fa * a + fb * b for a, b in zip(self.num, other.num)), l)

    def __neg__(self) -> "CycEltN":
        return CycEltN(self.n, self.N, tuple(-x for x in self.num), self.den)

    def __sub__(self, other: "CycEltN") -> "CycEltN":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycEltN(self.n, self.N, tuple(other * x for x in self.num), self.den)
        self._check_compatible(other)
        deg = len(self.num)
        out = [0] * max(2 * deg - 1, 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        out[i + j] += a * b
        return CycEltN(self.n, self.N, _reduce_mod_phi(self.n, out),
                       self.den * other.den)

    __rmul__ = __mul__

    def to_json_dict(self) -> dict:
        """Coefficients as decimal strings, lowest degree first."""
        return {"n": self.n, "N": self.N, "den": str(self.den),
                "coeffs": [str(c) for c in self.num]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CycEltN":
        return cls(int(data["n"]), int(data["N"]),
                   tuple(int(c) for c in data["coeffs"]), int(data["den"]))


def evaluate_at_root(a: CycPoly, j: int) -> CycEltN:
    """Image of a under z -> theta_n^j: substitute z -> z^j mod z^n - 1,
    then reduce mod Phi_n.  The codomain is always Z[theta_n, 1/N]."""
    n = a.n
    acc = [0] * n
    for i, c in enumerate(a.num):
        if c:
            acc[(i * j) % n] += c
    return CycEltN(n, a.N, _reduce_mod_phi(n, acc), a.den)


def galois(a: CycEltN, k: int) -> CycEltN:
    """Galois action theta_n -> theta_n^k for k a unit mod n."""
    n = a.n
    if math.gcd(k, n) != 1:
        raise NotAUnit(f"k={k} is not a unit mod {n}")
    acc = [0] * n
    for i, c in enumerate(a.num):
        if c:
            acc[(i * k) % n] += c
    return CycEltN(n, a.N, _reduce_mod_phi(n, acc), a.den)


def crt_split(a: CycPoly) -> dict[int, CycEltN]:
    """Components of a in prod_{k | n} Z[theta_k, 1/N]; requires every prime
    of n to divide N."""
    n = a.n
    _require_inverted(n, a.N)
    out: dict[int, CycEltN] = {}
    for k in divisors(n):
        folded = [0] * k
        for i, c in enumerate(a.num):
            if c:
                folded[i % k] += c
        out[k] = CycEltN(k, a.N, _reduce_mod_phi(k, folded), a.den)
    return out


def crt_join(parts: dict[int, CycEltN]) -> CycPoly:
    """Two-sided inverse of crt_split, assembled with the psi idempotents."""
    if not parts:
        raise ValueError("no components given")
    n = max(parts)
    if sorted(parts) != divisors(n):
        raise ValueError(f"components must be indexed by the divisors of {n}")
    Ns = {p.N for p in parts.values()}
    if len(Ns) != 1:
        raise ModulusMismatch(f"mixed N values {sorted(Ns)}")
    N = Ns.pop()
    total = CycPoly.zero(n, N)
    for k in divisors(n):
        part = parts[k]
        if part.n != k:
            raise ModulusMismatch(f"component at {k} has n={part.n}")
        lift = [0] * n
        lift[: len(part.num)] = part.num
        total = total + CycPoly(n, N, tuple(lift), part.den) * psi(n, k, N)
    return total
