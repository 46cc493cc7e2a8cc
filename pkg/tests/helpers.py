"""Shared test utilities: brute-force oracles and random valid modules."""

import itertools
import math

from uctbench.amod import AModObject, ModulePart, presentation_of
from uctbench.crossring import RingSummand
from uctbench.zlinalg import IntMatrix


def _torsion_elements(orders, a):
    """All x in prod Z/q_i with a * x = 0."""
    choices = []
    for q in orders:
        step = q // math.gcd(q, a)
        choices.append(range(0, q, step))
    return [tuple(v) for v in itertools.product(*choices)]


def _apply(mat, vec, orders):
    return tuple(
        sum(mat.entries[i][j] * vec[j] for j in range(len(vec))) % orders[i]
        for i in range(len(orders))
    )


def brute_hom_count_block(P: ModulePart, Q: ModulePart) -> int:
    """Count group homs P -> Q commuting with all generator actions."""
    r, s = P.rank, Q.rank
    if r == 0 or s == 0:
        return 1
    options = [_torsion_elements(Q.orders, P.orders[j]) for j in range(r)]
    count = 0
    for images in itertools.product(*options):
        ok = True
        for Pg, Qg in zip(P.mats, Q.mats):
            for j in range(r):
                # f(Pg e_j) vs Qg f(e_j)
                lhs = tuple(
                    sum(Pg.entries[v][j] * images[v][i] for v in range(r)) % Q.orders[i]
                    for i in range(s)
                )
                rhs = _apply(Qg, images[j], Q.orders)
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def brute_hom_count(M: AModObject, N: AModObject, degree: int) -> int:
    total = 1
    for d in (0, 1):
        total *= brute_hom_count_block(M.parts[d], N.parts[(d + degree) % 2])
    return total


def _inverse_mod_prime(mat, q):
    r = len(mat)
    aug = [[mat[i][j] % q for j in range(r)] + [1 if k == i else 0 for k in range(r)]
           for i, k in zip(range(r), range(r))]
    for col in range(r):
        piv = next((i for i in range(col, r) if aug[i][col] % q), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, q)
        aug[col] = [(x * inv) % q for x in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % q for a, b in zip(aug[i], aug[col])]
    return [row[r:] for row in aug]


def random_invertible(rng, r, q):
    while True:
        mat = [[rng.randrange(q) for _ in range(r)] for _ in range(r)]
        inv = _inverse_mod_prime(mat, q)
        if inv is not None:
            return mat, inv


def conjugated_part(rng, part: ModulePart, q: int) -> ModulePart:
    """Change of basis of a q-uniform part by a random invertible matrix."""
    r = part.rank
    if r == 0:
        return part
    P, Pinv = random_invertible(rng, r, q)
    mats = []
    for mat in part.mats:
        raw = [[0] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                raw[i][j] = sum(
                    P[i][a] * mat.entries[a][b] * Pinv[b][j]
                    for a in range(r) for b in range(r)
                ) % q
        mats.append(IntMatrix.from_rows(raw))
    return ModulePart(part.orders, tuple(mats))


def regular_module_part(summand: RingSummand, q: int) -> ModulePart:
    """The part R/qR with generators acting by the regular representation."""
    pres = presentation_of(summand)
    rank = pres.rank
    orders = (q,) * rank
    return ModulePart(orders, pres.gen_mats)


def coprime_primes(N, bound=50):
    return [p for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
            if N % p and p <= bound]


def _poly_roots_mod(coeffs, q):
    out = []
    for c in range(q):
        acc = 0
        for a in reversed(coeffs):
            acc = (acc * c + a) % q
        if acc == 0:
            out.append(c)
    return out


def candidate_parts(summand: RingSummand, max_order=81):
    """Valid q-uniform module parts over the summand, with their group order."""
    from uctbench.cyclotomic import cyclotomic

    pres = presentation_of(summand)
    rank = pres.rank
    pool = []
    for q in coprime_primes(summand.N):
        if q ** rank <= max_order:
            pool.append((q, regular_module_part(summand, q)))
        if summand.kind == "integral_local":
            e = 2
            while q ** e <= max_order:
                pool.append((q, ModulePart((q ** e,), ())))
                e += 1
        if summand.kind == "cyclotomic_local" and q <= max_order:
            roots = _poly_roots_mod(cyclotomic(summand.d).coeffs, q)
            for c in roots:
                pool.append((q, ModulePart((q,), (IntMatrix.from_rows([[c]]),))))
            if len(roots) >= 2 and q * q <= max_order:
                z = IntMatrix.from_rows([[roots[0], 0], [0, roots[1]]])
                pool.append((q, ModulePart((q, q), (z,))))
        if (summand.kind == "unsplit_crossed" and summand.ring.n >= 2
                and summand.ring.weyl_order == 2 and q * q <= max_order):
            n = summand.ring.n
            u = summand.ring.weyl_units[1]
            for c in _poly_roots_mod(cyclotomic(n).coeffs, q):
                z = IntMatrix.from_rows([[c, 0], [0, pow(c, u, q)]])
                w0 = IntMatrix.identity(2)
                w1 = IntMatrix.from_rows([[0, 1], [1, 0]])
                pool.append((q, ModulePart((q, q), (z, w0, w1))))
    return pool


def _concat_parts(a: ModulePart, b: ModulePart, gen_count: int) -> ModulePart:
    orders = a.orders + b.orders
    mats = []
    for g in range(gen_count):
        ma, mb = a.mats[g], b.mats[g]
        ra, rb = a.rank, b.rank
        rows = [tuple(ma.entries[i]) + (0,) * rb for i in range(ra)]
        rows += [(0,) * ra + tuple(mb.entries[i]) for i in range(rb)]
        mats.append(IntMatrix.from_rows(rows))
    return ModulePart(orders, tuple(mats))


def random_module(rng, summand: RingSummand, max_order=81) -> AModObject:
    """A random valid module over the summand: direct sums of conjugated
    q-uniform parts for primes q coprime to N, split across the degrees."""
    pres = presentation_of(summand)
    gen_count = len(pres.gen_names)
    pool = candidate_parts(summand, max_order)
    empty = ModulePart((), tuple(IntMatrix.zero(0, 0) for _ in pres.gen_names))
    parts = [empty, empty]
    budget = max_order
    for _ in range(rng.randint(1, 2)):
        usable = [(q, p) for q, p in pool
                  if math.prod(p.orders) <= budget]
        if not usable:
            break
        q, part = usable[rng.randrange(len(usable))]
        if all(o == q for o in part.orders):
            part = conjugated_part(rng, part, q)
        d = rng.randint(0, 1)
        parts[d] = _concat_parts(parts[d], part, gen_count)
        budget //= math.prod(part.orders)
    return AModObject(summand, (parts[0], parts[1]))
