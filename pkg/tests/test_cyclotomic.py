import random

import pytest

from uctbench.cyclotomic import (
    CycEltN,
    CycPoly,
    IntPoly,
    crt_join,
    crt_split,
    cyclotomic,
    divisors,
    evaluate_at_root,
    galois,
    order_mod,
    psi,
    totient,
)
from uctbench.errors import ModulusMismatch, NotADivisor, NotAUnit, PrimeNotInverted


def test_cyclotomic_small():
    assert cyclotomic(1).coeffs == (-1, 1)
    assert cyclotomic(2).coeffs == (1, 1)
    assert cyclotomic(6).coeffs == (1, -1, 1)
    assert cyclotomic(12).coeffs == (1, 0, -1, 0, 1)


def test_cyclotomic_product_identity():
    # prod_{k | n} Phi_k(z) = z^n - 1
    for n in range(1, 121):
        prod = IntPoly((1,))
        for k in divisors(n):
            prod = prod * cyclotomic(k)
        assert prod.coeffs == (-1,) + (0,) * (n - 1) + (1,), n


def test_cyclotomic_degree_is_totient():
    for n in range(1, 80):
        assert cyclotomic(n).degree == totient(n)


def test_cyclotomic_matches_sympy():
    pytest.importorskip("sympy")
    from sympy import Poly, cyclotomic_poly
    from sympy.abc import x

    for n in range(1, 121):
        theirs = Poly(cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert list(cyclotomic(n).coeffs) == [int(c) for c in theirs], n


def test_psi_hand_values():
    assert psi(2, 1).num == (1, 1) and psi(2, 1).den == 2
    assert psi(2, 2).num == (1, -1) and psi(2, 2).den == 2
    assert psi(1, 1) == CycPoly.one(1, 1)


def test_psi_requires_divisor():
    with pytest.raises(NotADivisor):
        psi(4, 3)


def test_psi_denominator_needs_inversion():
    with pytest.raises(PrimeNotInverted):
        psi(2, 1, N=3)


def test_psi_idempotent_laws():
    for n in range(1, 31):
        ds = divisors(n)
        ps = {k: psi(n, k) for k in ds}
        one = CycPoly.one(n, n)
        zero = CycPoly.zero(n, n)
        total = zero
        for k in ds:
            total = total + ps[k]
            assert ps[k] * ps[k] == ps[k], (n, k)
            for l in ds:
                if l != k:
                    assert ps[k] * ps[l] == zero, (n, k, l)
        assert total == one, n


def test_n_psi_is_integral():
    for n in range(1, 41):
        for k in divisors(n):
            assert (psi(n, k) * n).den == 1, (n, k)


def test_ring_ops_and_mismatch():
    a = CycPoly(4, 2, (1, 2, 0, -1))
    one = CycPoly.one(4, 2)
    assert a * one == a
    assert a + CycPoly.zero(4, 2) == a
    with pytest.raises(ModulusMismatch):
        a * CycPoly.one(3, 2)
    with pytest.raises(ModulusMismatch):
        a + CycPoly.one(4, 6)


def test_evaluate_at_root_examples():
    z = CycPoly.monomial(5, 1, 1)
    assert evaluate_at_root(z, 0) == CycEltN.one(5, 1)
    # psi(6,3) is the characteristic function of elements of order 3 in Z/6.
    p63 = psi(6, 3)
    assert evaluate_at_root(p63, 2) == CycEltN.one(6, 6)
    assert evaluate_at_root(p63, 3) == CycEltN.zero(6, 6)
    onez = CycPoly(2, 2, (1, 1))
    assert evaluate_at_root(onez, 1) == CycEltN.zero(2, 2)


def test_character_of_psi_is_order_indicator():
    for n in range(1, 31):
        for k in divisors(n):
            p = psi(n, k)
            for j in range(n):
                want = CycEltN.one(n, n) if order_mod(j, n) == k else CycEltN.zero(n, n)
                assert evaluate_at_root(p, j) == want, (n, k, j)


def test_galois():
    a = CycEltN(3, 1, (0, 1))  # theta_3
    assert galois(a, 1) == a
    assert galois(a, 2) == CycEltN(3, 1, (-1, -1))
    b = CycEltN(5, 1, (0, 1, 0, 0))
    assert galois(galois(b, 2), 3) == b  # 2*3 = 1 mod 5
    with pytest.raises(NotAUnit):
        galois(b, 5)


def test_crt_split_examples():
    z = CycPoly.monomial(2, 2, 1)
    parts = crt_split(z)
    assert parts[1] == CycEltN(1, 2, (1,))
    assert parts[2] == CycEltN(2, 2, (-1,))
    one = CycPoly.one(6, 6)
    for k, v in crt_split(one).items():
        assert v == CycEltN.one(k, 6), k


def test_crt_split_requires_inversion():
    with pytest.raises(PrimeNotInverted):
        crt_split(CycPoly.monomial(2, 1, 1))


def test_crt_roundtrip_and_multiplicativity():
    a = CycPoly(3, 3, (3, 5, 7))
    assert crt_join(crt_split(a)) == a
    rng = random.Random(7)
    for n in (2, 3, 4, 6, 8, 9, 12):
        for _ in range(10):
            x = CycPoly(n, n, tuple(rng.randint(-5, 5) for _ in range(n)))
            y = CycPoly(n, n, tuple(rng.randint(-5, 5) for _ in range(n)))
            assert crt_join(crt_split(x)) == x
            sx, sy, sxy = crt_split(x), crt_split(y), crt_split(x * y)
            for k in divisors(n):
                assert sx[k] * sy[k] == sxy[k], (n, k)


def test_cyceltn_arithmetic():
    t = CycEltN(4, 2, (0, 1))  # theta_4 = i
    assert t * t == CycEltN.from_int(4, 2, -1)
    half = CycEltN(4, 2, (1, 0), 2)
    assert half + half == CycEltN.one(4, 2)
    assert (half * 2) == CycEltN.one(4, 2)


def test_denominator_normalization():
    a = CycPoly(2, 6, (2, 4), 6)
    assert a.num == (1, 2) and a.den == 3
    z = CycPoly(3, 3, (0, 0, 0), 9)
    assert z.den == 1


def test_json_roundtrip():
    import json

    a = psi(6, 3)
    blob = json.dumps(a.to_json_dict())
    back = CycPoly.from_json_dict(json.loads(blob))
    assert back == a
    big = CycEltN(4, 2, (10 ** 30 + 1, -(10 ** 25)), 4)
    parsed = json.loads(json.dumps(big.to_json_dict()))
    assert parsed["coeffs"][0] == str(10 ** 30 + 1)
    assert parsed["den"] == "4"
    assert CycEltN.from_json_dict(parsed) == big
