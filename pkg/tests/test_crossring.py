import pytest

from uctbench.cyclotomic import CycEltN, cyclotomic, totient
from uctbench.errors import InsufficientInversion, RingMismatch
from uctbench.crossring import (
    CrossedElt,
    CrossedRing,
    build_crossed_ring,
    companion_matrix,
    crossed_mul,
    regular_representation,
    split_ring,
    splitting_idempotents,
    target_category,
)
from uctbench.groups import cyclic_classes, preset_group
from uctbench.zlinalg import IntMatrix


def ring_for(group_name, class_order, N=None):
    G = preset_group(group_name)
    C = next(c for c in cyclic_classes(G) if c.n == class_order)
    return build_crossed_ring(C, G.order if N is None else N)


def test_build_crossed_ring_examples():
    r = ring_for("klein_four", 1, N=4)
    assert (r.n, r.weyl_order, r.rank) == (1, 4, 4)
    r = ring_for("symmetric(3)", 3, N=6)
    assert (r.n, r.weyl_order, r.rank) == (3, 2, 4)
    assert sorted(r.weyl_units) == [1, 2]
    for p in (2, 3, 5):
        r = ring_for(f"cyclic({p})", p)
        assert r.weyl_order == 1 and r.rank == p - 1 if p > 2 else True


def test_build_crossed_ring_requires_inversion():
    G = preset_group("klein_four")
    C = cyclic_classes(G)[0]
    with pytest.raises(InsufficientInversion):
        build_crossed_ring(C, 3)


def test_crossed_mul_twisted_relation():
    # In Z[theta_3, 1/6] x| Z/2 with inversion action: w z w^-1 = z^2 = -1 - z.
    r = ring_for("symmetric(3)", 3, N=6)
    theta = CycEltN(3, 6, (0, 1))
    z = CrossedElt.from_parts(r, {0: theta})
    w = CrossedElt.from_parts(r, {1: CycEltN.one(3, 6)})
    conj = w * z * w  # w has order 2
    assert conj == z * z
    assert conj == CrossedElt.from_parts(r, {0: CycEltN(3, 6, (-1, -1))})


def test_crossed_identity_and_mismatch():
    r = ring_for("symmetric(3)", 3, N=6)
    one = CrossedElt.one(r)
    x = CrossedElt.from_parts(r, {0: CycEltN(3, 6, (2, -1)), 1: CycEltN(3, 6, (0, 3))})
    assert one * x == x and x * one == x
    other = ring_for("klein_four", 2)
    with pytest.raises(RingMismatch):
        crossed_mul(x, CrossedElt.one(other))


def test_idempotents_in_group_ring_z2():
    # (1 +- w)/2 are complementary idempotents in Z[1/2][Z/2].
    r = ring_for("klein_four", 2)
    assert (r.n, r.weyl_order) == (2, 2)
    half = CycEltN.from_int(2, 4, 1, den=2)
    ep = CrossedElt.from_parts(r, {0: half, 1: half})
    em = CrossedElt.from_parts(r, {0: half, 1: CycEltN.from_int(2, 4, -1, den=2)})
    assert ep * ep == ep
    assert em * em == em
    assert (ep * em).is_zero()
    assert ep + em == CrossedElt.one(r)


def mat_poly(coeffs, M):
    n = M.rows
    out = IntMatrix.zero(n, n)
    power = IntMatrix.identity(n)
    for c in coeffs:
        if c:
            out = IntMatrix.from_rows(
                [[out.entries[i][j] + c * power.entries[i][j] for j in range(n)]
                 for i in range(n)]
            )
        power = M @ power
    return out


def mat_pow(M, k):
    out = IntMatrix.identity(M.rows)
    for _ in range(k):
        out = out @ M
    return out


@pytest.mark.parametrize("group,order", [
    ("klein_four", 1), ("klein_four", 2),
    ("symmetric(3)", 1), ("symmetric(3)", 2), ("symmetric(3)", 3),
    ("cyclic(4)", 4), ("dihedral(4)", 4),
])
def test_regular_representation_relations(group, order):
    r = ring_for(group, order)
    rep = regular_representation(r)
    rank = r.rank
    assert rep.z.rows == rank
    # Phi_n(Z) = 0
    assert mat_poly(cyclotomic(r.n).coeffs, rep.z) == IntMatrix.zero(rank, rank)
    # identity coset acts as the identity
    assert rep.cosets[0] == IntMatrix.identity(rank)
    # Weyl table relations and twisted commutation
    for a in range(r.weyl_order):
        for b in range(r.weyl_order):
            assert rep.cosets[a] @ rep.cosets[b] == rep.cosets[r.weyl_table[a][b]]
        assert rep.cosets[a] @ rep.z == mat_pow(rep.z, r.weyl_units[a]) @ rep.cosets[a]


def test_regular_representation_z3_companion():
    r = ring_for("symmetric(3)", 3, N=6)
    rep = regular_representation(r)
    # top-left block is the companion matrix of Phi_3
    comp = companion_matrix(3)
    assert comp.entries == ((0, -1), (1, -1))
    for i in range(2):
        for j in range(2):
            assert rep.z.entries[i][j] == comp.entries[i][j]


def test_split_ring_group_ring_of_zp():
    for p in (2, 3, 5, 7):
        r = ring_for(f"cyclic({p})", 1)
        parts = split_ring(r)
        assert [(s.kind, s.d, s.multiplicity) for s in parts] == (
            [("integral_local", 1, 1),
             ("integral_local" if p == 2 else "cyclotomic_local", p, 1)]
        )


def test_split_ring_sign_case():
    r = ring_for("klein_four", 2)
    parts = split_ring(r)
    assert len(parts) == 1 and parts[0].multiplicity == 2
    assert parts[0].kind == "integral_local" and parts[0].d == 2


def test_split_ring_unsplit_cases():
    r = ring_for("symmetric(3)", 3)
    parts = split_ring(r)
    assert [s.kind for s in parts] == ["unsplit_crossed"]
    assert splitting_idempotents(r) is None
    r = ring_for("symmetric(3)", 1)  # Z[1/6][S3], non-abelian Weyl group
    assert [s.kind for s in split_ring(r)] == ["unsplit_crossed"]


@pytest.mark.parametrize("group,order", [
    ("klein_four", 1), ("klein_four", 2), ("cyclic(3)", 1), ("cyclic(5)", 1),
    ("cyclic(12)", 1), ("cyclic(12)", 4), ("symmetric(3)", 2),
    ("direct_product(cyclic(2),cyclic(4))", 1),
])
def test_split_ring_rank_and_idempotents(group, order):
    r = ring_for(group, order)
    parts = split_ring(r)
    assert sum(s.rank() * s.multiplicity for s in parts) == r.rank
    idems = splitting_idempotents(r)
    if idems is None:
        assert parts[0].kind == "unsplit_crossed"
        return
    assert len(idems) == sum(s.multiplicity for s in parts)
    total = CrossedElt.zero(r)
    for i, e in enumerate(idems):
        total = total + e
        assert e * e == e, (group, order, i)
        for j, f in enumerate(idems):
            if i != j:
                assert (e * f).is_zero(), (group, order, i, j)
    assert total == CrossedElt.one(r)


def test_target_category_klein_four():
    rep = target_category(preset_group("klein_four"))
    assert rep.total_summands() == 10
    flat = rep.flat_summands()
    assert len(flat) == 10
    assert all(s.kind == "integral_local" for s in flat)
    assert rep.inverted == 4


def test_target_category_cyclic_p():
    for p in (2, 3, 5, 7):
        rep = target_category(preset_group(f"cyclic({p})"))
        flat = rep.flat_summands()
        assert len(flat) == 3
        assert [s.d for s in flat] == [1, p, p]


def test_target_category_trivial_group():
    rep = target_category(preset_group("cyclic(1)"))
    assert rep.inverted == 1
    flat = rep.flat_summands()
    assert len(flat) == 1
    assert flat[0].kind == "integral_local"
    assert flat[0].describe() == "Z"


def test_target_category_s3():
    rep = target_category(preset_group("symmetric(3)"))
    kinds = [[s.kind for s in e.summands] for e in rep.entries]
    assert kinds == [["unsplit_crossed"], ["integral_local"], ["unsplit_crossed"]]
    assert rep.entries[2].ring.rank == 4
    # one entry per conjugacy class, never merged
    assert len(rep.entries) == len(cyclic_classes(preset_group("symmetric(3)")))
    txt = rep.to_text()
    assert "total: 3 summands" in txt


def test_report_json_shape():
    rep = target_category(preset_group("klein_four"))
    d = rep.to_json_dict()
    assert d["total_summands"] == 10
    assert len(d["classes"]) == 4
    assert d["classes"][0]["weyl_order"] == 4


def test_target_category_elementary_abelian_eight():
    # (Z/2)^3: the trivial class contributes the 8 characters of the group
    # ring; each of the 7 order-2 classes has Weyl group (Z/2)^2 acting
    # trivially and splits into 4 sign summands: 8 + 7*4 = 36.
    G = preset_group("direct_product(cyclic(2),direct_product(cyclic(2),cyclic(2)))")
    rep = target_category(G)
    assert len(rep.entries) == 8
    assert rep.total_summands() == 36
    assert all(s.kind == "integral_local" for s in rep.flat_summands())


def test_target_category_dihedral_four():
    # D4: five cyclic classes; the group ring Z[1/2][D4] and the C4 crossed
    # product (inversion action) stay unsplit, the three C2 classes split by
    # sign characters into 4 + 2 + 2 integral summands.
    rep = target_category(preset_group("dihedral(4)"))
    assert [e.cyclic_class.n for e in rep.entries] == [1, 2, 2, 2, 4]
    kinds = [s.kind for s in rep.flat_summands()]
    assert kinds.count("unsplit_crossed") == 2
    assert kinds.count("integral_local") == 8
    assert rep.total_summands() == 10
    c4 = rep.entries[4]
    assert c4.ring.rank == 4
    assert sorted(c4.ring.weyl_units) == [1, 3]
    group_ring = rep.entries[0]
    assert group_ring.ring.rank == 8
    assert group_ring.summands[0].kind == "unsplit_crossed"
