"""Exact-arithmetic workbench: cyclotomic idempotents, representation-ring
restriction/induction, crossed products over cyclic subgroup classes, and
Hom/Ext order computations for modules over the resulting ring summands."""

__version__ = "0.1.0"

from .amod import (
    AModFamily,
    AModObject,
    direct_sum,
    ext_group,
    family_from_json,
    hom_group,
    suspend,
    uct_order,
    validate,
)
from .crossring import (
    CrossedElt,
    CrossedRing,
    RingSummand,
    TargetCategoryReport,
    build_crossed_ring,
    crossed_mul,
    regular_representation,
    split_ring,
    splitting_idempotents,
    target_category,
)
from .cyclotomic import (
    CycEltN,
    CycPoly,
    IntPoly,
    crt_join,
    crt_split,
    cyc_add,
    cyc_mul,
    cyc_sub,
    cyclotomic,
    evaluate_at_root,
    galois,
    psi,
)
from .green import (
    CharFn,
    RepElt,
    conjugate_rep,
    decompose_generator,
    frobenius_check,
    induce,
    restrict,
    to_character,
)
from .groups import (
    CyclicClass,
    CyclicSubgroup,
    FiniteGroup,
    cyclic_classes,
    group_from_table,
    preset_group,
    weyl_action_on_units,
)
from .zlinalg import (
    FinAbGroup,
    IntMatrix,
    hnf,
    lattice_kernel_localized,
    snf,
    solve_mod,
)
