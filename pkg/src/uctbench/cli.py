"""Command-line front end: group reports, target-category reports,
verification suites, and UCT order queries.

Exit codes: 0 success, 1 verification failure, 2 input error.  Identical
inputs produce byte-identical output (fixed orderings, recorded seed).
WORKBENCH_THREADS caps the worker count used for independent verification
items; results are assembled in item order regardless of completion order.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

from . import __version__
from .amod import family_from_json, uct_order
from .crossring import (
    CrossedElt,
    build_crossed_ring,
    regular_representation,
    split_ring,
    splitting_idempotents,
    target_category,
)
from .cyclotomic import (
    CycPoly,
    crt_join,
    crt_split,
    cyclotomic,
    divisors,
    evaluate_at_root,
    order_mod,
    psi,
    totient,
)
from .errors import InputError, WorkbenchError
from .green import frobenius_check, induce, p_idempotent
from .groups import FiniteGroup, cyclic_classes, group_from_table, preset_group
from .zlinalg import IntMatrix


def load_group(src: str) -> FiniteGroup:
    """Group source: 'preset:<name>' or a path to a JSON group file."""
    if src.startswith("preset:"):
        return preset_group(src[len("preset:"):])
    try:
        with open(src, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read group file {src!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{src}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{src}: group file must be a JSON object")
    if "preset" in data:
        return preset_group(data["preset"])
    if "table" not in data:
        raise InputError(f"{src}: need either 'preset' or 'table'")
    G = group_from_table(data["table"], data.get("labels"))
    declared = data.get("order")
    if declared is not None and declared != G.order:
        raise InputError(f"{src}: declared order {declared} != table size {G.order}")
    return G


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# group-info and target-category


def cmd_group_info(args) -> int:
    G = load_group(args.src)
    classes = cyclic_classes(G)
    payload = {
        "order": G.order,
        "identity": G.identity,
        "element_orders": [G.element_order(x) for x in range(G.order)],
        "classes": [
            {
                "generator_order": c.n,
                "generator": c.representative.generator,
                "elements": list(c.representative.elements),
                "class_size": c.class_size,
                "normalizer_size": len(c.normalizer),
                "weyl_order": c.weyl_order,
                "weyl_units": list(c.weyl_units),
            }
            for c in classes
        ],
    }
    lines = [f"group of order {G.order}, identity {G.label(G.identity)}"]
    lines.append(f"{len(classes)} conjugacy classes of cyclic subgroups:")
    lines.append(f"{'idx':>4} {'n':>4} {'size':>5} {'|N_H|':>6} {'|W|':>4}  units")
    for i, c in enumerate(classes):
        lines.append(
            f"{i:>4} {c.n:>4} {c.class_size:>5} {len(c.normalizer):>6}"
            f" {c.weyl_order:>4}  {list(c.weyl_units)}"
        )
    _emit(payload, args.json, "\n".join(lines))
    return 0


def cmd_target_category(args) -> int:
    G = load_group(args.src)
    report = target_category(G)
    _emit(report.to_json_dict(), args.json, report.to_text())
    return 0


# ---------------------------------------------------------------------------
# verification suites

CheckItem = tuple[str, Callable[[], tuple[int, Optional[str]]]]


def _suite_psi(bound: int, seed: int) -> list[CheckItem]:
    def item(n: int):
        def run():
            checks = 0
            ds = divisors(n)
            ps = {k: psi(n, k) for k in ds}
            total = CycPoly.zero(n, n)
            for k in ds:
                if (ps[k] * n).den != 1:
                    return checks, f"n*psi_{{{n},{k}}} is not integral"
                checks += 1
                if ps[k] * ps[k] != ps[k]:
                    return checks, f"psi_{{{n},{k}}}^2 != psi_{{{n},{k}}}"
                checks += 1
                for l in ds:
                    if l != k:
                        if not (ps[k] * ps[l]).is_zero():
                            return checks, f"psi_{{{n},{k}}}*psi_{{{n},{l}}} != 0"
                        checks += 1
                total = total + ps[k]
            if total != CycPoly.one(n, n):
                return checks, f"sum of psi_{{{n},k}} != 1"
            return checks + 1, None
        return run

    return [(f"n={n}", item(n)) for n in range(1, bound + 1)]


def _suite_characters(bound: int, seed: int) -> list[CheckItem]:
    def item(n: int):
        def run():
            checks = 0
            from .cyclotomic import CycEltN

            one = CycEltN.one(n, n)
            zero = CycEltN.zero(n, n)
            for k in divisors(n):
                p = psi(n, k)
                for j in range(n):
                    want = one if order_mod(j, n) == k else zero
                    if evaluate_at_root(p, j) != want:
                        return checks, f"char(psi_{{{n},{k}}})({j}) != [ord({j})={k}]"
                    checks += 1
            return checks, None
        return run

    return [(f"n={n}", item(n)) for n in range(1, bound + 1)]


def _suite_frobenius(bound: int, seed: int) -> list[CheckItem]:
    items: list[CheckItem] = []

    def item(n: int, k: int):
        def run():
            checks = 0
            w = n // k
            ind = induce(p_idempotent(k, k, n), n)
            if ind != p_idempotent(n, k, n) * w:
                return checks, f"ind(p_{{{k},{k}}}) != {w} * p_{{{n},{k}}}"
            checks += 1
            rep = frobenius_check(n, k)
            checks += rep.checked
            if not rep.passed:
                a, b = rep.counterexample
                return checks, f"ind(res(z^{b})*z^{a}) != z^{b}*ind(z^{a}) at (n,k)=({n},{k})"
            return checks, None
        return run

    for n in range(1, bound + 1):
        for k in divisors(n):
            items.append((f"n={n},k={k}", item(n, k)))
    return items


def _suite_crt(bound: int, seed: int) -> list[CheckItem]:
    rng = random.Random(seed)
    ns = [n for n in range(2, bound + 1)] or [1]
    pairs = []
    for i in range(100):
        n = ns[i % len(ns)]
        x = tuple(rng.randint(-9, 9) for _ in range(n))
        y = tuple(rng.randint(-9, 9) for _ in range(n))
        pairs.append((n, x, y))

    def roundtrip_item(n: int):
        def run():
            checks = 0
            for coeffs in ((1,) + (0,) * (n - 1), tuple(range(1, n + 1))):
                a = CycPoly(n, n, coeffs)
                if crt_join(crt_split(a)) != a:
                    return checks, f"crt_join(crt_split(.)) != id at n={n}"
                checks += 1
            return checks, None
        return run

    def pair_item(idx: int, n: int, xc, yc):
        def run():
            checks = 0
            x = CycPoly(n, n, xc)
            y = CycPoly(n, n, yc)
            sx, sy, sxy = crt_split(x), crt_split(y), crt_split(x * y)
            for k in divisors(n):
                if sx[k] * sy[k] != sxy[k]:
                    return checks, f"crt_split not multiplicative at n={n}, k={k}, pair {idx}"
                checks += 1
            if crt_join(sxy) != x * y:
                return checks, f"crt roundtrip failed on product, n={n}, pair {idx}"
            return checks + 1, None
        return run

    items: list[CheckItem] = [(f"roundtrip n={n}", roundtrip_item(n))
                              for n in range(1, bound + 1)]
    items += [(f"pair {i} (n={n})", pair_item(i, n, x, y))
              for i, (n, x, y) in enumerate(pairs)]
    return items


def _crossed_preset_names(bound: int) -> list[str]:
    names = [f"cyclic({n})" for n in range(1, bound + 1)]
    if bound >= 4:
        names.append("klein_four")
    names += [f"dihedral({m})" for m in range(3, bound // 2 + 1)]
    if bound >= 6:
        names.append("symmetric(3)")
    if bound >= 24:
        names.append("symmetric(4)")
    return names


def _suite_crossed(bound: int, seed: int) -> list[CheckItem]:
    items: list[CheckItem] = []

    def item(name: str, class_index: int):
        def run():
            checks = 0
            G = preset_group(name)
            C = cyclic_classes(G)[class_index]
            ring = build_crossed_ring(C, G.order)
            rep = regular_representation(ring)
            rank = ring.rank
            # Phi_n(Z) = 0
            phi = cyclotomic(ring.n).coeffs
            acc = IntMatrix.zero(rank, rank)
            power = IntMatrix.identity(rank)
            for c in phi:
                if c:
                    acc = IntMatrix.from_rows(
                        [[acc.entries[i][j] + c * power.entries[i][j]
                          for j in range(rank)] for i in range(rank)]
                    )
                power = rep.z @ power
            if acc != IntMatrix.zero(rank, rank):
                return checks, f"{name}[{class_index}]: Phi_n(Z) != 0"
            checks += 1
            for a in range(ring.weyl_order):
                for b in range(ring.weyl_order):
                    if rep.cosets[a] @ rep.cosets[b] != rep.cosets[ring.weyl_table[a][b]]:
                        return checks, f"{name}[{class_index}]: coset table relation fails"
                    checks += 1
                zpow = IntMatrix.identity(rank)
                for _ in range(ring.weyl_units[a]):
                    zpow = zpow @ rep.z
                if rep.cosets[a] @ rep.z != zpow @ rep.cosets[a]:
                    return checks, f"{name}[{class_index}]: twisted commutation fails"
                checks += 1
            # associativity and unit on seeded random triples
            rng = random.Random(f"{seed}:{name}:{class_index}")
            from .cyclotomic import CycEltN

            def rand_elt():
                deg = totient(ring.n)
                return CrossedElt(ring, tuple(
                    CycEltN(ring.n, ring.N,
                            tuple(rng.randint(-3, 3) for _ in range(deg)))
                    for _ in range(ring.weyl_order)
                ))

            one = CrossedElt.one(ring)
            for _ in range(4):
                x, y, z = rand_elt(), rand_elt(), rand_elt()
                if (x * y) * z != x * (y * z):
                    return checks, f"{name}[{class_index}]: associativity fails"
                checks += 1
                if x * one != x or one * x != x:
                    return checks, f"{name}[{class_index}]: unit fails"
                checks += 1
            # splitting sanity
            parts = split_ring(ring)
            if sum(s.rank() * s.multiplicity for s in parts) != ring.rank:
                return checks, f"{name}[{class_index}]: summand ranks do not sum to rank"
            checks += 1
            idems = splitting_idempotents(ring)
            if idems is not None:
                total = CrossedElt.zero(ring)
                for i, e in enumerate(idems):
                    total = total + e
                    if e * e != e:
                        return checks, f"{name}[{class_index}]: idempotent {i} fails e^2=e"
                    checks += 1
                    for j, f in enumerate(idems):
                        if i != j and not (e * f).is_zero():
                            return checks, f"{name}[{class_index}]: idempotents {i},{j} not orthogonal"
                if total != one:
                    return checks, f"{name}[{class_index}]: idempotents do not sum to 1"
                checks += 1
            return checks, None
        return run

    for name in _crossed_preset_names(bound):
        G = preset_group(name)
        if G.order > bound:
            continue
        for ci in range(len(cyclic_classes(G))):
            items.append((f"{name}[{ci}]", item(name, ci)))
    return items


SUITES = {
    "psi-identities": _suite_psi,
    "characters": _suite_characters,
    "frobenius": _suite_frobenius,
    "crt": _suite_crt,
    "crossed-relations": _suite_crossed,
}


def _thread_count() -> int:
    raw = os.environ.get("WORKBENCH_THREADS", "1")
    try:
        val = int(raw)
    except ValueError as exc:
        raise InputError(f"WORKBENCH_THREADS={raw!r} is not an integer") from exc
    return max(val, 1)


def cmd_verify(args) -> int:
    suite = SUITES.get(args.suite)
    if suite is None:
        raise InputError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    if args.max_n < 1:
        raise InputError("--max-n must be >= 1")
    items = suite(args.max_n, args.seed)
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda it: it[1](), items))
    else:
        results = [fn() for _, fn in items]
    checks = sum(c for c, _ in results)
    failure = None
    for (key, _), (_, err) in zip(items, results):
        if err is not None:
            failure = (key, err)
            break
    payload = {
        "suite": args.suite,
        "max_n": args.max_n,
        "seed": args.seed,
        "threads": threads,
        "items": len(items),
        "checks": checks,
        "passed": failure is None,
        "counterexample": None if failure is None else f"{failure[0]}: {failure[1]}",
    }
    if failure is None:
        text = (f"suite {args.suite}: PASS"
                f" ({len(items)} items, {checks} checks, max n {args.max_n},"
                f" seed {args.seed})")
    else:
        text = (f"suite {args.suite}: FAIL at {failure[0]}: {failure[1]}\n"
                f"({checks} checks ran, max n {args.max_n}, seed {args.seed})")
    _emit(payload, args.json, text)
    return 0 if failure is None else 1


# ---------------------------------------------------------------------------
# uct


def _group_json(g) -> dict:
    return {"factors": list(g.factors), "free_rank": g.free_rank,
            "order": g.order(), "name": str(g)}


def cmd_uct(args) -> int:
    G = load_group(args.src)
    report = target_category(G)
    fam_a = family_from_json(report, _load_json(args.a))
    fam_b = family_from_json(report, _load_json(args.b))
    for tag, fam in (("A", fam_a), ("B", fam_b)):
        rep = fam.validate()
        if not rep.ok:
            raise InputError(f"family {tag} invalid: {rep.message}")
    res = uct_order(fam_a, fam_b)
    payload = {}
    lines = []
    for d in (0, 1):
        deg = res.degrees[d]
        payload[f"degree{d}"] = {
            "hom": _group_json(deg.hom_group),
            "ext": _group_json(deg.ext_group),
            "kk_order": deg.kk_order,
        }
        lines.append(
            f"degree {d}: hom = {deg.hom_group} (order {deg.hom_group.order()}),"
            f" ext = {deg.ext_group} (order {deg.ext_group.order()}),"
            f" kk order {deg.kk_order}"
        )
    _emit(payload, args.json, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Exact-arithmetic workbench for cyclic-subgroup "
                    "target categories and UCT order computations.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-info", help="order, element orders, cyclic classes")
    p.add_argument("src", help="preset:<name> or path to a JSON group file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_group_info)

    p = sub.add_parser("target-category", help="ring summands per cyclic class")
    p.add_argument("src")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_target_category)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("uct", help="hom/ext orders for two module families")
    p.add_argument("src")
    p.add_argument("--a", required=True, help="module family file for A")
    p.add_argument("--b", required=True, help="module family file for B")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_uct)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
