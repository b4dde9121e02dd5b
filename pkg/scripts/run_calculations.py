#!/usr/bin/env python3
"""Reproduce every headline calculation deterministically.

Prints the truncated fundamental categories of the interval family, the
line and circle spaces, the product comparisons, the classification
grid, the reflector algebra, the quotient construction, and the winding
cover audits.  All output is sorted and bound-stamped, so two runs are
byte-identical.
"""
from __future__ import annotations

import sys

from cspace import (
    QuotientSpec,
    border_flexibility,
    check_lifting_bijection,
    check_product_preservation,
    circle_n_stop,
    exponential_cover,
    fundamental_monoid,
    has_total_path_support,
    interval_c,
    interval_delayed_minus,
    interval_delayed_plus,
    interval_j,
    interval_middle_delay,
    interval_reversible,
    is_border_flexible,
    is_flexible_space,
    is_one_simple,
    is_preflexible,
    line_c,
    oracle_equivalent,
    pi1,
    preflexibility,
    product,
    quotient,
    reflect_bf,
    reflect_dhat,
    reflect_fl,
    reflect_pf,
    render_id,
    rigid_line,
    symmetrize,
    validate_covering,
)
from cspace.spaces import diagonal_square


def section(title: str) -> None:
    print()
    print(title)
    print("-" * len(title))


def word(route) -> str:
    return "[" + ",".join(render_id(e) for e in route.edges) + "]"


def show_category(name: str, X, bound: int) -> None:
    cat = pi1(X, bound)
    objs = ",".join(render_id(v) for v in cat.objects)
    print(
        f"{name} (bound {bound}): objects {objs}; {cat.arrow_count} arrow classes; "
        f"preorder {'yes' if cat.is_preorder() else 'no'}; "
        f"truncated {'yes' if cat.possibly_incomplete else 'no'}"
    )
    for x in cat.objects:
        for y in cat.objects:
            hom = cat.hom(x, y)
            if hom:
                reps = ", ".join(word(a.rep) for a in hom)
                print(f"  hom({render_id(x)},{render_id(y)}): {reps}")


def main() -> int:
    section("Interval family categories")
    show_category("plain interval", interval_c(), 2)
    show_category("two-step interval", interval_j(), 3)
    show_category("start-delayed interval", interval_delayed_minus(), 2)
    show_category("middle-delay interval", interval_middle_delay(), 3)

    section("Line window [-3,3] (bound 6)")
    cat = pi1(line_c(3), 6)
    print(f"{cat.arrow_count} arrow classes; truncated "
          f"{'yes' if cat.possibly_incomplete else 'no'}")
    order_ok = all(
        len(cat.hom(str(i), str(j))) == (1 if i <= j else 0)
        for i in range(-3, 4) for j in range(-3, 4)
    )
    print(f"hom(k,k') singleton exactly when k <= k': {'yes' if order_ok else 'NO'}")

    section("One-stop circle monoid (bound 5)")
    table = fundamental_monoid(circle_n_stop(1), "0", 5)
    print(f"{len(table.classes)} classes; identity {table.identity_index}; "
          f"truncated {'yes' if table.truncated else 'no'}")
    for i, row in enumerate(table.table):
        print(f"  {i}: " + " ".join("-" if v is None else str(v) for v in row))

    section("Three-stop circle (bound 7)")
    cat = pi1(circle_n_stop(3), 7)
    print(f"{cat.arrow_count} arrow classes")
    for i in range(3):
        for j in range(3):
            lengths = sorted(len(a.rep.edges) for a in cat.hom(str(i), str(j)))
            print(f"  hom({i},{j}) lengths: {lengths}")

    section("Products and the comparison functor")
    ci, cj = interval_c(), interval_j()
    staircase = pi1(product(ci, ci), 4)
    print("interval^2 hom((0,0),(1,1)) classes:",
          len(staircase.hom(("0", "0"), ("1", "1"))))
    for label, left, right, bound in (
        ("interval^2", ci, ci, 4),
        ("interval x two-step", ci, cj, 5),
        ("two-step^2", cj, cj, 5),
        ("line^2 window 2", line_c(2), line_c(2), 8),
    ):
        rep = check_product_preservation(left, right, bound)
        print(f"{label} (bound {bound}): {rep.product_objects} objects, "
              f"{rep.product_arrows} arrows, bijective "
              f"{'yes' if bool(rep) else 'NO'}")

    section("Classification grid")
    corpus = [
        ("plain interval", interval_c()),
        ("two-step interval", interval_j()),
        ("start-delayed interval", interval_delayed_minus()),
        ("end-delayed interval", interval_delayed_plus()),
        ("middle-delay interval", interval_middle_delay()),
        ("reversible interval", interval_reversible()),
        ("line window 3", line_c(3)),
        ("one-stop circle", circle_n_stop(1)),
        ("three-stop circle", circle_n_stop(3)),
        ("rigid two-step line", rigid_line(2)),
        ("diagonal square", diagonal_square()),
    ]
    for name, X in corpus:
        flags = [
            "flexible" if is_flexible_space(X) else "-",
            "border-flexible" if is_border_flexible(X) else "-",
            "preflexible(6)" if is_preflexible(X, 6) else "-",
            "one-simple(4)" if is_one_simple(X, 4) else "-",
            "total-support" if has_total_path_support(X) else "-",
        ]
        print(f"{name:24s} {' '.join(flags)}")
    for name, X in corpus:
        b = border_flexibility(X)
        if not b.holds:
            print(f"witness ({name}): {b.witnesses[0]} is not controlled")
        p = preflexibility(X, 6)
        if not p.holds:
            print(f"witness ({name}): {p.witness} generated but not controlled")

    section("Reflector algebra")
    dm = interval_delayed_minus()
    print("hull(start-delayed) == plain interval:",
          "yes" if oracle_equivalent(reflect_pf(dm), interval_c(), 3) else "NO")
    print("border(start-delayed) == plain interval:",
          "yes" if oracle_equivalent(reflect_bf(dm), interval_c(), 3) else "NO")
    algebra_ok = all(
        oracle_equivalent(reflect_dhat(reflect_bf(X)), reflect_dhat(X), 4)
        for _, X in corpus
    )
    print("generated-of-border == generated (bound 4, corpus):",
          "yes" if algebra_ok else "NO")
    idem_ok = all(
        oracle_equivalent(reflect(reflect(X)), reflect(X), 4)
        for _, X in corpus
        for reflect in (reflect_dhat, reflect_fl, reflect_pf, reflect_bf)
    )
    print("all four reflectors idempotent (bound 4, corpus):",
          "yes" if idem_ok else "NO")

    section("Quotient of the rigid two-step line")
    Q = quotient(rigid_line(2), QuotientSpec(blocks=[["1", "2"]], collapse=["e1"]))
    same = oracle_equivalent(Q, interval_delayed_plus(), 3,
                             {"0": "0", "1": "1"}, {"e0": "e"})
    print("collapse second edge == end-delayed interval:", "yes" if same else "NO")

    section("Winding covers")
    for stops, window, bound in ((1, 5, 5), (3, 6, 6)):
        cover = exponential_cover(stops, window)
        rep = validate_covering(cover, bound)
        print(f"cover of {stops}-stop circle, window {window} (bound {bound}): "
              f"{'valid' if rep.valid else 'INVALID'} "
              f"({rep.checked_lifts} lifts checked, {rep.skipped_lifts} skipped)")
        for target in (str(k) for k in range(stops)):
            bij = check_lifting_bijection(cover, "0", target, bound)
            print(f"  hom(0,{target}): base {bij.base_classes} == "
                  f"lifted {bij.total_classes}; bijection "
                  f"{'yes' if bij.bijective else 'NO'}")

    section("Symmetrized one-stop circle (bound 4)")
    table = fundamental_monoid(symmetrize(circle_n_stop(1)), "0", 4)
    windings = sorted(
        sum(1 if e == "e0" else -1 for e in c.rep.edges) for c in table.classes
    )
    print(f"{len(table.classes)} classes; windings {windings}")

    print()
    print("all calculations reproduced")
    return 0


if __name__ == "__main__":
    sys.exit(main())
