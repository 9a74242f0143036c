import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from charlevels.chartab import (
    NotACharacterError,
    character_table,
    class_algebra_constants,
    class_function,
    det_order,
    dixon_prime,
    eigenvalue_multiplicities,
    inner_product,
    product_character,
    restrict,
    table_from_dict,
)
from charlevels.cyclo import Cyclotomic, E, root_of_unity
from charlevels.groups import BUILTIN_CORPUS_LABELS
from charlevels.permgrp import CapExceeded, PermGroup, from_cycles, mul

from conftest import context, group, table
from oracles import abelian_dual_table, class_constant

GOLDEN = Path(__file__).parent / "golden"


def members(cd):
    out = [[] for _ in range(len(cd))]
    for g, c in cd.class_of.items():
        out[c].append(g)
    return out


# -- class algebra constants -------------------------------------------------

def test_class_constants_c3():
    a = class_algebra_constants(group("cyclic:3"))
    cd = context("cyclic:3").classes
    x = cd.representatives[1]
    i = cd.class_of[x]
    k = cd.class_of[mul(x, x)]
    assert a[i][i][k] == 1


def test_class_constants_s3_transpositions():
    # Full pair enumeration gives 3: each 3-cycle is a product of 3 ordered
    # transposition pairs.
    cd = context("symmetric:3").classes
    a = class_algebra_constants(cd)
    t = cd.element_orders.index(2)
    c = cd.element_orders.index(3)
    assert a[t][t][c] == 3
    ms = members(cd)
    assert a[t][t][c] == class_constant(ms[t], ms[t], cd.representatives[c])


@pytest.mark.parametrize("label", ["symmetric:4", "quaternion8", "dihedral:10", "alternating:4"])
def test_class_constants_brute_force(label):
    cd = context(label).classes
    a = class_algebra_constants(cd)
    ms = members(cd)
    r = len(cd)
    for i in range(r):
        for j in range(r):
            for k in range(r):
                assert a[i][j][k] == class_constant(ms[i], ms[j], cd.representatives[k])
    for j in range(r):
        for k in range(r):
            assert a[0][j][k] == (1 if j == k else 0)


def test_class_constants_cap():
    with pytest.raises(CapExceeded):
        class_algebra_constants(group("symmetric:5"), max_order=50)


# -- table examples ----------------------------------------------------------

def test_s3_table():
    t = table("symmetric:3")
    assert t.degrees() == [1, 1, 2]
    assert all(v.is_rational() and v.rational_value().denominator == 1 for chi in t for v in chi.values)


def test_c4_table():
    t = table("cyclic:4")
    allowed = {Cyclotomic(1), Cyclotomic(-1), E(4), -E(4)}
    assert len(t) == 4 and t.degrees() == [1] * 4
    assert all(v in allowed for chi in t for v in chi.values)


def test_psl2_8_degrees():
    t = table("psl2:8")
    assert t.degrees() == [1, 7, 7, 7, 7, 8, 9, 9, 9]
    assert sum(d * d for d in t.degrees()) == 504


def test_dixon_prime():
    l = dixon_prime(504, 126)
    assert l % 126 == 1 and l * l > 4 * 504
    assert all(q % 126 != 1 or q * q <= 4 * 504 or any(q % d == 0 for d in range(2, q)) for q in range(2, l))


def test_class_cap():
    with pytest.raises(CapExceeded, match="max_classes=5"):
        character_table(group("symmetric:5"), max_classes=5)


def test_trivial_group():
    t = character_table(PermGroup(1, []))
    assert t.degrees() == [1]


def test_golden_psl2_8():
    doc = json.loads((GOLDEN / "psl2_8_table.json").read_text())
    gold = table_from_dict(doc)
    t = table("psl2:8")
    mine = t.to_dict()
    for key in ("group_order", "exponent", "class_sizes", "element_orders", "power_maps"):
        assert mine[key] == doc[key]
    assert [list(chi.values) for chi in t] == gold["characters"]


def test_table_is_deterministic():
    G = group("psl2:7")
    assert character_table(G).to_json() == character_table(G).to_json()


# -- products, inner products, restriction, det -------------------------------

def s3_chars():
    t = table("symmetric:3")
    return t, t[0], t[1], t[2]


def test_inner_products_s3():
    t, triv, sgn, std = s3_chars()
    for chi in t:
        for psi in t:
            assert inner_product(chi, psi) == (1 if chi is psi else 0)
    sq = product_character(std, std)
    assert not sq.irreducible
    assert inner_product(sq, triv) == 1
    assert [inner_product(sq, c) for c in t] == [1, 1, 1]


def test_products():
    t, triv, sgn, std = s3_chars()
    assert product_character(sgn, std).values == std.values
    assert product_character(triv, std).values == std.values
    c4 = table("cyclic:4")
    lam = next(chi for chi in c4 if E(4) in chi.values)
    sq = product_character(lam, lam)
    g = next(j for j in range(4) if lam.values[j] == E(4))
    assert sq.values[g] == -1


def test_mismatched_class_data():
    with pytest.raises(ValueError):
        inner_product(table("symmetric:3")[0], table("cyclic:3")[0])


def test_restrict():
    t, triv, sgn, std = s3_chars()
    G = group("symmetric:3")
    C3 = PermGroup(3, [from_cycles([[1, 2, 3]], 3)])
    res = restrict(std, C3)
    assert sorted(str(v) for v in res.values) == ["-1", "-1", "2"]
    tc3 = character_table(C3, classes=res.classes)
    mult = [inner_product(res, lam) for lam in tc3]
    assert sorted(mult) == [0, 1, 1]
    assert restrict(std, G).values == std.values
    assert set(restrict(triv, C3).values) == {Cyclotomic(1)}


def test_restrict_outside_group():
    t, triv, sgn, std = s3_chars()
    H = PermGroup(4, [from_cycles([[1, 2, 3, 4]], 4)])
    with pytest.raises(ValueError):
        restrict(std, H)


def test_det_order_examples():
    t4 = table("symmetric:4")
    sgn = next(chi for chi in t4 if chi.degree == 1 and chi is not t4[0])
    assert det_order(sgn) == 2
    t, triv, sgn3, std = s3_chars()
    assert det_order(std) == 2
    assert det_order(triv) == 1


def test_det_order_rejects_non_characters():
    cd = table("symmetric:3").classes
    half = class_function([Fraction(1, 2)] * 3, cd)
    with pytest.raises(NotACharacterError):
        det_order(half)
    neg = class_function([-1, -1, -1], cd)
    with pytest.raises(NotACharacterError):
        det_order(neg)


# -- validity over the corpus ---------------------------------------------------

def check_table(label):
    """Return a list of violated properties (empty when the table is valid)."""
    ctx = context(label)
    t, cd = ctx.table, ctx.classes
    r, n = len(cd), ctx.order
    bad = []
    if len(t) != r:
        bad.append("row count")
    if sum(cd.sizes) != n:
        bad.append("class equation")
    if sum(d * d for d in t.degrees()) != n:
        bad.append("sum of squares")
    if any(n % d for d in t.degrees()):
        bad.append("degree divides order")
    for i, chi in enumerate(t):
        for k, psi in enumerate(t):
            if inner_product(chi, psi) != (1 if i == k else 0):
                bad.append(f"row orthogonality {i},{k}")
    for j in range(r):
        for k in range(r):
            s = sum((chi.values[j] * chi.values[k].conjugate() for chi in t), Cyclotomic(0))
            want = n // cd.sizes[j] if j == k else 0
            if s != want:
                bad.append(f"column orthogonality {j},{k}")
    rows = {chi.values for chi in t}
    for k in range(1, t.exponent):
        if math.gcd(k, t.exponent) != 1:
            continue
        for chi in t:
            if tuple(v.galois(k) for v in chi.values) not in rows:
                bad.append(f"galois closure k={k}")
    for chi in t:
        for j in range(r):
            try:
                m = eigenvalue_multiplicities(chi, j)
            except NotACharacterError:
                bad.append("multiplicities")
                continue
            if sum(m) != chi.degree or min(m) < 0:
                bad.append("multiplicities sum")
    return bad


@pytest.mark.parametrize("label", BUILTIN_CORPUS_LABELS)
def test_table_validity(label):
    assert check_table(label) == []


def dual_table_matches(label):
    G = group(label)
    cd = context(label).classes
    e, chars = abelian_dual_table(G.elements(), G.gens)
    oracle = set()
    for ch in chars:
        vals = dict(ch)
        oracle.add(tuple(root_of_unity(e, vals[g]) for g in cd.representatives))
    return oracle == {chi.values for chi in table(label)}


@pytest.mark.parametrize("label", [l for l in BUILTIN_CORPUS_LABELS if context(l).G.is_abelian()])
def test_abelian_table_matches_dual_group(label):
    assert dual_table_matches(label)
