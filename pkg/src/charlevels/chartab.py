"""Ordinary character tables by the Burnside-Dixon-Schneider method.

Central characters are found as common eigenvectors of the class matrices
over a prime field F_l with l = 1 (mod exp(G)) and l > 2 sqrt(|G|); values
are then lifted to cyclotomic numbers from eigenvalue multiplicities, which
the power maps let us compute modulo l.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import modp
from .cyclo import Cyclotomic, parse_cyclotomic, sum_cyclotomics
from .permgrp import DEFAULT_MAX_ORDER, CapExceeded, ClassData, PermGroup, conjugacy_classes, inv, mul

DEFAULT_MAX_CLASSES = 30


class CharacterTableError(RuntimeError):
    pass


class NotACharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """A class function with cyclotomic values indexed by class.

    ``irreducible`` is False for products and other derived class functions,
    which waives the norm-one invariant.
    """

    values: Tuple[Cyclotomic, ...]
    classes: ClassData = field(compare=False, repr=False, hash=False)
    irreducible: bool = True

    @property
    def degree(self):
        v = self.values[0].rational_value()
        return int(v) if v.denominator == 1 else v

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def __str__(self):
        return "[" + ", ".join(str(v) for v in self.values) + "]"


@dataclass
class CharacterTable:
    classes: ClassData
    irreducibles: List[Character]
    group_order: int
    exponent: int
    dixon_prime: int = 0
    group: Optional[PermGroup] = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, i) -> Character:
        return self.irreducibles[i]

    def degrees(self) -> List[int]:
        return [chi.degree for chi in self.irreducibles]

    def trivial(self) -> Character:
        return self.irreducibles[0]

    def to_dict(self) -> dict:
        cd = self.classes
        return {
            "group_order": self.group_order,
            "exponent": self.exponent,
            "class_sizes": list(cd.sizes),
            "element_orders": list(cd.element_orders),
            "power_maps": [list(row) for row in cd.power_map],
            "characters": [[str(v) for v in chi.values] for chi in self.irreducibles],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def format_text(self) -> str:
        cd = self.classes
        cols = [""] * len(cd)
        # label classes by element order plus a letter within that order
        seen: Dict[int, int] = {}
        for j, o in enumerate(cd.element_orders):
            k = seen.get(o, 0)
            seen[o] = k + 1
            cols[j] = f"{o}{chr(ord('a') + k)}"
        lines = ["      " + "  ".join(f"{c:>8}" for c in cols)]
        lines.append("size  " + "  ".join(f"{s:>8}" for s in cd.sizes))
        for i, chi in enumerate(self.irreducibles):
            lines.append(f"X.{i + 1:<3} " + "  ".join(f"{str(v):>8}" for v in chi.values))
        return "\n".join(lines)


def table_from_dict(doc: dict) -> dict:
    """Parse the serialized form back into exact values (for golden-file checks)."""
    return {
        **doc,
        "characters": [[parse_cyclotomic(s) for s in row] for row in doc["characters"]],
    }


# ---------------------------------------------------------------------------
# class algebra

def _class_matrix_column(cd: ClassData, members_j: Sequence, k: int) -> List[int]:
    """Counts over i of #{x in C_j : x^-1 g_k in C_i}."""
    r = len(cd)
    col = [0] * r
    gk = cd.representatives[k]
    for x in members_j:
        col[cd.class_of[mul(inv(x), gk)]] += 1
    return col


def _class_members(cd: ClassData) -> List[list]:
    members: List[list] = [[] for _ in range(len(cd))]
    for g, c in cd.class_of.items():
        members[c].append(g)
    return members


def class_matrix(cd: ClassData, j: int, members: Optional[List[list]] = None) -> List[List[int]]:
    """M_j with M_j[i][k] = #{(x, y) : x in C_j, y in C_i, xy = g_k}."""
    members = members or _class_members(cd)
    r = len(cd)
    cols = [_class_matrix_column(cd, members[j], k) for k in range(r)]
    return [[cols[k][i] for k in range(r)] for i in range(r)]


def class_algebra_constants(G, max_order: int = DEFAULT_MAX_ORDER) -> List[List[List[int]]]:
    """a[i][j][k] = #{(x, y) : x in C_i, y in C_j, xy = g_k} (G or its ClassData)."""
    cd = G if isinstance(G, ClassData) else conjugacy_classes(G, max_order)
    members = _class_members(cd)
    return [class_matrix(cd, i, members) for i in range(len(cd))]


# ---------------------------------------------------------------------------
# Dixon prime and roots of unity mod l

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime l = 1 (mod exponent) with l > 2 sqrt(order)."""
    l = exponent + 1
    while not (_is_prime(l) and l * l > 4 * order):
        l += exponent
    return l


def _primitive_root(l: int) -> int:
    if l == 2:
        return 1
    n = l - 1
    qs = []
    m, d = n, 2
    while d * d <= m:
        if m % d == 0:
            qs.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        qs.append(m)
    for g in range(2, l):
        if all(pow(g, n // q, l) != 1 for q in qs):
            return g
    raise CharacterTableError(f"no primitive root mod {l}")


# ---------------------------------------------------------------------------

def _split_spaces(cd: ClassData, l: int, members) -> List[List[int]]:
    r = len(cd)
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for j in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        m = [[x % l for x in row] for row in class_matrix(cd, j, members)]
        new = []
        for basis in spaces:
            if len(basis) == 1:
                new.append(basis)
                continue
            basis, pivots = modp.rref(basis, l)
            images = [modp.matmul_vec(m, v, l) for v in basis]
            d = len(basis)
            a = [[images[t][pivots[s]] for t in range(d)] for s in range(d)]
            found = 0
            for lam in modp.poly_roots(modp.charpoly(a, l), l):
                shifted = [[(a[s][t] - (lam if s == t else 0)) % l for t in range(d)] for s in range(d)]
                ys = modp.nullspace(shifted, l)
                vecs = [
                    [sum(y[t] * basis[t][c] for t in range(d)) % l for c in range(r)]
                    for y in ys
                ]
                vecs, _ = modp.rref(vecs, l)
                found += len(vecs)
                new.append(vecs)
            if found != d:
                raise CharacterTableError(
                    f"class matrix {j} is not diagonalizable over F_{l} on a {d}-dimensional space"
                )
        spaces = new
    if any(len(s) != 1 for s in spaces):
        raise CharacterTableError(f"class matrices do not split all eigenspaces over F_{l}")
    return [s[0] for s in spaces]


def character_table(
    G: PermGroup,
    max_order: int = DEFAULT_MAX_ORDER,
    max_classes: int = DEFAULT_MAX_CLASSES,
    classes: Optional[ClassData] = None,
) -> CharacterTable:
    cd = classes if classes is not None else conjugacy_classes(G, max_order)
    r = len(cd)
    if r > max_classes:
        raise CapExceeded(f"{r} conjugacy classes exceed cap max_classes={max_classes}")
    order = cd.group_order
    e = cd.exponent()
    l = dixon_prime(order, e)
    members = _class_members(cd)
    vectors = _split_spaces(cd, l, members)

    inverse = cd.inverse
    isqrt = math.isqrt(order)
    z = pow(_primitive_root(l), (l - 1) // e, l)
    rows = []
    for w in vectors:
        if w[0] % l == 0:
            raise CharacterTableError("central character vanishes on the identity class")
        s = pow(w[0], -1, l)
        w = [x * s % l for x in w]
        norm = sum(w[j] * w[inverse[j]] * pow(cd.sizes[j], -1, l) for j in range(r)) % l
        d2 = order * pow(norm, -1, l) % l
        deg = next(
            (d for d in range(1, isqrt + 1) if d * d % l == d2 and order % d == 0),
            None,
        )
        if deg is None:
            raise CharacterTableError(f"no degree d <= sqrt(|G|) with d^2 = {d2} mod {l}")
        modvals = [deg * w[j] * pow(cd.sizes[j], -1, l) % l for j in range(r)]
        values = []
        for j in range(r):
            m = cd.element_orders[j]
            zm = pow(z, e // m, l)
            minv = pow(m, -1, l)
            mult = {}
            for i in range(m):
                acc = 0
                for k in range(m):
                    acc += modvals[cd.power(j, k)] * pow(zm, (-i * k) % m, l)
                mi = acc * minv % l
                if mi > deg:
                    raise CharacterTableError(
                        f"eigenvalue multiplicity {mi} exceeds degree {deg}; lift modulo {l} failed"
                    )
                if mi:
                    mult[i] = mi
            values.append(Cyclotomic.from_exponents(m, mult))
        rows.append(Character(tuple(values), cd))

    def key(chi):
        return (chi.degree, tuple((v != chi.values[0], str(v)) for v in chi.values))

    rows.sort(key=key)
    return CharacterTable(cd, rows, order, e, l, G)


# ---------------------------------------------------------------------------
# operations on characters

def _check_same(chi: Character, psi: Character):
    if chi.classes is not psi.classes and (
        len(chi.values) != len(psi.values)
        or chi.classes.sizes != psi.classes.sizes
        or chi.classes.representatives != psi.classes.representatives
    ):
        raise ValueError("characters live on different class data")


def inner_product(chi: Character, psi: Character) -> Fraction:
    """(1/|G|) sum_k |C_k| chi(g_k) conj(psi(g_k))."""
    _check_same(chi, psi)
    cd = chi.classes
    total = Cyclotomic(0)
    for a, b, size in zip(chi.values, psi.values, cd.sizes):
        if a and b:
            total = total + a * b.conjugate() * size
    return total.rational_value() / cd.group_order


def product_character(chi: Character, psi: Character) -> Character:
    _check_same(chi, psi)
    vals = tuple(a * b for a, b in zip(chi.values, psi.values))
    return Character(vals, chi.classes, irreducible=False)


def class_function(values: Sequence, classes: ClassData) -> Character:
    vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic(v) for v in values)
    return Character(vals, classes, irreducible=False)


def fusion_map(H_classes: ClassData, G_classes: ClassData) -> List[int]:
    """G-class of each H-class representative."""
    try:
        return [G_classes.class_of[h] for h in H_classes.representatives]
    except KeyError as exc:
        raise ValueError("subgroup element not found among the classes of G") from exc


def restrict(
    chi: Character,
    H: PermGroup,
    H_classes: Optional[ClassData] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> Character:
    hc = H_classes if H_classes is not None else conjugacy_classes(H, max_order)
    fus = fusion_map(hc, chi.classes)
    return Character(tuple(chi.values[j] for j in fus), hc, irreducible=False)


def eigenvalue_multiplicities(chi: Character, j: int) -> List[int]:
    """Multiplicity of zeta_m^i as an eigenvalue at class j (m the element order)."""
    cd = chi.classes
    m = cd.element_orders[j]
    out = []
    for i in range(m):
        terms = [
            chi.values[cd.power(j, k)] * Cyclotomic.from_exponents(m, {(-i * k) % m: 1})
            for k in range(m)
        ]
        s = sum_cyclotomics(terms)
        if not s.is_rational():
            raise NotACharacterError(f"multiplicity of E({m})^{i} at class {j} is irrational: {s}/{m}")
        v = s.rational_value() / m
        if v.denominator != 1 or v < 0:
            raise NotACharacterError(f"multiplicity of E({m})^{i} at class {j} is {v}")
        out.append(int(v))
    return out


def det_order(chi: Character) -> int:
    """Order of det(chi) among the linear characters."""
    cd = chi.classes
    out = 1
    for j in range(len(cd)):
        m = cd.element_orders[j]
        mult = eigenvalue_multiplicities(chi, j)
        s = sum(i * mi for i, mi in enumerate(mult)) % m
        out = math.lcm(out, m // math.gcd(m, s))
    return out
