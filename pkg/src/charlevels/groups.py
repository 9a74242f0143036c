"""Group specifications: the JSON corpus format and the builtin families."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .permgrp import PermGroup, cycles, from_cycles, identity, mul

SUPPORTED_FAMILIES = (
    "cyclic(n)",
    "dihedral(2n)",
    "symmetric(n)",
    "alternating(n)",
    "quaternion8",
    "sl23",
    "psl2(q) for q in {4,5,7,8,9,11,13}",
    "direct_product(a,b)",
)

PSL2_FIELDS = (4, 5, 7, 8, 9, 11, 13)


class GroupSpecError(ValueError):
    pass


@dataclass
class GroupSpec:
    name: str
    degree: int
    generators: List[List[List[int]]]
    tags: Dict[str, object] = field(default_factory=dict)

    def build(self) -> PermGroup:
        gens = [from_cycles(g, self.degree) for g in self.generators]
        return PermGroup(self.degree, gens, name=self.name)

    def to_dict(self) -> dict:
        out = {"name": self.name, "degree": self.degree, "generators": self.generators}
        if self.tags:
            out["tags"] = dict(sorted(self.tags.items()))
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


@dataclass
class CorpusManifest:
    groups: List[GroupSpec]
    max_order: int = 100_000
    max_classes: int = 30
    primes: Optional[List[int]] = None

    def __post_init__(self):
        if self.max_order < 1 or self.max_classes < 1:
            raise GroupSpecError("caps must be positive")
        names = [g.name for g in self.groups]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise GroupSpecError(f"duplicate group names in corpus: {sorted(dup)}")


def _perm_to_cycles(p) -> List[List[int]]:
    return [[i + 1 for i in c] for c in cycles(p)]


def spec_from_perms(name: str, degree: int, perms, **tags) -> GroupSpec:
    gens = [_perm_to_cycles(p) for p in perms]
    gens = [g for g in gens if g]
    return GroupSpec(name, degree, gens, dict(tags))


# ---------------------------------------------------------------------------
# parsing the JSON group format

def _position(text: str, index: int) -> str:
    line = text.count("\n", 0, index) + 1
    col = index - (text.rfind("\n", 0, index) + 1) + 1
    return f"line {line}, column {col}"


def parse_group_file(text: str) -> GroupSpec:
    """Validate a JSON group document.

    >>> parse_group_file('{"name":"S4","degree":4,"generators":[[[1,2]],[[1,2,3,4]]]}').build().order()
    24
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupSpecError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise GroupSpecError("group document must be a JSON object")
    for key in ("name", "degree", "generators"):
        if key not in doc:
            raise GroupSpecError(f"missing field {key!r}")
    name, degree, gens = doc["name"], doc["degree"], doc["generators"]
    if not isinstance(name, str) or not name:
        raise GroupSpecError("'name' must be a nonempty string")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
        raise GroupSpecError("'degree' must be a nonnegative integer")
    if not isinstance(gens, list):
        raise GroupSpecError("'generators' must be a list")
    for gi, g in enumerate(gens):
        where = _locate_generator(text, gi)
        if not isinstance(g, list) or not all(isinstance(c, list) for c in g):
            raise GroupSpecError(f"generator {gi} is not a list of cycles ({where})")
        seen = set()
        for c in g:
            for x in c:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise GroupSpecError(f"generator {gi}: non-integer point {x!r} ({where})")
                if not 1 <= x <= degree:
                    raise GroupSpecError(f"generator {gi}: point {x} outside 1..{degree} ({where})")
                if x in seen:
                    raise GroupSpecError(f"generator {gi}: point {x} repeated, cycles are not a bijection ({where})")
                seen.add(x)
    tags = doc.get("tags", {})
    if not isinstance(tags, dict):
        raise GroupSpecError("'tags' must be an object")
    return GroupSpec(name, degree, [[list(c) for c in g] for g in gens], dict(tags))


def _locate_generator(text: str, gi: int) -> str:
    m = re.search(r'"generators"\s*:\s*\[', text)
    if not m:
        return "position unknown"
    # walk to the gi-th top-level element of the generators array
    depth, count, i = 0, -1, m.end()
    while i < len(text):
        ch = text[i]
        if ch == "[":
            if depth == 0:
                count += 1
                if count == gi:
                    return _position(text, i)
            depth += 1
        elif ch == "]":
            if depth == 0:
                break
            depth -= 1
        i += 1
    return "position unknown"


# ---------------------------------------------------------------------------
# finite fields for PSL2(q)

_CONWAY = {4: (2, [1, 1, 1]), 8: (2, [1, 1, 0, 1]), 9: (3, [2, 2, 1])}  # low degree first


class _GF:
    """GF(q) with elements encoded as integers 0..q-1 (base-p digit vectors)."""

    def __init__(self, q: int):
        self.q = q
        if q in _CONWAY:
            self.p, self.poly = _CONWAY[q]
            self.k = len(self.poly) - 1
        else:
            self.p, self.poly, self.k = q, None, 1
        self.elements = list(range(q))
        self._mul = {}
        for a in range(q):
            for b in range(q):
                self._mul[a, b] = self._slow_mul(a, b)

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, ds):
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def add(self, a, b):
        return self._encode([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def _slow_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] = (prod[i + j] + u * v) % self.p
        # reduce modulo the monic polynomial
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d]
            if c:
                for i in range(self.k + 1):
                    prod[d - self.k + i] = (prod[d - self.k + i] - c * self.poly[i]) % self.p
        return self._encode(prod[: self.k])

    def mul(self, a, b):
        return self._mul[a, b]

    def inv(self, a):
        for b in range(1, self.q):
            if self._mul[a, b] == 1:
                return b
        raise ZeroDivisionError

    def primitive(self):
        for g in range(2, self.q) if self.q > 2 else [1]:
            x, n = g, 1
            while x != 1:
                x = self.mul(x, g)
                n += 1
            if n == self.q - 1:
                return g
        return 1


def _psl2_spec(q: int) -> GroupSpec:
    F = _GF(q)
    inf = q  # point index of infinity; field elements are 0..q-1
    one = 1

    def moebius(a, b, c, d):
        # x -> (a x + b) / (c x + d)
        img = []
        for x in range(q + 1):
            if x == inf:
                num, den = a, c
            else:
                num = F.add(F.mul(a, x), b)
                den = F.add(F.mul(c, x), d)
            img.append(inf if den == 0 else F.mul(num, F.inv(den)))
        return tuple(img)

    w = F.primitive()
    t = moebius(one, one, 0, one)
    u = moebius(F.mul(w, w), 0, 0, one)
    s = moebius(0, F.neg(one), one, 0)
    return spec_from_perms(f"PSL(2,{q})", q + 1, [t, u, s], family="psl2", q=q)


# ---------------------------------------------------------------------------
# builtin families

def _cyclic(n: int) -> GroupSpec:
    if n < 1:
        raise GroupSpecError("cyclic(n) needs n >= 1")
    gen = [list(range(1, n + 1))] if n > 1 else []
    return GroupSpec(f"C{n}", max(n, 1), [gen] if gen else [], {"family": "cyclic", "order": n})


def _dihedral(m: int) -> GroupSpec:
    if m < 4 or m % 2:
        raise GroupSpecError("dihedral(2n) needs an even order 2n >= 4")
    n = m // 2
    if n == 2:
        return GroupSpec("D4", 4, [[[1, 2], [3, 4]], [[1, 3], [2, 4]]], {"family": "dihedral", "order": 4})
    rot = [list(range(1, n + 1))]
    refl = [[i, n + 2 - i] for i in range(2, n + 1) if i < n + 2 - i]
    return GroupSpec(f"D{m}", n, [rot, refl], {"family": "dihedral", "order": m})


def _symmetric(n: int) -> GroupSpec:
    if n < 1:
        raise GroupSpecError("symmetric(n) needs n >= 1")
    gens = []
    if n >= 2:
        gens.append([[1, 2]])
    if n >= 3:
        gens.append([list(range(1, n + 1))])
    return GroupSpec(f"S{n}", n, gens, {"family": "symmetric", "order": _fact(n)})


def _alternating(n: int) -> GroupSpec:
    if n < 1:
        raise GroupSpecError("alternating(n) needs n >= 1")
    gens = [[[1, 2, i]] for i in range(3, n + 1)]
    return GroupSpec(f"A{n}", n, gens, {"family": "alternating", "order": max(_fact(n) // 2, 1)})


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _quaternion8() -> GroupSpec:
    # regular representation on {1, i, j, k, -1, -i, -j, -k} = points 1..8
    i = [[1, 2, 5, 6], [3, 8, 7, 4]]
    j = [[1, 3, 5, 7], [2, 4, 6, 8]]
    return GroupSpec("Q8", 8, [i, j], {"family": "quaternion8", "order": 8})


def _sl23() -> GroupSpec:
    # natural action on the 8 nonzero vectors of F_3^2
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: k for k, v in enumerate(vecs)}

    def act(m):
        (a, b), (c, d) = m
        return tuple(index[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs)

    gens = [act(((1, 1), (0, 1))), act(((0, 2), (1, 0)))]
    return spec_from_perms("SL(2,3)", 8, gens, family="sl23", order=24)


def direct_product_spec(a: GroupSpec, b: GroupSpec) -> GroupSpec:
    d = a.degree + b.degree
    gens = [[list(c) for c in g] for g in a.generators]
    gens += [[[x + a.degree for x in c] for c in g] for g in b.generators]
    order = None
    if "order" in a.tags and "order" in b.tags:
        order = a.tags["order"] * b.tags["order"]
    tags = {"family": "direct_product"}
    if order is not None:
        tags["order"] = order
    return GroupSpec(f"{a.name}x{b.name}", d, gens, tags)


def builtin_group(family: str, *params) -> GroupSpec:
    """Permutation generators for a named family member."""
    fam = family.lower().replace("-", "_")
    try:
        if fam in ("cyclic", "c"):
            return _cyclic(int(params[0]))
        if fam in ("dihedral", "d"):
            return _dihedral(int(params[0]))
        if fam in ("symmetric", "s"):
            return _symmetric(int(params[0]))
        if fam in ("alternating", "a"):
            return _alternating(int(params[0]))
        if fam in ("quaternion8", "q8"):
            return _quaternion8()
        if fam in ("sl23", "sl2_3"):
            return _sl23()
        if fam == "psl2":
            q = int(params[0])
            if q not in PSL2_FIELDS:
                raise GroupSpecError(f"psl2(q) supports q in {PSL2_FIELDS}, got {q}")
            return _psl2_spec(q)
        if fam in ("direct_product", "dp"):
            a, b = params
            a = a if isinstance(a, GroupSpec) else group_from_label(a)
            b = b if isinstance(b, GroupSpec) else group_from_label(b)
            return direct_product_spec(a, b)
    except (IndexError, ValueError, TypeError) as exc:
        if isinstance(exc, GroupSpecError):
            raise
        raise GroupSpecError(f"bad parameters {params!r} for {family}: {exc}") from exc
    raise GroupSpecError(
        f"unsupported family {family!r}; supported: {', '.join(SUPPORTED_FAMILIES)}"
    )


def _split_top(text: str) -> List[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def group_from_label(label: str) -> GroupSpec:
    """Parse ``family:params`` labels such as ``psl2:8`` or ``direct_product:cyclic:4,cyclic:3``."""
    label = label.strip()
    if label.startswith("(") and label.endswith(")"):
        label = label[1:-1]
    fam, _, rest = label.partition(":")
    fam = fam.strip().lower()
    if fam in ("direct_product", "dp"):
        parts = _split_top(rest)
        if len(parts) != 2:
            raise GroupSpecError(f"direct_product needs two factors, got {rest!r}")
        return builtin_group(fam, *parts)
    params = [p for p in rest.split(",") if p.strip()] if rest else []
    return builtin_group(fam, *params)


# the bundled corpus: builtin family members of order <= 2016
BUILTIN_CORPUS_LABELS = (
    "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:6", "cyclic:8", "cyclic:9",
    "cyclic:12", "cyclic:16",
    "dihedral:6", "dihedral:8", "dihedral:10", "dihedral:12", "dihedral:16",
    "symmetric:3", "symmetric:4", "symmetric:5", "symmetric:6",
    "alternating:4", "alternating:5",
    "quaternion8", "sl23",
    "psl2:4", "psl2:5", "psl2:7", "psl2:8", "psl2:9", "psl2:11", "psl2:13",
    "direct_product:cyclic:2,cyclic:2",
    "direct_product:cyclic:4,cyclic:3",
    "direct_product:symmetric:3,cyclic:4",
    "direct_product:quaternion8,cyclic:3",
    "direct_product:alternating:4,cyclic:4",
)


def builtin_corpus() -> List[GroupSpec]:
    return [group_from_label(lbl) for lbl in BUILTIN_CORPUS_LABELS]
