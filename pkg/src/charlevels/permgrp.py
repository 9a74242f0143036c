"""Permutation groups with a deterministic stabilizer chain.

Permutations are tuples of images on the points 0..d-1; externally (cycle
notation, corpus files) points are numbered 1..d.  Products act on the right:
``mul(a, b)`` applies ``a`` first, and ``x^g = g^-1 x g``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Perm = Tuple[int, ...]

DEFAULT_MAX_ORDER = 100_000


class CapExceeded(RuntimeError):
    """Raised when a computation would enumerate more elements than allowed."""


class NotNormalError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutation primitives

def identity(d: int) -> Perm:
    return tuple(range(d))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple(b[i] for i in a)


def inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def conj(x: Perm, g: Perm) -> Perm:
    """x^g = g^-1 x g."""
    gi = inv(g)
    return tuple(g[x[gi[i]]] for i in range(len(x)))


def power(a: Perm, k: int) -> Perm:
    d = len(a)
    if k < 0:
        a, k = inv(a), -k
    out = identity(d)
    base = a
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def is_identity(a: Perm) -> bool:
    return all(i == j for i, j in enumerate(a))


def cycles(a: Perm) -> List[List[int]]:
    """Nontrivial cycles of a, 0-based, each starting at its smallest point."""
    seen = set()
    out = []
    for i in range(len(a)):
        if i in seen or a[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = a[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = a[j]
        out.append(cyc)
    return out


def element_order(a: Perm) -> int:
    return math.lcm(*(len(c) for c in cycles(a))) if not is_identity(a) else 1


def p_part(a: Perm, p: int) -> Perm:
    """The p-part g^m of g, where m is the p'-part of ord(g) (up to a unit)."""
    o = element_order(a)
    pp = 1
    while o % p == 0:
        o //= p
        pp *= p
    # choose exponent k = 0 mod o and k = 1 mod pp
    if pp == 1:
        return identity(len(a))
    k = o * pow(o, -1, pp)
    return power(a, k)


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def check_perm(images: Sequence[int], degree: Optional[int] = None) -> Perm:
    images = tuple(int(i) for i in images)
    if degree is not None and len(images) != degree:
        raise ValueError(f"permutation has {len(images)} points, expected {degree}")
    if sorted(images) != list(range(len(images))):
        raise ValueError(f"not a permutation: {images}")
    return images


def from_cycles(cycle_list: Iterable[Sequence[int]], degree: int) -> Perm:
    """Permutation from 1-based cycles, e.g. [[1, 2], [3, 4, 5]]."""
    img = list(range(degree))
    seen = set()
    for cyc in cycle_list:
        pts = [int(x) for x in cyc]
        for x in pts:
            if not 1 <= x <= degree:
                raise ValueError(f"point {x} outside 1..{degree}")
            if x in seen:
                raise ValueError(f"point {x} repeated in cycles {list(cycle_list)}")
            seen.add(x)
        for i, x in enumerate(pts):
            img[x - 1] = pts[(i + 1) % len(pts)] - 1
    return tuple(img)


def to_cycles(a: Perm) -> List[List[int]]:
    return [[i + 1 for i in c] for c in cycles(a)]


def format_perm(a: Perm) -> str:
    cs = cycles(a)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cs)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int) -> Perm:
    """Parse cycle notation like "(1,2)(3,4)"; "()" is the identity."""
    text = text.strip()
    if _CYCLE.sub("", text).strip():
        raise ValueError(f"bad cycle notation: {text!r}")
    cyc = []
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        cyc.append([int(x) for x in re.split(r"[,\s]+", body) if x])
    return from_cycles(cyc, degree)


# ---------------------------------------------------------------------------
# stabilizer chain

@dataclass
class _Level:
    base: int
    gens: List[Perm] = field(default_factory=list)
    # orbit point -> coset representative u with u[base] = point
    transversal: Dict[int, Perm] = field(default_factory=dict)


class StabChain:
    """Deterministic incremental Schreier-Sims.

    Base points are the smallest point moved by the element that forces a new
    level, so the chain depends only on the generator list.
    """

    def __init__(self, degree: int, gens: Sequence[Perm]):
        self.degree = degree
        self.levels: List[_Level] = []
        for g in gens:
            self._extend(0, g)

    def sift(self, g: Perm, start: int = 0) -> Tuple[Perm, int]:
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            x = g[lev.base]
            u = lev.transversal.get(x)
            if u is None:
                return g, i
            if x != lev.base:
                g = mul(g, inv(u))
        return g, len(self.levels)

    def contains(self, g: Perm, start: int = 0) -> bool:
        if len(g) != self.degree:
            return False
        h, _ = self.sift(g, start)
        return is_identity(h)

    def _extend(self, i: int, g: Perm) -> None:
        if self.contains(g, i):
            return
        if i == len(self.levels):
            moved = next(x for x in range(self.degree) if g[x] != x)
            self.levels.append(_Level(moved, [], {moved: identity(self.degree)}))
        lev = self.levels[i]
        lev.gens.append(g)
        # new generator on the old orbit, then all generators on new points
        queue = [(pt, g) for pt in list(lev.transversal)]
        while queue:
            pt, s = queue.pop(0)
            u = mul(lev.transversal[pt], s)
            img = s[pt]
            w = lev.transversal.get(img)
            if w is None:
                lev.transversal[img] = u
                queue.extend((img, t) for t in lev.gens)
            else:
                schreier = mul(u, inv(w))
                if not is_identity(schreier):
                    self._extend(i + 1, schreier)

    @property
    def base(self) -> List[int]:
        return [lev.base for lev in self.levels]

    def order(self) -> int:
        out = 1
        for lev in self.levels:
            out *= len(lev.transversal)
        return out

    def transversal_sizes(self) -> List[int]:
        return [len(lev.transversal) for lev in self.levels]

    def elements(self) -> List[Perm]:
        out = [identity(self.degree)]
        for lev in reversed(self.levels):
            reps = [lev.transversal[x] for x in sorted(lev.transversal, key=lambda x: (x != lev.base, x))]
            out = [mul(a, u) for u in reps for a in out]
        return out


# ---------------------------------------------------------------------------

class PermGroup:
    """A finite permutation group, immutable after construction."""

    def __init__(self, degree: int, gens: Sequence[Sequence[int]] = (), name: str = ""):
        self.degree = degree
        gl = []
        for g in gens:
            g = check_perm(g, degree)
            if not is_identity(g) and g not in gl:
                gl.append(g)
        self.gens: Tuple[Perm, ...] = tuple(gl)
        self.name = name
        self.chain = StabChain(degree, self.gens)
        self._order = self.chain.order()
        self._elements: Optional[List[Perm]] = None
        self._element_set = None

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<PermGroup {label}degree={self.degree} order={self._order}>"

    def order(self) -> int:
        return self._order

    def __len__(self):
        return self._order

    def contains(self, g: Sequence[int]) -> bool:
        return self.chain.contains(tuple(g))

    __contains__ = contains

    def identity(self) -> Perm:
        return identity(self.degree)

    def elements(self, max_order: int = DEFAULT_MAX_ORDER) -> List[Perm]:
        if self._order > max_order:
            raise CapExceeded(f"group order {self._order} exceeds cap max_order={max_order}")
        if self._elements is None:
            self._elements = self.chain.elements()
        return self._elements

    def subgroup(self, gens: Sequence[Perm], name: str = "") -> "PermGroup":
        return PermGroup(self.degree, gens, name=name)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.gens)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and all(
            self.contains(conj(h, g)) for h in self.gens for g in other.gens
        )

    def is_abelian(self) -> bool:
        return all(mul(a, b) == mul(b, a) for a in self.gens for b in self.gens)

    def exponent(self, max_order: int = DEFAULT_MAX_ORDER) -> int:
        return math.lcm(1, *(element_order(g) for g in self.elements(max_order)))


def group_from_generators(degree: int, gens: Sequence[Sequence[int]], name: str = "") -> PermGroup:
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return PermGroup(degree, gens, name=name)


# ---------------------------------------------------------------------------
# conjugacy classes

@dataclass
class ClassData:
    """Conjugacy classes with representatives, sizes, element orders and power maps.

    ``power_map[j][k]`` is the class of rep_j^k for 0 <= k < orders[j];
    use :meth:`power` for arbitrary k.
    """

    representatives: List[Perm]
    sizes: List[int]
    element_orders: List[int]
    power_map: List[List[int]]
    group_order: int
    class_of: Dict[Perm, int] = field(repr=False)

    def __len__(self):
        return len(self.representatives)

    def power(self, j: int, k: int) -> int:
        return self.power_map[j][k % self.element_orders[j]]

    @property
    def inverse(self) -> List[int]:
        return [self.power(j, -1) for j in range(len(self))]

    def exponent(self) -> int:
        return math.lcm(1, *self.element_orders)

    def class_index(self, g: Perm) -> int:
        return self.class_of[g]


def conjugacy_classes(G: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> ClassData:
    """Classes by conjugation orbits, seeded in chain-enumeration order."""
    elems = G.elements(max_order)
    class_of: Dict[Perm, int] = {}
    reps: List[Perm] = []
    sizes: List[int] = []
    gens = [(g, inv(g)) for g in G.gens]
    for x in elems:
        if x in class_of:
            continue
        idx = len(reps)
        reps.append(x)
        class_of[x] = idx
        orbit = [x]
        for y in orbit:
            for g, gi in gens:
                z = tuple(g[y[gi[i]]] for i in range(len(y)))
                if z not in class_of:
                    class_of[z] = idx
                    orbit.append(z)
        sizes.append(len(orbit))
    orders = [element_order(r) for r in reps]
    pmap = []
    for r, o in zip(reps, orders):
        row = []
        pw = identity(G.degree)
        for _ in range(o):
            row.append(class_of[pw])
            pw = mul(pw, r)
        pmap.append(row)
    return ClassData(reps, sizes, orders, pmap, G.order(), class_of)


# ---------------------------------------------------------------------------
# subgroups

def normal_closure(G: PermGroup, gens: Sequence[Perm], name: str = "") -> PermGroup:
    H = PermGroup(G.degree, gens)
    changed = True
    while changed:
        changed = False
        for h in list(H.gens):
            for g in G.gens:
                c = conj(h, g)
                if not H.contains(c):
                    H = PermGroup(G.degree, list(H.gens) + [c])
                    changed = True
    H.name = name
    return H


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = []
    for i, a in enumerate(G.gens):
        for b in G.gens[i + 1:]:
            c = mul(mul(inv(a), inv(b)), mul(a, b))
            if not is_identity(c):
                comms.append(c)
    return normal_closure(G, comms, name=f"{G.name}'" if G.name else "")


def normalizer(G: PermGroup, H: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """N_G(H) by filtering the elements of G."""
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    if H.order() == G.order():
        return G
    N = PermGroup(G.degree, H.gens)
    for g in G.elements(max_order):
        if N.contains(g):
            continue
        if all(H.contains(conj(h, g)) for h in H.gens):
            N = PermGroup(G.degree, list(N.gens) + [g])
    return N


def centralizer(G: PermGroup, H: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    C = PermGroup(G.degree, [])
    for g in G.elements(max_order):
        if C.contains(g):
            continue
        if all(mul(g, h) == mul(h, g) for h in H.gens):
            C = PermGroup(G.degree, list(C.gens) + [g])
    return C


def center(G: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    Z = centralizer(G, G, max_order)
    Z.name = f"Z({G.name})" if G.name else ""
    return Z


def sylow(G: PermGroup, p: int, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """A Sylow p-subgroup, grown by adjoining p-elements of successive normalizers."""
    n = G.order()
    target = 1
    while n % p == 0:
        n //= p
        target *= p
    P = PermGroup(G.degree, [])
    if target == 1:
        return P
    elems = G.elements(max_order)
    while P.order() < target:
        N = normalizer(G, P, max_order) if P.order() > 1 else G
        Nelems = N.elements(max_order) if N is not G else elems
        for g in Nelems:
            o = element_order(g)
            if o == 1 or not is_p_power(o, p) or P.contains(g):
                continue
            P = PermGroup(G.degree, list(P.gens) + [g])
            break
        else:
            raise RuntimeError("no p-element found in normalizer; Sylow ascent failed")
    if P.order() != target:
        raise RuntimeError(f"Sylow ascent produced order {P.order()}, expected {target}")
    P.name = f"Syl{p}({G.name})" if G.name else ""
    return P


def quotient(G: PermGroup, N: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> PermGroup:
    """G/N acting on the right cosets of N."""
    if not N.is_normal_in(G):
        raise NotNormalError("N is not a normal subgroup of G")
    Nel = N.elements(max_order)
    coset_of: Dict[Perm, int] = {}
    reps: List[Perm] = []
    for g in G.elements(max_order):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for x in Nel:
            coset_of[mul(x, g)] = idx
    gens = []
    for s in G.gens:
        gens.append(tuple(coset_of[mul(r, s)] for r in reps))
    name = f"{G.name}/{N.name}" if G.name and N.name else ""
    Q = PermGroup(len(reps), gens, name=name)
    if Q.order() * N.order() != G.order():
        raise RuntimeError("coset action is not faithful on G/N")
    return Q


def abelianized_exponent(P: PermGroup) -> int:
    """exp(P/P'): lcm over generators x of the least k with x^k in P'."""
    D = derived_subgroup(P)
    out = 1
    for x in P.gens:
        k, y = 1, x
        while not D.contains(y):
            y = mul(y, x)
            k += 1
        out = math.lcm(out, k)
    return out


def is_cyclic(H: PermGroup, max_order: int = DEFAULT_MAX_ORDER) -> bool:
    n = H.order()
    if n == 1:
        return True
    if not H.is_abelian():
        return False
    return any(element_order(g) == n for g in H.elements(max_order))
