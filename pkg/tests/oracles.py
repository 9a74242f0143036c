"""Brute-force oracles, kept independent of the code paths they check."""

import cmath
import itertools
import math
from fractions import Fraction

from charlevels.permgrp import element_order, inv, mul


def closure(gens, degree):
    """All elements generated by gens, by breadth-first multiplication."""
    e = tuple(range(degree))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def classes_by_conjugation(elements):
    """Partition into conjugacy classes by conjugating with every element."""
    elements = list(elements)
    left = set(elements)
    out = []
    for x in elements:
        if x not in left:
            continue
        cls = {mul(mul(inv(g), x), g) for g in elements}
        out.append(cls)
        left -= cls
    return out


def class_constant(ci, cj, z):
    """#{(x, y) : x in ci, y in cj, xy = z} by full pair enumeration."""
    return sum(1 for x in ci for y in cj if mul(x, y) == z)


def numeric_galois_fixed(x, k, tol=1e-9):
    n = x.order
    a = sum(float(c) * cmath.exp(2j * math.pi * e * k / n) for e, c in x.coeffs)
    return abs(a - x.to_complex()) < tol


def conductor_numeric(x):
    """Least f (not 2 mod 4) such that every k = 1 mod f fixes x, using floating embeddings."""
    n = x.order
    if n == 1:
        return 1
    N = 2 * n
    for f in sorted(d for d in range(1, N + 1) if N % d == 0):
        if all(numeric_galois_fixed(x, k) for k in range(1, N) if math.gcd(k, N) == 1 and (k - 1) % f == 0):
            return f // 2 if f % 4 == 2 else f
    return n


def abelian_dual_table(elements, gens):
    """Linear characters of an abelian group as exponent maps g -> a(g) mod e.

    Assign exponents to generators, propagate over the Cayley graph, keep the
    consistent assignments.  Returns a set of frozensets of (element, value)
    where value is the exponent a with chi(g) = exp(2 pi i a / e).
    """
    e = math.lcm(1, *(element_order(g) for g in elements))
    degree = len(next(iter(elements)))
    ident = tuple(range(degree))
    choices = []
    for g in gens:
        o = element_order(g)
        choices.append([a for a in range(e) if (a * o) % e == 0])
    out = set()
    for assign in itertools.product(*choices):
        val = {ident: 0}
        frontier = [ident]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, a in zip(gens, assign):
                    y = mul(x, g)
                    v = (val[x] + a) % e
                    if y in val:
                        if val[y] != v:
                            ok = False
                            break
                    else:
                        val[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and len(val) == len(elements):
            out.add(frozenset(val.items()))
    return e, out
