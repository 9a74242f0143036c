"""Exact arithmetic in cyclotomic fields.

Elements of Q_n = Q(exp(2 pi i / n)) are stored in the Zumbroich basis of the
smallest cyclotomic field containing them, so that equality is syntactic and
the conductor is simply the stored field index.

Basis convention.  Write n as a product of prime powers q = p^a.  An exponent
e mod n splits into components c_q(e) in Z/q through the CRT identification
zeta_n^e = prod_q zeta_q^{c_q(e)} with zeta_q := zeta_n^(n/q).  The exponent e
belongs to the basis iff every component lies in J_q, where

* for q = 2^a (a >= 2): J_q = {0, ..., 2^(a-1) - 1};
* for q = p^a, p odd: J_q = {k + j p^(a-1) : |k| <= (p^(a-1) - 1)/2, 1 <= j < p}.

Field indices n with n = 2 (mod 4) never occur: Q_n = Q_{n/2} there.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

__all__ = [
    "Cyclotomic",
    "root_of_unity",
    "field_ops",
    "galois",
    "sigma_alpha",
    "sigma_alpha_exponent",
    "conductor",
    "level",
    "parse_cyclotomic",
    "E",
]

Number = Union[int, Fraction, "Cyclotomic"]


# ---------------------------------------------------------------------------
# integer helpers

@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorisation of n as ((p, a), ...) with increasing p."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def valuation(n: int, p: int) -> int:
    """Exact p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def lcm(*args: int) -> int:
    out = 1
    for a in args:
        out = out * a // math.gcd(out, a)
    return out


@lru_cache(maxsize=None)
def _components(n: int) -> Tuple[Tuple[int, int, int, int], ...]:
    """For each prime power q || n: (p, a, q, multiplier) with c_q(e) = e*multiplier mod q."""
    out = []
    for p, a in factorize(n):
        q = p ** a
        out.append((p, a, q, pow(n // q, -1, q)))
    return tuple(out)


def _in_j(p: int, a: int, q: int, c: int) -> bool:
    if p == 2:
        return c < q // 2
    top = q // p
    h = (top - 1) // 2
    k = (c + h) % top - h
    j = ((c - k) // top) % p
    return j != 0


@lru_cache(maxsize=None)
def zumbroich_basis(n: int) -> Tuple[int, ...]:
    """Sorted exponents of the Zumbroich basis of Q_n (n not 2 mod 4)."""
    if n % 4 == 2:
        raise ValueError(f"field index {n} is 2 mod 4")
    comps = _components(n)
    return tuple(
        e for e in range(n)
        if all(_in_j(p, a, q, e * m % q) for p, a, q, m in comps)
    )


@lru_cache(maxsize=None)
def _basis_set(n: int) -> frozenset:
    return frozenset(zumbroich_basis(n))


# ---------------------------------------------------------------------------
# normal forms on sparse coefficient dicts

def _halve_index(n: int, coeffs: Dict[int, Fraction]) -> Tuple[int, Dict[int, Fraction]]:
    # zeta_{2m}^e = (-1)^e zeta_m^(e (m+1)/2) for odd m
    m = n // 2
    half = (m + 1) // 2
    out: Dict[int, Fraction] = {}
    for e, c in coeffs.items():
        f = (e * half) % m if m > 1 else 0
        out[f] = out.get(f, 0) + (-c if e % 2 else c)
    return m, out


def _to_basis(n: int, coeffs: Dict[int, Fraction]) -> Dict[int, Fraction]:
    """Rewrite a combination of n-th roots of unity in the basis of Q_n."""
    vec = {e % n: c for e, c in coeffs.items() if c}
    if n == 1:
        s = sum(vec.values(), Fraction(0))
        return {0: Fraction(s)} if s else {}
    basis = _basis_set(n)
    if all(e in basis for e in vec):
        return vec
    for p, a, q, m in _components(n):
        if p == 2:
            shift = n // 2
            for e in sorted(vec):
                c = vec.get(e)
                if c and (e * m % q) >= q // 2:
                    del vec[e]
                    f = (e - shift) % n
                    v = vec.get(f, 0) - c
                    if v:
                        vec[f] = v
                    else:
                        vec.pop(f, None)
        else:
            step = n // p
            for e in sorted(vec):
                c = vec.get(e)
                if not c or _in_j(p, a, q, e * m % q):
                    continue
                del vec[e]
                for t in range(1, p):
                    f = (e + t * step) % n
                    v = vec.get(f, 0) - c
                    if v:
                        vec[f] = v
                    else:
                        vec.pop(f, None)
    return vec


def _reduce(n: int, vec: Dict[int, Fraction]) -> Tuple[int, Dict[int, Fraction]]:
    """Descend to the conductor; vec must be in the basis of Q_n."""
    if not vec:
        return 1, {}
    changed = True
    while changed and n > 1:
        changed = False
        for p, a, q, m in _components(n):
            if p == 2 and a == 2:
                if all(e * m % q == 0 for e in vec):
                    n, vec = n // 4, {e // 4: c for e, c in vec.items()}
                    changed = True
                    break
            elif a >= 2:
                if all((e * m % q) % p == 0 for e in vec):
                    n, vec = n // p, {e // p: c for e, c in vec.items()}
                    vec = _to_basis(n, vec)
                    changed = True
                    break
            else:
                # p || n: coefficients along each zeta_p-fibre must agree
                step = n // p
                fibres: Dict[int, Dict[int, Fraction]] = {}
                for e, c in vec.items():
                    cp = e * m % q
                    rest = (e - cp * step) % n
                    fibres.setdefault(rest, {})[cp] = c
                ok = all(
                    len(f) == p - 1 and len(set(f.values())) == 1
                    for f in fibres.values()
                )
                if ok:
                    n2 = n // p
                    new = {}
                    for rest, f in fibres.items():
                        new[rest // p] = -next(iter(f.values()))
                    n, vec = n2, _to_basis(n2, new)
                    changed = True
                    break
    return n, vec


def _from_exponents(n: int, coeffs: Dict[int, Fraction]) -> "Cyclotomic":
    if n % 4 == 2:
        n, coeffs = _halve_index(n, coeffs)
    vec = _to_basis(n, coeffs)
    n, vec = _reduce(n, vec)
    return Cyclotomic._make(n, vec)


def _coerce(x) -> "Cyclotomic":
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Cyclotomic")


def _embed(x: "Cyclotomic", n: int) -> Dict[int, Fraction]:
    s = n // x.order
    return {e * s: c for e, c in x.coeffs}


# ---------------------------------------------------------------------------

class Cyclotomic:
    """An immutable element of the maximal abelian extension of Q.

    ``order`` is the conductor of the element and ``coeffs`` a sorted tuple of
    (exponent, Fraction) pairs over the Zumbroich basis of Q_order.
    """

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, value: Union[int, Fraction] = 0):
        value = Fraction(value)
        self.order = 1
        self.coeffs = ((0, value),) if value else ()
        self._hash = None

    @classmethod
    def _make(cls, n: int, vec: Dict[int, Fraction]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.order = n
        obj.coeffs = tuple(sorted((e, Fraction(c)) for e, c in vec.items() if c))
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value: Union[int, Fraction]) -> "Cyclotomic":
        return cls(value)

    @classmethod
    def from_exponents(cls, n: int, coeffs: Dict[int, Union[int, Fraction]]) -> "Cyclotomic":
        """Build sum(c * zeta_n^e) from an arbitrary exponent map."""
        if n < 1:
            raise ValueError("n must be positive")
        return _from_exponents(n, {e % n: Fraction(c) for e, c in coeffs.items()})

    # -- predicates -------------------------------------------------------
    def is_rational(self) -> bool:
        return self.order == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def rational_value(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        n = lcm(self.order, other.order)
        vec = _embed(self, n)
        for e, c in _embed(other, n).items():
            vec[e] = vec.get(e, 0) + c
        return _from_exponents(n, vec)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._make(self.order, {e: -c for e, c in self.coeffs})

    def __sub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclotomic(0)
            return Cyclotomic._make(self.order, {e: c * other for e, c in self.coeffs})
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Cyclotomic(0)
        if other.order == 1:
            return self * other.coeffs[0][1]
        if self.order == 1:
            return other * self.coeffs[0][1]
        n = lcm(self.order, other.order)
        a = _embed(self, n)
        b = _embed(other, n)
        vec: Dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1 + e2) % n
                vec[e] = vec.get(e, 0) + c1 * c2
        return _from_exponents(n, vec)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self.coeffs:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.order == 1:
            return Cyclotomic(1 / self.coeffs[0][1])
        # x^-1 = prod_{sigma != 1} sigma(x) / N(x)
        n = self.order
        rest = Cyclotomic(1)
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                rest = rest * self.galois(k)
        norm = (self * rest).rational_value()
        return rest * (1 / norm)

    def __truediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- Galois -----------------------------------------------------------
    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^k, n the conductor."""
        n = self.order
        if math.gcd(k, n) != 1:
            raise ValueError(f"Galois exponent {k} not coprime to conductor {n}")
        k %= n
        if k == 1 or n == 1:
            return self
        return _from_exponents(n, {(e * k) % n: c for e, c in self.coeffs})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- comparisons, hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.order == 1:
                self._hash = hash(self.rational_value())
            else:
                self._hash = hash((self.order, self.coeffs))
        return self._hash

    # -- numerics and printing -------------------------------------------
    def to_complex(self) -> complex:
        n = self.order
        return sum(
            (float(c) * cmath.exp(2j * math.pi * e / n) for e, c in self.coeffs),
            0j,
        )

    def __complex__(self):
        return self.to_complex()

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        n = self.order
        parts = []
        for e, c in self.coeffs:
            if n == 1 or e == 0:
                body, sign = str(abs(c)), c < 0
            else:
                mag = abs(c)
                root = f"E({n})^{e}"
                body = root if mag == 1 else f"{mag}*{root}"
                sign = c < 0
            parts.append((sign, body))
        sign, body = parts[0]
        out = ("-" if sign else "") + body
        for sign, body in parts[1:]:
            out += (" - " if sign else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Cyclotomic({str(self)!r})"


# ---------------------------------------------------------------------------
# functional surface

def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("n must be positive")
    return _from_exponents(n, {k % n: Fraction(1)})


def E(n: int) -> Cyclotomic:
    return root_of_unity(n, 1)


def field_ops(a: Number, b: Number, op: str) -> Cyclotomic:
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def galois(z: Number, k: int) -> Cyclotomic:
    return _coerce(z).galois(k)


def sigma_alpha_exponent(p: int, alpha: int, n: int) -> int:
    """The k mod n with k = 1 on the p'-part and k = 1 + p^alpha on the p-part of n."""
    a = valuation(n, p)
    pa = p ** a
    m = n // pa
    if pa == 1:
        return 1 % n
    # CRT: k = 1 (mod m), k = 1 + p^alpha (mod p^a)
    t = (p ** alpha) % pa
    k = 1 + m * ((t * pow(m, -1, pa)) % pa)
    return k % n


def sigma_alpha(z: Number, p: int, alpha: int, n: int) -> Cyclotomic:
    """Apply sigma_alpha, seen as an automorphism of Q_n, to z."""
    z = _coerce(z)
    if alpha < 1:
        raise ValueError("alpha must be positive")
    if n % z.order:
        raise ValueError(f"conductor {z.order} does not divide {n}")
    k = sigma_alpha_exponent(p, alpha, n)
    return z.galois(k % z.order if z.order > 1 else 1)


def conductor(z: Number) -> int:
    return _coerce(z).order


def level(z: Number, p: int) -> int:
    """v_p of the conductor of z."""
    return valuation(conductor(z), p)


# ---------------------------------------------------------------------------
# parsing of the E(n)^k text format

_TERM = re.compile(
    r"\s*([+-])?\s*"
    r"(?:(\d+(?:/\d+)?)\s*(\*)?\s*)?"
    r"(?:E\(\s*(\d+)\s*\)(?:\s*\^\s*(-?\d+))?)?\s*"
)


def parse_cyclotomic(text: str) -> Cyclotomic:
    """Parse sums like ``"1/2*E(8)^1 - 1/2*E(8)^3"`` or ``"-3"``."""
    pos = 0
    total = Cyclotomic(0)
    text = text.strip()
    if not text:
        raise ValueError("empty cyclotomic expression")
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, num, star, n, k = m.groups()
        if m.end() == pos or (num is None and n is None):
            raise ValueError(f"cannot parse cyclotomic at position {pos}: {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator at position {pos}: {text!r}")
        if star and n is None:
            raise ValueError(f"dangling '*' at position {pos}: {text!r}")
        coeff = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            coeff = -coeff
        if n is not None:
            if int(n) < 1:
                raise ValueError(f"E({n}) is not a root of unity")
            term = root_of_unity(int(n), int(k) if k is not None else 1) * coeff
        else:
            term = Cyclotomic(coeff)
        total = total + term
        pos = m.end()
        first = False
    return total


def sum_cyclotomics(values: Iterable[Number]) -> Cyclotomic:
    vals = [_coerce(v) for v in values]
    if not vals:
        return Cyclotomic(0)
    n = lcm(*(v.order for v in vals))
    vec: Dict[int, Fraction] = {}
    for v in vals:
        for e, c in _embed(v, n).items():
            vec[e] = vec.get(e, 0) + c
    return _from_exponents(n, vec)
