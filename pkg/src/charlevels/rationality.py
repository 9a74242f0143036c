"""Conductors, p-rationality levels and the sigma_alpha action on characters."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .chartab import Character, CharacterTable, character_table
from .cyclo import Cyclotomic, sigma_alpha, valuation
from .permgrp import ClassData, PermGroup, is_p_power

RATIONAL = "rational"


def char_conductor(chi: Character) -> int:
    """lcm of the conductors of the values."""
    return math.lcm(1, *(v.order for v in chi.values))


def char_level(chi: Character, p: int) -> int:
    return valuation(char_conductor(chi), p)


def apply_sigma(chi: Character, p: int, alpha: int) -> Character:
    n = char_conductor(chi)
    vals = tuple(sigma_alpha(v, p, alpha, n) for v in chi.values)
    return Character(vals, chi.classes, chi.irreducible)


def sigma_action(table: CharacterTable, p: int, alpha: int) -> Tuple[List[int], List[int]]:
    """Row permutation induced by sigma_alpha on Q_exp(G), and the fixed rows."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    n = table.exponent
    index = {chi.values: i for i, chi in enumerate(table.irreducibles)}
    perm = []
    for chi in table.irreducibles:
        img = tuple(sigma_alpha(v, p, alpha, n) for v in chi.values)
        try:
            perm.append(index[img])
        except KeyError:
            raise ValueError("sigma_alpha image is not a row of the table; table not Galois closed")
    fixed = [i for i, j in enumerate(perm) if i == j]
    return perm, fixed


def is_sigma_invariant(chi: Character, p: int, alpha: int) -> bool:
    return apply_sigma(chi, p, alpha).values == chi.values


def smallest_invariance_alpha(chi: Character, p: int) -> Union[int, str]:
    """Least alpha >= 1 with chi sigma_alpha-invariant, or RATIONAL at level 0."""
    lev = char_level(chi, p)
    if lev == 0:
        return RATIONAL
    for alpha in range(1, lev + 1):
        if is_sigma_invariant(chi, p, alpha):
            return alpha
    # sigma_lev acts trivially on Q_{p^lev m}
    raise AssertionError("unreachable: sigma_alpha with alpha = level fixes chi")


def galois_fix_group(chi: Character, modulus: int) -> List[int]:
    """The k in (Z/modulus)* whose Galois action fixes every value of chi."""
    out = []
    for k in range(1, modulus + 1):
        if math.gcd(k, modulus) != 1:
            continue
        if all(v.galois(k % v.order if v.order > 1 else 1) == v for v in chi.values):
            out.append(k)
    return out


def field_contains_i(chi: Character) -> bool:
    """i in Q(chi), decided on the fix group of chi inside (Z/cZ)*, 4 | c."""
    c = math.lcm(char_conductor(chi), 4)
    return all(k % 4 == 1 for k in galois_fix_group(chi, c))


def achieved_analysis(chi: Character, p: int, classes: Optional[ClassData] = None) -> Tuple[List[int], bool]:
    """Classes where lev(chi(g)) = lev(chi), and whether one of them holds p-elements."""
    cd = classes if classes is not None else chi.classes
    lev = char_level(chi, p)
    where = [j for j, v in enumerate(chi.values) if valuation(v.order, p) == lev]
    at_p = any(is_p_power(cd.element_orders[j], p) for j in where)
    return where, at_p


@dataclass
class LevelProfile:
    index: int
    degree: int
    conductor: int
    p_part: int
    level: int
    achieved_classes: List[int]
    achieved_at_p_element: bool
    irreducible: bool = True

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class LevelHistogram:
    prime: int
    counts: Dict[int, int]
    total: int

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "counts": {str(k): self.counts[k] for k in sorted(self.counts)},
            "total": self.total,
        }

    def max_level(self) -> int:
        return max(self.counts, default=0)

    def __eq__(self, other):
        if not isinstance(other, LevelHistogram):
            return NotImplemented
        return self.prime == other.prime and self.counts == other.counts


def level_profile(chi: Character, p: int, index: int = 0) -> LevelProfile:
    c = char_conductor(chi)
    lev = valuation(c, p)
    where, at_p = achieved_analysis(chi, p)
    return LevelProfile(index, chi.degree, c, p ** lev, lev, where, at_p, chi.irreducible)


def irr_p_prime(table: CharacterTable, p: int) -> List[int]:
    """Indices of the irreducibles of degree prime to p."""
    return [i for i, chi in enumerate(table.irreducibles) if chi.degree % p]


def level_profiles(table: CharacterTable, p: int, p_prime_only: bool = True) -> List[LevelProfile]:
    idx = irr_p_prime(table, p) if p_prime_only else range(len(table))
    return [level_profile(table[i], p, i) for i in idx]


def level_histogram(G: Union[PermGroup, CharacterTable], p: int) -> LevelHistogram:
    table = G if isinstance(G, CharacterTable) else character_table(G)
    counts: Dict[int, int] = {}
    for i in irr_p_prime(table, p):
        lev = char_level(table[i], p)
        counts[lev] = counts.get(lev, 0) + 1
    return LevelHistogram(p, dict(sorted(counts.items())), sum(counts.values()))
