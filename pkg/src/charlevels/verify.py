"""Structured checks of the p-rationality statements on concrete groups.

Each ``check_*`` returns a :class:`CheckResult` with status ``pass``, ``fail``
or ``not_applicable``; failures always carry explicit witnesses.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from .chartab import CharacterTable, character_table, product_character
from .permgrp import (
    DEFAULT_MAX_ORDER,
    CapExceeded,
    ClassData,
    PermGroup,
    abelianized_exponent,
    center,
    conjugacy_classes,
    derived_subgroup,
    is_cyclic,
    is_p_power,
    normalizer,
    quotient,
    sylow,
)
from .rationality import (
    RATIONAL,
    achieved_analysis,
    char_conductor,
    char_level,
    field_contains_i,
    galois_fix_group,
    irr_p_prime,
    level_histogram,
    smallest_invariance_alpha,
)
from .cyclo import valuation

PASS, FAIL, NA = "pass", "fail", "not_applicable"


def _always(p):
    return True


def _p_is_2(p):
    return p == 2


def _never(p):
    return False


# check id -> (statement checked, primes for which it is a theorem)
CHECKS: Dict[str, tuple] = {
    "continuity": ("levels 2..max all occur in Irr_p'(G)", _p_is_2),
    "lower_bound": ("|Irr_p'(G)| >= (e-1)/(p-1) + 2 sqrt(p-1) - 1, e = exp(P/P')", _p_is_2),
    "isaacs_navarro": ("exp(P/P') <= p^a iff all levels in Irr_p'(G) are <= a", _p_is_2),
    "mn_levels": ("per-level counts of Irr_p'(G) and Irr_p'(N_G(P)) agree", _p_is_2),
    "achieved": ("levels >= 2 in Irr_p'(G) are achieved at p-elements", _never),
    "product_lemma": ("level of a product of p'-degree characters", _always),
    "exp_lemma": ("exp of abelianized Sylows along N, G, G/N", _always),
    "subgroup_transfer": ("level a >= 2 occurs in G iff in a p'-index subgroup", _p_is_2),
    "ilnt": ("non-2-rational odd-degree irreducibles contain i in their field", _always),
    "value_levels": ("c(chi) = lcm of value conductors; lev(chi) = max value level", _always),
    "no_level_one": ("no value and no character has 2-level 1", _always),
    "sigma_equivalence": ("level = least alpha with chi sigma_alpha-invariant (level >= 2)", _always),
    "nonvanishing": ("p'-degree irreducibles are nonzero at p-elements", _always),
}


@dataclass
class CheckResult:
    check_id: str
    group: str
    prime: int
    status: str
    witnesses: List[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "group": self.group,
            "prime": self.prime,
            "status": self.status,
            "witnesses": self.witnesses,
            "details": self.details,
        }

    @property
    def passed(self) -> bool:
        return self.status != FAIL


def _result(check_id, ctx, p, ok, witnesses=(), **details) -> CheckResult:
    statement, proved_for = CHECKS[check_id]
    status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
    det = {"statement": statement, "proved": bool(proved_for(p))}
    det.update(details)
    return CheckResult(check_id, ctx.name, p, status, list(witnesses), det)


# ---------------------------------------------------------------------------

class GroupContext:
    """Lazily computed and cached data for one group."""

    def __init__(self, G: PermGroup, name: str = "", max_order: int = DEFAULT_MAX_ORDER, max_classes: int = 30):
        self.G = G
        self.name = name or G.name or f"G{G.order()}"
        self.max_order = max_order
        self.max_classes = max_classes
        self._cache: dict = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def order(self) -> int:
        return self.G.order()

    @property
    def classes(self) -> ClassData:
        return self._get("classes", lambda: conjugacy_classes(self.G, self.max_order))

    @property
    def table(self) -> CharacterTable:
        return self._get(
            "table",
            lambda: character_table(self.G, self.max_order, self.max_classes, classes=self.classes),
        )

    def sylow(self, p: int) -> PermGroup:
        return self._get(("sylow", p), lambda: sylow(self.G, p, self.max_order))

    def sylow_normalizer(self, p: int) -> PermGroup:
        return self._get(("normalizer", p), lambda: normalizer(self.G, self.sylow(p), self.max_order))

    def abelianized_exponent(self, p: int) -> int:
        return self._get(("abexp", p), lambda: abelianized_exponent(self.sylow(p)))

    def sub_context(self, key, H: PermGroup, name: str) -> "GroupContext":
        return self._get(("sub", key), lambda: GroupContext(H, name, self.max_order, self.max_classes))

    def levels(self, p: int) -> Dict[int, int]:
        """Level of each irreducible of p'-degree, by row index."""
        t = self.table
        return self._get(("levels", p), lambda: {i: char_level(t[i], p) for i in irr_p_prime(t, p)})


def _ctx(G) -> GroupContext:
    return G if isinstance(G, GroupContext) else GroupContext(G)


def _witness(ctx: GroupContext, i: int, p: int, **extra) -> dict:
    chi = ctx.table[i]
    w = {"character": i, "level": char_level(chi, p), "degree": chi.degree}
    w.update(extra)
    return w


def _divides(ctx, p) -> bool:
    return ctx.order % p == 0


# ---------------------------------------------------------------------------
# checks

def check_continuity(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    if not _divides(ctx, p):
        return _result("continuity", ctx, p, NA, reason=f"{p} does not divide |G|")
    levels = ctx.levels(p)
    top = max(levels.values(), default=0)
    present = sorted(set(levels.values()))
    witnesses = []
    missing = []
    for a in range(2, top + 1):
        hit = [i for i, lv in levels.items() if lv == a]
        if hit:
            witnesses.append(_witness(ctx, hit[0], p))
        else:
            missing.append(a)
    if missing:
        # a witness for the violation: the character at the top level
        top_i = next(i for i, lv in levels.items() if lv == top)
        witnesses = [_witness(ctx, top_i, p, missing_levels=missing)]
    return _result(
        "continuity", ctx, p, not missing, witnesses,
        max_level=top, levels_present=present, missing_levels=missing,
    )


def _ge_with_sqrt(lhs: Fraction, k: int) -> bool:
    """lhs >= 2 sqrt(k) exactly."""
    return lhs >= 0 and lhs * lhs >= 4 * k


def check_lower_bound(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    if not _divides(ctx, p):
        return _result("lower_bound", ctx, p, NA, reason=f"{p} does not divide |G|")
    n = len(irr_p_prime(ctx.table, p))
    e = ctx.abelianized_exponent(p)
    lhs = Fraction(n + 1) - Fraction(e - 1, p - 1)
    bound_ok = _ge_with_sqrt(lhs, p - 1)
    details = {
        "irr_p_prime": n,
        "exp_P_mod_Pprime": e,
        "bound": f"{Fraction(e - 1, p - 1)} + 2*sqrt({p - 1}) - 1",
        "bound_holds": bound_ok,
    }
    witnesses = []
    ok = bound_ok
    if p == 2:
        P = ctx.sylow(p)
        cyc = is_cyclic(P, ctx.max_order)
        selfnorm = ctx.sylow_normalizer(p).order() == P.order()
        equality = n == e
        details.update(
            sylow_cyclic=cyc, self_normalizing=selfnorm, equality=equality,
            equality_consistent=equality == (cyc and selfnorm),
        )
        ok = ok and n >= e and equality == (cyc and selfnorm)
        if not ok:
            witnesses.append({"subgroup": P.name or "P", "order": P.order(), "cyclic": cyc, "self_normalizing": selfnorm})
    if not bound_ok:
        witnesses.append({"irr_p_prime": n, "exp_P_mod_Pprime": e})
    return _result("lower_bound", ctx, p, ok, witnesses, **details)


def check_isaacs_navarro(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    if not _divides(ctx, p):
        return _result("isaacs_navarro", ctx, p, NA, reason=f"{p} does not divide |G|")
    e = ctx.abelianized_exponent(p)
    alpha = valuation(e, p)
    levels = ctx.levels(p)
    top = max(levels.values(), default=0)
    only_if = top <= alpha
    if_dir = alpha <= max(top, 1)
    ok = only_if and if_dir
    witnesses = []
    if not ok:
        top_i = next(i for i, lv in levels.items() if lv == top)
        witnesses.append(_witness(ctx, top_i, p, alpha=alpha))
    return _result(
        "isaacs_navarro", ctx, p, ok, witnesses,
        exp_P_mod_Pprime=e, alpha=alpha, max_level=top,
        levels_bounded_by_alpha=only_if, alpha_attained=if_dir,
    )


def check_mn_levels(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    if not _divides(ctx, p):
        return _result("mn_levels", ctx, p, NA, reason=f"{p} does not divide |G|")
    try:
        N = ctx.sylow_normalizer(p)
        nctx = ctx.sub_context(("N", p), N, f"N_G(P{p})")
        hn = level_histogram(nctx.table, p)
    except CapExceeded as exc:
        return _result("mn_levels", ctx, p, NA, reason=str(exc))
    hg = level_histogram(ctx.table, p)
    ok = hg.counts == hn.counts
    witnesses = []
    if not ok:
        for lv in sorted(set(hg.counts) | set(hn.counts)):
            if hg.counts.get(lv, 0) != hn.counts.get(lv, 0):
                witnesses.append({"level": lv, "G": hg.counts.get(lv, 0), "N_G(P)": hn.counts.get(lv, 0)})
    return _result(
        "mn_levels", ctx, p, ok, witnesses,
        histogram_G={str(k): v for k, v in hg.counts.items()},
        histogram_N={str(k): v for k, v in hn.counts.items()},
        normalizer_order=N.order(),
    )


def check_achieved(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    t = ctx.table
    rel = [i for i, lv in ctx.levels(p).items() if lv >= 2]
    if not rel:
        return _result("achieved", ctx, p, NA, reason="no p'-degree irreducible of level >= 2")
    bad = []
    good = []
    for i in rel:
        where, at_p = achieved_analysis(t[i], p)
        if at_p:
            good.append(i)
        else:
            bad.append(_witness(ctx, i, p, achieved_classes=where,
                                values=[str(v) for v in t[i].values]))
    return _result("achieved", ctx, p, not bad, bad, characters_checked=len(rel))


def check_product_lemma(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    t = ctx.table
    idx = irr_p_prime(t, p)
    if not idx:
        return _result("product_lemma", ctx, p, NA, reason="Irr_p'(G) is empty")
    lev = ctx.levels(p)
    at_p = {i: achieved_analysis(t[i], p)[1] for i in idx}
    checked = 0
    bad = []
    for a in idx:
        for b in idx:
            if not at_p[b]:
                continue
            chi = product_character(t[a], t[b])
            lc = char_level(chi, p)
            if lev[a] > lc:
                continue
            checked += 1
            part_i = lev[b] <= lc
            part_ii = max(lev[a], lev[b]) == lc
            if not (part_i and part_ii):
                bad.append({
                    "phi": a, "psi": b, "level_phi": lev[a], "level_psi": lev[b],
                    "level_product": lc, "product_values": [str(v) for v in chi.values],
                })
    return _result("product_lemma", ctx, p, not bad, bad, pairs_checked=checked)


def _exp_data(H: PermGroup, p: int, max_order: int) -> int:
    return abelianized_exponent(sylow(H, p, max_order))


def check_exp_lemma(G, N: PermGroup, p: int) -> CheckResult:
    ctx = _ctx(G)
    if not N.is_normal_in(ctx.G):
        raise ValueError("N is not a normal subgroup of G")
    e_g = ctx.abelianized_exponent(p)
    e_n = _exp_data(N, p, ctx.max_order)
    Q = quotient(ctx.G, N, ctx.max_order)
    e_q = _exp_data(Q, p, ctx.max_order)
    first = e_q <= e_g
    second = e_g <= e_n * e_q
    witnesses = [] if first and second else [
        {"subgroup": N.name or "N", "order": N.order(), "exp_N": e_n, "exp_G": e_g, "exp_G_mod_N": e_q}
    ]
    return _result(
        "exp_lemma", ctx, p, first and second, witnesses,
        normal_subgroup=N.name or "N", normal_order=N.order(),
        exp_N=e_n, exp_G=e_g, exp_G_mod_N=e_q,
        inequality_i=first, inequality_ii=second,
    )


def check_subgroup_transfer(G, M: PermGroup, p: int, name: str = "M") -> CheckResult:
    ctx = _ctx(G)
    if not M.is_subgroup_of(ctx.G):
        raise ValueError("M is not a subgroup of G")
    index = ctx.order // M.order()
    if index % p == 0 or not _divides(ctx, p):
        return _result("subgroup_transfer", ctx, p, NA, reason=f"[G:M] = {index} is divisible by {p}",
                       subgroup=name, index=index)
    mctx = ctx.sub_context(("M", name, p), M, name)
    lg = ctx.levels(p)
    lm = mctx.levels(p)
    top = max(list(lg.values()) + list(lm.values()) + [0])
    bad = []
    for a in range(2, top + 1):
        in_g = [i for i, lv in lg.items() if lv == a]
        in_m = [i for i, lv in lm.items() if lv == a]
        if bool(in_g) != bool(in_m):
            w = {"level": a, "in_G": bool(in_g), "in_M": bool(in_m)}
            if in_g:
                w["character_G"] = in_g[0]
            if in_m:
                w["character_M"] = in_m[0]
            bad.append(w)
    return _result(
        "subgroup_transfer", ctx, p, not bad, bad,
        subgroup=name, subgroup_order=M.order(), index=index,
        levels_G=sorted({lv for lv in lg.values() if lv >= 2}),
        levels_M=sorted({lv for lv in lm.values() if lv >= 2}),
    )


def check_ilnt(G) -> CheckResult:
    ctx = _ctx(G)
    t = ctx.table
    rel = [i for i, chi in enumerate(t.irreducibles) if chi.degree % 2 and char_level(chi, 2) >= 2]
    if not rel:
        return _result("ilnt", ctx, 2, PASS, characters_checked=0)
    bad = [_witness(ctx, i, 2, values=[str(v) for v in t[i].values]) for i in rel if not field_contains_i(t[i])]
    return _result("ilnt", ctx, 2, not bad, bad, characters_checked=len(rel))


def conductor_by_fix_group(chi, bound: int) -> int:
    """Least f | bound with Gal(Q_bound/Q_f) fixing chi; independent of value conductors."""
    fix = set(galois_fix_group(chi, bound))
    for f in sorted(d for d in range(1, bound + 1) if bound % d == 0):
        if all(k in fix for k in range(1, bound + 1) if math.gcd(k, bound) == 1 and (k - 1) % f == 0):
            return f // 2 if f % 4 == 2 else f
    return bound


def check_value_levels(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    t = ctx.table
    bad = []
    for i, chi in enumerate(t.irreducibles):
        c = char_conductor(chi)
        c2 = conductor_by_fix_group(chi, t.exponent if t.exponent % 4 != 2 else 2 * t.exponent)
        lev = valuation(c, p)
        top = max(valuation(v.order, p) for v in chi.values)
        if c != c2 or lev != top:
            bad.append(_witness(ctx, i, p, conductor_lcm=c, conductor_fix_group=c2, max_value_level=top))
    return _result("value_levels", ctx, p, not bad, bad, characters_checked=len(t))


def check_no_level_one(G) -> CheckResult:
    ctx = _ctx(G)
    t = ctx.table
    bad = []
    for i, chi in enumerate(t.irreducibles):
        if char_level(chi, 2) == 1 or any(valuation(v.order, 2) == 1 for v in chi.values):
            bad.append(_witness(ctx, i, 2))
    return _result("no_level_one", ctx, 2, not bad, bad, characters_checked=len(t))


def check_sigma_equivalence(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    t = ctx.table
    rel = [i for i, lv in ctx.levels(p).items() if lv >= 1]
    bad = []
    checked = 0
    for i in rel:
        lev = char_level(t[i], p)
        a = smallest_invariance_alpha(t[i], p)
        if lev >= 2 or p == 2:
            checked += 1
            # p = 2: a sigma_1-invariant non-2-rational odd-degree character is excluded
            if a != lev:
                bad.append(_witness(ctx, i, p, smallest_alpha=a))
    if not checked:
        return _result("sigma_equivalence", ctx, p, NA, reason="no p'-degree irreducible of level >= 2")
    return _result("sigma_equivalence", ctx, p, not bad, bad, characters_checked=checked)


def check_nonvanishing(G, p: int) -> CheckResult:
    ctx = _ctx(G)
    t = ctx.table
    cd = t.classes
    pcls = [j for j, o in enumerate(cd.element_orders) if is_p_power(o, p)]
    bad = []
    for i in irr_p_prime(t, p):
        zeros = [j for j in pcls if t[i].values[j].is_zero()]
        if zeros:
            bad.append(_witness(ctx, i, p, zero_classes=zeros))
    return _result("nonvanishing", ctx, p, not bad, bad, p_element_classes=len(pcls))


# ---------------------------------------------------------------------------
# driver

def primes_dividing(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def default_normal_subgroups(ctx: GroupContext) -> List[tuple]:
    """Derived subgroup and center, deduplicated by order, excluding G and 1 twice."""
    out = []
    D = derived_subgroup(ctx.G)
    out.append(("derived", D))
    Z = center(ctx.G, ctx.max_order)
    out.append(("center", Z))
    out.append(("trivial", PermGroup(ctx.G.degree, [])))
    return out


def run_checks(
    G,
    primes: Optional[Iterable[int]] = None,
    normal_subgroups: Sequence[tuple] = (),
) -> List[CheckResult]:
    ctx = _ctx(G)
    ps = list(primes) if primes is not None else primes_dividing(ctx.order)
    normals = default_normal_subgroups(ctx) + list(normal_subgroups)
    out: List[CheckResult] = []
    for p in ps:
        out.append(check_continuity(ctx, p))
        out.append(check_lower_bound(ctx, p))
        out.append(check_isaacs_navarro(ctx, p))
        out.append(check_mn_levels(ctx, p))
        out.append(check_achieved(ctx, p))
        out.append(check_product_lemma(ctx, p))
        out.append(check_value_levels(ctx, p))
        out.append(check_sigma_equivalence(ctx, p))
        out.append(check_nonvanishing(ctx, p))
        if _divides(ctx, p):
            for label, N in normals:
                r = check_exp_lemma(ctx, N, p)
                r.check_id = "exp_lemma"
                r.details["normal_subgroup"] = label
                out.append(r)
            P = ctx.sylow(p)
            out.append(check_subgroup_transfer(ctx, ctx.sylow_normalizer(p), p, name=f"N_G(P{p})"))
            out.append(check_subgroup_transfer(ctx, P, p, name=f"P{p}"))
    out.append(check_ilnt(ctx))
    out.append(check_no_level_one(ctx))
    return out


def _sort_key(r: CheckResult):
    return (r.group, r.prime, r.check_id, json.dumps(r.details, sort_keys=True))


@dataclass
class VerificationReport:
    metadata: dict
    results: List[CheckResult]

    def __post_init__(self):
        self.results = sorted(self.results, key=_sort_key)

    def summary(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for r in self.results:
            s = out.setdefault(r.check_id, {PASS: 0, FAIL: 0, NA: 0})
            s[r.status] += 1
        return {k: out[k] for k in sorted(out)}

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "summary": self.summary(),
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=False) + "\n"
