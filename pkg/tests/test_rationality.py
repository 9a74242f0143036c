import pytest

from charlevels.chartab import class_function
from charlevels.cyclo import E, conductor, level, root_of_unity
from charlevels.groups import BUILTIN_CORPUS_LABELS
from charlevels.rationality import (
    RATIONAL,
    LevelHistogram,
    achieved_analysis,
    char_conductor,
    char_level,
    field_contains_i,
    irr_p_prime,
    level_histogram,
    level_profiles,
    sigma_action,
    smallest_invariance_alpha,
)

from conftest import context, group, table


def linear_with_value(label, value):
    """The linear character of a cyclic group taking `value` at the generator class."""
    t = table(label)
    cd = t.classes
    gen = context(label).G.gens[0]
    j = cd.class_of[gen]
    return next(chi for chi in t if chi.values[j] == value)


def test_conductor_examples():
    assert char_conductor(table("symmetric:4")[0]) == 1
    assert char_conductor(linear_with_value("cyclic:4", E(4))) == 4
    t = table("psl2:8")
    z9 = [chi for chi in t if chi.degree == 7 and char_conductor(chi) != 1]
    assert len(z9) == 3
    assert all(char_conductor(chi) == 9 for chi in z9)


def test_level_examples():
    # x -> zeta_{p^e}^{p^(e-beta)} on C_{p^e} has level beta
    for beta in range(4):
        chi = linear_with_value("cyclic:8", root_of_unity(8, 2 ** (3 - beta)))
        assert char_level(chi, 2) == (beta if beta != 1 else 0)
    for beta in range(3):
        chi = linear_with_value("cyclic:9", root_of_unity(9, 3 ** (2 - beta)))
        assert char_level(chi, 3) == beta
    assert all(char_level(chi, 2) == 0 for chi in table("symmetric:4"))
    assert char_level(linear_with_value("cyclic:8", E(8)), 2) == 3


def test_sigma_action_c8():
    t = table("cyclic:8")
    perm, fixed = sigma_action(t, 2, 2)
    cd = t.classes
    j = cd.class_of[context("cyclic:8").G.gens[0]]
    for i, chi in enumerate(t):
        v = chi.values[j]
        if conductor(v) <= 4:
            assert perm[i] == i
        else:
            assert perm[i] != i and t[perm[i]].values[j] == -v and perm[perm[i]] == i


def test_sigma_action_large_alpha_is_identity():
    for label in ("cyclic:8", "psl2:8", "quaternion8"):
        t = table(label)
        perm, fixed = sigma_action(t, 2, 3)
        assert perm == list(range(len(t)))
        perm, fixed = sigma_action(t, 3, 2)
        assert perm == list(range(len(t)))


def test_sigma_action_psl2_8():
    t = table("psl2:8")
    perm, fixed = sigma_action(t, 3, 1)
    moved = [i for i in range(len(t)) if perm[i] != i]
    assert sorted(moved) == sorted(i for i, chi in enumerate(t) if char_conductor(chi) == 9)
    assert all(t[i].degree == 7 for i in moved)
    with pytest.raises(ValueError):
        sigma_action(t, 3, 0)


@pytest.mark.parametrize("label", ["psl2:8", "cyclic:8", "direct_product:quaternion8,cyclic:3", "psl2:9"])
@pytest.mark.parametrize("p,alpha", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_sigma_action_preserves_degree_and_level(label, p, alpha):
    t = table(label)
    perm, _ = sigma_action(t, p, alpha)
    assert sorted(perm) == list(range(len(t)))
    for i, k in enumerate(perm):
        assert t[i].degree == t[k].degree
        assert char_level(t[i], p) == char_level(t[k], p)


def test_smallest_invariance_alpha_examples():
    assert smallest_invariance_alpha(linear_with_value("cyclic:4", E(4)), 2) == 2
    assert smallest_invariance_alpha(linear_with_value("cyclic:9", E(9)), 3) == 2
    assert smallest_invariance_alpha(table("symmetric:4")[1], 2) == RATIONAL
    for chi in table("psl2:8"):
        if char_level(chi, 3) == 2:
            assert smallest_invariance_alpha(chi, 3) == 2


def test_field_contains_i_examples():
    assert field_contains_i(linear_with_value("cyclic:4", E(4)))
    assert not field_contains_i(table("symmetric:4")[2])
    t = table("psl2:7")
    deg3 = [chi for chi in t if chi.degree == 3]
    assert len(deg3) == 2
    assert all(char_conductor(chi) == 7 for chi in deg3)
    assert not any(field_contains_i(chi) for chi in deg3)
    assert field_contains_i(linear_with_value("cyclic:8", E(8)))
    # Q(sqrt 2) does not contain i
    cd = table("cyclic:8").classes
    r2 = E(8) + E(8) ** 7
    assert not field_contains_i(class_function([r2] * len(cd), cd))


def test_histogram_examples():
    assert level_histogram(table("psl2:8"), 3) == LevelHistogram(3, {0: 3, 2: 3}, 6)
    assert level_histogram(group("cyclic:8"), 2).counts == {0: 2, 2: 2, 3: 4}
    h = level_histogram(table("symmetric:4"), 3)
    assert h.counts == {0: 3} and h.total == 3
    assert sorted(table("symmetric:4")[i].degree for i in irr_p_prime(table("symmetric:4"), 3)) == [1, 1, 2]
    assert h.to_dict() == {"prime": 3, "counts": {"0": 3}, "total": 3}


def test_histogram_for_prime_not_dividing_order():
    h = level_histogram(table("symmetric:4"), 5)
    assert h.counts == {0: 5} and h.total == 5


def test_achieved_examples():
    chi = linear_with_value("cyclic:4", E(4))
    cd = chi.classes
    where, flag = achieved_analysis(chi, 2, cd)
    assert sorted(cd.element_orders[j] for j in where) == [4, 4] and flag
    triv = table("symmetric:4")[0]
    where, flag = achieved_analysis(triv, 2)
    assert len(where) == len(triv.values) and flag
    for chi in table("psl2:8"):
        if char_level(chi, 3) == 2:
            where, flag = achieved_analysis(chi, 3)
            assert flag and {chi.classes.element_orders[j] for j in where} == {9}


def test_achieved_c12_order4_class():
    t = table("cyclic:12")
    cd = t.classes
    for chi in t:
        if char_level(chi, 2) == 2:
            where, flag = achieved_analysis(chi, 2)
            assert flag
            assert 4 in {cd.element_orders[j] for j in where}


@pytest.mark.parametrize("label", BUILTIN_CORPUS_LABELS)
def test_profile_invariants(label):
    t = table(label)
    for p in (2, 3, 5, 7):
        profs = level_profiles(t, p)
        h = level_histogram(t, p)
        assert h.total == len(profs) == sum(h.counts.values())
        for pr in profs:
            assert pr.achieved_classes
            assert pr.p_part == p ** pr.level
            if p == 2:
                assert pr.level != 1
        for chi in t:
            assert char_conductor(chi) % 4 != 2
            # conductor as lcm of per-value conductors, each computed independently
            lev = max(level(v, p) for v in chi.values)
            assert char_level(chi, p) == lev
