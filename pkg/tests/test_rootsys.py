from fractions import Fraction
from itertools import combinations

import pytest

from rootzeta.errors import DomainError, NotInDeltaStarError, UnsupportedRankError
from rootzeta.rootsys import (
    KINDS,
    SubsetSpec,
    WeightVector,
    beta_weights,
    build_root_system,
    form_label,
    pstar_pairing,
    star_labels,
    star_roots,
    sub_roots,
)

ALL = [(k, r) for k in KINDS for r in range(1, 7) if r >= {"A": 1, "B": 2, "C": 2, "D": 3}[k]]
N_ROOTS = {"A": lambda r: r * (r + 1) // 2, "B": lambda r: r * r, "C": lambda r: r * r, "D": lambda r: r * (r - 1)}


def labels(kind, r):
    return [form_label(f) for f in build_root_system(kind, r).linear_forms]


@pytest.mark.parametrize("kind,r", ALL)
def test_duality_exact(kind, r):
    rs = build_root_system(kind, r)
    M = rs.pairing_matrix()
    assert M == [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]


@pytest.mark.parametrize("kind,r", ALL)
def test_counts_and_integrality(kind, r):
    rs = build_root_system(kind, r)
    assert rs.n_roots == N_ROOTS[kind](r)
    assert len(set(rs.linear_forms)) == rs.n_roots
    for f in rs.linear_forms:
        assert all(isinstance(c, int) and c >= 0 for c in f) and any(f)
    # simple roots give the coordinate forms
    for i, a in enumerate(rs.simple_coroots):
        assert rs.linear_forms[a] == tuple(int(j == i) for j in range(r))


def test_canonical_orders():
    assert labels("A", 2) == ["m1", "m2", "m1+m2"]
    assert labels("B", 2) == ["m1", "m2", "m1+m2", "2m1+m2"]
    assert labels("C", 2) == ["m1", "m2", "m1+m2", "m1+2m2"]
    assert labels("A", 3) == ["m1", "m2", "m3", "m1+m2", "m2+m3", "m1+m2+m3"]
    assert labels("B", 3) == [
        "m1", "m2", "m3", "m1+m2", "m2+m3", "2m2+m3", "m1+m2+m3", "m1+2m2+m3", "2m1+2m2+m3",
    ]


def test_d3_matches_a3_after_renaming():
    d3 = build_root_system("D", 3).linear_forms
    a3 = build_root_system("A", 3).linear_forms
    # swap m1 and m2
    renamed = {(f[1], f[0], f[2]) for f in d3}
    assert renamed == set(a3)


@pytest.mark.parametrize("kind,r", [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 6), ("A", 1.5)])
def test_unsupported(kind, r):
    with pytest.raises(UnsupportedRankError):
        build_root_system(kind, r)


def test_subset_spec():
    spec = SubsetSpec.from_I(3, [2, 3])
    assert spec.k == 1 and spec.sorted_I == (2, 3)
    with pytest.raises(DomainError):
        SubsetSpec.from_I(3, [1])
    with pytest.raises(DomainError):
        SubsetSpec(3, 4)
    with pytest.raises(DomainError):
        WeightVector.on(spec, [1, 0])
    with pytest.raises(DomainError):
        WeightVector.on(spec, [1])


@pytest.mark.parametrize("kind,r", [(k, r) for k, r in ALL if r >= 2])
def test_star_and_sub_partition(kind, r):
    rs = build_root_system(kind, r)
    for k in range(1, r + 1):
        spec = SubsetSpec(r, k)
        star, sub = star_roots(rs, spec), sub_roots(rs, spec)
        assert sorted(star + sub) == list(range(rs.n_roots))
        assert len(star_labels(rs, spec)) == len(star)
        for b in star:
            assert beta_weights(rs, spec, b)[k - 1] != 0
        for a in sub:
            with pytest.raises(NotInDeltaStarError):
                beta_weights(rs, spec, a)


def test_variable_orders():
    b3 = build_root_system("B", 3)
    assert star_labels(b3, SubsetSpec(3, 1)) == ("t1", "t-2", "t-3", "t+2", "t+3")
    d4 = build_root_system("D", 4)
    assert star_labels(d4, SubsetSpec(4, 1)) == ("t-2", "t-3", "t-4", "t+2", "t+3", "t+4")
    a3 = build_root_system("A", 3)
    assert star_labels(a3, SubsetSpec(3, 2)) == ("t13", "t23", "t24", "t14")
    assert [form_label(b3.linear_forms[a]) for a in sub_roots(b3, SubsetSpec(3, 1))] == ["m2", "m3", "m2+m3", "2m2+m3"]


def test_pstar_pairing_projects_out_k():
    rs = build_root_system("B", 3)
    spec = SubsetSpec(3, 1)
    lam = WeightVector.on(spec, [2, 5])
    star = star_roots(rs, spec)
    for b, g in combinations(star, 2):
        v = pstar_pairing(rs, spec, b, g, lam)
        bk = rs.linear_forms[b][0]
        gk = rs.linear_forms[g][0]
        direct = sum(Fraction(m) * (rs.linear_forms[g][i - 1] - Fraction(gk, bk) * rs.linear_forms[b][i - 1]) for i, m in lam.m)
        assert v == direct
    assert pstar_pairing(rs, spec, star[0], star[0], lam) == 0
