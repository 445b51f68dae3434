import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from gcsurgery.groups import AbelianInvariants, Presentation, abelianize, smith_diagonal

from conftest import presentations

matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def sympy_diagonal(m):
    snf = smith_normal_form(Matrix(m), domain=ZZ)
    d = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    return sorted(x for x in d if x)


def minors_oracle(m):
    """Diagonal from determinantal divisors: d_k = gcd of k x k minors / d_(k-1)."""
    from itertools import combinations
    from math import gcd
    M = Matrix(m)
    rows, cols = M.shape
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, int(M.extract(list(ri), list(ci)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_matches_sympy(m):
    assert sorted(smith_diagonal(m)) == sympy_diagonal(m)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_smith_matches_determinantal_divisors(m):
    assert smith_diagonal(m) == minors_oracle(m)


@given(matrices)
def test_smith_divisibility_chain(m):
    d = smith_diagonal(m)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


@settings(max_examples=200, deadline=None)
@given(presentations())
def test_abelianize_matches_oracle(p):
    ab = abelianize(p)
    m = [r.exponent_sums(p.ngens) for r in p.relators] or [[0] * p.ngens]
    d = sympy_diagonal(m)
    assert ab.rank == p.ngens - len(d)
    assert ab.torsion == tuple(x for x in d if x > 1)


@pytest.mark.parametrize("names, rels, expected", [
    ("a b", ["[a,b]"], "Z^2"),
    ("a b", ["[a,b]", "a^5"], "Z/5 + Z"),
    ("a", ["a^6"], "Z/6"),
    ("a b", ["a^2", "b^3"], "Z/6"),
    ("a b", ["a^2", "b^4"], "Z/2 + Z/4"),
    ("a b", ["a b"], "Z"),
    ("a", ["a"], "0"),
])
def test_known_groups(names, rels, expected):
    assert abelianize(Presentation.parse(names, rels)).format() == expected


def test_invariants_validation():
    with pytest.raises(ValueError):
        AbelianInvariants((3, 2))
    with pytest.raises(ValueError):
        AbelianInvariants((1,))
    assert AbelianInvariants((2, 4), 1).order() is None
    assert AbelianInvariants((2, 4)).order() == 8
