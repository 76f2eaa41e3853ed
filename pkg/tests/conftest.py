import itertools
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from subfact.exactpoly import MultiPoly
from subfact.monolattice import AmbientLattice, NAT, INT, make_subring

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")


@st.composite
def polys(draw, nvars=2, max_terms=4, max_deg=2, coeff=5, nonzero=False):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    terms = draw(st.dictionaries(exps, st.integers(-coeff, coeff).filter(bool), max_size=max_terms))
    if nonzero and not terms:
        terms = {draw(exps): draw(st.integers(1, coeff))}
    return MultiPoly(terms, nvars)


@st.composite
def subrings(draw, n_max=2, coord=4, with_units=True):
    """Small random monomial subrings, possibly with one integer direction."""
    n = draw(st.integers(1, n_max))
    signs = [NAT] * n
    if with_units and n >= 2 and draw(st.booleans()):
        signs[draw(st.integers(0, n - 1))] = INT
    amb = AmbientLattice(n, tuple(signs))
    coord_st = [st.integers(-coord, coord) if s == INT else st.integers(0, coord) for s in signs]
    gen = st.tuples(*coord_st).filter(lambda g: amb.grade(g) > 0)
    gens = draw(st.lists(gen, min_size=1, max_size=4, unique=True))
    units = []
    for j in amb.integer:
        if draw(st.booleans()):
            units.append(tuple(draw(st.sampled_from((1, 2))) if i == j else 0 for i in range(n)))
    return make_subring(amb, gens, units)


def nat_box(n, B):
    return list(itertools.product(range(B + 1), repeat=n))


@pytest.fixture
def x_y():
    return MultiPoly.var(0, 2), MultiPoly.var(1, 2)
