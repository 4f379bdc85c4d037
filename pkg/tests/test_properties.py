import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cyclolie import catalog
from cyclolie.cochains import nr_bracket
from cyclolie.properties import (
    antisymmetry_holds,
    basis_change_invariant,
    cyclic_closure_holds,
    naive_nr_bracket,
    random_cochain,
    random_cyclic_cochain,
    random_unimodular,
    tilde_compatibility_holds,
)

seeds = st.integers(0, 2**32 - 1)
slow = settings(max_examples=15, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
METRIC = ["sl2C", "diamond4C", "oscillator4R", "W3"]


@slow
@given(seeds, st.sampled_from(METRIC), st.integers(1, 3), st.integers(1, 3))
def test_antisymmetry(seed, entry_id, k, l):
    e = catalog.load(entry_id)
    rng = random.Random(seed)
    assert antisymmetry_holds(random_cochain(rng, e.dim, k), random_cochain(rng, e.dim, l))


@slow
@given(seeds, st.sampled_from(METRIC), st.integers(1, 3), st.integers(1, 3))
def test_cyclic_cochains_are_closed_under_the_bracket(seed, entry_id, k, l):
    e = catalog.load(entry_id)
    rng = random.Random(seed)
    phi, psi = random_cyclic_cochain(rng, e.form, k), random_cyclic_cochain(rng, e.form, l)
    assert cyclic_closure_holds(phi, psi, e.form)
    assert tilde_compatibility_holds(phi, psi, e.form)


@slow
@given(seeds, st.integers(1, 2), st.integers(1, 2))
def test_bracket_agrees_with_naive_evaluator(seed, k, l):
    rng = random.Random(seed)
    phi, psi = random_cochain(rng, 4, k), random_cochain(rng, 4, l)
    assert nr_bracket(phi, psi) == naive_nr_bracket(phi, psi)


def test_naive_evaluator_on_sl2():
    d = catalog.load("sl2C").d
    assert naive_nr_bracket(d, d).is_zero()


@pytest.mark.parametrize("entry_id", ["sl2C", "diamond4C", "oscillator4R", "sl2C_C2"])
def test_cohomology_is_basis_independent(entry_id):
    e = catalog.load(entry_id)
    rng = random.Random(entry_id)
    ok, before, after = basis_change_invariant(e.algebra, e.form, random_unimodular(rng, e.dim))
    assert ok, (before, after)
