import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramybe.algebra import cyclic_group, param_set
from paramybe.errors import AxiomFails, InputError, NotBijective, YNotClosed
from paramybe.pbraces import (
    eta_family,
    eta_from_p_brace,
    eta_from_sigma,
    eta_report,
    eta_verify,
    lemma_prop_eta_check,
    p_brace_from_eta,
    p_brace_table,
    p_brace_verify,
    param_group,
    quasigroup_solve,
    skew_p_brace_from_eta,
    skew_p_brace_verify,
    solution_from_eta,
    triangle_table,
)
from paramybe.solutions import derived_shelf
from paramybe.twists import brace_sigma


@pytest.fixture(scope="module")
def mod8_pg(mod8, mod8_Y):
    return param_group(mod8.mul, mod8_Y)


@pytest.fixture(scope="module")
def mod8_eta(mod8_pg, mod8_sigma):
    return eta_from_sigma(mod8_sigma.table, mod8_pg)


@pytest.fixture(scope="module")
def d4_eta(d4_brace, d4_Y):
    pg = param_group(d4_brace.mul, d4_Y)
    return eta_from_sigma(brace_sigma(d4_brace, d4_Y, mode="p2").table, pg)


def _identity_eta(group, members):
    pg = param_group(group, param_set(group, members, "inverse"))
    return eta_family(pg, np.broadcast_to(np.arange(group.n), (pg.m, pg.m, group.n, group.n)))


def test_identity_eta_on_abelian_group():
    E = _identity_eta(cyclic_group(4), [0, 2])
    assert eta_verify(E, "reversible").passed
    T = p_brace_from_eta(E)
    for i in range(2):
        for j in range(2):
            assert np.array_equal(T.plus[i, j], E.pg.group.op)
    assert np.array_equal(eta_from_p_brace(T).eta, E.eta)
    assert lemma_prop_eta_check(E).passed


def test_identity_eta_solution():
    E = _identity_eta(cyclic_group(4), [0, 2])
    S = solution_from_eta(E)
    a, b = np.indices((4, 4))
    for i in range(2):
        for j in range(2):
            assert (S.sigma[i, j] == b).all()
            # τ_b(a) = b^{-1}∘a∘b = a on Z4
            assert (S.tau[i, j] == b).all()


def test_brace_eta_reversible(mod8_eta):
    rep = eta_verify(mod8_eta, "reversible")
    assert rep.passed
    assert eta_report(mod8_eta, "general").passed
    assert lemma_prop_eta_check(mod8_eta).passed


def test_brace_p_brace_roundtrip(mod8_eta, mod8_sigma, mod8_pg):
    T = p_brace_from_eta(mod8_eta)
    rep = p_brace_verify(T)
    assert rep.passed
    assert any(c.name.startswith("quasigroup") for c in rep.checks)
    assert np.array_equal(eta_from_p_brace(T).eta, mod8_eta.eta)
    assert np.array_equal(p_brace_from_eta(eta_from_p_brace(T)).plus, T.plus)
    a = np.arange(4)[:, None]
    for i in range(4):
        for j in range(4):
            assert np.array_equal(T.plus[i, j], mod8_pg.group.op[a, mod8_sigma.inverse[i, j]])


def test_solution_from_eta_matches_brace_solution(mod8_eta, mod8_solution):
    S = solution_from_eta(mod8_eta, "reversible")
    assert np.array_equal(S.sigma, mod8_solution.sigma)
    assert np.array_equal(S.tau, mod8_solution.tau)
    assert S.flags["reversible"]


def test_general_mode_triangle(mod8_eta):
    S = solution_from_eta(mod8_eta, "general")
    assert np.array_equal(derived_shelf(S).op, triangle_table(mod8_eta))


def test_skew_only_classification(d4_eta):
    assert eta_verify(d4_eta, "general").passed
    assert not eta_report(d4_eta, "reversible").passed
    T = skew_p_brace_from_eta(d4_eta)
    assert skew_p_brace_verify(T).passed
    rep = p_brace_verify(T)
    failed = [c.name for c in rep.checks if not c.passed]
    assert failed and all(name.startswith("commutation") for name in failed)
    assert np.array_equal(eta_from_p_brace(T, "general").eta, d4_eta.eta)


def test_skew_solution_triangle(d4_eta):
    S = solution_from_eta(d4_eta, "general")
    assert not S.flags["reversible"]
    assert np.array_equal(derived_shelf(S).op, triangle_table(d4_eta))


def test_p_brace_from_non_reversible_eta_refused(d4_eta):
    with pytest.raises(AxiomFails):
        p_brace_from_eta(d4_eta)


def test_mutated_eta_fails_composition(mod8_eta):
    eta = np.array(mod8_eta.eta)
    eta[1, 2, 3, [0, 1]] = eta[1, 2, 3, [1, 0]]
    E = eta_family(mod8_eta.pg, eta)
    rep = eta_verify(E, "reversible")
    assert not rep.checks[0].passed
    lem = lemma_prop_eta_check(E)
    assert not (lem.checks[0].passed and lem.checks[1].passed)


def test_mutated_commutation_axiom(mod8_eta):
    T = p_brace_from_eta(mod8_eta)
    plus = np.array(T.plus)
    plus[1, 2, [0, 1], 3] = plus[1, 2, [1, 0], 3]
    rep = p_brace_verify(p_brace_table(T.pg, plus))
    assert not rep[[c.name for c in rep.checks if c.name.startswith("commutation")][0]].passed


def test_quasigroup_solve(mod8_eta):
    T = p_brace_from_eta(mod8_eta)
    x, y = quasigroup_solve(T, 1, 2, 3, 0)
    assert T.plus[1, 2, x, 3] == 0 and T.plus[1, 2, 3, y] == 0


def test_param_group_requirements(mod8):
    with pytest.raises(YNotClosed):
        param_group(mod8.mul, param_set(mod8, [1, 3], "inverse"))
    with pytest.raises(InputError):
        param_group(mod8.mul, param_set(mod8, [0, 1], [1, 0]))


def test_eta_needs_permutations(mod8_pg):
    with pytest.raises(NotBijective):
        eta_family(mod8_pg, np.zeros((4, 4, 4, 4), dtype=int))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_reversible_implies_general(mod8_eta, seed):
    rng = np.random.default_rng(seed)
    eta = np.array(mod8_eta.eta)
    i, j, a = (int(x) for x in rng.integers(4, size=3))
    eta[i, j, a] = rng.permutation(4)
    E = eta_family(mod8_eta.pg, eta)
    if eta_report(E, "reversible").passed:
        assert eta_report(E, "general").passed


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8))
def test_identity_eta_cyclic(n):
    E = _identity_eta(cyclic_group(n), [0])
    T = p_brace_from_eta(E)
    assert p_brace_verify(T).passed
    assert np.array_equal(eta_from_p_brace(T).eta, E.eta)
