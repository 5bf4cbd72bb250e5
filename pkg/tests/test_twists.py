import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import MOD8, MOD8_SIGMA_EXAMPLE
from paramybe.algebra import almost_trivial_brace, param_set, symmetric_group
from paramybe.errors import HypothesesNotMet, NotAdmissible, NotBijective, ParamSetOutsideCenter
from paramybe.shelves import affine_p_rack, trivial_p_rack
from paramybe.solutions import derived_shelf, identity_solution, p_shelf_solution, solution_verify_direct
from paramybe.twists import (
    SymmetricH,
    admissible_twist_verify,
    affine_sigma,
    brace_h,
    brace_sigma,
    bullet_from_sigma,
    core_sigma_a,
    core_sigma_b,
    identity_sigma,
    is_d_twist,
    sigma_composition_check,
    sigma_family,
    sigma_inverse_identity_check,
    solform_tables,
    twisted_solution,
)


def swap_mutation(table, rng):
    """Swap two values inside one σ^{ij}_a row, keeping every row a permutation."""
    out = np.array(table)
    m, n = out.shape[0], out.shape[2]
    i, j, a = (int(rng.integers(m)), int(rng.integers(m)), int(rng.integers(n)))
    p, q = rng.choice(n, 2, replace=False)
    out[i, j, a, [p, q]] = out[i, j, a, [q, p]]
    return out


def test_brace_sigma_oracle(mod8_sigma, mod8_Y):
    zi, zj, a, b, value = MOD8_SIGMA_EXAMPLE
    pos = {z: k for k, z in enumerate(mod8_Y.members)}
    assert mod8_sigma.table[pos[zi], pos[zj], a, b] == value


def test_brace_sigma_zero_parameters(mod8, mod8_Y, mod8_sigma):
    z0 = mod8_Y.members.index(mod8.zero)
    a, b = np.indices((4, 4))
    assert np.array_equal(mod8_sigma.table[z0, z0], mod8.plus(mod8.neg(a), mod8.mul.op[a, b]))


def test_brace_sigma_at_zero_element(mod8, mod8_Y, mod8_sigma):
    for i, zi in enumerate(mod8_Y.members):
        for j, zj in enumerate(mod8_Y.members):
            zinv = mod8.minv(zi)
            b = np.arange(4)
            expected = mod8.plus(zinv, mod8.neg(mod8.mul.op[zinv, zj]), mod8.mul.op[b, zj])
            assert np.array_equal(mod8_sigma.table[i, j, mod8.zero], expected)


def test_identity_twist_is_d_twist(mod8_Y):
    S = identity_solution(mod8_Y)
    assert is_d_twist(identity_sigma(mod8_Y).table, S, S).passed


def test_brace_solution_d_equivalent_to_identity(mod8_Y, mod8_sigma, mod8_solution):
    rep = is_d_twist(mod8_sigma.table, mod8_solution, identity_solution(mod8_Y))
    assert rep.passed
    assert "D-equivalent: True" in rep.notes


def test_d_twist_mismatch(mod8_Y, mod8_sigma, mod8_solution):
    rep = is_d_twist(mod8_sigma.table, mod8_solution, mod8_solution)
    assert not rep.passed and rep.checks[0].witness is not None


def test_identity_sigma_admissible_for_trivial(mod8_Y):
    assert admissible_twist_verify(identity_sigma(mod8_Y), trivial_p_rack(mod8_Y)).passed


def test_brace_sigma_admissible(mod8_Y, mod8_sigma, mod8_solution):
    assert admissible_twist_verify(mod8_sigma, trivial_p_rack(mod8_Y)).passed
    assert mod8_solution.flags["reversible"]
    assert (derived_shelf(mod8_solution).op == np.arange(4)).all()


def test_conjugate_rack_twist(mod8, mod8_Y, mod8_conj, mod8_sigma):
    S = twisted_solution(mod8_conj, mod8_sigma)
    assert solution_verify_direct(S.sigma, S.tau, S.params).passed


def test_identity_sigma_returns_p_shelf_solution(z4_core):
    S = twisted_solution(z4_core, identity_sigma(z4_core.params))
    ref = p_shelf_solution(z4_core)
    assert np.array_equal(S.sigma, ref.sigma) and np.array_equal(S.tau, ref.tau)


def test_affine_xi_zero_is_brace_sigma(mod8, mod8_Y, mod8_sigma):
    assert np.array_equal(affine_sigma(mod8, mod8_Y, mod8.zero).table, mod8_sigma.table)


def test_affine_sigma_twist(mod8, mod8_Y):
    xi = MOD8[3]
    P = affine_p_rack(mod8, mod8_Y, xi)
    sig = affine_sigma(mod8, mod8_Y, xi)
    assert admissible_twist_verify(sig, P).passed
    twisted_solution(P, sig)


def test_core_sigma_a_on_z4(z4_brace, z4_Y, z4_core):
    sig = core_sigma_a(z4_brace, z4_Y)
    assert admissible_twist_verify(sig, z4_core).passed
    S = twisted_solution(z4_core, sig)
    assert solution_verify_direct(S.sigma, S.tau, S.params).passed


def test_core_sigma_b_composition_brace_vs_skew(z4_brace, z4_Y):
    assert sigma_composition_check(core_sigma_b(z4_brace, z4_Y), z4_brace.mul).passed
    B = almost_trivial_brace(symmetric_group(3))
    Y = param_set(B, [B.zero], "inverse")
    assert not sigma_composition_check(core_sigma_b(B, Y), B.mul).passed


def test_sigma_inverse_identity(mod8, mod8_sigma):
    assert sigma_inverse_identity_check(mod8_sigma, mod8.mul).passed


def test_bullet_brace(mod8, mod8_Y, mod8_sigma):
    bt = bullet_from_sigma(mod8.mul, mod8_sigma, brace_h(mod8, mod8_Y))
    assert bt.report.passed
    z = mod8_Y.z
    a, b = np.indices((4, 4))
    for i in range(4):
        for j in range(4):
            expected = mod8.add.op[mod8.mul.op[a, z[i]], mod8.mul.op[b, z[j]]]
            assert np.array_equal(bt.table[i, j], expected)


def test_bullet_identity_sigma(mod8, mod8_Y):
    h = SymmetricH.of(np.full((4, 4), mod8.zero))
    bt = bullet_from_sigma(mod8.mul, identity_sigma(mod8_Y), h)
    assert np.array_equal(bt.table[0, 0], mod8.mul.op)


def test_bullet_general_identities(mod8, mod8_Y, mod8_conj, mod8_sigma):
    bt = bullet_from_sigma(mod8.mul, mod8_sigma, brace_h(mod8, mod8_Y), P=mod8_conj)
    assert len(bt.report.checks) == 3 and bt.report.passed


def test_non_permutation_sigma_rejected(mod8_Y):
    table = np.array(identity_sigma(mod8_Y).table)
    table[1, 2, 3] = [0, 0, 1, 2]
    with pytest.raises(NotBijective) as exc:
        sigma_family(table, mod8_Y)
    assert exc.value.witness == {"i": 1, "j": 2, "a": 3}


def test_brace_sigma_preconditions():
    B = almost_trivial_brace(symmetric_group(3))
    Y = param_set(B, [B.zero, 1], "identity")
    with pytest.raises(ParamSetOutsideCenter) as exc:
        brace_sigma(B, Y, mode="p2")
    assert exc.value.witness == {"z": 1}
    with pytest.raises(HypothesesNotMet):
        brace_sigma(B, Y, mode="p1")


def test_not_admissible_refused(mod8_Y, mod8_sigma):
    rng = np.random.default_rng(7)
    P = trivial_p_rack(mod8_Y)
    for _ in range(50):
        sig = sigma_family(swap_mutation(mod8_sigma.table, rng), mod8_Y)
        if not admissible_twist_verify(sig, P).passed:
            with pytest.raises(NotAdmissible):
                twisted_solution(P, sig)
            return
    pytest.fail("no non-admissible mutation found")


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_admissibility_iff_solform_solves(mod8_Y, mod8_sigma, seed):
    rng = np.random.default_rng(seed)
    P = trivial_p_rack(mod8_Y)
    sig = sigma_family(swap_mutation(mod8_sigma.table, rng), mod8_Y)
    s, t = solform_tables(P, sig)
    assert admissible_twist_verify(sig, P).passed == solution_verify_direct(s, t, mod8_Y).passed


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_admissibility_iff_solform_solves_core(z4_brace, z4_Y, z4_core, seed):
    rng = np.random.default_rng(seed)
    base = core_sigma_a(z4_brace, z4_Y)
    sig = sigma_family(swap_mutation(base.table, rng), z4_Y)
    s, t = solform_tables(z4_core, sig)
    assert admissible_twist_verify(sig, z4_core).passed == solution_verify_direct(s, t, z4_Y).passed
