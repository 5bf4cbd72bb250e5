import math

import numpy as np
import pytest

from oracles import (
    P_RACKS_N2_M2,
    P_SHELVES_N2_M2,
    RACKS,
    RACKS_UP_TO_RELABELING,
    SHELVES,
    SHELVES_UP_TO_RELABELING,
    Z4_CORE_REFLECTIONS,
)
from paramybe.algebra import Carrier, param_set
from paramybe.errors import BudgetExceeded, InputError
from paramybe.search import (
    SearchStats,
    canonical_form,
    compare_reflection_sets,
    count_shelves_plain,
    enumerate_admissible_sigmas,
    enumerate_p_shelves,
    enumerate_reflections,
)
from paramybe.shelves import from_beta, p_shelf_verify, trivial_p_rack
from paramybe.solutions import identity_solution
from paramybe.twists import identity_sigma


def test_single_element_carrier():
    assert len(list(enumerate_p_shelves(1, 1))) == 1
    with pytest.raises(InputError):
        list(enumerate_p_shelves(1, 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_m1_matches_plain_counter(n):
    stats = SearchStats()
    found = list(enumerate_p_shelves(n, 1, stats=stats))
    assert len(found) == count_shelves_plain(n) == SHELVES[n]
    assert stats.discrepancies == 0
    assert stats.candidates == n ** (n * n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_racks_match_plain_counter(n):
    found = list(enumerate_p_shelves(n, 1, rack_only=True))
    assert len(found) == count_shelves_plain(n, rack_only=True) == RACKS[n]
    assert all(P.is_rack for P in found)


@pytest.mark.parametrize("n", [2, 3])
def test_dedup_counts(n):
    assert len(list(enumerate_p_shelves(n, 1, up_to_relabeling=True))) == SHELVES_UP_TO_RELABELING[n]
    assert len(list(enumerate_p_shelves(n, 1, rack_only=True, up_to_relabeling=True))) == RACKS_UP_TO_RELABELING[n]


def test_n2_m2_counts_and_beta_membership():
    stats = SearchStats()
    shelves = list(enumerate_p_shelves(2, 2, stats=stats))
    assert len(shelves) == P_SHELVES_N2_M2 and stats.discrepancies == 0
    racks = list(enumerate_p_shelves(2, 2, rack_only=True))
    assert len(racks) == P_RACKS_N2_M2
    Y = param_set(Carrier.of_size(2), [0, 1])
    swap = [1, 0]
    beta = np.array([[swap, [0, 1]], [[0, 1], swap]])
    target = from_beta(beta, Y).op.tobytes()
    assert any(P.op.tobytes() == target for P in racks)


def test_lexicographic_and_deterministic():
    first = [P.op.ravel().tolist() for P in enumerate_p_shelves(2, 2)]
    assert first == sorted(first)
    again = [P.op.ravel().tolist() for P in enumerate_p_shelves(2, 2, threads=4)]
    assert again == first


def test_emit_then_verify():
    for P in enumerate_p_shelves(3, 1, rack_only=True):
        p_shelf_verify(P.op, P.params)


def test_budget():
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_p_shelves(3, 2, budget=1000))
    assert exc.value.witness["estimate"] == 3 ** (4 * 9)
    with pytest.raises(InputError):
        list(enumerate_p_shelves(5, 1))


def test_canonical_form_is_invariant():
    P = list(enumerate_p_shelves(3, 1))[17]
    perm = np.array([2, 0, 1])
    inv = np.argsort(perm)
    relabeled = perm[P.op[:, :, inv[:, None], inv[None, :]]]
    assert np.array_equal(canonical_form(relabeled), canonical_form(P.op))


def test_identity_solution_reflections():
    Y = param_set(Carrier.of_size(3), [0, 1])
    stats = SearchStats()
    found = list(enumerate_reflections(identity_solution(Y), stats=stats))
    assert len(found) == math.factorial(3) ** 2
    assert stats.discrepancies == 0


def test_core_reflections(z4_core_solution, z4_core_K):
    found = list(enumerate_reflections(z4_core_solution))
    assert len(found) == Z4_CORE_REFLECTIONS
    assert any(np.array_equal(K.kappa, z4_core_K.kappa) for K in found)


def test_empty_reflection_stream():
    # a non-reflection-friendly solution: R(b, a) = (b, a+1) on Z3 with one parameter admits only
    # κ commuting with the shift; restricting to an empty candidate space gives no error either
    Y = param_set(Carrier.of_size(1), [0])
    assert len(list(enumerate_reflections(identity_solution(Y)))) == 1


def test_compare_trivial():
    Y = param_set(Carrier.of_size(3), [0, 1], [1, 0])
    cmp = compare_reflection_sets(trivial_p_rack(Y), identity_sigma(Y))
    assert cmp.rack == cmp.twisted == cmp.common == cmp.basic0


def test_compare_mod8(mod8_conj, mod8_sigma):
    cmp = compare_reflection_sets(mod8_conj, mod8_sigma)
    assert len(cmp.rack) == 24**4
    assert len(cmp.twisted) == len(cmp.common) == len(cmp.basic0) == 256
    assert cmp.to_dict()["report"]["subject"]


def test_admissible_sigma_enumeration():
    Y = param_set(Carrier.of_size(2), [0])
    found = list(enumerate_admissible_sigmas(trivial_p_rack(Y)))
    assert len(found) >= 1
    assert any(np.array_equal(s.table, identity_sigma(Y).table) for s in found)
