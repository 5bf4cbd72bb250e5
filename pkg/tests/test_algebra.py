from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import MOD8, MOD8_FIX, MOD8_NEG_5, MOD8_PLUS_3_5, MOD8_TIMES_3_5, ODD_PLUS
from paramybe.algebra import (
    Carrier,
    additive_center,
    almost_trivial_brace,
    cyclic_group,
    fix_set,
    group_from_table,
    modular_brace,
    odd_fraction_spot_check,
    odd_plus,
    param_product_table,
    param_set,
    right_distributor,
    skew_brace_new,
    symmetric_group,
    trivial_brace,
)
from paramybe.errors import (
    DistributivityFails,
    InputError,
    NoIdentity,
    NotAssociative,
    NotClosedUnderInverse,
    NotInvolutive,
    YNotClosed,
)


def test_cyclic_group_inverse():
    g = cyclic_group(4)
    assert g.identity == 0
    assert g.inv[1] == 3


def test_symmetric_group_size():
    assert symmetric_group(3).n == 6
    assert not symmetric_group(3).is_abelian()


def test_constant_table_is_not_a_group():
    with pytest.raises((NotAssociative, NoIdentity)):
        group_from_table(Carrier.of_size(2), [[0, 0], [0, 0]])


def test_trivial_and_almost_trivial_braces():
    assert trivial_brace(cyclic_group(4)).is_brace()
    B = almost_trivial_brace(symmetric_group(3))
    assert not B.is_brace()
    assert additive_center(B) == (B.zero,)


def test_modular_brace_arithmetic():
    B = modular_brace(3)
    assert B.carrier.labels == ("1", "3", "5", "7")
    assert B.add.op[MOD8[3], MOD8[5]] == MOD8_PLUS_3_5
    assert B.mul.op[MOD8[3], MOD8[5]] == MOD8_TIMES_3_5
    assert B.neg(MOD8[5]) == MOD8_NEG_5
    assert B.zero == MOD8[1]


def test_one_element_brace():
    B = modular_brace(1)
    assert B.n == 1
    assert right_distributor(B) == (0,)


def test_distributor_center_fix():
    B = modular_brace(3)
    assert right_distributor(B) == (0, 1, 2, 3)
    assert fix_set(B) == MOD8_FIX
    T = trivial_brace(cyclic_group(4))
    assert right_distributor(T) == (0, 1, 2, 3)
    assert additive_center(T) == fix_set(T) == (0, 1, 2, 3)


def test_bad_brace_rejected():
    g = cyclic_group(4)
    # Z4 transported along the swap 1 <-> 2 is a group sharing the identity but not a brace partner
    p = np.array([0, 2, 1, 3])
    inv = np.argsort(p)
    h = group_from_table(g.carrier, p[g.op[inv][:, inv]])
    with pytest.raises(DistributivityFails) as exc:
        skew_brace_new(g, h)
    assert exc.value.witness == {"a": 2, "b": 1, "c": 1}


def test_mod8_inverse_mu_is_identity(mod8):
    Y = param_set(mod8, range(4), "inverse")
    assert Y.mu == (0, 1, 2, 3)


def test_param_set_errors(mod8, z4):
    with pytest.raises(NotInvolutive):
        param_set(mod8, [1], [1])
    with pytest.raises(NotClosedUnderInverse):
        param_set(z4, [1], "inverse")
    with pytest.raises(InputError):
        param_set(Carrier.of_size(3), [0], "inverse")
    Y = param_set(z4, [0, 1, 2], "identity")
    with pytest.raises(YNotClosed):
        param_product_table(Y)


def test_singleton_param_set(mod8):
    Y = param_set(mod8, [mod8.zero])
    assert Y.m == 1 and Y.mu == (0,)


def test_odd_fraction_oracle():
    a, b, expected = ODD_PLUS
    assert odd_plus(a, b) == expected
    one = Fraction(1)
    assert odd_plus(one, Fraction(7, 3)) == Fraction(7, 3)
    a, b, c = Fraction(3), Fraction(1, 3), Fraction(5)
    assert a * odd_plus(b, c) == odd_plus(odd_plus(a * b, 2 - a), a * c)


def test_odd_fraction_spot_check():
    res = odd_fraction_spot_check(300, seed=3)
    assert res["passed"], res["failures"][:3]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 6]))
def test_trivial_brace_laws_agree(n):
    B = trivial_brace(cyclic_group(n))
    a, b, c = np.indices((n, n, n))
    lhs = B.mul.op[a, B.add.op[b, c]]
    assert (lhs == B.plus(B.mul.op[a, b], B.neg(a), B.mul.op[a, c])).all()
    assert (lhs == B.plus(B.mul.op[a, b], B.mul.op[a, B.add.op[B.minv(a), c]])).all()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4))
def test_modular_braces_are_braces(k):
    B = modular_brace(k)
    assert B.is_brace()
    assert B.n == 2 ** (k - 1)
