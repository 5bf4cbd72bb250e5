"""Shelves, racks and their parametric versions (p-shelves / p-racks).

A p-shelf table is indexed ``op[i, j, a, b] = a ▷_{z_i z_j} b``: parameter
positions first, elements last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Carrier,
    ParamSet,
    SkewBrace,
    additive_center,
    frozen_array,
    is_permutation_rows,
    params_commute,
    right_distributor,
)
from .errors import (
    BetaNonCommuting,
    CondFails,
    InputError,
    InternalInconsistency,
    ParamSetOutsideCenter,
    ParamSetOutsideDistributor,
    ParamsNotCommuting,
    SelfDistributivityFails,
    ShapeMismatch,
)
from .report import Report, first_witness


@dataclass(frozen=True, eq=False)
class Shelf:
    carrier: Carrier
    op: np.ndarray

    @property
    def n(self) -> int:
        return self.carrier.size

    @property
    def is_rack(self) -> bool:
        return bool(is_permutation_rows(self.op).all())

    @property
    def is_quandle(self) -> bool:
        return self.is_rack and bool((self.op[np.arange(self.n), np.arange(self.n)] == np.arange(self.n)).all())


def self_distributivity_witness(op: np.ndarray) -> dict | None:
    n = op.shape[0]
    a, b, c = np.indices((n, n, n))
    return first_witness(op[a, op[b, c]] != op[op[a, b], op[a, c]], ("a", "b", "c"))


def shelf_new(carrier: Carrier, op) -> Shelf:
    n = carrier.size
    table = np.array(op, dtype=np.int64)
    if table.shape != (n, n) or table.min() < 0 or table.max() >= n:
        raise ShapeMismatch(f"shelf table must be {n}x{n} with entries in range")
    w = self_distributivity_witness(table)
    if w is not None:
        raise SelfDistributivityFails("left self-distributivity fails", witness=w)
    return Shelf(carrier, frozen_array(table))


def core_quandle(g) -> Shelf:
    """a ▷ b = a - b + a in the group ``g`` (written additively)."""
    a, b = np.indices((g.n, g.n))
    return shelf_new(g.carrier, g.op[g.op[a, g.inv[b]], a])


def conjugation_quandle(g) -> Shelf:
    """a ▷ b = -a + b + a."""
    a, b = np.indices((g.n, g.n))
    return shelf_new(g.carrier, g.op[g.op[g.inv[a], b], a])


@dataclass(frozen=True, eq=False)
class PShelf:
    carrier: Carrier
    params: ParamSet
    op: np.ndarray
    is_rack: bool

    @property
    def n(self) -> int:
        return self.carrier.size

    @property
    def m(self) -> int:
        return self.params.m

    def at(self, i: int, j: int) -> np.ndarray:
        return self.op[i, j]


def p_self_distributivity_mask(op: np.ndarray) -> np.ndarray:
    """Mismatch mask over (i, j, k, a, b, c) for a▷_ik(b▷_jk c) = (a▷_ij b)▷_jk(a▷_ik c)."""
    m, n = op.shape[0], op.shape[2]
    i, j, k, a, b, c = np.indices((m, m, m, n, n, n), sparse=True)
    lhs = op[i, k, a, op[j, k, b, c]]
    rhs = op[j, k, op[i, j, a, b], op[i, k, a, c]]
    return lhs != rhs


def p_shelf_report(op, params: ParamSet) -> Report:
    table = _check_shape(op, params)
    rep = Report("p-shelf")
    rep.add("generalized left p-self-distributivity", first_witness(p_self_distributivity_mask(table), "ijkabc"))
    rack = is_permutation_rows(table).all()
    rep.notes.append(f"rack: {bool(rack)}")
    return rep


def _check_shape(op, params: ParamSet) -> np.ndarray:
    table = np.array(op, dtype=np.int64)
    m, n = params.m, params.carrier.size
    if table.shape != (m, m, n, n):
        raise ShapeMismatch(f"p-shelf table must have shape {(m, m, n, n)}, got {table.shape}")
    if table.min() < 0 or table.max() >= n:
        raise ShapeMismatch("table entries out of range")
    return table


def p_shelf_verify(op, params: ParamSet) -> PShelf:
    table = _check_shape(op, params)
    w = first_witness(p_self_distributivity_mask(table), "ijkabc")
    if w is not None:
        raise SelfDistributivityFails(witness=w)
    rack = bool(is_permutation_rows(table).all())
    return PShelf(params.carrier, params, frozen_array(table), rack)


def trivial_p_rack(params: ParamSet) -> PShelf:
    m, n = params.m, params.carrier.size
    op = np.broadcast_to(np.arange(n), (m, m, n, n))
    return p_shelf_verify(op, params)


# ---------------------------------------------------------------- α and β deformations

@dataclass(frozen=True, eq=False)
class AlphaFamily:
    """alpha[i, j, a] = α_ij(a), one map per ordered pair of parameter positions."""

    maps: np.ndarray

    @property
    def m(self) -> int:
        return self.maps.shape[0]

    @property
    def bijective(self) -> bool:
        return bool(is_permutation_rows(self.maps).all())

    @classmethod
    def of(cls, maps) -> "AlphaFamily":
        arr = np.array(maps, dtype=np.int64)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1]:
            raise ShapeMismatch("α family must have shape (m, m, n)")
        return cls(frozen_array(arr))


def alpha_cond_mask(shelf: Shelf, alpha: AlphaFamily) -> np.ndarray:
    """Mismatch over (i, j, h, a, b) of α_ih(a)▷α_jh(b) = α_jh(α_ij(a)▷b)."""
    m, n = alpha.m, shelf.n
    al, op = alpha.maps, shelf.op
    i, j, h, a, b = np.indices((m, m, m, n, n), sparse=True)
    return op[al[i, h, a], al[j, h, b]] != al[j, h, op[al[i, j, a], b]]


def from_alpha(shelf: Shelf, alpha: AlphaFamily, params: ParamSet) -> PShelf:
    if alpha.m != params.m or alpha.maps.shape[2] != shelf.n:
        raise ShapeMismatch("α family does not match the parameter set / carrier")
    w = first_witness(alpha_cond_mask(shelf, alpha), "ijhab")
    if w is not None:
        raise CondFails(witness=w)
    op = shelf.op[alpha.maps[:, :, :, None], np.arange(shelf.n)[None, None, None, :]]
    out = p_shelf_verify(op, params)
    if shelf.is_rack and alpha.bijective and not out.is_rack:
        raise InternalInconsistency("rack with bijective α produced a non-rack")
    return out


def alpha_endomorphism_check(shelf: Shelf, alpha: AlphaFamily) -> Report:
    m, n = alpha.m, shelf.n
    al, op = alpha.maps, shelf.op
    rep = Report("α-family")
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    endo = first_witness(al[i, j, op[a, b]] != op[al[i, j, a], al[i, j, b]], "ijab")
    rep.add("each α_ij is a shelf endomorphism", endo)
    i, j, h, a = np.indices((m, m, m, n), sparse=True)
    comp = first_witness(al[i, j, a] != al[h, j, al[i, h, a]], "ijha")
    rep.add("α_ij = α_hj α_ih", comp)
    cond = first_witness(alpha_cond_mask(shelf, alpha), "ijhab")
    rep.add("compatibility α_ih(a)▷α_jh(b) = α_jh(α_ij(a)▷b)", cond)
    if endo is None and comp is None and cond is not None:
        raise InternalInconsistency("endomorphisms obeying the composition law violate compatibility")
    return rep


def beta_commutation_witness(beta: np.ndarray) -> dict | None:
    m, n = beta.shape[0], beta.shape[2]
    i, j, k, a = np.indices((m, m, m, n), sparse=True)
    return first_witness(beta[i, k, beta[j, k, a]] != beta[j, k, beta[i, k, a]], "ijka")


def from_beta(beta, params: ParamSet) -> PShelf:
    """a ▷_ij b = β_ij(b), valid exactly when β_ik and β_jk commute."""
    arr = np.array(beta, dtype=np.int64)
    m, n = params.m, params.carrier.size
    if arr.shape != (m, m, n):
        raise ShapeMismatch(f"β family must have shape {(m, m, n)}")
    w = beta_commutation_witness(arr)
    if w is not None:
        raise BetaNonCommuting(witness=w)
    op = np.broadcast_to(arr[:, :, None, :], (m, m, n, n))
    out = p_shelf_verify(op, params)
    if out.is_rack != bool(is_permutation_rows(arr).all()):
        raise InternalInconsistency("rack flag disagrees with bijectivity of β")
    return out


# ---------------------------------------------------------------- brace p-racks

def _brace_params(B: SkewBrace, Y: ParamSet, need_center: bool) -> None:
    D = set(right_distributor(B))
    for z in Y.members:
        if z not in D:
            raise ParamSetOutsideDistributor(witness={"z": z})
    if need_center:
        Z = set(additive_center(B))
        for z in Y.members:
            if z not in Z:
                raise ParamSetOutsideCenter(witness={"z": z})
    w = params_commute(B, Y)
    if w is not None:
        raise ParamsNotCommuting(witness=w)


def _shift(B: SkewBrace, Y: ParamSet) -> np.ndarray:
    """s[i, j, a] = a ∘ z_i ∘ z_j^{-1}."""
    z = Y.z
    n = B.n
    zz = B.mul.op[z[:, None], B.minv(z)[None, :]]
    return B.mul.op[np.arange(n)[None, None, :], zz[:, :, None]]


def conjugate_p_rack(B: SkewBrace, Y: ParamSet) -> PShelf:
    """a ▷_ij b = -(a∘z_i∘z_j^{-1}) + b + a∘z_i∘z_j^{-1}."""
    _brace_params(B, Y, need_center=True)
    s = _shift(B, Y)[:, :, :, None]
    b = np.arange(B.n)[None, None, None, :]
    out = p_shelf_verify(B.plus(B.neg(s), b, s), Y)
    if not out.is_rack:
        raise InternalInconsistency("conjugate p-rack is not a rack")
    return out


def affine_p_rack(B: SkewBrace, Y: ParamSet, xi: int) -> PShelf:
    """a ▷_ij b = -(ξ∘a∘z_i∘z_j^{-1}) + ξ∘b + a∘z_i∘z_j^{-1}."""
    _brace_params(B, Y, need_center=True)
    s = _shift(B, Y)[:, :, :, None]
    b = np.arange(B.n)[None, None, None, :]
    op = B.plus(B.neg(B.mul.op[xi, s]), B.mul.op[xi, b], s)
    out = p_shelf_verify(op, Y)
    if xi == B.zero and not np.array_equal(out.op, conjugate_p_rack(B, Y).op):
        raise InternalInconsistency("affine p-rack with ξ = 0 differs from the conjugate p-rack")
    return out


def core_p_rack(B: SkewBrace, Y: ParamSet) -> PShelf:
    """a ▷_ij b = a∘z_i∘z_j^{-1} - b + a∘z_i∘z_j^{-1}."""
    _brace_params(B, Y, need_center=False)
    s = _shift(B, Y)[:, :, :, None]
    b = np.arange(B.n)[None, None, None, :]
    return p_shelf_verify(B.plus(s, B.neg(b), s), Y)


def shift_alpha(g, Y: ParamSet) -> AlphaFamily:
    """α_ij(a) = a + z_i - z_j in the group ``g``."""
    z = Y.z
    a = np.arange(g.n)
    return AlphaFamily.of(g.op[g.op[a[None, None, :], z[:, None, None]], g.inv[z][None, :, None]])


def brace_alpha(B: SkewBrace, Y: ParamSet) -> AlphaFamily:
    """α_ij(a) = a∘z_i∘z_j^{-1}."""
    return AlphaFamily.of(_shift(B, Y))


def check_params_shape(params: ParamSet, n: int) -> None:
    if params.carrier.size != n:
        raise InputError("parameter set lives on a different carrier")
