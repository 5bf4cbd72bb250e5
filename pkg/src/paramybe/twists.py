"""Drinfel'd twists, admissible twists and the σ-families built from skew braces.

The twist attached to a σ-family is φ^{ij}(a, b) = (a, σ^{ji}_a(b)); note the
transposed parameter pair. Everything that reads σ through φ goes through
``phi`` below so the transposition lives in one place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Carrier,
    GroupTable,
    ParamSet,
    SkewBrace,
    additive_center,
    frozen_array,
    invert_rows,
    is_permutation_rows,
    param_product_table,
    params_commute,
    right_distributor,
)
from .errors import (
    HypothesesNotMet,
    InputError,
    InternalInconsistency,
    NotAdmissible,
    NotBijective,
    ParamSetOutsideCenter,
    ParamSetOutsideDistributor,
    ParamsNotCommuting,
    ShapeMismatch,
    StructureGroupFails,
)
from .report import Report, first_witness
from .shelves import PShelf, trivial_p_rack
from .solutions import ParamSolution, make_solution, solution_verify_direct


@dataclass(frozen=True, eq=False)
class SigmaFamily:
    carrier: Carrier
    params: ParamSet
    table: np.ndarray
    inverse: np.ndarray

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def n(self) -> int:
        return self.carrier.size


def sigma_family(table, params: ParamSet) -> SigmaFamily:
    arr = np.array(table, dtype=np.int64)
    m, n = params.m, params.carrier.size
    if arr.shape != (m, m, n, n) or arr.min() < 0 or arr.max() >= n:
        raise ShapeMismatch(f"σ table must have shape {(m, m, n, n)} with entries in range")
    bad = ~is_permutation_rows(arr)
    w = first_witness(bad, "ija")
    if w is not None:
        raise NotBijective("σ^{ij}_a is not a permutation", witness=w)
    return SigmaFamily(params.carrier, params, frozen_array(arr), frozen_array(invert_rows(arr)))


def identity_sigma(params: ParamSet) -> SigmaFamily:
    m, n = params.m, params.carrier.size
    return sigma_family(np.broadcast_to(np.arange(n), (m, m, n, n)), params)


@dataclass(frozen=True)
class SymmetricH:
    """h[i][j] is an element index; symmetric in (i, j)."""

    table: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, table) -> "SymmetricH":
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeMismatch("h must be a square table")
        w = first_witness(arr != arr.T, "ij")
        if w is not None:
            raise InputError("h is not symmetric", witness=w)
        return cls(tuple(tuple(int(x) for x in row) for row in arr))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)


def phi(sigma: np.ndarray, i, j, a, b):
    """φ^{ij}(a, b) = (a, σ^{ji}_a(b))."""
    return a, sigma[j, i, a, b]


# ---------------------------------------------------------------- twists

def is_d_twist(sigma_phi: np.ndarray, R: ParamSolution, S: ParamSolution) -> Report:
    """φ^{ij} R^{ij} = S^{ij} φ_21^{ji}, where φ_21 = π φ π acts on the swapped pair."""
    m, n = R.m, R.n
    i, j, x, y = np.indices((m, m, n, n), sparse=True)
    # left: R^{ij}(x, y) then φ^{ij}
    u, v = R.sigma[i, j, y, x], R.tau[i, j, x, y]
    lu, lv = phi(sigma_phi, i, j, u, v)
    # right: φ^{ji} on (y, x), flip back, then S^{ij}
    py, px = phi(sigma_phi, j, i, y, x)
    ru, rv = S.sigma[i, j, py, px], S.tau[i, j, px, py]
    rep = Report("Drinfel'd twist relation")
    rep.add("φ R = S φ_21", first_witness((lu != ru) | (lv != rv), "ijxy"))
    bij = bool(is_permutation_rows(sigma_phi).all())
    rep.notes.append(f"D-equivalent: {rep.passed and bij}")
    return rep


def twisted_tau(P: PShelf, sigma: SigmaFamily) -> np.ndarray:
    """τ^{ij}_b(a) = (σ^{ji}_{σ^{ij}_a(b)})^{-1}(σ^{ij}_a(b) ▷_ij a), stored tau[i, j, b, a]."""
    m, n = sigma.m, sigma.n
    s, sinv = sigma.table, sigma.inverse
    i, j, b, a = np.indices((m, m, n, n), sparse=True)
    sab = s[i, j, a, b]
    return sinv[j, i, sab, P.op[i, j, sab, a]]


def admissible_twist_verify(sigma: SigmaFamily, P: PShelf) -> Report:
    m, n = sigma.m, sigma.n
    s = sigma.table
    t = twisted_tau(P, sigma)
    op = P.op
    i, j, k, a, b, c = np.indices((m, m, m, n, n, n), sparse=True)
    rep = Report("admissible twist")
    lhs = s[i, k, a, s[i, j, b, c]]
    rhs = s[i, j, s[j, k, a, b], s[i, k, t[j, k, b, a], c]]
    rep.add("admissibility condition (1): σσ = σσ", first_witness(lhs != rhs, "ijkabc"))
    lhs = op[i, j, s[i, k, c, b], s[j, k, c, a]]
    rhs = s[j, k, c, op[i, j, b, a]]
    rep.add("admissibility condition (2): σ is ▷-compatible", first_witness(lhs != rhs, "ijkabc"))
    return rep


def solform_tables(P: PShelf, sigma: SigmaFamily) -> tuple[np.ndarray, np.ndarray]:
    """Raw (σ, τ) tables of the twisted map, built without any admissibility check."""
    return sigma.table, twisted_tau(P, sigma)


def twisted_solution(P: PShelf, sigma: SigmaFamily) -> ParamSolution:
    rep = admissible_twist_verify(sigma, P)
    if not rep.passed:
        bad = rep.first_failure()
        raise NotAdmissible(bad.name, witness=bad.witness)
    s, t = solform_tables(P, sigma)
    direct = solution_verify_direct(s, t, sigma.params)
    if not direct.passed:
        raise InternalInconsistency("admissible twist produced a non-solution")
    sol = make_solution(s, t, sigma.params)
    d = is_d_twist(s, sol, _p_shelf_solution(P))
    if not d.passed:
        raise InternalInconsistency("twisted solution is not D-equivalent to the p-shelf solution")
    return sol


def _p_shelf_solution(P: PShelf) -> ParamSolution:
    from .solutions import p_shelf_solution

    return p_shelf_solution(P)


# ---------------------------------------------------------------- brace σ-families

def _check_params(B: SkewBrace, Y: ParamSet, center: bool) -> None:
    D = set(right_distributor(B))
    for z in Y.members:
        if z not in D:
            raise ParamSetOutsideDistributor(witness={"z": z})
    if center:
        Z = set(additive_center(B))
        for z in Y.members:
            if z not in Z:
                raise ParamSetOutsideCenter(witness={"z": z})
    w = params_commute(B, Y)
    if w is not None:
        raise ParamsNotCommuting(witness=w)


def _grids(B: SkewBrace, Y: ParamSet):
    z = Y.z
    zi = z[:, None, None, None]
    zj = z[None, :, None, None]
    a = np.arange(B.n)[None, None, :, None]
    b = np.arange(B.n)[None, None, None, :]
    return zi, zj, a, b


def brace_sigma(B: SkewBrace, Y: ParamSet, mode: str = "p1") -> SigmaFamily:
    """σ^{ij}_a(b) = z_i^{-1} - a∘z_i^{-1}∘z_j + a∘b∘z_j.

    ``mode="p1"`` requires a brace with Y in the distributor; ``mode="p2"``
    accepts skew braces but also needs Y in the additive center.
    """
    if mode == "p1":
        if not B.is_brace():
            raise HypothesesNotMet("reversible mode needs an abelian additive group")
        _check_params(B, Y, center=False)
    elif mode == "p2":
        _check_params(B, Y, center=True)
    else:
        raise InputError(f"unknown mode {mode!r}")
    T = B.times
    zi, zj, a, b = _grids(B, Y)
    zinv = B.minv(zi)
    table = B.plus(zinv, B.neg(T(a, zinv, zj)), T(a, b, zj))
    return sigma_family(table, Y)


def affine_sigma(B: SkewBrace, Y: ParamSet, xi: int) -> SigmaFamily:
    """σ^{ij}_a(b) = z_i^{-1} - ξ∘a∘z_i^{-1}∘z_j + a∘b∘ξ∘z_j."""
    _check_params(B, Y, center=True)
    D = set(right_distributor(B))
    if xi not in D or not (B.mul.op[xi, :] == B.mul.op[:, xi]).all():
        raise HypothesesNotMet("ξ must lie in the distributor and the ∘-center", witness={"xi": xi})
    T = B.times
    zi, zj, a, b = _grids(B, Y)
    zinv = B.minv(zi)
    table = B.plus(zinv, B.neg(T(xi, a, zinv, zj)), T(a, b, xi, zj))
    return sigma_family(table, Y)


def core_sigma_a(B: SkewBrace, Y: ParamSet) -> SigmaFamily:
    """σ^{ij}_a(b) = z_i^{-1} - a∘b∘z_j + a∘z_i^{-1}∘z_j."""
    _check_params(B, Y, center=False)
    T = B.times
    zi, zj, a, b = _grids(B, Y)
    zinv = B.minv(zi)
    return sigma_family(B.plus(zinv, B.neg(T(a, b, zj)), T(a, zinv, zj)), Y)


def core_sigma_b(B: SkewBrace, Y: ParamSet) -> SigmaFamily:
    """σ^{ij}_a(b) = a∘z_i^{-1}∘z_j - z_i^{-1} + a∘b∘z_j."""
    _check_params(B, Y, center=False)
    T = B.times
    zi, zj, a, b = _grids(B, Y)
    zinv = B.minv(zi)
    return sigma_family(B.plus(T(a, zinv, zj), B.neg(zinv), T(a, b, zj)), Y)


def sigma_composition_check(sigma: SigmaFamily, group: GroupTable) -> Report:
    """σ^{ik}_a σ^{ij}_b = σ^{i,jk}_{a∘b}; needs Y closed under ∘."""
    prod = param_product_table(sigma.params)
    m, n = sigma.m, sigma.n
    s = sigma.table
    i, j, k, a, b, c = np.indices((m, m, m, n, n, n), sparse=True)
    lhs = s[i, k, a, s[i, j, b, c]]
    rhs = s[i, prod[j, k], group.op[a, b], c]
    rep = Report("σ composition law")
    rep.add("σ^{ik}_a σ^{ij}_b = σ^{i,jk}_{a∘b}", first_witness(lhs != rhs, "ijkabc"))
    return rep


def sigma_inverse_identity_check(sigma: SigmaFamily, group: GroupTable) -> Report:
    """(σ^{ij}_a)^{-1} = σ^{i j̄}_{a^{-1}}."""
    m, n = sigma.m, sigma.n
    mu = sigma.params.mu_array
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    rep = Report("σ inverse identity")
    w = first_witness(sigma.inverse[i, j, a, b] != sigma.table[i, mu[j], group.inv[a], b], "ijab")
    rep.add("(σ^{ij}_a)^{-1} = σ^{i j̄}_{a^{-1}}", w)
    return rep


# ---------------------------------------------------------------- the • operation

@dataclass(frozen=True, eq=False)
class BulletTable:
    """bullet[i, j, a, b] = a •_{ij} b."""

    table: np.ndarray
    report: Report


def bullet_from_sigma(G: GroupTable, sigma: SigmaFamily, h: SymmetricH, P: PShelf | None = None) -> BulletTable:
    """a •_{ji} b = a∘(σ^{ij}_a)^{-1}(b)∘h_ij.

    With ``P`` omitted the reversible hypotheses are enforced and the symmetry
    a •_{ji} b = b •_{ij} a is asserted; with ``P`` the structure-group relation
    for the twisted τ is enforced and the two general identities are asserted.
    """
    m, n = sigma.m, sigma.n
    s, sinv = sigma.table, sigma.inverse
    harr = h.array
    if harr.shape != (m, m):
        raise ShapeMismatch("h must be m×m")
    op, inv = G.op, G.inv
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    rep = Report("• from σ")
    if P is None:
        # τ forced by the structure-group relation, then reversibility must hold
        tau = op[inv[s[i, j, a, b]], op[a, b]]  # tau[i,j,a,b] = τ^{ij}_b(a)
        back = s[j, i, s[i, j, a, b], tau]
        w = first_witness(back != a, "ijab")
        rep.add("reversibility σ^{ji}_{σ^{ij}_a(b)}(τ^{ij}_b(a)) = a", w)
        if w is not None:
            raise StructureGroupFails("reversibility relation fails", witness=w)
    else:
        t = twisted_tau(P, sigma)
        w = first_witness(op[a, b] != op[s[i, j, a, b], t[i, j, b, a]], "ijab")
        rep.add("structure-group relation a∘b = σ_a(b)∘τ_b(a)", w)
        if w is not None:
            raise StructureGroupFails(witness=w)
    # table[q, p] holds •_{qp}, defined from σ^{pq}
    bt = np.empty((m, m, n, n), dtype=np.int64)
    A = np.arange(n)[:, None]
    for p in range(m):
        for q in range(m):
            bt[q, p] = op[op[A, sinv[p, q]], harr[p, q]]
    if P is None:
        w = first_witness(bt[j, i, a, b] != bt[i, j, b, a], "ijab")
        rep.add("symmetry a •_{ji} b = b •_{ij} a", w)
        if w is not None:
            raise InternalInconsistency("• symmetry fails under reversible hypotheses")
    else:
        w1 = first_witness(bt[j, i, a, b] != bt[i, j, b, P.op[i, j, b, a]], "ijab")
        rep.add("a •_{ji} b = b •_{ij} (b ▷_ij a)", w1)
        w2 = first_witness(bt[j, i, a, s[i, j, a, b]] != op[op[a, b], harr[i, j]], "ijab")
        rep.add("a •_{ji} σ^{ij}_a(b) = a∘b∘h_ij", w2)
        if w1 is not None or w2 is not None:
            raise InternalInconsistency("general • identities fail under their hypotheses")
    return BulletTable(frozen_array(bt), rep)


def brace_h(B: SkewBrace, Y: ParamSet, xi: int | None = None) -> SymmetricH:
    """h_ij = z_i∘z_j (or ξ∘z_i∘z_j)."""
    z = Y.z
    h = B.mul.op[z[:, None], z[None, :]]
    if xi is not None:
        h = B.mul.op[xi, h]
    return SymmetricH.of(h)


def identity_solution_for(params: ParamSet) -> ParamSolution:
    return _p_shelf_solution(trivial_p_rack(params))
