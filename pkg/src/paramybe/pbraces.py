"""(Skew) p-braces and the p-affine structures η that produce them.

Parameters form a subgroup Y of (X, ∘). Composite subscripts such as
``z_{i,jk}`` are resolved to flat positions through ``prod[j, k]`` (the
position of z_j ∘ z_k), ``z_0`` is the position of the identity, and
``z_ī`` is the position of z_i^{-1}.

Storage: ``eta[i, j, a, b] = η^{ij}_a(b)`` and ``plus[i, j, a, b] = a +_{ij} b``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GroupTable, ParamSet, frozen_array, invert_rows, is_permutation_rows, param_product_table
from .errors import AxiomFails, InputError, InternalInconsistency, NotBijective, ShapeMismatch
from .report import Report, first_witness
from .solutions import ParamSolution, derived_shelf_table, make_solution


@dataclass(frozen=True, eq=False)
class ParamGroup:
    """A parameter subgroup with its index arithmetic resolved once."""

    group: GroupTable
    params: ParamSet
    prod: np.ndarray
    zero: int
    bar: np.ndarray

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def n(self) -> int:
        return self.group.n


def param_group(group: GroupTable, params: ParamSet) -> ParamGroup:
    if params.carrier.size != group.n:
        raise InputError("parameter set lives on a different carrier")
    if params.group is None:
        params = ParamSet(params.carrier, params.members, params.mu, group, True)
    prod = param_product_table(params)
    if group.identity not in params.members:
        raise InputError("the parameter subgroup must contain the identity")
    zero = params.members.index(group.identity)
    bar = np.array([params.members.index(int(group.inv[z])) for z in params.members], dtype=np.int64)
    if not np.array_equal(bar, params.mu_array):
        raise InputError("μ must be ∘-inversion on the parameter subgroup")
    return ParamGroup(group, params, frozen_array(prod), zero, frozen_array(bar))


@dataclass(frozen=True, eq=False)
class EtaFamily:
    pg: ParamGroup
    eta: np.ndarray


@dataclass(frozen=True, eq=False)
class PBraceTable:
    pg: ParamGroup
    plus: np.ndarray


def eta_family(pg: ParamGroup, eta) -> EtaFamily:
    arr = np.array(eta, dtype=np.int64)
    m, n = pg.m, pg.n
    if arr.shape != (m, m, n, n) or arr.min() < 0 or arr.max() >= n:
        raise ShapeMismatch(f"η table must have shape {(m, m, n, n)} with entries in range")
    w = first_witness(~is_permutation_rows(arr), "ija")
    if w is not None:
        raise NotBijective("η^{ij}_a is not a permutation", witness=w)
    return EtaFamily(pg, frozen_array(arr))


def p_brace_table(pg: ParamGroup, plus) -> PBraceTable:
    arr = np.array(plus, dtype=np.int64)
    m, n = pg.m, pg.n
    if arr.shape != (m, m, n, n) or arr.min() < 0 or arr.max() >= n:
        raise ShapeMismatch(f"+ table must have shape {(m, m, n, n)} with entries in range")
    return PBraceTable(pg, frozen_array(arr))


# ---------------------------------------------------------------- η axioms

def eta_report(E: EtaFamily, mode: str) -> Report:
    if mode not in ("reversible", "general"):
        raise InputError(f"unknown mode {mode!r}")
    pg, e = E.pg, E.eta
    m, n, prod, op = pg.m, pg.n, pg.prod, pg.group.op
    rep = Report(f"p-affine structure ({mode})")
    i, j, k, a, b, c = np.indices((m, m, m, n, n, n), sparse=True)
    ab = op[a, b]
    lhs = e[i, prod[j, k], ab, c]
    rhs = e[i, j, b, e[i, k, a, c]]
    alt = e[i, prod[k, j], ab, c]
    rep.add("composition law η^{i,jk}_{a∘b} = η^{ij}_b η^{ik}_a = η^{i,kj}_{a∘b}",
            first_witness((lhs != rhs) | (lhs != alt), "ijkabc"))
    if mode == "reversible":
        i2, j2, a2, b2 = np.indices((m, m, n, n), sparse=True)
        w = first_witness(op[a2, e[i2, j2, a2, b2]] != op[b2, e[j2, i2, b2, a2]], "ijab")
        rep.add("reversibility a∘η^{ij}_a(b) = b∘η^{ji}_b(a)", w)
        return rep
    j2, a2 = np.indices((m, n), sparse=True)
    rep.add("η^{0j}_a(0) = 0", first_witness(e[pg.zero, j2, a2, pg.group.identity] != pg.group.identity, "ja"))
    i3, j3, k3, a3, b3 = np.indices((m, m, m, n, n), sparse=True)
    rep.add("η^{ij,k} = η^{ji,k}",
            first_witness(e[prod[i3, j3], k3, a3, b3] != e[prod[j3, i3], k3, a3, b3], "ijkab"))
    inner = e[j, i, a, b]
    lhs = e[prod[k, j], i, a, op[b, e[k, j, b, c]]]
    rhs = op[inner, e[k, i, inner, e[k, j, a, c]]]
    rep.add("general compatibility η^{kj,i}_a(b∘η^{kj}_b(c)) = η^{ji}_a(b)∘η^{ki}_{η^{ji}_a(b)}η^{kj}_a(c)",
            first_witness(lhs != rhs, "ijkabc"))
    return rep


def eta_verify(E: EtaFamily, mode: str = "reversible") -> Report:
    rep = eta_report(E, mode)
    if mode == "reversible" and rep.passed and not eta_report(E, "general").passed:
        raise InternalInconsistency("reversible p-affine structure fails the general axioms")
    return rep


def _plus_from_eta(E: EtaFamily) -> np.ndarray:
    n = E.pg.n
    a = np.arange(n)[None, None, :, None]
    return E.pg.group.op[a, E.eta]


def p_brace_from_eta(E: EtaFamily) -> PBraceTable:
    rep = eta_verify(E, "reversible")
    bad = rep.first_failure()
    if bad is not None:
        raise AxiomFails(bad.name, witness=bad.witness)
    T = p_brace_table(E.pg, _plus_from_eta(E))
    if not p_brace_verify(T).passed:
        raise InternalInconsistency("p-brace built from a reversible η fails its axioms")
    return T


def skew_p_brace_from_eta(E: EtaFamily) -> PBraceTable:
    rep = eta_verify(E, "general")
    bad = rep.first_failure()
    if bad is not None:
        raise AxiomFails(bad.name, witness=bad.witness)
    T = p_brace_table(E.pg, _plus_from_eta(E))
    if not skew_p_brace_verify(T).passed:
        raise InternalInconsistency("skew p-brace built from η fails its axioms")
    return T


def eta_from_p_brace(T: PBraceTable, mode: str = "reversible") -> EtaFamily:
    """η^{ij}_a(b) = a^{-1}∘(a +_{ij} b)."""
    verify = p_brace_verify if mode == "reversible" else skew_p_brace_verify
    rep = verify(T)
    bad = rep.first_failure()
    if bad is not None:
        raise AxiomFails(bad.name, witness=bad.witness)
    g = T.pg.group
    a = np.arange(T.pg.n)[None, None, :, None]
    E = eta_family(T.pg, g.op[g.inv[a], T.plus])
    if not eta_verify(E, mode).passed:
        raise InternalInconsistency("η recovered from a p-brace fails its axioms")
    return E


# ---------------------------------------------------------------- p-brace axioms

def _common_axioms(T: PBraceTable, rep: Report) -> None:
    pg, p = T.pg, T.plus
    m, n, prod, op, inv = pg.m, pg.n, pg.prod, pg.group.op, pg.group.inv
    i, j, k, a, b, c = np.indices((m, m, m, n, n, n), sparse=True)
    lhs = p[k, prod[i, j], p[i, j, a, b], c]
    rhs = p[prod[k, i], j, a, p[k, i, b, c]]
    rep.add("associativity (a +_ij b) +_{k,ij} c = a +_{ki,j} (b +_ki c)", first_witness(lhs != rhs, "ijkabc"))
    lhs = op[a, p[k, prod[i, j], b, c]]
    rhs = p[k, i, op[a, b], op[a, p[k, j, inv[a], c]]]
    rep.add("distributivity a∘(b +_{k,ij} c) = a∘b +_ki a∘(a^{-1} +_kj c)", first_witness(lhs != rhs, "ijkabc"))


def _latin(p: np.ndarray) -> tuple[dict | None, dict | None]:
    rows = first_witness(~is_permutation_rows(p), "ija")
    cols = first_witness(~is_permutation_rows(np.swapaxes(p, 2, 3)), "ijb")
    return rows, cols


def _unique_solution_witness(p: np.ndarray, zero: int, side: str) -> dict | None:
    """Every a has exactly one x with a + x = 0 (side "right") or x + a = 0 (side "left")."""
    hits = (p == zero) if side == "right" else (np.swapaxes(p, 2, 3) == zero)
    count = hits.sum(axis=-1)
    return first_witness(count != 1, "ija")


def p_brace_verify(T: PBraceTable) -> Report:
    pg, p = T.pg, T.plus
    m, n, prod = pg.m, pg.n, pg.prod
    e = pg.group.identity
    rep = Report("p-brace")
    _common_axioms(T, rep)
    i, j, k, a, b = np.indices((m, m, m, n, n), sparse=True)
    lhs = p[i, prod[k, j], a, b]
    mid = p[i, prod[j, k], a, b]
    rhs = p[prod[j, k], i, b, a]
    rep.add("commutation a +_{i,kj} b = a +_{i,jk} b = b +_{jk,i} a",
            first_witness((lhs != mid) | (mid != rhs), "ijkab"))
    i2, a2 = np.indices((m, n), sparse=True)
    rep.add("left identity 0 +_{i0} a = a", first_witness(p[i2, pg.zero, e, a2] != a2, "ia"))
    rep.add("unique right opposite a +_ij x = 0", _unique_solution_witness(p, e, "right"))
    _quasigroup_checks(T, rep)
    return rep


def skew_p_brace_verify(T: PBraceTable) -> Report:
    pg, p = T.pg, T.plus
    m, n, prod = pg.m, pg.n, pg.prod
    e = pg.group.identity
    rep = Report("skew p-brace")
    _common_axioms(T, rep)
    i, j, k, a, b = np.indices((m, m, m, n, n), sparse=True)
    rep.add("a +_{i,jk} b = a +_{i,kj} b", first_witness(p[i, prod[j, k], a, b] != p[i, prod[k, j], a, b], "ijkab"))
    i2, a2 = np.indices((m, n), sparse=True)
    both = (p[pg.zero, i2, a2, e] != a2) | (p[i2, pg.zero, e, a2] != a2)
    rep.add("identities a +_{0i} 0 = a = 0 +_{i0} a", first_witness(both, "ia"))
    rep.add("unique right opposite a +_ij x = 0", _unique_solution_witness(p, e, "right"))
    rep.add("unique left opposite y +_ij a = 0", _unique_solution_witness(p, e, "left"))
    _quasigroup_checks(T, rep)
    return rep


def _quasigroup_checks(T: PBraceTable, rep: Report) -> None:
    rows, cols = _latin(T.plus)
    rep.add("quasigroup: a +_ij y = b uniquely solvable", rows)
    rep.add("quasigroup: x +_ij a = b uniquely solvable", cols)


def quasigroup_solve(T: PBraceTable, i: int, j: int, a: int, b: int) -> tuple[int, int]:
    """(x, y) with x +_ij a = b and a +_ij y = b, found by scan; uniqueness asserted."""
    p = T.plus[i, j]
    xs = np.nonzero(p[:, a] == b)[0]
    ys = np.nonzero(p[a, :] == b)[0]
    if len(xs) != 1 or len(ys) != 1:
        raise AxiomFails("quasigroup equation not uniquely solvable", witness={"i": i, "j": j, "a": a, "b": b})
    return int(xs[0]), int(ys[0])


# ---------------------------------------------------------------- solutions and the lemma

def lemma_prop_eta_check(E: EtaFamily) -> Report:
    pg, e = E.pg, E.eta
    m, n, prod, op, inv, bar = pg.m, pg.n, pg.prod, pg.group.op, pg.group.inv, pg.bar
    p = _plus_from_eta(E)
    zero = pg.group.identity
    rep = Report("identities of a p-affine structure")
    i, j, k, a, b, c = np.indices((m, m, m, n, n, n), sparse=True)
    lhs = e[prod[k, j], i, a, p[k, j, b, c]]
    rhs = p[k, i, e[j, i, a, b], e[k, j, a, c]]
    rep.add("item (1): η^{kj,i}_a(b +_kj c) = η^{ji}_a(b) +_ki η^{kj}_a(c)", first_witness(lhs != rhs, "ijkabc"))
    i2, j2, a2, b2 = np.indices((m, m, n, n), sparse=True)
    einv = invert_rows(e)
    rep.add("item (2): (η^{ij}_a)^{-1} = η^{ij̄}_{a^{-1}}",
            first_witness(einv[i2, j2, a2, b2] != e[i2, bar[j2], inv[a2], b2], "ijab"))
    i3, a3 = np.indices((m, n), sparse=True)
    ai = inv[a3]
    rep.add("item (3): η^{īī}_{a^{-1}}(a^{-1}) +_{iī} a = 0",
            first_witness(p[i3, bar[i3], e[bar[i3], bar[i3], ai, ai], a3] != zero, "ia"))
    i4, j4, k4, a4, b4 = np.indices((m, m, m, n, n), sparse=True)
    ai = inv[a4]
    lhs = p[k4, i4, e[j4, i4, ai, ai], op[a4, b4]]
    rhs = op[a4, p[prod[k4, j4], i4, ai, b4]]
    rep.add("item (4): η^{ji}_{a^{-1}}(a^{-1}) +_ki a∘b = a∘(a^{-1} +_{kj,i} b)", first_witness(lhs != rhs, "ijkab"))
    return rep


def solution_from_eta(E: EtaFamily, mode: str = "reversible") -> ParamSolution:
    """σ^{ij}_a = (η^{ij}_a)^{-1}, τ^{ij}_b(a) = σ^{ij}_a(b)^{-1}∘a∘b."""
    rep = eta_verify(E, mode)
    bad = rep.first_failure()
    if bad is not None:
        raise AxiomFails(bad.name, witness=bad.witness)
    pg, e = E.pg, E.eta
    m, n, op, inv = pg.m, pg.n, pg.group.op, pg.group.inv
    lemma = lemma_prop_eta_check(E)
    if not lemma["item (2): (η^{ij}_a)^{-1} = η^{ij̄}_{a^{-1}}"].passed:
        raise InternalInconsistency("η inverse identity fails on a verified p-affine structure")
    sigma = invert_rows(e)
    i, j, b, a = np.indices((m, m, n, n), sparse=True)
    tau = op[op[inv[sigma[i, j, a, b]], a], b]
    sol = make_solution(sigma, tau, pg.params)
    if mode == "reversible":
        if not sol.flags["reversible"]:
            raise InternalInconsistency("reversible η produced a non-reversible solution")
    else:
        if not np.array_equal(derived_shelf_table(sol.sigma, sol.tau), triangle_table(E)):
            raise InternalInconsistency("derived shelf differs from the η-expression of ▷")
    return sol


def triangle_table(E: EtaFamily) -> np.ndarray:
    """a ▷_ij b = η^{jī}_{a^{-1}}(a^{-1}) +_{0ī} (b +_ij a)."""
    pg, e = E.pg, E.eta
    m, n, inv, bar = pg.m, pg.n, pg.group.inv, pg.bar
    p = _plus_from_eta(E)
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    ai = inv[a]
    return p[pg.zero, bar[i], e[j, bar[i], ai, ai], p[i, j, b, a]]


def eta_from_sigma(sigma_table: np.ndarray, pg: ParamGroup) -> EtaFamily:
    """η^{ij}_a := (σ^{ij}_a)^{-1}."""
    return eta_family(pg, invert_rows(np.asarray(sigma_table)))
