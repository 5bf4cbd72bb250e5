"""Parametric reflection maps K^z with κ stored as kappa[i, a] = κ^{z_i}(a).

Barred indices are resolved through ``params.mu_array`` when tables are built.
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
    invert_rows,
    is_permutation_rows,
)
from .errors import (
    BaseNotReflection,
    CommutationFails,
    CompAlphaFails,
    ConditionFails,
    HypothesesNotMet,
    InputError,
    InternalInconsistency,
    NotBijective,
    ShapeMismatch,
)
from .report import Report, first_witness
from .shelves import AlphaFamily, PShelf, Shelf, from_alpha
from .solutions import ParamSolution, p_shelf_solution, reflection_mismatch
from .twists import SigmaFamily, solform_tables


@dataclass(frozen=True, eq=False)
class ReflectionFamily:
    carrier: Carrier
    params: ParamSet
    kappa: np.ndarray
    bijective: bool

    @property
    def m(self) -> int:
        return self.params.m


def reflection_family(kappa, params: ParamSet) -> ReflectionFamily:
    arr = np.array(kappa, dtype=np.int64)
    m, n = params.m, params.carrier.size
    if arr.shape != (m, n) or arr.min() < 0 or arr.max() >= n:
        raise ShapeMismatch(f"κ table must have shape {(m, n)} with entries in range")
    return ReflectionFamily(params.carrier, params, frozen_array(arr), bool(is_permutation_rows(arr).all()))


def identity_reflection(params: ParamSet) -> ReflectionFamily:
    return reflection_family(np.broadcast_to(np.arange(params.carrier.size), (params.m, params.carrier.size)), params)


def _kappa(K) -> np.ndarray:
    return K.kappa if isinstance(K, ReflectionFamily) else np.asarray(K, dtype=np.int64)


# ---------------------------------------------------------------- direct and condition-based checks

def reflection_verify_direct(K, S: ParamSolution) -> Report:
    rep = Report("parametric reflection equation (direct)")
    mask = reflection_mismatch(S.sigma, S.tau, _kappa(K), S.params.mu_array)
    rep.add("R12 K1 R21 K2 = K2 R12 K1 R21", first_witness(mask, ("z1", "z2", "a", "b")))
    return rep


def reflection_verify_raw(kappa, sigma: np.ndarray, tau: np.ndarray, mu: np.ndarray) -> Report:
    """Direct check on raw tables (used for maps that are not known to be solutions)."""
    rep = Report("parametric reflection equation (direct)")
    mask = reflection_mismatch(sigma, tau, np.asarray(kappa), mu)
    rep.add("R12 K1 R21 K2 = K2 R12 K1 R21", first_witness(mask, ("z1", "z2", "a", "b")))
    return rep


def _ij_ab(P: PShelf):
    m, n = P.m, P.n
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    mu = P.params.mu_array
    return i, j, mu[i], mu[j], a, b


def reflection_conditions_shelf(K, P: PShelf) -> Report:
    """Two conditions equivalent to the reflection equation for the p-shelf solution."""
    k, op = _kappa(K), P.op
    i, j, ib, jb, a, b = _ij_ab(P)
    v = k[i, op[jb, ib, b, a]]
    rep = Report("reflection conditions, p-shelf case")
    rep.add(
        "p-shelf (i): κ_i(b▷_{j̄ī}a) ▷_ij κ_j(b) = κ_j(κ_i(b▷_{j̄ī}a) ▷_{ij̄} b)",
        first_witness(op[i, j, v, k[j, b]] != k[j, op[i, jb, v, b]], ("z1", "z2", "a", "b")),
    )
    rep.add(
        "p-shelf (ii): κ_i(κ_j(b) ▷_{jī} a) = κ_i(b ▷_{j̄ī} a)",
        first_witness(k[i, op[j, ib, k[j, b], a]] != v, ("z1", "z2", "a", "b")),
    )
    return rep


def _require_bijective(k: np.ndarray) -> None:
    w = first_witness(~is_permutation_rows(k), ("i",))
    if w is not None:
        raise NotBijective("κ^{z_i} is not a bijection", witness=w)


def reflection_conditions_shelf_bijective(K, P: PShelf) -> Report:
    k, op = _kappa(K), P.op
    _require_bijective(k)
    i, j, ib, jb, a, b = _ij_ab(P)
    u = op[jb, i, b, a]
    rep = Report("reflection conditions, bijective κ on a p-shelf")
    rep.add(
        "bijective (i): (b▷_{j̄i}a) ▷_ij κ_j(b) = κ_j((b▷_{j̄i}a) ▷_{ij̄} b)",
        first_witness(op[i, j, u, k[j, b]] != k[j, op[i, jb, u, b]], ("z1", "z2", "a", "b")),
    )
    rep.add(
        "bijective (ii): κ_i(a) ▷_ij b = a ▷_{īj} b",
        first_witness(op[i, j, k[i, a], b] != op[ib, j, a, b], ("z1", "z2", "a", "b")),
    )
    return rep


def reflection_conditions_rack(K, P: PShelf) -> Report:
    k, op = _kappa(K), P.op
    _require_bijective(k)
    if not P.is_rack:
        raise HypothesesNotMet("rack conditions need a p-rack")
    i, j, ib, jb, a, b = _ij_ab(P)
    rep = Report("reflection conditions, p-rack case")
    rep.add(
        "rack (i): a ▷_ij κ_j(b) = κ_j(a ▷_{ij̄} b)",
        first_witness(op[i, j, a, k[j, b]] != k[j, op[i, jb, a, b]], ("z1", "z2", "a", "b")),
    )
    rep.add(
        "rack (ii): κ_i(a) ▷_ij b = a ▷_{īj} b",
        first_witness(op[i, j, k[i, a], b] != op[ib, j, a, b], ("z1", "z2", "a", "b")),
    )
    return rep


def general_condition_masks(k, S: ParamSolution) -> tuple[np.ndarray, np.ndarray]:
    """Mismatch masks over (z1, z2, a, b) for conditions (i), (ii); ``k`` only needs ``k[p, x]`` indexing."""
    s, t = S.sigma, S.tau
    m, n = S.m, S.n
    mu = S.params.mu_array
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    ib, jb = mu[i], mu[j]
    kb = k[j, b]
    p = k[i, t[j, ib, kb, a]]
    q = s[j, ib, a, kb]
    p2 = k[i, t[jb, ib, b, a]]
    q2 = s[jb, ib, a, b]
    return s[i, j, q, p] != s[i, jb, q2, p2], t[i, j, p, q] != k[j, t[i, jb, p2, q2]]


def reflection_conditions_general(K, S: ParamSolution) -> Report:
    first, second = general_condition_masks(_kappa(K), S)
    names = ("z1", "z2", "a", "b")
    rep = Report("reflection conditions, general solution")
    rep.add("general (i): first components agree", first_witness(first, names))
    rep.add("general (ii): second components agree", first_witness(second, names))
    return rep


# ---------------------------------------------------------------- constructions

def construct_from_t_alpha(shelf: Shelf, alpha: AlphaFamily, params: ParamSet, t) -> ReflectionFamily:
    """κ_i = t_i ∘ α_{īi} for the p-shelf a ▷_ij b = α_ij(a) ▷ b."""
    P = from_alpha(shelf, alpha, params)
    if not alpha.bijective:
        raise HypothesesNotMet("α_ij must be bijective")
    tt = np.array(t, dtype=np.int64)
    m, n = params.m, shelf.n
    if tt.shape != (m, n):
        raise ShapeMismatch(f"t must have shape {(m, n)}")
    _require_bijective(tt)
    rep = t_alpha_conditions(shelf, alpha, params, tt)
    bad = rep.first_failure()
    if bad is not None:
        raise ConditionFails(bad.name, witness=bad.witness)
    mu = params.mu_array
    al = alpha.maps
    idx = np.arange(m)
    kappa = tt[idx[:, None], al[mu[idx][:, None], idx[:, None], np.arange(n)[None, :]]]
    K = reflection_family(kappa, params)
    _assert_reflection(K, P)
    return K


def t_alpha_conditions(shelf: Shelf, alpha: AlphaFamily, params: ParamSet, t: np.ndarray) -> Report:
    m, n = params.m, shelf.n
    op, al = shelf.op, alpha.maps
    mu = params.mu_array
    alinv = invert_rows(al)
    rep = Report("conditions on (t, α)")
    i, a, b = np.indices((m, n, n), sparse=True)
    ba = op[b, a]
    rep.add(
        "t-condition (i): t_i((b▷a)▷b) = (b▷a)▷t_i(b)",
        first_witness(t[i, op[ba, b]] != op[ba, t[i, b]], "iab"),
    )
    if shelf.is_rack:
        rep.add("rack t-condition (i): t_i(a▷b) = a▷t_i(b)", first_witness(t[i, op[a, b]] != op[a, t[i, b]], "iab"))
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    ib = mu[i]
    lhs = op[al[ib, j, alinv[ib, i, a]], b]
    rhs = op[al[i, j, t[i, a]], b]
    rep.add("t-condition (ii): α_{īj}α_{īi}^{-1}(a)▷b = α_ij t_i(a)▷b", first_witness(lhs != rhs, "ijab"))
    return rep


def base_reflection_report(shelf: Shelf, kappa) -> Report:
    k = np.asarray(kappa, dtype=np.int64)
    op = shelf.op
    n = shelf.n
    a, b = np.indices((n, n), sparse=True)
    rep = Report("non-parametric reflection")
    rep.add("a▷b = κ(a)▷b", first_witness(op[a, b] != op[k[a], b], "ab"))
    ab = op[a, b]
    rep.add("κ((a▷b)▷a) = (a▷b)▷κ(a)", first_witness(k[op[ab, a]] != op[ab, k[a]], "ab"))
    return rep


def transport_from_base_reflection(shelf: Shelf, alpha: AlphaFamily, params: ParamSet, kappa_base) -> ReflectionFamily:
    """κ_i = κ ∘ α_{īi} from a reflection κ of the base shelf commuting with every α_ij."""
    k = np.array(kappa_base, dtype=np.int64)
    n, m = shelf.n, params.m
    if k.shape != (n,) or not is_permutation_rows(k).all():
        raise BaseNotReflection("base κ must be a bijection of the carrier")
    if not alpha.bijective:
        raise HypothesesNotMet("α_ij must be bijective")
    base = base_reflection_report(shelf, k)
    bad = base.first_failure()
    if bad is not None:
        raise BaseNotReflection(bad.name, witness=bad.witness)
    al = alpha.maps
    w = first_witness(k[al] != al[:, :, k], "ija")
    if w is not None:
        raise CommutationFails(witness=w)
    i, j, h, a = np.indices((m, m, m, n), sparse=True)
    w = first_witness(al[i, j, a] != al[h, j, al[i, h, a]], "ijha")
    if w is not None:
        raise CompAlphaFails(witness=w)
    P = from_alpha(shelf, alpha, params)
    mu = params.mu_array
    idx = np.arange(m)
    kappa = k[al[mu[idx][:, None], idx[:, None], np.arange(n)[None, :]]]
    K = reflection_family(kappa, params)
    _assert_reflection(K, P)
    return K


def _assert_reflection(K: ReflectionFamily, P: PShelf) -> None:
    if not reflection_verify_direct(K, p_shelf_solution(P)).passed:
        raise InternalInconsistency("constructed κ fails the reflection equation")
    if not reflection_conditions_shelf(K, P).passed:
        raise InternalInconsistency("constructed κ fails the p-shelf reflection conditions")


def brace_reflection(B: SkewBrace, Y: ParamSet, zeta: int, m: int = 1, xi: int | None = None) -> ReflectionFamily:
    """κ^z(a) = a∘z^{-1}∘z^{-1} + mζ."""
    if zeta not in additive_center(B):
        raise HypothesesNotMet("ζ must be additively central", witness={"zeta": zeta})
    mz = B.multiple(zeta, m)
    if xi is not None and B.mul.op[xi, mz] != B.add.op[xi, mz]:
        raise HypothesesNotMet("ξ∘(mζ) = ξ + mζ fails", witness={"xi": xi, "m_zeta": mz})
    z = Y.z
    zz = B.mul.op[B.minv(z), B.minv(z)]
    a = np.arange(B.n)
    kappa = B.add.op[B.mul.op[a[None, :], zz[:, None]], mz]
    return reflection_family(kappa, Y)


def rem42_reflection(B: SkewBrace, Y: ParamSet, zeta: int) -> ReflectionFamily:
    """κ^{z_i}(a) = a∘z_i^{-1}∘z_i^{-1}∘ζ - ζ, needing ζ∘z_i = z_i + ζ on Y."""
    if zeta not in Y.members:
        raise HypothesesNotMet("ζ must be a parameter", witness={"zeta": zeta})
    for z in Y.members:
        if B.mul.op[zeta, z] != B.add.op[z, zeta]:
            raise HypothesesNotMet("ζ∘z = z + ζ fails", witness={"z": z})
    z = Y.z
    zz = B.mul.op[B.mul.op[B.minv(z), B.minv(z)], zeta]
    a = np.arange(B.n)
    kappa = B.add.op[B.mul.op[a[None, :], zz[:, None]], B.neg(zeta)]
    return reflection_family(kappa, Y)


def rem42_zetas(B: SkewBrace, Y: ParamSet) -> list[int]:
    return [int(w) for w in Y.members if all(B.mul.op[w, z] == B.add.op[z, w] for z in Y.members)]


def cond0_elements(B: SkewBrace, Y: ParamSet) -> list[int]:
    """Elements w = mζ with a + w = a∘w for every a and w∘z = w + z on Y."""
    out = []
    for w in range(B.n):
        if (B.add.op[:, w] == B.mul.op[:, w]).all() and all(B.mul.op[w, z] == B.add.op[w, z] for z in Y.members):
            out.append(w)
    return out


def cond0_scan(B: SkewBrace, Y: ParamSet, max_m: int | None = None) -> list[tuple[int, int, bool]]:
    """(ζ, m, cond0 holds) for ζ in the additive center and 0 ≤ m < max_m."""
    ok = set(cond0_elements(B, Y))
    top = max_m if max_m is not None else B.n
    rows = []
    for zeta in additive_center(B):
        for m in range(top):
            rows.append((int(zeta), m, B.multiple(zeta, m) in ok))
    return rows


# ---------------------------------------------------------------- twist transport

def basic0_witness(K, sigma: SigmaFamily) -> dict | None:
    """κ^j(σ^{j̄i}_a(b)) = σ^{ji}_a(κ^j(b))."""
    k, s = _kappa(K), sigma.table
    m, n = sigma.m, sigma.n
    mu = sigma.params.mu_array
    j, i, a, b = np.indices((m, m, n, n), sparse=True)
    return first_witness(k[j, s[mu[j], i, a, b]] != s[j, i, a, k[j, b]], "jiab")


def twist_transport_check(K, sigma: SigmaFamily, P: PShelf) -> Report:
    rep = Report("twist transport of a reflection")
    w = basic0_witness(K, sigma)
    rep.add("transport condition κ^j σ^{j̄i}_a = σ^{ji}_a κ^j", w)
    S = p_shelf_solution(P)
    refl1 = reflection_verify_direct(K, S)
    rep.add("reflection for the p-shelf solution", refl1.checks[0].witness)
    s, t = solform_tables(P, sigma)
    refl22 = reflection_verify_raw(_kappa(K), s, t, sigma.params.mu_array)
    rep.add("reflection for the twisted solution", refl22.checks[0].witness)
    if w is None and refl1.passed and not refl22.passed and _kappa(K).shape and is_permutation_rows(_kappa(K)).all():
        raise InternalInconsistency("transport condition held but the twisted reflection equation failed")
    return rep


def require_params(K: ReflectionFamily, params: ParamSet) -> None:
    if K.params.m != params.m or K.carrier.size != params.carrier.size:
        raise InputError("κ family does not match the parameter set")
