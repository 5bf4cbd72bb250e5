"""Parametric set-theoretic solutions of the Yang-Baxter equation.

Storage: ``sigma[i, j, a, b] = σ^{z_i z_j}_a(b)`` and ``tau[i, j, b, a] =
τ^{z_i z_j}_b(a)``, so that ``R^{ij}(x, y) = (sigma[i, j, y, x], tau[i, j, x, y])``.

Operator words are composed right to left: in ``R12 R13 R23`` the factor
``R23`` acts first. ``R21^{pq}`` is the flip-conjugate ``π R^{pq} π``, i.e. it
applies ``R^{pq}`` to the pair read in the order (site 2, site 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Carrier, ParamSet, frozen_array, invert_rows, is_permutation_rows
from .errors import InternalInconsistency, KNotReflection, NotLeftNonDegenerate, ShapeMismatch, YBEFails
from .report import Report, first_witness
from .shelves import PShelf, p_shelf_verify


@dataclass(frozen=True, eq=False)
class ParamSolution:
    carrier: Carrier
    params: ParamSet
    sigma: np.ndarray
    tau: np.ndarray
    flags: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.carrier.size

    @property
    def m(self) -> int:
        return self.params.m

    def apply(self, i, j, x, y):
        """R^{ij}(x, y); broadcasts over array arguments."""
        return self.sigma[i, j, y, x], self.tau[i, j, x, y]


def _tables(sigma, tau, params: ParamSet) -> tuple[np.ndarray, np.ndarray]:
    m, n = params.m, params.carrier.size
    s = np.array(sigma, dtype=np.int64)
    t = np.array(tau, dtype=np.int64)
    for name, arr in (("sigma", s), ("tau", t)):
        if arr.shape != (m, m, n, n):
            raise ShapeMismatch(f"{name} must have shape {(m, m, n, n)}, got {arr.shape}")
        if arr.min() < 0 or arr.max() >= n:
            raise ShapeMismatch(f"{name} entries out of range")
    return s, t


def ybe_mismatch(sigma: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """Mismatch over (i, j, k, c, b, a) of R12 R13 R23 = R23 R13 R12 by explicit composition."""
    m, n = sigma.shape[0], sigma.shape[2]
    i, j, k, c, b, a = np.indices((m, m, m, n, n, n), sparse=True)

    def R(p, q, x, y):
        return sigma[p, q, y, x], tau[p, q, x, y]

    # left word: R23 first, then R13, then R12
    b1, a1 = R(j, k, b, a)
    c2, a2 = R(i, k, c, a1)
    c3, b3 = R(i, j, c2, b1)
    left = (c3, b3, a2)
    # right word: R12 first, then R13, then R23
    c1, b1r = R(i, j, c, b)
    c2r, a2r = R(i, k, c1, a)
    b3r, a3r = R(j, k, b1r, a2r)
    right = (c2r, b3r, a3r)
    return (left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2])


def solution_verify_direct(sigma, tau, params: ParamSet) -> Report:
    s, t = _tables(sigma, tau, params)
    rep = Report("parametric Yang-Baxter equation (direct composition)")
    rep.add("R12 R13 R23 = R23 R13 R12", first_witness(ybe_mismatch(s, t), "ijkcba"))
    return rep


def solution_verify_conditions(sigma, tau, params: ParamSet) -> Report:
    s, t = _tables(sigma, tau, params)
    m, n = params.m, params.carrier.size
    i, j, k, c, b, a = np.indices((m, m, m, n, n, n), sparse=True)
    rep = Report("parametric Yang-Baxter equation (σ/τ conditions)")
    # (1) σ^{13}_a σ^{12}_b (c) = σ^{12}_{σ^{23}_a(b)} σ^{13}_{τ^{23}_b(a)} (c)
    lhs = s[i, k, a, s[i, j, b, c]]
    rhs = s[i, j, s[j, k, a, b], s[i, k, t[j, k, b, a], c]]
    rep.add("condition (1): σσ = σσ", first_witness(lhs != rhs, "ijkcba"))
    # (2) τ^{13}_c τ^{23}_b (a) = τ^{23}_{τ^{12}_c(b)} τ^{13}_{σ^{12}_b(c)} (a)
    lhs = t[i, k, c, t[j, k, b, a]]
    rhs = t[j, k, t[i, j, c, b], t[i, k, s[i, j, b, c], a]]
    rep.add("condition (2): ττ = ττ", first_witness(lhs != rhs, "ijkcba"))
    # (3) σ^{23}_{τ^{13}_{σ^{12}_b(c)}(a)} (τ^{12}_c(b)) = τ^{12}_{σ^{13}_{τ^{23}_b(a)}(c)} (σ^{23}_a(b))
    lhs = s[j, k, t[i, k, s[i, j, b, c], a], t[i, j, c, b]]
    rhs = t[i, j, s[i, k, t[j, k, b, a], c], s[j, k, a, b]]
    rep.add("condition (3): στ = τσ", first_witness(lhs != rhs, "ijkcba"))
    return rep


def property_flags(sigma: np.ndarray, tau: np.ndarray) -> dict:
    m, n = sigma.shape[0], sigma.shape[2]
    left = bool(is_permutation_rows(sigma).all())
    right = bool(is_permutation_rows(tau).all())
    # R^{ij} as a map on pairs, encoded x*n + y
    x, y = np.indices((n, n))
    codes = sigma[:, :, y, x] * n + tau[:, :, x, y]
    invertible = bool(is_permutation_rows(codes.reshape(m, m, n * n)).all())
    # R21^{ji} R12^{ij} = id: apply R^{ij}, then R^{ji} to the flipped pair
    i, j, x, y = np.indices((m, m, n, n), sparse=True)
    u, v = sigma[i, j, y, x], tau[i, j, x, y]
    back_v, back_u = sigma[j, i, u, v], tau[j, i, v, u]
    reversible = bool(((back_u == x) & (back_v == y)).all())
    return {
        "left_nondegenerate": left,
        "nondegenerate": left and right,
        "invertible": invertible,
        "reversible": reversible,
    }


def make_solution(sigma, tau, params: ParamSet) -> ParamSolution:
    """Verify the YBE by both routes and wrap the tables; raises ``YBEFails``."""
    s, t = _tables(sigma, tau, params)
    direct = solution_verify_direct(s, t, params)
    conditions = solution_verify_conditions(s, t, params)
    if direct.passed != conditions.passed:
        raise InternalInconsistency("direct YBE check and σ/τ conditions disagree")
    if not direct.passed:
        raise YBEFails(witness=direct.checks[0].witness)
    flags = property_flags(s, t)
    sol = ParamSolution(params.carrier, params, frozen_array(s), frozen_array(t), flags)
    if flags["reversible"] and flags["left_nondegenerate"]:
        shelf = derived_shelf(sol)
        if not (shelf.op == np.arange(sol.n)).all():
            raise InternalInconsistency("reversible solution with nontrivial derived shelf")
    return sol


def identity_solution(params: ParamSet) -> ParamSolution:
    """R(b, a) = (b, a)."""
    m, n = params.m, params.carrier.size
    ident = np.broadcast_to(np.arange(n), (m, m, n, n))
    return make_solution(ident, ident, params)


def p_shelf_solution(P: PShelf) -> ParamSolution:
    """R^{ij}(b, a) = (b, b ▷_ij a)."""
    m, n = P.m, P.n
    sigma = np.broadcast_to(np.arange(n), (m, m, n, n))
    sol = make_solution(sigma, P.op, P.params)
    if sol.flags["invertible"] != P.is_rack or sol.flags["nondegenerate"] != P.is_rack:
        raise InternalInconsistency("p-shelf solution invertibility disagrees with the rack flag")
    return sol


def derived_shelf_table(sigma: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """a ▷_ij b = σ^{ji}_a ( τ^{ij}_{(σ^{ij}_b)^{-1}(a)} (b) )."""
    m, n = sigma.shape[0], sigma.shape[2]
    sinv = invert_rows(sigma)
    i, j, a, b = np.indices((m, m, n, n), sparse=True)
    return sigma[j, i, a, tau[i, j, sinv[i, j, b, a], b]]


def derived_shelf(S: ParamSolution) -> PShelf:
    if not is_permutation_rows(S.sigma).all():
        raise NotLeftNonDegenerate()
    return p_shelf_verify(derived_shelf_table(S.sigma, S.tau), S.params)


# ---------------------------------------------------------------- multi-site words

class Sites:
    """Vectorized state on ``k`` tensor sites; each site holds an index array."""

    def __init__(self, xs):
        self.x = list(xs)

    def R(self, sol_sigma, sol_tau, p, q, s1: int, s2: int):
        """Apply R^{pq} to (x_{s1}, x_{s2}) and write back into (s1, s2)."""
        x, y = self.x[s1], self.x[s2]
        self.x[s1], self.x[s2] = sol_sigma[p, q, y, x], sol_tau[p, q, x, y]
        return self

    def K(self, kappa, p, s: int):
        self.x[s] = kappa[p, self.x[s]]
        return self

    def differs(self, other: "Sites") -> np.ndarray:
        out = np.zeros(np.broadcast(*self.x, *other.x).shape, dtype=bool)
        for u, v in zip(self.x, other.x):
            out = out | (u != v)
        return out


def reflection_mismatch(sigma: np.ndarray, tau: np.ndarray, kappa: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Mismatch over (i, j, x, y) of R12^{ij} K1^i R21^{j ī} K2^j = K2^j R12^{i j̄} K1^i R21^{j̄ ī}."""
    m, n = sigma.shape[0], sigma.shape[2]
    i, j, x, y = np.indices((m, m, n, n), sparse=True)
    ib, jb = mu[i], mu[j]
    left = Sites([x, y]).K(kappa, j, 1).R(sigma, tau, j, ib, 1, 0).K(kappa, i, 0).R(sigma, tau, i, j, 0, 1)
    right = Sites([x, y]).R(sigma, tau, jb, ib, 1, 0).K(kappa, i, 0).R(sigma, tau, i, jb, 0, 1).K(kappa, j, 1)
    return left.differs(right)


@dataclass(frozen=True, eq=False)
class DressedReflection:
    """Dressed map on sites (1, 3..n): ``out[z1, z3.., x1, x3..]`` gives each output site."""

    sites: int
    outputs: tuple[np.ndarray, ...]
    report: Report


def _dress(state: Sites, sigma, tau, kappa, mu, z, site: int, spectators: list[int]) -> Sites:
    # rightmost factor first: R_{n,site} ... R_{3,site}, then K_site, then R_{site,3} ... R_{site,n}
    zb = mu[z[site]]
    for s in reversed(spectators):
        state.R(sigma, tau, z[s], zb, s, site)
    state.K(kappa, z[site], site)
    for s in spectators:
        state.R(sigma, tau, z[site], z[s], site, s)
    return state


def sklyanin_dress(S: ParamSolution, kappa, sites: int = 3) -> DressedReflection:
    """Dress a verified reflection with R-chains over spectator sites and verify the result."""
    if sites < 3:
        raise ValueError("dressing needs at least 3 sites")
    kap = np.asarray(kappa, dtype=np.int64)
    mu = S.params.mu_array
    base = reflection_mismatch(S.sigma, S.tau, kap, mu)
    w = first_witness(base, ("i", "j", "x", "y"))
    if w is not None:
        raise KNotReflection(witness=w)
    m, n = S.m, S.n
    sigma, tau = S.sigma, S.tau
    # axes: z_1..z_n, x_1..x_n  (site 0 is "1", site 1 is "2", sites 2.. are spectators)
    grids = np.indices((m,) * sites + (n,) * sites, sparse=True)
    z, x = list(grids[:sites]), list(grids[sites:])
    spect = list(range(2, sites))
    i, j = z[0], z[1]
    ib, jb = mu[i], mu[j]

    def K1(st):
        return _dress(st, sigma, tau, kap, mu, z, 0, spect)

    def K2(st):
        return _dress(st, sigma, tau, kap, mu, z, 1, spect)

    left = Sites(x)
    K2(left)
    left.R(sigma, tau, j, ib, 1, 0)
    K1(left)
    left.R(sigma, tau, i, j, 0, 1)
    right = Sites(x)
    right.R(sigma, tau, jb, ib, 1, 0)
    K1(right)
    right.R(sigma, tau, i, jb, 0, 1)
    K2(right)
    names = [f"z{s + 1}" for s in range(sites)] + [f"x{s + 1}" for s in range(sites)]
    rep = Report(f"dressed reflection on {sites} sites")
    rep.add("reflection equation for the dressed map", first_witness(right.differs(left), names))
    # materialize the dressed map on sites (1, 3..n)
    keep = [0] + spect
    zg = np.indices((m,) * len(keep) + (n,) * len(keep), sparse=True)
    zz = [None] * sites
    xx = [None] * sites
    for pos, s in enumerate(keep):
        zz[s] = zg[pos]
        xx[s] = zg[len(keep) + pos]
    zz[1] = np.zeros((1,) * (2 * len(keep)), dtype=np.int64)
    xx[1] = np.zeros((1,) * (2 * len(keep)), dtype=np.int64)
    st = _dress(Sites(xx), sigma, tau, kap, mu, zz, 0, spect)
    shape = (m,) * len(keep) + (n,) * len(keep)
    outputs = tuple(np.broadcast_to(st.x[s], shape).copy() for s in keep)
    return DressedReflection(sites, outputs, rep)
