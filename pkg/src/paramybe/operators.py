"""p-rack magmas: a family of binary operations •_ij together with a p-rack
operator R(b, a) = (b, τ_b(a)), the maps g, ĝ behind ξ and ζ, and a reflection K.

Storage: ``bullet[i, j, a, b] = a •_ij b``, ``tau[i, j, b, a] = τ^{ij}_b(a)``,
``g[i, j, k, b, a] = g^{ijk}_b(a)`` and likewise ``ghat``. Words of operators
act rightmost factor first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Carrier, ParamSet, SkewBrace, frozen_array, is_permutation_rows
from .errors import AxiomFails, IllDefined, InternalInconsistency, NotBijective, NotSurjective, ShapeMismatch
from .reflections import ReflectionFamily, brace_reflection, reflection_conditions_rack, reflection_verify_direct
from .report import Report, first_witness
from .shelves import PShelf, conjugate_p_rack
from .solutions import ParamSolution, p_shelf_solution, solution_verify_direct


@dataclass(frozen=True, eq=False)
class MagmaBundle:
    carrier: Carrier
    params: ParamSet
    bullet: np.ndarray
    R: ParamSolution
    g: np.ndarray | None
    ghat: np.ndarray | None
    K: ReflectionFamily | None
    provenance: dict = field(default_factory=dict)

    @property
    def tau(self) -> np.ndarray:
        return self.R.tau

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def n(self) -> int:
        return self.carrier.size

    def shelf(self) -> PShelf:
        return PShelf(self.carrier, self.params, self.R.tau, bool(is_permutation_rows(self.R.tau).all()))


def _family(arr, m: int, n: int, name: str, sym: tuple[int, int, int]) -> np.ndarray:
    t = np.array(arr, dtype=np.int64)
    if t.shape != (m, m, m, n, n) or t.min() < 0 or t.max() >= n:
        raise ShapeMismatch(f"{name} must have shape {(m, m, m, n, n)} with entries in range")
    w = first_witness(~is_permutation_rows(t), "ijkb")
    if w is not None:
        raise NotBijective(f"{name}_b is not a bijection", witness=w)
    w = first_witness(t != np.transpose(t, sym + (3, 4)), "ijkba")
    if w is not None:
        raise AxiomFails(f"{name} symmetry", witness=w)
    return frozen_array(t)


def magma_bundle(bullet, R: ParamSolution, g=None, ghat=None, K: ReflectionFamily | None = None,
                 provenance: dict | None = None) -> MagmaBundle:
    params = R.params
    m, n = params.m, params.carrier.size
    bt = np.array(bullet, dtype=np.int64)
    if bt.shape != (m, m, n, n) or bt.min() < 0 or bt.max() >= n:
        raise ShapeMismatch(f"• table must have shape {(m, m, n, n)} with entries in range")
    if not (R.sigma == np.arange(n)).all():
        raise AxiomFails("R is not of p-rack form R(b, a) = (b, τ_b(a))")
    if not is_permutation_rows(R.tau).all():
        raise NotBijective("τ_b is not a bijection")
    prov = dict(provenance or {})
    if g is not None:
        g = _family(g, m, n, "g", (0, 2, 1))
        prov.setdefault("g", "given")
    if ghat is not None:
        ghat = _family(ghat, m, n, "ĝ", (1, 0, 2))
        prov.setdefault("ghat", "given")
    if K is not None and (K.kappa.shape != (m, n) or not K.bijective):
        raise AxiomFails("κ must be a bijection per parameter")
    return MagmaBundle(params.carrier, params, frozen_array(bt), R, g, ghat, K, prov)


def with_components(B: MagmaBundle, **kw) -> MagmaBundle:
    parts = dict(g=B.g, ghat=B.ghat, K=B.K, provenance=B.provenance)
    parts.update(kw)
    return magma_bundle(B.bullet, B.R, **parts)


# ---------------------------------------------------------------- solving for g and ĝ

def _merge(values: np.ndarray, keys: np.ndarray, n: int, what: str, witness_names: str):
    """Build target[key] = value; two preimages disagreeing is IllDefined, gaps are NotSurjective.

    ``keys`` and ``values`` have shape (..., N) and (..., N, L): the leading axes are
    independent slots, the N axis enumerates preimages.
    """
    lead = keys.shape[:-1]
    L = values.shape[-1]
    out = np.full(lead + (n, L), -1, dtype=np.int64)
    idx = np.indices(keys.shape, sparse=True)
    out[idx[:-1] + (keys,)] = values
    back = out[idx[:-1] + (keys,)]
    clash = (back != values).any(axis=-1)
    w = first_witness(clash, witness_names)
    if w is not None:
        raise IllDefined(f"{what} forced to two different values", witness=w)
    gaps = (out < 0).any(axis=-1)
    w = first_witness(gaps, witness_names[:-1] + "x")
    if w is not None:
        raise NotSurjective(f"{what}: element outside the image of •", witness=w)
    return out


def solve_g(B: MagmaBundle) -> np.ndarray:
    """g^{ikj}_c(a •_kj b) = τ^{ik}_c(a) •_kj τ^{ij}_c(b), with g^{ijk} = g^{ikj}."""
    m, n, bt, t = B.m, B.n, B.bullet, B.tau
    i, k, j, c, a, b = np.indices((m, m, m, n, n, n), sparse=True)
    keys = np.broadcast_to(bt[k, j, a, b], (m, m, m, n, n, n)).reshape(m, m, m, n, n * n)
    vals = np.broadcast_to(bt[k, j, t[i, k, c, a], t[i, j, c, b]], (m, m, m, n, n, n)).reshape(m, m, m, n, n * n)
    # every slot (i,k,j) also constrains g^{ijk}, so stack the transposed slot
    keys2 = np.concatenate([keys, np.swapaxes(keys, 1, 2)], axis=-1)
    vals2 = np.concatenate([vals, np.swapaxes(vals, 1, 2)], axis=-1)
    g = _merge(vals2[..., None], keys2, n, "g", "ikjcp")[..., 0]
    w = first_witness(~is_permutation_rows(g), "ikjc")
    if w is not None:
        raise NotBijective("solved g_c is not a bijection", witness=w)
    return frozen_array(g)


def solve_ghat(B: MagmaBundle) -> np.ndarray:
    """ĝ^{ijk}_{b •_ji c}(a) = τ^{ik}_c τ^{jk}_b(a), with ĝ^{ijk} = ĝ^{jik}."""
    m, n, bt, t = B.m, B.n, B.bullet, B.tau
    i, j, k, b, c, a = np.indices((m, m, m, n, n, n), sparse=True)
    keys = np.broadcast_to(bt[j, i, b, c][..., 0], (m, m, m, n, n)).reshape(m, m, m, n * n)
    maps = np.broadcast_to(t[i, k, c, t[j, k, b, a]], (m, m, m, n, n, n)).reshape(m, m, m, n * n, n)
    keys2 = np.concatenate([keys, np.swapaxes(keys, 0, 1)], axis=-1)
    maps2 = np.concatenate([maps, np.swapaxes(maps, 0, 1)], axis=-2)
    gh = _merge(maps2, keys2, n, "ĝ", "ijkp")
    w = first_witness(~is_permutation_rows(gh), "ijkx")
    if w is not None:
        raise NotBijective("solved ĝ_x is not a bijection", witness=w)
    return frozen_array(gh)


# ---------------------------------------------------------------- axioms

def magma_verify(B: MagmaBundle) -> Report:
    m, n, bt, t = B.m, B.n, B.bullet, B.tau
    mu = B.params.mu_array
    rep = Report("p-rack magma")
    i2, j2, b2, a2 = np.indices((m, m, n, n), sparse=True)
    # (1) m̂_ji(b, a) = a •_ji b must equal m_ij(b, τ^{ij}_b(a)) = b •_ij τ^{ij}_b(a)
    rep.add("axiom (1): m̂_ji = m_ij R^{ij}", first_witness(bt[j2, i2, a2, b2] != bt[i2, j2, b2, t[i2, j2, b2, a2]], "ijba"))
    i, j, k, c, b, a = np.indices((m, m, m, n, n, n), sparse=True)
    if B.g is None:
        rep.notes.append("g absent: axiom (2) not checked")
    else:
        lhs = B.g[i, k, j, c, bt[k, j, a, b]]
        rhs = bt[k, j, t[i, k, c, a], t[i, j, c, b]]
        rep.add("axiom (2): ξ^{ikj}(id × m̂_kj) = (id × m̂_kj) R13^{ik} R12^{ij}", first_witness(lhs != rhs, "ijkcba"))
    if B.ghat is None:
        rep.notes.append("ĝ absent: axiom (3) not checked")
    else:
        lhs = B.ghat[i, j, k, bt[j, i, b, c], a]
        rhs = t[i, k, c, t[j, k, b, a]]
        rep.add("axiom (3): ζ^{ijk}(m̂_ji × id) = (m̂_ji × id) R13^{ik} R23^{jk}", first_witness(lhs != rhs, "ijkcba"))
    if B.K is None:
        rep.notes.append("K absent: axioms (4), (5) not checked")
        return rep
    kap = B.K.kappa
    i2, j2, a2, b2 = np.indices((m, m, n, n), sparse=True)
    w4 = first_witness(kap[j2, t[i2, mu[j2], a2, b2]] != t[i2, j2, a2, kap[j2, b2]], "ijab")
    w5 = first_witness(t[mu[i2], j2, a2, b2] != t[i2, j2, kap[i2, a2], b2], "ijab")
    rep.add("axiom (4): (id × K^j) R^{ij̄} = R^{ij} (id × K^j)", w4)
    rep.add("axiom (5): (K^i × id) R^{īj} = R^{ij} (K^i × id)", w5)
    if w4 is None and w5 is None:
        if not reflection_conditions_rack(B.K, B.shelf()).passed:
            raise InternalInconsistency("axioms (4), (5) hold but the rack reflection conditions fail")
        if not reflection_verify_direct(B.K, B.R).passed:
            raise InternalInconsistency("axioms (4), (5) hold but K fails the reflection equation")
    if rep.passed and not solution_verify_direct(B.R.sigma, B.R.tau, B.params).passed:
        raise InternalInconsistency("verified magma whose operator fails the Yang-Baxter equation")
    return rep


def coideal_mismatch(B: MagmaBundle) -> np.ndarray:
    """Mismatch over (i, j, k, c, b, a) between the two sides of the coideal identity."""
    if B.g is None or B.ghat is None or B.K is None:
        raise AxiomFails("coideal identity needs g, ĝ and K")
    m, n, bt, t, g, gh, kap = B.m, B.n, B.bullet, B.tau, B.g, B.ghat, B.K.kappa
    mu = B.params.mu_array
    i, j, k, c, b, a = np.indices((m, m, m, n, n, n), sparse=True)
    ib = mu[i]
    # left: (id × m̂_kj), then ζ21^{jkī}, then K1^i, then ξ12^{ijk}
    d = bt[k, j, a, b]
    e = kap[i, gh[j, k, ib, d, c]]
    left = (e, g[i, j, k, e, d])
    # right: R31^{kī}, R21^{jī}, K1^i, R12^{ij}, R13^{ik}, then (id × m̂_kj)
    c1 = t[k, ib, a, c]
    c2 = t[j, ib, b, c1]
    c3 = kap[i, c2]
    b3 = t[i, j, c3, b]
    a3 = t[i, k, c3, a]
    right = (c3, bt[k, j, a3, b3])
    return (left[0] != right[0]) | (left[1] != right[1])


def coideal_check(B: MagmaBundle) -> Report:
    rep = Report("coideal identity")
    rep.add("ξ12 K1 ζ21 (id × m̂) = (id × m̂) R13 R12 K1 R21 R31", first_witness(coideal_mismatch(B), "ijkcba"))
    return rep


# ---------------------------------------------------------------- builders

def _conj_with(B: SkewBrace, zi: np.ndarray, zk: np.ndarray) -> np.ndarray:
    """t[p, b, a] = -(b∘zi[p]∘zk[p]^{-1}) + a + b∘zi[p]∘zk[p]^{-1}."""
    s = B.mul.op[zi, B.minv(zk)]
    n = B.n
    sb = B.mul.op[np.arange(n)[None, :], s[:, None]][:, :, None]
    return B.plus(B.neg(sb), np.arange(n)[None, None, :], sb)


def ex_bullet_bundle(B: SkewBrace, Y: ParamSet, zeta: int | None = None, m_mult: int = 1) -> MagmaBundle:
    """a •_ij b = a∘z_i + b∘z_j over the conjugate p-rack, ĝ^{ijk}_b(a) = b ▷_{0k} a with z_0 the identity.

    g is solved from axiom (2); K is the brace reflection a∘z^{-1}∘z^{-1} + mζ.
    """
    P = conjugate_p_rack(B, Y)
    R = p_shelf_solution(P)
    m, n = Y.m, B.n
    z = Y.z
    a, b = np.arange(n)[:, None], np.arange(n)[None, :]
    bt = B.add.op[B.mul.op[a[None, None], z[:, None, None, None]], B.mul.op[b[None, None], z[None, :, None, None]]]
    zero = np.full(m, B.zero)
    g0k = _conj_with(B, zero, z)  # (k, b, a)
    ghat = np.broadcast_to(g0k[None, None], (m, m, m, n, n))
    K = brace_reflection(B, Y, B.zero if zeta is None else zeta, m_mult)
    draft = magma_bundle(bt, R, ghat=ghat, K=K, provenance={"ghat": "given"})
    g = solve_g(draft)
    return with_components(draft, g=g, provenance={"ghat": "given", "g": "solved"})


def trivial_bundle(G, params: ParamSet) -> MagmaBundle:
    """Trivial p-rack, a •_ij b = a∘b in an abelian group, g = ĝ = id, K = id."""
    from .reflections import identity_reflection
    from .shelves import trivial_p_rack

    n, m = G.n, params.m
    R = p_shelf_solution(trivial_p_rack(params))
    bt = np.broadcast_to(G.op, (m, m, n, n))
    ident = np.broadcast_to(np.arange(n), (m, m, m, n, n))
    return magma_bundle(bt, R, g=ident, ghat=ident, K=identity_reflection(params))
