"""Parametric birational Yang-Baxter maps from Lax refactorization, in exact arithmetic.

Points of the projective line are ``Fraction`` values or the sentinel ``INF``.
Family 1 lives on the additive group (ℚ, +); families 2-4 on (ℚ*, ·).
A map is read as R^{ij}(b, a) = (σ^{ij}_a(b), τ^{ij}_b(a)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InputError, InternalInconsistency, Pole
from .report import Report


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__


INF = _Infinity()


def proj(x) -> Fraction | _Infinity:
    """Parse an int, Fraction, string like '3/5', or 'inf' into a canonical point."""
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "∞"):
        return INF
    return Fraction(x)


def _div(num: Fraction, den: Fraction, where: str) -> Fraction:
    if den == 0:
        raise Pole(f"denominator vanishes in {where}", witness={"where": where})
    return num / den


def _finite(x, name: str) -> Fraction:
    if x is INF:
        raise Pole(f"{name} = ∞ has no limit defined for these formulas", witness={name: "inf"})
    return Fraction(x)


# ---------------------------------------------------------------- the four families

def _P1(zi, zj, a, b):
    return _div(zi - zj, a + b, "P = (z_i - z_j)/(a + b)")


def _Q2(zi, zj, a, b):
    return _div(zi * a * b + 1, zj * a * b + 1, "Q = (z_i ab + 1)/(z_j ab + 1)")


def _Q3(zi, zj, a, b):
    return _div(zi + (zj - zi) * a - zj * a * b, zj + (zi - zj) * b - zi * a * b, "Q (family 3)")


def _Q4(zi, zj, a, b):
    num = (1 - zj) * a * b + (zj - zi) * a + zj * (zi - 1)
    den = (1 - zi) * a * b + (zi - zj) * b + zi * (zj - 1)
    return _div(num, den, "Q (family 4)")


def _inv1(zi, zj, a, b):
    return -a + _div(zi - zj, a - b, "displayed inverse, family 1")


def _inv2(zi, zj, a, b):
    return _div(b - a, zj * a - zi * b, "displayed inverse, family 2") / a


def _inv3(zi, zj, a, b):
    num = zi * b + (zj - zi) * a * b - zj * a
    return _div(num, zj * b + (zi - zj) - zi * a, "displayed inverse, family 3") / a


def _inv4(zi, zj, a, b):
    num = zj * (zi - 1) * b + (zj - zi) * a * b - zi * (zj - 1) * a
    return _div(num, (1 - zi) * a + (zi - zj) - (1 - zj) * b, "displayed inverse, family 4") / a


def _bul1(zi, zj, a, b):
    return _div(zj - zi, a - b, "displayed bullet, family 1")


def _bul2(zi, zj, a, b):
    return _div(b - a, zi * a - zj * b, "displayed bullet, family 2")


def _bul3(zi, zj, a, b):
    return _div(zj * b + (zi - zj) * a * b - zi * a, zi * b + (zj - zi) - zj * a, "displayed bullet, family 3")


def _bul4(zi, zj, a, b):
    num = zi * (zj - 1) * b + (zi - zj) * a * b - zj * (zi - 1) * a
    return _div(num, (1 - zj) * a + (zj - zi) - (1 - zi) * b, "displayed bullet, family 4")


@dataclass(frozen=True)
class FamilyDef:
    tag: str
    additive: bool
    core: Callable  # P for the additive family, Q otherwise
    inverse: Callable  # displayed closed form of (σ_a)^{-1}(b)
    bullet: Callable  # displayed closed form of a • b


FAMILIES = {
    1: FamilyDef("additive-P", True, _P1, _inv1, _bul1),
    2: FamilyDef("multiplicative-Q2", False, _Q2, _inv2, _bul2),
    3: FamilyDef("multiplicative-Q3", False, _Q3, _inv3, _bul3),
    4: FamilyDef("multiplicative-Q4", False, _Q4, _inv4, _bul4),
}


@dataclass(frozen=True)
class MapFamily:
    item: int
    zi: Fraction
    zj: Fraction

    @property
    def definition(self) -> FamilyDef:
        return FAMILIES[self.item]

    @property
    def tag(self) -> str:
        return self.definition.tag


def map_family(item: int, zi, zj) -> MapFamily:
    if item not in FAMILIES:
        raise InputError(f"family must be one of 1..4, got {item}")
    zi, zj = proj(zi), proj(zj)
    if zi is INF or zj is INF:
        raise InputError("parameters must be finite rationals")
    return MapFamily(item, zi, zj)


def group_op(item: int, a: Fraction, b: Fraction) -> Fraction:
    return a + b if FAMILIES[item].additive else a * b


def group_inv(item: int, a: Fraction) -> Fraction:
    return -a if FAMILIES[item].additive else _div(Fraction(1), a, "group inverse")


def _element(item: int, x, name: str) -> Fraction:
    x = _finite(x, name)
    if not FAMILIES[item].additive and x == 0:
        raise Pole(f"{name} = 0 lies outside the multiplicative group", witness={name: "0"})
    return x


def eval_map(f: MapFamily, b, a, sign: int = 1) -> tuple[Fraction, Fraction]:
    """(σ_a(b), τ_b(a)). ``sign=-1`` flips the correction inside σ only (a deliberate mutation)."""
    a = _element(f.item, a, "a")
    b = _element(f.item, b, "b")
    core = f.definition.core(f.zi, f.zj, a, b)
    if f.definition.additive:
        s, t = a - sign * core, b + core
        if sign == 1 and s + t != a + b:
            raise InternalInconsistency("σ + τ ≠ a + b")
    else:
        if core == 0:
            raise Pole("Q vanishes", witness={"a": str(a), "b": str(b)})
        s, t = a / core if sign == 1 else a * core, b * core
        if sign == 1 and s * t != a * b:
            raise InternalInconsistency("σ·τ ≠ a·b")
        if s == 0 or t == 0:
            raise Pole("value leaves the multiplicative group", witness={"a": str(a), "b": str(b)})
    return s, t


def sigma_inverse(f: MapFamily, a, b) -> Fraction:
    """(σ_a)^{-1}(b) from the displayed closed form, validated by σ_a of it returning b."""
    a = _element(f.item, a, "a")
    b = _element(f.item, b, "b")
    x = f.definition.inverse(f.zi, f.zj, a, b)
    if eval_map(f, x, a)[0] != b:
        raise InternalInconsistency("displayed inverse does not invert σ_a")
    return x


def bullet(f: MapFamily, a, b) -> Fraction:
    """a •_ij b := a ∘ (σ^{ji}_a)^{-1}(b); note the transposed parameter pair."""
    a = _element(f.item, a, "a")
    return group_op(f.item, a, sigma_inverse(_swap(f), a, b))


def _swap(f: MapFamily) -> MapFamily:
    return MapFamily(f.item, f.zj, f.zi)


# ---------------------------------------------------------------- sampled checks

def _sample(rng: random.Random, item: int) -> Fraction:
    while True:
        x = Fraction(rng.randint(-12, 12), rng.randint(1, 9))
        if FAMILIES[item].additive or x != 0:
            return x


def _fmt(**kw) -> dict:
    return {k: str(v) for k, v in kw.items()}


def _run(rep: Report, name: str, samples: int, seed: int, arity: int, item: int, body) -> None:
    """Draw pole-free samples until ``samples`` succeed; record the first failure."""
    rng = random.Random(seed)
    ok, poles, witness = 0, 0, None
    while ok < samples and poles < 50 * samples:
        xs = [_sample(rng, item) for _ in range(arity)]
        try:
            w = body(*xs)
        except Pole:
            poles += 1
            continue
        ok += 1
        if w is not None and witness is None:
            witness = w
    if ok < samples and witness is None:
        witness = {"reason": f"only {ok} pole-free samples of {samples}"}
    rep.add(name, witness)
    rep.notes.append(f"{name}: {ok} samples, {poles} skipped at poles")


def ybe_check_sampled(item: int, z1, z2, z3, samples: int = 200, seed: int = 0, sign: int = 1) -> Report:
    """R12 R13 R23 = R23 R13 R12 at sampled (c, b, a), parameters (z_i, z_j, z_k) = (z1, z2, z3)."""
    f12, f13, f23 = map_family(item, z1, z2), map_family(item, z1, z3), map_family(item, z2, z3)
    rep = Report(f"parametric YBE, family {item} ({FAMILIES[item].tag})")

    def R(f, x, y):
        return eval_map(f, x, y, sign)

    def body(c, b, a):
        b1, a1 = R(f23, b, a)
        c2, a2 = R(f13, c, a1)
        c3, b3 = R(f12, c2, b1)
        c1, b1r = R(f12, c, b)
        c2r, a2r = R(f13, c1, a)
        b3r, a3r = R(f23, b1r, a2r)
        if (c3, b3, a2) != (c2r, b3r, a3r):
            return _fmt(c=c, b=b, a=a, left=(c3, b3, a2), right=(c2r, b3r, a3r))
        return None

    _run(rep, "R12 R13 R23 = R23 R13 R12", samples, seed, 3, item, body)
    return rep


def reversibility_check(item: int, z1, z2, samples: int = 200, seed: int = 0) -> Report:
    """R21^{ji} R12^{ij} = id with R21 = flip ∘ R ∘ flip."""
    f, g = map_family(item, z1, z2), map_family(item, z2, z1)
    rep = Report(f"reversibility, family {item}")

    def body(b, a):
        u, v = eval_map(f, b, a)
        s, t = eval_map(g, v, u)
        return None if (t, s) == (b, a) else _fmt(b=b, a=a, image=(t, s))

    _run(rep, "R21 R12 = id", samples, seed, 2, item, body)

    def structure(b, a):
        s, t = eval_map(f, b, a)
        return None if group_op(item, s, t) == group_op(item, a, b) else _fmt(a=a, b=b)

    _run(rep, "structure-group relation a∘b = σ_a(b)∘τ_b(a)", samples, seed + 1, 2, item, structure)
    return rep


def bullet_check(item: int, z1, z2, samples: int = 200, seed: int = 0) -> Report:
    f, g = map_family(item, z1, z2), map_family(item, z2, z1)
    rep = Report(f"bullet operation, family {item}")

    def inverse(a, b):
        x = f.definition.inverse(f.zi, f.zj, a, b)
        return None if eval_map(f, x, a)[0] == b else _fmt(a=a, b=b, displayed=x)

    _run(rep, "displayed (σ_a)^{-1} inverts σ_a", samples, seed, 2, item, inverse)

    def symmetry(a, b):
        return None if bullet(f, a, b) == bullet(g, b, a) else _fmt(a=a, b=b)

    _run(rep, "symmetry a •_ij b = b •_ji a", samples, seed + 1, 2, item, symmetry)
    return rep


def displayed_bullet_check(item: int, z1, z2, samples: int = 200, seed: int = 0) -> Report:
    """Compare a∘(σ^{ji}_a)^{-1}(b) with the displayed closed form of a •_ij b.

    Reported separately because the displayed forms are only observations about
    these maps, and a disagreement here does not affect the YBE or reversibility.
    """
    f = map_family(item, z1, z2)
    rep = Report(f"displayed bullet formula, family {item}")

    def body(a, b):
        got, shown = bullet(f, a, b), f.definition.bullet(f.zi, f.zj, a, b)
        return None if got == shown else _fmt(a=a, b=b, computed=got, displayed=shown)

    _run(rep, "a∘(σ^{ji}_a)^{-1}(b) equals the displayed a •_ij b", samples, seed, 2, item, body)
    return rep


def full_report(item: int, z1, z2, z3, samples: int = 200, seed: int = 0) -> list[Report]:
    return [
        ybe_check_sampled(item, z1, z2, z3, samples, seed),
        reversibility_check(item, z1, z2, samples, seed),
        bullet_check(item, z1, z2, samples, seed),
    ]
