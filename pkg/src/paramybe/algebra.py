"""Finite carriers, groups, skew braces and parameter sets.

Elements are dense indices ``0..n-1``; labels are only for display. All
objects are validated exhaustively on construction, so a ``GroupTable`` or
``SkewBrace`` that exists satisfies its axioms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import (
    DistributivityFails,
    IdentityMismatch,
    InputError,
    InternalInconsistency,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotBijectiveRow,
    NotClosedUnderInverse,
    NotInvolutive,
    ShapeMismatch,
    YNotClosed,
)
from .report import first_witness


def frozen_array(data, shape: tuple | None = None) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if shape is not None and arr.shape != shape:
        raise ShapeMismatch(f"expected shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


def is_permutation_rows(table: np.ndarray) -> np.ndarray:
    """Boolean mask over all leading axes: is the last axis a permutation of range(n)?"""
    n = table.shape[-1]
    return (np.sort(table, axis=-1) == np.arange(n)).all(axis=-1)


def invert_rows(table: np.ndarray) -> np.ndarray:
    """Inverse permutation along the last axis (rows must be permutations)."""
    inv = np.empty_like(table)
    n = table.shape[-1]
    np.put_along_axis(inv, table, np.broadcast_to(np.arange(n), table.shape), axis=-1)
    return inv


@dataclass(frozen=True, eq=False)
class Carrier:
    size: int
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.size < 1:
            raise InputError("carrier must be nonempty")
        if len(self.labels) != self.size or len(set(self.labels)) != self.size:
            raise InputError("labels must be distinct, one per element")

    @classmethod
    def of_size(cls, n: int) -> "Carrier":
        return cls(n, tuple(str(i) for i in range(n)))

    def index(self, label) -> int:
        return self.labels.index(str(label))


@dataclass(frozen=True, eq=False)
class GroupTable:
    carrier: Carrier
    op: np.ndarray
    identity: int
    inv: np.ndarray

    @property
    def n(self) -> int:
        return self.carrier.size

    def __call__(self, a, b):
        return self.op[a, b]

    def product(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = self.op[out, x]
        return out

    def power(self, a: int, m: int) -> int:
        """``m``-fold product of ``a`` (additive notation: ``m a``); negative m uses the inverse."""
        base = a if m >= 0 else int(self.inv[a])
        out = self.identity
        for _ in range(abs(m)):
            out = int(self.op[out, base])
        return out

    def is_abelian(self) -> bool:
        return bool((self.op == self.op.T).all())

    def center(self) -> tuple[int, ...]:
        return tuple(int(z) for z in range(self.n) if (self.op[z, :] == self.op[:, z]).all())

    def opposite(self) -> "GroupTable":
        return GroupTable(self.carrier, frozen_array(self.op.T), self.identity, self.inv)


def group_from_table(carrier: Carrier, op) -> GroupTable:
    n = carrier.size
    table = np.array(op, dtype=np.int64)
    if table.shape != (n, n):
        raise ShapeMismatch(f"group table must be {n}x{n}, got {table.shape}")
    if table.min() < 0 or table.max() >= n:
        raise InputError("table entries out of range")
    left = table[table[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
    right = table[np.arange(n)[:, None, None], table[None, :, :]]  # a(bc)
    w = first_witness(left != right, ("a", "b", "c"))
    if w is not None:
        raise NotAssociative(witness=w)
    ids = [e for e in range(n) if (table[e] == np.arange(n)).all() and (table[:, e] == np.arange(n)).all()]
    if not ids:
        raise NoIdentity()
    e = ids[0]
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.nonzero((table[a] == e) & (table[:, a] == e))[0]
        if len(hits) == 0:
            raise NoInverse(witness={"a": a})
        inv[a] = hits[0]
    rows = is_permutation_rows(table) & is_permutation_rows(table.T)
    if not rows.all():
        raise NotBijectiveRow(witness={"a": int(np.argmin(rows))})
    return GroupTable(carrier, frozen_array(table), int(e), frozen_array(inv))


def cyclic_group(n: int, labels: Sequence[str] | None = None) -> GroupTable:
    carrier = Carrier(n, tuple(labels)) if labels else Carrier.of_size(n)
    a = np.arange(n)
    return group_from_table(carrier, (a[:, None] + a[None, :]) % n)


def permutation_group(perms: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> GroupTable:
    """Group of the listed permutations under composition (p∘q)(x) = p(q(x))."""
    perms = [tuple(p) for p in perms]
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[x] for x in q)] for q in perms] for p in perms]
    labels = labels or ["".join(map(str, p)) for p in perms]
    return group_from_table(Carrier(len(perms), tuple(labels)), table)


def symmetric_group(k: int) -> GroupTable:
    return permutation_group(sorted(itertools.permutations(range(k))))


def dihedral_group(k: int) -> GroupTable:
    """Dihedral group of order 2k; element r^s f^t has index t*k + s."""
    n = 2 * k
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        t1, s1 = divmod(x, k)
        for y in range(n):
            t2, s2 = divmod(y, k)
            # r^s1 f^t1 r^s2 f^t2 = r^(s1 + (-1)^t1 s2) f^(t1+t2)
            s = (s1 + (s2 if t1 == 0 else -s2)) % k
            table[x, y] = ((t1 + t2) % 2) * k + s
    labels = [("r%d" % s) + ("f" if t else "") for t in range(2) for s in range(k)]
    return group_from_table(Carrier(n, tuple(labels)), table)


@dataclass(frozen=True, eq=False)
class SkewBrace:
    add: GroupTable
    mul: GroupTable

    @property
    def carrier(self) -> Carrier:
        return self.add.carrier

    @property
    def n(self) -> int:
        return self.add.n

    @property
    def zero(self) -> int:
        return self.add.identity

    def neg(self, a):
        return self.add.inv[a]

    def minv(self, a):
        return self.mul.inv[a]

    def plus(self, *xs):
        return self.add.product(*xs)

    def times(self, *xs):
        return self.mul.product(*xs)

    def multiple(self, a: int, m: int) -> int:
        return self.add.power(a, m)

    def is_brace(self) -> bool:
        return self.add.is_abelian()


def skew_brace_new(add: GroupTable, mul: GroupTable) -> SkewBrace:
    if add.n != mul.n:
        raise InputError("additive and multiplicative tables live on different carriers")
    if add.identity != mul.identity:
        raise IdentityMismatch(witness={"add_identity": add.identity, "mul_identity": mul.identity})
    n = add.n
    a, b, c = np.indices((n, n, n))
    lhs = mul.op[a, add.op[b, c]]
    rhs1 = add.op[add.op[mul.op[a, b], add.inv[a]], mul.op[a, c]]
    rhs2 = add.op[mul.op[a, b], mul.op[a, add.op[mul.inv[a], c]]]
    fail1, fail2 = lhs != rhs1, lhs != rhs2
    if fail1.any() != fail2.any():
        raise InternalInconsistency("the two forms of the skew brace law disagree")
    w = first_witness(fail1, ("a", "b", "c"))
    if w is not None:
        raise DistributivityFails(witness=w)
    return SkewBrace(add, mul)


def trivial_brace(g: GroupTable) -> SkewBrace:
    return skew_brace_new(g, g)


def almost_trivial_brace(g: GroupTable) -> SkewBrace:
    return skew_brace_new(g, g.opposite())


def modular_brace(n: int) -> SkewBrace:
    """Units mod 2^n with a +_1 b = a - 1 + b and a∘b = ab; the zero is residue 1."""
    if n < 1:
        raise InputError("n must be positive")
    mod = 2**n
    units = [u for u in range(mod) if u % 2 == 1]
    pos = {u: k for k, u in enumerate(units)}
    carrier = Carrier(len(units), tuple(str(u) for u in units))
    add = [[pos[(x - 1 + y) % mod] for y in units] for x in units]
    mul = [[pos[(x * y) % mod] for y in units] for x in units]
    return skew_brace_new(group_from_table(carrier, add), group_from_table(carrier, mul))


def right_distributor(B: SkewBrace) -> tuple[int, ...]:
    n = B.n
    a, b, z = np.indices((n, n, n))
    lhs = B.mul.op[B.add.op[a, b], z]
    rhs = B.plus(B.mul.op[a, z], B.neg(z), B.mul.op[b, z])
    ok = (lhs == rhs).all(axis=(0, 1))
    D = tuple(int(x) for x in np.nonzero(ok)[0])
    Dset = set(D)
    if B.zero not in Dset or any(int(B.mul.op[x, y]) not in Dset for x in D for y in D) or any(
        int(B.minv(x)) not in Dset for x in D
    ):
        raise InternalInconsistency("right distributor is not a subgroup of (X,∘)")
    return D


def additive_center(B: SkewBrace) -> tuple[int, ...]:
    return B.add.center()


def fix_set(B: SkewBrace) -> tuple[int, ...]:
    fix = tuple(int(z) for z in range(B.n) if (B.mul.op[:, z] == B.add.op[:, z]).all())
    if not set(fix) <= set(right_distributor(B)):
        raise InternalInconsistency("Fix(X) escapes the right distributor")
    return fix


# ---------------------------------------------------------------- parameters

Context = Union[SkewBrace, GroupTable, Carrier]


@dataclass(frozen=True, eq=False)
class ParamSet:
    """Ordered parameter members Y ⊆ X with an involution μ on positions.

    ``group`` is the ∘-group used for inverse-type μ and for composite
    subscripts; it is ``None`` for bare carriers.
    """

    carrier: Carrier
    members: tuple[int, ...]
    mu: tuple[int, ...]
    group: GroupTable | None = None
    subgroup_required: bool = False

    @property
    def m(self) -> int:
        return len(self.members)

    @property
    def mu_array(self) -> np.ndarray:
        return np.array(self.mu, dtype=np.int64)

    @property
    def z(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def bar(self, i: int) -> int:
        return self.mu[i]

    def position(self, element: int) -> int:
        return self.members.index(int(element))

    def to_dict(self) -> dict:
        return {"members": list(self.members), "mu": list(self.mu)}


def param_set(context: Context, members: Sequence[int], mu_kind="identity") -> ParamSet:
    """Build a parameter set; ``mu_kind`` is "identity", "inverse", or an explicit position list."""
    if isinstance(context, SkewBrace):
        carrier, group = context.carrier, context.mul
    elif isinstance(context, GroupTable):
        carrier, group = context.carrier, context
    else:
        carrier, group = context, None
    members = tuple(int(x) for x in members)
    if not members:
        raise InputError("parameter set must be nonempty")
    if len(set(members)) != len(members):
        raise InputError("parameter members must be distinct")
    if any(x < 0 or x >= carrier.size for x in members):
        raise InputError("parameter member outside the carrier")
    m = len(members)
    if isinstance(mu_kind, str):
        if mu_kind == "identity":
            mu = tuple(range(m))
        elif mu_kind == "inverse":
            if group is None:
                raise InputError("inverse-type μ needs a ∘-group context")
            mu = []
            for z in members:
                zi = int(group.inv[z])
                if zi not in members:
                    raise NotClosedUnderInverse(witness={"z": z})
                mu.append(members.index(zi))
            mu = tuple(mu)
        else:
            raise InputError(f"unknown mu kind {mu_kind!r}")
    else:
        mu = tuple(int(p) for p in mu_kind)
        if len(mu) != m or any(p < 0 or p >= m for p in mu):
            raise NotInvolutive("μ table has wrong length or out-of-range positions")
    for i in range(m):
        if mu[mu[i]] != i:
            raise NotInvolutive(witness={"i": i})
    return ParamSet(carrier, members, mu, group)


def param_product_table(Y: ParamSet) -> np.ndarray:
    """prod[i, j] = position of z_i ∘ z_j; requires Y to be a ∘-subgroup."""
    if Y.group is None:
        raise InputError("composite parameter subscripts need a ∘-group")
    m = Y.m
    prod = np.empty((m, m), dtype=np.int64)
    for i, zi in enumerate(Y.members):
        for j, zj in enumerate(Y.members):
            w = int(Y.group.op[zi, zj])
            if w not in Y.members:
                raise YNotClosed(witness={"i": i, "j": j})
            prod[i, j] = Y.members.index(w)
    return prod


def params_commute(B: SkewBrace, Y: ParamSet) -> dict | None:
    z = Y.z
    return first_witness(B.mul.op[z[:, None], z[None, :]] != B.mul.op[z[None, :], z[:, None]], ("i", "j"))


# ---------------------------------------------------------------- Odd brace

def _is_odd_fraction(q: Fraction) -> bool:
    return q.numerator % 2 == 1 and q.denominator % 2 == 1


def odd_plus(a: Fraction, b: Fraction) -> Fraction:
    return a - 1 + b


def odd_neg(a: Fraction) -> Fraction:
    return 2 - a


def odd_fraction_spot_check(sample_count: int, seed: int = 0, bound: int = 50) -> dict:
    """Sampled exact checks of the brace axioms on odd/odd rationals with a +_1 b = a - 1 + b."""
    if sample_count < 1:
        raise InputError("sample_count must be positive")
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(2 * rng.randint(-bound, bound) + 1, 2 * rng.randint(0, bound) + 1)

    failures: list[dict] = []
    for _ in range(sample_count):
        a, b, c = draw(), draw(), draw()
        checks = {
            "closure_plus": _is_odd_fraction(odd_plus(a, b)),
            "closure_times": _is_odd_fraction(a * b),
            "distributivity": a * odd_plus(b, c) == odd_plus(odd_plus(a * b, odd_neg(a)), a * c),
            "assoc_plus": odd_plus(odd_plus(a, b), c) == odd_plus(a, odd_plus(b, c)),
            "assoc_times": (a * b) * c == a * (b * c),
            "inverse_plus": odd_plus(a, odd_neg(a)) == 1 and _is_odd_fraction(odd_neg(a)),
            "inverse_times": a * (1 / a) == 1 and _is_odd_fraction(1 / a),
        }
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            failures.append({"a": str(a), "b": str(b), "c": str(c), "failed": bad})
    return {"samples": sample_count, "seed": seed, "passed": not failures, "failures": failures}
