"""JSON documents for every stored object.

Tables are nested row-major lists of element indices. Parameter sets are
``{"members": [...], "mu": [...]}`` and ride along under ``"params"``. When a
document needs the ∘-group (η files, p-brace files, inverse-type μ) it carries a
top-level ``"mul"`` table.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import Carrier, GroupTable, ParamSet, SkewBrace, group_from_table, param_set, skew_brace_new
from .errors import InputError, ShapeMismatch
from .pbraces import EtaFamily, PBraceTable, eta_family, p_brace_table, param_group
from .reflections import ReflectionFamily, reflection_family
from .shelves import PShelf, p_shelf_verify
from .solutions import ParamSolution, make_solution
from .twists import SigmaFamily, sigma_family


def load(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    doc.setdefault("_base", str(Path(path).parent))
    return doc


def dump(doc: dict, path=None) -> str:
    text = json.dumps(_plain(doc), indent=None, separators=(",", ":"))
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def _plain(x: Any):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items() if not k.startswith("_")}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _field(doc: dict, key: str):
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    return doc[key]


def _table(doc: dict, key: str, ndim: int) -> np.ndarray:
    try:
        arr = np.array(_field(doc, key), dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise ShapeMismatch(f"{key!r} is not a rectangular integer table") from exc
    if arr.ndim != ndim:
        raise ShapeMismatch(f"{key!r} must be {ndim}-dimensional, got {arr.ndim}")
    return arr


# ---------------------------------------------------------------- groups, braces, parameters

def brace_to_json(B: SkewBrace) -> dict:
    return {"labels": list(B.carrier.labels), "add": B.add.op, "mul": B.mul.op}


def brace_from_json(doc: dict) -> SkewBrace:
    add, mul = _table(doc, "add", 2), _table(doc, "mul", 2)
    carrier = _carrier(doc, add.shape[0])
    return skew_brace_new(group_from_table(carrier, add), group_from_table(carrier, mul))


def _carrier(doc: dict, n: int) -> Carrier:
    labels = doc.get("labels")
    if labels is None:
        return Carrier.of_size(n)
    if len(labels) != n:
        raise ShapeMismatch("label count differs from table size")
    return Carrier(n, tuple(str(x) for x in labels))


def group_from_doc(doc: dict, n: int) -> GroupTable | None:
    if "mul" not in doc:
        return None
    mul = _table(doc, "mul", 2)
    if mul.shape != (n, n):
        raise ShapeMismatch("'mul' table size differs from the carrier")
    return group_from_table(_carrier(doc, n), mul)


def params_to_json(Y: ParamSet) -> dict:
    return Y.to_dict()


def params_from_json(doc: dict, context) -> ParamSet:
    members = _field(doc, "members")
    mu = doc.get("mu", "identity")
    return param_set(context, members, mu)


def _params_in(doc: dict, n: int, group: GroupTable | None = None) -> ParamSet:
    pdoc = _field(doc, "params")
    if isinstance(pdoc, str):
        pdoc = load(Path(doc.get("_base", ".")) / pdoc)
    return params_from_json(pdoc, group if group is not None else _carrier(doc, n))


# ---------------------------------------------------------------- p-shelves and solutions

def p_shelf_to_json(P: PShelf) -> dict:
    return {"params": params_to_json(P.params), "op": P.op, "rack": P.is_rack}


def p_shelf_from_json(doc: dict) -> PShelf:
    op = _table(doc, "op", 4)
    n = op.shape[-1]
    return p_shelf_verify(op, _params_in(doc, n, group_from_doc(doc, n)))


def raw_p_shelf(doc: dict) -> tuple[np.ndarray, ParamSet]:
    op = _table(doc, "op", 4)
    n = op.shape[-1]
    return op, _params_in(doc, n, group_from_doc(doc, n))


def solution_to_json(S: ParamSolution, mul: GroupTable | None = None) -> dict:
    doc = {"params": params_to_json(S.params), "sigma": S.sigma, "tau": S.tau, "flags": dict(S.flags)}
    if mul is not None:
        doc["mul"] = mul.op
    return doc


def raw_solution(doc: dict) -> tuple[np.ndarray, np.ndarray, ParamSet]:
    sigma, tau = _table(doc, "sigma", 4), _table(doc, "tau", 4)
    n = sigma.shape[-1]
    return sigma, tau, _params_in(doc, n, group_from_doc(doc, n))


def solution_from_json(doc: dict) -> ParamSolution:
    return make_solution(*raw_solution(doc))


def sigma_to_json(s: SigmaFamily) -> dict:
    return {"params": params_to_json(s.params), "sigma": s.table}


def sigma_from_json(doc: dict) -> SigmaFamily:
    table = _table(doc, "sigma", 4)
    n = table.shape[-1]
    return sigma_family(table, _params_in(doc, n, group_from_doc(doc, n)))


def kappa_to_json(K: ReflectionFamily) -> dict:
    return {"params": params_to_json(K.params), "kappa": K.kappa}


def kappa_from_json(doc: dict, params: ParamSet | None = None) -> ReflectionFamily:
    kappa = _table(doc, "kappa", 2)
    n = kappa.shape[-1]
    if params is None:
        params = _params_in(doc, n, group_from_doc(doc, n))
    return reflection_family(kappa, params)


# ---------------------------------------------------------------- η and p-braces

def eta_to_json(E: EtaFamily) -> dict:
    return {"params": params_to_json(E.pg.params), "mul": E.pg.group.op, "eta": E.eta}


def _pg(doc: dict, n: int):
    group = group_from_doc(doc, n)
    if group is None:
        raise InputError("η and p-brace documents need a 'mul' table")
    return param_group(group, _params_in(doc, n, group))


def eta_from_json(doc: dict) -> EtaFamily:
    eta = _table(doc, "eta", 4)
    return eta_family(_pg(doc, eta.shape[-1]), eta)


def p_brace_to_json(T: PBraceTable) -> dict:
    return {"params": params_to_json(T.pg.params), "mul": T.pg.group.op, "plus": T.plus}


def p_brace_from_json(doc: dict) -> PBraceTable:
    plus = _table(doc, "plus", 4)
    return p_brace_table(_pg(doc, plus.shape[-1]), plus)


# ---------------------------------------------------------------- magma bundles

def _component(doc: dict, key: str):
    """A bundle field is either inline or a path relative to the bundle file."""
    val = doc.get(key)
    if isinstance(val, str):
        return load(Path(doc.get("_base", ".")) / val)
    return val


def magma_from_json(doc: dict):
    from .operators import magma_bundle

    sdoc = _component(doc, "solution")
    if sdoc is None:
        raise InputError("bundle needs a 'solution'")
    S = solution_from_json(sdoc)
    bullet = _component(doc, "bullet")
    if isinstance(bullet, dict):
        bullet = bullet.get("bullet")
    if bullet is None:
        raise InputError("bundle needs a 'bullet' table")

    def fam(key):
        v = _component(doc, key)
        return v.get(key) if isinstance(v, dict) else v

    kdoc = _component(doc, "kappa")
    K = None
    if kdoc is not None:
        K = kappa_from_json(kdoc if isinstance(kdoc, dict) else {"kappa": kdoc}, S.params)
    return magma_bundle(bullet, S, g=fam("g"), ghat=fam("ghat"), K=K)


def magma_to_json(B) -> dict:
    doc = {"solution": solution_to_json(B.R), "bullet": B.bullet, "provenance": B.provenance}
    if B.g is not None:
        doc["g"] = B.g
    if B.ghat is not None:
        doc["ghat"] = B.ghat
    if B.K is not None:
        doc["kappa"] = B.K.kappa
    return doc
