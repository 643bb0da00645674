"""JSON scenarios, the check registry and certificates.

A scenario is a JSON object::

    {
      "name": "z2_koszul",
      "tolerance": 1e-9,                      # optional base factor
      "constructions": [ {"id": ..., "kind": ..., ...}, ... ],
      "checks": [ {"check": ..., "args": {...}, "expect": "pass"}, ... ]
    }

Constructions are built in order and may only reference earlier ids.
Complex matrices are nested lists whose entries are ``[re, im]`` pairs.
See ``docs/scenario_schema.md`` in the repository for every directive.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .algebra import center_dimension, clifford_one, diagonal_algebra, full_matrix_algebra
from .bicharacter import (
    Bicharacter,
    bicharacter_from_pairing,
    bicharacter_laws,
    check_counit_compat,
    check_rmatrix,
    check_yang_baxter,
    cyclic_pairing,
    koszul_rmatrix,
    trivial_bicharacter,
    w_bicharacter,
)
from .braided import (
    BraidedBialgebra,
    action_yd,
    check_braided_bialgebra,
    degenerate_bialgebra,
    group_function_bialgebra,
    psi_map,
    psi_route_residual,
    scalar_braided_bialgebra,
    semidirect,
    triple_product,
    trivial_yd,
)
from .coaction import Coaction, comultiplication_coaction, spatial_coaction, trivial_coaction
from .config import policy, tau, tolerance_override
from .corep import (
    Corepresentation,
    braiding_unitary,
    check_hexagons,
    check_symmetry,
    graded_braiding,
    grading_corepresentation,
    grading_projections,
    regular_corep,
)
from .qgroup import FiniteGroup, QuantumGroup, check_pentagon, cyclic_table, group_quantum_group
from .qgroup import latin_square_unitary, symmetric_group_table
from .tensor import max_residual, unitarity_residual
from .twisted import (
    associator,
    boxtimes,
    canonical_heisenberg_pair,
    diagonal_coaction,
    extend_heisenberg_pair,
    heisenberg_double,
    recover_bicharacter,
)
from .yd import (
    YetterDrinfeldAlgebra,
    canonical_yd,
    check_yd,
    codouble,
    induce_yd_from_rmatrix,
    split_codouble_coaction,
    yd_to_codouble_coaction,
)

__all__ = [
    "ScenarioError",
    "Scenario",
    "CheckSpec",
    "CheckRecord",
    "Certificate",
    "CHECKS",
    "load_scenario",
    "parse_scenario",
    "build_objects",
    "run",
    "shipped_scenarios",
    "shipped_path",
    "decode_matrix",
    "encode_matrix",
]


class ScenarioError(ValueError):
    """Invalid scenario input (exit status 2 on the command line)."""


# --------------------------------------------------------------------------
# matrices


def decode_matrix(data, what: str = "matrix") -> np.ndarray:
    """Nested lists of ``[re, im]`` pairs (or plain reals) to a complex array."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{what}: entries must be numbers or [re, im] pairs") from exc
    if arr.ndim >= 1 and arr.shape[-1] == 2 and arr.ndim == 3:
        arr = arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim != 2:
        raise ScenarioError(f"{what}: expected a 2-d matrix")
    if arr.shape[0] != arr.shape[1]:
        raise ScenarioError(f"{what}: expected a square matrix, got shape {arr.shape}")
    return arr.astype(np.complex128)


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


# --------------------------------------------------------------------------
# scenarios


@dataclass
class CheckSpec:
    check: str
    args: dict
    expect: str = "pass"
    label: str = ""


@dataclass
class Scenario:
    name: str
    constructions: list[dict]
    checks: list[CheckSpec]
    tolerance: float | None = None
    source: str = ""

    def count(self, kind: str) -> int:
        return sum(1 for c in self.constructions if c["kind"] == kind)


KINDS = ("group", "unitary", "bicharacter", "coaction", "yd", "braided_bialgebra")


def _refs(directive: dict) -> list[str]:
    keys = ("quantum_group", "bicharacter", "coaction", "yd", "of")
    out = [directive[k] for k in keys if isinstance(directive.get(k), str)]
    return out


def parse_scenario(data: Any, source: str = "") -> Scenario:
    """Validate a decoded JSON scenario."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ScenarioError("scenario needs a non-empty 'name'")
    cons = data.get("constructions", [])
    if not isinstance(cons, list):
        raise ScenarioError("'constructions' must be a list")
    seen: dict[str, str] = {}
    for i, c in enumerate(cons):
        if not isinstance(c, dict) or "id" not in c or "kind" not in c:
            raise ScenarioError(f"construction #{i} needs 'id' and 'kind'")
        if c["kind"] not in KINDS:
            raise ScenarioError(f"construction {c['id']!r}: unknown kind {c['kind']!r}")
        if c["id"] in seen:
            raise ScenarioError(f"duplicate id {c['id']!r}")
        for ref in _refs(c):
            if ref not in seen:
                raise ScenarioError(f"construction {c['id']!r}: dangling reference {ref!r}")
        if c["kind"] == "group":
            _group_from(c)  # validates the table early
        if c["kind"] == "unitary" and "matrix" in c:
            m = decode_matrix(c["matrix"], f"unitary {c['id']!r}")
            if m.shape[0] != m.shape[1] or unitarity_residual(m) > tau(m.shape[0]):
                raise ScenarioError(f"unitary {c['id']!r} is not unitary")
        seen[c["id"]] = c["kind"]
    checks = []
    raw_checks = data.get("checks", [])
    if not isinstance(raw_checks, list):
        raise ScenarioError("'checks' must be a list")
    for i, ch in enumerate(raw_checks):
        if isinstance(ch, str):
            ch = {"check": ch}
        if not isinstance(ch, dict) or ch.get("check") not in CHECKS:
            raise ScenarioError(f"check #{i}: unknown check {ch!r}")
        args = ch.get("args", {})
        spec = CHECKS[ch["check"]]
        for key in spec.needs:
            if key not in args:
                raise ScenarioError(f"check #{i} ({ch['check']}): missing argument {key!r}")
        for key, val in args.items():
            for ref in (val if isinstance(val, list) else [val]):
                if isinstance(ref, str) and key in spec.needs + spec.optional and ref not in seen:
                    raise ScenarioError(f"check #{i} ({ch['check']}): dangling reference {ref!r}")
        expect = ch.get("expect", "pass")
        if expect not in ("pass", "fail"):
            raise ScenarioError(f"check #{i}: 'expect' must be 'pass' or 'fail'")
        checks.append(CheckSpec(ch["check"], args, expect, ch.get("label", "")))
    tol = data.get("tolerance")
    if tol is not None and not (isinstance(tol, (int, float)) and tol > 0):
        raise ScenarioError("'tolerance' must be a positive number")
    return Scenario(name, cons, checks, tol, source)


def load_scenario(path) -> Scenario:
    p = Path(path)
    if not p.exists():
        raise ScenarioError(f"scenario file not found: {p}")
    text = p.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_scenario(data, source=str(p))


# --------------------------------------------------------------------------
# building objects


def _group_from(c: dict) -> FiniteGroup:
    if "cyclic" in c:
        table = cyclic_table(int(c["cyclic"]))
    elif "symmetric" in c:
        table = symmetric_group_table(int(c["symmetric"]))
    elif "table" in c:
        table = c["table"]
    else:
        raise ScenarioError(f"group {c['id']!r} needs 'cyclic', 'symmetric' or 'table'")
    try:
        return FiniteGroup(table, name=c.get("name", c["id"]))
    except ValueError as exc:
        raise ScenarioError(f"group {c['id']!r}: {exc}") from None


def _algebra(spec: str, size: int | None = None):
    if spec == "clifford":
        return clifford_one()
    if spec == "diagonal":
        return diagonal_algebra(int(size))
    if spec == "full":
        return full_matrix_algebra(int(size))
    raise ScenarioError(f"unknown algebra {spec!r}")


def _build_one(c: dict, objs: dict) -> Any:
    kind = c["kind"]
    if kind == "group":
        return group_quantum_group(_group_from(c), side=c.get("side", "group-algebra"),
                                   name=c.get("name", c["id"]))
    if kind == "unitary":
        if "latin_square" in c:
            return latin_square_unitary(c["latin_square"])
        return decode_matrix(c["matrix"], f"unitary {c['id']!r}")
    if kind == "bicharacter":
        qg = objs[c["quantum_group"]]
        t = c.get("type", "matrix")
        if t == "koszul":
            r = koszul_rmatrix(qg)
            r.pairing = np.array([[1, 1], [1, -1]], dtype=np.complex128)
            return r
        if t == "trivial":
            return trivial_bicharacter(qg)
        if t == "w":
            return w_bicharacter(qg)
        if t in ("pairing", "cyclic_pairing"):
            if t == "pairing":
                p = decode_matrix(c["pairing"], "pairing")
            else:
                p = cyclic_pairing(qg.group.order, int(c.get("k", 1)))
            r = bicharacter_from_pairing(qg, p)
            r.pairing = p
            return r
        if t == "matrix":
            m = decode_matrix(c["matrix"], f"bicharacter {c['id']!r}")
            if unitarity_residual(m) > tau(m.shape[0]):
                raise ScenarioError(f"bicharacter {c['id']!r} is not unitary")
            return Bicharacter(qg, qg, m, validate=False, name=c["id"])
        raise ScenarioError(f"unknown bicharacter type {t!r}")
    if kind == "coaction":
        qg = objs[c["quantum_group"]]
        t = c.get("type")
        if t == "comultiplication":
            return comultiplication_coaction(qg)
        if t == "graded":
            degrees = c["degrees"]
            alg = _algebra(c.get("algebra", "full"), len(degrees))
            order = qg.group.order
            u = grading_corepresentation(qg, grading_projections(degrees, order))
            co = spatial_coaction(alg, u, name=c["id"])
            co.degrees = list(degrees)
            return co
        if t == "trivial":
            return trivial_coaction(_algebra(c.get("algebra", "diagonal"), c.get("size", 1)), qg)
        raise ScenarioError(f"unknown coaction type {t!r}")
    if kind == "yd":
        t = c.get("type")
        if t == "induced":
            return induce_yd_from_rmatrix(objs[c["bicharacter"]], objs[c["coaction"]])
        if t == "canonical":
            return canonical_yd(objs[c["quantum_group"]])
        if t == "action":
            return action_yd(objs[c["quantum_group"]], c["perms"])
        if t == "trivial":
            return trivial_yd(_algebra(c.get("algebra", "diagonal"), c.get("size", 1)),
                              objs[c["quantum_group"]])
        raise ScenarioError(f"unknown yd type {t!r}")
    if kind == "braided_bialgebra":
        t = c.get("type")
        if t == "scalar":
            return scalar_braided_bialgebra(objs[c["quantum_group"]])
        if t == "degenerate":
            return degenerate_bialgebra(objs[c["quantum_group"]])
        if t == "group_functions":
            return group_function_bialgebra(objs[c["yd"]], _group_from({"id": c["id"], **c["group"]}))
        raise ScenarioError(f"unknown braided bialgebra type {t!r}")
    raise ScenarioError(f"unknown kind {kind!r}")


def build_objects(s: Scenario) -> dict:
    objs: dict = {}
    for c in s.constructions:
        try:
            objs[c["id"]] = _build_one(c, objs)
        except ScenarioError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise ScenarioError(f"construction {c['id']!r}: {exc}") from None
    return objs


# --------------------------------------------------------------------------
# checks


@dataclass
class Outcome:
    """Residual components of a check, each compared against ``tol``.

    ``controls`` maps a name to ``(value, bound)``; a control passes when the
    value exceeds the bound (negative controls that must detect a defect).
    """

    components: dict[str, float]
    tol: float
    controls: dict[str, tuple[float, float]] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def residual(self) -> float:
        return max(self.components.values()) if self.components else 0.0

    @property
    def passed(self) -> bool:
        ok = all(v <= self.tol for v in self.components.values())
        return ok and all(v > b for v, b in self.controls.values())


@dataclass
class CheckDef:
    fn: Callable[..., Outcome]
    anchor: str
    needs: tuple[str, ...]
    optional: tuple[str, ...] = ()
    doc: str = ""


CHECKS: dict[str, CheckDef] = {}


def _check(name: str, anchor: str, needs=(), optional=()):
    def deco(fn):
        CHECKS[name] = CheckDef(fn, anchor, tuple(needs), tuple(optional),
                                (fn.__doc__ or "").strip().splitlines()[0])
        return fn

    return deco


def _qg_dim(qg: QuantumGroup) -> int:
    return qg.h0


@_check("pentagon", "pentagon equation for a multiplicative unitary", needs=("unitary",))
def _pentagon(objs, unitary):
    """Pentagon residual of a multiplicative unitary or of a quantum group's W."""
    obj = objs[unitary]
    w = obj.matrix if isinstance(obj, QuantumGroup) else obj
    n = int(round(np.sqrt(w.shape[0])))
    return Outcome({"pentagon": check_pentagon(w, n)}, tau(n**3))


@_check("quantum_group", "quantum group generated by a multiplicative unitary: "
        "coassociative and bisimplifiable", needs=("quantum_group",))
def _quantum_group(objs, quantum_group):
    """Slice-algebra dimensions, coassociativity, Podleś conditions and counit."""
    qg = objs[quantum_group]
    p1, p2 = qg.podles_residuals()
    comp = {"coassociativity": qg.coassociativity_residual(), "podles_left": p1,
            "podles_right": p2, "counit": qg.counit_residual(),
            "characterization": qg.characterization_residual()}
    info = {"dim_A": qg.dim, "dim_dual": qg.dual_algebra.dim}
    if qg.group is not None:
        comp["slice_dimension"] = float(abs(qg.dim - qg.group.order)
                                        + abs(qg.dual_algebra.dim - qg.group.order))
    return Outcome(comp, tau(qg.h0**3), info=info)


@_check("bicharacter", "bicharacter laws in both legs", needs=("bicharacter",))
def _bichar(objs, bicharacter):
    """Both character laws of a bicharacter."""
    r = objs[bicharacter]
    a, b = bicharacter_laws(r.source, r.target, r.chi)
    return Outcome({"left_law": a, "right_law": b, "unitarity": unitarity_residual(r.chi)},
                   tau(r.source.h0 * r.target.h0 * max(r.source.h0, r.target.h0)))


@_check("rmatrix", "R-matrix: conjugates the flipped comultiplication, "
        "equivalently R12 W13 W23 = W23 W13 R12", needs=("bicharacter",))
def _rmatrix(objs, bicharacter):
    """Equivariance and the equivalent three-leg form of an R-matrix."""
    r = objs[bicharacter]
    res = check_rmatrix(r)
    return Outcome(res, tau(r.source.h0**3))


@_check("yang_baxter", "quantum Yang-Baxter equation for an R-matrix", needs=("bicharacter",))
def _yb(objs, bicharacter):
    """R12 R13 R23 = R23 R13 R12."""
    r = objs[bicharacter]
    return Outcome({"yang_baxter": check_yang_baxter(r)}, tau(r.source.h0**3))


@_check("counit_compat", "R-matrix compatibility with the counit", needs=("bicharacter",))
def _counit(objs, bicharacter):
    """(ê ⊗ id)R = 1 = (id ⊗ ê)R."""
    r = objs[bicharacter]
    a, b = check_counit_compat(r)
    return Outcome({"left": a, "right": b}, tau(r.source.h0**2))


def _pool(objs, qg, coactions):
    pool = []
    if coactions:
        for cid in coactions:
            co = objs[cid]
            if co.corep is None:
                raise ValueError(f"coaction {cid!r} has no implementing corepresentation")
            pool.append(co.corep)
    else:
        order = qg.group.order
        pool = [grading_corepresentation(qg, grading_projections([d], order)) for d in range(order)]
        pool.append(regular_corep(qg))
    return pool


@_check("hexagons", "braiding unitaries: equivariance, both hexagons and the braid relation",
        needs=("bicharacter",), optional=("coactions",))
def _hexagons(objs, bicharacter, coactions=None):
    """Equivariance, hexagons and braid relation on all triples of a pool."""
    r = objs[bicharacter]
    pool = _pool(objs, r.source, coactions)
    eq = h1 = h2 = br = 0.0
    big = 1
    for u1 in pool:
        for u2 in pool:
            eq = max(eq, braiding_unitary(r, u1, u2).equivariance_residual())
            for u3 in pool:
                a, b, c = check_hexagons(r, u1, u2, u3)
                h1, h2, br = max(h1, a), max(h2, b), max(br, c)
                big = max(big, u1.hilbert_dim * u2.hilbert_dim * u3.hilbert_dim)
    return Outcome({"equivariance": eq, "hexagon_1": h1, "hexagon_2": h2, "braid": br},
                   tau(big * r.source.h0), info={"pool_size": len(pool)})


@_check("graded_sign", "braiding of graded spaces follows the Koszul sign (phase) rule",
        needs=("bicharacter", "coactions"))
def _graded(objs, bicharacter, coactions):
    """Braiding unitary against the expected graded phase rule, entrywise."""
    r = objs[bicharacter]
    p = getattr(r, "pairing", None)
    if p is None:
        raise ValueError("graded sign rule needs a bicharacter built from a pairing")
    worst = 0.0
    for a in coactions:
        for b in coactions:
            ca, cb = objs[a], objs[b]
            c = braiding_unitary(r, ca.corep, cb.corep).c
            worst = max(worst, max_residual(c, graded_braiding(p, ca.degrees, cb.degrees)))
    return Outcome({"sign_rule": worst}, tau(r.source.h0 ** 2))


@_check("symmetry", "braiding is symmetric iff sigma(R) R = 1",
        needs=("bicharacter",), optional=("coactions", "symmetric"))
def _symmetry(objs, bicharacter, coactions=None, symmetric=None):
    """Operator and algebraic symmetry tests agree (and match the expected verdict)."""
    r = objs[bicharacter]
    v = check_symmetry(r, _pool(objs, r.source, coactions))
    comp = {"agreement": 0.0 if v.agree else 1.0,
            "dual_braiding": v.dual_braiding_residual}
    if symmetric is not None:
        comp["verdict"] = 0.0 if bool(symmetric) == v.symmetric else 1.0
    info = {"symmetric": v.symmetric, "operator_residual": v.operator_residual,
            "algebraic_residual": v.algebraic_residual}
    return Outcome(comp, tau(r.source.h0 ** 2), info=info)


@_check("coaction", "continuous coaction: injective, comodule, Podleś, *-homomorphism",
        needs=("coaction",))
def _coaction(objs, coaction):
    """The four coaction checks."""
    co = objs[coaction]
    rep = co.report
    comp = {"injective": 0.0 if rep.injective else 1.0, "comodule": rep.comodule,
            "podles": rep.podles, "multiplicative": rep.multiplicative, "star": rep.star}
    return Outcome(comp, tau(co.algebra.ambient_dim * co.qg.h0 ** 2))


@_check("twisted_product", "twisted tensor product: crossed product and embeddings",
        needs=("left", "right", "bicharacter"), optional=("dim", "center"))
def _twisted(objs, left, right, bicharacter, dim=None, center=None):
    """C ⊠ D is spanned by both orders of products; embeddings are faithful *-homs."""
    t = boxtimes(objs[left], objs[right], objs[bicharacter])
    er = t.embedding_report()
    comp = {"crossed_product": t.crossed_product_residual(),
            "closure": t.carrier.closure_residual()}
    for k, v in er.items():
        comp[f"{k}_multiplicative"] = v["multiplicative"]
        comp[f"{k}_star"] = v["star"]
        comp[f"{k}_injective"] = 0.0 if v["injective"] else 1.0
    zc = t.center_dimension()
    if dim is not None:
        comp["dimension"] = float(abs(t.dim - dim))
    if center is not None:
        comp["center"] = float(abs(zc - center))
    return Outcome(comp, tau(t.carrier.ambient_dim ** 2), info={"dim": t.dim, "center": zc})


@_check("diagonal_coaction", "diagonal coaction on a twisted tensor product; "
        "embeddings are equivariant", needs=("left", "right", "bicharacter"))
def _diag(objs, left, right, bicharacter):
    """Four coaction checks for the diagonal coaction and equivariance of both embeddings."""
    t = boxtimes(objs[left], objs[right], objs[bicharacter])
    d = diagonal_coaction(t)
    rep = d.coaction.report
    comp = {"injective": 0.0 if rep.injective else 1.0, "comodule": rep.comodule,
            "podles": rep.podles, "multiplicative": rep.multiplicative, "star": rep.star,
            "iota_c": d.iota_c_equivariance, "iota_d": d.iota_d_equivariance,
            "generator_route": d.uniqueness}
    return Outcome(comp, tau(t.carrier.ambient_dim * t.left.qg.h0 ** 2))


@_check("associator", "associativity of the twisted tensor product",
        needs=("coactions", "bicharacter"))
def _assoc(objs, coactions, bicharacter):
    """(C1 ⊠ C2) ⊠ C3 and C1 ⊠ (C2 ⊠ C3) coincide on generators."""
    c1, c2, c3 = (objs[c] for c in coactions)
    a = associator(c1, c2, c3, objs[bicharacter])
    e1, e2, e3 = a.embedding_residuals
    return Outcome({"factor_1": e1, "factor_2": e2, "factor_3": e3, "carrier": a.carrier_residual},
                   tau(a.left_nested.carrier.ambient_dim), info={"dim": a.left_nested.dim})


@_check("trivial_degeneration", "trivial coaction gives the ordinary tensor product",
        needs=("left", "right", "bicharacter"))
def _trivial_deg(objs, left, right, bicharacter):
    """With a trivial coaction on one side, C ⊠ D equals C ⊗ D."""
    t = boxtimes(objs[left], objs[right], objs[bicharacter])
    h, k = t.hilbert_dims
    c, d = objs[left].algebra, objs[right].algebra
    prods = np.einsum("iab,jcd->ijacbd", c.basis, d.basis).reshape(-1, h * k, h * k)
    from .tensor import span, subspace_equal

    _, dist = subspace_equal(t.carrier.space, span(prods, h * k))
    inner = np.einsum("ab,icd->iacbd", np.eye(h), d.basis).reshape(-1, h * k, h * k)
    return Outcome({"carrier": dist, "iota_d": max_residual(t.iota_d.images, inner)},
                   tau(h * k))


@_check("heisenberg", "Heisenberg pairs: canonical pair, extension and "
        "recovery of the bicharacter", needs=("quantum_group",),
        optional=("bicharacters", "order_control", "extension"))
def _heis(objs, quantum_group, bicharacters=None, order_control=False, extension=None):
    """Canonical pair relation, extended pair relation, recovery of each bicharacter."""
    qg = objs[quantum_group]
    cp = canonical_heisenberg_pair(qg)
    comp = {"canonical": cp.relation_residual()}
    info = {}
    # the extended pair acts on H0^3 and its relation on H0^6
    if extension is None:
        extension = qg.h0 <= 3
    if extension:
        comp["extension"] = extend_heisenberg_pair(cp).relation_residual()
    else:
        info["extension"] = "skipped"
    controls = {}
    if order_control:
        controls["swapped_order"] = (cp.relation_residual(swapped=True), 0.5)
    for bid in bicharacters or []:
        chi = objs[bid]
        t = boxtimes(comultiplication_coaction(chi.source), comultiplication_coaction(chi.target), chi)
        rec, r = recover_bicharacter(t)
        comp[f"recover_{bid}"] = max(max_residual(rec, chi.chi), r)
    return Outcome(comp, tau(qg.h0 ** 4), controls=controls, info=info)


@_check("codouble", "codouble: coassociative and bisimplifiable", needs=("quantum_group",))
def _codouble(objs, quantum_group):
    """Coassociativity, Podleś conditions and counit of the codouble."""
    cod = codouble(objs[quantum_group])
    p1, p2 = cod.podles_residuals()
    return Outcome({"coassociativity": cod.coassociativity_residual(), "podles_left": p1,
                    "podles_right": p2, "counit": cod.counit_residual()}, tau(cod.h0 ** 2),
                   info={"dim": cod.dim})


@_check("yetter_drinfeld", "Yetter-Drinfeld compatibility and the codouble round trip",
        needs=("yd",))
def _yd(objs, yd):
    """YD residual; YD ↔ codouble coaction round trip; codouble coaction checks."""
    c = objs[yd]
    xi = yd_to_codouble_coaction(c)
    g, d = split_codouble_coaction(xi)
    rep = xi.report
    comp = {"yetter_drinfeld": check_yd(c), "round_trip_gamma": max_residual(g, c.gamma.coeffs),
            "round_trip_delta": max_residual(d, c.delta.coeffs), "comodule": rep.comodule,
            "podles": rep.podles, "multiplicative": rep.multiplicative,
            "injective": 0.0 if rep.injective else 1.0}
    return Outcome(comp, tau(c.algebra.ambient_dim * c.qg.h0 ** 4))


@_check("heisenberg_double", "Heisenberg double A ⊠_W Â equals B(H0)",
        needs=("quantum_group",))
def _hd(objs, quantum_group):
    """Subspace equality of the realized Heisenberg double with all matrices."""
    hd = heisenberg_double(objs[quantum_group])
    n = objs[quantum_group].h0
    return Outcome({"full_matrices": hd.full_residual, "multiplicative": hd.multiplicative,
                    "dimension": float(abs(hd.product.dim - n * n))}, tau(n ** 2))


@_check("monoidal_embedding", "R-twisted products agree with W-twisted products "
        "of the induced Yetter-Drinfeld algebras", needs=("left", "right", "bicharacter"))
def _monoidal(objs, left, right, bicharacter):
    """C ⊠_R D and C ⊠_W D are the same subalgebra with the same embeddings."""
    r = objs[bicharacter]
    c, d = objs[left], objs[right]
    t = boxtimes(c, d, r)
    yc = induce_yd_from_rmatrix(r, c)
    yd_ = induce_yd_from_rmatrix(r, d)
    tw = boxtimes(yc.gamma, yd_.delta, w_bicharacter(r.source))
    from .tensor import subspace_equal

    return Outcome({"carrier": subspace_equal(t.carrier.space, tw.carrier.space)[1],
                    "iota_c": max_residual(t.iota_c.images, tw.iota_c.images),
                    "iota_d": max_residual(t.iota_d.images, tw.iota_d.images)},
                   tau(t.carrier.ambient_dim))


@_check("triple_product", "triple products A ⊠ B ⊠ B' with their coactions and Ψ",
        needs=("quantum_group", "yd"), optional=("yd2", "dim"))
def _triple(objs, quantum_group, yd, yd2=None, dim=None):
    """Triple product: twist characterization, coactions, associator, Ψ identities."""
    qg = objs[quantum_group]
    b = objs[yd]
    b2 = objs[yd2] if yd2 else b
    t = triple_product(qg, b, b2)
    ps = psi_map(t)
    rep = t.coaction_report()
    a, dl = rep["a_coaction"], rep["dual_coaction"]
    comp = {"twist": t.z_residual, "closure": t.closure_residual(),
            "pair_model": t.pair_consistency(), "associator": t.associator_residual(),
            "a_comodule": a["comodule"], "a_podles": a["podles"],
            "a_multiplicative": a["multiplicative"], "dual_comodule": dl["comodule"],
            "dual_multiplicative": dl["multiplicative"],
            "dual_injective": 0.0 if dl["injective"] else 1.0,
            "compatibility": rep["compatibility"],
            "psi_a": ps.identity_residuals[0], "psi_b": ps.identity_residuals[1],
            "psi_b2": ps.identity_residuals[2], "psi_injective": 0.0 if ps.injective else 1.0}
    if dim is not None:
        comp["dimension"] = float(abs(t.dim - dim))
    return Outcome(comp, tau(t.carrier.ambient_dim * qg.h0 ** 2),
                   info={"dim": t.dim, "dual_podles": dl["podles"]})


@_check("braided_bialgebra", "braided bialgebra: equivariant, coassociative; "
        "braided Podleś conditions", needs=("braided",), optional=("bisimplifiable",))
def _braided(objs, braided, bisimplifiable=True):
    """Equivariance, coassociativity through the associator, braided Podleś conditions."""
    bb = objs[braided]
    r = check_braided_bialgebra(bb)
    comp = {"equivariance_a": r.equivariance_a, "equivariance_dual": r.equivariance_dual,
            "multiplicative": r.multiplicative, "star": r.star, "associator": r.associator,
            "coassociativity": r.coassociativity}
    controls = {}
    if bisimplifiable:
        comp.update(podles_left=r.podles_left, podles_right=r.podles_right)
    else:
        controls = {"podles_left": (r.podles_left, 0.5), "podles_right": (r.podles_right, 0.5)}
    ambient = bb.product.product.carrier.ambient_dim
    return Outcome(comp, tau(ambient * bb.qg.h0 ** 2), controls=controls,
                   info={"unital": r.unital, "injective": r.injective})


@_check("semidirect", "semidirect product bialgebra C = A ⊠ B with Δ_C = Ψ(id ⊠ Δ_B)",
        needs=("quantum_group", "braided"),
        optional=("blocks", "compact", "bisimplifiable", "matches_comultiplication"))
def _semidirect(objs, quantum_group, braided, blocks=None, compact=None, bisimplifiable=True,
                matches_comultiplication=False):
    """Coassociativity (direct and through Ψ', Ψ''), Podleś, injectivity, block structure."""
    qg = objs[quantum_group]
    bb = objs[braided]
    sd = semidirect(qg, bb)
    br = check_braided_bialgebra(bb)
    p1, p2 = sd.podles_residuals()
    comp = {"psi_a": sd.psi.identity_residuals[0], "psi_b": sd.psi.identity_residuals[1],
            "psi_b2": sd.psi.identity_residuals[2],
            "coassociativity": sd.coassociativity_residual(),
            "psi_route": max(psi_route_residual(qg, bb.yd), br.coassociativity),

            "injectivity_equivalence": 0.0 if sd.is_injective() == br.injective else 1.0}
    parts = sd.intertwining_parts()
    unit_gap = sd.comult_unit_residual()
    comp.update({f"intertwining_{k}": v for k, v in parts.items() if k != "iota_a"})
    if unit_gap <= tau(sd.carrier.ambient_dim):
        comp["intertwining_iota_a"] = parts["iota_a"]
    controls = {}
    if bisimplifiable:
        comp.update(podles_left=p1, podles_right=p2)
    else:
        controls = {"podles_left": (p1, 0.5), "podles_right": (p2, 0.5)}
    info = {"dim": sd.dim, "unital": sd.is_unital, "center": sd.center_dimension(),
            "comultiplication_unit_gap": unit_gap}
    if blocks is not None:
        got = sd.blocks()
        info["blocks"] = got
        comp["blocks"] = 0.0 if sorted(blocks) == got else 1.0
    cq = sd.is_compact_quantum_group()
    info["compact_quantum_group"] = cq
    if compact is not None:
        comp["compact_flag"] = 0.0 if bool(compact) == cq else 1.0
    if matches_comultiplication:
        comp["matches_comultiplication"] = sd.matches_comultiplication()
    return Outcome(comp, tau(sd.carrier.ambient_dim ** 2 * qg.h0), controls=controls, info=info)


# --------------------------------------------------------------------------
# running


@dataclass
class CheckRecord:
    check: str
    label: str
    anchor: str
    residual: float | None
    tolerance: float | None
    passed: bool
    expected: str
    components: dict
    info: dict
    message: str | None = None
    wall_time: float | None = None

    def as_dict(self, timings: bool = False) -> dict:
        d = {"check": self.check, "label": self.label, "anchor": self.anchor,
             "residual": self.residual, "tolerance": self.tolerance, "passed": self.passed,
             "expected": self.expected, "components": self.components, "info": self.info,
             "message": self.message}
        if timings:
            d["wall_time"] = self.wall_time
        return d


@dataclass
class Certificate:
    scenario: str
    records: list[CheckRecord]
    environment: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def as_dict(self, timings: bool = False) -> dict:
        return {"scenario": self.scenario, "passed": self.passed,
                "checks": [r.as_dict(timings) for r in self.records],
                "environment": self.environment}

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(_jsonable(self.as_dict(timings)), indent=2, sort_keys=True) + "\n"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _run_check(spec: CheckSpec, objs: dict, base: float | None) -> CheckRecord:
    cdef = CHECKS[spec.check]
    label = spec.label or spec.check
    t0 = time.perf_counter()
    with tolerance_override(base):
        try:
            out = cdef.fn(objs, **spec.args)
        except Exception as exc:  # surfaced as a failed check, not a crash
            return CheckRecord(spec.check, label, cdef.anchor, None, None,
                               False, spec.expect, {}, {},
                               message=f"{type(exc).__name__}: {exc}",
                               wall_time=time.perf_counter() - t0)
    ok = out.passed
    passed = ok if spec.expect == "pass" else not ok
    info = dict(out.info)
    if out.controls:
        info["controls"] = {k: {"value": v, "must_exceed": b} for k, v, b in
                            ((k, *vb) for k, vb in out.controls.items())}
    return CheckRecord(spec.check, label, cdef.anchor, out.residual, out.tol, passed,
                       spec.expect, dict(out.components), info,
                       wall_time=time.perf_counter() - t0)


def run(scenario: Scenario, tolerance: float | None = None, jobs: int = 1) -> Certificate:
    """Execute all checks; records keep declaration order."""
    base = tolerance if tolerance is not None else scenario.tolerance
    with tolerance_override(base):
        objs = build_objects(scenario)
        env = {"scalar_precision": "complex128", "tolerance_policy": policy(),
               "artifact_version": __version__, "universal_lift": "trivialized"}
    specs = scenario.checks
    if jobs > 1 and len(specs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda s: _run_check(s, objs, base), specs))
    else:
        records = [_run_check(s, objs, base) for s in specs]
    return Certificate(scenario.name, records, env)


# --------------------------------------------------------------------------
# shipped fixtures


def shipped_scenarios() -> list[str]:
    root = resources.files("braidbox") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def shipped_path(name: str) -> Path:
    root = resources.files("braidbox") / "scenarios"
    p = root / f"{name}.json"
    if not p.is_file():
        raise ScenarioError(f"no shipped scenario named {name!r}")
    return Path(str(p))
