"""Topological bookkeeping of geometric transitions between Calabi-Yau
threefolds: generalized Clemens formulas for small transitions, the
(k, c) bi-degree, degrees of type II/III primitive transitions, and the
weighted-homogeneous conifold characterization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import jsonschema

from .germ import classify_simple, least_index_estimate
from .poly import MultiPoly, parse_poly, scan_variables


class TransitionDataError(ValueError):
    """Inconsistent or invariant-violating transition data."""


class InapplicableCharacterization(ValueError):
    """The w.h. conifold characterization needs tau = mu at every point."""


@dataclass(frozen=True)
class SingularPointRecord:
    count: int
    least_index: int
    mu: int
    tau: int
    local_equation: Optional[str] = None

    def __post_init__(self):
        if self.count < 0:
            raise TransitionDataError("count must be non-negative")
        if self.least_index < 1:
            raise TransitionDataError("least index must be >= 1")
        if self.tau > self.mu:
            raise TransitionDataError(f"tau = {self.tau} exceeds mu = {self.mu}")


@dataclass(frozen=True)
class SmallTransitionData:
    points: Tuple[SingularPointRecord, ...]
    k: int
    hodge: Optional[Tuple[int, int]] = None  # (h11(Y), h21(Y))

    def totals(self) -> Tuple[int, int, int]:
        n = sum(p.count * p.least_index for p in self.points)
        m = sum(p.count * p.mu for p in self.points)
        tau = sum(p.count * p.tau for p in self.points)
        return n, m, tau


@dataclass(frozen=True)
class TransitionReport:
    n: int
    m: int
    tau: int
    k: int
    c_prime: int
    c_second: int
    c: int
    h0: int
    conifold_wh: Optional[bool]
    rigid_hint: bool
    warnings: Tuple[str, ...]
    hodge_tilde: Optional[Tuple[int, int]] = None
    betti_deltas: Optional[Dict[str, int]] = None
    euler_deltas: Optional[Dict[str, int]] = None

    @property
    def bideg(self) -> Tuple[int, int]:
        return (self.k, self.c)

    def to_json_dict(self) -> dict:
        out = {
            "kind": "small",
            "n": self.n,
            "m": self.m,
            "tau": self.tau,
            "k": self.k,
            "c_prime": self.c_prime,
            "c_second": self.c_second,
            "c": self.c,
            "bideg": list(self.bideg),
            "h0": self.h0,
            "conifold_wh": self.conifold_wh,
            "rigid_hint": self.rigid_hint,
            "warnings": list(self.warnings),
        }
        if self.hodge_tilde is not None:
            out["hodge_tilde"] = {"h11": self.hodge_tilde[0], "h21": self.hodge_tilde[1]}
        if self.betti_deltas is not None:
            out["betti_deltas"] = self.betti_deltas
        if self.euler_deltas is not None:
            out["euler_deltas"] = self.euler_deltas
        return out


def _recompute_record(p: SingularPointRecord) -> None:
    """Check declared (mu, tau, least index) against the local equation."""
    assert p.local_equation is not None
    variables = scan_variables(p.local_equation)
    f = parse_poly(p.local_equation, variables)
    rep = classify_simple(f)
    if rep.mu_local is None or rep.tau is None:
        raise TransitionDataError(
            f"local equation {p.local_equation!r} is not an isolated singular germ"
        )
    if rep.mu_local != p.mu:
        raise TransitionDataError(
            f"declared mu = {p.mu} but {p.local_equation!r} has mu = {rep.mu_local}"
        )
    if rep.tau != p.tau:
        raise TransitionDataError(
            f"declared tau = {p.tau} but {p.local_equation!r} has tau = {rep.tau}"
        )
    estimate = least_index_estimate(f, trials=16, seed=0)
    if estimate != p.least_index:
        raise TransitionDataError(
            f"declared least index {p.least_index} but sections of "
            f"{p.local_equation!r} give {estimate}"
        )


def clemens_report(data: SmallTransitionData, recompute: bool = True) -> TransitionReport:
    """Resolution/Milnor/Tyurina totals and the derived Betti, Hodge and
    Euler bookkeeping of a small transition with defect k."""
    for p in data.points:
        if recompute and p.local_equation is not None:
            _recompute_record(p)
    n, m, tau = data.totals()
    k = data.k
    if k < 0:
        raise TransitionDataError("k must be non-negative")
    c_prime = n - k
    if c_prime < 0:
        raise TransitionDataError(f"k = {k} exceeds the resolution number n = {n}")
    c_second = m - k
    if c_second < 0:
        raise TransitionDataError(f"k = {k} exceeds the global Milnor number m = {m}")
    if (c_prime + c_second) % 2:
        raise TransitionDataError(
            f"c' + c'' = {c_prime + c_second} is odd: non-integral moduli gain"
        )
    c = (c_prime + c_second) // 2
    if (2 * tau - m - n) % 2:
        raise TransitionDataError("tau - (m + n)/2 is not an integer")
    h0 = tau - (m + n) // 2
    if h0 < 0:
        raise TransitionDataError(f"tau = {tau} below (m + n)/2 = {(m + n) // 2}")
    warnings: List[str] = []
    conifold: Optional[bool] = None
    if all(p.tau == p.mu for p in data.points):
        conifold = n == m
        if conifold and k == 1 and c == 0:
            warnings.append(
                "single-node contraction (n = m = k = 1): no Calabi-Yau smoothing "
                "exists, the formal conifold verdict is vacuous"
            )
    hodge_tilde = None
    betti = None
    euler = None
    if data.hodge is not None:
        h11, h21 = data.hodge
        hodge_tilde = (h11 - k, h21 + c)
        if hodge_tilde[0] < 0:
            raise TransitionDataError("h11 drops below zero across the transition")
    betti = {
        "b2_Y_minus_b2_Ybar": k,
        "b2_Y_minus_b2_Ytilde": k,
        "b4_Ybar_minus_b4_Ytilde": k,
        "b3_Ybar_minus_b3_Y": c_prime,
        "b3_Ytilde_minus_b3_Y": c_prime + c_second,
    }
    euler = {
        "chi_Y_minus_chi_Ybar": n,
        "chi_Y_minus_chi_Ytilde": n + m,
    }
    return TransitionReport(
        n=n,
        m=m,
        tau=tau,
        k=k,
        c_prime=c_prime,
        c_second=c_second,
        c=c,
        h0=h0,
        conifold_wh=conifold,
        rigid_hint=h0 == 0,
        warnings=tuple(warnings),
        hodge_tilde=hodge_tilde,
        betti_deltas=betti,
        euler_deltas=euler,
    )


@dataclass(frozen=True)
class ConifoldVerdict:
    conifold: bool
    reasons: Tuple[str, ...]
    warnings: Tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "conifold": self.conifold,
            "reasons": list(self.reasons),
            "warnings": list(self.warnings),
        }


def conifoldability_wh(data: SmallTransitionData) -> ConifoldVerdict:
    """Conifold characterization for transitions whose singular points are
    all weighted homogeneous (tau = mu): conifold iff n = m iff the local
    contribution h0 = tau - (m+n)/2 vanishes."""
    bad = [p for p in data.points if p.tau != p.mu]
    if bad:
        raise InapplicableCharacterization(
            "characterization inapplicable: some point has tau < mu"
        )
    report = clemens_report(data, recompute=False)
    n, m, h0 = report.n, report.m, report.h0
    reasons = [
        f"all points weighted homogeneous (tau = mu), so tau = m = {m}",
        f"resolution number n = {n} {'equals' if n == m else 'differs from'} "
        f"global Milnor number m = {m}",
        f"h0 = tau - (m + n)/2 = {h0} {'vanishes' if h0 == 0 else 'is positive'}",
    ]
    return ConifoldVerdict(n == m, tuple(reasons), report.warnings)


TYPE2_C_INCREMENT = {1: 29, 2: 17, 3: 11, 4: 7, 5: 5}


def type2_report(degree: int) -> dict:
    """Degree of a type II transition (del Pezzo degree of the contracted
    divisor) and, for degree <= 5, the forced complex-moduli gain."""
    if not 1 <= degree <= 8:
        raise TransitionDataError("del Pezzo degree must lie in 1..8")
    return {
        "kind": "typeII",
        "degree": degree,
        "c_increment": TYPE2_C_INCREMENT.get(degree),
    }


def type3_report(genus: int, e_cubed: Optional[int] = None) -> dict:
    """Degree 2g - 3 of a type III transition over a genus-g curve, its
    conifoldability, and the predicted canonical conifold model data."""
    if genus < 0:
        raise TransitionDataError("genus must be non-negative")
    degree = 2 * genus - 3
    conifoldable = degree >= 1
    out: dict = {
        "kind": "typeIII",
        "genus": genus,
        "degree": degree,
        "conifoldable": conifoldable,
    }
    notes: List[str] = []
    if conifoldable:
        out["predicted_bideg"] = [1, degree]
        out["predicted_nodes"] = 2 * genus - 2
    else:
        notes.append("no conifold degeneration exists for genus <= 1")
    if genus == 0 and e_cubed is not None:
        out["E3"] = e_cubed
        if e_cubed in (7, 8):
            notes.append(
                f"E^3 = {e_cubed}: the contracted threefold is projectively un-smoothable"
            )
    if degree < 0:
        notes.append("negative degree: its meaning for non-conifoldable transitions is open")
    out["notes"] = notes
    return out


# ---------------------------------------------------------------------------
# JSON descriptor interface
# ---------------------------------------------------------------------------

DESCRIPTOR_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["small", "typeII", "typeIII"]},
        "k": {"type": "integer", "minimum": 0},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "count": {"type": "integer", "minimum": 0},
                    "least_index": {"type": "integer", "minimum": 1},
                    "mu": {"type": "integer", "minimum": 1},
                    "tau": {"type": "integer", "minimum": 1},
                    "local_equation": {"type": "string"},
                },
                "required": ["count", "least_index", "mu", "tau"],
                "additionalProperties": False,
            },
        },
        "hodge": {
            "type": "object",
            "properties": {
                "h11_Y": {"type": "integer", "minimum": 0},
                "h21_Y": {"type": "integer", "minimum": 0},
            },
            "required": ["h11_Y", "h21_Y"],
            "additionalProperties": False,
        },
        "delpezzo_degree": {"type": "integer"},
        "genus": {"type": "integer", "minimum": 0},
        "E3": {"type": "integer"},
    },
    "required": ["kind"],
    "additionalProperties": False,
}


def load_descriptor(text: str) -> dict:
    """Parse and schema-validate a transition descriptor."""
    data = json.loads(text)
    jsonschema.validate(data, DESCRIPTOR_SCHEMA)
    kind = data["kind"]
    if kind == "small" and ("k" not in data or "points" not in data):
        raise jsonschema.ValidationError("small descriptors need 'k' and 'points'")
    if kind == "typeII" and "delpezzo_degree" not in data:
        raise jsonschema.ValidationError("typeII descriptors need 'delpezzo_degree'")
    if kind == "typeIII" and "genus" not in data:
        raise jsonschema.ValidationError("typeIII descriptors need 'genus'")
    return data


def report_from_descriptor(data: dict, recompute: bool = True) -> dict:
    kind = data["kind"]
    if kind == "small":
        points = tuple(
            SingularPointRecord(
                count=p["count"],
                least_index=p["least_index"],
                mu=p["mu"],
                tau=p["tau"],
                local_equation=p.get("local_equation"),
            )
            for p in data["points"]
        )
        hodge = None
        if "hodge" in data:
            hodge = (data["hodge"]["h11_Y"], data["hodge"]["h21_Y"])
        small = SmallTransitionData(points=points, k=data["k"], hodge=hodge)
        return clemens_report(small, recompute=recompute).to_json_dict()
    if kind == "typeII":
        return type2_report(data["delpezzo_degree"])
    return type3_report(data["genus"], data.get("E3"))
