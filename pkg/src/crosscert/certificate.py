"""Assemble and replay the separation certificate.

The certified numeric chain is

    M1([0,1]^2 \\ K)  <=  series bound  <  eps  <=  L/2  <  L  <=  alpha(C)

and, with the analytic facts listed under ``assumptions``,

    alpha((0,1)^2 \\ K) <= M1([0,1]^2 \\ K) < alpha(C) <= alpha((0,1)^2 \\ int K),

which violates the equality alpha(D \\ K) = alpha(D \\ int K) for D = (0,1)^2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .capacity import alpha_lower_bound, replay_capacity
from .content import CONTENT_CONVENTION, lemma2_series
from .enclosure import DEFAULT_PREC, InconclusiveError, enclosure_from_json
from .geometry import DeltaSequence, frac_from_json, frac_to_json
from .selector import select_geometric

SCHEMA = "crosscert/counterexample-certificate"
SCHEMA_VERSION = 1

# content convention -> factor kappa with M1_diameter <= kappa * M1_side bound used
# (the side convention needs none; the diameter convention costs sqrt(2) <= 2)
CONVENTION_FACTORS = {"side": Fraction(1), "diameter": Fraction(2)}

ASSUMPTIONS = (
    {"id": "vitushkin-criterion",
     "statement": "R(K) = A(K) iff alpha(D \\ K) = alpha(D \\ int K) for every bounded open D.",
     "source": "A. G. Vitushkin (1967); T. W. Gamelin, Uniform Algebras, Thm VIII.8.2"},
    {"id": "alpha-le-content",
     "statement": "alpha(E) <= M1(E) for the recorded content convention "
                  "(side-length squares; each square lies in a disk of radius side/sqrt(2)).",
     "source": "Painleve-type covering estimate for continuous analytic capacity"},
    {"id": "boundary-negligible",
     "statement": "The boundary of the unit square is negligible for alpha, so "
                  "alpha([0,1]^2 \\ int K) = alpha((0,1)^2 \\ int K).",
     "source": "T. W. Gamelin, Uniform Algebras, ch. VIII"},
    {"id": "cantor-square-in-boundary",
     "statement": "C(1/3) x C(1/3) is contained in the boundary of K for every admissible gap sequence.",
     "source": "construction of K"},
    {"id": "alpha-monotone",
     "statement": "alpha is monotone under inclusion; hence alpha(C) <= alpha(boundary K) "
                  "<= alpha([0,1]^2 \\ int K).",
     "source": "definition of alpha"},
    {"id": "frostman-continuity",
     "statement": "The Cauchy transform of the self-similar measure on C is continuous on the "
                  "plane and analytic off C, since mu(B(x,r)) <= C_F r^d with d = log4/log3 > 1.",
     "source": "standard potential theory (int_0^1 t^(d-2) dt < inf)"},
)


class SchemaError(ValueError):
    pass


class PrecisionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    data: dict

    @property
    def verdict(self) -> str:
        return self.data["verdict"]

    def dumps(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls(json.loads(text))

    @classmethod
    def read(cls, path) -> "Certificate":
        return cls.loads(Path(path).read_text())


def _largest_pow2_reciprocal_le(x: Fraction) -> Fraction:
    k = 0
    while Fraction(1, 2 ** k) > x:
        k += 1
    return Fraction(1, 2 ** k)


def _link(name, relation, lhs, rhs, holds, note, status="certified"):
    return {"link": name, "relation": relation, "lhs": frac_to_json(lhs), "rhs": frac_to_json(rhs),
            "holds": bool(holds), "slack": frac_to_json(Fraction(rhs) - Fraction(lhs)),
            "status": status, "note": note}


def _chain(series_hi, eps, kappa, lo) -> list[dict]:
    return [
        _link("content-series", "<", series_hi, eps, series_hi < eps,
              "M1([0,1]^2 \\ K) <= series bound < eps"),
        _link("convention", "<=", kappa * eps, lo / 2, kappa * eps <= lo / 2,
              "convention factor times eps <= L/2"),
        _link("half-capacity", "<", lo / 2, lo, lo / 2 < lo, "L/2 < L"),
        _link("capacity", "<=", lo, lo, lo > 0, "0 < L <= alpha(C) by the Frostman scheme"),
        {"link": "alpha-side", "relation": "<=", "status": "assumed", "holds": True,
         "note": "alpha(C) <= alpha((0,1)^2 \\ int K)",
         "assumptions": ["cantor-square-in-boundary", "alpha-monotone", "boundary-negligible"]},
    ]


def build_certificate(prec: int = DEFAULT_PREC, convention: str = "side",
                      refine_levels: int = 0) -> Certificate:
    if convention not in CONVENTION_FACTORS:
        raise ValueError(f"unknown content convention {convention!r}")
    kappa = CONVENTION_FACTORS[convention]
    cap = alpha_lower_bound(refine_levels, prec=prec)
    lo = cap.lo
    eps = _largest_pow2_reciprocal_le(lo / 2 / kappa)
    seq = select_geometric(eps, prec)
    series = lemma2_series(seq, prec)
    if not series.converges:
        raise InconclusiveError("selected sequence has no finite series bound")
    chain = _chain(series.hi, eps, kappa, lo)
    data = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "precision_bits": prec,
        "conventions": {"content": convention, "content_detail": CONTENT_CONVENTION,
                        "factor": frac_to_json(kappa)},
        "capacity_lb": cap.to_json(),
        "target_eps": frac_to_json(eps),
        "sequence": seq.to_json(),
        "content_bound": series.to_json(),
        "chain": chain,
        "assumptions": [dict(a) for a in ASSUMPTIONS],
        "claim": "R(K) != A(K) for K built from the stored gap sequence (witness D = (0,1)^2)",
    }
    data["verdict"] = "PASS" if all(c["holds"] for c in chain) else "FAIL"
    return Certificate(data)


# ---------------------------------------------------------------------------
# validation

REQUIRED = ("schema", "schema_version", "precision_bits", "conventions", "capacity_lb",
            "target_eps", "sequence", "content_bound", "chain", "assumptions", "verdict")


@dataclass
class Validation:
    verdict: str
    failed_link: str | None
    log: list = field(default_factory=list)
    prec: int = DEFAULT_PREC
    series: object = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def _check_schema(d: dict) -> None:
    missing = [k for k in REQUIRED if k not in d]
    if missing:
        raise SchemaError(f"missing fields: {', '.join(missing)}")
    if d["schema"] != SCHEMA or d["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {d['schema']!r} v{d['schema_version']!r}")
    if d["conventions"].get("content") not in CONVENTION_FACTORS:
        raise SchemaError("unknown content convention")
    ids = {a.get("id") for a in d["assumptions"]}
    needed = {a["id"] for a in ASSUMPTIONS}
    if not needed <= ids:
        raise SchemaError(f"assumptions missing: {', '.join(sorted(needed - ids))}")


def validate(cert: Certificate | dict, prec: int | None = None) -> Validation:
    """Recompute every certified link of the chain from the stored inputs."""
    d = cert.data if isinstance(cert, Certificate) else cert
    _check_schema(d)
    stored_prec = int(d["precision_bits"])
    prec = stored_prec if prec is None else prec
    if prec < stored_prec:
        raise PrecisionMismatchError(
            f"re-verification at {prec} bits is below the stored {stored_prec} bits")
    log = [f"certificate schema v{d['schema_version']}, tool {d.get('tool_version')}, "
           f"stored precision {stored_prec} bits, re-verifying at {prec} bits"]

    def fail(link, msg):
        log.append(f"FAIL [{link}] {msg}")
        return Validation("FAIL", link, log, prec)

    # capacity derivation replay
    cap = d["capacity_lb"]
    lo = frac_from_json(cap["value_lo_exact"])
    replay = replay_capacity(cap["derivation"])
    stored_b = frac_from_json(cap["potential_bound_hi_exact"])
    if lo <= 0:
        return fail("capacity", "capacity lower bound is not positive")
    if 1 / stored_b != replay or lo > replay:
        return fail("capacity", f"stored L = {lo} exceeds replayed 1/B = {replay}")
    log.append(f"ok   [capacity] 0 < L = {lo} <= 1/B = {replay}")

    # target eps against L/2
    kappa = CONVENTION_FACTORS[d["conventions"]["content"]]
    eps = frac_from_json(d["target_eps"])
    if not (eps > 0 and kappa * eps <= lo / 2):
        return fail("convention", f"{kappa} * eps = {kappa * eps} exceeds L/2 = {lo / 2}")
    log.append(f"ok   [convention] {kappa} * eps = {kappa * eps} <= L/2 = {lo / 2}")
    log.append(f"ok   [half-capacity] L/2 < L with slack {lo / 2}")

    # sequence admissibility and series
    try:
        seq = DeltaSequence.from_json(d["sequence"])
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad sequence: {exc}") from exc
    if not seq.admissible_all_levels():
        return fail("sequence", "gap widths violate delta_n < 3^-(n+1)")
    log.append("ok   [sequence] delta_n < 3^-(n+1) for every n")
    series = lemma2_series(seq, prec)
    if not series.converges:
        return fail("content-series", "series bound diverges")
    stored = d["content_bound"].get("value")
    if stored is None:
        return fail("content-series", "no stored series bound")
    stored_enc = enclosure_from_json(stored)
    if series.value.hi < stored_enc.lo or stored_enc.hi < series.value.lo:
        return fail("content-series", "stored series enclosure disagrees with replay")
    if not series.hi < eps:
        return fail("content-series",
                    f"series bound {float(series.hi):.6g} is not < eps = {float(eps):.6g}")
    log.append(f"ok   [content-series] series bound {float(series.hi):.6g} < eps = {eps}"
               f" (width {float(series.value.width):.3g})")

    for a in d["assumptions"]:
        log.append(f"assumed [{a['id']}] {a['statement']} ({a.get('source', '')})")
    log.append("PASS: numeric chain certified; conclusion holds modulo the assumptions above")
    v = Validation("PASS", None, log, prec, series)
    return v
