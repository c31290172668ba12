# quadselmer/report.py
"""
Esquema del reporte por campo y su salida en JSON, CSV y texto.
"""
from __future__ import annotations

import csv
import io
import json

from pydantic import BaseModel, Field, field_validator

VERDICTS = ("pass", "fail", "inconclusive")

CSV_COLUMNS = (
    "d", "disc", "r", "s", "h", "h_plus", "rho", "rho_plus", "rho_4", "rho_4_plus",
    "dims", "lagarias_uniform", "all_checks_pass",
)

SELMER_ORDER = ("sel", "plus", "four", "four_plus")


class SelmerClassEntry(BaseModel):
    element: str          # "[x, y]" en la base {1, ω}
    text: str
    conductor: str        # "1", "∞", "(4)" o "(4)∞"


class FieldReport(BaseModel):
    d: int | str
    disc: int
    r: int
    s: int
    n: int
    h: int | None = None
    h_plus: int | None = None
    u: int | None = None
    rho: int | None = None
    rho_plus: int | None = None
    rho_4: int | None = None
    rho_4_plus: int | None = None
    selmer_dims: dict[str, int] = Field(default_factory=dict)
    unit_dims: dict[str, int] = Field(default_factory=dict)
    clp_rank: int | None = None
    hecke_aliases: dict[str, int] = Field(default_factory=dict)
    checks: dict[str, str] = Field(default_factory=dict)
    lagarias: list[bool] = Field(default_factory=list)
    rho_plus_triple: list[int] = Field(default_factory=list)
    fundamental_unit: str | None = None
    class_group: list[int] = Field(default_factory=list)
    narrow_class_group: list[int] = Field(default_factory=list)
    selmer_bases: dict[str, list[SelmerClassEntry]] = Field(default_factory=dict)
    pairings: list[dict] = Field(default_factory=list)
    fuzz: dict[str, int] = Field(default_factory=dict)
    diagnostics: dict[str, str] = Field(default_factory=dict)
    seed: int = 0

    @field_validator("checks")
    @classmethod
    def known_verdicts(cls, v: dict[str, str]) -> dict[str, str]:
        bad = {k: x for k, x in v.items() if x not in VERDICTS}
        if bad:
            raise ValueError(f"veredictos desconocidos: {bad}")
        return v

    @property
    def all_pass(self) -> bool:
        return bool(self.checks) and all(v == "pass" for v in self.checks.values())

    @property
    def has_fail(self) -> bool:
        return any(v == "fail" for v in self.checks.values())

    @property
    def has_inconclusive(self) -> bool:
        return any(v == "inconclusive" for v in self.checks.values())

    @property
    def lagarias_uniform(self) -> bool:
        return len(set(self.lagarias)) <= 1


# ======================================================
# JSON / CSV
# ======================================================
def to_json(reports: list[FieldReport] | FieldReport) -> str:
    if isinstance(reports, FieldReport):
        payload = reports.model_dump(mode="json")
    else:
        payload = [r.model_dump(mode="json") for r in reports]
    return json.dumps(payload, ensure_ascii=False, indent=2)


def _csv_row(rep: FieldReport) -> list:
    dims = "/".join(str(rep.selmer_dims.get(k, "")) for k in SELMER_ORDER)
    return [
        rep.d, rep.disc, rep.r, rep.s, rep.h, rep.h_plus, rep.rho, rep.rho_plus,
        rep.rho_4, rep.rho_4_plus, dims,
        int(rep.lagarias_uniform), int(rep.all_pass),
    ]


def to_csv(reports: list[FieldReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        w.writerow(["" if x is None else x for x in _csv_row(rep)])
    return buf.getvalue()


# ======================================================
# TEXTO
# ======================================================
def _field_name(rep: FieldReport) -> str:
    return "Q" if rep.d == "Q" else f"Q(√{rep.d})"


def _table_rows(rep: FieldReport) -> list[tuple[str, str, str, str, str, str]]:
    r, s = rep.r, rep.s
    rho, rho_p = rep.rho, rep.rho_plus
    dims = rep.selmer_dims
    if rho is None or rho_p is None:
        return []
    return [
        ("Sel", str(dims.get("sel")), f"ρ+r+s = {rho + r + s}",
         "Cl", str(rho), f"ρ = {rho}"),
        ("Sel⁺", str(dims.get("plus")), f"ρ⁺+s = {rho_p + s}",
         "Cl⁺", str(rho_p), f"ρ⁺ = {rho_p}"),
        ("Sel₄", str(dims.get("four")), f"ρ⁺ = {rho_p}",
         "Cl{4}", str(rep.rho_4), f"ρ⁺+s = {rho_p + s}"),
        ("Sel₄⁺", str(dims.get("four_plus")), f"ρ = {rho}",
         "Cl⁺{4}", str(rep.rho_4_plus), f"ρ+r+s = {rho + r + s}"),
    ]


def to_text(rep: FieldReport) -> str:
    lines = [
        f"{_field_name(rep)}  Δ={rep.disc}  r={rep.r} s={rep.s}  "
        f"h={rep.h} h⁺={rep.h_plus} u={rep.u}",
    ]
    if rep.fundamental_unit:
        lines.append(f"  ε = {rep.fundamental_unit}")

    rows = _table_rows(rep)
    if rows:
        lines.append(f"  {'grupo':<7}{'dim':>4}  {'fórmula':<16}{'grupo':<8}{'2-rango':>8}  fórmula")
        for g, dim, f1, c, rk, f2 in rows:
            lines.append(f"  {g:<7}{dim:>4}  {f1:<16}{c:<8}{rk:>8}  {f2}")

    for kind in SELMER_ORDER:
        entries = rep.selmer_bases.get(kind)
        if entries is None:
            continue
        gens = ", ".join(f"{e.text} [{e.conductor}]" for e in entries) or "1"
        lines.append(f"  {kind:<10}⟨{gens}⟩")

    if rep.clp_rank is not None:
        lines.append(f"  dim Clp = {rep.clp_rank}")
    for name, verdict in rep.checks.items():
        mark = "ok" if verdict == "pass" else verdict.upper()
        lines.append(f"  {name:<28}{mark}")
    for name, msg in rep.diagnostics.items():
        lines.append(f"    {name}: {msg}")
    return "\n".join(lines)


def render(reports: list[FieldReport], fmt: str) -> str:
    if fmt == "json":
        return to_json(reports)
    if fmt == "csv":
        return to_csv(reports)
    return "\n\n".join(to_text(r) for r in reports)
