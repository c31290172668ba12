# quadselmer/verify.py
"""
Batería de comprobaciones por campo y barridos sobre rangos de d.

Cada comprobación termina en un veredicto (pass / fail / inconclusive);
verify_field nunca lanza para un d válido.
"""
from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from itertools import product, repeat
from math import isqrt
from typing import Callable

from pydantic import BaseModel, Field

from .arith import genus_rank, is_squarefree
from .classgroups import ClassGroupData, class_group, narrow_class_group
from .config import Config, load_config
from .errors import DomainError, InconclusiveError, TheoremViolation, UsageError
from .field import RATIONAL, FieldElement, QuadField, make_field, mod4_data, signature
from .gf2 import BitMatrix, f2_rank, kernel_contained, span_contains
from .ideals import UNIT_IDEAL, iter_prime_ideals, multiply, power
from .logger import log_field
from .reduction import fundamental_unit, strict_generator
from .report import FieldReport, SelmerClassEntry
from .selmer import (
    BaseChange,
    RayRanks,
    SelmerKind,
    SelmerSpace,
    conductor_class,
    expected_dims,
    ray_2ranks,
    selmer_base_change,
    selmer_coordinates,
    selmer_space,
    selmer_subspace,
)
from .symbols import (
    CheckOutcome,
    PairingKind,
    PairingVerdict,
    SupplementaryVerdict,
    pairing_matrix,
    reciprocity_check,
    supplementary_check,
)
from .units import UnitData, unit_structure

log = logging.getLogger("quadselmer.verify")


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


def _expect(cond: bool, check: str, message: str) -> None:
    if not cond:
        raise TheoremViolation(check, message)


# ======================================================
# FUZZ DE RECIPROCIDAD
# ======================================================
@dataclass
class FuzzResult:
    d: str
    trials: int
    height: int
    seed: int
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    attempts: int = 0
    mismatches: list[tuple[str, str]] = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        if self.failed:
            return Verdict.FAIL
        if self.passed < self.trials:
            return Verdict.INCONCLUSIVE
        return Verdict.PASS

    def to_dict(self) -> dict[str, int]:
        return {
            "trials": self.trials,
            "height": self.height,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "attempts": self.attempts,
        }


def _sample_element(F: QuadField, rng: random.Random, height: int) -> FieldElement:
    x = rng.randint(-height, height)
    y = 0 if F.is_rational else rng.randint(-height, height)
    return F.element(x, y)


def _sample_totally_positive(F: QuadField, rng: random.Random, height: int) -> FieldElement:
    """(A + B√d)/2 con A > |B|√d; la coordenada racional arranca en ⌈|B|√d⌉."""
    B = rng.randint(-height, height) * (2 if F.omega_trace == 0 else 1)
    A = isqrt(F.d * B * B) + 1 + rng.randint(0, 2 * height)
    elem = F.from_half(A, B)
    return elem if elem is not None else F.from_half(A + 1, B)


def reciprocity_fuzz(F: QuadField, trials: int, height: int, seed: int) -> FuzzResult:
    """
    Pares (α, β) con coeficientes |x|, |y| ≤ height, rechazando los que no
    cumplen la hipótesis hasta reunir `trials` pares válidos. En campos reales
    uno de los dos se toma totalmente positivo.
    """
    rng = random.Random(f"{seed}:{F.label}")
    result = FuzzResult(d=F.label, trials=trials, height=height, seed=seed)
    max_attempts = max(trials, 1) * 2000

    while result.passed + result.failed < trials and result.attempts < max_attempts:
        result.attempts += 1
        alpha = _sample_element(F, rng, height)
        beta = _sample_element(F, rng, height)
        if F.r == 2:
            # con d grande casi nada es ≫ 0 al azar: uno de los dos se fuerza, alternando
            if result.attempts % 2:
                beta = _sample_totally_positive(F, rng, height)
            else:
                alpha = _sample_totally_positive(F, rng, height)
        outcome = reciprocity_check(F, alpha, beta)
        if outcome is CheckOutcome.SKIPPED:
            result.skipped += 1
        elif outcome is CheckOutcome.PASS:
            result.passed += 1
        else:
            result.failed += 1
            result.mismatches.append((alpha.to_json(), beta.to_json()))

    if result.passed + result.failed < trials:
        log.warning(f"d={F.label}: solo {result.passed} pares válidos en {result.attempts} intentos")
    return result


# ======================================================
# DATOS DEL CAMPO
# ======================================================
@dataclass
class _FieldData:
    F: QuadField
    cfg: Config
    bound: int
    cl: ClassGroupData
    ncl: ClassGroupData
    units: UnitData
    sel: SelmerSpace
    subs: dict[SelmerKind, SelmerSpace]
    ranks: RayRanks
    extra: dict = field(default_factory=dict)   # valores que las comprobaciones dejan en el reporte

    @property
    def dims(self) -> dict[SelmerKind, int]:
        return {k: s.dim for k, s in self.subs.items()}


def _collect(F: QuadField, cfg: Config) -> _FieldData:
    bound = cfg.prime_bound(F.disc)
    cl = class_group(F, bound)
    ncl = narrow_class_group(F, bound)
    units = unit_structure(F)
    sel = selmer_space(F, bound)
    subs = {SelmerKind.FULL: sel}
    for kind in (SelmerKind.PLUS, SelmerKind.FOUR, SelmerKind.FOUR_PLUS):
        subs[kind] = selmer_subspace(F, kind, strict=False, bound=bound)
    return _FieldData(F, cfg, bound, cl, ncl, units, sel, subs, ray_2ranks(F, bound))


def _invariant_values(data: _FieldData) -> dict:
    F = data.F
    values = {
        "h": data.cl.order,
        "h_plus": data.ncl.order,
        "u": data.units.u,
        "rho": data.cl.two_rank,
        "rho_plus": data.ncl.two_rank,
        "rho_4": data.ranks.rho_4,
        "rho_4_plus": data.ranks.rho_4_plus,
        "selmer_dims": {k.value: v for k, v in data.dims.items()},
        "unit_dims": data.units.dims,
        "class_group": list(data.cl.elementary_divisors),
        "narrow_class_group": list(data.ncl.elementary_divisors),
    }
    if F.is_real:
        values["fundamental_unit"] = str(fundamental_unit(F))
    return values


def _selmer_bases(data: _FieldData) -> dict[str, list[SelmerClassEntry]]:
    F = data.F
    out: dict[str, list[SelmerClassEntry]] = {}
    for kind, space in data.subs.items():
        out[kind.value] = [
            SelmerClassEntry(element=a.to_json(), text=str(a), conductor=conductor_class(F, a).value)
            for a in space.basis
        ]
    return out


# ======================================================
# COMPROBACIONES
# ======================================================
def _check_tsel(data: _FieldData) -> None:
    F, rho, rho_p = data.F, data.cl.two_rank, data.ncl.two_rank
    want = expected_dims(F, data.bound)
    _expect(data.dims == want, "tsel", f"dims {data.dims} ≠ {want}")
    ray = (data.ranks.rho_4, data.ranks.rho_4_plus)
    closed = (rho_p + F.s, rho + F.r + F.s)
    _expect(ray == closed, "tsel", f"(ρ₄, ρ₄⁺) = {ray} ≠ {closed}")


def _check_rho_plus_triple(data: _FieldData) -> None:
    F = data.F
    genus = 0 if F.is_rational else genus_rank(F.disc)
    triple = [data.ncl.two_rank, genus, data.ranks.rho_plus_via_selmer]
    data.extra["rho_plus_triple"] = triple
    _expect(len(set(triple)) == 1, "rho_plus_triple", f"formas/géneros/Selmer = {triple}")


def _check_armitage_frohlich(data: _FieldData) -> None:
    diff = data.ncl.two_rank - data.cl.two_rank
    _expect(0 <= diff <= data.F.r // 2, "armitage_frohlich", f"ρ⁺ − ρ = {diff}, r = {data.F.r}")


def _check_unit_lower_bound(data: _FieldData) -> None:
    e4p = len(data.units.four_plus)
    floor = (data.F.r + 1) // 2 - data.units.u
    _expect(e4p >= floor, "unit_lower_bound", f"dim E₄⁺/E² = {e4p} < ⌈r/2⌉ − u = {floor}")


def _check_index_divisibility(data: _FieldData) -> None:
    d = data.dims
    lhs = d[SelmerKind.PLUS] - d[SelmerKind.FOUR_PLUS]
    rhs = d[SelmerKind.FULL] - d[SelmerKind.FOUR]
    _expect(lhs <= rhs, "index_divisibility", f"{lhs} > {rhs}")


def _check_narrow_class_number(data: _FieldData) -> None:
    want = 2 ** (data.F.r - data.units.u) * data.cl.order
    _expect(data.ncl.order == want, "narrow_class_number", f"h⁺ = {data.ncl.order} ≠ 2^(r−u)·h = {want}")


def clp_rank(F: QuadField, bound: int | None = None) -> int:
    """dim de {[𝔞] ∈ Cl : 𝔞² = (α), α ≫ 0}, contando sobre los 2^ρ elementos de Cl[2]."""
    basis = class_group(F, bound).two_torsion_basis
    count = 0
    for bits in product((0, 1), repeat=len(basis)):
        A = UNIT_IDEAL
        for P, b in zip(basis, bits):
            if b:
                A = multiply(F, A, P)
        if strict_generator(F, power(F, A, 2)) is not None:
            count += 1
    k = count.bit_length() - 1
    _expect(count == 1 << k, "clp", f"{count} clases no forman un 2-grupo elemental")
    return k


def _check_clp(data: _FieldData) -> None:
    F = data.F
    k = clp_rank(F, data.bound)
    data.extra["clp_rank"] = k
    want = data.ncl.two_rank - F.r + data.units.u
    _expect(k == want, "clp", f"dim Clp = {k} ≠ ρ⁺ − r + u = {want}")


def lagarias_flags(data: _FieldData) -> list[bool]:
    F, S = data.F, data.sel
    real_only = F.s == 0
    mod4_in_sign = kernel_contained(S.mod4_matrix, S.sign_matrix)
    sign_in_mod4 = kernel_contained(S.sign_matrix, S.mod4_matrix)
    # (5) y (7) comparten el mismo predicado
    return [
        real_only and mod4_in_sign,
        real_only and data.ncl.two_rank == data.cl.two_rank,
        real_only and mod4_in_sign,
        real_only and f2_rank(S.sign_matrix) == F.r,
        sign_in_mod4,
        data.ranks.rho_4 == data.cl.two_rank,
        sign_in_mod4,
        f2_rank(S.mod4_matrix) == F.n,
    ]


def _check_lagarias(data: _FieldData) -> None:
    flags = lagarias_flags(data)
    data.extra["lagarias"] = flags
    _expect(len(set(flags)) == 1, "lagarias", f"condiciones no uniformes: {flags}")


def _check_pairing(kind: PairingKind, data: _FieldData) -> Verdict:
    rep = pairing_matrix(data.F, kind, bound=data.bound)
    data.extra.setdefault("pairings", []).append(rep.to_dict())
    if rep.verdict is PairingVerdict.INCONCLUSIVE:
        return Verdict.INCONCLUSIVE
    _expect(
        rep.verdict is PairingVerdict.PERFECT,
        f"pairing_{kind.value}",
        f"rango {rep.achieved_rank}/{rep.expected_rank} hasta norma {data.bound}",
    )
    return Verdict.PASS


def _check_supplementary(data: _FieldData) -> Verdict:
    F, cfg = data.F, data.cfg
    refuted: list[str] = []
    inconclusive = 0
    for P in iter_prime_ideals(F, cfg.supplementary_norm_bound - 1):
        v = supplementary_check(F, P, cfg.membership_search_bound)
        if v is SupplementaryVerdict.REFUTED:
            refuted.append(str(P))
        elif v is SupplementaryVerdict.INCONCLUSIVE:
            inconclusive += 1
    _expect(not refuted, "supplementary", f"refutado en {', '.join(refuted)}")
    if inconclusive:
        log.info(f"d={F.label}: {inconclusive} ideales sin decidir en la ley suplementaria")
        return Verdict.INCONCLUSIVE
    return Verdict.PASS


def _check_reciprocity(data: _FieldData) -> Verdict:
    cfg = data.cfg
    res = reciprocity_fuzz(data.F, cfg.fuzz_trials, cfg.fuzz_height, cfg.seed)
    data.extra["fuzz"] = res.to_dict()
    _expect(not res.failed, "reciprocity", f"pares en conflicto: {res.mismatches[:5]}")
    return res.verdict


def _check_odd_class_number(data: _FieldData) -> None:
    if data.cl.order % 2 == 0:
        return
    e, d = data.units.dims, data.dims
    _expect(len(data.units.basis) == d[SelmerKind.FULL], "odd_class_number", "dim E/E² ≠ dim Sel")
    _expect(e["e_plus"] == d[SelmerKind.PLUS], "odd_class_number", "dim E⁺/E² ≠ dim Sel⁺")
    _expect(e["e_4"] == d[SelmerKind.FOUR], "odd_class_number", "dim E₄/E² ≠ dim Sel₄")


def _check_hecke_dictionary(data: _FieldData) -> None:
    F, d = data.F, data.dims
    rho, rho_p = data.cl.two_rank, data.ncl.two_rank
    m, e = F.r + F.s, rho
    p, q, q0 = d[SelmerKind.PLUS], d[SelmerKind.FOUR], d[SelmerKind.FOUR_PLUS]
    data.extra["hecke_aliases"] = {"m": m, "e": e, "p": p, "q": q, "q0": q0}

    def need(cond: bool, what: str) -> None:
        _expect(cond, "hecke_dictionary", what)

    need(len(data.units.basis) == m, "dim E/E² ≠ m")
    signs = [signature(F, -F.one)] + ([signature(F, F.omega)] if F.is_real else [])
    need(f2_rank(BitMatrix.from_columns(signs, F.r)) == F.r, "F^×/F^×₊ no tiene dimensión r")
    need(f2_rank(data.sel.sign_matrix) == m + e - p, "imagen de Sel en M⁺ ≠ m + e − p")
    need(p == rho_p - F.r + m, "p ≠ ρ⁺ − r + m")
    need(mod4_data(F).dim == F.n, "dim M₄/M₄² ≠ n")
    need(q <= rho + F.r + F.s, "q > ρ + r + s")
    need(q == rho_p, "q ≠ ρ⁺")
    need(q0 == rho, "q₀ ≠ ρ")
    need(data.ranks.rho_4 == q + F.s, "2-rango de Cl{4} ≠ q + s")
    need(data.ranks.rho_4_plus == q0 + F.r + F.s, "2-rango de Cl⁺{4} ≠ q₀ + r + s")


def _check_unit_index_divisibility(data: _FieldData) -> None:
    e, d = data.units.dims, data.dims
    lhs = e["e_plus"] - e["e_4_plus"]
    rhs = d[SelmerKind.PLUS] - d[SelmerKind.FOUR_PLUS]
    _expect(lhs <= rhs, "unit_index_divisibility", f"dim E⁺ − dim E₄⁺ = {lhs} > {rhs}")


def _check_unit_embedding(data: _FieldData) -> None:
    u = data.units
    pairs = {
        SelmerKind.FULL: u.basis,
        SelmerKind.PLUS: u.plus,
        SelmerKind.FOUR: u.four,
        SelmerKind.FOUR_PLUS: u.four_plus,
    }
    for kind, reps in pairs.items():
        space = data.subs[kind]
        _expect(len(reps) <= space.dim, "unit_embedding", f"{kind.value}: {len(reps)} > {space.dim}")
        for eta in reps:
            _expect(
                selmer_coordinates(space, eta) is not None,
                "unit_embedding",
                f"{eta} fuera de {kind.value}",
            )


def _check_capitulation(data: _FieldData) -> None:
    F = data.F
    if F.is_rational:
        return
    rng = random.Random(f"{data.cfg.seed}:{F.label}:capitulation")
    samples = [-1] + [rng.choice((-1, 1)) * rng.randint(2, 1000) for _ in range(5)]
    for a in samples:
        lifted = selmer_base_change(BaseChange.LIFT, a, F)
        back = selmer_base_change(BaseChange.NORM, lifted, F)
        _expect(back.x == 1, "capitulation", f"N(lift({a})) = {back.x} no es un cuadrado")
    for omega in data.sel.basis:
        image = selmer_base_change(BaseChange.NORM, omega, F)
        _expect(image.x in (1, -1), "capitulation", f"N({omega}) = {image.x} fuera de Sel(Q)")


def _check_subspace_intersection(data: _FieldData) -> None:
    S = data.sel

    def coords(kind: SelmerKind) -> list[tuple[int, ...]]:
        out = [selmer_coordinates(S, a) for a in data.subs[kind].basis]
        _expect(None not in out, "subspace_intersection", f"{kind.value} no está dentro de Sel")
        return out

    c4, cp, c4p = coords(SelmerKind.FOUR), coords(SelmerKind.PLUS), coords(SelmerKind.FOUR_PLUS)
    sum_rank = f2_rank(BitMatrix.from_rows(c4 + cp, S.dim))
    inter = len(c4) + len(cp) - sum_rank
    _expect(inter == len(c4p), "subspace_intersection", f"dim(Sel₄ ∩ Sel⁺) = {inter} ≠ {len(c4p)}")
    for v in c4p:
        _expect(
            span_contains(c4, v, S.dim) and span_contains(cp, v, S.dim),
            "subspace_intersection",
            f"{v} ∈ Sel₄⁺ fuera de Sel₄ ∩ Sel⁺",
        )


CHECKS: tuple[tuple[str, Callable[[_FieldData], Verdict | None]], ...] = (
    ("tsel", _check_tsel),
    ("rho_plus_triple", _check_rho_plus_triple),
    ("armitage_frohlich", _check_armitage_frohlich),
    ("unit_lower_bound", _check_unit_lower_bound),
    ("index_divisibility", _check_index_divisibility),
    ("narrow_class_number", _check_narrow_class_number),
    ("clp", _check_clp),
    ("lagarias", _check_lagarias),
    *((f"pairing_{k.value}", partial(_check_pairing, k)) for k in PairingKind),
    ("supplementary", _check_supplementary),
    ("reciprocity", _check_reciprocity),
    ("odd_class_number", _check_odd_class_number),
    ("hecke_dictionary", _check_hecke_dictionary),
    ("unit_index_divisibility", _check_unit_index_divisibility),
    ("unit_embedding", _check_unit_embedding),
    ("capitulation", _check_capitulation),
    ("subspace_intersection", _check_subspace_intersection),
)


def _run_check(name: str, fn, data: _FieldData, checks: dict, diagnostics: dict) -> None:
    try:
        verdict = fn(data) or Verdict.PASS
    except TheoremViolation as e:
        verdict = Verdict.FAIL
        diagnostics[name] = str(e)
    except InconclusiveError as e:
        verdict = Verdict.INCONCLUSIVE
        diagnostics[name] = str(e)
    except DomainError as e:
        verdict = Verdict.FAIL
        diagnostics[name] = f"error de dominio: {e}"
    checks[name] = verdict.value


# ======================================================
# verify_field
# ======================================================
def verify_field(d: int | str | QuadField, cfg: Config | None = None) -> FieldReport:
    cfg = cfg or load_config()
    F = d if isinstance(d, QuadField) else make_field(d)

    values: dict = {
        "d": RATIONAL if F.is_rational else F.d,
        "disc": F.disc,
        "r": F.r,
        "s": F.s,
        "n": F.n,
        "seed": cfg.seed,
    }
    checks: dict[str, str] = {}
    diagnostics: dict[str, str] = {}

    try:
        data = _collect(F, cfg)
        values.update(_invariant_values(data))
    except (TheoremViolation, InconclusiveError, DomainError) as e:
        failed = isinstance(e, (TheoremViolation, DomainError))
        checks["construction"] = (Verdict.FAIL if failed else Verdict.INCONCLUSIVE).value
        diagnostics["construction"] = str(e)
        report = FieldReport(**values, checks=checks, diagnostics=diagnostics)
        log.error(f"d={F.label}: construcción fallida: {e}")
        log_field(F.label, report)
        return report

    for name, fn in CHECKS:
        log.debug(f"d={F.label}: {name}")
        _run_check(name, fn, data, checks, diagnostics)

    try:
        values["selmer_bases"] = _selmer_bases(data)
    except (InconclusiveError, DomainError) as e:
        diagnostics["selmer_bases"] = str(e)

    report = FieldReport(**values, **data.extra, checks=checks, diagnostics=diagnostics)
    if report.has_fail:
        log.error(f"d={F.label}: {sorted(k for k, v in checks.items() if v == 'fail')}")
    log_field(F.label, report)
    return report


# ======================================================
# BARRIDOS
# ======================================================
class ScanAggregate(BaseModel):
    d_min: int
    d_max: int
    fields: int = 0
    checks: dict[str, dict[str, int]] = Field(default_factory=dict)
    failing: list[int | str] = Field(default_factory=list)
    inconclusive: list[int | str] = Field(default_factory=list)
    stopped_at: int | str | None = None

    def merge(self, rep: FieldReport) -> None:
        self.fields += 1
        for name, verdict in rep.checks.items():
            bucket = self.checks.setdefault(name, {v.value: 0 for v in Verdict})
            bucket[verdict] += 1
        if rep.has_fail:
            self.failing.append(rep.d)
        elif rep.has_inconclusive:
            self.inconclusive.append(rep.d)


@dataclass
class ScanResult:
    reports: list[FieldReport]
    aggregate: ScanAggregate


def scan_range(d_min: int, d_max: int) -> list[int]:
    return [d for d in range(d_min, d_max + 1) if d not in (0, 1) and is_squarefree(d)]


def scan(d_min: int, d_max: int, cfg: Config | None = None, *, stop_on_fail: bool = True) -> ScanResult:
    if d_min > d_max:
        raise UsageError(f"rango vacío: min={d_min} > max={d_max}")
    cfg = cfg or load_config()
    ds = scan_range(d_min, d_max)
    agg = ScanAggregate(d_min=d_min, d_max=d_max)
    reports: list[FieldReport] = []

    def consume(results) -> None:
        for rep in results:
            reports.append(rep)
            agg.merge(rep)
            log.info(f"d={rep.d}: {'FAIL' if rep.has_fail else 'ok'}")
            if stop_on_fail and rep.has_fail:
                agg.stopped_at = rep.d
                return

    if cfg.parallelism > 1 and len(ds) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            # map conserva el orden de entrada
            consume(pool.map(verify_field, ds, repeat(cfg)))
            pool.shutdown(wait=True, cancel_futures=True)
    else:
        consume(verify_field(d, cfg) for d in ds)

    return ScanResult(reports, agg)
