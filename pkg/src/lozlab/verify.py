"""Machine verification of the factorization identities.

Every entry in the catalog states an exact equality between two counts
attached to one region family.  ``check`` computes both sides through
disjoint code paths (closed product formula, plain Pfaffian count,
tiling enumeration with symmetry filtering, orbit search, quotient
graph, or axis surgery) and reports them side by side; ``sweep`` runs a
whole parameter grid and renders a CSV report.  A false verdict means
an implementation bug somewhere, never a tolerance issue: all
arithmetic is exact.

Catalog identifiers are opaque labels fixed by the command line
interface; each one's meaning is spelled out in ``_CATALOG``.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .counting import (count_matchings, count_symmetric_tilings,
                       count_tilings, count_tilings_free, mgf)
from .duality import (dual_graph, factorization_split, quotient_graph,
                      remove_loop_vertex, symmetry)
from .errors import BudgetError, LozlabError, ParameterError
from .formulas import cored_count, d_count, holed_count_even, holed_count_odd
from .lattice import cored_hexagon, d_region, hexagon, holed_hexagon

__all__ = [
    "IDENTITY_IDS",
    "IdentityCheck",
    "SweepReport",
    "SweepRow",
    "check",
    "default_grid",
    "sweep",
    "sweep_workers",
]

# desk-scale guard rails: enumeration style routes refuse regions whose
# cell count makes the search unreasonable on a laptop, the polynomial
# routes (formula, Pfaffian, quotient) run at any size
FILTER_CELL_CAP = 128
ORBIT_CELL_CAP = 256

Count = int | Fraction


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of one identity instance, with their provenance.

    ``factors`` is the right hand side broken into the factors named by
    the identity (two for a product, a repeated value for a square, the
    bare value otherwise); ``rhs`` is always their product.
    """

    identity_id: str
    params: tuple[tuple[str, object], ...]
    lhs: Count
    rhs: Count
    lhs_route: str
    rhs_route: str
    factors: tuple[Count, ...]

    @property
    def verdict(self) -> bool:
        return self.lhs == self.rhs


def _cells_budget(region, cap: int, route: str) -> None:
    if len(region.cells) > cap:
        raise BudgetError("%s on %d cells exceeds the desk budget of %d"
                          % (route, len(region.cells), cap))


def _sym_filter(region, kinds) -> int:
    _cells_budget(region, FILTER_CELL_CAP, "tiling enumeration")
    return count_symmetric_tilings(region, kinds, "filter")


def _sym_orbit(region, kinds) -> int:
    _cells_budget(region, ORBIT_CELL_CAP, "orbit search")
    return count_symmetric_tilings(region, kinds, "orbit")


def _sym_enumerated(region, kinds) -> tuple[int, str]:
    """Symmetric count by direct tiling enumeration, filter when small."""
    if len(region.cells) <= 48:
        return _sym_filter(region, kinds), "enumeration+filter"
    return _sym_orbit(region, kinds), "orbit-enumeration"


def _rot_quotient_count(region, kind: str) -> int:
    g = quotient_graph(dual_graph(region), symmetry(region, kind))
    return count_matchings(g)


def _axis_split_value(region) -> Fraction:
    """MGF of the axis-surgered half of the central quotient."""
    q = quotient_graph(dual_graph(region), symmetry(region, "Rot180"))
    weight = Fraction(1)
    if q.loops:
        q, weight = remove_loop_vertex(q)
    split = factorization_split(q, symmetry(region, "ReflH"))
    return weight * Fraction(2) ** split.multiplier_log2 * mgf(split.subgraph)


# ---------------------------------------------------------------------
# per-identity checks; each returns (lhs, factors, lhs_route, rhs_route)


def _check_i1_9(a: int, b: int):
    region = hexagon(a, a, 2 * b)
    lhs = count_tilings(region)
    f1 = _sym_filter(region, ("ReflV",))
    f2 = _sym_filter(region, ("ReflH",))
    return lhs, (f1, f2), "pfaffian", "enumeration+filter"


def _check_i1_10(a: int, b: int):
    region = hexagon(a, a, 2 * b)
    lhs = _rot_quotient_count(region, "Rot180")
    f, route = _sym_enumerated(region, ("Rot180", "ReflV"))
    return lhs, (f, f), "rot180-quotient+pfaffian", route


def _check_i1_11(a: int):
    region = hexagon(2 * a, 2 * a, 2 * a)
    lhs = _rot_quotient_count(region, "Rot120")
    f1, route = _sym_enumerated(region, ("Rot120", "ReflV"))
    f2, _ = _sym_enumerated(region, ("Rot120", "ReflH"))
    return lhs, (f1, f2), "rot120-quotient+pfaffian", route


def _check_i1_12(a: int):
    region = hexagon(2 * a, 2 * a, 2 * a)
    lhs = _rot_quotient_count(region, "Rot60")
    f, route = _sym_enumerated(region, ("Rot60", "ReflV"))
    return lhs, (f, f), "rot60-quotient+pfaffian", route


def _check_t2_1_even(a: int, b: int, ks: tuple[int, ...]):
    region = holed_hexagon(a, b, list(ks))
    lhs = _rot_quotient_count(region, "Rot180")
    f = _sym_orbit(region, ("Rot180", "ReflV"))
    return lhs, (f, f), "rot180-quotient+pfaffian", "orbit-enumeration"


def _check_t2_1_cored(a: int, b: int, ks: tuple[int, ...], x: int):
    region = cored_hexagon(a, b, list(ks), x)
    lhs = _rot_quotient_count(region, "Rot180")
    f = _sym_orbit(region, ("Rot180", "ReflV"))
    return lhs, (f, f), "rot180-quotient+pfaffian", "orbit-enumeration"


def _split_check(region, a: int, s: int):
    lhs = _sym_orbit(region, ("Rot180",))
    value = _axis_split_value(region)
    scale = Fraction(2) ** (a - s)
    return lhs, (scale, value / scale), "orbit-enumeration", "axis-split+mgf"


def _check_e3_1(a: int, b: int, ks: tuple[int, ...]):
    return _split_check(holed_hexagon(2 * a, b, list(ks)), a, len(ks))


def _check_e3_9(a: int, b: int, ks: tuple[int, ...]):
    return _split_check(holed_hexagon(2 * a + 1, b, list(ks)), a, len(ks))


def _check_e3_5(a: int, b: int, ks: tuple[int, ...]):
    lhs = holed_count_even(a, b, ks)
    region = holed_hexagon(2 * a, b, list(ks))
    f = count_symmetric_tilings(region, ("Rot180",), "quotient")
    return lhs, (f,), "product-formula", "rot180-quotient+pfaffian"


def _check_e3_10(a: int, b: int, ks: tuple[int, ...]):
    lhs = holed_count_odd(a, b, ks)
    region = holed_hexagon(2 * a + 1, b, list(ks))
    f = count_symmetric_tilings(region, ("Rot180",), "quotient")
    return lhs, (f,), "product-formula", "rot180-quotient+pfaffian"


def _check_e3_13(a: int, b: int, ks: tuple[int, ...], x: int):
    lhs = cored_count(a, b, ks, x)
    region = cored_hexagon(a, b, list(ks), x)
    f = count_symmetric_tilings(region, ("Rot180",), "quotient")
    return lhs, (f,), "product-formula", "rot180-quotient+pfaffian"


def _check_e3_7(a: int, b: int, is_: tuple[int, ...]):
    lhs = d_count(a, b, -1, is_)
    f = count_tilings_free(d_region(a, b, -1, list(is_)))
    return lhs, (f,), "product-formula", "free-boundary-sum"


def _check_e3_12(a: int, b: int, is_: tuple[int, ...]):
    lhs = d_count(a, b, 0, is_)
    f = count_tilings_free(d_region(a, b, 0, list(is_)))
    return lhs, (f,), "product-formula", "free-boundary-sum"


def _four_class_region(eq: int, a: int, b: int | None):
    if eq in (1, 2):
        if b is None:
            raise ParameterError("equations 1 and 2 need both a and b")
        return hexagon(a, a, 2 * b)
    if b is not None:
        raise ParameterError("equations 3 and 4 take a alone")
    return hexagon(2 * a, 2 * a, 2 * a)


def _check_four_class(eq: int, a: int, b: int | None = None):
    if eq not in (1, 2, 3, 4):
        raise ParameterError("eq selects one of the four equations (1..4)")
    region = _four_class_region(eq, a, b)
    if eq == 1:
        lhs = count_tilings(region)
        f1, route = _sym_enumerated(region, ("ReflV",))
        f2, _ = _sym_enumerated(region, ("ReflH",))
        return lhs, (f1, f2), "pfaffian", route
    if eq == 2:
        lhs = _rot_quotient_count(region, "Rot180")
        f, route = _sym_enumerated(region, ("Rot180", "ReflV"))
        return lhs, (f, f), "rot180-quotient+pfaffian", route
    if eq == 3:
        lhs = _rot_quotient_count(region, "Rot120")
        f1, route = _sym_enumerated(region, ("Rot120", "ReflV"))
        f2, _ = _sym_enumerated(region, ("Rot120", "ReflH"))
        return lhs, (f1, f2), "rot120-quotient+pfaffian", route
    lhs = _rot_quotient_count(region, "Rot60")
    f, route = _sym_enumerated(region, ("Rot60", "ReflV"))
    return lhs, (f, f), "rot60-quotient+pfaffian", route


# ---------------------------------------------------------------------
# catalog plumbing

_INT = "int"
_LIST = "list"
_OPT_INT = "optional-int"

# identifier -> (ordered parameter names, parameter kinds, check function)
_CATALOG: dict[str, tuple[tuple[str, ...], tuple[str, ...], Callable]] = {
    "I1_9": (("a", "b"), (_INT, _INT), _check_i1_9),
    "I1_10": (("a", "b"), (_INT, _INT), _check_i1_10),
    "I1_11": (("a",), (_INT,), _check_i1_11),
    "I1_12": (("a",), (_INT,), _check_i1_12),
    "T2_1_even": (("a", "b", "ks"), (_INT, _INT, _LIST), _check_t2_1_even),
    "T2_1_cored": (("a", "b", "ks", "x"), (_INT, _INT, _LIST, _INT),
                   _check_t2_1_cored),
    "E3_1": (("a", "b", "ks"), (_INT, _INT, _LIST), _check_e3_1),
    "E3_5": (("a", "b", "ks"), (_INT, _INT, _LIST), _check_e3_5),
    "E3_7": (("a", "b", "is"), (_INT, _INT, _LIST), _check_e3_7),
    "E3_9": (("a", "b", "ks"), (_INT, _INT, _LIST), _check_e3_9),
    "E3_10": (("a", "b", "ks"), (_INT, _INT, _LIST), _check_e3_10),
    "E3_12": (("a", "b", "is"), (_INT, _INT, _LIST), _check_e3_12),
    "E3_13": (("a", "b", "ks", "x"), (_INT, _INT, _LIST, _INT),
              _check_e3_13),
    "FOUR_CLASS": (("eq", "a", "b"), (_INT, _INT, _OPT_INT),
                   _check_four_class),
}

IDENTITY_IDS = tuple(_CATALOG)


def _coerce_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParameterError("parameter %s must be an integer" % name)
    return value


def _coerce_list(name: str, value) -> tuple[int, ...]:
    if isinstance(value, (str, bytes)):
        raise ParameterError("parameter %s must be a sequence of integers"
                             % name)
    try:
        items = tuple(value)
    except TypeError:
        raise ParameterError("parameter %s must be a sequence of integers"
                             % name)
    return tuple(_coerce_int(name, v) for v in items)


def _norm_params(identity_id: str, raw: Mapping) -> tuple[tuple[str, object], ...]:
    if identity_id not in _CATALOG:
        raise ParameterError("unknown identity %r" % (identity_id,))
    names, kinds, _fn = _CATALOG[identity_id]
    extra = set(raw) - set(names)
    if extra:
        raise ParameterError("unknown parameter(s) for %s: %s"
                             % (identity_id, ", ".join(sorted(extra))))
    out = []
    for name, kind in zip(names, kinds):
        if name not in raw or raw[name] is None:
            if kind == _OPT_INT:
                continue
            raise ParameterError("%s needs parameter %s" % (identity_id, name))
        value = raw[name]
        if kind == _LIST:
            out.append((name, _coerce_list(name, value)))
        else:
            out.append((name, _coerce_int(name, value)))
    return tuple(out)


def check(identity_id: str, params: Mapping | None = None, **extra) -> IdentityCheck:
    """Evaluate both sides of one identity instance.

    Parameters may be given as a mapping, as keywords, or both; list
    valued parameters accept any iterable of integers.  Raises
    ParameterError for malformed input, SymmetryAbsentError when a
    required symmetry is missing, and BudgetError when an enumeration
    route would leave desk scale.
    """
    merged = dict(params or {})
    merged.update(extra)
    norm = _norm_params(identity_id, merged)
    _names, _kinds, fn = _CATALOG[identity_id]
    lhs, factors, lhs_route, rhs_route = fn(**dict(_rename(norm)))
    rhs = factors[0]
    for f in factors[1:]:
        rhs = rhs * f
    lhs = _as_exact(lhs)
    rhs = _as_exact(rhs)
    factors = tuple(_as_exact(f) for f in factors)
    return IdentityCheck(identity_id, norm, lhs, rhs,
                         lhs_route, rhs_route, factors)


def _rename(norm: tuple[tuple[str, object], ...]):
    # "is" is a keyword, the check functions spell it "is_"
    for name, value in norm:
        yield ("is_" if name == "is" else name), value


def _as_exact(value: Count) -> Count:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


# ---------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepRow:
    identity_id: str
    params_text: str
    lhs: Count | None
    rhs: Count | None
    verdict: bool | None
    error: str | None


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]

    @property
    def all_true(self) -> bool:
        return all(r.verdict is True for r in self.rows)

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["identity", "params", "lhs", "rhs", "verdict"])
        for r in self.rows:
            if r.error is not None:
                writer.writerow([r.identity_id, r.params_text, "", "", "error"])
            else:
                writer.writerow([r.identity_id, r.params_text,
                                 _count_text(r.lhs), _count_text(r.rhs),
                                 "true" if r.verdict else "false"])
        return buf.getvalue()


def _count_text(value: Count | None) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction) and value.denominator != 1:
        return "%d/%d" % (value.numerator, value.denominator)
    return str(int(value))


def params_text(params: Mapping | Sequence[tuple[str, object]]) -> str:
    """Deterministic one-token rendering: a=2;b=1;ks=1+2 (empty list: -)."""
    items = params.items() if isinstance(params, Mapping) else params
    parts = []
    for name, value in items:
        if isinstance(value, tuple):
            parts.append("%s=%s" % (name, "+".join(str(v) for v in value) or "-"))
        else:
            parts.append("%s=%s" % (name, value))
    return ";".join(parts)


def sweep_workers() -> int:
    """Worker count for sweeps, from LOZLAB_SWEEP_WORKERS (default 1)."""
    raw = os.environ.get("LOZLAB_SWEEP_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError("LOZLAB_SWEEP_WORKERS must be an integer")
    return max(1, n)


def _sweep_cell(task: tuple[str, dict]) -> SweepRow:
    identity_id, params = task
    text = params_text(params)
    try:
        result = check(identity_id, params)
    except Exception as exc:
        return SweepRow(identity_id, text, None, None, None,
                        "%s: %s" % (type(exc).__name__, exc))
    return SweepRow(identity_id, params_text(result.params),
                    result.lhs, result.rhs, result.verdict, None)


def sweep(identity_id: str, param_grid) -> SweepReport:
    """Check one identity over a whole grid of parameter mappings.

    Rows appear in grid order; a row that raises is recorded as an
    error and the sweep continues.  Grid cells run in parallel when
    LOZLAB_SWEEP_WORKERS asks for more than one worker.
    """
    if identity_id not in _CATALOG:
        raise ParameterError("unknown identity %r" % (identity_id,))
    tasks = [(identity_id, dict(p)) for p in param_grid]
    workers = sweep_workers()
    if workers == 1 or len(tasks) <= 1:
        rows = [_sweep_cell(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_cell, tasks))
    return SweepReport(tuple(rows))


# ---------------------------------------------------------------------
# stock grids: the desk-scale parameter boxes used by the test suite


def _legal_ks(kmax: int):
    for s in range(kmax + 1):
        yield from combinations(range(1, kmax + 1), s)


def default_grid(identity_id: str) -> tuple[dict, ...]:
    """The stock desk-scale grid for one identity."""
    if identity_id == "I1_9":
        return tuple({"a": a, "b": b} for a in (1, 2, 3) for b in (1, 2))
    if identity_id == "I1_10":
        return tuple({"a": a, "b": b} for a in (1, 2) for b in (1, 2))
    if identity_id in ("I1_11", "I1_12"):
        return tuple({"a": a} for a in (1, 2))
    if identity_id == "T2_1_even":
        return tuple({"a": a, "b": b, "ks": ks}
                     for a in (1, 2, 3, 4) for b in (1, 2)
                     for ks in _legal_ks(a // 2))
    if identity_id == "T2_1_cored":
        return tuple({"a": a, "b": b, "ks": ks, "x": x}
                     for a in (1, 2, 3) for b in (1, 2)
                     for x in range(1, a + 1)
                     for ks in _legal_ks(a - x))
    if identity_id in ("E3_1", "E3_9"):
        return tuple({"a": a, "b": b, "ks": ks}
                     for a in (1, 2, 3) for b in (1, 2)
                     for ks in _legal_ks(a))
    if identity_id in ("E3_5", "E3_10"):
        return tuple({"a": a, "b": b, "ks": ks}
                     for a in (1, 2, 3) for b in (1, 2)
                     for ks in _legal_ks(a))
    if identity_id == "E3_13":
        return tuple({"a": a, "b": b, "ks": ks, "x": x}
                     for a in (1, 2, 3) for b in (1, 2)
                     for x in range(1, a + 1)
                     for ks in _legal_ks(a - x))
    if identity_id in ("E3_7", "E3_12"):
        return tuple({"a": a, "b": b, "is": is_}
                     for a in (1, 2, 3) for b in (1, 2)
                     for is_ in _legal_ks(a))
    if identity_id == "FOUR_CLASS":
        grid: list[dict] = []
        for eq in (1, 2):
            grid.extend({"eq": eq, "a": a, "b": b}
                        for a in (1, 2) for b in (1, 2))
        for eq in (3, 4):
            grid.extend({"eq": eq, "a": a} for a in (1, 2))
        return tuple(grid)
    raise ParameterError("unknown identity %r" % (identity_id,))
