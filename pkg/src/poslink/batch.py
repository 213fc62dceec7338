"""Batch records: CSV ingestion, cross-validation against computed values,
obstruction runs, and the positive-braid survey."""

from __future__ import annotations

import csv
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .conway import DEFAULT_NODE_BUDGET, conway
from .diagram import (
    BraidWord,
    Diagram,
    braid_closure,
    components,
    is_positive,
    parse_braid,
    parse_pd,
)
from .errors import (
    ColumnMissing,
    CrossingCapExceeded,
    FileUnreadable,
    PoslinkError,
    RecursionBudgetExceeded,
)
from .khovanov import (
    DEFAULT_CROSSING_CAP,
    BigradedGroups,
    extreme_gradings,
    khovanov_homology,
    parse_kh_polynomial,
    format_kh_polynomial,
)
from .laurent import (
    LaurentPoly,
    format_poly,
    jones_V,
    jones_summary,
    parse_poly,
    v_to_unnormalized,
)
from .obstruction import (
    ObstructionInput,
    ObstructionReport,
    Strength,
    jones_test,
    khovanov_test,
    khovanov_test_from_kh1,
    strength_comparison,
)

SCHEMA_VERSION = "poslink.record/1"

DEFAULT_BRACKET_CAP = 20

COLUMN_ROLES = ("name", "pd", "braid", "jones", "conway", "kh", "components")


@dataclass(frozen=True)
class Caps:
    """Cost knobs with desk-scale defaults."""

    khovanov: int = DEFAULT_CROSSING_CAP
    bracket: int = DEFAULT_BRACKET_CAP
    skein_nodes: int = DEFAULT_NODE_BUDGET


@dataclass
class LinkRecord:
    """One link worth of input: a diagram, ingested invariants, or both."""

    name: str
    pd: Diagram | None = None
    braid: BraidWord | None = None
    jones: LaurentPoly | None = None
    conway: LaurentPoly | None = None
    kh: BigradedGroups | None = None
    components: int | None = None
    flags: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if (
            self.pd is None
            and self.braid is None
            and self.jones is None
            and self.conway is None
            and self.kh is None
        ):
            raise ValueError(f"record {self.name!r} carries no diagram and no invariants")

    def diagram(self) -> Diagram | None:
        if self.pd is not None:
            return self.pd
        if self.braid is not None:
            return braid_closure(self.braid)
        return None


@dataclass
class RecordResult:
    """Outcome for one record; error is None unless something hard failed."""

    name: str
    source: str
    flags: list[str]
    error: str | None
    invariants: dict[str, str]
    gradings: dict[str, int | None] | None
    reports: list[ObstructionReport]
    comparison: Strength | None
    timing_ms: float

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "source": self.source,
            "flags": list(self.flags),
            "error": self.error,
            "invariants": dict(self.invariants),
            "gradings": dict(self.gradings) if self.gradings else None,
            "reports": [r.to_dict() for r in self.reports],
            "comparison": self.comparison.value if self.comparison else None,
            "timing_ms": round(self.timing_ms, 3),
        }


@dataclass
class BatchResult:
    results: list[RecordResult]

    @property
    def all_ok(self) -> bool:
        return all(r.error is None for r in self.results)

    def __iter__(self) -> Iterator[RecordResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)


# --------------------------------------------------------------------------
# ingestion


def ingest_csv(path: str, column_map: dict[str, str]) -> list[LinkRecord]:
    """Read link records from a CSV file.

    column_map sends logical roles (name, pd, braid, jones, conway, kh,
    components) to header names.  Cell parse failures are flagged on the
    record, never fatal to the batch; rows with no usable content are
    dropped with a warning flag on no record at all.
    """
    for role in column_map:
        if role not in COLUMN_ROLES:
            raise ColumnMissing(f"unknown column role {role!r}; know {COLUMN_ROLES}")
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for role, column in column_map.items():
                if column not in header:
                    raise ColumnMissing(f"column {column!r} (role {role!r}) not in header {header}")
            rows = list(reader)
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc

    parsers: dict[str, Callable[[str], object]] = {
        "pd": parse_pd,
        "braid": parse_braid,
        "jones": lambda s: parse_poly(s, "t"),
        "conway": lambda s: parse_poly(s, "z"),
        "kh": parse_kh_polynomial,
        "components": int,
    }
    records: list[LinkRecord] = []
    for rownum, row in enumerate(rows, start=2):
        name = None
        if "name" in column_map:
            name = (row.get(column_map["name"]) or "").strip()
        name = name or f"row{rownum}"
        fields: dict[str, object] = {}
        flags: list[str] = []
        for role, column in column_map.items():
            if role == "name":
                continue
            cell = (row.get(column) or "").strip()
            if not cell:
                continue
            try:
                fields[role] = parsers[role](cell)
            except (PoslinkError, ValueError) as exc:
                flags.append(f"{role}: cell parse error: {exc}")
        if not fields and not flags:
            continue
        try:
            records.append(LinkRecord(name=name, flags=flags, **fields))
        except ValueError as exc:
            # nothing usable survived parsing; keep a marker so the batch
            # still reports one result per input row
            records.append(_placeholder_record(name, flags, f"row unusable: {exc}"))
    return records


def _placeholder_record(name: str, flags: list[str], message: str) -> LinkRecord:
    rec = LinkRecord.__new__(LinkRecord)
    rec.name = name
    rec.pd = rec.braid = rec.jones = rec.conway = rec.kh = None
    rec.components = None
    rec.flags = flags + [message]
    return rec


def records_from_lines(lines: Iterable[str]) -> list[LinkRecord]:
    """Diagram-per-line batch input: PD expressions or braid words."""
    records = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        name = f"line{lineno}"
        try:
            if text.startswith("PD["):
                records.append(LinkRecord(name=f"{name}: {text}", pd=parse_pd(text)))
            else:
                records.append(LinkRecord(name=f"{name}: {text}", braid=parse_braid(text)))
        except PoslinkError as exc:
            records.append(
                _placeholder_record(f"{name}: {text}", [], f"input parse error: {exc}")
            )
    return records


# --------------------------------------------------------------------------
# per-record pipeline


def _conway_mirror(p: LaurentPoly) -> LaurentPoly:
    # mirror image sends z -> -z
    return LaurentPoly({exp: -c if exp.numerator % 2 else c for exp, c in p.terms()})


def _reconcile(name, computed, ingested, mirror_fn, mode, flags):
    """Prefer computed values; cross-check ingested ones, normalizing the
    mirror convention when allowed.  Returns (value, hard_error)."""
    if computed is None:
        return ingested, None
    if ingested is None:
        return computed, None
    candidates = [(ingested, False)]
    if mode == "always":
        candidates = [(mirror_fn(ingested), True)]
    elif mode == "auto":
        candidates.append((mirror_fn(ingested), True))
    for value, mirrored in candidates:
        if value == computed:
            if mirrored:
                flags.append(f"{name}: ingested value matched after mirror normalization")
            return computed, None
    return computed, f"{name}: computed and ingested values disagree"


def process_record(
    record: LinkRecord,
    *,
    want: frozenset[str] = frozenset({"jones", "conway", "kh"}),
    run_tests: bool = False,
    caps: Caps = Caps(),
    mirror: str = "auto",
) -> RecordResult:
    t0 = time.perf_counter()
    flags = list(record.flags)
    error: str | None = None
    invariants: dict[str, str] = {}
    gradings = None
    reports: list[ObstructionReport] = []
    comparison = None

    if record.pd is not None:
        source = "pd"
    elif record.braid is not None:
        source = "braid"
    else:
        source = "invariants"

    if (
        record.pd is None
        and record.braid is None
        and record.jones is None
        and record.conway is None
        and record.kh is None
    ):
        return RecordResult(
            name=record.name,
            source=source,
            flags=flags,
            error="no usable input on this row",
            invariants={},
            gradings=None,
            reports=[],
            comparison=None,
            timing_ms=(time.perf_counter() - t0) * 1000.0,
        )

    try:
        d = record.diagram()
        computed: dict[str, object] = {}
        if d is not None:
            need = set(want) | ({"jones", "conway", "kh"} if run_tests else set())
            if "jones" in need:
                computed["jones"] = jones_V(d, cap=caps.bracket)
            if "conway" in need:
                try:
                    computed["conway"] = conway(d, node_budget=caps.skein_nodes)
                except RecursionBudgetExceeded as exc:
                    flags.append(f"conway: skipped: {exc}")
            if "kh" in need:
                try:
                    computed["kh"] = khovanov_homology(d, cap=caps.khovanov)
                except CrossingCapExceeded as exc:
                    flags.append(f"kh: skipped: {exc}")

        jones, err1 = _reconcile(
            "jones", computed.get("jones"), record.jones,
            lambda p: p.substitute_inverse(), mirror, flags,
        )
        conway_poly, err2 = _reconcile(
            "conway", computed.get("conway"), record.conway,
            _conway_mirror, mirror, flags,
        )
        kh, err3 = _reconcile(
            "kh", computed.get("kh"), record.kh,
            lambda g: g.mirror(), mirror, flags,
        )
        error = err1 or err2 or err3

        if jones is not None:
            invariants["jones"] = format_poly(jones, "t")
            invariants["unnormalized_jones"] = format_poly(v_to_unnormalized(jones), "q")
        if conway_poly is not None:
            invariants["conway"] = format_poly(conway_poly, "z")
        if kh is not None:
            invariants["kh"] = format_kh_polynomial(kh)

        n = record.components
        if n is None and d is not None:
            n = components(d)
        if kh is not None:
            if d is not None:
                summary = extreme_gradings(kh, d)
                gradings = {
                    "j_lower": summary.j_lower,
                    "j_upper": summary.j_upper,
                    "j_min_potential": summary.j_min_potential,
                    "j_max_potential": summary.j_max_potential,
                }
            else:
                j_lower, j_upper = kh.j_range()
                gradings = {
                    "j_lower": j_lower,
                    "j_upper": j_upper,
                    "j_min_potential": None,
                    "j_max_potential": None,
                }

        if run_tests and error is None:
            if n is None:
                n = 1
                flags.append("components: not provided, assuming a knot (n=1)")
            if jones is None:
                flags.append("tests: skipped, no Jones polynomial available")
            else:
                summary = jones_summary(jones)
                lead = conway_poly.lead_coeff() if conway_poly else None
                inp = ObstructionInput(
                    p1=summary.p1,
                    n=n,
                    lead_conway=lead,
                    jones_min=summary.min_deg,
                    jones_max=summary.max_deg,
                    j_lower=None if gradings is None else gradings["j_lower"],
                    j_upper=None if gradings is None else gradings["j_upper"],
                )
                jr = jones_test(inp)
                kr = khovanov_test(inp)
                reports = [jr, kr]
                if kh is not None:
                    reports.append(khovanov_test_from_kh1(kh, n, lead))
                if jr.applicable and kr.applicable:
                    comparison = strength_comparison(jr, kr)
                for r in reports:
                    if r.equality_attained:
                        flags.append(f"{r.test.value}: bound attained with equality")
    except PoslinkError as exc:
        error = f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        error = f"ValueError: {exc}"

    return RecordResult(
        name=record.name,
        source=source,
        flags=flags,
        error=error,
        invariants=invariants,
        gradings=gradings,
        reports=reports,
        comparison=comparison,
        timing_ms=(time.perf_counter() - t0) * 1000.0,
    )


def run_batch(
    records: Iterable[LinkRecord],
    fn: Callable[[LinkRecord], RecordResult],
    *,
    jobs: int = 1,
) -> BatchResult:
    """Apply fn to every record; output order always matches input order."""
    records = list(records)
    if jobs <= 1:
        results = [fn(r) for r in records]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, records))
    return BatchResult(results)


def cmd_compute(
    records: Iterable[LinkRecord],
    *,
    want: frozenset[str] = frozenset({"jones", "conway", "kh"}),
    caps: Caps = Caps(),
    mirror: str = "auto",
    jobs: int = 1,
) -> BatchResult:
    return run_batch(
        records,
        lambda r: process_record(r, want=want, caps=caps, mirror=mirror),
        jobs=jobs,
    )


def cmd_test(
    records: Iterable[LinkRecord],
    *,
    caps: Caps = Caps(),
    mirror: str = "auto",
    jobs: int = 1,
) -> BatchResult:
    return run_batch(
        records,
        lambda r: process_record(r, run_tests=True, caps=caps, mirror=mirror),
        jobs=jobs,
    )


# --------------------------------------------------------------------------
# positive braid survey


def positive_braid_words(max_strands: int, max_length: int) -> Iterator[BraidWord]:
    """All positive words with 2..max_strands strands, 1..max_length letters."""
    for strands in range(2, max_strands + 1):
        for length in range(1, max_length + 1):
            for letters in itertools.product(range(1, strands), repeat=length):
                yield BraidWord(strands, letters)


def survey_corpus(max_strands: int, max_length: int) -> list[tuple[BraidWord, Diagram]]:
    """Deduplicated survey entries keyed by the (Jones, Conway) fingerprint."""
    seen: set[tuple[str, str]] = set()
    out = []
    for word in positive_braid_words(max_strands, max_length):
        d = braid_closure(word)
        fingerprint = (
            format_poly(jones_V(d), "t"),
            format_poly(conway(d), "z"),
        )
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        out.append((word, d))
    return out


def cmd_survey(
    max_strands: int,
    max_length: int,
    *,
    caps: Caps = Caps(),
    jobs: int = 1,
) -> BatchResult:
    """Enumerate positive braid closures, dedupe, test, and assert that no
    positive diagram ever fails an applicable obstruction test."""
    records = []
    for word, _ in survey_corpus(max_strands, max_length):
        letters = " ".join(str(k) for k in word.letters)
        name = f"closure(strands={word.strand_count}; {letters})"
        records.append(LinkRecord(name=name, braid=word))
    result = run_batch(
        records,
        lambda r: process_record(r, run_tests=True, caps=caps),
        jobs=jobs,
    )
    for res, rec in zip(result.results, records):
        if res.error is not None:
            continue
        diagram = rec.diagram()
        if not is_positive(diagram):
            res.error = "survey generated a non-positive diagram"
            continue
        for report in res.reports:
            if report.failed:
                res.error = (
                    f"{report.test.value} failed on a positive diagram; "
                    "this contradicts the obstruction theorems"
                )
    return result
