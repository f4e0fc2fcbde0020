"""Classify conjugacy classes by the sign structure of their diagonal trace.

A class is called positive when the trace polynomial N at a minimal length
representative has only non-negative coefficients.  Every computation is
cross-checked on the fly: the value at q=1 must be the centralizer order,
the diagonal polynomial must be palindromic, and regular classes must come
out positive.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import hecke
from .classes import ClassRecord, ClassSet
from .errors import IntegrityError
from .qpoly import QPoly
from .reference import (
    ANOMALOUS_LABELS,
    KNOWN_OMISSIONS,
    POSITIVE_NONREGULAR,
    label_degree,
    parse_label,
)
from .rootsys import ElementTable


@dataclass(frozen=True)
class ClassResult:
    record: ClassRecord
    nww: QPoly
    positive: bool


class Classification:
    """Positivity classification of every conjugacy class of one group."""

    def __init__(self, table: ElementTable, results: list[ClassResult]):
        self.table = table
        self.results = results

    @property
    def positive_elliptic_nonregular(self) -> list[ClassResult]:
        return [
            r
            for r in self.results
            if r.positive and r.record.is_elliptic and not r.record.is_regular
        ]

    @property
    def positive_nonelliptic(self) -> list[ClassResult]:
        """Non-elliptic classes with non-negative trace, identity excluded.

        Empty on every group checked so far; reported rather than asserted.
        """
        return [
            r
            for r in self.results
            if r.positive and not r.record.is_elliptic and r.record.order > 1
        ]


def classify(
    table: ElementTable,
    class_set: ClassSet | None = None,
    *,
    kernel=None,
    threads: int = 1,
    chunk_size: int = 4096,
    checkpoint_provider=None,
    progress=None,
) -> Classification:
    """Compute the diagonal trace at the minimal representative of each class.

    checkpoint_provider: optional callable (class_index, record) -> checkpoint
    object accepted by the trace; lets long runs resume after interruption.
    """
    cs = class_set if class_set is not None else ClassSet(table)
    results = []
    for i, rec in enumerate(cs.records):
        checkpoint = (
            checkpoint_provider(i, rec) if checkpoint_provider is not None else None
        )
        poly = hecke.nww(
            table,
            rec.rep,
            rec.rep,
            kernel=kernel,
            threads=threads,
            chunk_size=chunk_size,
            checkpoint=checkpoint,
        )
        if poly(1) != rec.centralizer_order:
            raise IntegrityError(
                f"trace at q=1 is {poly(1)}, expected centralizer order "
                f"{rec.centralizer_order} for class {rec.label_str}"
            )
        n = 2 * rec.min_length
        if any(poly.coefficient(j) != poly.coefficient(n - j) for j in range(n + 1)):
            raise IntegrityError(f"diagonal trace not palindromic for {rec.label_str}")
        positive = all(c >= 0 for c in poly.coeffs)
        if rec.is_regular and not positive:
            raise IntegrityError(
                f"regular class {rec.label_str} has a negative coefficient"
            )
        results.append(ClassResult(record=rec, nww=poly, positive=positive))
        if progress is not None:
            progress(i + 1, len(cs.records))
    return Classification(table, results)


@dataclass(frozen=True)
class ReferenceDiff:
    """Outcome of comparing computed positive classes against reference data.

    Anomalous reference labels (rendered degree != rank) are matched by
    factor containment and reported separately; computed labels recorded as
    known omissions of the published row are likewise reported separately.
    Neither counts as a mismatch.  Any other difference does.
    """

    matched: tuple[str, ...]
    anomalies: tuple[tuple[str, str], ...]  # (reference label, computed label)
    omissions: tuple[str, ...]  # computed, provably absent from the row
    missing: tuple[str, ...]  # in reference, not computed
    extra: tuple[str, ...]  # computed, not in reference, unexplained

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra


def compare_positive_nonregular(type_name: str, computed_labels: list[str]) -> ReferenceDiff:
    if type_name not in POSITIVE_NONREGULAR:
        raise KeyError(f"no reference list for {type_name}")
    rank = int(type_name[1:])
    reference = POSITIVE_NONREGULAR[type_name]
    remaining = Counter(computed_labels)
    matched: list[str] = []
    anomalies: list[tuple[str, str]] = []
    missing: list[str] = []
    for ref in reference:
        if label_degree(ref) == rank:
            if remaining[ref] > 0:
                remaining[ref] -= 1
                matched.append(ref)
            else:
                missing.append(ref)
            continue
        if (type_name, ref) not in ANOMALOUS_LABELS:
            raise IntegrityError(
                f"reference label {ref} for {type_name} has degree "
                f"{label_degree(ref)} != rank {rank} but is not a known anomaly"
            )
        # degree-inconsistent label: match by factor containment
        want = parse_label(ref)
        hits = [
            lab
            for lab, cnt in remaining.items()
            if cnt > 0 and all(parse_label(lab).get(k, 0) >= e for k, e in want.items())
        ]
        if len(hits) == 1:
            remaining[hits[0]] -= 1
            anomalies.append((ref, hits[0]))
        else:
            missing.append(ref)
    leftovers = sorted(lab for lab, cnt in remaining.items() for _ in range(cnt))
    omissions = [lab for lab in leftovers if (type_name, lab) in KNOWN_OMISSIONS]
    extra = [lab for lab in leftovers if (type_name, lab) not in KNOWN_OMISSIONS]
    return ReferenceDiff(
        matched=tuple(matched),
        anomalies=tuple(anomalies),
        omissions=tuple(omissions),
        missing=tuple(missing),
        extra=tuple(extra),
    )


@dataclass(frozen=True)
class SquareLadderVerdict:
    """Check of the conjectured positive class in type B at special ranks.

    Applies when the rank is k(k+1): the class whose characteristic
    polynomial is the product of q^(2j)+1 for j = 1..k is conjectured
    positive.  Verdict fields say whether such a class exists, whether it is
    positive, and whether it is already covered by being regular.
    """

    rank: int
    applicable: bool
    k: int = 0
    label: str = ""
    found: bool = False
    positive: bool = False
    regular: bool = False


def square_ladder_verdict(classification: Classification) -> SquareLadderVerdict:
    table = classification.table
    ctype = table.datum.ctype
    if ctype.family != "B":
        raise ValueError("only meaningful in type B")
    n = ctype.rank
    k = 0
    while k * (k + 1) < n:
        k += 1
    if k * (k + 1) != n:
        return SquareLadderVerdict(rank=n, applicable=False)
    target = QPoly([1])
    for j in range(1, k + 1):
        target = target * QPoly([1] + [0] * (2 * j - 1) + [1])
    for r in classification.results:
        if r.record.char_poly == target:
            return SquareLadderVerdict(
                rank=n,
                applicable=True,
                k=k,
                label=r.record.label_str,
                found=True,
                positive=r.positive,
                regular=r.record.is_regular,
            )
    return SquareLadderVerdict(rank=n, applicable=True, k=k, label="", found=False)
