"""Theorem-level checks over exhaustively enumerated heaps.

Every suite returns a :class:`VerificationReport`. Violations are
counterexamples to statements that must hold and carry the canonical word
of the offending heap; findings are expected evidence (witnesses,
exploratory hits).
"""

import random
import time
from typing import Callable

from .. import sys_utils
from ..errors import WitnessVerificationError
from ..graphs.classify import connected_components, has_property_R
from ..graphs.witness import find_witness
from ..heaps.heap import (
    Heap,
    double,
    double_embedding,
    heap_from_word,
    opposite,
    split_components,
    subheap,
)
from ..heaps.linalg import RATIONALS, FieldChoice, heap_kernel_dim, is_acyclic, is_strongly_acyclic
from ..heaps.props import (
    Exposure,
    exposes,
    has_p1,
    has_p2,
    is_minimal_counterexample,
    maximal_vertices,
    minimal_vertices,
)
from ..heaps.tl import deletion_test, random_rule_order, reduce_word, tl_reduce
from ..types_ import Suites, VerificationReport, VerificationRun, Violation
from .enumerate import EnumerationSpec, HeapEnumerator

WORD_REWRITE_LIMIT = 6


def _new_report(spec: EnumerationSpec, suite: Suites) -> VerificationReport:
    return VerificationReport(
        structure_id=spec.structure.structure_id, suite=suite.value, max_vertices=spec.max_vertices
    )


def _flag(report: VerificationReport, kind: str, heap: Heap, detail: str = "") -> None:
    report.violations.append(Violation(kind=kind, word=list(heap.labels), detail=detail))


def _note(report: VerificationReport, kind: str, heap: Heap, detail: str = "") -> None:
    report.findings.append(Violation(kind=kind, word=list(heap.labels), detail=detail))


def _sweep(
    spec: EnumerationSpec, report: VerificationReport, check: Callable[[Heap], None]
) -> VerificationReport:
    start = time.monotonic()
    enumerator = HeapEnumerator(spec)
    for heap in enumerator:
        report.saw(len(heap))
        check(heap)
    report.truncated = enumerator.truncated
    report.wall_time_s = round(time.monotonic() - start, 3)
    sys_utils.console.log(
        f"{report.suite}: {sum(report.heaps_checked.values())} heaps, "
        f"{len(report.violations)} violations, {report.wall_time_s}s"
    )
    return report.finalize()


def check_universal_implications(
    spec: EnumerationSpec, field: FieldChoice = RATIONALS
) -> VerificationReport:
    """Strongly acyclic implies P2, and P1 implies acyclic, on every heap.

    On a structure with property R the converse, acyclic implies P1, is
    checked as well. Acyclic heaps without P1 that also lack P2 are recorded
    as findings: they exist on regular structures such as ``A_4`` and ``D_4``.
    One with P2 would contradict regularity and is a violation.
    """
    report = _new_report(spec, Suites.universal)
    regular = has_property_R(spec.structure)
    report.verdict = "regular" if regular else "nonregular"

    def check(heap: Heap) -> None:
        p1, p2 = has_p1(heap), has_p2(heap)
        acyclic = is_acyclic(heap, field)
        strongly = acyclic and is_strongly_acyclic(heap, field)
        for name, value in (("p1", p1), ("p2", p2), ("acyclic", acyclic), ("strongly_acyclic", strongly)):
            if value:
                report.bump(name)
        if strongly and not p2:
            _flag(report, "strongly_acyclic_not_p2", heap)
        if p1 and not acyclic:
            _flag(report, "p1_not_acyclic", heap)
        if regular and acyclic and not p1:
            report.bump("acyclic_not_p1")
            if p2:
                _flag(report, "acyclic_p2_not_p1", heap)
            else:
                _note(report, "acyclic_not_p1", heap)

    return _sweep(spec, report, check)


def _check_minimal_counterexample(report: VerificationReport, heap: Heap) -> None:
    report.bump("minimal_counterexamples")
    _note(report, "minimal_counterexample", heap)
    doubled = double(heap)
    if not has_p2(doubled):
        _flag(report, "double_not_p2", heap)
        return
    if all(outcome.lands_on_basis for outcome in deletion_test(doubled)):
        _flag(report, "double_deletions_all_basis", heap)


def check_regularity(spec: EnumerationSpec, field: FieldChoice = RATIONALS) -> VerificationReport:
    """Check the equivalent forms of regularity on every P2 heap.

    For a structure classified as having property R, every P2 heap must have
    P1, be strongly acyclic and pass the deletion test. Otherwise P2 heaps
    without P1 are evidence; when none exists within the bound the classifier's
    witness is verified instead.
    """
    regular = has_property_R(spec.structure)
    report = _new_report(spec, Suites.regularity)
    report.verdict = "regular" if regular else "nonregular"
    p2_spec = spec.model_copy(update={"p2_only": True})

    def check(heap: Heap) -> None:
        report.bump("p2")
        p1 = has_p1(heap)
        strongly = is_strongly_acyclic(heap, field)
        on_basis = all(outcome.lands_on_basis for outcome in deletion_test(heap))
        if not p1:
            report.bump("p2_not_p1")
        if not strongly:
            report.bump("p2_not_strongly_acyclic")
        if not on_basis:
            report.bump("deletion_leaves_basis")
        if regular:
            if not p1:
                _flag(report, "p2_not_p1", heap)
                report.fatal = True
            if not strongly:
                _flag(report, "p2_not_strongly_acyclic", heap)
            if not on_basis:
                _flag(report, "deletion_leaves_basis", heap)
        elif not p1 and is_minimal_counterexample(heap):
            _check_minimal_counterexample(report, heap)

    _sweep(p2_spec, report, check)

    if not regular and not report.counters.get("p2_not_p1"):
        try:
            certificate = find_witness(spec.structure)
        except WitnessVerificationError as exc:
            report.fatal = True
            report.violations.append(Violation(kind="witness_failed", word=[], detail=str(exc)))
        else:
            assert certificate is not None
            _note(report, "witness", certificate.heap, certificate.reason.value)
    return report.finalize()


def check_kernel_identity(spec: EnumerationSpec, field: FieldChoice = RATIONALS) -> VerificationReport:
    """``dim ker(H) = m + dim ker(G)`` where ``H = delta^m G``."""
    report = _new_report(spec, Suites.kernel)

    def check(heap: Heap) -> None:
        mono = tl_reduce(heap)
        if mono.delta_exponent:
            report.bump("reduced")
        lhs = heap_kernel_dim(heap, field)
        rhs = mono.delta_exponent + heap_kernel_dim(mono.basis_heap, field)
        if lhs != rhs:
            _flag(report, "kernel_identity", heap, f"{lhs} != {rhs} for {mono}")

    return _sweep(spec, report, check)


def check_confluence(
    spec: EnumerationSpec, samples: int = 1000, orders: int = 10, seed: int = 0
) -> VerificationReport:
    """Reduce random heaps under random rule orders and compare the results.

    Words have at most ``spec.max_vertices`` letters. Short words are also
    reduced by rewriting words directly, which must agree with the heap
    reduction.
    """
    report = _new_report(spec, Suites.confluence)
    start = time.monotonic()
    structure = spec.structure
    rng = random.Random(seed)
    if not len(structure):
        report.saw(0)
        return report.finalize()
    for _ in range(samples):
        size = rng.randint(0, spec.max_vertices)
        heap = heap_from_word(structure, [rng.choice(structure.pieces) for _ in range(size)])
        report.saw(len(heap))
        reference = tl_reduce(heap)
        for _ in range(orders):
            other = tl_reduce(heap, random_rule_order(rng))
            if other != reference:
                _flag(report, "rule_order_dependence", heap, f"{reference} vs {other}")
                break
        if len(heap) <= WORD_REWRITE_LIMIT:
            report.bump("word_rewrites")
            by_words = reduce_word(structure, heap.labels)
            if by_words != reference:
                _flag(report, "word_rewrite_mismatch", heap, f"{reference} vs {by_words}")
    report.wall_time_s = round(time.monotonic() - start, 3)
    return report.finalize()


def _second_factor_ok(heap: Heap) -> bool:
    first, second = heap.layers[0], heap.layers[1]
    for b in second:
        if any(heap.labels[a] == heap.labels[b] for a in first):
            continue
        below = {heap.labels[a] for a in first if heap.less(a, b)}
        if len(below) < 2:
            return False
    return True


def check_lemmas(spec: EnumerationSpec) -> VerificationReport:
    """Structural facts about factorizations, opposites and doubles."""
    report = _new_report(spec, Suites.lemmas)
    parts = [c.pieces for c in connected_components(spec.structure)]

    def check(heap: Heap) -> None:
        if heap.layers and set(heap.layers[0]) != set(minimal_vertices(heap)):
            _flag(report, "first_factor_not_minimal", heap)
        doubled, lower, upper = double_embedding(heap)
        if subheap(doubled, upper) != heap:
            _flag(report, "double_missing_heap", heap)
        if subheap(doubled, lower) != opposite(heap):
            _flag(report, "double_missing_opposite", heap)
        if opposite(doubled) != doubled:
            _flag(report, "double_not_self_opposite", heap)
        if len(heap) and len(doubled) != 2 * len(heap) - len(heap.layers[0]):
            _flag(report, "double_size", heap)
        if opposite(opposite(heap)) != heap:
            _flag(report, "opposite_not_involution", heap)

        p1, p2 = has_p1(heap), has_p2(heap)
        if len(heap.layers) > 1:
            minus_free = not any(Exposure.MINUS & exposes(heap, a) for a in minimal_vertices(heap))
            if minus_free:
                report.bump("minus_free")
                if not _second_factor_ok(heap):
                    _flag(report, "minus_free_second_factor", heap)
        if p2 and not p1:
            report.bump("p2_not_p1")
            if not has_p2(doubled):
                _flag(report, "double_not_p2", heap)
        if p1 and not any(Exposure.PLUS & exposes(heap, a) for a in maximal_vertices(heap)):
            report.bump("plus_free_p1")
            mono = tl_reduce(doubled)
            if not mono.basis_heap.is_trivial() or (not heap.is_trivial() and mono.delta_exponent == 0):
                _flag(report, "double_not_delta_trivial", heap, str(mono))
        if len(parts) > 1:
            pieces = split_components(heap, parts)
            if p1 != all(has_p1(h) for h in pieces):
                _flag(report, "component_p1_mismatch", heap)
            if p2 != all(has_p2(h) for h in pieces):
                _flag(report, "component_p2_mismatch", heap)

    return _sweep(spec, report, check)


def search_acyclic_not_p1(spec: EnumerationSpec, field: FieldChoice = RATIONALS) -> VerificationReport:
    """Exploratory: acyclic heaps without P1. Hits are findings, never violations."""
    report = _new_report(spec, Suites.acyclic_search)

    def check(heap: Heap) -> None:
        if not has_p1(heap) and is_acyclic(heap, field):
            report.bump("acyclic_not_p1")
            _note(report, "acyclic_not_p1", heap, "p2" if has_p2(heap) else "")

    return _sweep(spec, report, check)


SUITE_ORDER = (
    Suites.universal,
    Suites.regularity,
    Suites.kernel,
    Suites.lemmas,
    Suites.confluence,
)


def run_suite(
    suite: Suites,
    spec: EnumerationSpec,
    field: FieldChoice = RATIONALS,
    samples: int = 1000,
    orders: int = 10,
    seed: int = 0,
) -> VerificationRun:
    chosen = SUITE_ORDER if suite == Suites.all else (suite,)
    run = VerificationRun(structure_id=spec.structure.structure_id)
    for s in chosen:
        sys_utils.console.log(f"Running suite {s.value} up to {spec.max_vertices} vertices")
        match s:
            case Suites.universal:
                report = check_universal_implications(spec, field)
            case Suites.regularity:
                report = check_regularity(spec, field)
            case Suites.kernel:
                report = check_kernel_identity(spec, field)
            case Suites.lemmas:
                report = check_lemmas(spec)
            case Suites.confluence:
                report = check_confluence(spec, samples, orders, seed)
            case Suites.acyclic_search:
                report = search_acyclic_not_p1(spec, field)
            case _:
                raise ValueError(f"Unknown suite {s}")
        run.reports.append(report)
    return run
