import functools
import importlib.metadata
import json
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

import typer
from pydantic import ValidationError
from typer import Typer

from . import sys_utils
from .config import HeaplabConfig, load_config
from .errors import InputError
from .file_ops.dot import heap_to_dot, structure_to_dot
from .file_ops.structure_file import load_structure
from .graphs.classify import classify_component, connected_components, has_property_R
from .graphs.witness import witness_nonregular
from .heaps.heap import Heap, format_factors, heap_from_word
from .heaps.linalg import FieldChoice, boundary_map, format_matrix, heap_kernel_dim, is_strongly_acyclic
from .heaps.props import balanced_convex_chains, dismantle, has_p2
from .heaps.structure import ConcurrencyStructure
from .heaps.tl import tl_reduce
from .types_ import CheckReport, ComponentReport, DismantlingStepModel, Suites
from .verify.enumerate import EnumerationSpec
from .verify.suites import run_suite

app = Typer(pretty_exceptions_show_locals=False, no_args_is_help=True)

F = TypeVar("F", bound=Callable[..., Any])


def _bool(value: bool) -> str:
    return "true" if value else "false"


def handle_input_errors(fn: F) -> F:
    """Report user errors on stderr with exit code 2."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except InputError as e:
            typer.echo(f"error: {e}", err=True)
            raise typer.Exit(2)

    return wrapper  # type: ignore[return-value]


def _read_word(word: str) -> str:
    """``@path`` reads the word from a file."""
    if word.startswith("@"):
        try:
            return Path(word[1:]).read_text()
        except OSError as e:
            raise InputError(f"Cannot read word file {word[1:]}: {e.strerror}") from None
    return word


def _field(config: HeaplabConfig) -> FieldChoice:
    try:
        return FieldChoice(characteristic=config.characteristic)
    except ValidationError as e:
        raise InputError(e.errors()[0]["msg"]) from None


def _load(structure_file: Path, word: Optional[str] = None) -> tuple[ConcurrencyStructure, Optional[Heap]]:
    structure = load_structure(structure_file)
    heap = heap_from_word(structure, _read_word(word)) if word is not None else None
    return structure, heap


def _version_callback(value: bool) -> None:
    if value:
        version_ = importlib.metadata.version("heaplab")
        print(f"heaplab version: {version_}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False, "--version", "-v", callback=_version_callback, is_eager=True
    ),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Silence logging on stderr."),
) -> None:
    """Heaps of pieces: normal forms, P1/P2, acyclicity and property R."""
    sys_utils.set_quiet(quiet)


@app.command()
@handle_input_errors
def nf(
    structure_file: Path,
    word: str,
    as_json: bool = typer.Option(False, "--json"),
) -> None:
    """Cartier-Foata form and Temperley-Lieb normal form of a word."""
    _, heap = _load(structure_file, word)
    assert heap is not None
    mono = tl_reduce(heap)
    if as_json:
        print(
            json.dumps(
                {
                    "word": list(heap.labels),
                    "factors": format_factors(heap),
                    "delta": mono.delta_exponent,
                    "basis": list(mono.basis_heap.labels),
                    "basisFactors": format_factors(mono.basis_heap),
                },
                indent=2,
            )
        )
        return
    print(format_factors(heap))
    print(mono)


@app.command()
@handle_input_errors
def check(
    structure_file: Path,
    word: str,
    p1: bool = typer.Option(False, "--p1"),
    p2: bool = typer.Option(False, "--p2"),
    acyclic: bool = typer.Option(False, "--acyclic"),
    strongly: bool = typer.Option(False, "--strongly-acyclic"),
    chains: bool = typer.Option(False, "--chains"),
    characteristic: Optional[int] = typer.Option(None, "--char"),
    matrix: bool = typer.Option(False, "--matrix"),
    as_json: bool = typer.Option(False, "--json"),
    dot: bool = typer.Option(False, "--dot"),
    assert_: bool = typer.Option(False, "--assert", help="Exit 1 if a checked property fails."),
) -> None:
    """Check P2, P1 and acyclicity of a heap (all three when no flag is given)."""
    config = load_config(characteristic=characteristic)
    field = _field(config)
    _, heap = _load(structure_file, word)
    assert heap is not None
    if not (p1 or p2 or acyclic or strongly or chains):
        p1 = p2 = acyclic = True

    report = CheckReport(word=list(heap.labels), factors=format_factors(heap))
    results: list[tuple[str, bool]] = []
    if p2:
        report.p2 = has_p2(heap)
        results.append(("P2", report.p2))
    if p1:
        steps = dismantle(heap)
        report.p1 = steps is not None
        report.dismantling = [
            DismantlingStepModel(word=list(s.word), vertex=s.vertex, piece=s.piece, side=s.side.name or "")
            for s in steps or []
        ]
        results.append(("P1", report.p1))
    if acyclic:
        report.kernel_dim = heap_kernel_dim(heap, field)
        report.characteristic = field.characteristic
        report.acyclic = report.kernel_dim == 0
        results.append(("acyclic", report.acyclic))
    if strongly:
        report.strongly_acyclic = is_strongly_acyclic(heap, field)
        report.characteristic = field.characteristic
        results.append(("stronglyAcyclic", report.strongly_acyclic))
    if chains:
        report.chains = [list(c.vertices) for c in balanced_convex_chains(heap)]

    if as_json:
        print(report.model_dump_json(indent=2, exclude_none=True))
    else:
        print(" ".join(f"{name}={_bool(value)}" for name, value in results))
        if report.kernel_dim is not None:
            print(f"kernel dim = {report.kernel_dim} (char {field.characteristic})")
        for c in report.chains or []:
            print("chain: " + " ".join(f"{v}:{heap.labels[v]}" for v in c))
    if matrix:
        print(format_matrix(boundary_map(heap)))
    if dot:
        print(heap_to_dot(heap), end="")
    if assert_ and not all(value for _, value in results):
        raise typer.Exit(1)


@app.command()
@handle_input_errors
def classify(
    structure_file: Path,
    witness: bool = typer.Option(False, "--witness"),
    as_json: bool = typer.Option(False, "--json"),
    dot: bool = typer.Option(False, "--dot"),
) -> None:
    """Family of every connected component and the property R verdict."""
    structure = load_structure(structure_file)
    components: list[ComponentReport] = []
    for comp in connected_components(structure):
        tag = classify_component(comp)
        witness_word = None
        if witness and not tag.has_r:
            witness_word = list(witness_nonregular(comp, structure).word)
        components.append(
            ComponentReport(
                pieces=list(comp.pieces), tag=str(tag), params=tag.params(), hasR=tag.has_r, witnessWord=witness_word
            )
        )
    has_r = all(c.hasR for c in components)

    if as_json:
        payload = {
            "structure_id": structure.structure_id,
            "hasR": has_r,
            "components": [c.model_dump(exclude_none=True) for c in components],
        }
        print(json.dumps(payload, indent=2))
    else:
        for c in components:
            print(f"{c.tag}: property R = {_bool(c.hasR)}")
            if len(components) > 1:
                print(f"  pieces: {' '.join(c.pieces)}")
            if c.witnessWord is not None:
                print(f"  witness: {format_factors(heap_from_word(structure, c.witnessWord))}")
        if len(components) != 1:
            print(f"property R = {_bool(has_r)}")
    if dot:
        print(structure_to_dot(structure), end="")


def _default_bound(config: HeaplabConfig, suite: Suites, structure: ConcurrencyStructure) -> int:
    """Searching for counterexamples on a non-R structure gets the larger bound."""
    if suite == Suites.acyclic_search:
        return config.search_max_vertices
    if suite == Suites.regularity and not has_property_R(structure):
        return config.search_max_vertices
    return config.regular_max_vertices


@app.command()
@handle_input_errors
def verify(
    structure_file: Path,
    max_size: Optional[int] = typer.Option(None, "--max-size"),
    suite: Suites = typer.Option(Suites.all, "--suite"),
    json_out: Optional[str] = typer.Option(None, "--json", help="Write the report to a file, '-' for stdout."),
    timings: bool = typer.Option(False, "--timings"),
    characteristic: Optional[int] = typer.Option(None, "--char"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    orders: Optional[int] = typer.Option(None, "--orders"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    per_size_cap: Optional[int] = typer.Option(None, "--per-size-cap"),
    time_budget: Optional[float] = typer.Option(None, "--time-budget"),
) -> None:
    """Run verification suites over every heap up to a size bound."""
    config = load_config(
        characteristic=characteristic,
        confluence_samples=samples,
        confluence_orders=orders,
        seed=seed,
        per_size_cap=per_size_cap,
        time_budget_s=time_budget,
    )
    field = _field(config)
    structure = load_structure(structure_file)
    if max_size is None:
        max_size = _default_bound(config, suite, structure)
    try:
        spec = EnumerationSpec(
            structure=structure,
            max_vertices=max_size,
            per_size_cap=config.per_size_cap,
            time_budget_s=config.time_budget_s,
        )
    except ValidationError as e:
        raise InputError(f"Invalid enumeration bound: {e.errors()[0]['msg']}") from None

    run = run_suite(
        suite,
        spec,
        field,
        samples=config.confluence_samples,
        orders=config.confluence_orders,
        seed=config.seed,
    )

    if json_out == "-":
        print(run.stable_json(include_timings=timings))
    else:
        if json_out is not None:
            Path(json_out).write_text(run.stable_json(include_timings=timings) + "\n")
        for report in run.reports:
            status = "ok" if report.ok else "FAILED"
            line = (
                f"{report.suite}: {status}, {sum(report.heaps_checked.values())} heaps, "
                f"{len(report.violations)} violations, {len(report.findings)} findings"
            )
            if report.verdict:
                line += f", verdict {report.verdict}"
            if report.truncated:
                line += ", truncated"
            print(line)
            for v in report.violations:
                print(f"  violation {v.kind}: {' '.join(v.word)} {v.detail}".rstrip())
            for f in report.findings:
                print(f"  {f.kind}: {' '.join(f.word)} {f.detail}".rstrip())
    if not run.ok:
        raise typer.Exit(1)


@app.command("export-dot")
@handle_input_errors
def export_dot(structure_file: Path, word: Optional[str] = typer.Argument(None)) -> None:
    """DOT of the Hasse diagram of a word's heap, or of the concurrency graph."""
    structure, heap = _load(structure_file, word)
    if heap is None:
        print(structure_to_dot(structure), end="")
    else:
        print(heap_to_dot(heap), end="")


if __name__ == "__main__":
    app()
