"""Text format for concurrency structures.

One directive per line::

    # comment
    piece <name>
    conc <name> <name>

``piece`` lines fix the alphabet order. A ``conc`` line may name pieces
declared further down.
"""

from pathlib import Path
from typing import Optional

from ..errors import InputError, StructureFileError
from ..heaps.structure import ConcurrencyStructure, validate_structure


def parse_structure(text: str, path: str = "<string>") -> ConcurrencyStructure:
    pieces: list[str] = []
    declared: dict[str, int] = {}
    pairs: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, *args = line.split()
        if directive == "piece":
            if len(args) != 1:
                raise StructureFileError(path, lineno, line, "'piece' takes exactly one name")
            (name,) = args
            if name in declared:
                raise StructureFileError(
                    path, lineno, name, f"duplicate piece, first declared on line {declared[name]}"
                )
            declared[name] = lineno
            pieces.append(name)
        elif directive == "conc":
            if len(args) != 2:
                raise StructureFileError(path, lineno, line, "'conc' takes exactly two names")
            pairs.append((args[0], args[1], lineno))
        else:
            raise StructureFileError(path, lineno, directive, "unknown directive")

    for a, b, lineno in pairs:
        for name in (a, b):
            if name not in declared:
                raise StructureFileError(path, lineno, name, "unknown piece")
    return validate_structure(pieces, ((a, b) for a, b, _ in pairs))


def load_structure(path: str | Path) -> ConcurrencyStructure:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise InputError(f"Cannot read structure file {p}: {e.strerror}") from None
    return parse_structure(text, str(p))


def dump_structure(structure: ConcurrencyStructure, header: Optional[str] = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"piece {p}" for p in structure.pieces]
    lines += [f"conc {a} {b}" for a, b in structure.concurrent]
    return "\n".join(lines) + "\n"
