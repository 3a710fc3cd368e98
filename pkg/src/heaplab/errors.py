from typing import Optional


class HeaplabError(Exception):
    pass


class InputError(HeaplabError, ValueError):
    """Bad user input: structures, words, vertex references, flags."""


class StructureError(InputError):
    pass


class UnknownPieceError(InputError):
    def __init__(self, token: str, position: Optional[int] = None) -> None:
        self.token = token
        self.position = position
        where = f" at word position {position}" if position is not None else ""
        super().__init__(f"Unknown piece '{token}'{where}")


class StructureFileError(InputError):
    def __init__(self, path: str, line: int, token: str, message: str) -> None:
        self.path = path
        self.line = line
        self.token = token
        super().__init__(f"{path}:{line}: {message} (token '{token}')")


class StructureMismatchError(HeaplabError, ValueError):
    pass


class InvalidVertexError(InputError, IndexError):
    def __init__(self, vertex: int, size: int) -> None:
        self.vertex = vertex
        self.size = size
        super().__init__(f"Vertex {vertex} out of range for a heap of size {size}")


class InvalidChainError(InputError):
    pass


class PreconditionError(HeaplabError, ValueError):
    pass


class WitnessVerificationError(HeaplabError, AssertionError):
    """A constructed non-regularity witness failed its own P2/P1 checks."""
