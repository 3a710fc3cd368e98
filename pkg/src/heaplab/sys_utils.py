from typing import Sequence

import rich
import rich.console

MAX_WORD_LOG_LEN: int = 120
TRUNCATED_MESSAGE: str = " ...(truncated)"


class DisableConsole:
    def print(self, *args, **kwargs):  # type: ignore
        pass

    def log(self, *args, **kwargs):  # type: ignore
        pass


console: rich.console.Console | DisableConsole = rich.console.Console(
    stderr=True, style="magenta", highlight=False, markup=False
)


def set_quiet(quiet: bool) -> None:
    global console
    if quiet:
        console = DisableConsole()
    else:
        console = rich.console.Console(
            stderr=True, style="magenta", highlight=False, markup=False
        )


def maybe_truncate(content: str, truncate_after: int | None = MAX_WORD_LOG_LEN) -> str:
    """Truncate content and append a notice if content exceeds the specified length."""
    return (
        content
        if not truncate_after or len(content) <= truncate_after
        else content[:truncate_after] + TRUNCATED_MESSAGE
    )


def show_word(word: Sequence[str]) -> str:
    return maybe_truncate(" ".join(word))
