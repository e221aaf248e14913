"""
Recoverable conditions raised by pipeline stages.

Stages report them through 'warn', which emits a regular Python warning and
appends it to the recorder of the unmixing call in progress, if any.
Recorders are held in a ContextVar, one per call and thread; the process-wide
warning filters are never modified.
"""

import warnings
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

_recorder: ContextVar[list[str] | None] = ContextVar("hypercsi_warning_recorder", default=None)


def warn(message: str, category: type[Warning], stacklevel: int = 3) -> None:
    """
    Emit 'message' as a 'category' warning and record it.

    Args:
        message: The warning text
        category: A Warning subclass
        stacklevel: Passed to warnings.warn. The default points at the caller of the function calling 'warn'.

    Returns: None
    """

    recorded = _recorder.get()
    if recorded is not None:
        recorded.append(f"{category.__name__}: {message}")

    warnings.warn(message, category, stacklevel=stacklevel)


@contextmanager
def recording_warnings() -> Iterator[list[str]]:
    """
    Collect every 'warn' call made from this context, as "Category: message" strings.
    """

    recorded: list[str] = []
    token = _recorder.set(recorded)
    try:
        yield recorded
    finally:
        _recorder.reset(token)
