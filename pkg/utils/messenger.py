"""
📦 Module: messenger.py

Console counterpart of the message dialogs: user-facing notices on stderr.

Responsibilities:
    - Print error, info, and warning notices with a consistent "[title] message" layout
    - Keep stdout free for command results (edge lists, tables, paths)

Used across controllers to provide user feedback.
"""

# 🧱 Standard library
import sys
from typing import TextIO


class Messenger:
    """
    🎙️ Writes titled notices to a text stream (stderr by default).
    """

    def __init__(self, stream: TextIO | None = None):
        """
        Args:
            stream (TextIO, optional): Target stream; resolved lazily to the current sys.stderr.
        """
        self._stream = stream

    @property
    def stream(self) -> TextIO:
        return self._stream if self._stream is not None else sys.stderr

    def _emit(self, message: str, title: str):
        print(f"[{title}] {message}", file=self.stream)

    def error(self, message: str, title: str = "Error"):
        """
        Prints an error notice.

        Args:
            message (str): The error message to display.
            title (str): Notice title, usually the reporting component.
        """
        self._emit(message, title)

    def info(self, message: str, title: str = "Information"):
        """Prints an informational notice."""
        self._emit(message, title)

    def warning(self, message: str, title: str = "Warning"):
        """Prints a warning notice."""
        self._emit(message, title)
