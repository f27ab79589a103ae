"""
📦 Module: base_controller.py

Shared error handling of the command controllers.

Responsibilities:
    - Run a command body and turn domain or I/O failures into exit status 1
    - Log the failure and report it to the user through Messenger
"""

# 🧱 Standard library
import argparse

# 🧠 First-party (project-specific)
from models.errors import CausalToolkitError
from utils.logger import get_logger
from utils.messenger import Messenger
from utils.run_config import RunConfig
from views.console_view import ConsoleView

EXIT_OK = 0
EXIT_FAILURE = 1


class BaseController:
    """
    🎛️ Base of every command controller.

    Subclasses implement `_run(args)` and return an exit status.
    """
    title = "ConvoyCD"

    def __init__(self, config: RunConfig, version: str, view: ConsoleView | None = None,
                 messenger: Messenger | None = None):
        self.config = config
        self.version = version
        self.view = view or ConsoleView()
        self.messenger = messenger or Messenger()
        self.logger = get_logger(type(self).__name__)

    def execute(self, args: argparse.Namespace) -> int:
        """
        Runs the command; domain errors and I/O errors end with status 1.
        """
        try:
            return self._run(args)
        except (CausalToolkitError, OSError, ValueError) as e:
            self.logger.error("Příkaz %s selhal: %s", args.command, e)
            self.messenger.error(str(e), self.title)
            return EXIT_FAILURE

    def _run(self, args: argparse.Namespace) -> int:
        raise NotImplementedError
