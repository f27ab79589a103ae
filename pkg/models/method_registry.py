"""
📦 Module: method_registry.py

Maps method identifiers to discovery functions.

Responsibilities:
    - Own the list of valid identifiers used by the CLI, the config file and the harness
    - Dispatch a discovery call, passing the seed to randomized methods
"""

# 🧱 Standard library
from typing import Callable

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig, DiscoveryOutcome
from models.dynotears_model import dynotears_discover
from models.errors import UnknownMethodError
from models.granger_model import pwgc_discover, mvgc_discover
from models.lingam_model import varlingam_discover
from models.pcmci_model import pcmci_discover
from models.random_model import random_discover
from models.scene_model import TimeSeriesScene
from models.timino_model import timino_discover

DiscoveryFunction = Callable[[TimeSeriesScene, MethodConfig], DiscoveryOutcome]

_DETERMINISTIC: dict[str, DiscoveryFunction] = {
    "pwgc": pwgc_discover,
    "mvgc": mvgc_discover,
    "varlingam": varlingam_discover,
    "timino": timino_discover,
    "pcmci": pcmci_discover,
    "dynotears": dynotears_discover,
}

METHOD_IDS: tuple[str, ...] = (*_DETERMINISTIC, "random")


def validate_method(method: str) -> str:
    """
    Returns the identifier unchanged when it is known.

    Raises:
        UnknownMethodError: Identifier not registered.
    """
    if method not in METHOD_IDS:
        raise UnknownMethodError(method, METHOD_IDS)
    return method


def run_discovery(method: str, scene: TimeSeriesScene, config: MethodConfig, seed: int = 0) -> DiscoveryOutcome:
    """
    Runs one discovery method on one scene.

    Args:
        method (str): One of METHOD_IDS.
        scene (TimeSeriesScene): Input data.
        config (MethodConfig): α, τ and method parameters.
        seed (int): Used by the random baseline only.
    """
    validate_method(method)
    if method == "random":
        return random_discover(scene, config, seed)
    return _DETERMINISTIC[method](scene, config)
