# 🛠️ create_config.py – Generates the default configuration file from the built-in defaults

import sys
from pathlib import Path

# 📌 Run from anywhere: the project root holds the packages
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from utils.run_config import RunConfig  # noqa: E402

# 💾 Save config to .ini file next to this script
target = RunConfig().write_defaults(Path(__file__).resolve().parent / "config.ini")

# 🧪 For testing: preview config content
print(target.read_text(encoding="utf-8"))
