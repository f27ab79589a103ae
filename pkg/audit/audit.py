"""
Auditovací skript pro kontrolu kvality kódu.

Spouští nástroje Vulture, Flake8 a Pylint nad balíčky projektu a testy,
sbírá výstupy a ukládá je do souboru audit/audit_report_<timestamp>.txt.

Bash: python audit/audit.py
"""

import os
import re
import subprocess
from datetime import datetime

# 🔍 Cesty a výjimky
TARGET_PATH = "."
EXCLUDED_DIRS = {"venv", ".venv", "__pycache__", ".git", ".pytest_cache", "audit", "examples",
                 "build", "dist", "docs", "logs", "reports"}
EXCLUDED_FILES = {"audit.py"}
WHITELIST_PATH = os.path.join("audit", "vulture_whitelist.txt")


# 📦 Sběr souborů pro analýzu (seřazeno, aby byl report porovnatelný)
def get_python_files() -> list[str]:
    files = []
    for root, dirs, filenames in os.walk(TARGET_PATH):
        dirs[:] = sorted(d for d in dirs if d not in EXCLUDED_DIRS)
        for filename in sorted(filenames):
            if filename.endswith(".py") and filename not in EXCLUDED_FILES:
                files.append(os.path.join(root, filename))
    return files


# 📝 Zápis do reportu
def write_section(report, title, content):
    report.write(f"{title}\n")
    report.write("-" * 60 + "\n")
    report.write((content.strip() or "OK") + "\n\n")


# 🧹 Filtrace výstupu Vulture (ignorujeme falešné pozitivy)
def parse_vulture_line(line: str) -> dict | None:
    match = re.match(r"^(.*?):(\d+): (unused \w+) '(.+?)'", line)
    if not match:
        return None
    return {"file": match.group(1), "line": int(match.group(2)), "type": match.group(3), "name": match.group(4)}


def load_whitelist(path=WHITELIST_PATH) -> set[tuple[str, str]]:
    entries = set()
    try:
        with open(path, encoding="utf-8") as f:
            for line in f:
                match = re.match(r"(unused \w+) '(.+?)'", line.strip())
                if match:
                    entries.add((match.group(1), match.group(2)))
    except FileNotFoundError:
        pass
    return entries


def filter_vulture_output(output: str) -> str:
    whitelist = load_whitelist()
    kept = []
    for line in output.splitlines():
        parsed = parse_vulture_line(line)
        # Testy: fixtures a parametry pytestu vypadají jako nevyužité
        if parsed and os.sep + "tests" + os.sep in parsed["file"]:
            continue
        if parsed and (parsed["type"], parsed["name"]) in whitelist:
            continue
        kept.append(line)
    return "\n".join(kept)


def run_tool(command: list[str]) -> str:
    try:
        result = subprocess.run(command, capture_output=True, text=True, check=False)
    except FileNotFoundError:
        return f"Nástroj {command[0]} není nainstalován (pip install -r dev-requirements.txt)"
    return result.stdout + result.stderr


# 🚀 Spuštění auditů
def run_audit():
    python_files = get_python_files()
    timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M")
    report_name = os.path.join("audit", f"audit_report_{timestamp}.txt")

    with open(report_name, "w", encoding="utf-8") as report:
        # 🔍 VULTURE
        vulture_output = filter_vulture_output(run_tool(["vulture", *python_files]))
        write_section(report, "🔍 VULTURE : nevyužitý kód", vulture_output)

        # 🧼 FLAKE8
        write_section(report, "🧼 FLAKE8 : styl a chyby", run_tool(["flake8", *python_files]))

        # 🧠 PYLINT (jedno volání, sdílená analýza importů)
        write_section(report, "🧠 PYLINT : hloubková analýza", run_tool(["pylint", *python_files]))

    print(f"✅ Audit dokončen. Výsledky najdeš v {report_name}")


# ▶️ Spusť audit
if __name__ == "__main__":
    run_audit()
