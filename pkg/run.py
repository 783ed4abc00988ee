#!/usr/bin/env python3
"""
Moebius Loci - Startup Script
Check the environment, then hand the command line to app.main.
"""

import importlib.util
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent
REQUIREMENTS = ROOT / "requirements.txt"
MINIMUM_PYTHON = (3, 8)

# distribution name -> import name, where they differ
IMPORT_NAMES = {"python-dotenv": "dotenv"}
RUNTIME_ONLY = {"pytest"}


def python_is_supported(version=None):
    """True for interpreters that can run the classifier."""
    return tuple(version or sys.version_info)[:2] >= MINIMUM_PYTHON


def required_modules(path=REQUIREMENTS):
    """Import names of the runtime packages pinned in requirements.txt."""
    modules = []
    for line in Path(path).read_text().splitlines():
        name = line.split("#")[0].split("==")[0].strip()
        if name and name not in RUNTIME_ONLY:
            modules.append(IMPORT_NAMES.get(name, name))
    return modules


def missing_modules(modules):
    return [m for m in modules if importlib.util.find_spec(m) is None]


def create_directories():
    """Create output and log directories if they don't exist."""
    for directory in ("logs", "output"):
        (ROOT / directory).mkdir(parents=True, exist_ok=True)


def main(argv=None):
    """Main startup function."""
    if not python_is_supported():
        print(f"❌ Python {'.'.join(map(str, MINIMUM_PYTHON))} or newer is required, found {sys.version.split()[0]}")
        return 1
    missing = missing_modules(required_modules())
    if missing:
        print(f"❌ Missing packages: {', '.join(missing)}")
        print(f"   pip install -r {REQUIREMENTS}")
        return 1
    create_directories()
    from app import main as app_main
    return app_main(argv)


if __name__ == "__main__":
    try:
        sys.exit(main(sys.argv[1:]))
    except KeyboardInterrupt:
        print("\n👋 Moebius Loci stopped.")
        sys.exit(130)
