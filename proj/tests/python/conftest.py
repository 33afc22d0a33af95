import json
import os
import pathlib
import shutil
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schema_dir():
    return pathlib.Path(os.environ.get("CERESA_SCHEMA_DIR", ROOT / "schema"))


@pytest.fixture(scope="session")
def load_schema(schema_dir):
    def load(name):
        return json.loads((schema_dir / f"{name}.schema.json").read_text())

    return load


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("CERESA_CLI") or shutil.which("ceresa")
    if not exe:
        pytest.skip("ceresa executable not found (set CERESA_CLI)")

    def run(*args, check=True):
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
        if check and proc.returncode not in (0, 2):
            raise AssertionError(f"ceresa {args} exited {proc.returncode}: {proc.stderr}")
        return proc

    return run
