import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("argv", [
    ["pole_diagram.py", "--radius", "10", "--out", "{tmp}"],
    ["stokes_table.py", "--M", "1"],
    ["watson_sweep.py", "--tau", "0.1", "--n-max", "2"],
])
def test_script_runs(tmp_path, argv):
    args = [a.format(tmp=tmp_path) for a in argv]
    out = subprocess.run([sys.executable, str(SCRIPTS / args[0]), *args[1:]],
                         capture_output=True, text=True, timeout=120)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip()
