import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = Path(__file__).resolve().parent.parent / "demos"


@pytest.mark.parametrize("script,args", [
    ("three_triangles.py", []),
    ("rule_reductions.py", []),
    ("maximal_clique_graph.py", []),
    ("chordal_scaling.py", ["2000", "4000"]),
])
def test_demo_runs(script, args):
    proc = subprocess.run([sys.executable, str(DEMOS / script), *args], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip()
