import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize(
    "script, args, needle",
    [
        ("reproduce_appendix.py", [], "all within tolerance: True"),
        ("figure1_qplot.py", ["--n", "5", "--count", "51"], "z\tQ"),
        ("scan_conjectures.py", ["--n-max", "8"], '"summary"'),
        ("constants_report.py", ["--tol", "1e-12"], "C_phi"),
        ("log_shift_spectra.py", ["--sizes", "4", "6", "--dps", "30"], "complex pairs: 1"),
    ],
)
def test_script_runs(script, args, needle):
    proc = subprocess.run([sys.executable, str(SCRIPTS / script), *args], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert needle in proc.stdout
