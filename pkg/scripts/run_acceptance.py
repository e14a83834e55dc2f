"""Run the acceptance criteria and print their PASS/FAIL lines."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-s", "-p", "no:cacheprovider",
                           str(ROOT / "tests" / "test_acceptance.py")],
                          cwd=ROOT, capture_output=True, text=True)
    lines = [l for l in proc.stdout.splitlines() if l.startswith(("PASS ", "FAIL "))]
    print("\n".join(dict.fromkeys(lines)))
    sys.exit(proc.returncode)
