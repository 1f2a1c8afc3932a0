"""The same analysis from the command line.

Writes a tabulated-count file, then runs a few ``ordinalq`` subcommands.
Equivalent shell usage::

    ordinalq identify between --table edu.csv
    ordinalq test nonsd1 --table edu.csv --alpha 0.05
    ordinalq bayes --table edu.csv --event sd1 --seed 7 --json report.json
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from ordinalq.dataio import write_table
from ordinalq.datasets import health_sample

tmp = Path(tempfile.mkdtemp())
table = tmp / "edu.csv"
write_table(table, health_sample("high_edu_2006"), health_sample("low_edu_2006"))
print(table.read_text())


def ordinalq(*args):
    cmd = [sys.executable, "-m", "ordinalq", *args]
    print("$ ordinalq", " ".join(args))
    out = subprocess.run(cmd, capture_output=True, text=True)
    print(out.stdout + out.stderr, end="")
    print(f"(exit code {out.returncode})\n")


ordinalq("identify", "between", "--table", str(table))
ordinalq("cs", "between", "--table", str(table), "--alpha", "0.10", "--seed", "1")
ordinalq("test", "nonsd1", "--table", str(table))
ordinalq("bayes", "--table", str(table), "--event", "sd1", "--seed", "7", "--json", str(tmp / "report.json"))
ordinalq("estimate", "--table", str(tmp / "missing.csv"))

doc = json.loads((tmp / "report.json").read_text())
print("JSON report keys:", list(doc))
