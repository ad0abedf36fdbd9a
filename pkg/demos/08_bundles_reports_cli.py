"""
Bundles, reports and the command line
=====================================

Writes a random table as a bundle directory, reloads it, produces the full set
of report files from Python, then does the same through the ``gvckit`` CLI.
"""

import subprocess
import sys
from pathlib import Path

import numpy as np

from gvckit import analyses, load_bundle, write_bundle
from gvckit.reports import write_reports
from gvckit.synthetic import random_table

out = Path("demo-out")
table = random_table(np.random.default_rng(6), 3, 2)
bundle = write_bundle(table, out / "bundle")
print("bundle files:", sorted(p.name for p in bundle.iterdir()))

reloaded = load_bundle(bundle)
manifest = write_reports(analyses.full_report(reloaded, tol=1e-6), out / "py-reports", ["csv"])
print(f"{len(manifest)} report files, first few:", [m["file"] for m in manifest[:4]])

cmd = [sys.executable, "-m", "gvckit.cli", "--out", str(out / "cli-reports"), "tiva", str(bundle)]
print("\n$", " ".join(cmd[2:]))
print(subprocess.run(cmd, capture_output=True, text=True, check=True).stdout)
