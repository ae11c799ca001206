"""
The divbound command
====================

The same operations from the shell. Here they are driven through ``run`` so
the script is self-contained.
"""

# %%
import tempfile
from pathlib import Path

from divbound.cli import run

tmp = Path(tempfile.mkdtemp())
(tmp / "p.csv").write_text("0.5,0.5\n")
(tmp / "q.json").write_text("[0.25, 0.75]")

run(["compute", "--measure", "triangular", "--p", str(tmp / "p.csv"), "--q", str(tmp / "q.json")])
run(["compute", "--measure", "phi_s:0.5", "--p", str(tmp / "p.csv"), "--q", str(tmp / "q.json")])

# %%
run(["table", "--r", "0.6666667", "--R", "2", "--s", "2"])

# %%
code = run(["fuzz", "--dims", "2", "4", "--trials", "20", "--conc", "1", "--s", "2"])
print("exit code", code)
