"""Faithful covariant representations on Krein spaces, plus the CLI."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

import kreinlab
from kreinlab import KreinSpace, krein_operator_algebra, represent_krein_algebra

alg, alpha = krein_operator_algebra(KreinSpace.signature_form(1, 1))
rep = represent_krein_algebra(alg, alpha)
print("Krein space dims", rep.dims)
print(rep.certificates.summary())

x = np.array([[1.0, 2.0], [3.0, 4.0]])
J = rep.J[0]
err = np.abs(rep(alg.star(x)) - J @ rep(x).conj().T @ J).max()
print("|pi(x*) - J pi(x)^+ J| =", err)

fixtures = Path(kreinlab.__file__).parent / "fixtures"
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "r.json"
    code = subprocess.call([sys.executable, "-m", "kreinlab.cli", "represent-algebra",
                            "--input", str(fixtures / "m2_krein.json"), "--report", str(out)])
    print("cli exit", code, "verdict", json.loads(out.read_text())["verdict"])
