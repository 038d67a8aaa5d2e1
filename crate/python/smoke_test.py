#!/usr/bin/env python3
"""Smoke test for the fuzzy_spectra_py extension module.

Builds the cdylib with cargo if needed, loads it straight from the target
directory, and exercises the main types and operations. Exits nonzero on
the first failure.
"""

import math
import pathlib
import shutil
import subprocess
import sys
import sysconfig
import tempfile

REPO = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    try:
        import fuzzy_spectra_py  # already installed

        return fuzzy_spectra_py
    except ImportError:
        pass

    candidates = [
        REPO / "target" / profile / "libfuzzy_spectra_py.so"
        for profile in ("release", "debug")
    ]
    lib = next((c for c in candidates if c.exists()), None)
    if lib is None:
        subprocess.run(
            ["cargo", "build", "-p", "fuzzy-spectra-py"], cwd=REPO, check=True
        )
        lib = candidates[1]

    ext = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = pathlib.Path(tempfile.mkdtemp(prefix="fuzzy_spectra_py_"))
    shutil.copy2(lib, stage / f"fuzzy_spectra_py{ext}")
    sys.path.insert(0, str(stage))
    import fuzzy_spectra_py

    return fuzzy_spectra_py


def expect(cond, msg):
    if not cond:
        raise AssertionError(msg)


def main():
    fz = load_module()

    # circle: identity suite, spectrum, band structure
    circle = fz.FuzzyCircle(2, 8.0)
    expect(circle.dim() == 5, "circle dim")
    checks, ok = circle.verify(1e-12)
    expect(ok, f"circle identity suite failed: {checks}")
    # the Λ=2, k=8 matrix element ⟨ψ₂, ξ⁺ψ₁⟩ = √1.25/√2
    row = circle.xi_plus()[4]
    expect(
        abs(row[3][0] - math.sqrt(1.25) / math.sqrt(2)) < 1e-12,
        "circle band coefficient",
    )
    expect(abs(circle.r_squared_predicted(0) - 1.0) < 1e-12, "circle R2 at m=0")
    realized = fz.FuzzyCircle.from_uso3_realization(2, 8.0)
    diff = max(
        abs(a[0] - b[0]) + abs(a[1] - b[1])
        for ra, rb in zip(circle.xi_plus(), realized.xi_plus())
        for a, b in zip(ra, rb)
    )
    expect(diff < 1e-12, "uso3 realization mismatch")

    # sphere: identity suite, harmonics, parity
    k = fz.k_for("lambda2", 3)
    expect(abs(k - 144.0) < 1e-12, "k rule")
    sphere = fz.FuzzySphere(3, k)
    expect(sphere.dim() == 16, "sphere dim")
    checks, ok = sphere.verify(1e-12)
    expect(ok, f"sphere identity suite failed: {checks}")
    expect(
        abs(sphere.r_squared_predicted(0) - (1.0 + 1.0 / k)) < 1e-14,
        "sphere R2 l=0",
    )
    y00 = sphere.fuzzy_harmonic(0, 0)
    expect(
        abs(y00[0][0][0] - 1.0 / math.sqrt(4 * math.pi)) < 1e-12,
        "Ŷ₀⁰ normalization",
    )
    expect(abs(sphere.harmonic_hs_norm(2, 1)) <= 1.0 + 1e-10, "HS norm bound")
    par = sphere.parity()
    x, px = sphere.x_cartesian(), par.x_cartesian()
    flip = max(
        abs(a[0] + b[0]) + abs(a[1] + b[1])
        for xi, pxi in zip(x, px)
        for ra, rb in zip(xi, pxi)
        for a, b in zip(ra, rb)
    )
    expect(flip < 1e-12, "parity does not flip x̄")

    # convergence scans
    rows = fz.circle_convergence([(1, 1.0, 0.0)], [(1, 1.0, 0.0)], [2, 4, 6], "prop33")
    expect(rows[-1]["norm"] < rows[0]["norm"] and rows[-1]["norm"] < 1e-2, "circle scan")
    expect(all(abs(r["edge_norm"] - 1.0) < 1e-12 for r in rows), "circle edge")
    rows = fz.sphere_convergence(
        [(1, 0, 1.0, 0.0)], [(0, 0, 1.0, 0.0)], [2, 3, 4], "prop43"
    )
    expect(rows[-1]["norm"] < rows[0]["norm"], "sphere scan")
    expect(all(r["edge_norm"] >= 0.5 for r in rows), "sphere edge")

    # Madore baseline: exact FS algebra, parity-violating
    _, ok, pv = fz.madore(3, 1e-12)
    expect(ok and pv > 0.1, "madore")

    # radial cross-check
    ev = fz.radial_eigenvalues(3, 2, 1e6, 1, n_points=3000)
    expect(abs(ev[0] - 6.0) < 0.05, f"radial E(l=2) = {ev[0]}")
    cut = fz.radial_cutoff(3, 1e6, 5)
    expect(cut["levels_ok"] and cut["analytic_ok"], "radial cutoff")
    me = fz.radial_matrix_element(1e6, 0)
    expect(me["pass"], f"radial matrix element: {me}")
    prof = fz.radial_profile(3, 0, 1e6)
    expect(prof["width_rel_error"] < 0.01, "radial profile width")

    print("fuzzy_spectra_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
