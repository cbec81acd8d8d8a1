"""Smoke test for the extcat_py extension.

Build and run from the repository root:

    cargo build -p extcat-py --release
    cp target/release/libextcat_py.so python/extcat_py.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import extcat_py as ec


def check(name, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}".rstrip())
    if not ok:
        raise SystemExit(1)


def main():
    for family in ("elliptic", "hyperbolic", "parabolic"):
        curve = ec.integrate(family, 1.0, 0.0, math.pi / 6, s_max=2.0, step=1e-3)
        check(f"{family} integrate", len(curve) > 100 and curve.status == "completed", repr(curve))
        x, y, z = curve.embedded()[-1]
        check(f"{family} on hyperboloid", abs(x * x - y * y - z * z - 1.0) < 1e-10)

        worst = 0.0
        for row, k in zip(curve.samples()[::50], curve.kappa()[::50]):
            _, u, v, du, dv, _, _ = row
            worst = max(worst, abs(k - ec.catenary_kappa(family, u, v, du, dv)))
        check(f"{family} law", worst < 1e-9, f"{worst:.1e}")

        mesh = ec.build_mesh(family, curve.subsample(30), n_theta=12)
        check(f"{family} minimal surface", mesh.max_abs_h() < 1e-8, f"max|H|={mesh.max_abs_h():.1e}")
        check(f"{family} mesh size", len(mesh.vertices()) == mesh.rows * mesh.cols == 360)
        check(f"{family} closed H", abs(curve.mean_curvature(family, 10)) < 1e-8)

    # Unit-speed coordinate circle u = 1 in the semi-geodesic chart.
    k = ec.kappa_semigeo(1.0, 0.0, 0.0, 1.0 / math.cosh(1.0), 0.0, 0.0)
    check("coordinate curve curvature", abs(abs(k) - math.tanh(1.0)) < 1e-12, f"{k:.6f}")

    chain = ec.Chain("elliptic", (1.0, -0.5), (1.0, 0.5), 32, 1.1 * 1.5431 * 1.0)
    out, report = ec.relax(chain)
    check("relax converged", report.status == "converged", repr(report))
    check("relax length", abs(out.length() - chain.target_length) < 1e-8)
    check("relax energy", out.energy() < chain.energy())
    check("relax endpoints", out.nodes[0] == chain.nodes[0] and out.nodes[-1] == chain.nodes[-1])

    try:
        ec.integrate("elliptic", -0.5, 0.0, 0.0)
    except ec.DomainError:
        check("domain error", True)
    else:
        check("domain error", False)
    try:
        ec.integrate("spherical", 1.0, 0.0, 0.0)
    except ec.UsageError:
        check("usage error", True)
    else:
        check("usage error", False)

    print("smoke test passed")


if __name__ == "__main__":
    main()
