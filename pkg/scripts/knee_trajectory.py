"""Integrate the knee ODE near its equilibrium and check the jet Lagrangian.

Writes ``trajectory.csv`` (t, wx, wy, wz, JLS) and prints the largest JLS on
interior samples plus the Euler-Lagrange residual halving ratio.

    python3 scripts/knee_trajectory.py --dt 1e-7 --steps 200 --out out/traj
"""
import argparse
from pathlib import Path

import numpy as np

from jetknee.gaitpipeline import integrate
from jetknee.jetcore import JetState, euler_lagrange_residual, jls_lagrangian
from jetknee.vectorfield import knee_field, symbolic_jacobian


def equilibrium(field, iters=20):
    J = symbolic_jacobian(field)
    x = np.zeros(field.dim)
    for _ in range(iters):
        x = x - np.linalg.solve(J(x), field(x))
    return x


def el_norm_at(field, x0, dt, steps, t_probe):
    tr = integrate(field, x0, dt, steps)
    k = int(round(t_probe / dt))
    return np.linalg.norm([euler_lagrange_residual(field, tr.times, tr.states, i)[k] for i in range(field.dim)])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dt", type=float, default=1e-7)
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--perturb", type=float, nargs=3, default=[1e-2, -1e-2, 1e-3],
                    metavar=("DX", "DY", "DZ"), help="offset from the equilibrium")
    ap.add_argument("--out", type=Path, default=Path("out/trajectory"))
    args = ap.parse_args(argv)

    f = knee_field()
    eq = equilibrium(f)
    x0 = eq + np.array(args.perturb)
    tr = integrate(f, x0, args.dt, args.steps)
    v = np.gradient(tr.states, args.dt, axis=0, edge_order=2)
    jls = np.array([jls_lagrangian(f, JetState(t, x, w)) for t, x, w in zip(tr.times, tr.states, v)])

    args.out.mkdir(parents=True, exist_ok=True)
    np.savetxt(args.out / "trajectory.csv", np.column_stack([tr.times, tr.states, jls]),
               delimiter=",", header="t,wx,wy,wz,jls", comments="", fmt="%.12g")

    eig = np.linalg.eigvals(symbolic_jacobian(f)(eq))
    print(f"equilibrium        {np.array2string(eq, precision=4)}")
    print(f"Jacobian eigvals   {np.array2string(np.sort(np.abs(eig))[::-1], precision=3)}")
    print(f"max JLS (interior) {jls[1:-1].max():.3e}")
    coarse = el_norm_at(f, x0, 2e-6, 20, 2e-5)
    fine = el_norm_at(f, x0, 1e-6, 40, 2e-5)
    print(f"EL residual        {coarse:.3e} -> {fine:.3e}, ratio {coarse / fine:.4f}")
    print(f"wrote {args.out / 'trajectory.csv'}")


if __name__ == "__main__":
    main()
