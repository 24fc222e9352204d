#!/usr/bin/env python3
"""Energy trends on configurations that have bound states.

Prints the lowest admissible energy as q, n and the centrifugal radius r_e
vary for an s-wave and a p-wave well, which makes the monotonic trends of the
solver visible where reference tables cannot be matched.
"""
import numpy as np

from dirac_aim.spectrum import ProblemConfig, solve_bound_states


def lowest(cfg):
    states = solve_bound_states(cfg)
    return states[0].E if states else float("nan")


def main():
    base = ProblemConfig(M=5.0, V0=20.0, V1=-3.0, alpha=0.5, q=1.0, r_e=1.0, D=3, n=0, ell_override=0.0)
    print("# s-wave, E versus q")
    for q in np.round(np.arange(0.2, 1.41, 0.2), 2):
        print(f"q={q:.1f}  E={lowest(base.replace(q=float(q))):.6f}")
    print("# s-wave, E versus n")
    for n in range(4):
        print(f"n={n}  E={lowest(base.replace(n=n)):.6f}")
    print("# p-wave, E versus r_e")
    for r_e in (1.5, 2.0, 2.5, 3.0):
        print(f"r_e={r_e:g}  E={lowest(base.replace(ell_override=1.0, r_e=r_e)):.6f}")


if __name__ == "__main__":
    main()
