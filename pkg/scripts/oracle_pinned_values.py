"""High-precision oracle for the pinned scalar values used in the tests.

Evaluates every quantity from its defining formula with mpmath at 50 digits,
without importing the package.  Run it to regenerate tests/data/oracle_values.json:

    python scripts/oracle_pinned_values.py --write tests/data/oracle_values.json
"""
import argparse
import json

import mpmath as mp

mp.mp.dps = 50


def f(t, alpha):
    t = mp.mpf(t)
    if t == 0:
        return mp.mpc(0)
    return mp.exp(mp.mpc(1, alpha) * mp.log(t))


def omega(x, alpha):
    norm = mp.sqrt(mp.fsum(abs(mp.mpc(v)) ** 2 for v in x))
    return [mp.mpc(v) * f(mp.log(norm / abs(mp.mpc(v))), alpha) if v != 0 else mp.mpc(0) for v in x]


def l2(v):
    return mp.sqrt(mp.fsum(abs(z) ** 2 for z in v))


def znorm(x, y, alpha):
    om = omega(x, alpha)
    return l2(x) + l2([mp.mpc(b) - o for b, o in zip(y, om)])


def values():
    ln_sqrt2 = mp.log(mp.sqrt(2))
    f_val = f(ln_sqrt2, 1)
    z11 = znorm([1, 1], [0, 0], 1)
    e1, e2 = [1, 0], [0, 1]
    defect = [a - b - c for a, b, c in zip(omega([1, 1], 1), omega(e1, 1), omega(e2, 1))]
    return {
        "ln_sqrt2": float(ln_sqrt2),
        "f1_ln_sqrt2_re": float(f_val.real),
        "f1_ln_sqrt2_im": float(f_val.imag),
        "f1_at_0.34657359_re": float(f(mp.mpf("0.34657359"), 1).real),
        "f1_at_0.34657359_im": float(f(mp.mpf("0.34657359"), 1).imag),
        "znorm_11_00_alpha1": float(z11),
        "quasilinearity_e1_e2_alpha1": float(l2(defect) / (l2(e1) + l2(e2))),
        "quasi_triangle_e1_e2_alpha1": float(znorm([1, 1], [0, 0], 1) / (znorm(e1, [0, 0], 1) + znorm(e2, [0, 0], 1))),
        "multiplier_10_on_11_alpha1": float(znorm([1, 0], [0, 0], 1) / z11),
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--write", help="write the values as JSON to this path")
    args = ap.parse_args()
    vals = values()
    text = json.dumps(vals, indent=2, sort_keys=True) + "\n"
    if args.write:
        with open(args.write, "w") as fh:
            fh.write(text)
    print(text, end="")
