#!/usr/bin/env python3
"""Independent hand-walk of the three golden classification examples.

This script deliberately shares no code with the ssred package: it recomputes
the three reference outputs from first principles with plain integers and
fractions, following the case table by hand.  The acceptance suite runs it as a
subprocess and compares its JSON against the library, so a bug in the package
cannot silently agree with itself here.

Scope: rational L only (all three golden inputs are rational), p >= 5 prime.
"""

import json
import math
import sys
from fractions import Fraction


def vp(x, p):
    """p-adic valuation of a nonzero Fraction; None stands for +infinity."""
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def harmonic(n):
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def walk(p, k, L):
    r = k - 2
    if r % 2 == 1:
        lo, hi = (r - 1) // 2, (r + 1) // 2
    else:
        lo, hi = (r - 2) // 2, (r + 2) // 2
    shifted = L - harmonic(lo) - harmonic(hi)
    v = vp(shifted, p)  # rational L: valuation is an integer or infinity

    # Walk the case table.  For rational L the valuation nu is never a strict
    # half-integer, so the odd-r self-dual line triggers only via nu >= 1/2,
    # i.e. nu >= 1 here.
    record = {"p": p, "k": k, "r": r}
    record["nu"] = {"infinite": True} if v is None else {"num": v, "den": 1}

    if r % 2 == 1:
        terminal = v is None or v >= 1
        n_boundaries = (r - 1) // 2
    else:
        terminal = v is None or v >= 1
        n_boundaries = r // 2
    # boundary indices i satisfy nu == i - r/2 exactly (integer only if r even)
    boundary_i = None
    if v is not None and r % 2 == 0 and 1 <= v + r // 2 <= n_boundaries:
        boundary_i = v + r // 2

    if not terminal and boundary_i is None:
        # interior of an interval: smallest i with nu < i - r/2, clamped to 1
        # (2*nu < 2i - r  <=>  i > nu + r/2)
        i = max(1, math.floor(v + Fraction(r, 2)) + 1)
        record["case"] = "interval"
        record["i"] = i
        c = (r + 1) + (i - 1) * (p - 1)
        record["result"] = {
            "type": "irreducible",
            "omega2_exponent_raw": c,
            "omega2_exponent": c % (p * p - 1),
        }
    elif boundary_i is not None:
        i = boundary_i
        record["case"] = "boundary"
        record["i"] = i
        lam_arg = (-1) ** i * i * math.comb(r + 1 - i, i) * Fraction(p) ** (r // 2 - i) * shifted
        lam = lam_arg.numerator * pow(lam_arg.denominator, -1, p) % p
        record["result"] = {
            "type": "reducible",
            "lambda": {"field": "fp", "coords": [lam], "nonresidue": None},
            "lambda_inv": {"field": "fp", "coords": [pow(lam, -1, p)], "nonresidue": None},
            "omega_exponents": [(r + 1 - i) % (p - 1), i % (p - 1)],
        }
    elif r % 2 == 1:
        # odd-weight terminal: trace of lambda + lambda^{-1} determined
        i = (r + 1) // 2
        record["case"] = "self_dual_terminal"
        record["i"] = i
        # trace argument (-1)^i * i * shifted / p^{1/2}: with rational L and
        # nu >= 1 the residue is 0, giving X^2 + 1
        trace = 0
        d = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)
        # roots of X^2 - trace*X + 1 = X^2 + 1: +-sqrt(-1)
        sq = [x for x in range(p) if (x * x + 1) % p == 0]
        if sq:
            lam, lam_inv = sorted([sq[0], (-sq[0]) % p])
            roots = [
                {"field": "fp", "coords": [lam], "nonresidue": None},
                {"field": "fp", "coords": [lam_inv], "nonresidue": None},
            ]
        else:
            w = next(x for x in range(1, p) if x * x % p == (-pow(d, -1, p)) % p)
            w = min(w, p - w)
            roots = [
                {"field": "fp2", "coords": [0, w], "nonresidue": d},
                {"field": "fp2", "coords": [0, (-w) % p], "nonresidue": d},
            ]
        record["result"] = {
            "type": "self_dual",
            "trace": trace,
            "lambda": roots[0],
            "lambda_inv": roots[1],
            "omega_exponents": [i % (p - 1), i % (p - 1)],
        }
    else:
        # even-weight terminal interval i = (r+2)/2 (nu > 0, nu = 1 included)
        i = (r + 2) // 2
        record["case"] = "even_last_interval"
        record["i"] = i
        c = (r + 1) + (i - 1) * (p - 1)
        record["result"] = {
            "type": "irreducible",
            "omega2_exponent_raw": c,
            "omega2_exponent": c % (p * p - 1),
        }
    return record


GOLDEN_INPUTS = [
    (7, 5, Fraction(0)),
    (5, 4, Fraction(3, 2)),
    (5, 4, Fraction(1, 2)),
]


def main():
    records = [walk(p, k, L) for p, k, L in GOLDEN_INPUTS]
    json.dump(records, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
