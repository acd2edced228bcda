#!/usr/bin/env python3
"""Regenerate crates/core/data/knot_table.json from the KnotInfo database.

Requires the `database_knotinfo` and `sympy` packages. The output stores
polynomials in the crate's canonical string grammar (ascending exponents).
"""
import json
import sys
from fractions import Fraction

import sympy
from database_knotinfo import link_list

NAMES = (["0_1", "3_1", "4_1", "5_1", "5_2"]
         + ["6_%d" % i for i in range(1, 4)]
         + ["7_%d" % i for i in range(1, 8)]
         + ["8_%d" % i for i in range(1, 22)])


def fmt_exp(e):
    e = Fraction(e)
    return str(e.numerator) if e.denominator == 1 else "%d/%d" % (e.numerator, e.denominator)


def fmt_laurent(terms, var="t"):
    """terms: dict exponent(Fraction) -> int coefficient."""
    items = sorted((e, c) for e, c in terms.items() if c != 0)
    if not items:
        return "0"
    out = []
    for i, (e, c) in enumerate(items):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else "%s^%s" % (var, fmt_exp(e))
            body = mono if mag == 1 else "%d%s" % (mag, mono)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def laurent_terms(expr, var):
    x = sympy.Symbol(var)
    expr = sympy.expand(sympy.sympify(expr.replace("^", "**"), locals={var: x}))
    terms = {}
    for term in sympy.Add.make_args(expr):
        c, rest = term.as_coeff_Mul()
        if rest == 1:
            e = 0
        elif rest == x:
            e = 1
        else:
            assert rest.is_Pow and rest.base == x, rest
            e = rest.exp
        e = Fraction(int(sympy.numer(e)), int(sympy.denom(e)))
        terms[e] = terms.get(e, 0) + int(c)
    return terms


def symmetric_positive(terms):
    lo, hi = min(terms), max(terms)
    shift = -(lo + hi) / 2
    out = {e + shift: c for e, c in terms.items()}
    if out[max(out)] < 0:
        out = {e: -c for e, c in out.items()}
    return out


def main():
    rows = {k["name"]: k for k in link_list()[1:80]}
    table = []
    for name in NAMES:
        k = rows[name]
        pd = json.loads(k["pd_notation"]) if k["pd_notation"] else []
        braid = json.loads(k["braid_notation"]) if k["braid_notation"] else []
        jones = laurent_terms(k["jones_polynomial"], "t")
        alex = symmetric_positive(laurent_terms(k["alexander_polynomial"], "t"))
        table.append({
            "name": name,
            "pd": " ".join("X[%s]" % ",".join(map(str, x)) for x in pd) if pd else "O",
            "braid": " ".join(("s%d" % b) if b > 0 else ("s%d^-1" % -b) for b in braid),
            "jones": fmt_laurent(jones),
            "alexander": fmt_laurent(alex),
            "determinant": int(k["determinant"]) if name != "0_1" else 1,
            "signature": int(k["signature"]),
            "genus": int(k["three_genus"]),
            "fibered": (k["fibered"] == "Y") or name == "0_1",
        })
    json.dump({"source": "KnotInfo (database_knotinfo)", "knots": table},
              sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
