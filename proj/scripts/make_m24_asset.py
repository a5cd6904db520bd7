#!/usr/bin/env python3
"""Convert the GAP dump of the M24 character table into data/m24_classes.json.

usage: gap -q scripts/m24_table.g > m24.out
       python3 scripts/make_m24_asset.py m24.out data/m24_classes.json
"""
import json
import re
import sys
from fractions import Fraction

import sympy

LABELS = ["1", "23", "45a", "45b", "231a", "231b", "252", "253", "483",
          "770a", "770b", "990a", "990b", "1035a", "1035b", "1035c", "1265",
          "1771", "2024", "2277", "3312", "3520", "5313", "5544", "5796", "10395"]


def fnv1a64(text):
    h = 0xcbf29ce484222325
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001b3) & 0xFFFFFFFFFFFFFFFF
    return "%016x" % h


def canonical(doc):
    body = {"classes": doc["classes"], "irreps": doc["irreps"]}
    return json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def rat(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def reduce_cyclotomic(coeffs, n):
    # coeffs are w.r.t. 1, z, ..., z^(n-1); reduce mod Phi_n
    x = sympy.Symbol("x")
    p = sympy.Poly(list(reversed(coeffs)), x, domain="QQ")
    r = p.rem(sympy.Poly(sympy.cyclotomic_poly(n, x), x, domain="QQ"))
    deg = sympy.totient(n)
    out = [Fraction(0)] * deg
    for (k,), c in r.terms():
        out[k] = Fraction(int(c.p), int(c.q))
    return out


def parse(path):
    text = open(path).read()
    blocks = {}
    for key in ("NAMES", "ORDERS", "CENT", "DEGREES"):
        m = re.search(key + r"\s*\[(.*?)\]", text, re.S)
        blocks[key] = [t.strip().strip('"') for t in m.group(1).split(",")]
    shapes = {}
    for m in re.finditer(r"SHAPE (\w+) (\[.*?\] \])", text, re.S):
        shapes[m.group(1)] = json.loads(m.group(2).replace("\n", ""))
    vals = {}
    for m in re.finditer(r"VAL (\d+) (\d+) (\d+) \[(.*?)\]", text, re.S):
        i, k, n = int(m.group(1)), int(m.group(2)), int(m.group(3))
        coeffs = [int(t) for t in m.group(4).replace("\n", "").split(",")]
        vals[(i, k)] = (n, coeffs)
    return blocks, shapes, vals


def main(src, dst):
    blocks, shapes, vals = parse(src)
    names = blocks["NAMES"]
    classes = []
    for k, name in enumerate(names, start=1):
        chars = []
        for i in range(1, len(names) + 1):
            n, coeffs = vals[(i, k)]
            if n == 1:
                chars.append(rat(coeffs[0]))
            else:
                chars.append({"order": n, "coeffs": [rat(c) for c in reduce_cyclotomic(coeffs, n)]})
        classes.append({
            "name": name,
            "element_order": int(blocks["ORDERS"][k - 1]),
            "cycle_shape": shapes[name],
            "centralizer_order": int(blocks["CENT"][k - 1]),
            "characters": chars,
        })
    irreps = [{"label": LABELS[i], "degree": int(d)} for i, d in enumerate(blocks["DEGREES"])]
    doc = {"version": "M24-ATLAS-1", "classes": classes, "irreps": irreps}
    doc["checksum"] = "fnv1a64:" + fnv1a64(canonical(doc))
    with open(dst, "w") as f:
        json.dump({"version": doc["version"], "checksum": doc["checksum"],
                   "classes": classes, "irreps": irreps}, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
