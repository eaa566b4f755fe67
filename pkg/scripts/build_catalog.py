#!/usr/bin/env python3
"""Regenerate src/binomsum/data/catalog.json from the transcribed identities below.

    python3 scripts/build_catalog.py [--out PATH]
"""

import argparse
import json
from fractions import Fraction as F
from pathlib import Path

E = []
def add(id, m, n, x, coeffs, rhs, ref, e=0, f=0, k0=0, status="verified", family=None, note="", max_digits=None):
    rec = {"id": id}
    if family: rec["family"] = family
    rec.update({"m": m, "n": n, "x": str(F(x)), "num_coeffs": [str(F(c)) for c in coeffs],
                "e": e, "f": f, "k0": k0, "rhs": rhs, "domain_note": note, "paper_ref": ref, "status": status})
    if max_digits: rec["max_digits"] = max_digits
    E.append(rec)

# C(2k,k) classics, instantiated at x = 1
add("arcsin-plus-x1", 2, 1, 1, ["1/4"], "(sqrt(3)+arcsin(1/2))/(3*sqrt(3))", "arcsin closed form for sum x^(2k)/C(2k,k), x=1", note="|x| < 2")
add("arcsin-minus-x1", 2, 1, -1, ["1/4"], "1/5-arcsinh(1/2)/(5*sqrt(5))", "arcsinh closed form for sum (-1)^k x^(2k)/C(2k,k), x=1", note="|x| < 2")
add("arcsin-squared-x1", 2, 1, 1, [1], "2*arcsin(1/2)^2", "sum x^(2k)/(k^2 C(2k,k)) = 2 arcsin^2(x/2), x=1", e=2, k0=1, note="|x| < 2")
add("c2k-log-quarter", 2, 1, "-16/5", [2, 3], "-5/18*log(5)", "C(2k,k) log family, n=1/4", family="C2K-LOG@1/4", note="(2n+1)^2 > 2")

# pi formulas from the introduction
add("gosper", 3, 1, "1/2", [-3, 25], "pi/2", "Gosper's identity", family="THM11-ARCTAN@-1")
P = [10996648, -196882274, 1031962795, -2942969225, 3125347237, -885673181]
add("bellard", 7, 2, "1/2", [6 * c for c in P], "740025*pi+20379280", "Bellard's C(7k,2k) formula, polynomial read in k", k0=1,
    note="printed as pi = (sum_{k>=1} 3P(k)/(2^(k-1) C(7k,2k)) - 20379280)/740025")
add("akp-8-4", 8, 4, "-1/4", [-89286, 3875948, -34970134, 110202472, -115193600], "11025*pi", "Almkvist-Krattenthaler-Petersson (8,4,-4,4) example")

# C(3k,k) arctan/log corollaries
add("c3-49k+1", 3, 1, "8/3", [1, 49], "81+16*sqrt(3)*pi", "C(3k,k) arctan form at x=-2", family="THM11-ARCTAN@-2")
add("c3-rem-inv-k", 3, 1, "8/3", [1], "2/7*(pi*sqrt(3)-log(3))", "C(3k,k) remark, sum 8^k/(k 3^k C(3k,k))", e=1, k0=1)
add("c3-rem-inv-k2", 3, 1, "8/3", [1], "(pi^2-3*log(3)^2)/6", "C(3k,k) remark, sum 8^k/(k^2 3^k C(3k,k))", e=2, k0=1)
cor = [
    (-1, "1/2", 275, -158, "6*log(2)-135"),
    (2, "-1/4", 728, -17, "-54-24*log(2)"),
    ("-1/2", "8/3", 1813, -2707, "9*(16*log(3)-171)"),
    (3, "-1/18", 5635, -1156, "54*log(2/3)-1215"),
    (4, "-1/48", 63050, -15959, "72*(4*log(3/4)-225)"),
    (5, "-1/100", 112216, -30847, "300*log(4/5)-31050"),
    (6, "-1/180", 615296, -176777, "270*(4*log(5/6)-657)"),
    (7, "-1/294", 710809, -209926, "441*(2*log(6/7)-477)"),
    (8, "-1/448", 2910050, -875807, "672*(4*log(7/8)-1305)"),
    (9, "-1/648", 2721250, -830317, "972*(2*log(8/9)-855)"),
    (10, "-1/900", 9490712, -2926289, "1350*(4*log(9/10)-2169)"),
    (11, "-1/1210", 7825423, -2432776, "1815*(2*log(10/11)-1341)"),
]
for n, x, a, b, rhs in cor:
    add(f"c3-log-n{str(F(n)).replace('/', '_')}", 3, 1, x, [b, a], rhs, f"C(3k,k) log corollary, n={n}",
        family=f"COR12@{n}", note="n < -1/3 or n > 1/c")

# C(4k,2k) with argument 1/x^2 and with 4/(x(1-x))
add("new-1", 4, 2, 1, [-1, 10], "4*sqrt(3)/27*pi", "C(4k,2k) arccot form at x=1", family="THM12-ARCCOT@1")
add("thm12-new1", 4, 2, 4, [0, 1], "(3*pi+8)/12", "C(4k,2k) arccot form at x=1/2", family="THM12-ARCCOT@1/2")
add("thm12-new-9", 4, 2, 9, [1, 14], "24*pi*sqrt(3)+64", "C(4k,2k) arccot form at x=1/3", family="THM12-ARCCOT@1/3")
add("thm12-new-9-4", 4, 2, "9/4", [-1, 22], "32/25*(4+27/sqrt(15)*arctan(sqrt(3/5)))", "C(4k,2k) arccot form at x=2/3", family="THM12-ARCCOT@2/3")
add("thm12-new3", 4, 2, "1/4", [-5, 14], "16/81*(log(2)-24)", "C(4k,2k) R form at x=2", family="THM12-R@2")
add("new2", 4, 2, -2, [-7, 30], "-(3*pi+64)/6", "C(4k,2k) R(x) form in the limit x -> -1", family="THM13-GEN@-1")

# log n
logn = [
    (2, "-1/18", 2890, -563, "-12*(log(2)+48)"),
    (3, "-1/3", 245, -17, "-24-9/2*log(3)"),
    (4, "-81/100", 77326, 8951, "40*(80-81*log(4))"),
    (5, "-64/45", 196, 73, "15*(3-log(5))"),
    (6, "-625/294", 245134, 181679, "84*(1456-375*log(6))"),
    (7, "-81/28", 2645, 3517, "7*(352-81*log(7))"),
    (8, "-2401/648", 127890, 316933, "144*(1584-343*log(8))"),
    (9, "-1024/225", 1156, 7031, "45*(115-24*log(9))"),
    (10, "-6561/1210", 51842, -3142679, "220*(2187*log(10)-10736)"),
    (11, "-625/99", 2209, -13421, "99/2*(125*log(11)-624)"),
    (12, "-14641/2028", 2354450, -8037191, "312*(3993*log(12)-20176)"),
    (13, "-5184/637", 19220, -46979, "91*(81*log(13)-413)"),
    (14, "-28561/3150", 3000515, -5794357, "420*(2197*log(14)-11280)"),
    (15, "-2401/240", 118579, -190573, "30*(1029*log(15)-5312)"),
    (16, "-50625/4624", 24174146, -33367199, "544*(10125*log(16)-52496)"),
    (17, "-16384/1377", 48020, -58117, "459*(64*log(17)-333)"),
    (18, "-83521/6498", 54371810, -58537799, "684*(14739*log(18)-76912)"),
    (19, "-6561/475", 608923, -589327, "95/2*(2187*log(19)-11440)"),
    (20, "-130321/8820", 36377094, -31893853, "840*(6859*log(20)-35952)"),
    (21, "-40000/2541", 584756, -467339, "231*(375*log(21)-1969)"),
    ("5/3", "-1/60", 27869, -6203, "-15*(416+3*log(5/3))"),
    ("7/5", "-1/315", 115943, -27691, "-105/2*(528+3*log(7/5))"),
    ("9/7", "-1/1008", 2016125, -491747, "-126*(3904+3*log(9/7))"),
]
# misprinted instances: (corrected a, corrected b, corrected rhs, what differs)
fixes = {
    8: (127690, 316933, "144*(1584-343*log(8))", "leading coefficient printed 127890, family gives 127690"),
    11: (2209, -13421, "33/2*(125*log(11)-624)", "prefactor printed 99/2, family gives 33/2"),
    14: (3000518, -5794357, "420*(2197*log(14)-11280)", "leading coefficient printed 3000515, family gives 3000518"),
    17: (48020, -58117, "153*(64*log(17)-333)", "prefactor printed 459, family gives 153"),
    20: (36373094, -31893853, "840*(6859*log(20)-35952)", "leading coefficient printed 36377094, family gives 36373094"),
    "7/5": (115943, -27691, "-105/2*(528+log(7/5))", "log term printed 3*log(7/5), family gives log(7/5)"),
}
for n, x, a, b, rhs in logn:
    tag = str(F(n)).replace('/', '_')
    if n in fixes:
        add(f"logn-{tag}-printed", 4, 2, x, [b, a], rhs, f"log n corollary, n={n} as typeset", status="known-typo",
            note=fixes[n][3])
        a, b, rhs = fixes[n][0], fixes[n][1], fixes[n][2]
        add(f"logn-{tag}", 4, 2, x, [b, a], rhs, f"log n corollary, n={n} with the misprint corrected",
            family=f"LOGN@{n}", note="1 < n < 21.2667; " + fixes[n][3])
    else:
        add(f"logn-{tag}", 4, 2, x, [b, a], rhs, f"log n corollary, n={n}", family=f"LOGN@{n}",
            note="1 < n < 21.2667")
add("logn-85_4-printed", 4, 2, "43046721/2693140", [-517115569199, 661704134402], "60520*(1594323*log(85/4)-8374544)",
    "log n corollary, n=85/4 as typeset", status="known-typo", max_digits=30,
    note="printed argument +43046721/2693140; the family gives (n-1)^4/(-n(n+1)^2) < 0")
add("logn-85_4", 4, 2, "-43046721/2693140", [-517115569199, 661704134402], "60520*(1594323*log(85/4)-8374544)",
    "log n corollary, n=85/4 with the sign of the argument restored", family="LOGN@85/4", max_digits=30,
    note="near the boundary: ratio 43046721/43090240")

# k(2k-1) denominators and quadratic numerators
t14 = [
    ("k2k1-c3-half", 3, 1, "1/2", [-2, 5], 1, 1, "pi/6"),
    ("k2k1-c3-8_3", 3, 1, "8/3", [-3, 7], 1, 1, "8*sqrt(3)/9*pi"),
    ("k2k1-c3-m1_4", 3, 1, "-1/4", [-11, 28], 1, 1, "-2*log(2)"),
    ("k2k1-c42-m1_3", 4, 2, "-1/3", [-2, 7], 1, 1, "-log(3)/4"),
    ("k2k1-c42-1", 4, 2, 1, [-3, 10], 1, 1, "2*sqrt(3)/9*pi"),
    ("k2k1-c42-4", 4, 2, 4, [-1, 3], 1, 1, "pi/2"),
    ("k2k1-c42-m2", 4, 2, -2, ["1/2", -3], 1, 1, "pi/4"),
    ("k2k1-c42-1_4", 4, 2, "1/4", [-3, 14], 1, 1, "2/3*log(2)"),
    ("quad-c42-4", 4, 2, 4, [1, 0, 12], 0, 0, "11/2*pi+50/3"),
    ("quad-c42-m2", 4, 2, -2, [0, 29, 126], 0, 0, "-2*pi-65/3"),
    ("quad-c42-1_4", 4, 2, "1/4", [0, -37, 70], 0, 0, "8/729*(46*log(2)+111)"),
]
for id, m, n, x, c, e, f, rhs in t14:
    note = "numerator (6k-1)(-2)^(k-1) stored as -(6k-1)/2 times (-2)^k" if id == "k2k1-c42-m2" else ""
    add(id, m, n, x, c, rhs, "k(2k-1) and k^2 theorem", e=e, f=f, k0=1, note=note)

# closed sums from the arccoth lemma and the beta function
add("c42-sum-1", 4, 2, 1, [1], "(45+25*pi*sqrt(3)-54*sqrt(5)*arctanh(1/sqrt(5)))/675", "arccoth lemma, x0=1", k0=1)
add("c42-sum-4", 4, 2, 4, [1], "(12+9*pi-4*sqrt(3)*arctanh(1/sqrt(3)))/36", "arccoth lemma, x0=4", k0=1)
add("c42-sum-9", 4, 2, 9, [1], "(189+98*pi*sqrt(3)-6*sqrt(21)*arctanh(sqrt(3/7)))/147", "arccoth lemma, x0=9", k0=1)
add("c42-sum-9_4", 4, 2, "9/4", [1], "9/55+12/55*(11/sqrt(15)*arctan(sqrt(3/5))-5/sqrt(33)*arctanh(sqrt(3/11)))", "arccoth lemma, x0=9/4", k0=1)
add("c42-sum-inv-k", 4, 2, 1, [1], "sqrt(3)/9*pi-2/5*sqrt(5)*log((1+sqrt(5))/2)", "1/k sum via the beta function, x0=1", e=1, k0=1)
add("c42-sum-inv-k-1_4", 4, 2, "1/4", [1], "2/sqrt(7)*arctan(1/sqrt(7))-log(2)/3", "1/k sum via the beta function, x0=1/4", e=1, k0=1)

# intermediates in the proofs of the k(2k-1) theorem
add("mid-12k-5", 4, 2, 4, [-5, 12], "(3*pi+4)/2", "intermediate sum (12k-5) 4^k/((2k-1) C(4k,2k))", f=1, k0=1)
add("mid-18k+1", 4, 2, -2, [1, 18], "-(3*pi+2)/2", "intermediate sum (18k+1)(-2)^k/((2k-1) C(4k,2k))", f=1, k0=1)
add("mid-42k-5", 4, 2, "1/4", [-5, 42], "16/9*log(2)+1/3", "intermediate sum (42k-5)/((2k-1) 4^k C(4k,2k))", f=1, k0=1)
tele = [
    ("tel-c42-4-f", 4, [5, -18, 12], 0, 1, "2"),
    ("tel-c42-4-ef", 4, [3, -14, 12], 1, 1, "2"),
    ("tel-c42-m2-f", -2, [2, -15, 18], 0, 1, "-1"),
    ("tel-c42-m2-ef", -2, [3, -17, 18], 1, 1, "-1"),
    ("tel-c42-1_4-f", "1/4", [25, -129, 126], 0, 1, "1"),
    ("tel-c42-1_4-ef", "1/4", [24, -127, 126], 1, 1, "1"),
]
for id, x, c, e, f, rhs in tele:
    add(id, 4, 2, x, c, rhs, "infinite limit of a finite telescoping identity", e=e, f=f, k0=1)

ids = [r["id"] for r in E]
assert len(ids) == len(set(ids))
ap = argparse.ArgumentParser()
ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src" / "binomsum" / "data" / "catalog.json"))
out = ap.parse_args().out
with open(out, "w") as fh:
    json.dump({"version": "1", "entries": E}, fh, indent=1)
print(f"{len(E)} entries -> {out}")
