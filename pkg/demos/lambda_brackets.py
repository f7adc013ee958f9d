"""
Lambda-brackets and the conformal axioms
=========================================

Load the Virasoro conformal algebra, compute a few brackets, and watch the
axiom checker catch a wrong structure constant.
"""
from confalg import builtin, check_all, parse_algebra, parse_element

V = builtin("virasoro")
L = V.gen("L")
print("[L_lam L]   =", V.bracket(L, L))

# sesquilinearity: a derivative on the left multiplies by -lam
DL = parse_element("D L", V)
print("[DL_lam L]  =", V.bracket(DL, L))
print("[L_lam DL]  =", V.bracket(L, DL))

for rep in check_all(V):
    print(rep.axiom, "pass" if rep.passed else "FAIL", *rep.notes)

# change the weight of L from 2 to 3: skew-symmetry breaks
bad = parse_algebra("""
algebra vir3 {
    param c;
    generator L : even;
    central C;
    bracket [L, L] = (D + 3*lam) L + (1/12)*lam^3*c*C;
}
""")
for rep in check_all(bad):
    if not rep.passed:
        first = rep.failures()[0]
        print(rep.axiom, "fails at", first.label, "residual", first.residual)

# the super case: signs (-1)^{p(a)p(b)} enter skew-symmetry and Jacobi
NS = builtin("neveu_schwarz")
G = NS.gen("G")
print("[G_lam G]   =", NS.bracket(G, G))
print("NS axioms:", all(r.passed for r in check_all(NS)))
