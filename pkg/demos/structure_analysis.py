"""
Derived series, centre and ideals
==================================

Structural analysis over rational numbers: specialize the parameters, then
compute spans of lambda-coefficients as C[D]-modules in canonical form.
"""
from confalg import builtin, centre, classify, derived_series, ideal_closure

vir = builtin("virasoro").specialize({"c": 1})
series = derived_series(vir)
print("virasoro derived series:", [str(t) for t in series.terms], series.status)

Z = centre(vir, 3)
print("centre:", Z.module, "(stable)" if Z.stable else "(changed at next bound)")

print("closure of L:", ideal_closure([vir.gen("L")], vir))
print("closure of C:", ideal_closure([vir.gen("C")], vir))

# a solvable example: [a_lam a] = lam C
heis = builtin("heisenberg_conf")
print("heisenberg series:", [str(t) for t in derived_series(heis).terms])

for name, values in [("virasoro", {"c": 1}), ("current_sl2", {"k": 1}),
                     ("neveu_schwarz", {"c": 1}), ("heisenberg_conf", {}), ("abelian_2", {})]:
    rep = classify(builtin(name).specialize(values))
    print(f"{name:16s} -> {rep.verdict}")
