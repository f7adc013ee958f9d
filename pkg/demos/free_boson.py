"""
The free boson vertex algebra
==============================

States are polynomials in x1, x2, ... with x_n of weight n.  Every mode
b_(n) is computed exactly; the identities below are checked on small states.
"""
from confalg import (
    VACUUM, Cutoff, FockState, extract_conformal, fock_lambda_bracket, mode_action,
    parse_state, theorem_ideal_check, translation, verify_borcherds, verify_skew_vertex,
    verify_wick,
)

x1 = FockState.monomial(1)
print("x1_(-1) 1 =", mode_action(x1, -1, VACUUM))
print("x1_(1) x1 =", mode_action(x1, 1, x1))
print("x1_(-2) 1 =", mode_action(x1, -2, VACUUM), "  T x1 =", translation(x1))

s = parse_state("x1^2 + 3*x2")
for n in range(-2, 3):
    print(f"(x1^2)_({n}) ({s}) =", mode_action(parse_state("x1^2"), n, s))

print("[x1_lam x1] =", fock_lambda_bracket(x1, x1))
print("[x2_lam x1^2] =", fock_lambda_bracket(FockState.monomial(2), FockState.monomial(1, 1)))

cut = Cutoff(12)
a, b, c = parse_state("x2"), parse_state("x1^2"), parse_state("x1*x3")
print(verify_borcherds(a, b, c, 2, -3, cut))
print(verify_wick(a, b, c, cut))
print(verify_skew_vertex(a, b, Cutoff(10)))

# C1 is central for the lambda-bracket but x1_(-1) 1 = x1 leaves it
rep = theorem_ideal_check([VACUUM], Cutoff(8, 4))
for chk in rep.checks:
    print(chk.status, chk.name)

rep = theorem_ideal_check([x1], Cutoff(10, 4))
print("J = [I,V] dims by weight:", rep.J_dims)
print(rep.checks[0].status, rep.checks[0].name)
print(rep.caveat)

ext = extract_conformal(Cutoff(6), 2)
print("conformal checks on weight <= 2:", [(c.name, c.status) for c in ext.checks])
