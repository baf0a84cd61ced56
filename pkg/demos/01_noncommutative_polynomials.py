"""A tour of the exact noncommutative polynomial engine.

Polynomials live over Z[m, n] in words mixing the generators x, y with
applications of additive map symbols (T, T0, D, F, Fc).  Everything is
exact; equality is decided by normalization.
"""

from mnjordan import freealg as fa
from mnjordan.parsing import parse_poly, parse_scalar

law = parse_poly("(m+n)*T[x^2] - m*T[x]*x - n*x*T0[x]")
print("defining law of the generalized centralizer:")
print("   ", law)

print("\nT0 is a two-sided centralizer, so contexts collapse into it:")
print("    normalize:", fa.normalize(law))

print("\nlinearize: substitute x -> x+y and subtract the pure instances")
lin = fa.normalize(
    fa.substitute(law, "x", parse_poly("x+y"))
    - law
    - fa.substitute(law, "x", parse_poly("y"))
)
print("   ", lin)

print("\nthe even part in x of a polynomial (a polarization step):")
p = parse_poly("n*T[x]*x*y + m*T[y]*x + T[x*y*x]")
print("    even part of", p)
print("    is", fa.polarize_even(p, "x"))

print("\nderivation rules: Leibniz expansion plus centrality of the values")
print("    D[x*y]      ->", fa.normalize(parse_poly("D[x*y]")))
print("    D[x]*y      ->", fa.normalize(parse_poly("D[x]*y")))
print("    x*y*D[x] - y*x*D[x] ->", fa.normalize(parse_poly("x*y*D[x] - y*x*D[x]")),
      " (a central-valued derivation kills commutators)")

print("\ntorsion cancellation is exact division in every coefficient:")
w = parse_poly("n*(2*m+n)*T[x]*y*T[x] + m*n*(2*m+n)*x*y")
print("   ", w)
print("    / n*(2m+n) =", fa.exact_divide(w, parse_scalar("n*(2*m+n)")))

print("\ncommutators expand like this:")
c = fa.commutator(parse_poly("T[x]"), parse_poly("x^2"))
print("    [T(x), x^2] =", c)
