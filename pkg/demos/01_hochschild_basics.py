"""
Hochschild differential, cup product and bracket on polynomial operators
========================================================================

"""

from hochkit import parse_operator, hochschild_delta, cup, gerstenhaber, mu
from hochkit.hochschild import associativity_defect, hochschild_delta_via_bracket

# an operator is a polynomial-coefficient sum of tensor products of partials
d2 = parse_operator("D[2]")
print("delta(D[2])            =", hochschild_delta(d2))

# the second derivative fails the Leibniz rule by exactly -2 d(a) d(b)
print("via the bracket route  =", hochschild_delta_via_bracket(d2))

# vector fields are derivations, so their coboundary vanishes
X = parse_operator("x2*D[1,0] + x1^2*D[0,1]")
print("delta(X)               =", hochschild_delta(X))

# cup products of derivations are cocycles as well
XY = cup(X, parse_operator("D[0,1]"))
print("X cup d2               =", XY)
print("delta(X cup d2)        =", hochschild_delta(XY))

# the bracket with mu reproduces delta, and [mu, mu] = 0
print("[mu, mu]               =", gerstenhaber(mu(2), mu(2)))

# a deformed product mu + t*P: the associativity defect read two ways
nu = mu(1) + parse_operator("D[1|1]")
half_bracket, assoc = associativity_defect(nu)
print("1/2 [nu, nu]           =", half_bracket)
print("nu o1 nu - nu o2 nu    =", assoc)
