"""
Differential operators as composites of vector fields
=====================================================

"""

from hochkit import parse_operator
from hochkit.multiop import is_diff_op_of_order_at_most
from hochkit.sder import expand_word, sder_decompose

# the order is tested through nested commutators with coordinate functions
D = parse_operator("x1*D[1,0] + x1^2*D[1,1] - 3*D[0,2]")
for r in range(4):
    print(f"order <= {r}:", is_diff_op_of_order_at_most(D, r))

# every constant-free operator of order r is a sum of words of at most r vector fields
dec = sder_decompose(D, 2)
print(dec)
for scalar, word in dec.words:
    print(f"  {scalar} * ({word})  expands to  {expand_word(word)}")

# expanding the words gives the operator back exactly
print("round trip:", dec.expand(2) == D)
