"""Macaulay representations and the bound n^<d> on Hilbert function growth."""

from quotfit import macaulay_growth, macaulay_rep

for n, d in [(5, 2), (10, 3), (27, 4), (3, 3)]:
    rep = macaulay_rep(n, d)
    body = " + ".join(f"C({m},{i})" for m, i in rep.terms())
    print(f"{n} = {body}   ->   {n}^<{d}> = {macaulay_growth(n, d)}")

# below the degree the bound is flat, which is why a quotient of constant
# length n has nowhere to grow once d >= n
print([macaulay_growth(4, d) for d in range(4, 9)])
