"""Groebner bases, membership and radical membership on a small example."""

from quotfit import Ideal, PolyRing, buchberger, ideal_equal, radical_member

R = PolyRing(["u1", "u2", "u3"])
f = R.parse("u1*u2 - u3")
I = Ideal(R, [f ** 2])

print("GB of (f^2):", [str(g) for g in buchberger(I)])
print("f in (f^2)?     ", I.contains(f))
print("f in rad(f^2)?  ", radical_member(f, I))
print("(f) == (2f, u1*f)?", ideal_equal(Ideal(R, [f]), Ideal(R, [2 * f, R.parse("u1") * f])))
