"""Tour of the Hessian-nilpotent constructions.

Every known way to manufacture Hessian-nilpotent polynomials here starts
from isotropic vectors (<a, a> = 0 under the bilinear pairing) or from a
doubling substitution z -> u + i*v.  The script builds one example of each
construction, verifies the nilpotency verdict, and shows the small-matrix
trace identity that explains why the sums of powers work.
"""

from hesnil import (
    IsotropicSet,
    PolyVector,
    bilinear,
    crit2_check,
    format_poly,
    gr,
    is_hn,
    parse,
    pg_construction,
    ph_construction,
    sample_isotropic,
    ug_construction,
    w_construction,
    w_tilde_construction,
)

I = gr(0, 1)

print("== isotropic vectors ==")
xi = IsotropicSet(4, [(1, I, 0, 0), (0, 0, 1, I)], pairwise_orthogonal=True)
for v in xi:
    print(" ", tuple(str(c) for c in v), "with <a, a> =", bilinear(v, v))

print("\n== sums of powers of orthogonal isotropic forms ==")
p = w_construction(xi, 3)
print("P =", format_poly(p))
print("Hessian-nilpotent?", is_hn(p).is_hn)

print("\nMixed degrees work too (family m contributes degree m + 1):")
fams = [IsotropicSet(4, [xi.vectors[0]]), IsotropicSet(4, [xi.vectors[1]])]
print("P =", format_poly(w_tilde_construction(fams, 3)))

print("\n== composition with an arbitrary outer polynomial ==")
g = parse("z1^3 + z1*z2")
print("g =", format_poly(g), "composed with the two forms gives")
print("P =", format_poly(ug_construction(g, xi)))
print("Hessian-nilpotent?", is_hn(ug_construction(g, xi)).is_hn)

print("\n== variable doubling z -> u + i*v ==")
g = parse("z1^2*z2 + z2^3")
p = pg_construction(g)
print("g =", format_poly(g), "  ->  P =", format_poly(p, style="uv"))
print("g is not Hessian-nilpotent, but P always is:",
      (not is_hn(g).is_hn) and is_hn(p).is_hn)

print("\n== the map construction P_H = sum v_i H_i(u + i*v) ==")
h = PolyVector([parse("z2^2", arity=2), parse("0", arity=2)])
p, jacobian_nilpotent = ph_construction(h)
print("H = (z2^2, 0)  ->  P_H =", format_poly(p, style="uv"))
print("Jacobian of H nilpotent?", jacobian_nilpotent,
      "| P_H Hessian-nilpotent?", is_hn(p).is_hn)
h_bad = PolyVector([parse("z1^2", arity=2), parse("0", arity=2)])
p_bad, jnp = ph_construction(h_bad)
print("H = (z1^2, 0) breaks both at once:", jnp, "and", is_hn(p_bad).is_hn)

print("\n== the small-matrix trace identity ==")
family = IsotropicSet(3, [(1, I, 0), (1, 0, I)])
print("For P a sum of d-th powers of isotropic forms, the n x n Hessian")
print("traces collapse to traces of a k x k matrix over the family:")
for m, (lhs, rhs) in enumerate(crit2_check(family, 3, 2), start=1):
    print(f"  m = {m}: Tr Hes^m = {format_poly(lhs)} "
          f"(small matrix gives {format_poly(rhs)})")

print("\nRandomly sampled families satisfy the same identity:")
for seed in (1, 2, 3):
    fam = sample_isotropic(4, 3, seed)
    ok = all(lhs == rhs for lhs, rhs in crit2_check(fam, 3, 3))
    print(f"  seed {seed}: traces agree for m <= 3: {ok}")
