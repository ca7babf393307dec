# The image of a cylinder under an automorphism is usually not a cylinder.
from pathlib import Path

from freecyl.automorphism import load_automorphism, apply, size, tight_cancellation, empirical_cancellation
from freecyl.image import dual_map, dual_map_set, image_formula, plan
from freecyl.multicyl import MultiCylinder
from freecyl.oracle import verify_image
from freecyl.words import ReducedWord

phi = load_automorphism(Path(__file__).with_name("phi0.aut"))   # a -> aba, b -> ba
F2 = phi.alphabet
u = ReducedWord.parse("ba", F2)

print("S =", size(phi))
b = tight_cancellation(phi)
print("C(phi) =", b.exact_fwd, " C(phi^-1) =", b.exact_bwd, " (S^2 =", b.certified_fwd, ")")
print("search at depth 2 finds", empirical_cancellation(phi, 2).empirical_fwd)

# the naive guess C_{phi(u)} is wrong
guess = MultiCylinder([apply(phi, u)], F2)
print(guess, verify_image(phi, u, guess))          # {baaba} False

M = dual_map(phi, u)
print(M, verify_image(phi, u, M))                  # {baa, baB} True

# pulling back with phi^-1 returns exactly C_u
print(dual_map_set(phi.inverse(), M))

# the closed formula needs k = k1 + k2 extra letters; with these constants it is huge
consts = plan(phi, b)
print(consts)
try:
    image_formula(phi, u, consts)
except Exception as e:
    print(type(e).__name__, e)
