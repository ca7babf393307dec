# Double cylinders: pairs of boundary points whose geodesic runs through u, then v.
from pathlib import Path

from freecyl.automorphism import load_automorphism
from freecyl.double import double_image, double_image_closed, split_unit, is_rectangle
from freecyl.oracle import verify_double_image, same_double_set
from freecyl.words import ReducedWord

phi = load_automorphism(Path(__file__).with_name("phi0.aut"))
F2 = phi.alphabet
W = lambda s: ReducedWord.parse(s, F2)

print(split_unit("a", F2))        # [1, a] cut into rectangles [y, a], y != a

# anti-prefix words: the double cylinder is a plain product
print(is_rectangle(W("ba"), W("ab")))
R = double_image(phi, W("ba"), W("ab"))
print(R)
print(verify_double_image(phi, W("ba"), W("ab"), R))

# comparable words two letters apart: translate, recurse, translate back
R2 = double_image(phi, W("ba"), W("baab"))
print(len(R2), verify_double_image(phi, W("ba"), W("baab"), R2))
print(same_double_set(R2, double_image_closed(phi, W("ba"), W("baab")), F2))
