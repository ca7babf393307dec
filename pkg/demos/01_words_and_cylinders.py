# Reduced words, cylinders and the minimal index set of a multi-cylinder.
from freecyl.words import Alphabet, ReducedWord, extend, reduce_concat, invert
from freecyl.multicyl import (MultiCylinder, minimize, u_star, cylinders_equal,
                              move_remove_redundant, move_collapse_siblings)

F2 = Alphabet.of_rank(2)   # generators a, b; A and B are their inverses
w = ReducedWord.parse("aBA", F2)
print(w, len(w), invert(w))                          # aBA 3 abA
print(reduce_concat(w, ReducedWord.parse("ab", F2)))  # aBA.ab cancels down to a
print([str(x) for x in extend(ReducedWord.parse("bb", F2), 1)])  # the three children of bb

# a word set U stands for the union of the cylinders C_u, u in U
U = MultiCylinder.parse("{aba, abab, bba, bbb, bbA}", F2)
U1 = move_remove_redundant(U)     # abab sits under aba
print(U1)
U2 = move_collapse_siblings(U1)   # bba, bbb, bbA are all children of bb
print(U2)
print(minimize(U), u_star(U))     # both routes land on the same set

# two different word sets, one subset of the boundary
print(cylinders_equal(MultiCylinder.parse("{ab, abA}", F2), MultiCylinder.parse("{ab}", F2)))
