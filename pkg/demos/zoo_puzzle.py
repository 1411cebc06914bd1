"""
The zoo puzzle by brute force
=============================

Every child's guess is a permutation of eight animals in four mated pairs.
Boys square to the identity, girls to the all-mates swap T, and two
children are compatible when their commutator is T.
"""

from ftr import zoo

# the worked family
for name, P in zoo.WITNESSES.items():
    print(f"{name:5s} {zoo.format_cycles(P, fixed=True):28s} {zoo.classify(P):5s} score {zoo.score(P)}")
print("mutually compatible:", zoo.is_family(zoo.WITNESSES.values()))

# the search over S8
solution = zoo.max_family()
print(solution.candidates, "candidates:", solution.boys, "boys,", solution.girls, "girls")
print(solution.summary())
print(len(solution.families), "optimal families; the first:")
for P, kind in solution.families[0].members:
    print(" ", kind, zoo.format_cycles(P))

# dropping the mixed-gender rule does not allow a sixth child
print("any gender:", zoo.max_family(require_mixed=False).size)
