"""Every admissible outcome for S^1 x S^2 x S^4 with the trivial action.

Each line is one pattern of differentials; for each we print the
Poincare polynomial of the orbit space, the nilpotence exponent of x and
the theorem case it instantiates.
"""
from freeinv import Involution, build_fiber_algebra
from freeinv.cases import match_theorem
from freeinv.fiber import SphereTriple
from freeinv.patterns import admissible_set
from freeinv.results import extract_presentation, poincare

t = SphereTriple(1, 2, 4)
g = Involution.identity()
outcomes = admissible_set(build_fiber_algebra(t), g)
print(f"{len(outcomes)} admissible patterns\n")

for pat, E in outcomes:
    R = extract_presentation(E)
    m = match_theorem(t, g, pat, R, E)
    print(pat.descriptor())
    print(f"    H^*   {poincare(E).as_list()}   x^{R.Q} = 0   {m.case_id} ({m.variant})")

# A closer look at the richest one: the full presentation with its
# undetermined extension coefficients a_i.
pat, E = max(outcomes, key=lambda pe: (extract_presentation(pe[1]).Q, poincare(pe[1]).total()))
print("\n" + pat.descriptor())
print(extract_presentation(E))
