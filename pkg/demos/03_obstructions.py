"""Three ways a proposed pattern can fail, and the index bounds of one that works."""
from freeinv import Involution, build_fiber_algebra
from freeinv.patterns import DifferentialPattern, check_admissible
from freeinv.results import index_report


def show(triple, text, action=None):
    g = Involution.from_descriptor(action) if action else Involution.identity()
    v, E = check_admissible(DifferentialPattern.parse(text), build_fiber_algebra(triple), g)
    print(f"{triple} {action or 'trivial'}\n  {text or '(no differentials)'}\n  -> {v.status}")
    if v.witness:
        print(f"     witness {v.witness}")
    return E


# d(c) hits t*ab early, then a and b both transgress: the Leibniz rule
# forces d of a boundary to be nonzero, so no such derivation exists.
show((2, 2, 5), "d2(c)=t^2*ab;d3(a)=t^3*1;d3(b)=t^3*1")

# With the swap b <-> c the class bc = b * g(b) can never be hit.
show((1, 2, 2), "d5(bc)=t^5*1", "a=a,b=c,c=b")

# Nothing dies: the orbit space would be infinite-dimensional.
show((1, 2, 2), "", "a=a,b=c,c=b")

print()
E = show((1, 2, 4), "d2(c)=t^2*ab;d4(ac)=t^4*b;d6(bc)=t^6*a;d8(abc)=t^8*1")
rep = index_report(E)
print(f"  cohomology index s = {rep.cohomology_index_s}")
print(f"  first differential into row 0 on page r = {rep.volovikov_page_r}")
for line in rep.conclusions:
    print(f"  {line}")
print(f"  note: {rep.discrepancy['note']}")
