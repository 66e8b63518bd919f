"""Antipodal on one factor, trivial on the others.

The orbit space is RP^k times two spheres, so its cohomology is known
without any spectral sequence.  Here we compute it both ways.
"""
from freeinv import SphereTriple
from freeinv.oracle import compare_with_engine

triples = [(1, 2, 4), (2, 3, 5), (2, 2, 2)]

print(f"{'triple':<12}{'factor':<8}{'cellular':<34}engine")
for t in triples:
    for factor in (1, 2, 3):
        res = compare_with_engine(SphereTriple(*t), factor)
        print(f"{str(t):<12}{factor:<8}{str(res['oracle']):<34}{res['engine']}"
              + ("" if res["match"] else "   <-- mismatch"))

# The engine only sees the single transgression d_{k+1}(generator) = t^{k+1};
# the Leibniz rule propagates it to every product class.
