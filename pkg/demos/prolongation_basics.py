"""Walkthrough: building graded algebras and prolonging them.

Run as `python3 demos/prolongation_basics.py` after installing the
package. Every number printed here is exact.
"""

from tanaka import (
    G0Spec,
    GradedLieAlgebra,
    GradedSpace,
    make_algebra,
    order_and_bound,
    prolong,
    resolve_g0,
)


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("The flat plane: abelian m = R^2 with all of gl(2)")
alg = make_algebra("abelian2")
g0 = resolve_g0(G0Spec("gl"), alg)
result = prolong(alg, g0, max_degree=3)
print(f"g0 dimension: {len(result.g0)}")
print(f"levels g^1..g^3: {result.dims}")
print(f"status: {result.status.kind} (never closes; the dims keep growing)")

banner("Rigid geometry: the orthogonal choice closes immediately")
alg = make_algebra("abelian3")
result = prolong(alg, resolve_g0(G0Spec("so"), alg), max_degree=3)
order, bound = order_and_bound(result)
print(f"order: {order}")
print(f"symmetry bound: dim(M) + sum of level dims = {bound}")

banner("Conformal structures sit one step higher")
result = prolong(alg, resolve_g0(G0Spec("co"), alg), max_degree=3)
order, bound = order_and_bound(result)
print(f"order: {order}, dim g^1 = {result.dim_g(1)}, bound = {bound}")

banner("A genuinely graded example: the Heisenberg algebra")
heis = make_algebra("heisenberg3")
print(f"degrees: {heis.space.degrees}, dims: "
      f"{[heis.space.dim(d) for d in heis.space.degrees]}")
result = prolong(heis, resolve_g0(G0Spec("der0"), heis), max_degree=3)
print(f"g0 = all degree-0 derivations, dimension {len(result.g0)}")
print(f"levels g^1..g^3: {result.dims} (contact growth, truncated)")

banner("Custom algebras come from a space and a bracket table")
space = GradedSpace.make({-1: ["x", "y"], -2: ["z"], -3: ["w"]})
custom = GradedLieAlgebra.from_bracket_dict(space, {
    ("x", "y"): {"z": 1},
    ("x", "z"): {"w": 1},
})
full = prolong(custom, resolve_g0(G0Spec("der0"), custom), max_degree=6)
print(f"all degree-0 derivations: dims {full.dims} (keeps growing)")
rigid = prolong(custom, resolve_g0(G0Spec("zero"), custom), max_degree=6)
order, bound = order_and_bound(rigid)
print(f"trivial g0: order {order}, bound {bound} (no symmetries beyond m itself)")
