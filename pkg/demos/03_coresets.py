"""Walkthrough: epsilon-core-sets, from greedy construction to the exact
minimum size, ending with the ambiguous-center pitfall in boxes.
"""

import numpy as np

from homothetics import Container, reflect
from homothetics.containment import min_containment
from homothetics.coresets import (
    extract_zero_coreset,
    greedy_coreset,
    optimal_coreset_size,
    validate_coreset,
)
from homothetics.instances import (
    box_ambiguity_instance,
    random_pointset,
    regular_simplex,
    standard_container,
)

print("=== Greedy core-sets shrink big clouds to a handful of points ===")
P = random_pointset(500, 3, seed=11)
ball = Container.ball(3)
for eps in (0.5, 0.25, 0.1, 0.02):
    cs = greedy_coreset(P, ball, eps)
    print(
        f"eps={eps:<5} -> {len(cs.indices)} points, achieved eps "
        f"{cs.eps_achieved:.4f}, radius {cs.radius:.4f}"
    )
full = min_containment(P, ball).rho
print(f"(full radius over all 500 points: {full:.4f})")

print()
print("=== Zero-core-sets: the full radius from at most d+1 points ===")
z = extract_zero_coreset(P, ball)
print(f"indices {z.indices}, radius {z.radius:.6f} vs full {full:.6f}")

print()
print("=== Minimum sizes meet the dimension-free ball bound ===")
for eps in (0.1, 0.25, 0.5, 1.0):
    bound = int(np.ceil(1 / (2 * eps + eps * eps))) + 1
    size = optimal_coreset_size(P.subset(range(24)), ball, eps)
    print(f"eps={eps:<5} exact size {size} <= bound {bound}")

print()
print("=== No dimension-free size for general containers ===")
# covering the simplex with its reflection needs about d/(1+eps) points
# no matter how large eps < 1 is allowed to be
for d in (3, 4, 5, 6):
    P_d, T = regular_simplex(d)
    neg = reflect(T)
    for eps in (0.25, 0.9):
        size = optimal_coreset_size(P_d, neg, eps)
        bound = int(np.ceil(d / (1 + eps))) + 1
        print(f"d={d} eps={eps:<5} size {size} (bound {bound}, met exactly)")

print()
print("=== The ambiguous-center pitfall ===")
P = box_ambiguity_instance(3, tau=1.0)
box = standard_container("box", 3)
pair = [len(P) - 2, len(P) - 1]
print("the vertical pair is a perfect (eps = 0) core-set:",
      validate_coreset(P, box, pair, 0.0))
print("committing to the solver's center fails even at eps = 0.9:",
      not validate_coreset(P, box, pair, 0.9, require_center_conform=True, fixed_center=True))
print("searching the full center set fixes it at eps = 0:",
      validate_coreset(P, box, pair, 0.0, require_center_conform=True))
print("(the pair admits a whole square of valid centers; only one of them")
print(" also covers the far corner points, and nothing in the pair alone")
print(" says which.)")
