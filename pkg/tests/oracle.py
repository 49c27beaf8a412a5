"""Independent brute-force matcher used to cross-check the production one.

Deliberately naive and written from the definitions alone: enumerate every
injective assignment of pattern arrows to diagram arrows under every
injective circle map, then check direction, constraints, and cyclic order
explicitly by scanning rotations.  Keep this file free of any imports from
gdl.pattern internals beyond the public data types.
"""

import itertools

from gdl.pattern import ORDERED, UNCONSTRAINED


def _cyclic_order_ok(slot_positions, m):
    """slot_positions: list of (slot index, position) on one circle."""
    if len(slot_positions) <= 1:
        return True
    by_slot = [pos for _, pos in sorted(slot_positions)]
    k = len(by_slot)
    for rot in range(m):
        rotated = [(pos - rot) % m for pos in by_slot]
        if all(rotated[i] < rotated[i + 1] for i in range(k - 1)):
            return True
    return False


def brute_force_matchings(pattern, diagram):
    """Return a set of (circle_map, arrow_map) pairs, plus the weight sum."""
    found = set()
    total = 0
    k, n = pattern.num_circles, diagram.num_components
    if pattern.assignment_mode == ORDERED:
        if k > n:
            raise ValueError("ordered pattern wider than diagram")
        circle_maps = [tuple(range(k))]
    else:
        circle_maps = list(itertools.permutations(range(n), k))

    p_labels = sorted(pattern.arrow_slots)
    d_labels = sorted(diagram.arrows)
    for cmap in circle_maps:
        for image in itertools.permutations(d_labels, len(p_labels)):
            ok = True
            per_circle = {ci: [] for ci in range(k)}
            for pl, dl in zip(p_labels, image):
                (tc, ti), (hc, hi) = pattern.arrow_slots[pl]
                arrow = diagram.arrows[dl]
                want = pattern.constraint_map[pl]
                if arrow.tail.component != cmap[tc] or arrow.head.component != cmap[hc]:
                    ok = False
                    break
                if want != UNCONSTRAINED and arrow.sign != want:
                    ok = False
                    break
                per_circle[tc].append((ti, arrow.tail.position))
                per_circle[hc].append((hi, arrow.head.position))
            if not ok:
                continue
            for ci in range(k):
                m = len(diagram.components[cmap[ci]])
                if not _cyclic_order_ok(per_circle[ci], m):
                    ok = False
                    break
            if not ok:
                continue
            weight = 1
            for dl in image:
                weight *= diagram.sign_of(dl)
            amap = tuple(sorted(zip(p_labels, image)))
            found.add((cmap, amap))
            total += weight
    return found, total
