"""Pure-Python d-connection kernel (bitmask reachability).

Twin of the optional Cython kernel in ``_dsep_cy.pyx``; both expose the
same ``dconnected`` signature and must return identical answers.  Graphs
are encoded as per-node parent/children bitmasks over node indices.
"""

UP = 0
DOWN = 1


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ancestor_mask(n, parents, seed_mask):
    """Reflexive-transitive parent closure of the nodes in ``seed_mask``."""
    anc = seed_mask
    frontier = list(_bits(seed_mask))
    while frontier:
        i = frontier.pop()
        new = parents[i] & ~anc
        anc |= new
        frontier.extend(_bits(new))
    return anc


def dconnected(n, parents, children, x, y, z_mask):
    """True iff there is a d-connecting path from node x to node y given Z.

    ``parents[i]`` / ``children[i]`` are bitmasks of the parents/children of
    node i.  Standard reachability formulation: the ball travels up (toward
    parents) or down (toward children); a collider bounces back up only if
    it is an ancestor of Z.
    """
    anc_z = ancestor_mask(n, parents, z_mask)
    visited_up = 0
    visited_down = 0
    stack = [(x, UP)]
    while stack:
        w, d = stack.pop()
        if w == y:
            return True
        bit = 1 << w
        if d == UP:
            if visited_up & bit:
                continue
            visited_up |= bit
            if not z_mask & bit:
                for p in _bits(parents[w]):
                    stack.append((p, UP))
                for c in _bits(children[w]):
                    stack.append((c, DOWN))
        else:
            if visited_down & bit:
                continue
            visited_down |= bit
            if not z_mask & bit:
                for c in _bits(children[w]):
                    stack.append((c, DOWN))
            if anc_z & bit:
                for p in _bits(parents[w]):
                    stack.append((p, UP))
    return False
