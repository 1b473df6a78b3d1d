# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython d-connection kernel; hot inner loop of the graph oracle.

Must stay behaviourally identical to ``_dsep_py.dconnected``.  Limited to
64 nodes (bitmask width); the Dag type caps node count well below that.
"""


def dconnected(int n, parents, children, int x, int y, unsigned long long z_mask):
    cdef unsigned long long par[64]
    cdef unsigned long long ch[64]
    cdef int i
    if n > 32:
        # stack bound below assumes <= 2n states x 2n pushes
        raise ValueError("kernel supports at most 32 nodes")
    for i in range(n):
        par[i] = parents[i]
        ch[i] = children[i]

    # ancestors of Z (reflexive)
    cdef unsigned long long anc_z = z_mask
    cdef unsigned long long new, low
    cdef int frontier[64]
    cdef int ftop = 0
    cdef unsigned long long m = z_mask
    cdef int b
    while m:
        low = m & (~m + 1)
        b = _bit_index(low)
        frontier[ftop] = b
        ftop += 1
        m ^= low
    while ftop > 0:
        ftop -= 1
        i = frontier[ftop]
        new = par[i] & ~anc_z
        anc_z |= new
        while new:
            low = new & (~new + 1)
            b = _bit_index(low)
            # frontier can hold at most n live entries per pass
            frontier[ftop] = b
            ftop += 1
            new ^= low

    # reachability over (node, direction) states
    cdef unsigned long long visited_up = 0
    cdef unsigned long long visited_down = 0
    cdef int stack[4160]
    cdef int top = 0
    cdef int w, d, state
    cdef unsigned long long bit, nbrs
    stack[top] = (x << 1)  # direction 0 = up
    top += 1
    while top > 0:
        top -= 1
        state = stack[top]
        w = state >> 1
        d = state & 1
        if w == y:
            return True
        bit = (<unsigned long long> 1) << w
        if d == 0:
            if visited_up & bit:
                continue
            visited_up |= bit
            if not (z_mask & bit):
                nbrs = par[w]
                while nbrs:
                    low = nbrs & (~nbrs + 1)
                    stack[top] = (_bit_index(low) << 1)
                    top += 1
                    nbrs ^= low
                nbrs = ch[w]
                while nbrs:
                    low = nbrs & (~nbrs + 1)
                    stack[top] = (_bit_index(low) << 1) | 1
                    top += 1
                    nbrs ^= low
        else:
            if visited_down & bit:
                continue
            visited_down |= bit
            if not (z_mask & bit):
                nbrs = ch[w]
                while nbrs:
                    low = nbrs & (~nbrs + 1)
                    stack[top] = (_bit_index(low) << 1) | 1
                    top += 1
                    nbrs ^= low
            if anc_z & bit:
                nbrs = par[w]
                while nbrs:
                    low = nbrs & (~nbrs + 1)
                    stack[top] = (_bit_index(low) << 1)
                    top += 1
                    nbrs ^= low
    return False


cdef inline int _bit_index(unsigned long long v):
    cdef int i = 0
    while v > 1:
        v >>= 1
        i += 1
    return i
