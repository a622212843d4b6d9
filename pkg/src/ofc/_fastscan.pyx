# cython: boundscheck=False, wraparound=False
"""Compiled subset scanner; mirrors ofc._scan_py.scan_masks exactly."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def scan_masks(int n, succ_list, pred_list, int initial):
    """Return (mask, entry_index, exit_index) for every simple member set."""
    if n < 2:
        return []
    if n > 62:
        raise ValueError("scan_masks supports at most 62 states")

    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t* succ = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t* pred = <uint64_t*>malloc(n * sizeof(uint64_t))
    cdef uint64_t* und = <uint64_t*>malloc(n * sizeof(uint64_t))
    if succ == NULL or pred == NULL or und == NULL:
        free(succ); free(pred); free(und)
        raise MemoryError()

    cdef int i, s, entry, exit_, entered, exited, ok
    for i in range(n):
        succ[i] = succ_list[i]
        pred[i] = pred_list[i]
        und[i] = succ[i] | pred[i]

    out = []
    cdef uint64_t mask, bit, reached, grown, rest
    try:
        mask = 3
        while mask <= full:
            if __builtin_popcountll(mask) >= 2:
                entered = 0; exited = 0; entry = -1; exit_ = -1; ok = 1
                rest = mask
                while rest:
                    bit = rest & (~rest + 1)
                    rest ^= bit
                    s = __builtin_popcountll(bit - 1)
                    if (pred[s] & ~mask & full) or s == initial or pred[s] == 0:
                        entered += 1
                        if entered > 1:
                            ok = 0
                            break
                        entry = s
                    if (succ[s] & ~mask & full) or succ[s] == 0:
                        exited += 1
                        if exited > 1:
                            ok = 0
                            break
                        exit_ = s
                if ok and entered == 1 and exited == 1 and entry != exit_:
                    reached = mask & (~mask + 1)
                    while True:
                        grown = reached
                        rest = reached
                        while rest:
                            bit = rest & (~rest + 1)
                            rest ^= bit
                            grown |= und[__builtin_popcountll(bit - 1)] & mask
                        if grown == reached:
                            break
                        reached = grown
                    if reached == mask:
                        out.append((mask, entry, exit_))
            mask += 1
        return out
    finally:
        free(succ); free(pred); free(und)
