"""Pure-Python subset scanner, the fallback for the compiled kernel.

Both kernels walk every node subset of size >= 2 as a bitmask and keep the
ones with a unique externally-entered node, a unique externally-exiting
node (distinct from the first), and a weakly connected interior.  They must
return identical results in identical (ascending mask) order.
"""

from __future__ import annotations

__all__ = ["scan_masks"]


def scan_masks(
    n: int, succ_list: list[int], pred_list: list[int], initial: int
) -> list[tuple[int, int, int]]:
    """Return (mask, entry_index, exit_index) for every simple member set.

    ``succ_list[i]`` / ``pred_list[i]`` are bitmasks of node ``i``'s direct
    successors and predecessors with self-loops already stripped, so a node
    whose edges all point at itself reads as a source and a sink here.
    ``initial`` marks the node treated as externally entered regardless of
    its predecessors.
    """
    if n < 2:
        return []
    if n > 62:
        raise ValueError("scan_masks supports at most 62 states")
    full = (1 << n) - 1
    und = [s | p for s, p in zip(succ_list, pred_list)]
    out: list[tuple[int, int, int]] = []

    for mask in range(3, full + 1):
        if mask.bit_count() < 2:
            continue
        entered = exited = 0
        entry = exit_ = -1
        ok = True
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            s = bit.bit_length() - 1
            if (pred_list[s] & ~mask & full) or s == initial or pred_list[s] == 0:
                entered += 1
                if entered > 1:
                    ok = False
                    break
                entry = s
            if (succ_list[s] & ~mask & full) or succ_list[s] == 0:
                exited += 1
                if exited > 1:
                    ok = False
                    break
                exit_ = s
        if not ok or entered != 1 or exited != 1 or entry == exit_:
            continue

        reached = mask & -mask
        while True:
            grown = reached
            rest = reached
            while rest:
                bit = rest & -rest
                rest ^= bit
                grown |= und[bit.bit_length() - 1] & mask
            if grown == reached:
                break
            reached = grown
        if reached == mask:
            out.append((mask, entry, exit_))
    return out
