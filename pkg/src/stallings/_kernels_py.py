"""Pure-Python versions of the hot kernels.

Same API as the compiled ``_kernels`` extension; ``_backend`` picks one at
import time.  Letters are nonzero ints, ``+i`` for generator ``i`` and ``-i``
for its inverse.  A permutation tuple is stored flat: ``flat[j*k + x]`` is
the image of point ``x`` under generator ``j + 1``.
"""

from itertools import permutations, product


def free_reduce(letters):
    stack = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def canonical_action(flat, n, k):
    """BFS-relabel a permutation action from point 0.

    Returns the relabelled flat tuple, or None when the action is not
    transitive.  Neighbours are explored in letter order a, A, b, B, ...
    """
    inv = [0] * (n * k)
    for j in range(n):
        base = j * k
        for x in range(k):
            inv[base + flat[base + x]] = x
    new = [-1] * k
    order = [0]
    new[0] = 0
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for j in range(n):
            for y in (flat[j * k + x], inv[j * k + x]):
                if new[y] < 0:
                    new[y] = len(order)
                    order.append(y)
    if len(order) < k:
        return None
    out = [0] * (n * k)
    for j in range(n):
        base = j * k
        for x in range(k):
            out[base + new[x]] = new[flat[base + x]]
    return tuple(out)


def enumerate_canonical_actions(n, k):
    """All transitive actions of F_n on k points, one per based class.

    An action is kept iff it is a fixed point of ``canonical_action``;
    every based-isomorphism class has exactly one such representative.
    Output is sorted.
    """
    perms = list(permutations(range(k)))
    found = []
    for combo in product(perms, repeat=n):
        flat = tuple(x for p in combo for x in p)
        if canonical_action(flat, n, k) == flat:
            found.append(flat)
    found.sort()
    return found
