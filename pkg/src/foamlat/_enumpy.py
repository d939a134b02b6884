"""Pure-Python lattice-point enumeration kernel (Fincke-Pohst).

Reference implementation; the compiled module ``_enumcy`` mirrors it
instruction for instruction and is preferred at import time.
"""

import math

import numpy as np

from .errors import EnumerationBudgetExceeded


def enumerate_half(chol_lower, radius2, budget):
    """Enumerate coefficient vectors of lattice points inside a ball.

    ``chol_lower`` is the lower Cholesky factor A of the Gram matrix
    (G = A A^T), so a coefficient row k yields squared norm |k A|^2.
    Returns one representative per +/- pair: the highest-index nonzero
    coefficient is positive.  The zero vector is excluded.

    Raises EnumerationBudgetExceeded once more than ``budget`` candidate
    coefficients have been visited.
    """
    A = np.ascontiguousarray(chol_lower, dtype=np.float64)
    n = A.shape[0]
    out = []
    k = np.zeros(n, dtype=np.int64)
    visited = 0

    def descend(i, partial, shift, all_zero):
        nonlocal visited
        d = A[i, i]
        c = shift[i]
        rem = radius2 - partial
        if rem < 0.0:
            return
        s = math.sqrt(rem)
        lo = math.ceil((-c - s) / d)
        hi = math.floor((-c + s) / d)
        if all_zero and lo < 0:
            lo = 0
        for ki in range(lo, hi + 1):
            visited += 1
            if visited > budget:
                raise EnumerationBudgetExceeded(
                    f"enumeration exceeded budget of {budget} candidates"
                )
            y = c + ki * d
            p2 = partial + y * y
            if p2 > radius2:
                continue
            zero_so_far = all_zero and ki == 0
            k[i] = ki
            if i == 0:
                if not zero_so_far:
                    out.append(k.copy())
            else:
                descend(i - 1, p2, shift + ki * A[i], zero_so_far)
        k[i] = 0

    descend(n - 1, 0.0, np.zeros(n), True)
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(out, dtype=np.int64)
