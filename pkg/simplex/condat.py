"""
Condat's scan for the simplex threshold, O(n) expected time.

Reference:
    L. Condat, Fast projection onto the simplex and the l1 ball,
    Math. Program. 158 (2016) 575-585.
"""
import numpy as np
from numba import jit

__all__ = [
    "condat_threshold"
]


@jit(nopython=True)
def condat_threshold(z):
    """
    Returns tau such that max(z - tau, 0) sums to one
    :param z: 1-d float64 array, length >= 1
    """
    n = z.shape[0]
    buf = np.empty(n, dtype=np.float64)
    start = 0
    buf[0] = z[0]
    tau = z[0] - 1.0
    length = 1
    length_old = -1

    # online pass: buf[length_old+1:length] is the current candidate support,
    # buf[:length_old+1] holds values set aside when the candidate restarted
    for i in range(1, n):
        zi = z[i]
        if zi > tau:
            buf[length] = zi
            tau += (zi - tau) / (length - length_old)
            if tau <= zi - 1.0:
                tau = zi - 1.0
                length_old = length - 1
            length += 1

    # revisit the set-aside values
    if length_old >= 0:
        length_old += 1
        length -= length_old
        start = length_old
        k = length_old
        while k > 0:
            k -= 1
            if buf[k] > tau:
                start -= 1
                buf[start] = buf[k]
                length += 1
                tau += (buf[start] - tau) / length

    # drop values that fell below tau until the support is stable
    while True:
        length_old = length - 1
        length = 0
        for i in range(length_old + 1):
            v = buf[start + i]
            if v > tau:
                buf[start + length] = v
                length += 1
            else:
                remaining = length_old - i + length
                if remaining > 0:
                    tau += (tau - v) / remaining
        if length > length_old:
            break
    return tau
