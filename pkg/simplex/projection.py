"""
Euclidean projection onto the unit simplex {x >= 0, sum(x) = 1}.

Two routines share one result type: a linear-time scan used everywhere in the
solvers and a sort-based routine kept as a reference for tests and oracles.
"""
import numpy as np

from core.instance import as_vector
from simplex.condat import condat_threshold

__all__ = [
    "SimplexProjection",
    "project_simplex",
    "project_shifted",
    "project_simplex_reference",
    "simplex_threshold",
    "moreau_envelope"
]

# sum(x) further than this from one means the magnitude of z swamped its spread
MASS_TOL = 1e-8


class SimplexProjection(object):
    """
    Result of a simplex projection
    :param x: projected point, read-only
    :param tau: threshold with x = max(z - tau, 0)
    :param support_size: number of strictly positive entries of x
    """
    __slots__ = ("_x", "_tau", "_support_size")

    def __init__(self, x, tau, support_size):
        x.setflags(write=False)
        self._x = x
        self._tau = float(tau)
        self._support_size = int(support_size)

    @property
    def x(self):
        return self._x

    @property
    def tau(self):
        return self._tau

    @property
    def support_size(self):
        return self._support_size

    def __repr__(self):
        return "SimplexProjection(n={}, tau={:.6g}, support_size={})".format(
            self._x.shape[0], self._tau, self._support_size)


def _refine(z, tau):
    # recompute tau from its support with pairwise summation so that
    # sum(x) stays within a few ulps of one at large n
    support = z > tau
    k = int(np.count_nonzero(support))
    if k > 0:
        tau = (np.sum(z[support]) - 1.0) / k
    return tau


def _finish(z, tau):
    x = np.maximum(z - tau, 0.0)
    mass = float(np.sum(x))
    if mass == 0.0:
        top = int(np.argmax(z))
        x[top] = 1.0
        return SimplexProjection(x=x, tau=z[top] - 1.0, support_size=1)
    if abs(mass - 1.0) > MASS_TOL:
        x /= mass
    return SimplexProjection(x=x, tau=tau, support_size=np.count_nonzero(x))


def simplex_threshold(z):
    """
    Threshold tau of the projection of a validated float64 vector.
    No input checks, callers inside the solvers already hold clean arrays.
    """
    return _refine(z, condat_threshold(z))


def project_shifted(z):
    """
    Same as :func:`project_simplex` for a finite, contiguous float64 array, without validation
    """
    return _finish(z, simplex_threshold(z))


def project_simplex(z):
    """
    Projects z onto the unit simplex in O(n) expected time
    :param z: finite 1-d array-like, length >= 1
    :return: SimplexProjection
    :raises InputError: on empty or non-finite input
    """
    z = np.ascontiguousarray(as_vector(z, "z"))
    return project_shifted(z)


def project_simplex_reference(z):
    """
    Sort-based projection, O(n log n). The support size is the largest j such
    that the j-th largest entry stays above the running threshold.
    """
    z = as_vector(z, "z")
    n = z.shape[0]
    order = np.argsort(-z, kind="stable")
    ordered = z[order]
    cumulative = np.cumsum(ordered)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    positive = ordered + (1.0 - cumulative) / ranks > 0.0
    kbar = int(np.nonzero(positive)[0][-1]) + 1
    tau = (cumulative[kbar - 1] - 1.0) / kbar
    return _finish(z, tau)


def moreau_envelope(z):
    """
    0.5 * dist(z, simplex)^2. Its gradient is z - project_simplex(z).x
    """
    proj = project_simplex(z)
    diff = proj.x - np.asarray(z, dtype=np.float64)
    return 0.5 * float(np.dot(diff, diff))
