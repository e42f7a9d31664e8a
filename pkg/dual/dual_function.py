"""
Dual of  min 1/2||x - y||^2  s.t.  a'x <= b, x in the unit simplex.

For a multiplier sigma >= 0 the inner minimisation over the simplex is solved by
x(sigma) = P(y - sigma * a), P the simplex projection. The dual function

    h(sigma) = 1/2||x(sigma) - y||^2 + sigma * (a'x(sigma) - b)

is concave with derivative psi(sigma) = a'x(sigma) - b, a continuous,
nonincreasing, piecewise affine function whose breakpoints are the values of
sigma where some coordinate of y - sigma * a sits exactly on the threshold.
"""
import numpy as np

from core.errors import InputError
from simplex.projection import project_shifted

__all__ = [
    "BREAKPOINT_TOL",
    "DualWorkspace",
    "DualFunction",
    "build_workspace",
    "psi",
    "h",
    "h_difference",
    "h_difference_rounding",
    "psi_right_derivative",
    "psi_left_derivative"
]

# relative half-width of the band around the threshold treated as "on" the threshold
BREAKPOINT_TOL = 1e-10


class DualWorkspace(object):
    """
    Everything known at one dual point.

    :param sigma: the multiplier
    :param shifted: z = y - sigma * a
    :param proj: :class:`simplex.projection.SimplexProjection` of z
    :param gamma1: indices with z_i - tau > tol, clearly inside the support of proj.x
    :param gamma2: indices with |z_i - tau| <= tol, tied with the threshold
    :param psi: a'proj.x - b
    """
    __slots__ = ("sigma", "shifted", "proj", "gamma1", "gamma2", "psi")

    def __init__(self, sigma, shifted, proj, gamma1, gamma2, psi):
        self.sigma = sigma
        self.shifted = shifted
        self.proj = proj
        self.gamma1 = gamma1
        self.gamma2 = gamma2
        self.psi = psi

    @property
    def kbar(self):
        """Size of gamma1. Equals proj.support_size unless some x_i lies inside the tie band."""
        return int(self.gamma1.size)

    @property
    def x(self):
        return self.proj.x

    def __repr__(self):
        return "DualWorkspace(sigma={!r}, psi={!r}, kbar={}, breakpoints={})".format(
            self.sigma, self.psi, self.kbar, self.gamma2.size)


def _check_sigma(sigma):
    sigma = float(sigma)
    if not np.isfinite(sigma) or sigma < 0.0:
        raise InputError(f"sigma must be finite and >= 0, got {sigma}")
    return sigma


def build_workspace(inst, sigma):
    """
    Projects y - sigma * a onto the simplex and classifies the coordinates
    :param inst: :class:`core.instance.Instance`
    :param sigma: multiplier >= 0
    :return: :class:`DualWorkspace`
    """
    sigma = _check_sigma(sigma)
    shifted = inst.y - sigma * inst.a
    proj = project_shifted(shifted)
    values = shifted - proj.tau
    tol = BREAKPOINT_TOL * (1.0 + np.max(np.abs(shifted)))
    gamma1 = np.flatnonzero(values > tol)
    if gamma1.size == 0:
        # every positive value sits inside the band, keep the true support
        gamma1 = np.flatnonzero(values > 0.0)
        gamma2 = np.flatnonzero((values <= 0.0) & (values >= -tol))
    else:
        gamma2 = np.flatnonzero(np.abs(values) <= tol)
    # (a - b e)'x equals a'x - b on the simplex and has no cancellation where a = b
    value = float(np.dot(inst.a_minus_b, proj.x))
    return DualWorkspace(sigma=sigma, shifted=shifted, proj=proj,
                         gamma1=gamma1, gamma2=gamma2, psi=value)


def psi(inst, sigma):
    """a'P(y - sigma * a) - b, one simplex projection"""
    return build_workspace(inst, sigma).psi


def _h_from_workspace(inst, ws):
    diff = ws.x - inst.y
    return 0.5 * float(np.dot(diff, diff)) + ws.sigma * ws.psi


def h(inst, sigma):
    """
    Dual objective, equal to M(y - sigma a) - 1/2||y - sigma a||^2 + 1/2||y||^2 - sigma b
    with M the Moreau envelope of the simplex
    """
    return _h_from_workspace(inst, build_workspace(inst, sigma))


def h_difference(inst, ws_from, ws_to):
    """
    h(ws_to.sigma) - h(ws_from.sigma) without forming either value.

    Both values are of the order of ||y||^2 while their difference near the
    optimum is tiny, so the difference is expanded in x_to - x_from. When both
    points lie on the same affine piece of psi, h is quadratic between them and
    the trapezoid rule on psi is exact.
    """
    if _same_piece(ws_from, ws_to):
        return 0.5 * (ws_from.psi + ws_to.psi) * (ws_to.sigma - ws_from.sigma)
    dx = ws_to.x - ws_from.x
    quad = 0.5 * float(np.dot(dx, ws_to.x + ws_from.x - 2.0 * inst.y))
    return quad + ws_to.sigma * ws_to.psi - ws_from.sigma * ws_from.psi


def _same_piece(ws_from, ws_to):
    return (ws_from.gamma2.size == 0 and ws_to.gamma2.size == 0
            and np.array_equal(ws_from.gamma1, ws_to.gamma1))


def h_difference_rounding(inst, ws_from, ws_to):
    """
    Bound on the floating point error of :func:`h_difference` between two
    points. On a shared affine piece only the error of psi enters.
    """
    sigma = max(ws_from.sigma, ws_to.sigma)
    scale = 1.0 + np.max(np.abs(inst.y)) + sigma * np.max(np.abs(inst.a_minus_b))
    psi_error = np.finfo(np.float64).eps * inst.n * scale
    if _same_piece(ws_from, ws_to):
        return psi_error * abs(ws_to.sigma - ws_from.sigma)
    return 64.0 * np.finfo(np.float64).eps * inst.n * scale * (1.0 + np.max(np.abs(inst.y)))


def _support_terms(inst, ws):
    a1 = inst.a[ws.gamma1]
    return a1, float(np.sum(a1)), ws.kbar


def psi_right_derivative(inst, ws):
    """
    Right derivative of psi at ws.sigma.

    Moving sigma to the right lowers every z_i by a_i t. Tied coordinates with
    small a_i stay in the support, so the tied block is scanned in ascending a
    and grown while its next member still lies above the running mean.

    :param inst: the instance ws was built from
    :param ws: :class:`DualWorkspace`
    :return: a value <= 0
    """
    a1, s1, kbar = _support_terms(inst, ws)
    if ws.gamma2.size == 0:
        zeta = s1 / kbar
        return float(np.dot(a1, zeta - a1))

    a2 = inst.a[ws.gamma2]
    ordered = np.sort(a2, kind="stable")
    prefix = np.cumsum(ordered)
    counts = np.arange(1, ordered.size + 1)
    enters = -ordered + (s1 + prefix) / (kbar + counts) > 0.0
    hits = np.flatnonzero(enters)
    if hits.size:
        lam = int(hits[-1]) + 1
        zeta = (s1 + prefix[lam - 1]) / (kbar + lam)
    else:
        zeta = s1 / kbar
    return float(np.dot(a2, np.maximum(zeta - a2, 0.0)) + np.dot(a1, zeta - a1))


def psi_left_derivative(inst, ws):
    """
    Left derivative of psi at ws.sigma > 0.

    Moving sigma to the left raises every z_i by a_i t, so the tied coordinates
    with the largest a_i join the support. The joining block is a suffix of
    the ascending order.
    """
    if ws.sigma == 0.0:
        raise InputError("left derivative of psi is undefined at sigma = 0")
    a1, s1, kbar = _support_terms(inst, ws)
    if ws.gamma2.size == 0:
        zeta = s1 / kbar
        return float(np.dot(a1, zeta - a1))

    a2 = inst.a[ws.gamma2]
    ordered = np.sort(a2, kind="stable")
    m = ordered.size
    suffix = np.cumsum(ordered[::-1])[::-1]
    start = np.arange(1, m + 1)
    joins = -ordered + (s1 + suffix) / (kbar + m + 1 - start) < 0.0
    hits = np.flatnonzero(joins)
    if hits.size:
        first = int(hits[0])
        zeta = (s1 + suffix[first]) / (kbar + m - first)
    else:
        zeta = s1 / kbar
    return float(np.dot(a2, np.minimum(zeta - a2, 0.0)) + np.dot(a1, zeta - a1))


class DualFunction(object):
    """
    Per-solve evaluator of psi and h. Keeps the workspace of the most recent
    sigma and counts every simplex projection it performs.

    :param inst: :class:`core.instance.Instance`
    """

    def __init__(self, inst):
        self._inst = inst
        self._last = None
        self._evals = 0

    @property
    def instance(self):
        return self._inst

    @property
    def evals(self):
        return self._evals

    def workspace(self, sigma):
        sigma = _check_sigma(sigma)
        if self._last is not None and self._last.sigma == sigma:
            return self._last
        self._last = build_workspace(self._inst, sigma)
        self._evals += 1
        return self._last

    def psi(self, sigma):
        return self.workspace(sigma).psi

    def h(self, sigma):
        return _h_from_workspace(self._inst, self.workspace(sigma))

    def right_derivative(self, sigma):
        return psi_right_derivative(self._inst, self.workspace(sigma))
