"""
Exhaustive active-set solver for the projection onto {x in simplex : a'x <= b}.

Every face of the feasible polytope is described by a free set F (coordinates
allowed to be positive) and a flag telling whether a'x = b is enforced. On a
face the projection is an equality-constrained least-squares problem with a
closed form. The first face whose solution is primal and dual feasible is the
projection.
"""
from collections import namedtuple
from itertools import combinations

import numpy as np
from tqdm import tqdm

from core.errors import InfeasibleError, InputError
from core.instance import as_vector
from simplex.projection import project_simplex

__all__ = [
    "MAX_ORACLE_SIZE",
    "KKTCertificate",
    "SweepResult",
    "oracle_project",
    "kkt_check",
    "certificate_from_dual",
    "oracle_sweep"
]

MAX_ORACLE_SIZE = 12

PRIMAL_TOL = 1e-10
DUAL_TOL = 1e-9


class KKTCertificate(object):
    """
    Multipliers of  x - y - lam e + B'mu = 0,  B = [-I; a'].

    :param lam: multiplier of e'x = 1
    :param mu: length n + 1, mu[:n] for -x <= 0 and mu[n] for a'x <= b
    :param active_zero: indices with x_i = 0
    :param linear_active: whether a'x = b holds
    """

    def __init__(self, lam, mu, active_zero, linear_active):
        self.lam = float(lam)
        self.mu = np.asarray(mu, dtype=np.float64)
        self.active_zero = np.asarray(active_zero, dtype=np.int64)
        self.linear_active = bool(linear_active)

    @property
    def sigma(self):
        return float(self.mu[-1])

    def to_dict(self):
        return {"lambda": self.lam,
                "mu": self.mu.tolist(),
                "active_zero": self.active_zero.tolist(),
                "linear_active": self.linear_active}

    def __repr__(self):
        return "KKTCertificate(lambda={:.6g}, sigma={:.6g}, zeros={}, linear_active={})".format(
            self.lam, self.sigma, self.active_zero.tolist(), self.linear_active)


def _face_multipliers(y_f, a_f, b, linear_active):
    """
    (nu1, nu2) with x_F = y_F - nu1 - nu2 a_F, e'x_F = 1 and, when flagged,
    a'x_F = b. None when the face equations are inconsistent.
    """
    k = y_f.size
    excess = y_f.sum() - 1.0
    if not linear_active:
        return excess / k, 0.0

    sum_a = a_f.sum()
    centered = a_f - sum_a / k
    # k * ||a_F||^2 - (e'a_F)^2, computed without cancellation
    det = k * float(np.dot(centered, centered))
    rhs_a = float(np.dot(a_f, y_f)) - b
    scale = float(np.dot(a_f, a_f)) * k
    if det > 1e-12 * scale:
        nu2 = (k * rhs_a - sum_a * excess) / det
        nu1 = (excess - sum_a * nu2) / k
        return nu1, nu2

    # a_F parallel to e: both equations pin the same quantity
    if abs(sum_a / k - b) > 1e-9 * (1.0 + abs(b)):
        return None
    gram = np.array([[k, sum_a], [sum_a, float(np.dot(a_f, a_f))]])
    nu = np.linalg.lstsq(gram, np.array([excess, rhs_a]), rcond=None)[0]
    return float(nu[0]), float(nu[1])


def _candidate(inst, free, linear_active):
    y, a, b = inst.y, inst.a, inst.b
    nu = _face_multipliers(y[free], a[free], b, linear_active)
    if nu is None:
        return None
    nu1, nu2 = nu
    x = np.zeros(inst.n)
    x[free] = y[free] - nu1 - nu2 * a[free]
    if x.min() < -PRIMAL_TOL or float(np.dot(a, x)) > b + PRIMAL_TOL:
        return None

    lam = -nu1
    mu = np.zeros(inst.n + 1)
    mu[inst.n] = nu2
    zeros = np.setdiff1d(np.arange(inst.n), free)
    mu[zeros] = -y[zeros] - lam + nu2 * a[zeros]
    if mu.min() < -DUAL_TOL:
        return None
    x = np.maximum(x, 0.0)
    return x, KKTCertificate(lam=lam, mu=mu, active_zero=zeros, linear_active=linear_active)


def oracle_project(inst):
    """
    Projection by enumeration of all faces, free sets in order of increasing size
    :param inst: :class:`core.instance.Instance` with n <= 12
    :return: (x, :class:`KKTCertificate`)
    :raises InputError: n > 12
    :raises InfeasibleError: no face yields a KKT point
    """
    if inst.n > MAX_ORACLE_SIZE:
        raise InputError(f"oracle enumerates 2^(n+1) faces, n = {inst.n} exceeds {MAX_ORACLE_SIZE}")
    for size in range(1, inst.n + 1):
        for free in combinations(range(inst.n), size):
            free = np.array(free)
            for linear_active in (False, True):
                found = _candidate(inst, free, linear_active)
                if found is not None:
                    return found
    raise InfeasibleError("no active set satisfies the KKT conditions")


def kkt_check(inst, x, cert, tol=None):
    """
    Stationarity, primal and dual feasibility and complementarity within
    tol = 1e-8 * (1 + ||y||_inf) by default
    :return: bool
    """
    x = as_vector(x, "x")
    if x.size != inst.n or cert.mu.size != inst.n + 1:
        return False
    if tol is None:
        tol = 1e-8 * (1.0 + float(np.max(np.abs(inst.y))))
    mu_x, sigma = cert.mu[:-1], cert.mu[-1]
    slack = float(np.dot(inst.a, x)) - inst.b

    stationarity = x - inst.y - cert.lam - mu_x + sigma * inst.a
    checks = (
        np.max(np.abs(stationarity)) <= tol * (1.0 + sigma),
        x.min() >= -tol,
        abs(x.sum() - 1.0) <= tol,
        slack <= tol,
        cert.mu.min() >= -tol,
        np.max(np.abs(mu_x * x)) <= tol,
        abs(sigma * slack) <= tol * (1.0 + sigma),
    )
    return all(bool(c) for c in checks)


def certificate_from_dual(inst, sigma, proj=None):
    """
    Multipliers recovered from a dual point: lambda = -tau, mu_i = tau - z_i on
    the zeros of x, mu_{n+1} = sigma, with z = y - sigma a and tau the simplex
    threshold of z.

    :param proj: :class:`simplex.projection.SimplexProjection` of z, recomputed when None
    """
    shifted = inst.y - sigma * inst.a
    if proj is None:
        proj = project_simplex(shifted)
    zeros = np.flatnonzero(proj.x == 0.0)
    mu = np.zeros(inst.n + 1)
    mu[zeros] = np.maximum(proj.tau - shifted[zeros], 0.0)
    mu[inst.n] = sigma
    slack = float(np.dot(inst.a, proj.x)) - inst.b
    return KKTCertificate(lam=-proj.tau, mu=mu, active_zero=zeros,
                          linear_active=sigma > 0.0 or slack == 0.0)


SweepResult = namedtuple("SweepResult", ["algorithm", "trials", "max_deviation", "kkt_failures", "solve_failures"])


def oracle_sweep(instances, solvers, progress=True):
    """
    Compares solvers against :func:`oracle_project`.

    :param instances: iterable of small :class:`core.instance.Instance`
    :param solvers: mapping name -> callable(Instance) -> SolveReport
    :param progress: show a tqdm bar
    :return: dict name -> :class:`SweepResult`
    """
    stats = {name: [0, 0.0, 0, 0] for name in solvers}
    for inst in tqdm(instances, desc="oracle sweep", disable=not progress):
        x_ref, _ = oracle_project(inst)
        for name, solve in solvers.items():
            entry = stats[name]
            entry[0] += 1
            report = solve(inst)
            if not report.ok:
                entry[3] += 1
                continue
            entry[1] = max(entry[1], float(np.max(np.abs(report.x - x_ref))))
            if not kkt_check(inst, report.x, certificate_from_dual(inst, report.sigma_star)):
                entry[2] += 1
    return {name: SweepResult(name, *entry) for name, entry in stats.items()}
