"""
LRSA: bracket the root of psi with a geometric probe sequence, then close in
on it with the safeguarded secant method of Dai and Fletcher.

Reference:
    Y.-H. Dai, R. Fletcher, New algorithms for singly linearly constrained
    quadratic programs subject to lower and upper bounds,
    Math. Program. 106 (2006) 403-421.
"""
from collections import namedtuple

import gin
import numpy as np

from core.errors import InputError, MaxIterExceededError
from dual.dual_function import DualFunction
from engines.solver_base import SolverBase
from print_helper import print_debug

__all__ = [
    "Bracket",
    "ExactRoot",
    "SecantState",
    "bracket_root",
    "secant_iterates",
    "secant_solve",
    "LRSASolver",
    "lrsa_project"
]

# psi(sigma_l) > 0 > psi(sigma_u); probes counts the psi evaluations that found it
Bracket = namedtuple("Bracket", ["sigma_l", "sigma_u", "r_l", "r_u", "probes"], defaults=(0,))

ExactRoot = namedtuple("ExactRoot", ["sigma", "probes"], defaults=(0,))

# s is the interpolation factor carried into the next step
SecantState = namedtuple("SecantState", ["sigma", "r", "s"])

# largest eps * sigma * max|a| relative to 1 + max|y| at which bracketing still probes
SHIFT_PRECISION_LIMIT = 2.0 ** -10


def bracket_root(inst, cfg, fn=None):
    """
    Probes sigma = rho^j * delta_sigma, j = 0, 1, ... until psi changes sign.

    :param inst: :class:`core.instance.Instance` with psi(0) > 0
    :param cfg: :class:`core.solver_config.SolverConfig`
    :param fn: optional :class:`dual.dual_function.DualFunction` to share the evaluation count
    :return: :class:`Bracket`, or :class:`ExactRoot` if a probe lands on psi = 0
    :raises MaxIterExceededError: after cfg.max_iter probes without a sign change, or once
        the rounding of sigma * a would swamp y
    """
    fn = fn if fn is not None else DualFunction(inst)
    sigma_l, r_l = 0.0, fn.psi(0.0)
    if r_l <= 0.0:
        raise InputError(f"bracketing needs psi(0) > 0, got {r_l}")

    sigma = cfg.delta_sigma
    # beyond this sigma the rounding of sigma * a swamps the spread of y
    sigma_max = SHIFT_PRECISION_LIMIT * (1.0 + float(np.max(np.abs(inst.y)))) / (
        np.finfo(np.float64).eps * float(np.max(np.abs(inst.a))))
    probes = 0
    for j in range(cfg.max_iter):
        if sigma > sigma_max or sigma == float("inf"):
            break
        r = fn.psi(sigma)
        probes = j + 1
        print_debug(f"bracket probe {j}: sigma={sigma:.6g} psi={r:.6e}")
        if r == 0.0:
            return ExactRoot(sigma=sigma, probes=probes)
        if r < 0.0:
            return Bracket(sigma_l=sigma_l, sigma_u=sigma, r_l=r_l, r_u=r, probes=probes)
        sigma_l, r_l = sigma, r
        sigma = sigma * cfg.rho
    raise MaxIterExceededError(f"psi stayed positive up to sigma = {sigma_l:.6g}",
                               diagnostic="bracketing_exhausted", sigma=sigma_l, iterations=probes)


def secant_iterates(inst, br, epsilon, max_iter=500, fn=None):
    """
    Runs the modified secant method on a bracket and yields
    `(SecantState, Bracket)` after every psi evaluation, the bracket being the
    one that encloses that iterate. Stops after yielding an iterate with
    |psi| <= epsilon.

    :raises MaxIterExceededError: after max_iter evaluations, or when the bracket collapses
    """
    fn = fn if fn is not None else DualFunction(inst)
    sigma_l, sigma_u, r_l, r_u = br.sigma_l, br.sigma_u, br.r_l, br.r_u
    if not (sigma_l < sigma_u and r_l > 0.0 > r_u):
        raise InputError(f"not a bracket: {br}")

    s = 1.0 - r_l / r_u
    sigma = sigma_u - (sigma_u - sigma_l) / s
    for _ in range(max_iter):
        r = fn.psi(sigma)
        yield SecantState(sigma=sigma, r=r, s=s), Bracket(sigma_l, sigma_u, r_l, r_u)
        if abs(r) <= epsilon:
            return

        if r < 0.0:
            if s <= 2.0:
                sigma_u, r_u = sigma, r
                s = 1.0 - r_l / r_u
                sigma = sigma_u - (sigma_u - sigma_l) / s
            else:
                s = max(r_u / r - 1.0, 0.1)
                step = (sigma_u - sigma) / s
                sigma_u, r_u = sigma, r
                sigma = max(sigma_u - step, 0.6 * sigma_l + 0.4 * sigma_u)
                s = _ratio(sigma_u - sigma_l, sigma_u - sigma, sigma)
        else:
            if s >= 2.0:
                sigma_l, r_l = sigma, r
                s = 1.0 - r_l / r_u
                sigma = sigma_u - (sigma_u - sigma_l) / s
            else:
                s = max(r_l / r - 1.0, 0.1)
                step = (sigma - sigma_l) / s
                sigma_l, r_l = sigma, r
                sigma = min(sigma_l + step, 0.6 * sigma_u + 0.4 * sigma_l)
                s = _ratio(sigma_u - sigma_l, sigma_u - sigma, sigma)
    raise MaxIterExceededError(f"secant did not reach |psi| <= {epsilon:g} in {max_iter} steps",
                               diagnostic="secant_exhausted", sigma=sigma, iterations=max_iter)


def _ratio(width, gap, sigma):
    if gap <= 0.0:
        raise MaxIterExceededError(f"secant bracket collapsed at sigma = {sigma:.17g}",
                                   diagnostic="secant_stalled", sigma=sigma)
    return width / gap


def secant_solve(inst, br, epsilon, max_iter=500, fn=None):
    """
    :param inst: :class:`core.instance.Instance`
    :param br: :class:`Bracket` around the root
    :param epsilon: tolerance on |psi|
    :param max_iter: cap on psi evaluations
    :param fn: optional shared :class:`dual.dual_function.DualFunction`
    :return: (sigma_hat, number of secant steps)
    """
    iters, sigma = 0, None
    for state, enclosing in secant_iterates(inst, br, epsilon, max_iter=max_iter, fn=fn):
        iters += 1
        sigma = state.sigma
        print_debug(f"secant {iters}: sigma={state.sigma:.17g} psi={state.r:.6e} "
                    f"bracket=[{enclosing.sigma_l:.6g}, {enclosing.sigma_u:.6g}]")
    return sigma, iters


@gin.configurable
class LRSASolver(SolverBase):
    """
    Bracketing followed by the modified secant method.
    """
    name = "LRSA"

    def __init__(self, config=None):
        SolverBase.__init__(self, config=config)

    def _solve(self, fn, ws0):
        cfg = self._config
        inst = fn.instance
        try:
            found = bracket_root(inst, cfg, fn=fn)
        except MaxIterExceededError as err:
            return self._gave_up(fn, err, bracket_iters=err.iterations, inner_iters=0), None

        if isinstance(found, ExactRoot):
            return self._converged(fn, found.sigma, bracket_iters=found.probes, inner_iters=0), None

        try:
            sigma, iters = secant_solve(inst, found, cfg.epsilon, max_iter=cfg.max_iter, fn=fn)
        except MaxIterExceededError as err:
            return self._gave_up(fn, err, bracket_iters=found.probes, inner_iters=err.iterations), None
        return self._converged(fn, sigma, bracket_iters=found.probes, inner_iters=iters), None


def lrsa_project(inst, cfg=None):
    """
    Projection of inst.y onto {x in simplex : a'x <= b} by LRSA
    :return: :class:`core.report.SolveReport`
    """
    return LRSASolver(config=cfg).project(inst)
