"""
Semismooth Newton method on psi(sigma) = 0, globalised by an Armijo search on
the concave dual function h.
"""
import json

import gin
import numpy as np

from core.errors import InputError, MaxIterExceededError
from dual.dual_function import DualFunction, h_difference, h_difference_rounding, psi_right_derivative
from engines.solver_base import SolverBase
from print_helper import print_debug

__all__ = [
    "NewtonTrace",
    "newton_direction",
    "line_search",
    "SSNSolver",
    "ssn_project"
]

# |upsilon| below this, relative to max(1, max|a|^2), counts as a vanishing derivative
FLAT_DERIVATIVE_TOL = 1e-14
# Newton steps in a row with a flat derivative and no residual decrease before giving up
FLAT_DERIVATIVE_PATIENCE = 3


class NewtonTrace(object):
    """
    Iterates of one Newton solve. step_sizes[j] is the accepted delta_hat^m_j
    that led from sigma_seq[j] to sigma_seq[j + 1].
    """

    def __init__(self):
        self.sigma_seq = []
        self.residual_seq = []
        self.step_sizes = []
        self.kbar_seq = []

    def __len__(self):
        return len(self.sigma_seq)

    def record(self, sigma, residual, kbar):
        self.sigma_seq.append(float(sigma))
        self.residual_seq.append(float(residual))
        self.kbar_seq.append(int(kbar))

    def to_dict(self):
        return {"sigma": self.sigma_seq,
                "residual": self.residual_seq,
                "step": self.step_sizes,
                "kbar": self.kbar_seq}

    def to_json(self, path):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f)
            f.write("\n")


def newton_direction(psi_val, upsilon, tau1, tau2):
    """
    Regularised Newton step -psi / (upsilon - eps_bar), eps_bar = tau2 * min(tau1, |psi|)
    :param psi_val: psi(sigma)
    :param upsilon: a generalised derivative of psi at sigma, <= 0
    :return: the step, 0 when psi_val is 0
    """
    if psi_val == 0.0:
        return 0.0
    # rounding can leave a flat derivative a hair above zero
    upsilon = min(upsilon, 0.0)
    eps_bar = tau2 * min(tau1, abs(psi_val))
    return -psi_val / (upsilon - eps_bar)


def line_search(inst, sigma, dsigma, psi_val, cfg, fn=None):
    """
    Smallest m >= 0 with h(sigma + delta_hat^m dsigma) >= h(sigma) + mu_hat delta_hat^m psi dsigma.
    Trial points are clamped to sigma >= 0 and h is compared at the clamped point.
    A required increase below the rounding error of h is replaced by a decrease of |psi|.

    :return: (m, sigma_next)
    :raises MaxIterExceededError: when m would exceed cfg.max_backtracks
    """
    if dsigma == 0.0:
        raise InputError("line search needs a nonzero direction")
    fn = fn if fn is not None else DualFunction(inst)
    ws = fn.workspace(sigma)
    gain = psi_val * dsigma
    step = 1.0
    for m in range(cfg.max_backtracks + 1):
        trial_ws = fn.workspace(max(sigma + step * dsigma, 0.0))
        target = cfg.mu_hat * step * gain
        if h_difference(inst, ws, trial_ws) >= target:
            return m, trial_ws.sigma
        if target <= h_difference_rounding(inst, ws, trial_ws) and abs(trial_ws.psi) < abs(psi_val):
            return m, trial_ws.sigma
        step *= cfg.delta_hat
    raise MaxIterExceededError(f"no Armijo step after {cfg.max_backtracks} backtracks at sigma = {sigma:.17g}",
                               diagnostic="line_search_stagnation", sigma=sigma)


@gin.configurable
class SSNSolver(SolverBase):
    """
    Newton iteration on psi with upsilon = right derivative of psi.
    :meth:`solve` returns a :class:`NewtonTrace` with the report.
    """
    name = "SSN"

    def __init__(self, config=None):
        SolverBase.__init__(self, config=config)

    def _new_trace(self):
        return NewtonTrace()

    def _solve(self, fn, ws0):
        cfg = self._config
        inst = fn.instance
        trace = NewtonTrace()
        flat_tol = FLAT_DERIVATIVE_TOL * max(1.0, float(np.max(np.abs(inst.a))) ** 2)

        sigma = cfg.sigma0
        ws = fn.workspace(sigma)
        flat_streak = 0
        for j in range(cfg.max_iter + 1):
            r = ws.psi
            trace.record(sigma, abs(r), ws.kbar)
            if abs(r) <= cfg.epsilon:
                return self._converged(fn, sigma, bracket_iters=0, inner_iters=j), trace
            if j == cfg.max_iter:
                break

            upsilon = psi_right_derivative(inst, ws)
            if abs(upsilon) <= flat_tol and j > 0 and abs(r) >= trace.residual_seq[-2]:
                flat_streak += 1
            else:
                flat_streak = 0
            if flat_streak >= FLAT_DERIVATIVE_PATIENCE:
                err = MaxIterExceededError("right derivative of psi vanishes and the residual stalls",
                                           diagnostic="derivative_degenerate", sigma=sigma)
                return self._gave_up(fn, err, bracket_iters=0, inner_iters=j), trace

            dsigma = newton_direction(r, upsilon, cfg.tau1_hat, cfg.tau2_hat)
            try:
                m, sigma = line_search(inst, sigma, dsigma, r, cfg, fn=fn)
            except MaxIterExceededError as err:
                return self._gave_up(fn, err, bracket_iters=0, inner_iters=j), trace
            trace.step_sizes.append(cfg.delta_hat ** m)
            ws = fn.workspace(sigma)
            print_debug(f"newton {j + 1}: sigma={sigma:.17g} psi={ws.psi:.6e} m={m} kbar={ws.kbar}")

        err = MaxIterExceededError(f"|psi| > {cfg.epsilon:g} after {cfg.max_iter} Newton steps",
                                   diagnostic="newton_exhausted", sigma=sigma)
        return self._gave_up(fn, err, bracket_iters=0, inner_iters=cfg.max_iter), trace


def ssn_project(inst, cfg=None):
    """
    Projection of inst.y onto {x in simplex : a'x <= b} by the semismooth Newton method
    :return: (:class:`core.report.SolveReport`, :class:`NewtonTrace`)
    """
    return SSNSolver(config=cfg).solve(inst)
