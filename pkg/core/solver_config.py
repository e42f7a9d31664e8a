"""
Parameters shared by the LRSA and SSN solvers.
"""
import gin

from core.errors import InputError

__all__ = [
    "SolverConfig"
]


@gin.configurable
class SolverConfig(object):
    """
    :param epsilon: residual tolerance on |psi(sigma)|
    :param rho: bracket growth factor, > 1
    :param delta_sigma: initial bracket step, > 0
    :param mu_hat: Armijo constant in (0, 1/2)
    :param delta_hat: backtracking factor in (0, 1)
    :param tau1_hat: regularisation cap in (0, 1]
    :param tau2_hat: regularisation scale in (0, 1]
    :param sigma0: Newton starting point, >= 0
    :param max_iter: cap on bracketing probes, secant steps and Newton steps
    :param max_backtracks: cap on the line search exponent m
    """

    def __init__(self,
                 epsilon=1e-7,
                 rho=2.0,
                 delta_sigma=1.0,
                 mu_hat=0.25,
                 delta_hat=0.5,
                 tau1_hat=1.0,
                 tau2_hat=1e-3,
                 sigma0=0.0,
                 max_iter=500,
                 max_backtracks=60):
        self._check(epsilon > 0, "epsilon must be > 0")
        self._check(rho > 1, "rho must be > 1")
        self._check(delta_sigma > 0, "delta_sigma must be > 0")
        self._check(0 < mu_hat < 0.5, "mu_hat must lie in (0, 1/2)")
        self._check(0 < delta_hat < 1, "delta_hat must lie in (0, 1)")
        self._check(0 < tau1_hat <= 1, "tau1_hat must lie in (0, 1]")
        self._check(0 < tau2_hat <= 1, "tau2_hat must lie in (0, 1]")
        self._check(sigma0 >= 0, "sigma0 must be >= 0")
        self._check(int(max_iter) == max_iter and max_iter >= 1, "max_iter must be a positive integer")
        self._check(int(max_backtracks) == max_backtracks and max_backtracks >= 0,
                    "max_backtracks must be a non-negative integer")

        self.epsilon = float(epsilon)
        self.rho = float(rho)
        self.delta_sigma = float(delta_sigma)
        self.mu_hat = float(mu_hat)
        self.delta_hat = float(delta_hat)
        self.tau1_hat = float(tau1_hat)
        self.tau2_hat = float(tau2_hat)
        self.sigma0 = float(sigma0)
        self.max_iter = int(max_iter)
        self.max_backtracks = int(max_backtracks)

    @staticmethod
    def _check(condition, message):
        if not condition:
            raise InputError(message)

    def replace(self, **overrides):
        params = dict(epsilon=self.epsilon, rho=self.rho, delta_sigma=self.delta_sigma,
                      mu_hat=self.mu_hat, delta_hat=self.delta_hat, tau1_hat=self.tau1_hat,
                      tau2_hat=self.tau2_hat, sigma0=self.sigma0, max_iter=self.max_iter,
                      max_backtracks=self.max_backtracks)
        params.update(overrides)
        return SolverConfig(**params)

    def __repr__(self):
        return (f"SolverConfig(epsilon={self.epsilon}, rho={self.rho}, delta_sigma={self.delta_sigma}, "
                f"mu_hat={self.mu_hat}, delta_hat={self.delta_hat}, tau1_hat={self.tau1_hat}, "
                f"tau2_hat={self.tau2_hat}, sigma0={self.sigma0}, max_iter={self.max_iter})")
