"""
Common driver for the dual root-finding projection solvers.
"""
from core.errors import InfeasibleError
from core.instance import Feasibility, feasibility_check
from core.report import SolveReport, Status
from core.solver_config import SolverConfig
from dual.dual_function import DualFunction
from print_helper import print_report, print_warn
from simplex.projection import project_simplex

__all__ = [
    "SolverBase"
]


class SolverBase(object):
    """
    Screens an instance, handles the two cases that need no root finding and
    hands the rest to :meth:`_solve`.

    Subclasses implement `_solve(fn, ws0)` returning `(report, trace)`, where
    `fn` is a fresh :class:`dual.dual_function.DualFunction` and `ws0` its
    workspace at sigma = 0 with psi > 0.

    :param config: :class:`core.solver_config.SolverConfig`, defaults when None
    """
    name = None

    def __init__(self, config=None):
        self._config = config if config is not None else SolverConfig()

    @property
    def config(self):
        return self._config

    def _new_trace(self):
        return None

    def solve(self, inst):
        """
        :param inst: :class:`core.instance.Instance`
        :return: (SolveReport, trace), the trace type depends on the solver
        :raises InfeasibleError: when no point satisfies a'x <= b on the simplex
        """
        feasibility = feasibility_check(inst)
        if feasibility is Feasibility.INFEASIBLE:
            raise InfeasibleError(f"min(a) = {inst.a.min():.6g} > b = {inst.b:.6g}, the feasible set is empty")

        trace = self._new_trace()
        if feasibility is Feasibility.REDUCES_TO_SIMPLEX:
            proj = project_simplex(inst.y)
            report = SolveReport(x=proj.x, sigma_star=0.0, residual=0.0, psi_evals=1,
                                 bracket_iters=0, inner_iters=0, status=Status.CONSTRAINT_INACTIVE)
        else:
            fn = DualFunction(inst)
            ws0 = fn.workspace(0.0)
            if ws0.psi <= 0.0:
                if trace is not None:
                    trace.record(0.0, abs(ws0.psi), ws0.kbar)
                report = SolveReport(x=ws0.x, sigma_star=0.0, residual=0.0, psi_evals=fn.evals,
                                     bracket_iters=0, inner_iters=0, status=Status.CONSTRAINT_INACTIVE)
            else:
                report, trace = self._solve(fn, ws0)
        print_report(self.name, report)
        return report, trace

    def project(self, inst):
        return self.solve(inst)[0]

    def _solve(self, fn, ws0):
        raise NotImplementedError

    def _converged(self, fn, sigma, bracket_iters, inner_iters):
        ws = fn.workspace(sigma)
        return SolveReport(x=ws.x, sigma_star=sigma, residual=abs(ws.psi), psi_evals=fn.evals,
                           bracket_iters=bracket_iters, inner_iters=inner_iters, status=Status.CONVERGED)

    def _gave_up(self, fn, err, bracket_iters, inner_iters):
        """Turns an iteration-cap error into a MaxIterExceeded report at the last iterate"""
        sigma = err.sigma if err.sigma is not None else 0.0
        ws = fn.workspace(sigma)
        print_warn(f"{self.name}: {err} (diagnostic={err.diagnostic})")
        return SolveReport(x=ws.x, sigma_star=sigma, residual=abs(ws.psi), psi_evals=fn.evals,
                           bracket_iters=bracket_iters, inner_iters=inner_iters,
                           status=Status.MAX_ITER_EXCEEDED, diagnostic=err.diagnostic)
