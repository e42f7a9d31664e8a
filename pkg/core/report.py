"""
Outcome of one projection solve.
"""
import enum
import json

import numpy as np

from core.errors import InputError

__all__ = [
    "Status",
    "SolveReport"
]


class Status(enum.Enum):
    CONSTRAINT_INACTIVE = "ConstraintInactive"
    CONVERGED = "Converged"
    MAX_ITER_EXCEEDED = "MaxIterExceeded"
    INFEASIBLE = "Infeasible"


class SolveReport(object):
    """
    :param x: the projection (or the last primal iterate when not converged)
    :param sigma_star: dual multiplier of a'x <= b
    :param residual: |psi(sigma_star)|, 0 when the constraint is inactive
    :param psi_evals: number of simplex projections spent
    :param bracket_iters: bracketing probes (LRSA only)
    :param inner_iters: secant or Newton steps
    :param status: :class:`Status`
    :param diagnostic: short tag explaining a MaxIterExceeded status
    """

    def __init__(self,
                 x,
                 sigma_star,
                 residual,
                 psi_evals,
                 bracket_iters,
                 inner_iters,
                 status,
                 diagnostic=None):
        self.x = np.asarray(x, dtype=np.float64)
        self.x.setflags(write=False)
        self.sigma_star = float(sigma_star)
        self.residual = float(residual)
        self.psi_evals = int(psi_evals)
        self.bracket_iters = int(bracket_iters)
        self.inner_iters = int(inner_iters)
        self.status = Status(status)
        self.diagnostic = diagnostic

    @property
    def ok(self):
        return self.status in (Status.CONVERGED, Status.CONSTRAINT_INACTIVE)

    def __repr__(self):
        return (f"SolveReport(status={self.status.value}, sigma={self.sigma_star!r}, "
                f"residual={self.residual!r}, psi_evals={self.psi_evals})")

    def to_dict(self):
        data = {"x": self.x.tolist(),
                "sigma": self.sigma_star,
                "residual": self.residual,
                "psi_evals": self.psi_evals,
                "bracket_iters": self.bracket_iters,
                "inner_iters": self.inner_iters,
                "status": self.status.value}
        if self.diagnostic:
            data["diagnostic"] = self.diagnostic
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(x=data["x"],
                       sigma_star=data["sigma"],
                       residual=data["residual"],
                       psi_evals=data["psi_evals"],
                       bracket_iters=data["bracket_iters"],
                       inner_iters=data["inner_iters"],
                       status=data["status"],
                       diagnostic=data.get("diagnostic"))
        except (KeyError, ValueError) as err:
            raise InputError(f"malformed solve report: {err}")

    def to_json(self, path):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f)
            f.write("\n")

    @classmethod
    def from_json(cls, path):
        with open(path, "r") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as err:
                raise InputError(f"{path} is not valid JSON: {err}")
        return cls.from_dict(data)
