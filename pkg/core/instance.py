"""
The projection problem  min 1/2||x - y||^2  s.t.  a'x <= b, x in the unit simplex.
"""
import enum
import json

import numpy as np

from core.errors import InputError

__all__ = [
    "Instance",
    "Feasibility",
    "feasibility_check",
    "as_vector",
]


def as_vector(values, name):
    """
    Copies `values` into a read-only 1-d float64 array, rejecting empty or non-finite input
    """
    vec = np.array(values, dtype=np.float64)
    if vec.ndim != 1:
        raise InputError(f"{name} must be a 1-d vector, got shape {vec.shape}")
    if vec.size == 0:
        raise InputError(f"{name} must not be empty")
    if not np.all(np.isfinite(vec)):
        raise InputError(f"{name} contains non-finite entries")
    vec.setflags(write=False)
    return vec


class Instance(object):
    """
    The triple (y, a, b) defining one projection problem.

    :param y: point to project, length n
    :param a: normal of the linear constraint, length n
    :param b: offset of the linear constraint
    """

    def __init__(self, y, a, b):
        self._y = as_vector(y, "y")
        self._a = as_vector(a, "a")
        if self._y.shape != self._a.shape:
            raise InputError(f"y and a differ in length: {self._y.size} != {self._a.size}")
        self._b = float(b)
        if not np.isfinite(self._b):
            raise InputError("b must be finite")
        self._a_minus_b = self._a - self._b
        self._a_minus_b.setflags(write=False)

    @property
    def y(self):
        return self._y

    @property
    def a(self):
        return self._a

    @property
    def b(self):
        return self._b

    @property
    def a_minus_b(self):
        """a - b e, so that a'x - b = (a - b e)'x on the simplex"""
        return self._a_minus_b

    @property
    def n(self):
        return self._y.size

    def __repr__(self):
        return f"Instance(n={self.n}, b={self._b!r})"

    def to_dict(self):
        return {"n": self.n,
                "y": self._y.tolist(),
                "a": self._a.tolist(),
                "b": self._b}

    @classmethod
    def from_dict(cls, data):
        try:
            inst = cls(y=data["y"], a=data["a"], b=data["b"])
        except KeyError as key:
            raise InputError(f"instance is missing key {key}")
        if "n" in data and int(data["n"]) != inst.n:
            raise InputError(f"declared n={data['n']} but vectors have length {inst.n}")
        return inst

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


class Feasibility(enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    REDUCES_TO_SIMPLEX = "ReducesToSimplex"


def feasibility_check(inst):
    """
    Screens an instance before any solve.

    The simplex vertex minimising a'x attains min_i a_i, so C is empty iff min_i a_i > b.
    A zero normal turns the constraint into 0 <= b.
    """
    if not np.all(inst.a == 0.0):
        if inst.a.min() > inst.b:
            return Feasibility.INFEASIBLE
        return Feasibility.FEASIBLE
    if inst.b >= 0.0:
        return Feasibility.REDUCES_TO_SIMPLEX
    return Feasibility.INFEASIBLE
