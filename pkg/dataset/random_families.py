"""
The two synthetic families: uniform data with b = 0.45 max(a), and the
degenerate normal a = (b + 1, b, ..., b) with b = 50.
"""
import gin
import numpy as np

from core.errors import InputError
from core.instance import Instance
from dataset.dataset_base import InstanceFamilyBase, random_stream

__all__ = [
    "UniformFamily",
    "DegenerateFamily",
    "gen_example1",
    "gen_example2"
]

MAX_REDRAWS = 1000


def _negative_uniform(seed, n, scale):
    # values in [-scale, 0)
    return -scale * (1.0 - random_stream(seed, "y").random(n))


def gen_example1(n, seed, y_scale=3.0, a_scale=20.0, b_fraction=0.45):
    """
    y uniform in [-3, 0)^n, a uniform in [0, 20)^n, b = 0.45 max(a).
    Draws of a with min(a) > b are rejected and redrawn from the same stream.
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    y = _negative_uniform(seed, n, y_scale)
    a_stream = random_stream(seed, "a")
    for _ in range(MAX_REDRAWS):
        a = a_scale * a_stream.random(n)
        b = b_fraction * a.max()
        if a.min() <= b:
            return Instance(y, a, b)
    raise InputError(f"no feasible draw of a in {MAX_REDRAWS} attempts for n = {n}")


def gen_example2(n, seed, y_scale=3.0, b=50.0):
    """y uniform in [-3, 0)^n, a = (b + 1, b, ..., b)"""
    if n < 2:
        raise InputError(f"n must be >= 2, got {n}")
    a = np.full(n, b)
    a[0] = b + 1.0
    return Instance(_negative_uniform(seed, n, y_scale), a, b)


@gin.configurable
class UniformFamily(InstanceFamilyBase):
    name = "ex1"

    def __init__(self, y_scale=3.0, a_scale=20.0, b_fraction=0.45):
        self._y_scale = y_scale
        self._a_scale = a_scale
        self._b_fraction = b_fraction

    def _get_instance(self, n, seed):
        return gen_example1(n, seed, y_scale=self._y_scale, a_scale=self._a_scale,
                            b_fraction=self._b_fraction)


@gin.configurable
class DegenerateFamily(InstanceFamilyBase):
    name = "ex2"

    def __init__(self, y_scale=3.0, b=50.0):
        self._y_scale = y_scale
        self._b = b

    def _get_instance(self, n, seed):
        return gen_example2(n, seed, y_scale=self._y_scale, b=self._b)
