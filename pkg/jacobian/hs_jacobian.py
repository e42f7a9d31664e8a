"""
The canonical element N0 of the generalized Jacobian of x = P_C(y).

N0 is the orthogonal projector onto the null space of the constraints active
at x: the simplex normal e, the coordinates with x_i = 0 and, when a'x = b,
the normal a. Restricted to the support K2 this is

    Inactive:          Diag(w) - e e' / |K2|
    ActiveEtaNonzero:  Diag(w) - v v' / eta - c (a e' + e a'),
                       v = sqrt|K2| a - ||a|| e,  c = (sqrt|K2| ||a|| - a'e) / eta
    ActiveEtaZero:     Diag(w) - u u' / eta1,
                       u = sgn(a'e) ||a|| a + sqrt|K2| e,  eta1 = (||a||^2 + |K2|)^2

where w is the indicator of K2, a and e are restricted to K2 and
eta = ||a||^2 |K2| - (a'e)^2.
"""
import enum

import numpy as np

from core.errors import InputError, ProjectionError
from core.instance import as_vector

__all__ = [
    "JacobianCase",
    "JacobianOperator",
    "compute_jacobian",
    "apply",
    "to_dense",
    "dense_reference_jacobian",
    "save_dense",
    "MAX_DENSE_SIZE"
]

MAX_DENSE_SIZE = 5000
# eta <= ETA_TOL * ||a_K2||^2 |K2| selects the parallel case
ETA_TOL = 1e-10


class JacobianCase(enum.Enum):
    INACTIVE = "Inactive"
    ACTIVE_ETA_NONZERO = "ActiveEtaNonzero"
    ACTIVE_ETA_ZERO = "ActiveEtaZero"


class JacobianOperator(object):
    """
    N0 in factored form, applied in O(n).

    :param case_tag: :class:`JacobianCase`
    :param k1: indices with x_i = 0
    :param k2: support of x
    :param a_vec: the constraint normal a
    :param a_k2_norm: ||a_K2||
    :param a_dot_e: sum of a over K2
    :param eta: ||a_K2||^2 |K2| - (a_K2'e)^2
    :param eta1: (||a_K2||^2 + |K2|)^2
    """

    def __init__(self, case_tag, k1, k2, a_vec, a_k2_norm, a_dot_e, eta, eta1):
        self.case_tag = JacobianCase(case_tag)
        self.k1 = k1
        self.k2 = k2
        self.a_vec = a_vec
        self.a_k2_norm = float(a_k2_norm)
        self.a_dot_e = float(a_dot_e)
        self.eta = float(eta)
        self.eta1 = float(eta1)

        self.w = np.zeros(a_vec.size)
        self.w[k2] = 1.0
        self.w.setflags(write=False)
        self._a_w = self.a_vec * self.w
        root_k = np.sqrt(k2.size)
        if self.case_tag is JacobianCase.ACTIVE_ETA_NONZERO:
            self._v = root_k * self._a_w - self.a_k2_norm * self.w
            self._c = (root_k * self.a_k2_norm - self.a_dot_e) / self.eta
        elif self.case_tag is JacobianCase.ACTIVE_ETA_ZERO:
            self._u = np.sign(self.a_dot_e) * self.a_k2_norm * self._a_w + root_k * self.w

    @property
    def n(self):
        return self.a_vec.size

    def __repr__(self):
        return "JacobianOperator(case={}, n={}, |K2|={}, eta={:.6g})".format(
            self.case_tag.value, self.n, self.k2.size, self.eta)


def compute_jacobian(inst, x, active_tol=1e-8):
    """
    :param inst: :class:`core.instance.Instance`
    :param x: the projection of inst.y, from either solver
    :param active_tol: x_i <= active_tol counts as zero, |a'x - b| <= active_tol (1 + |b|) as active
    :return: :class:`JacobianOperator`
    """
    x = as_vector(x, "x")
    if x.size != inst.n:
        raise InputError(f"x has length {x.size}, instance has n = {inst.n}")
    if active_tol <= 0:
        raise InputError("active_tol must be > 0")

    support = x > active_tol
    k2 = np.flatnonzero(support)
    k1 = np.flatnonzero(~support)
    if k2.size == 0:
        raise ProjectionError("x has no positive coordinate, it is not a simplex projection")

    a_k2 = inst.a[k2]
    k = k2.size
    a_k2_norm = float(np.linalg.norm(a_k2))
    a_dot_e = float(a_k2.sum())
    centered = a_k2 - a_dot_e / k
    # equals ||a_K2||^2 k - (a_K2'e)^2 and is exactly 0 when a_K2 is constant
    eta = k * float(np.dot(centered, centered))
    eta1 = (a_k2_norm ** 2 + k) ** 2

    if abs(float(np.dot(inst.a, x)) - inst.b) > active_tol * (1.0 + abs(inst.b)):
        case = JacobianCase.INACTIVE
    elif eta > ETA_TOL * a_k2_norm ** 2 * k:
        case = JacobianCase.ACTIVE_ETA_NONZERO
    else:
        case = JacobianCase.ACTIVE_ETA_ZERO
    return JacobianOperator(case_tag=case, k1=k1, k2=k2, a_vec=inst.a, a_k2_norm=a_k2_norm,
                            a_dot_e=a_dot_e, eta=eta, eta1=eta1)


def apply(jac, d):
    """N0 d in O(n)"""
    d = np.asarray(d, dtype=np.float64)
    if d.shape != (jac.n,):
        raise InputError(f"direction has shape {d.shape}, expected ({jac.n},)")
    w = jac.w
    out = w * d
    e_d = float(d[jac.k2].sum())
    if jac.case_tag is JacobianCase.INACTIVE:
        out -= (e_d / jac.k2.size) * w
    elif jac.case_tag is JacobianCase.ACTIVE_ETA_NONZERO:
        a_d = float(np.dot(jac._a_w, d))
        out -= (float(np.dot(jac._v, d)) / jac.eta) * jac._v
        out -= jac._c * (e_d * jac._a_w + a_d * w)
    else:
        out -= (float(np.dot(jac._u, d)) / jac.eta1) * jac._u
    return out


def to_dense(jac):
    """
    N0 as an n x n array
    :raises InputError: n > 5000
    """
    if jac.n > MAX_DENSE_SIZE:
        raise InputError(f"dense Jacobian refused for n = {jac.n} > {MAX_DENSE_SIZE}")
    w = jac.w
    dense = np.diag(w)
    if jac.case_tag is JacobianCase.INACTIVE:
        dense -= np.outer(w, w) / jac.k2.size
    elif jac.case_tag is JacobianCase.ACTIVE_ETA_NONZERO:
        dense -= np.outer(jac._v, jac._v) / jac.eta
        dense -= jac._c * (np.outer(jac._a_w, w) + np.outer(w, jac._a_w))
    else:
        dense -= np.outer(jac._u, jac._u) / jac.eta1
    return dense


def dense_reference_jacobian(inst, x, active_tol=1e-8):
    """
    I - U U' with U an orthonormal basis of the active constraint normals,
    obtained from an SVD. O(n^3), for checking the structured formulas.
    """
    x = as_vector(x, "x")
    if inst.n > MAX_DENSE_SIZE:
        raise InputError(f"dense Jacobian refused for n = {inst.n} > {MAX_DENSE_SIZE}")
    n = inst.n
    zeros = np.flatnonzero(x <= active_tol)
    normals = [np.ones(n)]
    normals.extend(np.eye(n)[zeros])
    if abs(float(np.dot(inst.a, x)) - inst.b) <= active_tol * (1.0 + abs(inst.b)):
        normals.append(inst.a)
    u, s, _ = np.linalg.svd(np.column_stack(normals), full_matrices=False)
    basis = u[:, s > 1e-10 * s.max()]
    return np.eye(n) - basis @ basis.T


def save_dense(dense, path):
    """Writes rows of space separated decimals"""
    np.savetxt(path, np.atleast_2d(dense), fmt="%.17g", delimiter=" ")
