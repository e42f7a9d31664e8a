"""
Portfolio-return observations and the projection instances they induce.

For m observed return vectors xi_1..xi_m over n assets with mean mu, the
projection subproblem of the robust portfolio model has

    y = u + A'v,   A = [mu - xi_1; ...; mu - xi_m],   a = -mu,   b = -rho,

with u, v uniform draws and rho = min(mu) * uniform, i.e. the constraint
mu'x >= rho written as a'x <= b.
"""
import csv

import gin
import numpy as np

from core.errors import EmptyReturnsFileError, InputError, NonNumericCellError, RaggedRowError
from core.instance import Instance
from dataset.dataset_base import InstanceFamilyBase, check_seed, random_stream

__all__ = [
    "ReturnsTable",
    "read_returns_csv",
    "portfolio_matrix",
    "gen_example3",
    "PortfolioFamily"
]


class ReturnsTable(object):
    """
    :param returns: m x n array, one observation per row
    :param labels: optional list of n asset names
    """

    def __init__(self, returns, labels=None):
        returns = np.array(returns, dtype=np.float64)
        if returns.ndim != 2 or returns.shape[0] < 1 or returns.shape[1] < 1:
            raise InputError(f"returns must be a non-empty m x n matrix, got shape {returns.shape}")
        if not np.all(np.isfinite(returns)):
            raise InputError("returns contain non-finite entries")
        if labels is not None:
            labels = [str(label) for label in labels]
            if len(labels) != returns.shape[1]:
                raise InputError(f"{len(labels)} labels for {returns.shape[1]} assets")
        returns.setflags(write=False)
        self._returns = returns
        self._labels = labels

    @property
    def returns(self):
        return self._returns

    @property
    def labels(self):
        return self._labels

    @property
    def m(self):
        return self._returns.shape[0]

    @property
    def n(self):
        return self._returns.shape[1]

    def columns(self, n):
        """Table restricted to the first n assets"""
        if not 1 <= n <= self.n:
            raise InputError(f"asked for {n} assets, table has {self.n}")
        labels = self._labels[:n] if self._labels is not None else None
        return ReturnsTable(self._returns[:, :n], labels)

    def __repr__(self):
        return f"ReturnsTable(m={self.m}, n={self.n}, labelled={self._labels is not None})"


def _parse_row(row):
    try:
        return [float(cell) for cell in row]
    except ValueError:
        return None


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_returns_csv(path):
    """
    Rectangular CSV, one observation per row. A first row with no numeric cell
    is taken as the asset names.

    :raises EmptyReturnsFileError: no observation rows
    :raises RaggedRowError: a row whose length differs from the first row
    :raises NonNumericCellError: a cell that is not a decimal number
    """
    rows, labels, width = [], None, None
    with open(path, "r", newline="") as f:
        reader = csv.reader(f)
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            line = reader.line_num
            if width is None:
                width = len(row)
                values = _parse_row(row)
                if values is not None:
                    rows.append(values)
                elif not any(_is_number(cell) for cell in row):
                    labels = [cell.strip() for cell in row]
                else:
                    raise NonNumericCellError(f"non-numeric cell in {row}", line)
                continue
            if len(row) != width:
                raise RaggedRowError(f"expected {width} cells, found {len(row)}", line)
            values = _parse_row(row)
            if values is None:
                raise NonNumericCellError(f"non-numeric cell in {row}", line)
            rows.append(values)
    if not rows:
        raise EmptyReturnsFileError(f"{path} holds no observations", 1)
    return ReturnsTable(rows, labels)


def portfolio_matrix(tbl):
    """
    :return: (mu, A) with mu the mean observation and A[i] = mu - xi_i
    """
    mu = tbl.returns.mean(axis=0)
    return mu, mu[np.newaxis, :] - tbl.returns


def gen_example3(tbl, seed):
    """
    :param tbl: :class:`ReturnsTable`
    :param seed: unsigned 64-bit seed
    :return: :class:`core.instance.Instance` with a'x <= b meaning mu'x >= rho
    """
    seed = check_seed(seed)
    mu, matrix = portfolio_matrix(tbl)
    u = random_stream(seed, "u").random(tbl.n)
    v = random_stream(seed, "v").random(tbl.m)
    rho = mu.min() * random_stream(seed, "rho").random()
    return Instance(y=u + matrix.T @ v, a=-mu, b=-rho)


@gin.configurable
class PortfolioFamily(InstanceFamilyBase):
    """
    Portfolio instances over the first n assets of a returns file
    :param csv_path: returns file, see :func:`read_returns_csv`
    """
    name = "ex3"

    def __init__(self, csv_path):
        self._table = read_returns_csv(csv_path)

    @property
    def table(self):
        return self._table

    def _get_instance(self, n, seed):
        return gen_example3(self._table.columns(n), seed)
