"""
Unit tests for returns parsing and portfolio instances.
"""
import os
import tempfile

import numpy as np
from absl.testing import absltest

from core.errors import EmptyReturnsFileError, InputError, NonNumericCellError, RaggedRowError
from dataset.portfolio.returns_data import (PortfolioFamily, ReturnsTable, gen_example3, portfolio_matrix,
                                            read_returns_csv)


def _write(text):
    path = os.path.join(tempfile.mkdtemp(), "returns.csv")
    with open(path, "w") as f:
        f.write(text)
    return path


class ReadReturnsTest(absltest.TestCase):

    def test_header(self):
        tbl = read_returns_csv(_write("a,b\n1,0\n0,1\n"))
        self.assertEqual(tbl.labels, ["a", "b"])
        np.testing.assert_array_equal(tbl.returns, [[1.0, 0.0], [0.0, 1.0]])

    def test_no_header(self):
        tbl = read_returns_csv(_write("0.01,-0.02,0.5\n0.03,0.0,-1e-3\n"))
        self.assertIsNone(tbl.labels)
        self.assertEqual((tbl.m, tbl.n), (2, 3))

    def test_ragged(self):
        with self.assertRaises(RaggedRowError) as ctx:
            read_returns_csv(_write("1,2\n3"))
        self.assertEqual(ctx.exception.line, 2)

    def test_non_numeric(self):
        with self.assertRaises(NonNumericCellError) as ctx:
            read_returns_csv(_write("x,y\n1,2\n3,abc\n"))
        self.assertEqual(ctx.exception.line, 3)

    def test_mixed_first_row(self):
        with self.assertRaises(NonNumericCellError) as ctx:
            read_returns_csv(_write("1,x\n0.5,0.5\n"))
        self.assertEqual(ctx.exception.line, 1)

    def test_empty(self):
        with self.assertRaises(EmptyReturnsFileError):
            read_returns_csv(_write(""))
        with self.assertRaises(EmptyReturnsFileError):
            read_returns_csv(_write("a,b\n"))

    def test_table_validation(self):
        with self.assertRaises(InputError):
            ReturnsTable(np.zeros((0, 3)))
        with self.assertRaises(InputError):
            ReturnsTable([[1.0, np.nan]])
        with self.assertRaises(InputError):
            ReturnsTable([[1.0, 2.0]], labels=["only"])


class PortfolioInstanceTest(absltest.TestCase):

    def test_matrix(self):
        mu, matrix = portfolio_matrix(ReturnsTable([[1.0, 0.0], [0.0, 1.0]]))
        np.testing.assert_array_equal(mu, [0.5, 0.5])
        np.testing.assert_array_equal(matrix, [[-0.5, 0.5], [0.5, -0.5]])

    def test_sign_convention(self):
        rng = np.random.default_rng(31)
        tbl = ReturnsTable(rng.normal(0.01, 0.05, size=(30, 6)))
        inst = gen_example3(tbl, 5)
        mu, _ = portfolio_matrix(tbl)
        np.testing.assert_allclose(inst.a, -mu)
        self.assertLessEqual(-inst.b, max(mu.min(), 0.0) + 1e-15)
        x = np.full(6, 1.0 / 6)
        self.assertEqual(float(np.dot(inst.a, x)) <= inst.b, float(np.dot(mu, x)) >= -inst.b)

    def test_deterministic(self):
        tbl = ReturnsTable([[0.1, 0.2, -0.1], [0.0, 0.1, 0.3]])
        self.assertEqual(gen_example3(tbl, 3).to_dict(), gen_example3(tbl, 3).to_dict())

    def test_family_uses_leading_assets(self):
        family = PortfolioFamily(_write("a,b,c\n0.1,0.2,0.3\n0.0,0.1,-0.2\n"))
        inst = family.instance(2, 0)
        self.assertEqual(inst.n, 2)
        with self.assertRaises(InputError):
            family.instance(4, 0)


if __name__ == "__main__":
    absltest.main()
