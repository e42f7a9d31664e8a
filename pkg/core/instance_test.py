"""
Unit tests for the instance, report and solver-config value types.
"""
import os
import tempfile

import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

from core.errors import InputError
from core.instance import Instance, Feasibility, feasibility_check
from core.report import SolveReport, Status
from core.solver_config import SolverConfig


class FeasibilityTest(parameterized.TestCase):

    @parameterized.named_parameters(
        ("min_a_above_b", [0.1, 0.2], [2.0, 3.0], 1.0, Feasibility.INFEASIBLE),
        ("zero_normal_zero_offset", [0.1, 0.2], [0.0, 0.0], 0.0, Feasibility.REDUCES_TO_SIMPLEX),
        ("zero_normal_negative_offset", [0.1, 0.2], [0.0, 0.0], -1.0, Feasibility.INFEASIBLE),
        ("vertex_feasible", [0.1, 0.2], [1.0, 0.0], 0.5, Feasibility.FEASIBLE),
        ("min_a_equals_b", [0.0, 0.0, 0.0], [1.0, 2.0, 3.0], 1.0, Feasibility.FEASIBLE),
    )
    def test_feasibility(self, y, a, b, expected):
        self.assertEqual(feasibility_check(Instance(y, a, b)), expected)


class InstanceTest(absltest.TestCase):

    def test_rejects_non_finite(self):
        with self.assertRaises(InputError):
            Instance([1.0, np.nan], [1.0, 0.0], 0.5)
        with self.assertRaises(InputError):
            Instance([1.0, 0.0], [np.inf, 0.0], 0.5)
        with self.assertRaises(InputError):
            Instance([1.0, 0.0], [1.0, 0.0], np.nan)

    def test_rejects_empty_and_mismatch(self):
        with self.assertRaises(InputError):
            Instance([], [], 0.0)
        with self.assertRaises(InputError):
            Instance([1.0, 2.0], [1.0], 0.0)

    def test_vectors_are_read_only(self):
        inst = Instance([2.0, 0.0], [1.0, 0.0], 0.5)
        with self.assertRaises(ValueError):
            inst.y[0] = 1.0

    def test_json_file(self):
        inst = Instance([2.0, 0.0, -1.5], [1.0, 0.0, 3.25], 0.5)
        tmp_dir = tempfile.mkdtemp()
        path = os.path.join(tmp_dir, "inst.json")
        inst.to_json(path)
        loaded = Instance.from_json(path)
        np.testing.assert_array_equal(loaded.y, inst.y)
        np.testing.assert_array_equal(loaded.a, inst.a)
        self.assertEqual(loaded.b, inst.b)
        self.assertEqual(loaded.n, 3)

    def test_declared_size_mismatch(self):
        with self.assertRaises(InputError):
            Instance.from_dict({"n": 3, "y": [1.0, 2.0], "a": [0.0, 1.0], "b": 0.0})
        with self.assertRaises(InputError):
            Instance.from_dict({"n": 2, "y": [1.0, 2.0], "b": 0.0})


class SolveReportTest(absltest.TestCase):

    def test_dict_keys(self):
        report = SolveReport(x=[0.5, 0.5], sigma_star=2.0, residual=0.0, psi_evals=3,
                             bracket_iters=2, inner_iters=0, status=Status.CONVERGED)
        data = report.to_dict()
        self.assertEqual(set(data.keys()),
                         {"x", "sigma", "residual", "psi_evals", "bracket_iters", "inner_iters", "status"})
        self.assertEqual(data["status"], "Converged")
        self.assertTrue(report.ok)

    def test_diagnostic_survives_json(self):
        report = SolveReport(x=[1.0], sigma_star=0.3, residual=1e-3, psi_evals=500,
                             bracket_iters=0, inner_iters=500, status="MaxIterExceeded",
                             diagnostic="derivative_degenerate")
        tmp_dir = tempfile.mkdtemp()
        path = os.path.join(tmp_dir, "report.json")
        report.to_json(path)
        loaded = SolveReport.from_json(path)
        self.assertEqual(loaded.status, Status.MAX_ITER_EXCEEDED)
        self.assertEqual(loaded.diagnostic, "derivative_degenerate")
        self.assertFalse(loaded.ok)

    def test_malformed(self):
        with self.assertRaises(InputError):
            SolveReport.from_dict({"x": [1.0], "status": "Converged"})

    def test_invalid_json(self):
        path = os.path.join(tempfile.mkdtemp(), "report.json")
        with open(path, "w") as f:
            f.write("{\"x\": [1.0],")
        with self.assertRaises(InputError):
            SolveReport.from_json(path)


class SolverConfigTest(parameterized.TestCase):

    def test_defaults(self):
        cfg = SolverConfig()
        self.assertEqual(cfg.epsilon, 1e-7)
        self.assertEqual(cfg.rho, 2.0)
        self.assertEqual(cfg.delta_sigma, 1.0)
        self.assertEqual(cfg.sigma0, 0.0)
        self.assertEqual(cfg.delta_hat, 0.5)
        self.assertEqual(cfg.tau1_hat, 1.0)
        self.assertEqual(cfg.tau2_hat, 1e-3)
        self.assertEqual(cfg.mu_hat, 0.25)
        self.assertEqual(cfg.max_iter, 500)

    @parameterized.parameters(
        {"epsilon": 0.0},
        {"rho": 1.0},
        {"delta_sigma": -1.0},
        {"mu_hat": 0.5},
        {"delta_hat": 1.0},
        {"tau1_hat": 0.0},
        {"tau2_hat": 1.5},
        {"sigma0": -0.1},
        {"max_iter": 0},
    )
    def test_out_of_range(self, **kwargs):
        with self.assertRaises(InputError):
            SolverConfig(**kwargs)

    def test_replace(self):
        cfg = SolverConfig().replace(epsilon=1e-9, max_iter=20)
        self.assertEqual(cfg.epsilon, 1e-9)
        self.assertEqual(cfg.max_iter, 20)
        self.assertEqual(cfg.rho, 2.0)


if __name__ == "__main__":
    absltest.main()
