"""
Unit tests for the semismooth Newton solver.
"""
import json
import os
import tempfile

import numpy as np
from absl.testing import absltest
from absl.testing import parameterized

from core.errors import MaxIterExceededError
from core.instance import Instance
from core.report import Status
from core.solver_config import SolverConfig
from dataset.random_families import gen_example1, gen_example2
from dual.dual_function import (DualFunction, build_workspace, h_difference, h_difference_rounding, psi,
                                 psi_right_derivative)
from engines.lrsa import lrsa_project
from engines.ssn import NewtonTrace, line_search, newton_direction, ssn_project
from oracle.active_set import certificate_from_dual, kkt_check, oracle_project

TOY = Instance(y=[2.0, 0.0], a=[1.0, 0.0], b=0.5)
TOY_075 = Instance(y=[2.0, 0.0], a=[1.0, 0.0], b=0.75)
DEGENERATE = Instance(y=[3.0, 0.0, 0.0], a=[51.0, 50.0, 50.0], b=50.0)
# right derivative vanishes at sigma = 0, root at sigma = 4
FLAT_START = Instance(y=[2.0, 0.0], a=[1.5, 1.0], b=1.25)
# psi = 1/32 with a vanishing derivative on [0, 16], dyadic so every step is exact
FLAT_RUN = Instance(y=[2.0, 0.0], a=[1.0625, 1.0], b=1.03125)


class NewtonDirectionTest(parameterized.TestCase):

    @parameterized.named_parameters(
        ("regular", 0.5, -0.5, 0.5 / 0.5005),
        ("flat", 0.5, 0.0, 1000.0),
        ("at_root", 0.0, -3.0, 0.0),
    )
    def test_values(self, psi_val, upsilon, expected):
        self.assertAlmostEqual(newton_direction(psi_val, upsilon, 1.0, 1e-3), expected, delta=1e-9)

    def test_ascent(self):
        rng = np.random.default_rng(51)
        for _ in range(1000):
            psi_val = rng.normal()
            step = newton_direction(psi_val, -rng.exponential(), 1.0, 1e-3)
            self.assertGreater(psi_val * step, 0.0)


class LineSearchTest(absltest.TestCase):

    def test_full_step_on_affine_piece(self):
        cfg = SolverConfig()
        fn = DualFunction(TOY_075)
        r = fn.psi(1.0)
        step = newton_direction(r, fn.right_derivative(1.0), cfg.tau1_hat, cfg.tau2_hat)
        m, sigma = line_search(TOY_075, 1.0, step, r, cfg, fn=fn)
        self.assertEqual(m, 0)
        self.assertAlmostEqual(sigma, 1.5, delta=1e-3)

    def test_backtracks_overshoot(self):
        cfg = SolverConfig()
        r = psi(FLAT_START, 0.0)
        step = newton_direction(r, 0.0, cfg.tau1_hat, cfg.tau2_hat)
        self.assertAlmostEqual(step, 1000.0, delta=1e-9)
        m, sigma = line_search(FLAT_START, 0.0, step, r, cfg)
        self.assertGreater(m, 0)
        gain = h_difference(FLAT_START, build_workspace(FLAT_START, 0.0), build_workspace(FLAT_START, sigma))
        self.assertGreaterEqual(gain, cfg.mu_hat * cfg.delta_hat ** m * r * step)

    def test_stagnation(self):
        cfg = SolverConfig(max_backtracks=0)
        r = psi(FLAT_START, 0.0)
        with self.assertRaises(MaxIterExceededError) as ctx:
            line_search(FLAT_START, 0.0, newton_direction(r, 0.0, 1.0, 1e-3), r, cfg)
        self.assertEqual(ctx.exception.diagnostic, "line_search_stagnation")

    def test_accepts_decrease_below_rounding(self):
        # near the root the Armijo gain is lost in the rounding of h
        cfg = SolverConfig(epsilon=1e-10)
        inst = gen_example1(5, 21)
        report, trace = ssn_project(inst, cfg)
        self.assertEqual(report.status, Status.CONVERGED)
        fn = DualFunction(inst)
        for j in range(len(trace) - 1):
            before = fn.workspace(trace.sigma_seq[j])
            after = build_workspace(inst, trace.sigma_seq[j + 1])
            moved = after.sigma - before.sigma
            target = cfg.mu_hat * before.psi * moved
            if h_difference(inst, before, after) < target:
                self.assertLessEqual(target, h_difference_rounding(inst, before, after))
                self.assertLess(abs(after.psi), abs(before.psi))


class SSNProjectTest(parameterized.TestCase):

    def test_inactive(self):
        report, trace = ssn_project(Instance([2.0, 0.0], [1.0, 0.0], 2.0))
        self.assertEqual(report.status, Status.CONSTRAINT_INACTIVE)
        np.testing.assert_array_equal(report.x, [1.0, 0.0])
        self.assertEqual(trace.sigma_seq, [0.0])

    def test_toy(self):
        report, trace = ssn_project(TOY)
        self.assertEqual(report.status, Status.CONVERGED)
        np.testing.assert_allclose(report.x, [0.5, 0.5], atol=1e-6)
        self.assertAlmostEqual(report.sigma_star, 2.0, delta=1e-5)
        self.assertLessEqual(report.residual, 1e-7)
        self.assertEqual(report.inner_iters, len(trace) - 1)

    def test_degenerate(self):
        report, _ = ssn_project(DEGENERATE)
        self.assertEqual(report.status, Status.CONVERGED)
        np.testing.assert_allclose(report.x, [0.0, 0.5, 0.5], atol=1e-12)
        self.assertGreaterEqual(report.sigma_star, 3.5)

    def test_flat_start(self):
        report, _ = ssn_project(FLAT_START)
        self.assertEqual(report.status, Status.CONVERGED)
        x_ref, _ = oracle_project(FLAT_START)
        np.testing.assert_allclose(report.x, x_ref, atol=1e-6)

    def test_derivative_degenerate(self):
        report, trace = ssn_project(FLAT_RUN, SolverConfig(tau2_hat=0.5))
        self.assertEqual(report.status, Status.MAX_ITER_EXCEEDED)
        self.assertEqual(report.diagnostic, "derivative_degenerate")
        self.assertEqual(trace.sigma_seq, [0.0, 2.0, 4.0, 6.0])
        self.assertEqual(trace.residual_seq, [0.03125] * 4)
        self.assertEqual(trace.kbar_seq, [1] * 4)

    def test_newton_cap(self):
        report, trace = ssn_project(FLAT_START, SolverConfig(max_iter=1))
        self.assertEqual(report.status, Status.MAX_ITER_EXCEEDED)
        self.assertEqual(report.diagnostic, "newton_exhausted")
        self.assertLen(trace, 2)

    def test_trace_properties(self):
        cfg = SolverConfig()
        for seed in range(100):
            inst = gen_example1(20 + seed, seed)
            report, trace = ssn_project(inst, cfg)
            self.assertTrue(report.ok)
            self.assertTrue(all(sigma >= 0.0 for sigma in trace.sigma_seq))
            for j in range(len(trace) - 1):
                before = build_workspace(inst, trace.sigma_seq[j])
                after = build_workspace(inst, trace.sigma_seq[j + 1])
                gain = h_difference(inst, before, after)
                noise = h_difference_rounding(inst, before, after)
                moved = trace.sigma_seq[j + 1] - trace.sigma_seq[j]
                self.assertGreaterEqual(gain, cfg.mu_hat * before.psi * moved - noise)
                self.assertGreater(gain, -noise)

    def test_quadratic_rate(self):
        # r3 / r2^2 <= 10 r2 / r1^2 over the last three residuals of a piece that
        # holds all three iterates, with every residual under 1e-2 and r3 above rounding
        cfg = SolverConfig(epsilon=1e-12, tau1_hat=1.0, tau2_hat=1.0)
        checked = 0
        for seed in range(2000):
            inst = gen_example1(5 + seed % 20, seed, a_scale=1.0)
            _, trace = ssn_project(inst, cfg)
            window = self._last_clean_window(inst, trace)
            if window is None:
                continue
            r1, r2, r3 = window
            self.assertLessEqual(r3 * r1 ** 2, 10.0 * r2 ** 3, msg=f"seed {seed}: {window}")
            checked += 1
            if checked == 100:
                break
        self.assertEqual(checked, 100)

    @staticmethod
    def _last_clean_window(inst, trace):
        res = trace.residual_seq
        for j in range(len(trace) - 3, -1, -1):
            r1, r2, r3 = res[j:j + 3]
            if not (1e-2 > r1 > r2 > r3 > 1e-11):
                continue
            if trace.step_sizes[j] != 1.0 or trace.step_sizes[j + 1] != 1.0:
                continue
            spaces = [build_workspace(inst, sigma) for sigma in trace.sigma_seq[j:j + 3]]
            if any(ws.gamma2.size for ws in spaces):
                continue
            if not all(np.array_equal(ws.gamma1, spaces[0].gamma1) for ws in spaces):
                continue
            if abs(psi_right_derivative(inst, spaces[0])) < r1:
                continue
            return r1, r2, r3
        return None

    def test_oracle_and_lrsa_agreement(self):
        cfg = SolverConfig(epsilon=1e-10)
        for seed in range(1000):
            n = 2 + seed % 9
            inst = gen_example1(n, seed) if seed % 2 else gen_example2(n, seed)
            report, _ = ssn_project(inst, cfg)
            self.assertTrue(report.ok, msg=f"seed {seed}: {report.status} {report.diagnostic}")
            x_ref, _ = oracle_project(inst)
            self.assertLessEqual(np.max(np.abs(report.x - x_ref)), 1e-6)
            self.assertLessEqual(np.max(np.abs(report.x - lrsa_project(inst, cfg).x)), 1e-5)
            self.assertTrue(kkt_check(inst, report.x, certificate_from_dual(inst, report.sigma_star)))

    def test_stagnating_seeds_converge(self):
        for seed in (58, 67, 78, 98):
            inst = gen_example1(20 + seed, seed)
            report, _ = ssn_project(inst)
            self.assertEqual(report.status, Status.CONVERGED, msg=f"seed {seed}: {report.diagnostic}")
            self.assertLessEqual(report.residual, 1e-7)
            np.testing.assert_allclose(report.x, lrsa_project(inst).x, atol=1e-5)

    def test_large_example_counts(self):
        for seed in range(5):
            report, _ = ssn_project(gen_example1(10 ** 6, seed))
            self.assertEqual(report.status, Status.CONVERGED)
            self.assertLessEqual(report.inner_iters, 15)

    def test_degenerate_family(self):
        for seed in range(5):
            report, _ = ssn_project(gen_example2(10 ** 5, seed))
            self.assertTrue(report.ok)
            self.assertIn(report.status, (Status.CONVERGED, Status.CONSTRAINT_INACTIVE))


class NewtonTraceTest(absltest.TestCase):

    def test_json_keys(self):
        trace = NewtonTrace()
        trace.record(0.0, 1.0, 3)
        trace.step_sizes.append(0.5)
        trace.record(1.0, 0.0, 2)
        path = os.path.join(tempfile.mkdtemp(), "trace.json")
        trace.to_json(path)
        with open(path) as f:
            data = json.load(f)
        self.assertEqual(data, {"sigma": [0.0, 1.0], "residual": [1.0, 0.0], "step": [0.5], "kbar": [3, 2]})


if __name__ == "__main__":
    absltest.main()
