"""
Experiments class that runs the projection solvers over instance families:
timing sweeps written as CSV and the oracle equivalence check
"""
import csv
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import gin
import numpy as np
from tqdm import tqdm

from core.errors import InfeasibleError, InputError, ProjectionError
from core.solver_config import SolverConfig
from dataset.portfolio.returns_data import PortfolioFamily
from dataset.random_families import DegenerateFamily, UniformFamily
from engines.lrsa import LRSASolver
from engines.ssn import SSNSolver
from oracle.active_set import MAX_ORACLE_SIZE, oracle_sweep
from print_helper import print_error, print_info

__all__ = [
    "BenchRow",
    "CheckSummary",
    "Experiments",
    "get_family",
    "get_solver",
    "BENCH_COLUMNS"
]

SOLVERS = {"lrsa": LRSASolver, "ssn": SSNSolver}

BENCH_COLUMNS = ["n", "algorithm", "avgtime_s", "iter", "residual", "status"]

# deviation from the oracle allowed by `check`
CHECK_TOLERANCE = 1e-6
CHECK_EPSILON = 1e-10

BenchRow = namedtuple("BenchRow", BENCH_COLUMNS)

CheckSummary = namedtuple("CheckSummary", ["sweeps", "passed"])


def get_family(name, returns_csv=None):
    """
    :param name: "ex1", "ex2" or "ex3"
    :param returns_csv: returns file, required by "ex3"
    :return: :class:`dataset.dataset_base.InstanceFamilyBase`
    """
    if name == UniformFamily.name:
        return UniformFamily()
    if name == DegenerateFamily.name:
        return DegenerateFamily()
    if name == PortfolioFamily.name:
        if returns_csv is None:
            raise InputError("family ex3 needs a returns csv file")
        return PortfolioFamily(csv_path=returns_csv)
    raise InputError(f"unknown family {name!r}, expected one of ex1, ex2, ex3")


def get_solver(name, config=None):
    try:
        return SOLVERS[name.lower()](config=config)
    except KeyError:
        raise InputError(f"unknown algorithm {name!r}, expected one of {sorted(SOLVERS)}")


def _iterations(report):
    # LRSA counts its probes too, SSN has none
    return report.bracket_iters + report.inner_iters


def _timed_solve(solver, inst):
    """
    :return: (seconds, SolveReport or None, failure tag or None)
    """
    start = time.perf_counter()
    try:
        report = solver.project(inst)
    except InfeasibleError:
        return time.perf_counter() - start, None, "Infeasible"
    except ProjectionError as err:
        print_error(f"{solver.name}: {err}")
        return time.perf_counter() - start, None, "Error"
    elapsed = time.perf_counter() - start
    if not report.ok:
        return elapsed, report, report.diagnostic or report.status.value
    return elapsed, report, None


def _bench_row(n, solver, outcomes):
    """Folds the per-rep outcomes of one (n, algorithm) cell into a BenchRow"""
    times = [elapsed for elapsed, _, _ in outcomes]
    reports = [report for _, report, _ in outcomes if report is not None]
    failures = [tag for _, _, tag in outcomes if tag is not None]
    last = outcomes[-1][1]
    return BenchRow(n=n,
                    algorithm=solver.name,
                    avgtime_s=float(np.mean(times)),
                    iter=max((_iterations(report) for report in reports), default=0),
                    residual=last.residual if last is not None else float("nan"),
                    status=failures[0] if failures else "ok")


@gin.configurable
class Experiments(object):
    """
    Runs the solvers over seeded instance families.

    :param name: experiment name used in log lines
    :param algorithms: solver names, any of "lrsa", "ssn"
    :param config: :class:`core.solver_config.SolverConfig` shared by all solvers
    :param workers: threads solving in parallel during `bench`
    :param base_seed: root seed, per instance seeds are derived from (base_seed, n, rep)
    """

    def __init__(self,
                 name="projection",
                 algorithms=("lrsa", "ssn"),
                 config=None,
                 workers=1,
                 base_seed=0):
        if int(workers) != workers or workers < 1:
            raise InputError(f"workers must be a positive integer, got {workers!r}")
        self._name = name
        self._config = config if config is not None else SolverConfig()
        self._solvers = [get_solver(algorithm, self._config) for algorithm in algorithms]
        self._workers = int(workers)
        self._base_seed = base_seed

    @property
    def solvers(self):
        return list(self._solvers)

    def bench(self, family, sizes, reps=5, out_csv=None):
        """
        Solves `reps` instances of every size with every algorithm.

        Rows come out in (n, algorithm) order whatever the completion order of
        the workers. Only the solve call is timed.

        :param family: :class:`dataset.dataset_base.InstanceFamilyBase`
        :param sizes: problem sizes
        :param reps: instances per size
        :param out_csv: optional path, the rows are written there with header :data:`BENCH_COLUMNS`
        :return: list of :class:`BenchRow`
        """
        if int(reps) != reps or reps < 1:
            raise InputError(f"reps must be a positive integer, got {reps!r}")
        sizes = [int(n) for n in sizes]
        reps = int(reps)
        print_info(f"{self._name}: bench {family.name} sizes={sizes} reps={reps} "
                   f"algorithms={[solver.name for solver in self._solvers]}")

        rows = []
        with ThreadPoolExecutor(max_workers=self._workers) as pool:
            for n in tqdm(sizes, desc="bench"):
                instances = [family.instance(n, family.derive_seed(self._base_seed, n, rep)) for rep in range(reps)]
                for solver in self._solvers:
                    outcomes = list(pool.map(lambda inst: _timed_solve(solver, inst), instances))
                    row = _bench_row(n, solver, outcomes)
                    print_info(f"{self._name}: {row}")
                    rows.append(row)

        if out_csv is not None:
            self.write_csv(rows, out_csv)
        return rows

    @staticmethod
    def write_csv(rows, path):
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(BENCH_COLUMNS)
            for row in rows:
                writer.writerow([row.n, row.algorithm, f"{row.avgtime_s:.6f}", row.iter,
                                 f"{row.residual:.6e}", row.status])

    def check(self, n_max=8, trials=1000, seed=0):
        """
        Oracle equivalence over the two synthetic families.

        `trials` instances per family with n cycling through 2..n_max are solved
        by every algorithm (at epsilon no looser than 1e-10) and by the
        exhaustive oracle.

        :return: :class:`CheckSummary`, sweeps maps "family/algorithm" to a
                 :class:`oracle.active_set.SweepResult`
        """
        if int(n_max) != n_max or not 2 <= n_max <= MAX_ORACLE_SIZE:
            raise InputError(f"n_max must be an integer in [2, {MAX_ORACLE_SIZE}], got {n_max!r}")
        if int(trials) != trials or trials < 0:
            raise InputError(f"trials must be a non negative integer, got {trials!r}")
        n_max, trials = int(n_max), int(trials)

        config = self._config.replace(epsilon=min(self._config.epsilon, CHECK_EPSILON))
        solvers = {solver.name: type(solver)(config=config).project for solver in self._solvers}

        sweeps = {}
        for family in (UniformFamily(), DegenerateFamily()):
            sizes = [2 + t % (n_max - 1) for t in range(trials)]
            instances = (family.instance(n, family.derive_seed(seed, n, t)) for t, n in enumerate(sizes))
            for algorithm, result in oracle_sweep(instances, solvers).items():
                sweeps[f"{family.name}/{algorithm}"] = result

        passed = True
        for key, result in sorted(sweeps.items()):
            ok = (result.max_deviation <= CHECK_TOLERANCE
                  and result.kkt_failures == 0 and result.solve_failures == 0)
            passed = passed and ok
            line = (f"{key}: trials={result.trials} max_deviation={result.max_deviation:.3e} "
                    f"kkt_failures={result.kkt_failures} solve_failures={result.solve_failures}")
            if ok:
                print_info(line)
            else:
                print_error(line)
        return CheckSummary(sweeps=sweeps, passed=passed)
