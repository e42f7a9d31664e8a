#!/usr/bin/env python
# coding: utf-8
"""
Command line for the simplex-plus-halfspace projection toolkit.

    python bin/run_projection.py gen ex1 --n=100 --seed=7 --out_path=inst.json
    python bin/run_projection.py project inst.json --out_path=report.json --algorithm=ssn
    python bin/run_projection.py bench ex1 --sizes=[1000,100000] --reps=5 --out_csv=bench.csv
    python bin/run_projection.py jacobian inst.json --out_path=n0.txt --mode=dense
    python bin/run_projection.py check --n_max=8 --trials=1000

Exit codes: 0 success, 2 infeasible instance, 1 anything else.
"""
import sys
sys.path.append(".")

import fire
import gin
import numpy as np
from absl import logging

from config import projection_imports  # noqa: F401
from core.errors import InfeasibleError, InputError, ProjectionError
from core.instance import Instance
from core.solver_config import SolverConfig
from engines.experiments import Experiments, get_family, get_solver
from jacobian.hs_jacobian import apply, compute_jacobian, save_dense, to_dense
from print_helper import print_error, print_info, set_verbosity

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INFEASIBLE = 2


def _sizes(sizes):
    if not isinstance(sizes, (list, tuple)):
        sizes = [sizes]
    out = []
    for n in sizes:
        if float(n) != int(float(n)) or int(float(n)) < 1:
            raise InputError(f"sizes must be positive integers, got {n!r}")
        out.append(int(float(n)))
    return out


class ProjectionCommands(object):
    """
    :param config_file: gin file, e.g. config/projection.gin
    :param gin_bindings: extra gin bindings, e.g. "SolverConfig.max_iter=100"
    :param debug: log every iteration
    """

    def __init__(self, config_file=None, gin_bindings=None, debug=False):
        set_verbosity(debug)
        if isinstance(gin_bindings, str):
            gin_bindings = [gin_bindings]
        gin.clear_config()
        gin.parse_config_files_and_bindings([config_file] if config_file else [], gin_bindings or [])

    def gen(self, family, n, seed, out_path, returns_csv=None):
        """Writes one instance of family ex1, ex2 or ex3 as JSON"""
        inst = get_family(family, returns_csv=returns_csv).instance(n, seed)
        inst.to_json(out_path)
        print_info(f"{family}: wrote {inst} to {out_path}")

    def project(self, in_path, out_path, algorithm="lrsa", epsilon=None, trace_path=None):
        """
        Solves an instance JSON and writes the SolveReport JSON.
        `trace_path` receives the Newton trace when algorithm is ssn.
        """
        inst = Instance.from_json(in_path)
        cfg = SolverConfig()
        if epsilon is not None:
            cfg = cfg.replace(epsilon=epsilon)
        report, trace = get_solver(algorithm, cfg).solve(inst)
        report.to_json(out_path)
        if trace_path is not None and trace is not None:
            trace.to_json(trace_path)
        if not report.ok:
            print_error(f"{in_path}: {report.status.value} ({report.diagnostic})")
            raise SystemExit(EXIT_FAILURE)

    def bench(self, family, sizes, out_csv, reps=5, algorithms=None, workers=None, base_seed=None,
              returns_csv=None):
        """Timing sweep, one CSV row per (n, algorithm)"""
        overrides = {}
        if algorithms is not None:
            overrides["algorithms"] = [algorithms] if isinstance(algorithms, str) else list(algorithms)
        if workers is not None:
            overrides["workers"] = workers
        if base_seed is not None:
            overrides["base_seed"] = base_seed
        experiment = Experiments(**overrides)
        rows = experiment.bench(get_family(family, returns_csv=returns_csv), _sizes(sizes), reps=reps,
                                out_csv=out_csv)
        if any(row.status != "ok" for row in rows):
            print_error(f"bench: failed rows in {out_csv}")
            raise SystemExit(EXIT_FAILURE)

    def jacobian(self, in_path, out_path, mode="dense", vector_path=None):
        """
        Solves the instance with LRSA, then writes the Jacobian of the projection
        as a dense matrix (mode=dense) or its product with the vector stored in
        `vector_path` (mode=apply).
        """
        if mode not in ("dense", "apply"):
            raise InputError(f"mode must be dense or apply, got {mode!r}")
        if mode == "apply" and vector_path is None:
            raise InputError("mode apply needs --vector_path")
        inst = Instance.from_json(in_path)
        report = get_solver("lrsa").project(inst)
        if not report.ok:
            print_error(f"{in_path}: {report.status.value} ({report.diagnostic})")
            raise SystemExit(EXIT_FAILURE)

        jac = compute_jacobian(inst, report.x)
        print_info(f"jacobian: {jac}")
        if mode == "dense":
            save_dense(to_dense(jac), out_path)
        else:
            save_dense(apply(jac, np.loadtxt(vector_path, ndmin=1).ravel()), out_path)

    def check(self, n_max=8, trials=1000, seed=0):
        """Oracle equivalence sweep, exits 1 when any algorithm deviates"""
        summary = Experiments().check(n_max=n_max, trials=trials, seed=seed)
        if not summary.passed:
            raise SystemExit(EXIT_FAILURE)


def main(argv=None):
    """
    :param argv: command line without the program name, sys.argv[1:] when None
    :return: exit code
    """
    try:
        fire.Fire(ProjectionCommands, command=argv)
    except fire.core.FireExit as err:
        return EXIT_OK if not err.code else EXIT_FAILURE
    except SystemExit as err:
        return err.code if err.code is not None else EXIT_OK
    except InfeasibleError as err:
        print_error(f"infeasible: {err}")
        return EXIT_INFEASIBLE
    except (ProjectionError, OSError, ValueError) as err:
        print_error(err)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    logging.set_verbosity(logging.INFO)
    sys.exit(main())
