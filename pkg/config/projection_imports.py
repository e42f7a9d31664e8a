"""
Imports every gin configurable so that config/*.gin files parse.
"""
from core.solver_config import SolverConfig
from dataset.random_families import UniformFamily, DegenerateFamily
from dataset.portfolio.returns_data import PortfolioFamily
from engines.lrsa import LRSASolver
from engines.ssn import SSNSolver
from engines.experiments import Experiments
