"""
Wrapper for absl logging with colorful text output
"""
from absl import logging

CEND = '\33[0m'
CBOLD = '\33[1m'

CRED = '\33[31m'
CVIOLET = '\33[35m'
CBEIGE = '\33[36m'
CGREEN2 = '\33[92m'
CYELLOW2 = '\33[93m'


def print_info(*args):
    """
    Logs the message in green color
    :param args: user string information
    :return: stdout
    """
    logging.info(CGREEN2 + " ".join(str(arg) for arg in args) + CEND)


def print_error(*args):
    """
    Logs the message in red color
    :param args: user string information
    :return: stdout
    """
    logging.error(CRED + " ".join(str(arg) for arg in args) + CEND)


def print_warn(*args):
    """
    Logs the message in yellow color
    :param args: user string information
    :return: stdout
    """
    logging.warning(CYELLOW2 + " ".join(str(arg) for arg in args) + CEND)


def print_debug(*args):
    """
    Logs the message in violet color, only visible with debug verbosity
    :param args: user string information
    :return: stdout
    """
    logging.debug(CVIOLET + " ".join(str(arg) for arg in args) + CEND)


def print_report(algorithm, report):
    """
    One line summary of a projection solve
    :param algorithm: solver name, e.g. "LRSA"
    :param report: :class:`core.report.SolveReport`
    """
    line = (f"{CBOLD}{algorithm}{CEND}{CBEIGE} status={report.status.value} "
            f"sigma={report.sigma_star:.6g} |psi|={report.residual:.3e} "
            f"psi_evals={report.psi_evals} bracket={report.bracket_iters} "
            f"inner={report.inner_iters}")
    if report.diagnostic:
        line += f" diagnostic={report.diagnostic}"
    logging.info(line + CEND)


def set_verbosity(debug=False):
    logging.set_verbosity(logging.DEBUG if debug else logging.INFO)
