"""Min-plus approximate dynamic programming."""

from ._core import *  # noqa: F401,F403
from ._core import NonConvergenceError, GridTooCoarseError, run_experiment


def report_dict(text):
    """Parse the ``key = value`` report returned by run_experiment."""
    out = {}
    for line in text.splitlines():
        key, sep, value = line.partition(" = ")
        if sep:
            out[key.strip()] = value.strip()
    return out


def experiment(name, **options):
    return report_dict(run_experiment(name, {k: str(v) for k, v in options.items()}))
