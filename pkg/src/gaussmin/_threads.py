"""Apply the GAUSSMIN_THREADS cap before any BLAS-backed import.

BLAS thread pools read their env vars at load time, so this module must be
imported before numpy.  It is effective when a process starts through the
CLI or imports gaussmin first; best effort otherwise.
"""

import os
import sys

_CAP = os.environ.get("GAUSSMIN_THREADS")

if _CAP and "numpy" not in sys.modules:
    for _var in (
        "OPENBLAS_NUM_THREADS",
        "OMP_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        os.environ.setdefault(_var, _CAP)
