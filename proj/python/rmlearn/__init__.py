"""Reward-machine learning toolkit: Q-learning guided by a hypothesis machine,
machine inference from trace samples, and equivalence checking, on a set of
grid-world benchmark tasks."""

import os as _os
from pathlib import Path as _Path

_data = _Path(__file__).resolve().parent / "data"
if _data.is_dir():
    _os.environ.setdefault("RMLEARN_DATA_DIR", str(_data))

try:
    from ._rmlearn import *  # noqa: F401,F403  (installed package)
except ImportError:
    from _rmlearn import *  # noqa: F401,F403  (in-tree: build dir on PYTHONPATH)
