"""Hot-loop kernels, dispatched to the compiled extension when it is built.

``BACKEND`` names the implementation picked at import: ``"cython"`` when
``logenc._ckernels`` imports, else ``"python"`` (numpy). Both expose the same
functions with identical results; ``get_backend`` returns either explicitly.
"""

from __future__ import annotations

from types import ModuleType

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not compiled
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
_impl: ModuleType = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not available in this install")
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def maxcut_enumerate(adjacency: np.ndarray, backend: str | None = None) -> tuple[float, int]:
    w = np.ascontiguousarray(adjacency, dtype=np.float64)
    return get_backend(backend).maxcut_enumerate(w)


def qubo_enumerate(q: np.ndarray, backend: str | None = None) -> tuple[float, int]:
    q = np.asarray(q, dtype=np.float64)
    q = np.ascontiguousarray((q + q.T) / 2.0)
    return get_backend(backend).qubo_enumerate(q)


def partition_enumerate(weights, backend: str | None = None) -> tuple[int, int]:
    w = np.ascontiguousarray(weights, dtype=np.int64)
    best, mask = get_backend(backend).partition_enumerate(w)
    return int(best), int(mask)


def local_search_maxcut(adjacency: np.ndarray, x0, backend: str | None = None) -> np.ndarray:
    w = np.ascontiguousarray(adjacency, dtype=np.float64)
    return get_backend(backend).local_search_maxcut(w, np.asarray(x0, dtype=np.float64))
