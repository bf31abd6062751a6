"""Small 2x2 helpers shared by the averaging solvers."""

import numpy as np

from .errors import TransformSingularError

_COND_LIMIT = 1e12


def stack2x2(m11, m12, m21, m22) -> np.ndarray:
    """Assemble 2x2 matrices, stacked along a leading axis for array input."""
    parts = np.broadcast_arrays(*(np.asarray(m, dtype=complex) for m in (m11, m12, m21, m22)))
    m11, m12, m21, m22 = parts
    return np.stack([np.stack([m11, m12], -1), np.stack([m21, m22], -1)], -2)


def invert_near_identity(transform: np.ndarray, x0: np.ndarray) -> np.ndarray:
    """Solve ``(I + transform) v = x0``."""
    m = np.eye(2) + transform
    if np.linalg.cond(m) > _COND_LIMIT:
        raise TransformSingularError(
            "I + transform(0) is singular; the expansion parameter is too large"
        )
    return np.linalg.solve(m, x0)
