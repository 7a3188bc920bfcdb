import numpy as np
from tlroa.exceptions import NotHurwitz

__all__ = [
    'HURWITZ_MARGIN',
    'is_hurwitz',
    'solve_lyapunov_2x2'
]

HURWITZ_MARGIN = 1e-12

def is_hurwitz(a: np.ndarray) -> bool:
    return bool(np.all(np.linalg.eigvals(a).real < -HURWITZ_MARGIN))

def solve_lyapunov_2x2(a: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Symmetric `P` solving `A^T P + P A = -Q` for a Hurwitz 2x2 matrix `A`.

    The three unknowns `(p11, p12, p22)` are found from a 3x3 linear system.
    """

    a = np.asarray(a, dtype=float)
    q = np.asarray(q, dtype=float)

    if a.shape != (2, 2) or q.shape != (2, 2):
        raise ValueError(f'expected 2x2 matrices (got {a.shape} and {q.shape})')

    eigenvalues = np.linalg.eigvals(a)

    if np.any(eigenvalues.real >= -HURWITZ_MARGIN):
        raise NotHurwitz(eigenvalues)

    (a11, a12), (a21, a22) = a

    system = np.array([
        [2 * a11, 2 * a21,   0.0    ],
        [a12,     a11 + a22, a21    ],
        [0.0,     2 * a12,   2 * a22]
    ])

    rhs = -np.array([q[0, 0], (q[0, 1] + q[1, 0]) / 2, q[1, 1]])

    p11, p12, p22 = np.linalg.solve(system, rhs)

    return np.array([[p11, p12], [p12, p22]])
