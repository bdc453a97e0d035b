"""Dense symmetric eigenvalues by the cyclic Jacobi method."""

from __future__ import annotations

import numpy as np


def _round_robin(m: int):
    """Yield the m-1 rounds of a round-robin pairing of range(m), m even."""
    players = list(range(m))
    for _ in range(m - 1):
        half = m // 2
        yield players[:half], players[half:][::-1]
        players = [players[0], players[-1]] + players[1:-1]


def jacobi_eigvalsh(A, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """
    Eigenvalues of a real symmetric matrix, sorted descending.

    Each sweep visits every off-diagonal pair once.  Pairs are grouped into
    rounds of disjoint index pairs so that all rotations of a round act on
    separate rows and columns and can be applied together.  Iteration stops
    once the off-diagonal Frobenius norm drops below ``tol * ||A||_F``.
    """
    A = np.array(A, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(A).max(initial=0.0))):
        raise ValueError("matrix is not symmetric")
    n = A.shape[0]
    if n <= 1:
        return np.sort(np.diag(A))[::-1]
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return np.zeros(n)
    m = n + (n % 2)
    rounds = []
    for top, bot in _round_robin(m):
        pairs = [(min(a, b), max(a, b)) for a, b in zip(top, bot) if a < n and b < n]
        p = np.array([a for a, _ in pairs])
        q = np.array([b for _, b in pairs])
        rounds.append((p, q))

    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off < tol * scale:
            break
        for p, q in rounds:
            apq = A[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (A[q, q] - A[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            Ap, Aq = A[:, p].copy(), A[:, q].copy()
            A[:, p] = c * Ap - s * Aq
            A[:, q] = s * Ap + c * Aq
            Ap, Aq = A[p, :].copy(), A[q, :].copy()
            A[p, :] = c[:, None] * Ap - s[:, None] * Aq
            A[q, :] = s[:, None] * Ap + c[:, None] * Aq
    else:
        raise ArithmeticError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(A))[::-1]


def symmetrize_tridiagonal(sub, diag, sup) -> np.ndarray:
    """
    Symmetric matrix similar to the tridiagonal (sub, diag, sup).

    A diagonal similarity turns each off-diagonal pair (sup_k, sub_k) into
    sqrt(sup_k * sub_k); this needs every product to be non-negative.
    """
    sub, diag, sup = (np.asarray(v, dtype=float) for v in (sub, diag, sup))
    prods = sub * sup
    if np.any(prods < 0):
        raise ValueError("off-diagonal products must be non-negative")
    off = np.sqrt(prods)
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
