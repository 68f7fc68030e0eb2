"""Dense linear-algebra kernels for the small matrices used by the package.

Matrices are plain 2-D ``numpy.ndarray`` objects. Everything here targets
the problem sizes that appear in multi-agent synthesis work (dimension up
to a few dozen), so the routines favor explicit, checkable numerics over
raw speed: elimination-based solves with pinned pivot tolerances, a
Lyapunov/Cholesky stability certificate that does not depend on an
eigenvalue solver, and a fixed-point Riccati iteration for LQR gains.
"""

import numpy as np

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NotSymmetric,
    SingularMatrix,
    StabilizationFailed,
)

__all__ = [
    "solve_linear",
    "symmetric_eigenvalues",
    "eigenvalues_general",
    "discrete_lyapunov",
    "schur_certificate",
    "is_schur",
    "dlqr_gain",
    "matrix_rank",
]

#: Pivots below this multiple of |A| abort elimination as singular.
SINGULARITY_TOL = 1e-12

#: Cholesky pivots must exceed this to certify positive definiteness.
CHOLESKY_PIVOT_TOL = 1e-10


def _as_2d(a, name):
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatch("%s must be 2-D, got ndim=%d" % (name, m.ndim))
    return m


def _require_square(m, name):
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch("%s must be square, got %r" % (name, m.shape))


def solve_linear(a, b):
    """Solve ``a @ x = b`` by LU factorization with partial pivoting.

    Parameters
    ----------
    a : (n, n) array_like
        Coefficient matrix.
    b : (n,) or (n, m) array_like
        Right-hand side; the returned ``x`` matches its shape.

    Returns
    -------
    ndarray
        Solution with residual ``|a @ x - b| <= 1e-10 * (1 + |b|)`` for
        well-conditioned systems. A couple of refinement sweeps reusing
        the LU factors keep the residual near machine level.

    Raises
    ------
    SingularMatrix
        If any pivot magnitude falls to ``1e-12 * |a|`` or below.
    """
    a = _as_2d(a, "a")
    _require_square(a, "a")
    b = np.asarray(b, dtype=float)
    b2 = b[:, None] if b.ndim == 1 else b
    if b2.ndim != 2 or b2.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            "rhs rows %r do not match matrix %r" % (b.shape, a.shape))
    n = a.shape[0]
    if n == 0:
        return b.copy()

    scale = np.linalg.norm(a, 2)
    lu = a.copy()
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= SINGULARITY_TOL * scale:
            raise SingularMatrix(
                "pivot %.3e at column %d (threshold %.3e)"
                % (lu[p, k], k, SINGULARITY_TOL * scale))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])

    def back_substitute(rhs):
        y = rhs[perm].copy()
        for k in range(1, n):
            y[k] -= lu[k, :k] @ y[:k]
        for k in range(n - 1, -1, -1):
            y[k] -= lu[k, k + 1:] @ y[k + 1:]
            y[k] /= lu[k, k]
        return y

    x = back_substitute(b2)
    tol = 1e-10 * (1.0 + np.linalg.norm(b2))
    for _ in range(2):
        r = b2 - a @ x
        if np.linalg.norm(r) <= tol:
            break
        x = x + back_substitute(r)
    return x[:, 0] if b.ndim == 1 else x


def symmetric_eigenvalues(m):
    """Eigenvalues of a symmetric matrix, ascending.

    The input must satisfy ``|m - m.T| <= 1e-10 * |m|`` (spectral norms);
    otherwise :class:`NotSymmetric` is raised. The symmetrized matrix
    ``(m + m.T) / 2`` is what actually gets factored.
    """
    m = _as_2d(m, "m")
    _require_square(m, "m")
    if np.linalg.norm(m - m.T, 2) > 1e-10 * np.linalg.norm(m, 2):
        raise NotSymmetric("asymmetry exceeds 1e-10 relative tolerance")
    return np.linalg.eigvalsh((m + m.T) / 2.0)


def eigenvalues_general(m):
    """Eigenvalues of a general real matrix, sorted by ascending modulus.

    Ties are broken by real then imaginary part, which keeps complex
    conjugate pairs adjacent in the output.

    Raises
    ------
    NoConvergence
        If the underlying QR iteration fails (no partial results are
        available in that case).
    """
    m = _as_2d(m, "m")
    _require_square(m, "m")
    try:
        w = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence("eigenvalue iteration failed: %s" % exc) from exc
    order = np.lexsort((w.imag, w.real, np.abs(w)))
    return w[order]


def discrete_lyapunov(m):
    """Solve ``m.T @ P @ m - P = -I`` by vectorization.

    Uses the column-stacking identity vec(A X B) = (B.T kron A) vec(X) and
    :func:`solve_linear` on the resulting n^2 x n^2 system. The returned P
    is symmetrized. Raises :class:`SingularMatrix` when the Lyapunov
    operator is singular (which happens iff some eigenvalue product
    ``lambda_i * lambda_j`` equals one, e.g. for unit-circle modes).
    """
    m = _as_2d(m, "m")
    _require_square(m, "m")
    n = m.shape[0]
    op = np.kron(m.T, m.T) - np.eye(n * n)
    rhs = (-np.eye(n)).reshape(n * n, order="F")
    p = solve_linear(op, rhs).reshape((n, n), order="F")
    return (p + p.T) / 2.0


def _cholesky_pivots(p):
    """Pivot sequence (values under the square root) of a Cholesky run.

    Stops at the first pivot at or below ``CHOLESKY_PIVOT_TOL``; the
    returned list then ends with the offending pivot.
    """
    n = p.shape[0]
    l = np.zeros_like(p)
    pivots = []
    for i in range(n):
        d = p[i, i] - l[i, :i] @ l[i, :i]
        pivots.append(d)
        if d <= CHOLESKY_PIVOT_TOL:
            break
        l[i, i] = np.sqrt(d)
        if i + 1 < n:
            l[i + 1:, i] = (p[i + 1:, i] - l[i + 1:, :i] @ l[i, :i]) / l[i, i]
    return pivots


def schur_certificate(m):
    """Stability certificate for ``m`` via the discrete Lyapunov equation.

    Returns
    -------
    (bool, float or None)
        ``(stable, min_pivot)``. ``stable`` is True iff the Lyapunov
        solution exists and its Cholesky pivots all exceed 1e-10;
        ``min_pivot`` is the smallest pivot seen, or None when the
        Lyapunov system itself was singular.
    """
    try:
        p = discrete_lyapunov(m)
    except SingularMatrix:
        return False, None
    if not np.all(np.isfinite(p)):
        return False, None
    pivots = _cholesky_pivots(p)
    min_pivot = float(min(pivots))
    return min_pivot > CHOLESKY_PIVOT_TOL, min_pivot


def is_schur(m):
    """True iff all eigenvalues of ``m`` lie strictly inside the unit circle.

    Decided algebraically: solve ``m.T P m - P = -I`` and test P for
    positive definiteness by Cholesky. This route is independent of the
    eigenvalue solver, so the two can cross-check each other.
    """
    return schur_certificate(m)[0]


def dlqr_gain(a, b, q, r, tol=1e-12, max_iters=100000):
    """Discrete-time LQR gain by Riccati value iteration.

    Iterates ``P <- Q + A.T (P - P B (R + B.T P B)^-1 B.T P) A`` from
    ``P = Q`` until ``|P_next - P| <= tol * |P_next|`` (Frobenius), then
    returns ``K = -(R + B.T P B)^-1 B.T P A``, so ``u = K x`` gives the
    closed loop ``A + B K``.

    Parameters
    ----------
    a : (n, n) array_like
    b : (n, m) array_like
    q : (n, n) array_like
        State weight, positive semidefinite.
    r : (m, m) array_like
        Input weight, positive definite.

    Returns
    -------
    (m, n) ndarray
        Gain with ``A + B K`` certified Schur.

    Raises
    ------
    StabilizationFailed
        If the recursion diverges, fails to converge, or the resulting
        closed loop is not Schur (e.g. the pair is not stabilizable).
    """
    a = _as_2d(a, "a")
    b = _as_2d(b, "b")
    q = _as_2d(q, "q")
    r = _as_2d(r, "r")
    _require_square(a, "a")
    _require_square(q, "q")
    _require_square(r, "r")
    if b.shape[0] != a.shape[0]:
        raise DimensionMismatch("b rows %r do not match a %r" % (b.shape, a.shape))
    if q.shape != a.shape or r.shape[0] != b.shape[1]:
        raise DimensionMismatch("weight shapes do not match the system")

    p = q.copy()
    converged = False
    for _ in range(max_iters):
        btp = b.T @ p
        try:
            s = solve_linear(r + btp @ b, btp)
        except SingularMatrix as exc:
            raise StabilizationFailed("R + B'PB became singular") from exc
        p_next = q + a.T @ (p - btp.T @ s) @ a
        p_next = (p_next + p_next.T) / 2.0
        if not np.all(np.isfinite(p_next)) or np.linalg.norm(p_next) > 1e100:
            raise StabilizationFailed("Riccati recursion diverged")
        if np.linalg.norm(p_next - p) <= tol * np.linalg.norm(p_next):
            p = p_next
            converged = True
            break
        p = p_next
    if not converged:
        raise StabilizationFailed(
            "Riccati recursion did not converge in %d iterations" % max_iters)

    btp = b.T @ p
    k = -solve_linear(r + btp @ b, btp @ a)
    if not is_schur(a + b @ k):
        raise StabilizationFailed("closed loop failed the Schur certificate")
    return k


def matrix_rank(m, tol=1e-9):
    """Numerical rank by row-echelon elimination with partial pivoting.

    A pivot is counted when its magnitude exceeds ``tol * |m|`` (spectral
    norm). The zero matrix has rank 0.
    """
    m = _as_2d(m, "m")
    if m.size == 0:
        return 0
    work = m.copy()
    threshold = tol * np.linalg.norm(m, 2)
    rows, cols = work.shape
    rank = 0
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        p = row + int(np.argmax(np.abs(work[row:, col])))
        if abs(work[p, col]) <= threshold:
            continue
        if p != row:
            work[[row, p]] = work[[p, row]]
        factors = work[row + 1:, col] / work[row, col]
        work[row + 1:, col:] -= np.outer(factors, work[row, col:])
        rank += 1
        row += 1
    return rank
