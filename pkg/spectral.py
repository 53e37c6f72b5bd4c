"""
Linear algebra on substitution matrices.

Floating point work (eigenvalues, Perron-Frobenius vectors) is done with numpy.
Anything that must be exact (primitivity, ranks, determinants, characteristic
polynomials) stays in integers, through sympy where elimination is needed.
"""

import logging
from functools import lru_cache, wraps

import numpy as np
import sympy

from constants import QR_MAX_SWEEPS, QR_TOLERANCE, POWER_ITERATION_TOLERANCE, POWER_ITERATION_MAX_STEPS
from exceptions import InvalidArgument, NotPrimitive, NumericalFailure
from models import Eigenvalue, IntegerMatrix, PFData, Substitution
from substitution import substitution_matrix


logger = logging.getLogger(__name__)


def to_sympy(matrix: IntegerMatrix) -> sympy.Matrix:
    return sympy.Matrix(matrix.dimension, matrix.dimension, lambda i, j: matrix.rows[i][j])


def from_sympy(matrix: sympy.Matrix) -> IntegerMatrix:
    return IntegerMatrix(rows=tuple(tuple(int(matrix[i, j]) for j in range(matrix.cols)) for i in range(matrix.rows)))


def _zero_pattern(matrix: IntegerMatrix) -> np.ndarray:
    for row in matrix.rows:
        for entry in row:
            if entry < 0:
                raise InvalidArgument(f"Matrix has a negative entry {entry}")
    return np.array([[entry > 0 for entry in row] for row in matrix.rows], dtype=bool).reshape(matrix.dimension, matrix.dimension)


@lru_cache(maxsize=1024)
def is_primitive(matrix: IntegerMatrix) -> bool:
    """
    Squares the 0/1 pattern of the matrix until it is strictly positive (primitive),
    or until a pattern shows up again, after which the powers only cycle (not primitive).
    Only the zero pattern matters, so entries are clamped to 1 after every squaring.
    """
    pattern = _zero_pattern(matrix)
    if pattern.size == 0:
        return False
    seen = set()
    while True:
        zeros = pattern.size - np.count_nonzero(pattern)
        if zeros == 0:
            return True
        key = pattern.tobytes()
        if key in seen:
            return False
        seen.add(key)
        counts = pattern.astype(np.int64)
        pattern = (counts @ counts) > 0


def requires_primitive(func):
    """
    Guards an operation whose first argument is a Substitution.
    """
    @wraps(func)
    def wrapper(substitution: Substitution, *args, **kwargs):
        if not is_primitive(substitution_matrix(substitution)):
            raise NotPrimitive(f"{func.__name__} needs a primitive substitution")
        return func(substitution, *args, **kwargs)
    return wrapper


def _hessenberg(a: np.ndarray) -> np.ndarray:
    # Householder similarity transforms zeroing everything below the subdiagonal
    a = a.copy()
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        v = x.copy()
        v[0] += np.copysign(alpha, x[0].real)
        v /= np.linalg.norm(v)
        a[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ a[k + 1:, k:])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, v.conj())
    return a


def _wilkinson_shift(a: np.ndarray, high: int) -> complex:
    # Eigenvalue of the trailing 2x2 block closest to its bottom right entry
    p, q = a[high - 1, high - 1], a[high - 1, high]
    r, s = a[high, high - 1], a[high, high]
    half_trace = (p + s) / 2
    root = np.sqrt(((p - s) / 2) ** 2 + q * r + 0j)
    first, second = half_trace + root, half_trace - root
    return first if abs(first - s) <= abs(second - s) else second


def _qr_eigenvalues(matrix: IntegerMatrix) -> list[complex]:
    n = matrix.dimension
    original = np.array(matrix.rows, dtype=float).reshape(n, n)
    tolerance = QR_TOLERANCE * np.linalg.norm(original)
    # Complex arithmetic lets complex shifts converge onto conjugate pairs one value at a time
    a = _hessenberg(original.astype(complex))
    found = []
    high = n - 1
    sweeps = 0
    stalled = 0
    while high >= 0:
        if high == 0 or abs(a[high, high - 1]) <= tolerance:
            found.append(complex(a[high, high]))
            high -= 1
            stalled = 0
            continue
        if sweeps == QR_MAX_SWEEPS:
            raise NumericalFailure(f"QR iteration did not converge in {QR_MAX_SWEEPS} sweeps")
        sweeps += 1
        stalled += 1
        if stalled % 11 == 0:
            # Exceptional shift to break cycles
            shift = a[high, high] + abs(a[high, high - 1])
        else:
            shift = _wilkinson_shift(a, high)
        identity = np.eye(high + 1)
        q, r = np.linalg.qr(a[:high + 1, :high + 1] - shift * identity)
        a[:high + 1, :high + 1] = r @ q + shift * identity
    logger.debug("QR iteration converged after %s sweeps", sweeps)
    return found


def eigenvalues(matrix: IntegerMatrix) -> list[Eigenvalue]:
    """
    All eigenvalues, largest first.
    A complex conjugate pair is reported once, `value` holding its modulus.
    """
    found = _qr_eigenvalues(matrix)
    scale = max(1.0, float(np.linalg.norm(np.array(matrix.rows, dtype=float))))
    threshold = 1e-9 * scale
    records = []
    for value in found:
        if abs(value.imag) <= threshold:
            records.append(Eigenvalue(value=value.real, real=value.real))
        elif value.imag > 0:
            records.append(Eigenvalue(value=abs(value), real=value.real, imag=value.imag, complex_pair=True))
    paired = sum(1 for value in found if abs(value.imag) > threshold)
    if paired != 2 * sum(1 for record in records if record.complex_pair):
        raise NumericalFailure("Complex eigenvalues did not come in conjugate pairs")
    records.sort(key=lambda record: (record.value, record.imag), reverse=True)
    return records


def _power_iteration(m: np.ndarray) -> tuple[float, np.ndarray]:
    vector = np.ones(m.shape[0]) / m.shape[0]
    for step in range(POWER_ITERATION_MAX_STEPS):
        image = m @ vector
        following = image / image.sum()
        if np.max(np.abs(following - vector)) <= POWER_ITERATION_TOLERANCE * np.max(np.abs(following)):
            logger.debug("Power iteration converged after %s steps", step + 1)
            return float((m @ following).sum() / following.sum()), following
        vector = following
    raise NumericalFailure(f"Power iteration did not converge in {POWER_ITERATION_MAX_STEPS} steps")


def pf_data(matrix: IntegerMatrix) -> PFData:
    if not is_primitive(matrix):
        raise NotPrimitive("Perron-Frobenius data needs a primitive matrix")
    m = np.array(matrix.rows, dtype=float)
    eigenvalue, right = _power_iteration(m)
    _, left = _power_iteration(m.T)
    return PFData(
        eigenvalue=eigenvalue,
        tile_lengths=tuple(float(x) for x in left / left.min()),
        frequencies=tuple(float(x) for x in right / right.sum()),
        all_eigenvalues=tuple(eigenvalues(matrix)),
    )


def stable_rank(matrix: IntegerMatrix) -> int:
    """
    Rank of M^n for an n x n matrix M: the rank of its direct limit.
    """
    if matrix.dimension == 0:
        return 0
    return (to_sympy(matrix) ** matrix.dimension).rank()


def determinant(matrix: IntegerMatrix) -> int:
    return int(to_sympy(matrix).det())


def characteristic_polynomial(matrix: IntegerMatrix) -> list[int]:
    """
    Coefficients of det(xI - M), leading coefficient first.
    """
    return [int(c) for c in to_sympy(matrix).charpoly().all_coeffs()]
