"""Subspaces of a finite-dimensional inner-product space and the quantum connectives.

A :class:`Subspace` is stored as an ``n x k`` matrix with orthonormal columns.
Bases are not canonical, so semantic equality and ordering go through the
orthogonal projector ``B @ B^H``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, FieldMismatchError, InvalidInputError

FIELDS = ("real", "complex")
_DTYPES = {"real": np.float64, "complex": np.complex128}


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerances behind every numerical decision (rank, equality, membership)."""

    rank_cutoff_rel: float = 1e-10
    eq_tol: float = 1e-8
    membership_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_cutoff_rel", "eq_tol", "membership_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InvalidInputError(f"{name} must be strictly positive, got {value!r}")
        if self.rank_cutoff_rel >= 1:
            raise InvalidInputError("rank_cutoff_rel must be < 1")


DEFAULT_POLICY = NumericPolicy()


def _check_field(field: str) -> str:
    if field not in FIELDS:
        raise InvalidInputError(f"field must be 'real' or 'complex', got {field!r}")
    return field


def as_vector(x, field: str | None = None) -> np.ndarray:
    """Coerce ``x`` to a finite 1-d array (complex unless ``field='real'``)."""
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError(f"a vector must be a non-empty 1-d sequence, got shape {arr.shape}")
    if field == "real":
        if np.iscomplexobj(arr) and np.any(arr.imag != 0):
            raise FieldMismatchError("complex entries in a real vector")
        arr = arr.real.astype(np.float64)
    elif field == "complex":
        arr = arr.astype(np.complex128)
    elif not np.iscomplexobj(arr):
        arr = arr.astype(np.float64)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("vector has non-finite entries")
    return arr


@dataclass(frozen=True, eq=False)
class Subspace:
    """An immutable subspace given by an orthonormal basis (columns of ``basis``).

    Use :func:`orthonormalize` to build one from arbitrary generators; the
    constructor only checks that the columns are already orthonormal.
    """

    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, copy=True)
        if b.ndim != 2 or b.shape[0] < 1:
            raise InvalidInputError(f"basis must be an n x k matrix with n >= 1, got shape {b.shape}")
        if b.shape[1] > b.shape[0]:
            raise InvalidInputError("more basis vectors than the ambient dimension")
        b = b.astype(np.complex128 if np.iscomplexobj(b) else np.float64)
        if not np.all(np.isfinite(b)):
            raise InvalidInputError("basis has non-finite entries")
        gram_err = np.linalg.norm(b.conj().T @ b - np.eye(b.shape[1]))
        if gram_err > DEFAULT_POLICY.eq_tol:
            raise InvalidInputError(f"basis columns are not orthonormal (error {gram_err:.3g})")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def field(self) -> str:
        return "complex" if np.iscomplexobj(self.basis) else "real"

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def echelon_basis(self, tol: float = 1e-12) -> np.ndarray:
        """Orthonormal basis in a canonical form, for display and serialization.

        Rows of ``B^T`` are reduced to row echelon form and re-orthonormalized,
        so coordinate subspaces come out as standard basis vectors.
        """
        rows = self.basis.T.copy()
        k, n = rows.shape
        r = 0
        for col in range(n):
            if r == k:
                break
            piv = r + int(np.argmax(np.abs(rows[r:, col])))
            if abs(rows[piv, col]) <= tol:
                continue
            rows[[r, piv]] = rows[[piv, r]]
            rows[r] = rows[r] / rows[r, col]
            for i in range(k):
                if i != r:
                    rows[i] = rows[i] - rows[i, col] * rows[r]
            r += 1
        q, _ = np.linalg.qr(rows.T)
        for j in range(q.shape[1]):
            col = q[:, j]
            lead = col[np.argmax(np.abs(col) > tol)]
            q[:, j] = col * (abs(lead) / lead)
        q[np.abs(q) < tol] = 0
        if np.iscomplexobj(q):
            q = q.real + 1j * np.where(np.abs(q.imag) < tol, 0, q.imag)
        return q + 0.0  # normalizes -0.0

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim}, field={self.field!r})"


def _same_space(*spaces: Subspace) -> None:
    first = spaces[0]
    for s in spaces[1:]:
        if s.ambient_dim != first.ambient_dim:
            raise DimensionMismatchError(
                f"ambient dimensions differ: {first.ambient_dim} vs {s.ambient_dim}"
            )
        if s.field != first.field:
            raise FieldMismatchError(f"fields differ: {first.field} vs {s.field}")


def _check_vector(S: Subspace, v) -> np.ndarray:
    v = as_vector(v)
    if v.shape[0] != S.ambient_dim:
        raise DimensionMismatchError(f"vector has length {v.shape[0]}, space has dimension {S.ambient_dim}")
    if S.field == "real" and np.iscomplexobj(v) and np.any(v.imag != 0):
        raise FieldMismatchError("complex vector tested against a real subspace")
    return v


def inner_product(x, y):
    """``(x, y) = sum_i x_i * conj(y_i)``: linear in the first argument."""
    x, y = as_vector(x), as_vector(y)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"vector lengths differ: {x.shape[0]} vs {y.shape[0]}")
    return np.vdot(y, x)


def norm(x) -> float:
    return float(np.sqrt(np.real(inner_product(x, x))))


def zero_subspace(n: int, field: str = "complex") -> Subspace:
    if n < 1:
        raise InvalidInputError("ambient dimension must be >= 1")
    return Subspace(np.zeros((n, 0), dtype=_DTYPES[_check_field(field)]))


def full_space(n: int, field: str = "complex") -> Subspace:
    if n < 1:
        raise InvalidInputError("ambient dimension must be >= 1")
    return Subspace(np.eye(n, dtype=_DTYPES[_check_field(field)]))


def _from_matrix(m: np.ndarray, policy: NumericPolicy) -> Subspace:
    """Orthonormal basis of the column space of ``m`` by truncated SVD."""
    n = m.shape[0]
    if m.shape[1] == 0:
        return Subspace(np.zeros((n, 0), dtype=m.dtype))
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s[0] == 0:
        k = 0
    else:
        k = int(np.count_nonzero(s > policy.rank_cutoff_rel * s[0]))
    return Subspace(u[:, :k])


def orthonormalize(
    generators: Iterable[Sequence] | np.ndarray,
    policy: NumericPolicy = DEFAULT_POLICY,
    *,
    ambient_dim: int | None = None,
    field: str = "complex",
) -> Subspace:
    """Span of ``generators`` (an iterable of vectors) as a :class:`Subspace`.

    ``ambient_dim`` is required when ``generators`` is empty. The result is
    real only for ``field='real'``.
    """
    _check_field(field)
    vecs = [as_vector(g, field) for g in generators]
    if not vecs:
        if ambient_dim is None:
            raise InvalidInputError("ambient_dim is required for an empty generator list")
        return zero_subspace(ambient_dim, field)
    lengths = {v.shape[0] for v in vecs}
    if len(lengths) != 1:
        raise DimensionMismatchError(f"generators have inconsistent lengths {sorted(lengths)}")
    n = lengths.pop()
    if ambient_dim is not None and n != ambient_dim:
        raise DimensionMismatchError(f"generators have length {n}, expected {ambient_dim}")
    return _from_matrix(np.column_stack(vecs), policy)


def span(*generators, policy: NumericPolicy = DEFAULT_POLICY, field: str = "real") -> Subspace:
    """Shorthand: ``span((1, 0), (1, 1))``. Defaults to the real field."""
    return orthonormalize(generators, policy, field=field)


def join(A: Subspace, B: Subspace, policy: NumericPolicy = DEFAULT_POLICY) -> Subspace:
    """Quantum disjunction: the linear closure of ``A`` and ``B``."""
    _same_space(A, B)
    return _from_matrix(np.hstack([A.basis, B.basis]), policy)


def complement(A: Subspace, policy: NumericPolicy = DEFAULT_POLICY) -> Subspace:
    """Quantum negation: the orthogonal complement of ``A``."""
    n, k = A.basis.shape
    if k == 0:
        return full_space(n, A.field)
    if k == n:
        return zero_subspace(n, A.field)
    u, _, _ = np.linalg.svd(A.basis, full_matrices=True)
    return Subspace(u[:, k:])


def meet(A: Subspace, B: Subspace, policy: NumericPolicy = DEFAULT_POLICY) -> Subspace:
    """Quantum conjunction: ``A ∩ B``, computed as ``(A' ∨ B')'``."""
    _same_space(A, B)
    return complement(join(complement(A, policy), complement(B, policy), policy), policy)


def projector(A: Subspace) -> np.ndarray:
    return A.projector()


def dim(A: Subspace) -> int:
    return A.dim


def projector_distance(A: Subspace, B: Subspace) -> float:
    _same_space(A, B)
    return float(np.linalg.norm(A.projector() - B.projector()))


def equals(A: Subspace, B: Subspace, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    return projector_distance(A, B) <= policy.eq_tol


def contains_subspace(A: Subspace, B: Subspace, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """True iff ``A ⊆ B``."""
    _same_space(A, B)
    pa = A.projector()
    return float(np.linalg.norm(B.projector() @ pa - pa)) <= policy.eq_tol


def membership_residual(S: Subspace, v) -> float:
    """``‖P_S v − v‖``."""
    v = _check_vector(S, v)
    proj = S.basis @ (S.basis.conj().T @ v)
    return float(np.linalg.norm(proj - v))


def contains_vector(S: Subspace, v, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    v = _check_vector(S, v)
    return membership_residual(S, v) <= policy.membership_tol * max(1.0, float(np.linalg.norm(v)))


def random_subspace(
    n: int,
    k: int,
    seed,
    policy: NumericPolicy = DEFAULT_POLICY,
    field: str = "complex",
) -> Subspace:
    """Span of ``k`` independent (complex) Gaussian vectors in dimension ``n``.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts, including
    a list of ints such as ``[seed, trial_index]``.
    """
    _check_field(field)
    if n < 1:
        raise InvalidInputError("ambient dimension must be >= 1")
    if not 0 <= k <= n:
        raise InvalidInputError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return _random_span(rng, n, k, policy, field)


def _random_span(rng: np.random.Generator, n: int, k: int, policy: NumericPolicy, field: str) -> Subspace:
    g = rng.standard_normal((n, k))
    if field == "complex":
        g = (g + 1j * rng.standard_normal((n, k))) / np.sqrt(2)
    s = _from_matrix(g, policy)
    if s.dim != k:  # probability zero for Gaussian draws
        raise ArithmeticError(f"random draw lost rank: {s.dim} < {k}")
    return s


def random_subspace_of(parent: Subspace, k: int, rng: np.random.Generator,
                       policy: NumericPolicy = DEFAULT_POLICY) -> Subspace:
    """Random ``k``-dimensional subspace contained in ``parent`` (by construction)."""
    if not 0 <= k <= parent.dim:
        raise InvalidInputError(f"need 0 <= k <= {parent.dim}, got {k}")
    if k == 0:
        return zero_subspace(parent.ambient_dim, parent.field)
    inner = _random_span(rng, parent.dim, k, policy, parent.field)
    return _from_matrix(parent.basis @ inner.basis, policy)


def coordinate_subspace(indices: Iterable[int], n: int, field: str = "real") -> Subspace:
    """Span of the standard basis vectors ``e_i`` (0-based ``i``) for ``i`` in ``indices``."""
    idx = sorted(set(indices))
    if any(i < 0 or i >= n for i in idx):
        raise InvalidInputError(f"coordinate index out of range for dimension {n}")
    return Subspace(np.eye(n, dtype=_DTYPES[_check_field(field)])[:, idx])
