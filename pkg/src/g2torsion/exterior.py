"""Exact multilinear algebra on R^n with the standard Euclidean metric.

Scalars are :class:`fractions.Fraction`.  Endomorphisms and vectors are numpy
object arrays holding Fractions.  A matrix ``B`` acts on column vectors, so
``B[l, m]`` is the coefficient of ``e_l`` in ``B e_m`` and composition is ``@``.
Axis labels of forms are 1-based, so ``KForm.basis(6, 1, 2)`` is ``e^12``.

A k-form stores one coefficient per strictly increasing multi-index ``I``,
equal to the value of the form on ``(e_{i_1}, ..., e_{i_k})``.
"""

from __future__ import annotations

import itertools
from decimal import Decimal
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "KForm",
    "to_fraction",
    "matrix",
    "vector",
    "identity",
    "zeros",
    "elementary",
    "transpose",
    "trace",
    "comm",
    "anticomm",
    "sym_part",
    "skew_part",
    "is_zero_matrix",
    "det",
    "wedge",
    "wedge_all",
    "interior",
    "hodge",
    "sharp",
    "flat",
    "theta",
    "endo_contract",
    "pullback",
    "form_inner",
    "sort_sign",
]


def to_fraction(x) -> Fraction:
    """Convert ``x`` to an exact Fraction.

    Accepts ints, Fractions, Decimals, strings such as ``"3"``, ``"-2/5"`` or
    ``"0.25"``.  Floats are converted by their exact binary value.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def matrix(rows) -> np.ndarray:
    """Square object array of Fractions from nested rows."""
    arr = np.array([[to_fraction(x) for x in row] for row in rows], dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def vector(components) -> np.ndarray:
    return np.array([to_fraction(x) for x in components], dtype=object)


def zeros(n: int) -> np.ndarray:
    return np.full((n, n), Fraction(0), dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros(n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def elementary(n: int, i: int, j: int) -> np.ndarray:
    """Matrix unit E_ij (1-based), i.e. the map sending e_j to e_i."""
    out = zeros(n)
    out[i - 1, j - 1] = Fraction(1)
    return out


def transpose(A: np.ndarray) -> np.ndarray:
    return np.array(A.T, dtype=object)


def trace(A: np.ndarray) -> Fraction:
    return sum((A[i, i] for i in range(A.shape[0])), Fraction(0))


def comm(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def anticomm(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B + B @ A


def sym_part(A: np.ndarray) -> np.ndarray:
    return (A + A.T) * Fraction(1, 2)


def skew_part(A: np.ndarray) -> np.ndarray:
    return (A - A.T) * Fraction(1, 2)


def is_zero_matrix(A: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(A).flat)


def det(M: np.ndarray) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [[to_fraction(x) for x in row] for row in M]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return result


def sort_sign(indices: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


class KForm:
    """Constant-coefficient alternating k-form on R^n.

    Instances are immutable values: arithmetic returns new forms, equality is
    coefficient-wise and forms are hashable.
    """

    __slots__ = ("_dim", "_degree", "_coeffs", "_hash")

    def __init__(self, dim: int, degree: int, coeffs: Mapping[Sequence[int], object] | None = None):
        if dim < 0 or not 0 <= degree <= dim:
            raise ValueError(f"invalid degree {degree} for dimension {dim}")
        store: dict[tuple[int, ...], Fraction] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if any(not 1 <= i <= dim for i in idx):
                raise ValueError(f"index {idx} out of range 1..{dim}")
            sign, key = sort_sign(idx)
            if sign == 0:
                continue
            value = store.get(key, Fraction(0)) + sign * to_fraction(c)
            if value:
                store[key] = value
            else:
                store.pop(key, None)
        self._dim = dim
        self._degree = degree
        self._coeffs = MappingProxyType(store)
        self._hash = None

    # constructors
    @classmethod
    def basis(cls, dim: int, *indices: int) -> "KForm":
        """The basis form e^{i_1 ... i_k}; indices need not be sorted."""
        return cls(dim, len(indices), {tuple(indices): 1})

    @classmethod
    def scalar(cls, dim: int, value=1) -> "KForm":
        return cls(dim, 0, {(): value})

    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        return cls(dim, degree)

    @classmethod
    def volume(cls, dim: int) -> "KForm":
        return cls(dim, dim, {tuple(range(1, dim + 1)): 1})

    @classmethod
    def from_matrix(cls, M: np.ndarray) -> "KForm":
        """2-form with sigma(e_i, e_j) = M[i-1, j-1]; M must be skew."""
        n = M.shape[0]
        if not is_zero_matrix(M + M.T):
            raise ValueError("matrix is not skew-symmetric")
        return cls(n, 2, {(i + 1, j + 1): M[i, j] for i in range(n) for j in range(i + 1, n)})

    @classmethod
    def from_vector(cls, v) -> "KForm":
        v = list(v)
        return cls(len(v), 1, {(i + 1,): c for i, c in enumerate(v)})

    # accessors
    @property
    def dim(self) -> int:
        return self._dim

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def coeffs(self) -> Mapping[tuple[int, ...], Fraction]:
        return self._coeffs

    def __getitem__(self, indices) -> Fraction:
        """Coefficient at an arbitrary (possibly unsorted) multi-index."""
        if isinstance(indices, int):
            indices = (indices,)
        sign, key = sort_sign(indices)
        if sign == 0:
            return Fraction(0)
        return sign * self._coeffs.get(key, Fraction(0))

    def value(self) -> Fraction:
        """The number held by a degree-0 (or top-degree) form."""
        if self._degree == 0:
            return self._coeffs.get((), Fraction(0))
        if self._degree == self._dim:
            return self._coeffs.get(tuple(range(1, self._dim + 1)), Fraction(0))
        raise ValueError("value() needs a form of degree 0 or top degree")

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def to_matrix(self) -> np.ndarray:
        """Skew matrix sigma(e_i, e_j) of a 2-form."""
        if self._degree != 2:
            raise ValueError("to_matrix() needs a 2-form")
        M = zeros(self._dim)
        for (i, j), c in self._coeffs.items():
            M[i - 1, j - 1] = c
            M[j - 1, i - 1] = -c
        return M

    def to_vector(self) -> np.ndarray:
        if self._degree != 1:
            raise ValueError("to_vector() needs a 1-form")
        return np.array([self[i] for i in range(1, self._dim + 1)], dtype=object)

    def embed(self, dim: int) -> "KForm":
        """The same form regarded on R^dim, dim >= self.dim."""
        if dim < self._dim:
            raise ValueError("cannot embed into a smaller space")
        return KForm(dim, self._degree, self._coeffs)

    def restrict(self, dim: int) -> "KForm":
        """Drop every term involving an axis > dim."""
        return KForm(dim, self._degree, {k: c for k, c in self._coeffs.items() if not k or k[-1] <= dim})

    def __call__(self, *vectors) -> Fraction:
        """Evaluate on k vectors."""
        if len(vectors) != self._degree:
            raise ValueError(f"expected {self._degree} vectors")
        vs = [vector(v) for v in vectors]
        total = Fraction(0)
        for key, c in self._coeffs.items():
            cols = [i - 1 for i in key]
            total += c * det(np.array([[v[i] for i in cols] for v in vs], dtype=object))
        return total

    # arithmetic
    def _check(self, other: "KForm") -> None:
        if not isinstance(other, KForm):
            raise TypeError("expected a KForm")
        if other._dim != self._dim or other._degree != self._degree:
            raise ValueError(
                f"shape mismatch: ({self._dim},{self._degree}) vs ({other._dim},{other._degree})"
            )

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return KForm(self._dim, self._degree, out)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm(self._dim, self._degree, {k: -c for k, c in self._coeffs.items()})

    def __mul__(self, scalar) -> "KForm":
        if isinstance(scalar, KForm):
            return NotImplemented
        s = to_fraction(scalar)
        return KForm(self._dim, self._degree, {k: s * c for k, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "KForm":
        return self * (1 / to_fraction(scalar))

    def __xor__(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KForm):
            return NotImplemented
        return (self._dim, self._degree) == (other._dim, other._degree) and dict(self._coeffs) == dict(
            other._coeffs
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, self._degree, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"KForm(dim={self._dim}, degree={self._degree}, 0)"
        terms = []
        for k in sorted(self._coeffs):
            label = "e" + "".join(map(str, k)) if k else "1"
            terms.append(f"{self._coeffs[k]}*{label}")
        return f"KForm(dim={self._dim}, " + " + ".join(terms) + ")"


def wedge(a: KForm, b: KForm) -> KForm:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    degree = a.degree + b.degree
    if degree > a.dim:
        raise ValueError(f"wedge degree {degree} exceeds dimension {a.dim}")
    out: dict[tuple[int, ...], Fraction] = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            sign, key = sort_sign(ka + kb)
            if sign:
                out[key] = out.get(key, Fraction(0)) + sign * ca * cb
    return KForm(a.dim, degree, out)


def wedge_all(*forms: KForm) -> KForm:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def interior(v, a: KForm) -> KForm:
    """Contraction v ⌟ a, inserting v in the first slot."""
    v = vector(v)
    if len(v) != a.dim:
        raise ValueError(f"dimension mismatch: {len(v)} vs {a.dim}")
    if a.degree == 0:
        raise ValueError("cannot contract a vector into a 0-form")
    out: dict[tuple[int, ...], Fraction] = {}
    for key, c in a.coeffs.items():
        for pos, i in enumerate(key):
            vi = v[i - 1]
            if vi:
                rest = key[:pos] + key[pos + 1 :]
                out[rest] = out.get(rest, Fraction(0)) + (-1) ** pos * vi * c
    return KForm(a.dim, a.degree - 1, out)


def hodge(a: KForm) -> KForm:
    """Hodge star for the standard metric and orientation e^1 ∧ ... ∧ e^n."""
    n = a.dim
    full = range(1, n + 1)
    out = {}
    for key, c in a.coeffs.items():
        comp = tuple(i for i in full if i not in key)
        sign, _ = sort_sign(key + comp)
        out[comp] = sign * c
    return KForm(n, n - a.degree, out)


def sharp(a: KForm) -> np.ndarray:
    return a.to_vector()


def flat(v) -> KForm:
    return KForm.from_vector(vector(v))


def theta(B: np.ndarray, a: KForm) -> KForm:
    """Infinitesimal gl(n) action: (θ(B)γ)(u_1..u_k) = -Σ_s γ(.., B u_s, ..)."""
    n = a.dim
    if B.shape != (n, n):
        raise ValueError(f"dimension mismatch: {B.shape} vs {a.dim}")
    out: dict[tuple[int, ...], Fraction] = {}
    for key, c in a.coeffs.items():
        for pos, l in enumerate(key):
            # γ(..., B e_m, ...) picks up B[l, m] γ(..., e_l, ...)
            for m in range(1, n + 1):
                b = B[l - 1, m - 1]
                if not b:
                    continue
                sign, new = sort_sign(key[:pos] + (m,) + key[pos + 1 :])
                if sign:
                    out[new] = out.get(new, Fraction(0)) - sign * b * c
    return KForm(n, a.degree, out)


def endo_contract(B: np.ndarray, a: KForm) -> KForm:
    """Double contraction B ⌟ γ = Σ_ij B_ij γ(e_i, e_j, ...).

    ``B_ij = h(B e_i, e_j) = B[j, i]`` is the bilinear form of the endomorphism;
    only the skew part of B contributes.
    """
    n = a.dim
    if a.degree < 2:
        raise ValueError("endo_contract needs a form of degree >= 2")
    if B.shape != (n, n):
        raise ValueError(f"dimension mismatch: {B.shape} vs {a.dim}")
    out: dict[tuple[int, ...], Fraction] = {}
    for key, c in a.coeffs.items():
        for p, q in itertools.permutations(range(len(key)), 2):
            i, j = key[p], key[q]
            bij = B[j - 1, i - 1]
            if not bij:
                continue
            rest = tuple(x for t, x in enumerate(key) if t not in (p, q))
            # sign of moving (key[p], key[q]) to the front of key
            sign, _ = sort_sign((i, j) + rest)
            out[rest] = out.get(rest, Fraction(0)) + sign * bij * c
    return KForm(n, a.degree - 2, out)


def pullback(L: np.ndarray, a: KForm) -> KForm:
    """(L* a)(u_1, ..., u_k) = a(L u_1, ..., L u_k)."""
    n = a.dim
    if L.shape != (n, n):
        raise ValueError(f"dimension mismatch: {L.shape} vs {a.dim}")
    k = a.degree
    if k == 0:
        return a
    out: dict[tuple[int, ...], Fraction] = {}
    for target in itertools.combinations(range(1, n + 1), k):
        total = Fraction(0)
        cols = [t - 1 for t in target]
        for key, c in a.coeffs.items():
            rows = [i - 1 for i in key]
            minor = np.array([[L[r, s] for s in cols] for r in rows], dtype=object)
            total += c * det(minor)
        if total:
            out[target] = total
    return KForm(n, k, out)


def form_inner(a: KForm, b: KForm) -> Fraction:
    """Induced inner product; basis forms e^I are orthonormal."""
    if (a.dim, a.degree) != (b.dim, b.degree):
        raise ValueError("form_inner needs forms of equal dimension and degree")
    return sum((c * b.coeffs.get(k, Fraction(0)) for k, c in a.coeffs.items()), Fraction(0))


def binomial_basis(dim: int, degree: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, dim + 1), degree))

