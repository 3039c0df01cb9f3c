"""Exact scalars and echelon-form linear algebra.

Everything downstream (face-ring reductions, pairings, Lefschetz checks)
runs over one of two interchangeable coefficient fields:

* ``PrimeField`` -- F_p for a fixed prime, default p = 2**31 - 1.  Residues
  are plain Python ints; matrix elimination is vectorized over numpy int64
  with exact float64 matrix products for the bulk updates (all intermediates
  stay below 2**53, so no rounding can occur).  This is the working field.
* ``RationalField`` -- arbitrary-precision ``fractions.Fraction`` scalars.
  Exact but slow; kept behind a flag for audit runs.

No floating-point *arithmetic* is exposed anywhere: the float64 kernels are
used only as exact integer engines.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction

import numpy as np

#: Default working prime.  Mersenne, and small enough that a product of two
#: residues fits an int64 and a 16-bit-split product fits float64 exactly.
DEFAULT_PRIME = (1 << 31) - 1

_LEAF_ROWS = 128  # recursion cutoff for the blocked echelon engine


class DimensionMismatchError(ValueError):
    """Operands live in incompatible dimensions."""


# ---------------------------------------------------------------------------
# deterministic seed splitting
# ---------------------------------------------------------------------------

def derive_seed(master: int, *path) -> int:
    """Derive a child seed from a master seed and a label path.

    Counter-based splitting: every random draw in the package flows from one
    user seed through labeled paths, so independent trials are reproducible
    and may run in any order.
    """
    material = "/".join(str(part) for part in (master, *path))
    digest = hashlib.sha256(material.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(master: int, *path) -> random.Random:
    """A ``random.Random`` seeded by :func:`derive_seed`."""
    return random.Random(derive_seed(master, *path))


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class PrimeField:
    """Arithmetic in F_p with residues stored as ints in ``[0, p)``."""

    kind = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 3 or p % 2 == 0:
            raise ValueError(f"bad prime {p}")
        self.p = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def canon(self, x):
        """Coerce an int or Fraction to a residue in ``[0, p)``."""
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def sample(self, rng: random.Random):
        return rng.randrange(self.p)

    def sample_nonzero(self, rng: random.Random):
        return rng.randrange(1, self.p)


class RationalField:
    """Arbitrary-precision rationals; reduced, positive denominators."""

    kind = "rational"

    #: height bound for sampled numerators/denominators
    SAMPLE_HEIGHT = 99

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def canon(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def sample(self, rng: random.Random):
        h = self.SAMPLE_HEIGHT
        return Fraction(rng.randint(-h, h), rng.randint(1, 9))

    def sample_nonzero(self, rng: random.Random):
        while True:
            x = self.sample(rng)
            if x != 0:
                return x


def sample_generic(count: int, seed: int, field=None) -> list:
    """``count`` independent generic scalars, deterministic in ``seed``."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    field = field or PrimeField()
    rng = derive_rng(seed, "sample_generic")
    return [field.sample(rng) for _ in range(count)]


# ---------------------------------------------------------------------------
# prime-field array kernels
# ---------------------------------------------------------------------------

def _fp_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p via four float64 GEMMs on 16-bit halves.

    With a, b < p < 2**31, each partial product is < 2**32 and the inner
    dimension may reach 2**21 before a float64 sum could round.
    """
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"matmul {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if a.shape[1] > (1 << 21):
        raise ValueError("inner dimension too large for exact f64 products")
    ah, al = np.divmod(a, 1 << 16)
    bh, bl = np.divmod(b, 1 << 16)
    ah = ah.astype(np.float64)
    al = al.astype(np.float64)
    bh = bh.astype(np.float64)
    bl = bl.astype(np.float64)
    hh = np.fmod(ah @ bh, p).astype(np.int64)
    mid = (np.fmod(ah @ bl, p) + np.fmod(al @ bh, p)).astype(np.int64)
    ll = np.fmod(al @ bl, p).astype(np.int64)
    c32 = (1 << 32) % p
    c16 = (1 << 16) % p
    return (hh * c32 + mid * c16 + ll) % p


def _fp_rref_leaf(a: np.ndarray, p: int):
    """Reduced row echelon form by plain per-pivot elimination."""
    a = a % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])  # first nonzero in column order: deterministic
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others, c:] = (a[others, c:] - np.outer(a[others, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _fp_rref(a: np.ndarray, p: int):
    """Canonical RREF of ``a`` mod p.

    Divide and conquer: echelonize halves, cross-reduce with exact modular
    matrix products.  Returns (nonzero rows, pivot column list); the output
    is the unique RREF with strictly increasing pivots, so equal row spaces
    yield identical arrays.
    """
    if a.shape[0] <= _LEAF_ROWS:
        return _fp_rref_leaf(a.astype(np.int64, copy=True), p)
    half = a.shape[0] // 2
    r1, piv1 = _fp_rref(a[:half], p)
    bottom = a[half:].astype(np.int64, copy=True) % p
    if piv1:
        bottom = (bottom - _fp_matmul(bottom[:, piv1], r1, p)) % p
    r2, piv2 = _fp_rref(bottom, p)
    if piv2:
        r1 = (r1 - _fp_matmul(r1[:, piv2], r2, p)) % p
    merged = sorted(
        [(c, r1[i]) for i, c in enumerate(piv1)]
        + [(c, r2[i]) for i, c in enumerate(piv2)])
    if not merged:
        return np.zeros((0, a.shape[1]), dtype=np.int64), []
    rows = np.vstack([row for _, row in merged])
    return rows, [c for c, _ in merged]


def _fp_rank(a: np.ndarray, p: int) -> int:
    return len(_fp_rref(a, p)[1])


# ---------------------------------------------------------------------------
# rational kernels (audit mode: clarity over speed)
# ---------------------------------------------------------------------------

def _q_rref(rows, ncols):
    a = [list(row) for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        piv_row = a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], piv_row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in a[:r]], pivots


def _q_matmul(a, b, inner, ncols):
    zero = Fraction(0)
    out = []
    for row in a:
        out.append(tuple(
            sum((row[k] * b[k][j] for k in range(inner)), zero)
            for j in range(ncols)))
    return out


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over an exact field.

    Internally an int64 numpy array for PrimeField and a tuple of Fraction
    tuples for RationalField; all public entry points speak plain Python
    scalars.
    """

    __slots__ = ("field", "nrows", "ncols", "_a")

    def __init__(self, field, data, shape=None):
        self.field = field
        if field.kind == "prime":
            a = np.asarray(data, dtype=np.int64)
            if a.ndim != 2:
                a = a.reshape(shape if shape is not None else (0, 0))
            self._a = a
            self.nrows, self.ncols = a.shape
        else:
            rows = tuple(tuple(row) for row in data)
            self._a = rows
            self.nrows = len(rows)
            self.ncols = len(rows[0]) if rows else (shape[1] if shape else 0)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        """Build from nested scalars, canonicalizing every entry."""
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise DimensionMismatchError("ragged rows")
        elif ncols is None:
            ncols = 0
        canon = field.canon
        data = [[canon(x) for x in r] for r in rows]
        if field.kind == "prime":
            a = np.array(data, dtype=np.int64) if rows else \
                np.zeros((0, ncols), dtype=np.int64)
            return cls(field, a)
        return cls(field, data, shape=(len(rows), ncols))

    @classmethod
    def zeros(cls, field, nrows, ncols):
        if field.kind == "prime":
            return cls(field, np.zeros((nrows, ncols), dtype=np.int64))
        zero = field.zero
        return cls(field, [[zero] * ncols for _ in range(nrows)],
                   shape=(nrows, ncols))

    @classmethod
    def identity(cls, field, n):
        if field.kind == "prime":
            return cls(field, np.eye(n, dtype=np.int64))
        rows = [[field.one if i == j else field.zero for j in range(n)]
                for i in range(n)]
        return cls(field, rows, shape=(n, n))

    # -- shape & entries ----------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i, j):
        if self.field.kind == "prime":
            return int(self._a[i, j])
        return self._a[i][j]

    def row(self, i):
        if self.field.kind == "prime":
            return [int(x) for x in self._a[i]]
        return list(self._a[i])

    def rows_list(self):
        return [self.row(i) for i in range(self.nrows)]

    def column(self, j):
        return [self.entry(i, j) for i in range(self.nrows)]

    # -- algebra ------------------------------------------------------------

    def transpose(self):
        if self.field.kind == "prime":
            return Matrix(self.field, self._a.T.copy())
        rows = list(zip(*self._a)) if self._a else [()] * 0
        return Matrix(self.field, rows, shape=(self.ncols, self.nrows))

    def __matmul__(self, other):
        self._same_field(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"matmul {self.shape} @ {other.shape}")
        if self.field.kind == "prime":
            return Matrix(self.field,
                          _fp_matmul(self._a, other._a, self.field.p))
        data = _q_matmul(self._a, other._a, self.ncols, other.ncols)
        return Matrix(self.field, data, shape=(self.nrows, other.ncols))

    def __add__(self, other):
        self._same_shape(other)
        if self.field.kind == "prime":
            return Matrix(self.field, (self._a + other._a) % self.field.p)
        rows = [[x + y for x, y in zip(r, s)]
                for r, s in zip(self._a, other._a)]
        return Matrix(self.field, rows, shape=self.shape)

    def __sub__(self, other):
        self._same_shape(other)
        if self.field.kind == "prime":
            return Matrix(self.field, (self._a - other._a) % self.field.p)
        rows = [[x - y for x, y in zip(r, s)]
                for r, s in zip(self._a, other._a)]
        return Matrix(self.field, rows, shape=self.shape)

    def scale(self, c):
        c = self.field.canon(c)
        if self.field.kind == "prime":
            return Matrix(self.field, (self._a * c) % self.field.p)
        rows = [[c * x for x in r] for r in self._a]
        return Matrix(self.field, rows, shape=self.shape)

    def hstack(self, other):
        self._same_field(other)
        if self.nrows != other.nrows:
            raise DimensionMismatchError("hstack row mismatch")
        if self.field.kind == "prime":
            return Matrix(self.field, np.hstack([self._a, other._a]))
        rows = [list(r) + list(s) for r, s in zip(self._a, other._a)]
        return Matrix(self.field, rows,
                      shape=(self.nrows, self.ncols + other.ncols))

    def vstack(self, other):
        self._same_field(other)
        if self.ncols != other.ncols:
            raise DimensionMismatchError("vstack column mismatch")
        if self.field.kind == "prime":
            return Matrix(self.field, np.vstack([self._a, other._a]))
        rows = list(self._a) + list(other._a)
        return Matrix(self.field, rows,
                      shape=(self.nrows + other.nrows, self.ncols))

    def take_rows(self, indices):
        indices = list(indices)
        if self.field.kind == "prime":
            return Matrix(self.field, self._a[indices]
                          if indices else np.zeros((0, self.ncols), np.int64))
        rows = [self._a[i] for i in indices]
        return Matrix(self.field, rows, shape=(len(indices), self.ncols))

    def take_cols(self, indices):
        indices = list(indices)
        if self.field.kind == "prime":
            return Matrix(self.field, self._a[:, indices]
                          if indices else np.zeros((self.nrows, 0), np.int64))
        rows = [[row[j] for j in indices] for row in self._a]
        return Matrix(self.field, rows, shape=(self.nrows, len(indices)))

    # -- elimination --------------------------------------------------------

    def rref(self):
        """Canonical reduced row echelon form.

        Returns:
            (R, pivots): R keeps only the nonzero rows; pivot columns are
            strictly increasing and normalized, so R is unique for the row
            space of the input.
        """
        if self.field.kind == "prime":
            rows, piv = _fp_rref(self._a, self.field.p)
            return Matrix(self.field, rows, shape=(len(piv), self.ncols)), \
                tuple(piv)
        rows, piv = _q_rref(self._a, self.ncols)
        return Matrix(self.field, rows, shape=(len(rows), self.ncols)), \
            tuple(piv)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Subspace":
        """Basis of the right null space; dim = ncols - rank."""
        R, piv = self.rref()
        piv_set = set(piv)
        free = [c for c in range(self.ncols) if c not in piv_set]
        field = self.field
        vectors = []
        for f in free:
            v = [field.zero] * self.ncols
            v[f] = field.one
            for i, c in enumerate(piv):
                v[c] = field.neg(R.entry(i, f))
            vectors.append(v)
        return Subspace.from_vectors(field, self.ncols, vectors)

    def row_space(self) -> "Subspace":
        return Subspace.from_vectors(self.field, self.ncols,
                                     self.rows_list())

    def column_space(self) -> "Subspace":
        return self.transpose().row_space()

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatchError("inverse of non-square matrix")
        aug = self.hstack(Matrix.identity(self.field, self.nrows))
        R, piv = aug.rref()
        if tuple(piv) != tuple(range(self.nrows)):
            raise ZeroDivisionError("matrix is singular")
        return R.take_cols(range(self.nrows, 2 * self.nrows))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        if self.field.kind == "prime":
            return not self._a.any()
        return all(x == 0 for row in self._a for x in row)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return self == Matrix.identity(self.field, self.nrows)

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.field != other.field \
                or self.shape != other.shape:
            return NotImplemented if not isinstance(other, Matrix) else False
        if self.field.kind == "prime":
            return bool(np.array_equal(self._a, other._a))
        return self._a == other._a

    def __hash__(self):
        raise TypeError("matrices are not hashable")

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"

    # -- helpers ------------------------------------------------------------

    def _same_field(self, other):
        if self.field != other.field:
            raise DimensionMismatchError("mixed fields")

    def _same_shape(self, other):
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} vs {other.shape}")


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A linear subspace of F^n held as a canonical echelon basis.

    Two subspaces are equal iff they have identical reduced bases, which by
    uniqueness of the RREF happens iff they are the same subspace.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, basis: Matrix, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field, ambient, vectors) -> "Subspace":
        M = vectors if isinstance(vectors, Matrix) else \
            Matrix.from_rows(field, vectors, ncols=ambient)
        if M.ncols != ambient:
            raise DimensionMismatchError(
                f"vectors of length {M.ncols} in ambient {ambient}")
        R, piv = M.rref()
        return cls(field, ambient, R, piv)

    @classmethod
    def zero(cls, field, ambient) -> "Subspace":
        return cls(field, ambient, Matrix.zeros(field, 0, ambient), ())

    @classmethod
    def full(cls, field, ambient) -> "Subspace":
        return cls(field, ambient, Matrix.identity(field, ambient),
                   tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def is_zero(self) -> bool:
        return self.dim == 0

    def vectors(self):
        return self.basis.rows_list()

    def contains(self, vector) -> bool:
        v = Matrix.from_rows(self.field, [vector], ncols=self.ambient)
        return self.basis.vstack(v).rank() == self.dim

    def contains_subspace(self, other) -> bool:
        self._check(other)
        return self.basis.vstack(other.basis).rank() == self.dim

    def sum(self, other) -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(
            self.field, self.ambient, self.basis.vstack(other.basis))

    def intersect(self, other) -> "Subspace":
        """Zassenhaus: echelonize [U|U; V|0], read the zero-left block."""
        self._check(other)
        n = self.ambient
        U, V = self.basis, other.basis
        top = U.hstack(U)
        bottom = V.hstack(Matrix.zeros(self.field, V.nrows, n))
        R, piv = top.vstack(bottom).rref()
        rows = []
        for i in range(R.nrows):
            left = R.row(i)[:n]
            if all(self.field.is_zero(x) for x in left):
                rows.append(R.row(i)[n:])
        return Subspace.from_vectors(self.field, n, rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient == other.ambient
                and self.pivots == other.pivots and self.basis == other.basis)

    def __hash__(self):
        raise TypeError("subspaces are not hashable")

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def _check(self, other):
        if self.field != other.field:
            raise DimensionMismatchError("mixed fields")
        if self.ambient != other.ambient:
            raise DimensionMismatchError(
                f"ambient {self.ambient} vs {other.ambient}")


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space."""
    return u.intersect(v)
