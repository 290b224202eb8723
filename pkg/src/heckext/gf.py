"""Exact arithmetic over GF(p^k) and dense matrices over it.

Field elements are encoded as non-negative integers: the element
``c0 + c1*x + ... `` of GF(p)[x]/(modulus) is stored as ``c0 + c1*p + ...``.
Prime-field elements therefore encode as themselves.  All arithmetic goes
through lookup tables (q <= 169), which keeps matrix code vectorised and
lets the compiled row-reduction kernel stay field agnostic.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import backend
from .errors import (
    ContextMismatch,
    DegreeUnsupported,
    EvenPrimeUnsupported,
    NonPrime,
    PrimeOutOfRange,
    ShapeMismatch,
)

MAX_PRIME = 13
MAX_DEGREE = 2


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists (low degree first) modulo a monic modulus."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return (prod + [0] * k)[:k]


def least_irreducible(p: int, k: int) -> tuple[int, ...] | None:
    """Lexicographically least monic irreducible polynomial of degree ``k``.

    Coefficients are returned low degree first (leading 1 last).  Candidates
    are ordered by their coefficient vector read from the top degree down.
    """
    if k == 1:
        return None
    for tail in itertools.product(range(p), repeat=k):
        # tail = (c_{k-1}, ..., c_0)
        coeffs = tuple(reversed(tail)) + (1,)
        if _irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


def _irreducible(coeffs, p) -> bool:
    k = len(coeffs) - 1
    if k <= 3:
        # no roots <=> irreducible in degree 2 and 3
        return all(
            sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p for x in range(p)
        )
    raise DegreeUnsupported(f"irreducibility test for degree {k}")


class Field:
    """GF(p^k) with table-driven arithmetic.  Build through :func:`field_make`."""

    def __init__(self, p: int, k: int = 1):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = least_irreducible(p, k)
        q = self.q
        if k == 1:
            r = np.arange(q, dtype=np.int64)
            self.ADD = (r[:, None] + r[None, :]) % p
            self.SUB = (r[:, None] - r[None, :]) % p
            self.MUL = (r[:, None] * r[None, :]) % p
        else:
            digits = [self._digits(x) for x in range(q)]
            enc = self._encode
            self.ADD = np.array(
                [[enc([(u + v) % p for u, v in zip(a, b)]) for b in digits] for a in digits],
                dtype=np.int64,
            )
            self.SUB = np.array(
                [[enc([(u - v) % p for u, v in zip(a, b)]) for b in digits] for a in digits],
                dtype=np.int64,
            )
            self.MUL = np.array(
                [[enc(_poly_mulmod(a, b, self.modulus, p)) for b in digits] for a in digits],
                dtype=np.int64,
            )
        self.NEG = self.SUB[0].copy()
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.flatnonzero(self.MUL[x] == 1)[0])
        self.INV = inv
        for t in (self.ADD, self.SUB, self.MUL, self.NEG, self.INV):
            t.setflags(write=False)

    # -- encoding -----------------------------------------------------------
    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def coefficients(self, x: int) -> tuple[int, ...]:
        """Canonical coefficient sequence (low degree first) of an element."""
        return tuple(self._digits(int(x)))

    def elem(self, coeffs: Sequence[int]) -> int:
        """Element with the given polynomial coefficients (low degree first)."""
        if len(coeffs) > self.k:
            raise ShapeMismatch(f"{len(coeffs)} coefficients for degree {self.k}")
        return self._encode(coeffs)

    def __call__(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return int(n) % self.p

    @property
    def gen(self) -> int:
        """The class of x (equal to 1 when k == 1)."""
        return self.p if self.k > 1 else 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    # -- scalar arithmetic --------------------------------------------------
    def add(self, a, b):
        return self.ADD[a, b]

    def sub(self, a, b):
        return self.SUB[a, b]

    def mul(self, a, b):
        return self.MUL[a, b]

    def neg(self, a):
        return self.NEG[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.INV[a]

    def div(self, a, b):
        return self.MUL[a, self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = int(self.inv(a)), -e
        out, base = 1, int(a)
        while e:
            if e & 1:
                out = int(self.MUL[out, base])
            base = int(self.MUL[base, base])
            e >>= 1
        return out

    # -- array arithmetic ---------------------------------------------------
    def array(self, data) -> np.ndarray:
        """Integer array mapped into the prime subfield (entries taken mod p)."""
        return np.asarray(data, dtype=np.int64) % self.p

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if A.shape[-1] != B.shape[0]:
            raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
        p = self.p
        if self.k == 1:
            return (A @ B) % p
        # split into coefficient planes and reduce x^2 = -c1 x - c0
        c0, c1 = self.modulus[0], self.modulus[1]
        A0, A1 = A % p, A // p
        B0, B1 = B % p, B // p
        P0 = A0 @ B0
        P1 = A0 @ B1 + A1 @ B0
        P2 = A1 @ B1
        return (P0 - c0 * P2) % p + p * ((P1 - c1 * P2) % p)

    def kron(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        (a, b), (c, d) = A.shape, B.shape
        return self.MUL[A[:, None, :, None], B[None, :, None, :]].reshape(a * c, b * d)

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (field_make, (self.p, self.k))


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> Field:
    """Return the (cached) field GF(p^k) for an odd prime p <= 13 and k <= 2."""
    if not _is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p == 2:
        raise EvenPrimeUnsupported("p = 2 is not supported")
    if p > MAX_PRIME:
        raise PrimeOutOfRange(f"p = {p} exceeds the supported range (<= {MAX_PRIME})")
    if not 1 <= k <= MAX_DEGREE:
        raise DegreeUnsupported(f"extension degree {k} not in 1..{MAX_DEGREE}")
    return Field(p, k)


class FMat:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data, *, encoded: bool = True):
        arr = np.array(data, dtype=np.int64)
        if arr.size == 0 and arr.ndim < 2:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ShapeMismatch(f"expected a 2-d array, got shape {arr.shape}")
        if encoded:
            if arr.size and (arr.min() < 0 or arr.max() >= field.q):
                raise ValueError("entries outside the encoded range of " + repr(field))
        else:
            arr = arr % field.p
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_ints(cls, field: Field, rows) -> "FMat":
        """Matrix of integers taken mod p (prime-subfield entries)."""
        return cls(field, rows, encoded=False)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "FMat":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def eye(cls, field: Field, n: int) -> "FMat":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, field: Field, n: int, c: int) -> "FMat":
        return cls(field, np.eye(n, dtype=np.int64) * int(c))

    # -- shape --------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.data.ravel())

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __getitem__(self, idx):
        out = self.data[idx]
        if isinstance(out, np.ndarray) and out.ndim == 2:
            return FMat(self.field, out)
        if isinstance(out, np.ndarray):
            return out.copy()
        return int(out)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "FMat") -> None:
        if not isinstance(other, FMat):
            raise TypeError(f"expected FMat, got {type(other).__name__}")
        if other.field is not self.field:
            raise ContextMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "FMat") -> "FMat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return FMat(self.field, self.field.ADD[self.data, other.data])

    def __sub__(self, other: "FMat") -> "FMat":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return FMat(self.field, self.field.SUB[self.data, other.data])

    def __neg__(self) -> "FMat":
        return FMat(self.field, self.field.NEG[self.data])

    def __matmul__(self, other: "FMat") -> "FMat":
        self._check(other)
        return FMat(self.field, self.field.matmul(self.data, other.data))

    def scale(self, c: int) -> "FMat":
        return FMat(self.field, self.field.MUL[int(c), self.data])

    @property
    def T(self) -> "FMat":
        return FMat(self.field, self.data.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FMat):
            return NotImplemented
        return (
            other.field is self.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.shape, self.data.tobytes()))

    def is_zero(self) -> bool:
        return not self.data.any()

    def __repr__(self) -> str:
        return f"FMat({self.field}, {self.data.tolist()})"

    # -- linear algebra -----------------------------------------------------
    def rref(self, ncols: int = -1) -> tuple["FMat", list[int]]:
        """Reduced row echelon form (same shape) and pivot columns."""
        R = np.ascontiguousarray(self.data.copy())
        F = self.field
        if R.size == 0:
            return FMat(F, R), []
        pivots = backend.rref_inplace(R, F.SUB, F.MUL, F.INV, ncols)
        return FMat(F, R), list(pivots)

    def row_basis(self) -> "FMat":
        """Reduced echelon basis of the row space (zero rows dropped)."""
        R, piv = self.rref()
        return FMat(self.field, R.data[: len(piv)].reshape(len(piv), self.cols))

    def rank(self) -> int:
        if self.data.size == 0:
            return 0
        return len(self.rref()[1])

    def kernel(self) -> "FMat":
        """Basis (as rows, reduced echelon form) of {x : self @ x = 0}."""
        F = self.field
        n = self.cols
        if self.rows == 0:
            return FMat.eye(F, n)
        R, piv = self.rref()
        free = [j for j in range(n) if j not in set(piv)]
        basis = np.zeros((len(free), n), dtype=np.int64)
        for t, f in enumerate(free):
            basis[t, f] = 1
            for i, pc in enumerate(piv):
                basis[t, pc] = F.NEG[R.data[i, f]]
        return FMat(F, basis).row_basis()

    def left_kernel(self) -> "FMat":
        """Basis of {y : y @ self = 0}."""
        return self.T.kernel()

    def solve(self, b) -> "FMat | None":
        """A particular x with self @ x = b (b a column or a vector), or None."""
        F = self.field
        bcol = b.data if isinstance(b, FMat) else np.asarray(b, dtype=np.int64)
        bcol = bcol.reshape(-1, 1)
        if bcol.shape[0] != self.rows:
            raise ShapeMismatch(f"rhs length {bcol.shape[0]} != rows {self.rows}")
        n = self.cols
        aug = np.hstack([self.data, bcol])
        R, piv = FMat(F, aug).rref(ncols=n)
        r = len(piv)
        if R.data[r:, n].any():
            return None
        x = np.zeros((n, 1), dtype=np.int64)
        for i, pc in enumerate(piv):
            x[pc, 0] = R.data[i, n]
        return FMat(F, x)

    def inverse(self) -> "FMat":
        n = self.rows
        if n != self.cols:
            raise ShapeMismatch("inverse of a non-square matrix")
        aug = np.hstack([self.data, np.eye(n, dtype=np.int64)])
        R, piv = FMat(self.field, aug).rref(ncols=n)
        if len(piv) != n:
            raise ZeroDivisionError("singular matrix")
        return FMat(self.field, R.data[:, n:])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def hstack(mats: Sequence[FMat]) -> FMat:
    F = mats[0].field
    return FMat(F, np.hstack([m.data for m in mats]))


def vstack(mats: Sequence[FMat], cols: int | None = None) -> FMat:
    mats = list(mats)
    if not mats:
        raise ShapeMismatch("vstack of nothing")
    F = mats[0].field
    return FMat(F, np.vstack([m.data for m in mats]))


def block_diag(field: Field, mats: Iterable[FMat]) -> FMat:
    mats = list(mats)
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for m in mats:
        out[i : i + m.rows, j : j + m.cols] = m.data
        i += m.rows
        j += m.cols
    return FMat(field, out)


def linear_solve(A: FMat, mode: str = "kernel", b=None):
    """Dispatch for the three linear-algebra queries: kernel, rank, solve."""
    if mode == "kernel":
        return A.kernel()
    if mode == "rank":
        return A.rank()
    if mode == "solve":
        if b is None:
            raise ShapeMismatch("solve mode needs a right-hand side")
        return A.solve(b)
    raise ValueError(f"unknown mode {mode!r}")


