"""Dense d x d matrices over GF(p^gamma) and the distinguished families.

Matrices are immutable values.  Multiplication is the schoolbook d^3
algorithm on purpose: the cost accounting for automorphism composition
assumes exactly d^3 field multiplications per product.  Indices in every
public signature are 1-based, matching the e_{i,j} matrix-unit notation.
"""

from __future__ import annotations

import warnings

from .field import FieldElement, FieldMismatchError, FieldSpec

__all__ = [
    "Matrix",
    "Permutation",
    "SingularMatrixError",
    "identity",
    "matrix_unit",
    "transvection",
    "permutation_matrix",
    "diagonal_matrix",
    "scalar_matrix",
    "mat_mul",
    "mat_inv",
    "mat_pow",
    "det",
    "conjugate",
    "random_gl",
    "random_sl",
    "gl_order",
    "sl_order",
    "pgl_order",
]


class SingularMatrixError(ValueError):
    """Inversion or conjugation attempted with a singular matrix."""


class Matrix:
    __slots__ = ("spec", "d", "rows")

    def __init__(self, spec: FieldSpec, rows):
        rows = tuple(tuple(r) for r in rows)
        d = len(rows)
        if d < 1 or any(len(r) != d for r in rows):
            raise ValueError("matrix must be square")
        for r in rows:
            for x in r:
                if not isinstance(x, FieldElement):
                    raise TypeError("entries must be FieldElement values")
                if x.spec != spec:
                    raise FieldMismatchError("entry from a different field spec")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *args):
        raise AttributeError("Matrix is immutable")

    def entry(self, i: int, j: int) -> FieldElement:
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.spec == other.spec and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(x.val for x in r) for r in self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x.val) for x in r) for r in self.rows)
        return f"Matrix({self.spec!r}, [{body}])"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def transpose(self) -> "Matrix":
        return Matrix(self.spec, tuple(zip(*self.rows)))

    def trace(self) -> FieldElement:
        t = self.spec.zero()
        for i in range(self.d):
            t = t + self.rows[i][i]
        return t

    def det(self) -> FieldElement:
        return det(self)

    def inv(self) -> "Matrix":
        return mat_inv(self)

    def is_gl(self) -> bool:
        return bool(det(self))

    def is_sl(self) -> bool:
        return det(self) == self.spec.one()

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "rows": [[x.to_hex() for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, spec: FieldSpec, obj: dict) -> "Matrix":
        rows = [
            [FieldElement.from_hex(spec, s) for s in r] for r in obj["rows"]
        ]
        if len(rows) != obj["d"]:
            raise ValueError("row count does not match d")
        return cls(spec, rows)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def identity(spec: FieldSpec, d: int) -> Matrix:
    one, zero = spec.one(), spec.zero()
    return Matrix(spec, [[one if i == j else zero for j in range(d)] for i in range(d)])


def matrix_unit(spec: FieldSpec, d: int, i: int, j: int, lam: FieldElement | None = None) -> Matrix:
    """lam * e_{i,j}: all zero except entry (i, j)."""
    if lam is None:
        lam = spec.one()
    zero = spec.zero()
    rows = [[zero] * d for _ in range(d)]
    rows[i - 1][j - 1] = lam
    return Matrix(spec, rows)


def transvection(spec: FieldSpec, d: int, i: int, j: int, lam: FieldElement) -> Matrix:
    """Elementary transvection 1 + lam * e_{i,j} with i != j."""
    if i == j:
        raise ValueError("transvection requires i != j")
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError("index out of range")
    if lam.is_zero():
        warnings.warn("zero coefficient: transvection degenerates to the identity")
    one, zero = spec.one(), spec.zero()
    rows = [[one if a == b else zero for b in range(d)] for a in range(d)]
    rows[i - 1][j - 1] = lam
    return Matrix(spec, rows)


class Permutation:
    """Bijection of {1, ..., d}, stored as the 1-based image list."""

    __slots__ = ("d", "images")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        d = len(images)
        if sorted(images) != list(range(1, d + 1)):
            raise ValueError("not a bijection of 1..d")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "images", images)

    def __setattr__(self, *args):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(1, d + 1))

    @classmethod
    def random(cls, d: int, rng) -> "Permutation":
        imgs = list(range(1, d + 1))
        rng.shuffle(imgs)
        return cls(imgs)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """self followed by other: i -> other(self(i))."""
        return Permutation([other(self(i)) for i in range(1, self.d + 1)])

    def parity(self) -> int:
        """+1 for even, -1 for odd."""
        seen = [False] * self.d
        sign = 1
        for i in range(1, self.d + 1):
            if seen[i - 1]:
                continue
            length = 0
            j = i
            while not seen[j - 1]:
                seen[j - 1] = True
                j = self(j)
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def order(self) -> int:
        seen = [False] * self.d
        result = 1
        for i in range(1, self.d + 1):
            if seen[i - 1]:
                continue
            length = 0
            j = i
            while not seen[j - 1]:
                seen[j - 1] = True
                j = self(j)
                length += 1
            result = _lcm(result, length)
        return result

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def to_json(self) -> list:
        return list(self.images)

    @classmethod
    def from_json(cls, obj) -> "Permutation":
        return cls(obj)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def permutation_matrix(spec: FieldSpec, alpha: Permutation) -> Matrix:
    """Identity with rows exchanged by alpha; sends basis vector e_b to e_{alpha(b)}."""
    one, zero = spec.one(), spec.zero()
    d = alpha.d
    rows = [[zero] * d for _ in range(d)]
    for b in range(1, d + 1):
        rows[alpha(b) - 1][b - 1] = one
    return Matrix(spec, rows)


def diagonal_matrix(w) -> Matrix:
    w = list(w)
    if not w:
        raise ValueError("empty diagonal")
    spec = w[0].spec
    for x in w:
        if x.is_zero():
            raise ValueError("diagonal entries must be nonzero")
    zero = spec.zero()
    d = len(w)
    rows = [[w[a] if a == b else zero for b in range(d)] for a in range(d)]
    return Matrix(spec, rows)


def scalar_matrix(spec: FieldSpec, d: int, lam: FieldElement) -> Matrix:
    zero = spec.zero()
    return Matrix(spec, [[lam if a == b else zero for b in range(d)] for a in range(d)])


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    if x.spec != y.spec or x.d != y.d:
        raise FieldMismatchError("incompatible matrices")
    d = x.d
    xr, yr = x.rows, y.rows
    out = []
    for i in range(d):
        xi = xr[i]
        row = []
        for j in range(d):
            acc = xi[0] * yr[0][j]
            for k in range(1, d):
                acc = acc + xi[k] * yr[k][j]
            row.append(acc)
        out.append(row)
    return Matrix(x.spec, out)


def det(x: Matrix) -> FieldElement:
    spec, d = x.spec, x.d
    m = [list(r) for r in x.rows]
    sign_flip = False
    result = spec.one()
    for c in range(d):
        pivot_row = None
        for r in range(c, d):
            if m[r][c]:
                pivot_row = r
                break
        if pivot_row is None:
            return spec.zero()
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign_flip = not sign_flip
        pivot = m[c][c]
        result = result * pivot
        pinv = pivot.inv()
        for r in range(c + 1, d):
            if m[r][c]:
                f = m[r][c] * pinv
                m[r][c] = spec.zero()
                for k in range(c + 1, d):
                    m[r][k] = m[r][k] - f * m[c][k]
    if sign_flip:
        result = -result
    return result


def mat_inv(x: Matrix) -> Matrix:
    spec, d = x.spec, x.d
    m = [list(r) for r in x.rows]
    one, zero = spec.one(), spec.zero()
    aug = [[one if a == b else zero for b in range(d)] for a in range(d)]
    for c in range(d):
        pivot_row = None
        for r in range(c, d):
            if m[r][c]:
                pivot_row = r
                break
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            aug[c], aug[pivot_row] = aug[pivot_row], aug[c]
        pinv = m[c][c].inv()
        m[c] = [v * pinv for v in m[c]]
        aug[c] = [v * pinv for v in aug[c]]
        for r in range(d):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return Matrix(spec, aug)


def mat_pow(x: Matrix, n: int) -> Matrix:
    if n < 0:
        return mat_pow(mat_inv(x), -n)
    result = identity(x.spec, x.d)
    base = x
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def conjugate(x: Matrix, a: Matrix) -> Matrix:
    """a^(-1) x a."""
    return mat_mul(mat_mul(mat_inv(a), x), a)


def random_gl(spec: FieldSpec, d: int, rng) -> Matrix:
    while True:
        rows = [[spec.random(rng) for _ in range(d)] for _ in range(d)]
        m = Matrix(spec, rows)
        if m.is_gl():
            return m


def random_sl(spec: FieldSpec, d: int, rng) -> Matrix:
    m = random_gl(spec, d, rng)
    dt = det(m)
    if dt == spec.one():
        return m
    dinv = dt.inv()
    rows = [list(r) for r in m.rows]
    rows[-1] = [v * dinv for v in rows[-1]]
    return Matrix(spec, rows)


# ---------------------------------------------------------------------------
# group orders
# ---------------------------------------------------------------------------


def gl_order(d: int, q: int) -> int:
    n = 1
    for i in range(d):
        n *= q**d - q**i
    return n


def sl_order(d: int, q: int) -> int:
    return gl_order(d, q) // (q - 1)


def pgl_order(d: int, q: int) -> int:
    return gl_order(d, q) // (q - 1)
