"""Automorphisms of SL(d,q) presented by their action on generators.

An automorphism is stored as the map (i, j) -> image of 1 + e_{i,j}, one
matrix per ordered pair.  Conjugation is linear in the transvection
coefficient, so these d^2 - d images determine the image of every
1 + lam*e_{i,j}: the image of a letter is 1 + lam*(N - 1), and N - 1 is
rank one whenever the presentation is a genuine conjugation.  apply()
exploits that factorization so the image of a letter costs O(d^2) field
multiplications instead of a full matrix product.

Composition order is fixed artifact-wide as left-to-right application:
compose(phi, psi) maps X to psi(phi(X)).  Conjugations then satisfy
compose(conj_A, conj_B) = conj_{A·B}.

Graph (contragredient) and field (entrywise Frobenius) automorphisms are
kept in a separate type and never accepted as key material.
"""

from __future__ import annotations

import itertools

from .field import FieldElement, FieldSpec
from .linalg import RowReducer
from .matrix import (
    Matrix,
    SingularMatrixError,
    identity,
    mat_inv,
    mat_mul,
    mat_pow,
)
from .words import decompose

__all__ = [
    "Automorphism",
    "BAutomorphism",
    "InvalidAutomorphismError",
    "recover_conjugator",
    "conjugator_solution_space",
    "apply_graph",
    "apply_field",
]


class InvalidAutomorphismError(ValueError):
    """Generator images are not realizable as a single conjugation."""


def generator_pairs(d: int):
    """All ordered pairs (i, j), i != j, in lexicographic order."""
    return [(i, j) for i in range(1, d + 1) for j in range(1, d + 1) if i != j]


class Automorphism:
    __slots__ = ("spec", "d", "images", "_rank1")

    def __init__(self, spec: FieldSpec, d: int, images: dict):
        pairs = generator_pairs(d)
        if sorted(images) != pairs and set(images) != set(pairs):
            raise ValueError("images must cover every ordered pair (i, j), i != j")
        imgs = {}
        for key in pairs:
            m = images[key]
            if not isinstance(m, Matrix) or m.spec != spec or m.d != d:
                raise ValueError(f"image for {key} has wrong spec or degree")
            if not m.is_sl():
                raise InvalidAutomorphismError(f"image for {key} is not in SL")
            imgs[key] = m
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "images", imgs)
        object.__setattr__(
            self, "_rank1", {key: _factor_rank1(spec, d, m) for key, m in imgs.items()}
        )

    def __setattr__(self, *args):
        raise AttributeError("Automorphism is immutable")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def identity(cls, spec: FieldSpec, d: int) -> "Automorphism":
        from .matrix import transvection

        one = spec.one()
        return cls(
            spec, d,
            {(i, j): transvection(spec, d, i, j, one) for i, j in generator_pairs(d)},
        )

    @classmethod
    def from_conjugator(cls, a: Matrix) -> "Automorphism":
        """X -> A^(-1) X A, presented on the transvection generators."""
        spec, d = a.spec, a.d
        ainv = mat_inv(a)  # raises SingularMatrixError for singular input
        one = spec.one()
        images = {}
        for i, j in generator_pairs(d):
            col = [ainv.rows[r][i - 1] for r in range(d)]
            row = a.rows[j - 1]
            rows = []
            for r in range(d):
                cr = col[r]
                if cr:
                    new = [cr * row[b] for b in range(d)]
                else:
                    new = [spec.zero()] * d
                new[r] = new[r] + one
                rows.append(new)
            images[(i, j)] = Matrix(spec, rows)
        return cls(spec, d, images)

    # -- application ------------------------------------------------------------

    def apply(self, x: Matrix) -> Matrix:
        """Image of a determinant-1 matrix.

        Decomposes x into transvection letters and multiplies the letter
        images 1 + lam*(N - 1) together.
        """
        spec, d = self.spec, self.d
        if x.spec != spec or x.d != d:
            raise ValueError("matrix has wrong spec or degree")
        word = decompose(x)
        one, zero = spec.one(), spec.zero()
        grid = [[one if a == b else zero for b in range(d)] for a in range(d)]
        for i, j, lam in word.letters:
            fac = self._rank1[(i, j)]
            if fac is not None:
                u, v = fac
                for a in range(d):
                    row = grid[a]
                    acc = zero
                    for k in range(d):
                        rk = row[k]
                        if rk and u[k]:
                            acc = acc + rk * u[k]
                    if acc:
                        w = lam * acc
                        for b in range(d):
                            if v[b]:
                                row[b] = row[b] + w * v[b]
            else:
                n = self.images[(i, j)]
                fac_rows = [
                    [
                        (one if a == b else zero)
                        + lam * (n.rows[a][b] - (one if a == b else zero))
                        for b in range(d)
                    ]
                    for a in range(d)
                ]
                grid = [
                    [
                        _dot(grid[a], [fac_rows[k][b] for k in range(d)], zero)
                        for b in range(d)
                    ]
                    for a in range(d)
                ]
        return Matrix(spec, grid)

    def __call__(self, x: Matrix) -> Matrix:
        return self.apply(x)

    # -- group structure ----------------------------------------------------------

    def compose(self, other: "Automorphism") -> "Automorphism":
        """Left-to-right composition: X -> other(self(X))."""
        if self.spec != other.spec or self.d != other.d:
            raise ValueError("automorphisms over different groups")
        return Automorphism(
            self.spec, self.d,
            {key: other.apply(img) for key, img in self.images.items()},
        )

    def power(self, m: int) -> "Automorphism":
        """m-th power by square and multiply over compose."""
        if m < 0:
            return self.invert().power(-m)
        result = Automorphism.identity(self.spec, self.d)
        base = self
        while m:
            if m & 1:
                result = result.compose(base)
            m >>= 1
            if m:
                base = base.compose(base)
        return result

    def power_via_conjugator(self, m: int) -> "Automorphism":
        """Same value as power(m), via the recovered conjugator.

        Conjugation by B^m equals the m-th compose-power of conjugation
        by B, and the center ambiguity of B cancels under conjugation,
        so the two paths agree image by image.
        """
        b = recover_conjugator(self)
        return Automorphism.from_conjugator(mat_pow(b, m))

    def invert(self) -> "Automorphism":
        return Automorphism.from_conjugator(mat_inv(recover_conjugator(self)))

    def invert_via_order(self, max_order: int = 1 << 16) -> "Automorphism":
        """Order-based inverse phi^(t-1) where phi^t = 1.

        Exposed for cross-checks at toy scale only: finding t walks the
        cyclic group one compose at a time, capped by max_order.
        """
        ident = Automorphism.identity(self.spec, self.d)
        acc = self
        t = 1
        while acc != ident:
            acc = acc.compose(self)
            t += 1
            if t > max_order:
                raise InvalidAutomorphismError("order exceeds the search cap")
        return self.power(t - 1)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return (self.spec, self.d) == (other.spec, other.d) and self.images == other.images

    def __repr__(self):
        return f"Automorphism(d={self.d}, spec={self.spec!r})"

    def is_monomial(self) -> bool:
        """True when every generator image is a single transvection."""
        return all(
            _read_transvection(img) is not None for img in self.images.values()
        )

    # -- serialization --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "spec": self.spec.to_json(),
            "images": [
                {"i": i, "j": j, "matrix": self.images[(i, j)].to_json()}
                for i, j in generator_pairs(self.d)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Automorphism":
        spec = FieldSpec.from_json(obj["spec"])
        d = int(obj["d"])
        images = {}
        for item in obj["images"]:
            images[(int(item["i"]), int(item["j"]))] = Matrix.from_json(
                spec, item["matrix"]
            )
        return cls(spec, d, images)


def _dot(row, col, zero):
    acc = zero
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def _factor_rank1(spec: FieldSpec, d: int, img: Matrix):
    """Write img - 1 as an outer product u * v^T, or None if rank > 1."""
    one, zero = spec.one(), spec.zero()
    rows = []
    for a in range(d):
        row = list(img.rows[a])
        row[a] = row[a] - one
        rows.append(row)
    pivot = None
    for a in range(d):
        for b in range(d):
            if rows[a][b]:
                pivot = (a, b)
                break
        if pivot:
            break
    if pivot is None:
        return (tuple([zero] * d), tuple([zero] * d))  # image is the identity
    pa, pb = pivot
    v = tuple(rows[pa])
    pinv = v[pb].inv()
    u = tuple(rows[a][pb] * pinv for a in range(d))
    for a in range(d):
        ua = u[a]
        for b in range(d):
            expect = ua * v[b] if (ua and v[b]) else zero
            if rows[a][b] != expect:
                return None
    return (u, v)


def _read_transvection(img: Matrix):
    """(i, j, lam) if img is exactly 1 + lam*e_{i,j}, else None."""
    spec, d = img.spec, img.d
    one = spec.one()
    found = None
    for a in range(d):
        for b in range(d):
            x = img.rows[a][b]
            if a == b:
                if x != one:
                    return None
            elif x:
                if found is not None:
                    return None
                found = (a + 1, b + 1, x)
    return found


# ---------------------------------------------------------------------------
# special conjugacy problem
# ---------------------------------------------------------------------------


def _constraint_rows(spec: FieldSpec, d: int, i: int, j: int, n: Matrix):
    """Linear constraints (1 + e_{i,j}) B = B N on the d^2 entries of B.

    Unknown b_{a,c} has column index a*d + c.  No multiplications are
    needed to build the rows; coefficients are copies or negations of
    entries of N.
    """
    zero, one = spec.zero(), spec.one()
    for a in range(d):
        for b in range(d):
            row = [zero] * (d * d)
            for c in range(d):
                coeff = -n.rows[c][b]
                if c == b:
                    coeff = coeff + one
                row[a * d + c] = coeff
            if a == i - 1:
                row[(j - 1) * d + b] = row[(j - 1) * d + b] + one
            yield row


def _solution_basis(phi: Automorphism) -> list[Matrix]:
    spec, d = phi.spec, phi.d
    reducer = RowReducer(spec, d * d)
    max_rank = d * d - 1
    for (i, j) in generator_pairs(d):
        for row in _constraint_rows(spec, d, i, j, phi.images[(i, j)]):
            reducer.add_row(row)
        if reducer.rank >= max_rank:
            break
    basis = reducer.nullspace_basis()
    return [
        Matrix(spec, [vec[a * d:(a + 1) * d] for a in range(d)]) for vec in basis
    ]


def conjugator_solution_space(phi: Automorphism) -> list[Matrix]:
    """Basis of the linear space of B with (1+e_{i,j}) B = B * image."""
    return _solution_basis(phi)


def _satisfies_all(phi: Automorphism, b: Matrix) -> bool:
    spec, d = phi.spec, phi.d
    for (i, j), n in phi.images.items():
        rhs = mat_mul(b, n)
        # (1 + e_{i,j}) B adds row j of B to row i
        for a in range(d):
            for c in range(d):
                lhs = b.rows[a][c]
                if a == i - 1:
                    lhs = lhs + b.rows[j - 1][c]
                if lhs != rhs.rows[a][c]:
                    return False
    return True


def recover_conjugator(phi: Automorphism) -> Matrix:
    """Solve the special conjugacy problem for a generator presentation.

    Returns one invertible B with phi(X) = B^(-1) X B; any other solution
    is a scalar multiple (the center of GL).  The solution space is found
    by linear algebra; a nonsingular point is picked deterministically by
    scanning basis combinations with small coefficients.
    """
    spec = phi.spec
    basis = _solution_basis(phi)
    if not basis:
        raise InvalidAutomorphismError("no conjugator: empty solution space")
    candidate = None
    for b in basis:
        if b.is_gl():
            candidate = b
            break
    if candidate is None and len(basis) > 1:
        scan_vals = [spec.from_val(v) for v in range(min(spec.q, 4))]
        for combo in itertools.product(scan_vals, repeat=len(basis)):
            if all(c.is_zero() for c in combo):
                continue
            acc = None
            for c, mat in zip(combo, basis):
                if c.is_zero():
                    continue
                scaled = Matrix(
                    spec, [[c * x for x in row] for row in mat.rows]
                )
                acc = scaled if acc is None else Matrix(
                    spec,
                    [
                        [a + b2 for a, b2 in zip(r1, r2)]
                        for r1, r2 in zip(acc.rows, scaled.rows)
                    ],
                )
            if acc is not None and acc.is_gl():
                candidate = acc
                break
    if candidate is None:
        raise InvalidAutomorphismError("no nonsingular solution")
    if not _satisfies_all(phi, candidate):
        raise InvalidAutomorphismError("presentation is not a conjugation")
    return candidate


# ---------------------------------------------------------------------------
# graph and field automorphisms (the non-conjugation kind)
# ---------------------------------------------------------------------------


def apply_graph(x: Matrix) -> Matrix:
    """Contragredient map X -> (X^(-1))^T; an involution."""
    return mat_inv(x).transpose()


def apply_field(x: Matrix, i: int) -> Matrix:
    """Entrywise Frobenius power X -> X^(p^i)."""
    if not 0 <= i < x.spec.gamma:
        raise ValueError("Frobenius power out of range")
    if i == 0:
        return x
    return Matrix(x.spec, [[v.frobenius(i) for v in row] for row in x.rows])


class BAutomorphism:
    """Composition of a graph flip and a field automorphism power.

    These generate a group of order 2*gamma.  They are kept out of key
    material; the type exists for verification and the security lab.
    """

    __slots__ = ("spec", "graph_flag", "field_power")

    def __init__(self, spec: FieldSpec, graph_flag: bool, field_power: int):
        if not 0 <= field_power < spec.gamma:
            raise ValueError("field power out of range")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "graph_flag", bool(graph_flag))
        object.__setattr__(self, "field_power", field_power)

    def __setattr__(self, *args):
        raise AttributeError("BAutomorphism is immutable")

    def apply(self, x: Matrix) -> Matrix:
        out = apply_field(x, self.field_power)
        if self.graph_flag:
            out = apply_graph(out)
        return out

    def compose(self, other: "BAutomorphism") -> "BAutomorphism":
        if self.spec != other.spec:
            raise ValueError("different field specs")
        return BAutomorphism(
            self.spec,
            self.graph_flag ^ other.graph_flag,
            (self.field_power + other.field_power) % self.spec.gamma,
        )

    def order(self) -> int:
        from math import gcd

        g = self.spec.gamma
        field_order = g // gcd(g, self.field_power) if self.field_power else 1
        graph_order = 2 if self.graph_flag else 1
        return field_order * graph_order // gcd(field_order, graph_order)

    def __eq__(self, other):
        if not isinstance(other, BAutomorphism):
            return NotImplemented
        return (self.spec, self.graph_flag, self.field_power) == (
            other.spec, other.graph_flag, other.field_power,
        )

    def __repr__(self):
        return f"BAutomorphism(graph={self.graph_flag}, field_power={self.field_power})"
