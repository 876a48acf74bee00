"""Exact integer and rational arithmetic for expanding-matrix digit systems.

Everything here is exact: determinants, adjugates, linear solves, and the
expansion test run over Python integers (arbitrary precision, so overflow
cannot occur) or fractions.Fraction.  No floating point enters any computation
that feeds the combinatorial layers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Vec = tuple[int, ...]

DEFAULT_MAX_LEN = 10 ** 6


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vec_scale(k: int, u: Vec) -> Vec:
    return tuple(k * a for a in u)


def _det(rows):
    m = len(rows)
    if m == 0:
        return 1
    if m == 1:
        return rows[0][0]
    if m == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    sign = 1
    for j in range(m):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += sign * rows[0][j] * _det(minor)
        sign = -sign
    return total


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix with exact determinant and adjugate.

    The adjugate satisfies adjugate @ M == det * I; this identity is verified
    at construction time so any arithmetic defect fails loudly.
    """

    rows: tuple[tuple[int, ...], ...]
    det: int = field(init=False, compare=False, repr=False)
    adjugate: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)
        det = _det(rows)
        adj = tuple(
            tuple(
                (-1) ** (i + j)
                * _det([r[:i] + r[i + 1:] for k, r in enumerate(rows) if k != j])
                for j in range(m)
            )
            for i in range(m)
        )
        object.__setattr__(self, "det", det)
        object.__setattr__(self, "adjugate", adj)
        ident = tuple(
            tuple(det if i == j else 0 for j in range(m)) for i in range(m)
        )
        if _mat_mul(adj, rows) != ident:
            raise AssertionError("adjugate self-check failed")

    @property
    def size(self) -> int:
        return len(self.rows)

    @staticmethod
    def identity(m: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m)))

    def mul_vec(self, v: Vec) -> Vec:
        if len(v) != self.size:
            raise ValueError("dimension mismatch")
        return tuple(sum(r[j] * v[j] for j in range(self.size)) for r in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(_mat_mul(self.rows, other.rows))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a - b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.rows, other.rows)))

    def plus_scalar(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(x + (c if i == j else 0) for j, x in enumerate(r))
                               for i, r in enumerate(self.rows)))

    def pow(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("nonnegative powers only")
        acc = IntMatrix.identity(self.size)
        for _ in range(k):
            acc = acc @ self
        return acc

    @property
    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def solve_int(self, w: Vec) -> Vec | None:
        """Integer solution x of M x = w, or None when none exists."""
        if self.det == 0:
            raise ValueError("matrix is singular")
        t = tuple(sum(r[j] * w[j] for j in range(self.size)) for r in self.adjugate)
        if any(x % self.det != 0 for x in t):
            return None
        return tuple(x // self.det for x in t)

    def solve_fraction(self, w) -> tuple[Fraction, ...]:
        """Exact rational solution of M x = w (w integral or rational)."""
        if self.det == 0:
            raise ValueError("matrix is singular")
        return tuple(
            Fraction(sum(r[j] * w[j] for j in range(self.size))) / self.det
            for r in self.adjugate
        )


def _mat_mul(a, b):
    m = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m))
        for i in range(m)
    )


def companion_form(coeffs) -> tuple[IntMatrix, tuple[Vec, ...]]:
    """Companion matrix and collinear digit set of a monic integer polynomial.

    coeffs lists the coefficients in descending powers, [1, c1, ..., cm].
    The digit set is {i * e1 : 0 <= i < |cm|}.
    """
    cs = [int(c) for c in coeffs]
    if len(cs) < 2 or cs[0] != 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    if cs[-1] == 0:
        raise ValueError("constant coefficient must be nonzero")
    m = len(cs) - 1
    rows = [[0] * m for _ in range(m)]
    for j in range(m - 1):
        rows[j + 1][j] = 1
    for i in range(m):
        rows[i][m - 1] = -cs[m - i]
    matrix = IntMatrix(tuple(tuple(r) for r in rows))
    e1 = tuple([1] + [0] * (m - 1))
    return matrix, collinear_digit_set(matrix, e1)


def char_poly(matrix: IntMatrix) -> list[int]:
    """Coefficients [1, c1, ..., cm] of det(xI - M) in descending powers."""
    m = matrix.size
    coeffs = [1]
    n = matrix
    for k in range(1, m + 1):
        t = n.trace
        if t % k != 0:
            raise AssertionError("characteristic coefficients must be integral")
        coeffs.append(-(t // k))
        if k < m:
            n = matrix @ n.plus_scalar(coeffs[-1])
    return coeffs


def _all_roots_strictly_inside(coeffs: list[int]) -> bool:
    # Schur-Cohn reduction over exact integers; coeffs in descending powers.
    # Strict |a0| < |an| must hold at every stage; any equality means a root
    # on or outside the unit circle.
    c = list(coeffs)
    while len(c) > 1:
        a_n, a_0 = c[0], c[-1]
        if abs(a_0) >= abs(a_n):
            return False
        rev = c[::-1]
        t = [a_n * c[i] - a_0 * rev[i] for i in range(len(c))]
        if t[-1] != 0:
            raise AssertionError("Schur transform must kill the constant term")
        c = t[:-1]
    return True


def is_expanding(matrix: IntMatrix) -> bool:
    """True iff every eigenvalue has modulus strictly greater than 1.

    Supports 3x3 matrices only; decided exactly via Schur-Cohn on the
    reversed characteristic polynomial (whose roots are the reciprocal
    eigenvalues).
    """
    if matrix.size != 3:
        raise ValueError("is_expanding supports 3x3 matrices only")
    one, a, b, c = char_poly(matrix)
    if c == 0:
        return False  # zero eigenvalue
    if 1 <= a <= b < c:
        return True
    return _all_roots_strictly_inside([c, b, a, one])


def collinear_digit_set(matrix: IntMatrix, v: Vec) -> tuple[Vec, ...]:
    """Digit set {0, v, 2v, ..., (|det|-1) v}."""
    v = tuple(int(x) for x in v)
    if len(v) != matrix.size:
        raise ValueError("dimension mismatch")
    if all(x == 0 for x in v):
        raise ValueError("direction vector must be nonzero")
    if matrix.det == 0:
        raise ValueError("matrix is singular")
    return tuple(vec_scale(i, v) for i in range(abs(matrix.det)))


def is_complete_residue_system(matrix: IntMatrix, digits) -> bool:
    """True iff digits hit every residue class of Z^m / M Z^m exactly once."""
    digits = tuple(tuple(int(x) for x in d) for d in digits)
    if len(set(digits)) != len(digits):
        raise ValueError("digit set contains duplicates")
    if matrix.det == 0:
        raise ValueError("matrix is singular")
    modulus = abs(matrix.det)
    if len(digits) != modulus:
        return False
    adj = matrix.adjugate
    m = matrix.size
    residues = {
        tuple(sum(adj[i][j] * d[j] for j in range(m)) % modulus for i in range(m))
        for d in digits
    }
    return len(residues) == modulus


@dataclass(frozen=True)
class RadixExpansion:
    """Outcome of a radix expansion attempt.

    digits holds the consumed digit word (the full expansion on success);
    cycle holds the repeating remainder states when the expansion enters a
    loop, and is None when the step budget ran out without a detected cycle.
    """

    digits: tuple[Vec, ...]
    terminated: bool
    cycle: tuple[Vec, ...] | None


def radix_expand(matrix: IntMatrix, digits, z: Vec,
                 max_len: int = DEFAULT_MAX_LEN) -> RadixExpansion:
    """Expand z in base (M, digits): z = d1 + M d2 + ... + M^(n-1) dn.

    Each step picks the unique digit congruent to the remainder modulo M Z^m
    and divides; a revisited remainder is reported as a cycle instead of
    looping forever.
    """
    digits = tuple(tuple(int(x) for x in d) for d in digits)
    if len(set(digits)) != len(digits):
        raise ValueError("digit set contains duplicates")
    state = tuple(int(x) for x in z)
    word: list[Vec] = []
    seen: dict[Vec, int] = {}
    order: list[Vec] = []
    for _ in range(max_len):
        if all(x == 0 for x in state):
            return RadixExpansion(tuple(word), True, None)
        if state in seen:
            cyc = tuple(order[seen[state]:])
            return RadixExpansion(tuple(word), False, cyc)
        seen[state] = len(order)
        order.append(state)
        matches = []
        for d in digits:
            nxt = matrix.solve_int(vec_sub(state, d))
            if nxt is not None:
                matches.append((d, nxt))
        if len(matches) != 1:
            raise ValueError(
                f"digit set is not a residue system at {state}: "
                f"{len(matches)} candidate digits"
            )
        d, state = matches[0]
        word.append(d)
    if all(x == 0 for x in state):
        return RadixExpansion(tuple(word), True, None)
    return RadixExpansion(tuple(word), False, None)
