"""Exact rational linear algebra kernels.

Everything in this module is exact: scalars are arbitrary-precision
rationals (``fractions.Fraction``), matrix rank is decided by fraction-free
elimination, characteristic polynomials come from the Faddeev-LeVerrier
recurrence, and similarity classes are decided through the rational
(Frobenius) canonical form.  No floating point appears anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# rational parsing / formatting ("p/q" strings, bare integers when q == 1)
# ---------------------------------------------------------------------------

def parse_rational(value) -> Fraction:
    """Parse an int, an integer string, or a "p/q" string into a Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def format_rational(q: Scalar):
    """Render a rational for JSON: a bare int when q == 1, else "p/q"."""
    q = Fraction(q)
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


def parse_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(parse_rational(v) for v in values)


def format_vector(vec: Sequence[Scalar]) -> list:
    return [format_rational(x) for x in vec]


# ---------------------------------------------------------------------------
# exact points on the unit circle (rotation parameters)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitPoint:
    """A rational point (c, s) with c**2 + s**2 == 1 and s > 0.

    Encodes an angle in the open interval (0, pi) without leaving exact
    arithmetic; (3/5, 4/5) is the smallest Pythagorean example.
    """

    c: Fraction
    s: Fraction

    def __post_init__(self):
        c, s = Fraction(self.c), Fraction(self.s)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "s", s)
        if c * c + s * s != 1:
            raise ValueError(f"({c}, {s}) is not on the unit circle")
        if s <= 0:
            raise ValueError(f"sine component must be positive, got {s}")


# ---------------------------------------------------------------------------
# dense rational matrices
# ---------------------------------------------------------------------------

class MatrixQ:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[Scalar]]):
        rows = tuple(tuple(x if type(x) is Fraction else Fraction(x) for x in row)
                     for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        self.rows = len(rows)
        self.cols = width
        self.data = rows

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(rows: int, cols: int | None = None) -> "MatrixQ":
        cols = rows if cols is None else cols
        return MatrixQ([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "MatrixQ":
        return MatrixQ([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(columns: Sequence[Sequence[Scalar]]) -> "MatrixQ":
        n = len(columns[0])
        return MatrixQ([[columns[j][i] for j in range(len(columns))] for i in range(n)])

    # -- basics --------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, MatrixQ) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"MatrixQ[{body}]"

    def __getitem__(self, pair):
        i, j = pair
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "MatrixQ":
        return MatrixQ([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._same_shape(other)
        return MatrixQ([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._same_shape(other)
        return MatrixQ([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)])

    def scale(self, factor: Scalar) -> "MatrixQ":
        f = Fraction(factor)
        return MatrixQ([[f * x for x in row] for row in self.data])

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.data))
        return MatrixQ([[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.data])

    def apply(self, vec: Sequence[Scalar]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * Fraction(b) for a, b in zip(row, vec)) for row in self.data)

    def _same_shape(self, other: "MatrixQ"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    # -- elimination ---------------------------------------------------------

    def rref(self) -> tuple["MatrixQ", tuple[int, ...]]:
        """Reduced row-echelon form and the pivot column indices."""
        m = [list(row) for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return MatrixQ(m), tuple(pivots)

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right kernel, one vector per free column."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            vec = [ZERO] * self.cols
            vec[fc] = ONE
            for r, pc in enumerate(pivots):
                vec[pc] = -red.data[r][fc]
            basis.append(tuple(vec))
        return basis

    def solve(self, rhs: Sequence[Scalar]) -> tuple[Fraction, ...] | None:
        """One exact solution of self @ x = rhs, or None if inconsistent."""
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = MatrixQ([list(row) + [Fraction(b)] for row, b in zip(self.data, rhs)])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.data[r][self.cols]
        return tuple(x)

    def inverse(self) -> "MatrixQ":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = MatrixQ([list(row) + [ONE if i == j else ZERO for j in range(n)]
                       for i, row in enumerate(self.data)])
        red, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)):
            raise ValueError("matrix is singular")
        return MatrixQ([row[n:] for row in red.data])


def mat_rank(m: MatrixQ) -> int:
    """Exact rank by fraction-free (Bareiss) elimination with full pivoting.

    The two-term cross-multiplication update divides by the previous pivot,
    which is an exact division; intermediate entries stay the size of minors
    instead of blowing up.
    """
    a = [list(row) for row in m.data]
    rows, cols = m.rows, m.cols
    prev = ONE
    k = 0
    while k < min(rows, cols):
        pivot = next(((i, j) for i in range(k, rows) for j in range(k, cols) if a[i][j] != 0), None)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
        pk = a[k][k]
        for i in range(k + 1, rows):
            aik = a[i][k]
            for j in range(k + 1, cols):
                a[i][j] = (pk * a[i][j] - aik * a[k][j]) / prev
            a[i][k] = ZERO
        prev = pk
        k += 1
    return k


def det(m: MatrixQ) -> Fraction:
    """Exact determinant via Bareiss elimination (row pivoting only)."""
    if not m.is_square():
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    a = [list(row) for row in m.data]
    prev = ONE
    sign = 1
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pk * a[i][j] - aik * a[k][j]) / prev
            a[i][k] = ZERO
        prev = pk
    return sign * a[n - 1][n - 1] if n else ONE


def char_poly(m: MatrixQ) -> tuple[Fraction, ...]:
    """Monic characteristic polynomial det(tI - M), coefficients ascending.

    Faddeev-LeVerrier recurrence; the divisions by 1..n are exact over Q.
    """
    if not m.is_square():
        raise ValueError("characteristic polynomial of non-square matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    aux = MatrixQ.identity(n)
    for k in range(1, n + 1):
        mk = m @ aux
        trace = sum(mk.data[i][i] for i in range(n))
        coeffs[n - k] = -trace / k
        if k < n:
            aux = mk + MatrixQ.identity(n).scale(coeffs[n - k])
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# univariate polynomials over Q (coefficient tuples, ascending degree)
# ---------------------------------------------------------------------------

def poly_trim(p: Sequence[Scalar]) -> tuple[Fraction, ...]:
    coeffs = [Fraction(c) for c in p]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_degree(p: Sequence[Fraction]) -> int:
    return len(poly_trim(p)) - 1


def poly_monic(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p = poly_trim(p)
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def poly_divmod(p: Sequence[Fraction], q: Sequence[Fraction]):
    p, q = list(poly_trim(p)), poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [ZERO] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q):
        factor = p[-1] / q[-1]
        shift = len(p) - len(q)
        quot[shift] = factor
        for i, c in enumerate(q):
            p[shift + i] -= factor * c
        while p and p[-1] == 0:
            p.pop()
    return poly_trim(quot), poly_trim(p)


def poly_gcd(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_lcm(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return ()
    g = poly_gcd(p, q)
    quot, rem = poly_divmod(poly_mul(p, q), g)
    assert not rem
    return poly_monic(quot)


def poly_divides(p: Sequence[Fraction], q: Sequence[Fraction]) -> bool:
    """True when p divides q exactly."""
    return not poly_divmod(q, p)[1]


def poly_eval_matrix(p: Sequence[Fraction], m: MatrixQ) -> MatrixQ:
    result = MatrixQ.zero(m.rows, m.cols)
    power = MatrixQ.identity(m.rows)
    for c in poly_trim(p):
        if c != 0:
            result = result + power.scale(c)
        power = power @ m
    return result


def poly_scale_argument(p: Sequence[Fraction], c: Scalar) -> tuple[Fraction, ...]:
    """Monic image of p under t -> t/c, i.e. c**deg(p) * p(t/c).

    If p is an invariant factor of M, this is the matching invariant
    factor of c*M: coefficient k picks up a factor c**(deg - k).
    """
    p = poly_trim(p)
    c = Fraction(c)
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    d = len(p) - 1
    return tuple(a * c ** (d - k) for k, a in enumerate(p))


def scaled_invariant_factors(factors: Sequence[Sequence[Fraction]],
                             c: Scalar) -> tuple[tuple[Fraction, ...], ...]:
    """Invariant factors of c*M from those of M."""
    return tuple(poly_scale_argument(f, c) for f in factors)


def companion(p: Sequence[Fraction]) -> MatrixQ:
    """Companion matrix of a monic polynomial (ones on the subdiagonal)."""
    p = poly_trim(p)
    if not p or p[-1] != 1:
        raise ValueError("companion matrix requires a monic polynomial")
    d = len(p) - 1
    m = [[ZERO] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = ONE
    for i in range(d):
        m[i][d - 1] = -p[i]
    return MatrixQ(m)


# ---------------------------------------------------------------------------
# Frobenius (rational canonical) form
# ---------------------------------------------------------------------------

def _vector_annihilator(m: MatrixQ, v: Sequence[Fraction]):
    """Monic minimal polynomial of v under m, with the Krylov chain.

    Incremental Gaussian reduction: each new Krylov vector is reduced
    against the stored echelon rows while an augmented tail tracks its
    expression in the original chain, so the first dependency yields the
    annihilator coefficients directly.
    """
    n = m.rows
    chain = []
    echelon = []  # (pivot index, reduced row, combination over chain)
    current = tuple(v)
    while True:
        k = len(chain)
        row = list(current)
        combo = [ZERO] * (n + 1)
        combo[k] = ONE
        for pivot, base, base_combo in echelon:
            factor = row[pivot]
            if factor != 0:
                for idx in range(n):
                    row[idx] -= factor * base[idx]
                for idx in range(n + 1):
                    combo[idx] -= factor * base_combo[idx]
        pivot = next((idx for idx in range(n) if row[idx] != 0), None)
        if pivot is None:
            # sum combo_j m^j v = 0 with combo_k = 1: monic annihilator
            return poly_trim(combo[: k + 1]), chain
        inv = 1 / row[pivot]
        echelon.append((pivot, [x * inv for x in row], [x * inv for x in combo]))
        chain.append(current)
        if k >= n:
            raise AssertionError("annihilator search exceeded dimension")
        current = m.apply(current)


def _basis_annihilators(m: MatrixQ):
    n = m.rows
    out = []
    for i in range(n):
        e = tuple(ONE if j == i else ZERO for j in range(n))
        out.append(_vector_annihilator(m, e)[0])
    return out


def minimal_poly(m: MatrixQ) -> tuple[Fraction, ...]:
    if not m.is_square():
        raise ValueError("minimal polynomial of non-square matrix")
    result: tuple[Fraction, ...] = (ONE,)
    for ann in _basis_annihilators(m):
        result = poly_lcm(result, ann)
        if poly_degree(result) == m.rows:
            break
    return result


def _maximal_vector(m: MatrixQ, anns: Sequence[Sequence[Fraction]]):
    """A vector whose annihilator equals the minimal polynomial.

    Greedy combination over the standard basis; for a wrong mixing scalar c
    the annihilator of v + c*e drops below lcm only on finitely many c (at
    most one per maximal divisor), so a short scan always succeeds.
    """
    n = m.rows
    minpoly: tuple[Fraction, ...] = (ONE,)
    for ann in anns:
        minpoly = poly_lcm(minpoly, ann)
    target_deg = poly_degree(minpoly)
    v = tuple(ONE if j == 0 else ZERO for j in range(n))
    ann = anns[0]
    for i in range(1, n):
        if poly_degree(ann) == target_deg:
            break
        joint = poly_lcm(ann, anns[i])
        if poly_degree(joint) == poly_degree(ann):
            continue
        e = tuple(ONE if j == i else ZERO for j in range(n))
        for c in range(0, n + 3):
            cand = tuple(a + c * b for a, b in zip(v, e))
            ann_c, _ = _vector_annihilator(m, cand)
            if poly_degree(ann_c) == poly_degree(joint):
                v, ann = cand, ann_c
                break
        else:
            raise AssertionError("maximal vector mixing scan failed")
    assert poly_degree(ann) == target_deg
    return v, ann


def _invariant_complement(m: MatrixQ, chain: list[tuple[Fraction, ...]]):
    """m-invariant complement of the cyclic subspace spanned by `chain`.

    Pick a functional f with f(m^j v) = delta(j, d-1); the largest
    m-invariant subspace inside ker f intersects the cyclic space trivially
    and has the complementary dimension.
    """
    n = m.rows
    d = len(chain)
    krylov_t = MatrixQ(chain)  # d x n, rows are m^j v
    rhs = [ZERO] * d
    rhs[d - 1] = ONE
    f = krylov_t.solve(rhs)
    assert f is not None
    rows = []
    current = tuple(f)
    mt = m.transpose()
    for _ in range(n):
        rows.append(current)
        current = mt.apply(current)
    basis = MatrixQ(rows).nullspace()
    assert len(basis) == n - d
    return basis


def frobenius_form(m: MatrixQ):
    """Invariant factors f1 | f2 | ... | fk and a transform P.

    P is invertible and P @ M @ P^-1 is block diagonal with the companion
    matrices of the invariant factors, in the order of the returned list.
    Two square matrices over Q are similar iff these lists coincide.
    """
    if not m.is_square():
        raise ValueError("Frobenius form of non-square matrix")
    n = m.rows
    factors_desc = []
    basis_chains_desc = []

    def decompose(mat: MatrixQ, embed: list[tuple[Fraction, ...]]):
        # embed maps the local coordinates back into the original space
        if mat.rows == 0:
            return
        v, ann = _maximal_vector(mat, _basis_annihilators(mat))
        _, chain = _vector_annihilator(mat, v)
        factors_desc.append(ann)
        basis_chains_desc.append([_lift(vec, embed) for vec in chain])
        if len(chain) < mat.rows:
            comp = _invariant_complement(mat, chain)
            local = MatrixQ.from_columns(comp)
            images = [mat.apply(w) for w in comp]
            restricted_cols = []
            for img in images:
                coords = local.solve(img)
                assert coords is not None, "complement is not invariant"
                restricted_cols.append(coords)
            restricted = MatrixQ.from_columns(restricted_cols)
            decompose(restricted, [_lift(w, embed) for w in comp])

    def _lift(vec, embed):
        out = [ZERO] * n
        for coef, base in zip(vec, embed):
            for i in range(n):
                out[i] += coef * base[i]
        return tuple(out)

    identity_embed = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    decompose(m, identity_embed)

    factors = list(reversed(factors_desc))
    chains = list(reversed(basis_chains_desc))
    for small, large in zip(factors, factors[1:]):
        assert poly_divides(small, large), "invariant factor chain broken"
    columns = [vec for chain in chains for vec in chain]
    q = MatrixQ.from_columns(columns)
    p = q.inverse()
    return factors, p


def frobenius_block_matrix(factors: Sequence[Sequence[Fraction]]) -> MatrixQ:
    """Block-diagonal matrix of companion blocks, same order as `factors`."""
    size = sum(poly_degree(f) for f in factors)
    out = [[ZERO] * size for _ in range(size)]
    offset = 0
    for f in factors:
        block = companion(f)
        d = block.rows
        for i in range(d):
            for j in range(d):
                out[offset + i][offset + j] = block.data[i][j]
        offset += d
    return MatrixQ(out)


def similar(a: MatrixQ, b: MatrixQ) -> bool:
    """Exact similarity over Q via invariant factor comparison."""
    if a.rows != b.rows or not a.is_square() or not b.is_square():
        return False
    return frobenius_form(a)[0] == frobenius_form(b)[0]


# ---------------------------------------------------------------------------
# rational k-th roots (exact)
# ---------------------------------------------------------------------------

def _int_kth_root(value: int, k: int) -> int | None:
    """Exact non-negative integer k-th root, or None."""
    if value < 0:
        return None
    if value in (0, 1):
        return value
    lo, hi = 0, 1
    while hi ** k < value:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == value else None


def rational_kth_roots(q: Scalar, k: int) -> list[Fraction]:
    """All rational solutions c of c**k == q."""
    q = Fraction(q)
    if k <= 0:
        raise ValueError("root order must be positive")
    if q == 0:
        return [ZERO]
    negative = q < 0
    if negative and k % 2 == 0:
        return []
    num = _int_kth_root(abs(q.numerator), k)
    den = _int_kth_root(q.denominator, k)
    if num is None or den is None:
        return []
    root = Fraction(num, den)
    if negative:
        return [-root]
    return [root, -root] if k % 2 == 0 else [root]


# ---------------------------------------------------------------------------
# Pfaffian of a 4x4 skew matrix
# ---------------------------------------------------------------------------

def pfaffian4(b12, b13, b14, b23, b24, b34):
    """Pfaffian from the strict upper triangle of a 4x4 skew matrix.

    Works for rationals and for polynomial entries alike; its square is the
    determinant of the skew matrix, so a skew 4x4 is singular iff this
    expression vanishes.
    """
    return b12 * b34 - b13 * b24 + b14 * b23


def skew4_from_upper(b12, b13, b14, b23, b24, b34) -> MatrixQ:
    z = ZERO
    return MatrixQ([
        [z, b12, b13, b14],
        [-b12, z, b23, b24],
        [-b13, -b23, z, b34],
        [-b14, -b24, -b34, z],
    ])


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over Q
# ---------------------------------------------------------------------------

class PolyQ:
    """Sparse polynomial in a fixed number of variables, exact coefficients.

    Terms map exponent tuples to nonzero Fractions.  Only small degrees
    arise here (linear Kirillov entries and their quadratic sub-Pfaffians),
    so the representation is kept deliberately simple.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for expo, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef == 0:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != nvars:
                raise ValueError("exponent arity mismatch")
            clean[expo] = coef
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "PolyQ":
        return PolyQ(nvars)

    @staticmethod
    def constant(nvars: int, value: Scalar) -> "PolyQ":
        return PolyQ(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def variable(index: int, nvars: int) -> "PolyQ":
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return PolyQ(nvars, {expo: ONE})

    @staticmethod
    def linear_form(coeffs: Sequence[Scalar]) -> "PolyQ":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                expo = tuple(1 if j == i else 0 for j in range(n))
                terms[expo] = Fraction(c)
        return PolyQ(n, terms)

    # -- algebra ---------------------------------------------------------------

    def _coerce(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return PolyQ.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for expo, coef in other.terms.items():
            terms[expo] = terms.get(expo, ZERO) + coef
        return PolyQ(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyQ):
            f = Fraction(other)
            return PolyQ(self.nvars, {e: c * f for e, c in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                terms[expo] = terms.get(expo, ZERO) + c1 * c2
        return PolyQ(self.nvars, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == PolyQ.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        values = [Fraction(x) for x in point]
        total = ZERO
        for expo, coef in self.terms.items():
            term = coef
            for x, e in zip(values, expo):
                for _ in range(e):
                    term *= x
            total += term
        return total

    def scalar_ratio_to(self, other: "PolyQ"):
        """Return mu with self == mu * other, or None if not proportional."""
        other = self._coerce(other)
        if other.is_zero():
            return ZERO if self.is_zero() else None
        if self.is_zero():
            return ZERO
        expo, coef = next(iter(sorted(other.terms.items())))
        mine = self.terms.get(expo)
        if mine is None:
            return None
        mu = mine / coef
        return mu if self == other * mu else None

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"f{i + 1}" for i in range(self.nvars)]
        parts = []
        for expo, coef in sorted(self.terms.items(), reverse=True):
            factors = []
            for name, e in zip(names, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(body)
            elif coef == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coef}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def all_minors_rank(m: MatrixQ) -> int:
    """Rank by exhaustive minor enumeration; small matrices only."""
    r = 0
    for size in range(1, min(m.rows, m.cols) + 1):
        found = False
        for rows in itertools.combinations(range(m.rows), size):
            for cols in itertools.combinations(range(m.cols), size):
                sub = MatrixQ([[m.data[i][j] for j in cols] for i in rows])
                if det(sub) != 0:
                    found = True
                    break
            if found:
                break
        if found:
            r = size
        else:
            break
    return r
