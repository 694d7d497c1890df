"""Lie algebras as exact structure-constant tensors.

A ``LieAlgebra`` stores the brackets [X_i, X_j] for i < j as coefficient
vectors over Q; skew-symmetry is structural.  Construction never requires
the Jacobi identity (non-examples must be representable), but every
analysis entry point that assumes a Lie algebra checks the cached Jacobi
status first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import MatrixQ, ONE, ZERO, format_rational, parse_rational

Vector = tuple[Fraction, ...]


def _q(value) -> Fraction:
    return value if type(value) is Fraction else Fraction(value)


def _as_vector(values: Sequence, dim: int) -> Vector:
    vec = tuple(_q(v) for v in values)
    if len(vec) != dim:
        raise ValueError(f"expected a vector of length {dim}, got {len(vec)}")
    return vec


class Subspace:
    """A subspace of Q^n held in reduced row-echelon form.

    The RREF rows are a canonical spanning set, so two Subspace values are
    equal iff they describe the same subspace.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, rows: Sequence[Sequence] = ()):
        vectors = [_as_vector(r, ambient) for r in rows]
        if vectors:
            red, pivots = MatrixQ(vectors).rref()
            kept = [red.row(i) for i in range(len(pivots))]
        else:
            kept, pivots = [], ()
        self.ambient = ambient
        self.rows = tuple(kept)
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def contains(self, vec: Sequence) -> bool:
        return self.coordinates(vec) is not None

    def coordinates(self, vec: Sequence) -> Vector | None:
        """Coefficients of vec over the RREF basis, or None if outside."""
        v = list(_as_vector(vec, self.ambient))
        coords = []
        for row, pivot in zip(self.rows, self.pivots):
            c = v[pivot]
            coords.append(c)
            if c != 0:
                for k in range(self.ambient):
                    v[k] -= c * row[k]
        if any(x != 0 for x in v):
            return None
        return tuple(coords)

    def basis(self) -> tuple[Vector, ...]:
        return self.rows

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient, list(self.rows) + list(other.rows))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.rows or not other.rows:
            return Subspace(self.ambient)
        # solve x*A = y*B: kernel of [A^T | -B^T]
        cols = [list(row) for row in self.rows] + [[-x for x in row] for row in other.rows]
        stacked = MatrixQ.from_columns(cols)
        vectors = []
        for sol in stacked.nullspace():
            coeffs = sol[: len(self.rows)]
            vec = [ZERO] * self.ambient
            for c, row in zip(coeffs, self.rows):
                for k in range(self.ambient):
                    vec[k] += c * row[k]
            vectors.append(vec)
        return Subspace(self.ambient, vectors)

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, MatrixQ.identity(ambient).data)


class AdOperator:
    """Matrix of ad_x restricted to an invariant subspace."""

    __slots__ = ("source", "subspace", "matrix")

    def __init__(self, source: Vector, subspace: Subspace, matrix: MatrixQ):
        self.source = source
        self.subspace = subspace
        self.matrix = matrix

    def __repr__(self):
        return f"AdOperator({self.matrix!r} on dim-{self.subspace.dim} subspace)"


class LieAlgebra:
    """Finite-dimensional algebra over Q given by structure constants.

    brackets maps (i, j) with 0 <= i < j < dim to the coefficient vector of
    [X_i, X_j]; missing pairs bracket to zero.
    """

    __slots__ = ("dim", "basis_names", "brackets", "_jacobi", "_derived", "_memo")

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Sequence],
                 basis_names: Sequence[str] | None = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        names = tuple(basis_names) if basis_names is not None else tuple(
            f"X{i + 1}" for i in range(dim))
        if len(names) != dim:
            raise ValueError("basis name count mismatch")
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bad bracket pair ({i}, {j}) for dimension {dim}")
            vec = _as_vector(coeffs, dim)
            if any(c != 0 for c in vec):
                table[(i, j)] = vec
        self.dim = dim
        self.basis_names = names
        self.brackets = table
        self._jacobi = None
        self._derived = None
        self._memo = {}  # lazy caches keyed by analysis modules; values immutable

    # -- construction ---------------------------------------------------------

    @staticmethod
    def from_brackets(dim: int, entries: Iterable[tuple[int, int, Mapping[int, object]]],
                      basis_names: Sequence[str] | None = None) -> "LieAlgebra":
        """Build from 1-based bracket entries (i, j, {k: coefficient}).

        Requires i < j and at most one entry per pair.  Jacobi validity is
        NOT required here; it is recorded and enforced by analysis code.
        """
        table: dict[tuple[int, int], list[Fraction]] = {}
        for i, j, coeffs in entries:
            if not (1 <= i < j <= dim):
                raise ValueError(
                    f"bracket pair ({i}, {j}) out of range or not increasing for dim {dim}")
            key = (i - 1, j - 1)
            if key in table:
                raise ValueError(f"duplicate bracket for pair ({i}, {j})")
            vec = [ZERO] * dim
            for k, value in coeffs.items():
                k = int(k)
                if not (1 <= k <= dim):
                    raise ValueError(f"bracket target index {k} out of range for dim {dim}")
                vec[k - 1] = parse_rational(value)
            table[key] = vec
        return LieAlgebra(dim, table, basis_names)

    @staticmethod
    def abelian(dim: int) -> "LieAlgebra":
        return LieAlgebra(dim, {})

    def basis_vector(self, index: int) -> Vector:
        return tuple(ONE if k == index else ZERO for k in range(self.dim))

    # -- bracket --------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[X_i, X_j] for 0-based indices, any order."""
        if i == j:
            return (ZERO,) * self.dim
        if i < j:
            return self.brackets.get((i, j), (ZERO,) * self.dim)
        vec = self.brackets.get((j, i))
        if vec is None:
            return (ZERO,) * self.dim
        return tuple(-c for c in vec)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        """Bilinear antisymmetric extension of the structure constants."""
        uu = _as_vector(u, self.dim)
        vv = _as_vector(v, self.dim)
        out = [ZERO] * self.dim
        for (i, j), coeffs in self.brackets.items():
            factor = uu[i] * vv[j] - uu[j] * vv[i]
            if factor != 0:
                for k, c in enumerate(coeffs):
                    if c != 0:
                        out[k] += factor * c
        return tuple(out)

    def bracket_with_basis(self, u: Sequence, k: int) -> Vector:
        """[u, X_k], avoiding the full bilinear expansion."""
        uu = _as_vector(u, self.dim)
        out = [ZERO] * self.dim
        for (i, j), coeffs in self.brackets.items():
            if j == k:
                factor = uu[i]
            elif i == k:
                factor = -uu[j]
            else:
                continue
            if factor != 0:
                for idx, c in enumerate(coeffs):
                    if c != 0:
                        out[idx] += factor * c
        return tuple(out)

    # -- Jacobi ---------------------------------------------------------------

    def jacobi_check(self):
        """None when the Jacobi identity holds; else (i, j, k, defect).

        The returned triple is 0-based and the defect is the exact value of
        [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj].
        """
        if self._jacobi is None:
            result = ()
            for i in range(self.dim):
                for j in range(i + 1, self.dim):
                    bij = self.bracket_basis(i, j)
                    for k in range(j + 1, self.dim):
                        total = [a + b + c for a, b, c in zip(
                            self.bracket_with_basis(bij, k),
                            self.bracket_with_basis(self.bracket_basis(j, k), i),
                            self.bracket_with_basis(self.bracket_basis(k, i), j))]
                        if any(x != 0 for x in total):
                            result = (i, j, k, tuple(total))
                            break
                    if result:
                        break
                if result:
                    break
            self._jacobi = result
        return self._jacobi if self._jacobi else None

    @property
    def is_lie(self) -> bool:
        return self.jacobi_check() is None

    def require_jacobi(self):
        failure = self.jacobi_check()
        if failure is not None:
            i, j, k, _ = failure
            raise ValueError(
                f"Jacobi identity fails at triple ({i + 1}, {j + 1}, {k + 1})")

    # -- series, center, centralizer -------------------------------------------

    def span_of_brackets(self, left: Subspace, right: Subspace) -> Subspace:
        vectors = []
        left_is_full = left.dim == self.dim
        for v in right.basis():
            if left_is_full:
                images = (tuple(-x for x in self.bracket_with_basis(v, i))
                          for i in range(self.dim))
            else:
                images = (self.bracket(u, v) for u in left.basis())
            for w in images:
                if any(x != 0 for x in w):
                    vectors.append(w)
        return Subspace(self.dim, vectors)

    def derived_series(self) -> list[Subspace]:
        """G >= G^1 >= G^2 >= ..., stopping at stabilization."""
        series = [Subspace.full(self.dim)]
        while True:
            nxt = (self.derived_ideal() if len(series) == 1
                   else self.span_of_brackets(series[-1], series[-1]))
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        return series

    def lower_central_series(self) -> list[Subspace]:
        series = [Subspace.full(self.dim)]
        full = Subspace.full(self.dim)
        while True:
            nxt = self.span_of_brackets(full, series[-1])
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        return series

    def derived_dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.derived_series())

    def lower_central_dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.lower_central_series())

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].dim == 0

    def derived_ideal(self) -> Subspace:
        if self._derived is None:
            self._derived = self.span_of_brackets(
                Subspace.full(self.dim), Subspace.full(self.dim))
        return self._derived

    def centralizer(self, s: Subspace) -> Subspace:
        """{u : [u, v] = 0 for every v in s}, as a kernel computation."""
        if s.ambient != self.dim:
            raise ValueError("subspace has wrong ambient dimension")
        if s.dim == 0:
            return Subspace.full(self.dim)
        blocks = []
        for v in s.basis():
            # row block: u -> [u, v], columns are [X_i, v] = -[v, X_i]
            cols = [tuple(-x for x in self.bracket_with_basis(v, i))
                    for i in range(self.dim)]
            blocks.extend(MatrixQ.from_columns(cols).data)
        return Subspace(self.dim, MatrixQ(blocks).nullspace())

    def center(self) -> Subspace:
        return self.centralizer(Subspace.full(self.dim))

    def is_subspace_commutative(self, s: Subspace) -> bool:
        return self.span_of_brackets(s, s).dim == 0

    # -- adjoint operators ------------------------------------------------------

    def ad_matrix(self, x: Sequence) -> MatrixQ:
        """Matrix of ad_x on the whole algebra (columns are [x, X_j])."""
        xx = _as_vector(x, self.dim)
        cols = [self.bracket_with_basis(xx, j) for j in range(self.dim)]
        return MatrixQ.from_columns(cols)

    def ad_restricted(self, x: Sequence, s: Subspace) -> AdOperator:
        """Matrix of ad_x on an invariant subspace, in its RREF basis."""
        xx = _as_vector(x, self.dim)
        cols = []
        for v in s.basis():
            image = self.bracket(xx, v)
            coords = s.coordinates(image)
            if coords is None:
                raise ValueError("subspace is not invariant under ad_x")
            cols.append(coords)
        if s.dim == 0:
            matrix = MatrixQ.zero(0, 0)
        else:
            matrix = MatrixQ.from_columns(cols)
        return AdOperator(xx, s, matrix)

    def derived_ideal_commutative(self) -> bool:
        flag = self._memo.get("core.g1_commutative")
        if flag is None:
            flag = self.is_subspace_commutative(self.derived_ideal())
            self._memo["core.g1_commutative"] = flag
        return flag

    def ad_commute_check(self, x: Sequence, y: Sequence) -> bool:
        """Whether ad_x and ad_y commute as operators on the derived ideal.

        Refuses to run when the derived ideal is not commutative, since the
        guarantee only holds under that hypothesis.
        """
        g1 = self.derived_ideal()
        if not self.derived_ideal_commutative():
            raise ValueError("derived ideal is not commutative")
        ax = self.ad_restricted(x, g1).matrix
        ay = self.ad_restricted(y, g1).matrix
        return ax @ ay == ay @ ax

    # -- transport and sums ------------------------------------------------------

    def change_of_basis(self, p: MatrixQ) -> "LieAlgebra":
        """Re-express the algebra in the basis given by the columns of p.

        Column j of p lists the new basis vector X'_j in old coordinates;
        the new structure constants are P^-1 [P e_i, P e_j].
        """
        if p.rows != self.dim or p.cols != self.dim:
            raise ValueError("basis-change matrix has wrong shape")
        p_inv = p.inverse()  # raises on singular input
        table = {}
        cols = [p.column(j) for j in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w = self.bracket(cols[i], cols[j])
                table[(i, j)] = p_inv.apply(w)
        return LieAlgebra(self.dim, table, self.basis_names)

    def direct_sum(self, other: "LieAlgebra") -> "LieAlgebra":
        """Block direct sum; cross brackets vanish."""
        n, m = self.dim, other.dim
        table = {}
        for (i, j), coeffs in self.brackets.items():
            table[(i, j)] = tuple(coeffs) + (ZERO,) * m
        for (i, j), coeffs in other.brackets.items():
            table[(n + i, n + j)] = (ZERO,) * n + tuple(coeffs)
        names = tuple(self.basis_names) + tuple(f"Y{k + 1}" for k in range(m))
        return LieAlgebra(n + m, table, names)

    # -- serialization -------------------------------------------------------------

    def to_dict(self) -> dict:
        entries = []
        for (i, j) in sorted(self.brackets):
            coeffs = self.brackets[(i, j)]
            packed = {str(k + 1): format_rational(c)
                      for k, c in enumerate(coeffs) if c != 0}
            entries.append({"i": i + 1, "j": j + 1, "coeffs": packed})
        return {"dim": self.dim, "basis": list(self.basis_names), "brackets": entries}

    @staticmethod
    def from_dict(payload: Mapping) -> "LieAlgebra":
        if not isinstance(payload, Mapping):
            raise ValueError("algebra document must be a JSON object")
        allowed = {"dim", "basis", "brackets"}
        unknown = set(payload) - allowed
        if unknown:
            raise ValueError(f"unknown fields: {sorted(unknown)}")
        if "dim" not in payload or "brackets" not in payload:
            raise ValueError("algebra document requires 'dim' and 'brackets'")
        dim = payload["dim"]
        if not isinstance(dim, int) or dim < 0:
            raise ValueError("'dim' must be a non-negative integer")
        names = payload.get("basis")
        if names is not None:
            if (not isinstance(names, list)
                    or not all(isinstance(x, str) for x in names)):
                raise ValueError("'basis' must be a list of strings")
        entries = []
        raw = payload["brackets"]
        if not isinstance(raw, list):
            raise ValueError("'brackets' must be a list")
        for pos, item in enumerate(raw):
            if not isinstance(item, Mapping):
                raise ValueError(f"bracket #{pos} is not an object")
            extra = set(item) - {"i", "j", "coeffs"}
            if extra:
                raise ValueError(f"bracket #{pos} has unknown fields: {sorted(extra)}")
            try:
                i, j = item["i"], item["j"]
                coeffs = item["coeffs"]
            except KeyError as exc:
                raise ValueError(f"bracket #{pos} is missing field {exc}") from exc
            if not isinstance(i, int) or not isinstance(j, int) or not i < j:
                raise ValueError(f"bracket #{pos} requires integer indices with i < j")
            if not isinstance(coeffs, Mapping):
                raise ValueError(f"bracket #{pos} coeffs must be an object")
            entries.append((i, j, coeffs))
        return LieAlgebra.from_brackets(dim, entries, names)


def transport_covector(coords: Sequence, p: MatrixQ) -> Vector:
    """Covector coordinates matching change_of_basis(G, p): F' = P^T F."""
    return p.transpose().apply(_as_vector(coords, p.rows))
