"""Exact integer and field linear algebra.

Smith normal form with transformation matrices, integer kernels and
canonical solves, lattice bases, and reduced-echelon kernels of matrices
over an exact field.  Everything uses arbitrary-precision integers; the
pivoting rule (smallest absolute nonzero entry, ties in row-major order)
is fixed so that every downstream basis choice is reproducible.
"""

from dataclasses import dataclass


class IntMatrix:
    """Dense integer matrix, stored row-major as lists of ints."""

    __slots__ = ("rows", "_ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [list(map(int, r)) for r in rows]
        if self.rows:
            n = len(self.rows[0])
            if any(len(r) != n for r in self.rows):
                raise ValueError("ragged matrix")
            if ncols is not None and ncols != n:
                raise ValueError("ncols mismatch")
            self._ncols = n
        else:
            self._ncols = 0 if ncols is None else ncols

    @classmethod
    def zero(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols, nrows=None):
        if not cols:
            return cls.zero(nrows or 0, 0)
        nrows = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return self._ncols

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return IntMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def mul(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ocols = other.ncols
        out = [[0] * ocols for _ in range(self.nrows)]
        if not out:
            return IntMatrix([], ocols)
        for i, row in enumerate(self.rows):
            for k, a in enumerate(row):
                if a:
                    orow = other.rows[k]
                    oi = out[i]
                    for j in range(ocols):
                        oi[j] += a * orow[j]
        return IntMatrix(out)

    def mul_vec(self, v):
        if self.ncols != len(v):
            raise ValueError("shape mismatch")
        return [sum(a * x for a, x in zip(row, v)) for row in self.rows]

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def copy(self):
        return IntMatrix([list(r) for r in self.rows], self.ncols)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.ncols == other.ncols)

    def __repr__(self):
        return f"IntMatrix({self.rows})"


@dataclass
class SnfResult:
    """U.A.V = D with U, V unimodular and D diagonal, d1 | d2 | ... ."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    invariant_factors: list

    @property
    def rank(self):
        return len(self.invariant_factors)


def _find_pivot(m, t):
    best = None
    for i in range(t, m.nrows):
        for j in range(t, m.ncols):
            a = abs(m.rows[i][j])
            if a and (best is None or a < best[0]):
                best = (a, i, j)
    return None if best is None else (best[1], best[2])


def snf(a):
    """Smith normal form with full transformation data.

    Deterministic: the pivot is the smallest absolute nonzero entry of
    the remaining block, ties broken row-major.
    """
    m = a.copy()
    nr, nc = m.nrows, m.ncols
    u = IntMatrix.identity(nr)
    u_inv = IntMatrix.identity(nr)
    v = IntMatrix.identity(nc)
    v_inv = IntMatrix.identity(nc)

    def swap_rows(i, j):
        if i == j:
            return
        m.rows[i], m.rows[j] = m.rows[j], m.rows[i]
        u.rows[i], u.rows[j] = u.rows[j], u.rows[i]
        for r in u_inv.rows:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in m.rows:
            r[i], r[j] = r[j], r[i]
        for r in v.rows:
            r[i], r[j] = r[j], r[i]
        v_inv.rows[i], v_inv.rows[j] = v_inv.rows[j], v_inv.rows[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        if q == 0:
            return
        for k in range(nc):
            m.rows[dst][k] += q * m.rows[src][k]
        for k in range(nr):
            u.rows[dst][k] += q * u.rows[src][k]
        for r in u_inv.rows:
            r[src] -= q * r[dst]

    def add_col(src, dst, q):
        if q == 0:
            return
        for r in m.rows:
            r[dst] += q * r[src]
        for r in v.rows:
            r[dst] += q * r[src]
        for k in range(nc):
            v_inv.rows[src][k] -= q * v_inv.rows[dst][k]

    def negate_row(i):
        for k in range(nc):
            m.rows[i][k] = -m.rows[i][k]
        for k in range(nr):
            u.rows[i][k] = -u.rows[i][k]
        for r in u_inv.rows:
            r[i] = -r[i]

    t = 0
    while t < min(nr, nc):
        piv = _find_pivot(m, t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t, then row t; restart if a smaller pivot appears
            dirty = False
            for i in range(nr):
                if i != t and m.rows[i][t]:
                    q = m.rows[i][t] // m.rows[t][t]
                    add_row(t, i, -q)
                    if m.rows[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(nc):
                if j != t and m.rows[t][j]:
                    q = m.rows[t][j] // m.rows[t][t]
                    add_col(t, j, -q)
                    if m.rows[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # divisibility: pivot must divide the remaining block
            fixed = True
            for i in range(t + 1, nr):
                row = m.rows[i]
                for j in range(t + 1, nc):
                    if row[j] % m.rows[t][t]:
                        add_row(i, t, 1)
                        fixed = False
                        break
                if not fixed:
                    break
            if fixed:
                break
        if m.rows[t][t] < 0:
            negate_row(t)
        t += 1

    factors = [m.rows[i][i] for i in range(min(nr, nc)) if m.rows[i][i]]
    return SnfResult(u, m, v, u_inv, v_inv, factors)


def int_kernel(a):
    """Basis of the integer null space of a, as an IntMatrix of columns.

    The basis is the canonical one induced by snf(a).
    """
    res = snf(a)
    r = res.rank
    cols = [res.v.column(j) for j in range(r, a.ncols)]
    return IntMatrix.from_columns(cols, a.ncols)


class NoSolution:
    """Marker value: the integer system has no solution."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NoSolution"


NO_SOLUTION = NoSolution()


def int_solve(a, b):
    """Canonical integer solution of a.x = b, or NO_SOLUTION.

    Canonicalization: transform via SNF, set free coordinates to zero,
    transform back.
    """
    if len(b) != a.nrows:
        raise ValueError("shape mismatch")
    res = snf(a)
    ub = res.u.mul_vec(list(b))
    y = [0] * a.ncols
    r = res.rank
    for i in range(a.nrows):
        if i < r:
            d = res.d.rows[i][i]
            if ub[i] % d:
                return NO_SOLUTION
            y[i] = ub[i] // d
        elif ub[i]:
            return NO_SOLUTION
    return res.v.mul_vec(y)


def lattice_basis(columns_matrix):
    """Basis of the lattice spanned by the columns, as columns.

    Computed from snf: if U.K.V = D then the lattice is spanned by
    d_j * (U^-1 e_j) for the nonzero diagonal entries d_j.
    """
    res = snf(columns_matrix)
    cols = []
    for j, d in enumerate(res.invariant_factors):
        col = res.u_inv.column(j)
        cols.append([d * x for x in col])
    return IntMatrix.from_columns(cols, columns_matrix.nrows)


def det(a):
    """Integer determinant (Bareiss), for test-sized matrices."""
    n = a.nrows
    if n != a.ncols:
        raise ValueError("square matrix required")
    if n == 0:
        return 1
    m = [list(r) for r in a.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def field_kernel(rows, field):
    """Reduced-echelon basis of the null space of a matrix over a field.

    `rows` is a list of row lists of field elements; returns a list of
    column vectors.  Each basis vector has a 1 in its free coordinate and
    zeros in the other free coordinates.
    """
    if not rows:
        return []
    nc = len(rows[0])
    m = [list(r) for r in rows]
    nr = len(m)
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if not field.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nr):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    pivot_set = set(pivots)
    basis = []
    for c in range(nc):
        if c in pivot_set:
            continue
        vec = [field.zero()] * nc
        vec[c] = field.one()
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(m[i][c])
        basis.append(vec)
    return basis


def field_solve(rows, b, field):
    """Canonical solution of the linear system over a field, or None.

    `rows` is the coefficient matrix, `b` the right-hand side; the
    particular solution with all free coordinates zero is returned.
    """
    nr = len(rows)
    if nr == 0:
        return []
    nc = len(rows[0])
    m = [list(r) + [x] for r, x in zip(rows, b)]
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if not field.is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nr):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y))
                        for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if not field.is_zero(m[i][nc]):
            return None
    x = [field.zero()] * nc
    for i, c in enumerate(pivots):
        x[c] = m[i][nc]
    return x


def field_rank(rows, field):
    if not rows:
        return 0
    return len(rows[0]) - len(field_kernel(rows, field))
