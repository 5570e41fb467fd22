"""
Exact linear algebra over the rationals.

Everything here works on dense matrices given as lists of lists of
Fraction (or int).  Forward elimination is fraction-free (Bareiss) on a
common-denominator-cleared integer copy, so no rational gcd churn happens
in the inner loop; results are converted back to Fraction at the end.
Pivoting is always "first nonzero in column order", which makes every
output deterministic across platforms.  That determinism is a contract:
echelonized bases are compared verbatim in golden files.
"""

from fractions import Fraction


def _to_int_rows(rows):
    """Clear denominators row by row; returns integer rows."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            f = Fraction(x)
            den = den * f.denominator // _gcd(den, f.denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rref(rows):
    """Reduced row echelon form.

    Returns (rref_rows, pivot_columns) with Fraction entries and leading
    coefficients normalized to 1.  Input is not modified.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(rows):
    if not rows:
        return 0
    m = _to_int_rows(rows)
    nrows, ncols = len(m), len(m[0])
    # Bareiss fraction-free elimination; only the rank is kept.
    prev = 1
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(rows, ncols=None):
    """Echelonized basis of {x : A x = 0}.

    Returns a list of Fraction vectors of length ncols.  The basis is the
    canonical one read off the RREF (free variable set to 1, expressed in
    increasing free-column order), then itself reduced, so it is unique
    for a given row space.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for empty system")
        ncols = len(rows[0])
    if not rows:
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    red, pivots = rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    if basis:
        basis, _ = rref(basis)
    return basis


def solve_in_span(columns, target):
    """Coordinates x with sum_i x_i columns[i] = target, or None.

    When the columns are dependent the solution with free coordinates set
    to zero is returned (deterministic).
    """
    n = len(target)
    k = len(columns)
    aug = []
    for i in range(n):
        row = [Fraction(col[i]) for col in columns]
        row.append(Fraction(target[i]))
        aug.append(row)
    red, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for r, pc in enumerate(pivots):
        x[pc] = red[r][k]
    return x


def intersect(basis_a, basis_b, ncols=None):
    """Echelonized basis of span(basis_a) ∩ span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    if ncols is None:
        ncols = len(basis_a[0])
    rows = []
    for i in range(ncols):
        rows.append([Fraction(v[i]) for v in basis_a]
                    + [-Fraction(v[i]) for v in basis_b])
    ker = nullspace(rows, ncols=len(basis_a) + len(basis_b))
    vecs = []
    for coeff in ker:
        v = [Fraction(0)] * ncols
        for j, basis_vec in enumerate(basis_a):
            if coeff[j]:
                for i in range(ncols):
                    v[i] += coeff[j] * basis_vec[i]
        vecs.append(v)
    vecs = [v for v in vecs if any(v)]
    if vecs:
        vecs, _ = rref(vecs)
    return vecs


def det(rows):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in rows]
    sign = 1
    prev = Fraction(1)
    for c in range(n - 1):
        pr = None
        for i in range(c, n):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) / prev
            m[i][c] = Fraction(0)
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def leading_principal_minors(rows):
    n = len(rows)
    return [det([row[:k] for row in rows[:k]]) for k in range(1, n + 1)]


def is_positive_definite(rows):
    """Sylvester criterion with exact minors; rows must be symmetric."""
    return all(mi > 0 for mi in leading_principal_minors(rows))


def same_span(basis_a, basis_b, ncols):
    """Exact equality of the two spanned subspaces."""
    ra = rank([list(v) for v in basis_a]) if basis_a else 0
    rb = rank([list(v) for v in basis_b]) if basis_b else 0
    if ra != rb:
        return False
    both = [list(v) for v in basis_a] + [list(v) for v in basis_b]
    return (rank(both) if both else 0) == ra
