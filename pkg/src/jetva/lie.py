"""
Matrix Lie algebras sl(N) and sp(2N), jet truncations, and their
derivation action on graded rings.

Conventions pinned here and relied on everywhere else:

  * fundamental action on an index family:   g . v_i = sum_a g[a][i] v_a
  * dual action:                             g . u^i = -sum_a g[i][a] u^a
    (with these, sum_i u^i v_i is invariant for every g);
  * a generator g t^k acts on a variable of effective jet degree
    d = level - jet_offset by 0 when d < k and by d!/(d-k)! times the
    matrix action on the variable at level - k otherwise, extended as an
    even derivation;
  * the symplectic form for sp(2N) is J = [[0, I], [-I, 0]].

Matrices are tuples of tuples of Fraction.
"""

from fractions import Fraction
from math import factorial

from . import linalg
from .errors import InvalidRank, MissingRepLabel, NotActionClosed
from .ring import EVEN, DerivationSpec, Poly

FUND = "fund"
DUAL = "dual"
TRIVIAL = "trivial"


def _zeros(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _freeze(m):
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def mat_mul(a, b):
    n = len(a)
    return _freeze([[sum(a[i][k] * b[k][j] for k in range(n))
                     for j in range(n)] for i in range(n)])


def mat_sub(a, b):
    return _freeze([[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def mat_add(a, b):
    return _freeze([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])


def mat_scale(c, a):
    return _freeze([[c * x for x in row] for row in a])


def bracket(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


class LieAlgebra:
    """sl(N) or sp(2N) with a fixed ordered basis."""

    def __init__(self, kind, n, basis):
        self.kind = kind          # 'sl' or 'sp'
        self.n = n                # matrix size (N for sl, 2N for sp)
        self.basis = tuple(basis)
        self.dim = len(basis)

    def label(self):
        return "%s%d" % (self.kind, self.n)

    def first_offdiagonal(self):
        """First basis element with a nonzero off-diagonal entry."""
        for g in self.basis:
            for i in range(self.n):
                for j in range(self.n):
                    if i != j and g[i][j] != 0:
                        return g
        raise InvalidRank("no off-diagonal basis element")

    def coordinates(self, m):
        """Coordinates of m in the basis, or None if outside the span."""
        cols = [[g[i][j] for i in range(self.n) for j in range(self.n)]
                for g in self.basis]
        tgt = [m[i][j] for i in range(self.n) for j in range(self.n)]
        return linalg.solve_in_span(cols, tgt)

    def __repr__(self):
        return "LieAlgebra(%s, dim=%d)" % (self.label(), self.dim)


def sl(n):
    """Standard basis: off-diagonal matrix units E_ij row-major, then
    diagonal differences E_ii - E_(i+1)(i+1)."""
    if n < 2:
        raise InvalidRank("sl(N) needs N >= 2")
    basis = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = _zeros(n)
            m[i][j] = Fraction(1)
            basis.append(_freeze(m))
    for i in range(n - 1):
        m = _zeros(n)
        m[i][i] = Fraction(1)
        m[i + 1][i + 1] = Fraction(-1)
        basis.append(_freeze(m))
    return LieAlgebra("sl", n, basis)


def sp(two_n):
    """sp(2N) for J = [[0,I],[-I,0]]: blocks [[A,B],[C,-A^T]] with B, C
    symmetric.  Basis: A = E_ij (row-major), then symmetric units of B,
    then of C."""
    if two_n < 2 or two_n % 2:
        raise InvalidRank("sp(2N) needs even size >= 2")
    n = two_n // 2
    basis = []
    for i in range(n):
        for j in range(n):
            m = _zeros(two_n)
            m[i][j] = Fraction(1)
            m[n + j][n + i] = Fraction(-1)
            basis.append(_freeze(m))
    for i in range(n):
        for j in range(i, n):
            m = _zeros(two_n)
            m[i][n + j] = Fraction(1)
            m[j][n + i] = Fraction(1)
            basis.append(_freeze(m))
    for i in range(n):
        for j in range(i, n):
            m = _zeros(two_n)
            m[n + i][j] = Fraction(1)
            m[n + j][i] = Fraction(1)
            basis.append(_freeze(m))
    return LieAlgebra("sp", two_n, basis)


def symplectic_form(two_n):
    n = two_n // 2
    m = _zeros(two_n)
    for i in range(n):
        m[i][n + i] = Fraction(1)
        m[n + i][i] = Fraction(-1)
    return _freeze(m)


def lie_basis(kind, rank):
    """kind 'sl' with rank N, or 'sp' with rank 2N (the matrix size)."""
    if kind == "sl":
        return sl(rank)
    if kind == "sp":
        return sp(rank)
    raise InvalidRank("unknown algebra kind %r" % kind)


class JetGen:
    """A Lie algebra element attached to a t-degree."""

    __slots__ = ("matrix", "degree")

    def __init__(self, matrix, degree):
        if degree < 0:
            raise ValueError("t-degree must be >= 0")
        self.matrix = _freeze(matrix)
        self.degree = degree

    def __repr__(self):
        return "JetGen(t^%d)" % self.degree


def matrix_on_index(matrix, rep, index, n_indices):
    """Images of basis slot `index` (1-based): list of (index, coeff)."""
    out = []
    if rep == TRIVIAL:
        return out
    if rep == FUND:
        for a in range(n_indices):
            c = matrix[a][index - 1]
            if c:
                out.append((a + 1, c))
    elif rep == DUAL:
        for a in range(n_indices):
            c = -matrix[index - 1][a]
            if c:
                out.append((a + 1, c))
    else:
        raise MissingRepLabel("family carries no representation label")
    return out


def jet_act(gen, poly):
    """Action of g t^k on a polynomial, as an even derivation."""
    alph = poly.alphabet
    k = gen.degree
    matrix = gen.matrix

    def images(var):
        fam_pos, index, level = var
        fam = alph.families[fam_pos]
        if fam.rep is None:
            raise MissingRepLabel("family %s has no rep label" % fam.name)
        if fam.rep == TRIVIAL:
            return None
        eff = level - fam.jet_offset
        if eff < k:
            return None
        if len(matrix) != fam.indices:
            raise MissingRepLabel(
                "matrix size %d does not match family %s"
                % (len(matrix), fam.name))
        coeff = Fraction(factorial(eff) // factorial(eff - k))
        terms = {}
        for a, c in matrix_on_index(matrix, fam.rep, index, fam.indices):
            terms[((fam_pos, a, level - k),)] = coeff * c
        return Poly(alph, terms)

    return DerivationSpec(alph, EVEN, images)(poly)


def jet_generators(algebra, m, mode="full"):
    """Generators of g[t]/(t^(m+1)).

    full: basis x t^0..t^m.  minimal: basis at t^0 plus the first
    off-diagonal basis element at t^1 (the single element of g t that,
    together with g, generates the truncated current algebra).
    """
    if mode == "full":
        return [JetGen(g, k) for k in range(m + 1) for g in algebra.basis]
    if mode == "minimal":
        gens = [JetGen(g, 0) for g in algebra.basis]
        if m >= 1:
            gens.append(JetGen(algebra.first_offdiagonal(), 1))
        return gens
    raise ValueError("mode must be 'full' or 'minimal'")


class MixedJetDerivation:
    """Sum of polynomial-coefficient jet generators: a |-> sum c * (g t^k a).

    The coefficient multiplies after the action.  All coefficients must be
    even, which keeps the commutator of two of these a derivation of the
    same shape.
    """

    def __init__(self, terms):
        self.terms = tuple(terms)
        for coeff, _gen in self.terms:
            if coeff.parity() != 0:
                raise ValueError("mixed derivation coefficients must be even")

    def __call__(self, poly):
        out = Poly.zero(poly.alphabet)
        for coeff, gen in self.terms:
            out = out + coeff * jet_act(gen, poly)
        return out

    def commutator(self, other, algebra, max_degree=None):
        """[self, other] as another MixedJetDerivation.

        [c D, c' D'] = c D(c') D' - c' D'(c) D + c c' [D, D'] with
        [g t^a, h t^b] = [g, h] t^(a+b); t-degrees above max_degree are
        dropped (they act as zero on a ring truncated there).
        """
        terms = []
        for c1, g1 in self.terms:
            for c2, g2 in other.terms:
                img = jet_act(g1, c2)
                if not img.is_zero():
                    terms.append((c1 * img, g2))
                img = jet_act(g2, c1)
                if not img.is_zero():
                    terms.append(((-1) * (c2 * img), g1))
                deg = g1.degree + g2.degree
                if max_degree is not None and deg > max_degree:
                    continue
                m = bracket(g1.matrix, g2.matrix)
                if not is_zero_matrix(m):
                    terms.append((c1 * c2, JetGen(m, deg)))
        return MixedJetDerivation(terms)


# -- Lemma "V* (x) g  meet  Sym^2 V* (x) V" ---------------------------------

def _tensor_dim(algebra):
    return algebra.n ** 3


def _tensor_slot(n, i, j, k):
    """Flat coordinate of u^i (x) u^j (x) v_k, all 0-based."""
    return (i * n + j) * n + k


def sym2_basis(algebra):
    """Basis of Sym^2 V* (x) V inside V* (x) V* (x) V."""
    n = algebra.n
    out = []
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                v = [Fraction(0)] * _tensor_dim(algebra)
                v[_tensor_slot(n, i, j, k)] += 1
                v[_tensor_slot(n, j, i, k)] += 1
                out.append(v)
    return out


def vstar_g_basis(algebra):
    """Basis of V* (x) g, with g embedded in V* (x) V by
    g = sum_{a,b} g[a][b] u^b (x) v_a."""
    n = algebra.n
    out = []
    for i in range(n):
        for g in algebra.basis:
            v = [Fraction(0)] * _tensor_dim(algebra)
            for a in range(n):
                for b in range(n):
                    if g[a][b]:
                        v[_tensor_slot(n, i, b, a)] += g[a][b]
            out.append(v)
    return out


def sym2_intersection(algebra):
    """Echelonized basis of V* (x) g  meet  Sym^2 V* (x) V."""
    return linalg.intersect(sym2_basis(algebra), vstar_g_basis(algebra),
                            ncols=_tensor_dim(algebra))


def tensor_action_matrix(algebra, g):
    """Action of g on V* (x) V* (x) V (dual, dual, fundamental)."""
    n = algebra.n
    d = _tensor_dim(algebra)
    m = [[Fraction(0)] * d for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                col = _tensor_slot(n, i, j, k)
                for a in range(n):
                    if g[i][a]:
                        m[_tensor_slot(n, a, j, k)][col] += -g[i][a]
                    if g[j][a]:
                        m[_tensor_slot(n, i, a, k)][col] += -g[j][a]
                    if g[a][k]:
                        m[_tensor_slot(n, i, j, a)][col] += g[a][k]
    return m


def restrict_action(amb_matrices, subspace_basis):
    """Restrict ambient action matrices to a subspace.

    Raises NotActionClosed when an image leaves the span.
    """
    if not subspace_basis:
        return [[] for _ in amb_matrices]
    dim_amb = len(subspace_basis[0])
    cols = [list(v) for v in subspace_basis]
    out = []
    for m in amb_matrices:
        mat = []
        for v in subspace_basis:
            img = [sum(m[i][j] * v[j] for j in range(dim_amb))
                   for i in range(dim_amb)]
            coords = linalg.solve_in_span(cols, img)
            if coords is None:
                raise NotActionClosed("subspace not closed under the action")
            mat.append(coords)
        # mat rows are images of basis vectors; transpose to act on columns
        d = len(subspace_basis)
        out.append([[mat[j][i] for j in range(d)] for i in range(d)])
    return out


def commutant_dim(action_matrices, dim):
    """dim of {T : T rho(x) = rho(x) T for all x}, exactly."""
    if dim == 0:
        return 0
    rows = []
    for m in action_matrices:
        # unknowns T[p][q] flattened; equation (T m - m T)[i][j] = 0
        for i in range(dim):
            for j in range(dim):
                row = [Fraction(0)] * (dim * dim)
                for q in range(dim):
                    row[i * dim + q] += m[q][j]
                for p in range(dim):
                    row[p * dim + j] -= m[i][p]
                rows.append(row)
    if not rows:
        return dim * dim
    return len(linalg.nullspace(rows, ncols=dim * dim))


def fundamental_action_matrices(algebra):
    """The basis matrices themselves, acting on V by columns."""
    return [[list(row) for row in g] for g in algebra.basis]


def direct_sum_action(mats_a, mats_b):
    out = []
    for ma, mb in zip(mats_a, mats_b):
        da, db = len(ma), len(mb)
        d = da + db
        m = [[Fraction(0)] * d for _ in range(d)]
        for i in range(da):
            for j in range(da):
                m[i][j] = Fraction(ma[i][j])
        for i in range(db):
            for j in range(db):
                m[da + i][da + j] = Fraction(mb[i][j])
        out.append(m)
    return out
