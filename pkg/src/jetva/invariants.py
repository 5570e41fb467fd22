"""
Invariant subspaces of graded pieces under truncated current algebras.

A graded piece is cut out by a weight and a (possibly partial) family
degree assignment.  The invariant subspace is the joint kernel of every
supplied jet generator, computed by exact elimination and returned as an
echelonized basis of polynomials; each report re-verifies its own basis
on construction.

The derivative-word machinery (generation_gap) runs in the untruncated
ring and measures spans by rank, never by syntactic identity of words.
"""

from fractions import Fraction
from math import factorial

from . import linalg
from .errors import JetvaError
from .lie import JetGen, MixedJetDerivation, jet_act, jet_generators
from .ring import (Grade, Poly, graded_basis,
                   monomials_up_to_conformal_weight, tilde_d)


def _max_effective_degree(alphabet, weight, degrees=None, conformal=False):
    """Largest jet degree that can act nontrivially on the piece."""
    best = 0
    for fam in alphabet.families:
        if fam.rep in (None, "trivial"):
            continue
        w_off = fam.weight_offset if conformal else 0
        # a variable of level l contributes weight l + w_off ( >= its
        # effective degree when offsets are nonnegative)
        lv = weight - w_off
        if fam.max_level is not None:
            lv = min(lv, fam.max_level)
        best = max(best, lv - fam.jet_offset)
    return max(best, 0)


def generators_for(alphabet, algebra, m, mode="full", *, weight=None,
                   conformal=False):
    """Jet generators acting on a piece; m=None means "all degrees that
    can act", which needs a weight to bound them."""
    if m is None:
        if weight is None:
            raise JetvaError("untruncated generator set needs a weight bound")
        m = _max_effective_degree(alphabet, weight, conformal=conformal)
    return jet_generators(algebra, m, mode)


class InvariantReport:
    """Echelonized basis of one invariant graded piece."""

    def __init__(self, alphabet, grade, basis, generators):
        self.alphabet = alphabet
        self.grade = grade
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        for p in self.basis:
            bad = check_invariant_gens(p, generators)
            if bad:
                raise JetvaError("non-invariant basis element %s" % p.text())

    def as_dict(self):
        return {"grade": self.grade_dict(), "dim": self.dim,
                "basis": [p.text() for p in self.basis]}

    def grade_dict(self):
        if isinstance(self.grade, Grade):
            return self.grade.as_dict(self.alphabet)
        degrees, weight = self.grade
        return {"degrees": dict(degrees), "weight": weight}


class GenerationGapReport:
    """Span of derivative words vs invariant dimension on one grade."""

    def __init__(self, alphabet, grade, span_dim, invariant_dim):
        if span_dim > invariant_dim:
            raise JetvaError("span exceeded the invariant space")
        self.alphabet = alphabet
        self.grade = grade
        self.span_dim = span_dim
        self.invariant_dim = invariant_dim

    def as_dict(self):
        return {"grade": self.grade.as_dict(self.alphabet),
                "span_dim": self.span_dim,
                "invariant_dim": self.invariant_dim}


def _kernel_of_operators(alphabet, monos, operators):
    """Joint kernel of linear operators on span(monos); echelonized polys."""
    if not monos:
        return []
    rows = []
    for op in operators:
        images = [op(Poly(alphabet, {mono: Fraction(1)})) for mono in monos]
        targets = sorted({m for img in images for m in img.terms})
        tpos = {m: i for i, m in enumerate(targets)}
        for t in targets:
            rows.append([img.terms.get(t, Fraction(0)) for img in images])
    if not rows:
        vecs = linalg.nullspace([], ncols=len(monos))
    else:
        vecs = linalg.nullspace(rows, ncols=len(monos))
    out = []
    for v in vecs:
        terms = {mono: c for mono, c in zip(monos, v) if c}
        out.append(Poly(alphabet, terms))
    return out


def invariant_basis(alphabet, algebra, m, weight, degrees=None, *,
                    mode="full", conformal=False, extra_operators=()):
    """Exact echelon basis of the g_m-invariants of one graded piece."""
    monos = graded_basis(alphabet, weight, degrees, conformal=conformal)
    gens = generators_for(alphabet, algebra, m, mode, weight=weight,
                          conformal=conformal)
    ops = [(lambda p, g=g: jet_act(g, p)) for g in gens]
    ops.extend(extra_operators)
    basis = _kernel_of_operators(alphabet, monos, ops)
    grade = (tuple(sorted((degrees or {}).items())), weight)
    if degrees is not None and len(degrees) == len(alphabet.families):
        grade = Grade([degrees[f.name] for f in alphabet.families], weight)
    return InvariantReport(alphabet, grade, basis, gens)


def invariant_basis_on_grade(alphabet, algebra, grade, monos, *,
                             mode="full", m=None):
    """Invariant basis of an explicitly enumerated piece (full Grade)."""
    gens = generators_for(alphabet, algebra, m, mode, weight=grade.weight)
    ops = [(lambda p, g=g: jet_act(g, p)) for g in gens]
    basis = _kernel_of_operators(alphabet, monos, ops)
    return InvariantReport(alphabet, grade, basis, gens)


def invariant_dim_table(alphabet, algebra, m, weights, degrees=None, *,
                        mode="full"):
    """Reports over a weight window, in increasing weight order."""
    return [invariant_basis(alphabet, algebra, m, w, degrees, mode=mode)
            for w in weights]


def check_invariant_gens(poly, generators):
    """Violations as (generator, nonzero image) pairs; empty means pass."""
    out = []
    for g in generators:
        img = jet_act(g, poly)
        if not img.is_zero():
            out.append((g, img))
    return out


def check_invariant(poly, algebra, m):
    """Pass iff every full-mode generator up to t^m annihilates poly."""
    return check_invariant_gens(poly,
                                jet_generators(algebra, m, "full"))


# -- Lemma-style mixed derivations -----------------------------------------

def _coordinate_poly(alphabet, fam_name, index, level):
    return Poly.variable(alphabet, fam_name, index, level)


def lemma_operators(preset, algebra, m):
    """The two derivations K1, K2 cutting out higher-jet invariance.

    With s the partner row of the first coordinate (2 for sl, N+1 for
    sp(2N)), the matrices are g1 v_1 = v_s and g2 = diag unit at 1 minus
    diag unit at s, and

      K1 = sum_j (Y_1^(j)/j!) g1 t^j
      K2 = -sum_j (Y_s^(j)/j!) g1 t^j + sum_j (Y_1^(j)/j!) g2 t^j

    where Y is the preset's coordinate family, whose levels run over
    1..m.
    """
    alphabet = preset.alphabet
    fam = alphabet.family(preset.coordinate_family)
    n = algebra.n
    s = 2 if algebra.kind == "sl" else n // 2 + 1
    g1 = [[Fraction(0)] * n for _ in range(n)]
    g1[s - 1][0] = Fraction(1)
    g2 = [[Fraction(0)] * n for _ in range(n)]
    g2[0][0] = Fraction(1)
    g2[s - 1][s - 1] = Fraction(-1)
    top = m
    if fam.max_level is not None:
        top = min(top, fam.max_level)
    k1_terms = []
    k2_terms = []
    for j in range(1, top + 1):
        y1 = _coordinate_poly(alphabet, fam.name, 1, j).scale(
            Fraction(1, factorial(j)))
        ys = _coordinate_poly(alphabet, fam.name, s, j).scale(
            Fraction(1, factorial(j)))
        k1_terms.append((y1, JetGen(g1, j)))
        k2_terms.append((ys.scale(-1), JetGen(g1, j)))
        k2_terms.append((y1, JetGen(g2, j)))
    return MixedJetDerivation(k1_terms), MixedJetDerivation(k2_terms)


def _lemma_cri_on_monos(preset, algebra, m, monos):
    alphabet = preset.alphabet
    k1, k2 = lemma_operators(preset, algebra, m)
    zero_ops = [(lambda p, g=g: jet_act(g, p))
                for g in jet_generators(algebra, 0, "full")]
    small = _kernel_of_operators(alphabet, monos, zero_ops + [k1, k2])
    full_ops = [(lambda p, g=g: jet_act(g, p))
                for g in jet_generators(algebra, m, "full")]
    full = _kernel_of_operators(alphabet, monos, full_ops)

    def coords(polys):
        return [[p.terms.get(mn, Fraction(0)) for mn in monos] for p in polys]

    return linalg.same_span(coords(small), coords(full), len(monos))


def lemma_cri_check(preset, algebra, m, weight, degrees=None, *,
                    conformal=False):
    """Joint kernel of {g t^0, K1, K2} equals the full invariant space."""
    monos = graded_basis(preset.alphabet, weight, degrees,
                         conformal=conformal)
    return _lemma_cri_on_monos(preset, algebra, m, monos)


def lemma_cri_window(preset, algebra, m, bound, degree_caps=None):
    """lemma_cri_check over every grade of conformal weight <= bound.

    Returns [(grade, bool)] in deterministic grade order.
    """
    caps = degree_caps if degree_caps is not None else preset.degree_caps
    pieces = monomials_up_to_conformal_weight(preset.alphabet, bound,
                                              caps or None)
    return [(grade, _lemma_cri_on_monos(preset, algebra, m, monos))
            for grade, monos in pieces.items()]


# -- derivative-word generation windows -------------------------------------

def _conformal_weight_of(alphabet, poly):
    g = poly.grade()
    if g in ("zero", "inhomogeneous"):
        raise JetvaError("generator must be homogeneous")
    return g.conformal_weight(alphabet)


def derivative_words(alphabet, gens, bound):
    """All products of derivatives of the generators with conformal
    weight <= bound; returns {grade: [poly, ...]} including the empty
    product at the all-zero grade."""
    d = tilde_d(alphabet, strict=False)
    symbols = []
    for g in gens:
        if g.is_zero():
            continue
        cur = g
        w = _conformal_weight_of(alphabet, cur)
        k = 0
        while w + k <= bound:
            sym = cur
            if not sym.is_zero():
                symbols.append(sym)
            cur = d(cur)
            if cur.is_zero():
                break
            k += 1
    by_grade = {}

    def record(poly):
        if poly.is_zero():
            return
        g = poly.grade()
        by_grade.setdefault(g, []).append(poly)

    def rec(start, prod, wsum):
        record(prod)
        for k in range(start, len(symbols)):
            w = _conformal_weight_of(alphabet, symbols[k])
            if wsum + w > bound:
                continue
            nxt = prod * symbols[k]
            if nxt.is_zero():
                continue
            rec(k, nxt, wsum + w)

    rec(0, Poly.one(alphabet), 0)
    return by_grade


def generation_gap(gens, preset, algebra, bound, *, check_gens=True):
    """Span of derivative words vs invariant dimension, per grade.

    Runs in the untruncated ring; grades are all pieces of conformal
    weight <= bound (with the preset's degree caps where a family has
    weight-0 even variables).  Reports are listed even when equal.
    """
    alphabet = preset.alphabet.untruncated()
    gens = [Poly(alphabet, p.terms) for p in gens]
    if check_gens:
        for p in gens:
            m_needed = _max_effective_degree(
                alphabet, _conformal_weight_of(alphabet, p), conformal=True)
            bad = check_invariant(p, algebra, max(m_needed, 1))
            if bad:
                raise JetvaError("generator %s is not invariant" % p.text())
    pieces = monomials_up_to_conformal_weight(alphabet, bound,
                                              preset.degree_caps or None)
    words = derivative_words(alphabet, gens, bound)
    reports = []
    for grade, monos in pieces.items():
        rep = invariant_basis_on_grade(alphabet, algebra, grade, monos)
        span_polys = words.get(grade, [])
        vecs = [[p.terms.get(mn, Fraction(0)) for mn in monos]
                for p in span_polys]
        span_dim = linalg.rank(vecs) if vecs else 0
        reports.append(GenerationGapReport(alphabet, grade, span_dim,
                                           rep.dim))
    return reports
