"""
Mode-level Fock realization of the subalgebra generated by beta,
d(gamma), b and c, carrying the positive-definite Hermitian form.

Mode conventions (the single most convention-sensitive spot of the
engine, so it is spelled out):

  * bosonic modes are weight-adapted:  beta_m = beta_(m)  and
    gamma_n = gamma_(n-1)  in field indexing, so that
    [beta_m, gamma_n] = delta_{m+n,0}  and creation modes are exactly
    n <= -1 for both (gamma_{-k} creates d^k gamma, never an underived
    gamma);
  * fermionic modes keep field indexing, {b_(m), c_(n)} = delta_{m+n,-1},
    creation modes n <= -1;
  * the adjoint pairs beta with the weight-one current d(gamma):
        beta_m* = (d gamma)_{-m} = m gamma_{-m},
        gamma_m* = -beta_{-m}/m           (m != 0; the m = 0 bosonic
                                           case never arises on this
                                           subalgebra and is flagged as
                                           convention-dependent in
                                           reports),
        b_(m)* = c_(-m-1),   c_(m)* = b_(-m-1).
    With these, (|0>,|0>) = 1 extends to a positive-definite form and
    the mode adjoints of the distinguished sections come out as stated
    by adjoint rules below.

Ltilde-weights of modes: bosons -n, fermions -n - 1/2.
"""

from fractions import Fraction
from math import factorial

from . import linalg, vertex
from .errors import JetvaError, OutsideBarSubalgebra
from .ring import qstr
from .vertex import BETA, BF, CF, GAMMA, State

HALF = Fraction(1, 2)


def mode_weight(mode):
    kind, _i, n = mode
    if kind in (BETA, GAMMA):
        return Fraction(-n)
    return Fraction(-n) - HALF


def is_fermion(mode):
    return mode[0] >= 2


def mode_str(mode):
    kind, i, n = mode
    return "%s%d_(%d)" % (vertex.KIND_NAMES[kind], i, n)


def _normalize_modes(modes):
    """(sign, sorted monomial | None); fermion repeats vanish."""
    ms = list(modes)
    sign = 1
    for i in range(1, len(ms)):
        j = i
        while j > 0 and ms[j - 1] > ms[j]:
            if is_fermion(ms[j - 1]) and is_fermion(ms[j]):
                sign = -sign
            ms[j - 1], ms[j] = ms[j], ms[j - 1]
            j -= 1
    for a, b in zip(ms, ms[1:]):
        if a == b and is_fermion(a):
            return 0, None
    return sign, tuple(ms)


class FockState:
    """Rational combination of normal-ordered creation monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items()
                      if c != 0}

    @classmethod
    def vacuum(cls, c=1):
        return cls({(): Fraction(c)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            nc = terms.get(m, 0) + c
            if nc:
                terms[m] = nc
            else:
                terms.pop(m, None)
        return FockState(terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return FockState()
        return FockState({m: c * x for m, x in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FockState) and self.terms == other.terms

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            if m:
                parts.append("%s * %s" % (qstr(c),
                                          " ".join(mode_str(x) for x in m)))
            else:
                parts.append(qstr(c))
        return " + ".join(parts)

    def __repr__(self):
        return "FockState(%s)" % self.text()


def to_modes(state):
    """Expand a vertex State into creation modes.

    Letter d^k(x) carries k! times the mode x_(-k-1) (field indexing);
    bosonic indices are then shifted to the weight-adapted convention.
    An underived gamma letter has no creation mode here and raises.
    """
    out = FockState()
    for word, coeff in state.terms.items():
        modes = []
        c = coeff
        for kind, i, d in word:
            if kind == GAMMA:
                if d == 0:
                    raise OutsideBarSubalgebra(
                        "underived gamma letter in %s" % state.text())
                modes.append((kind, i, -d))
            else:
                modes.append((kind, i, -d - 1))
            c *= factorial(d)
        sign, mono = _normalize_modes(modes)
        if mono is not None:
            out = out + FockState({mono: sign * c})
    return out


def _insert_creation(mode, coeff, fockstate):
    out = FockState()
    for mono, c in fockstate.terms.items():
        sign, nm = _normalize_modes((mode,) + mono)
        if nm is not None:
            out = out + FockState({nm: sign * c * coeff})
    return out


def _mode_bracket(y, z):
    """[y, z] (super) as a scalar, for modes y annihilating-side."""
    ky, iy, ny = y
    kz, iz, nz = z
    if iy != iz:
        return Fraction(0)
    if (ky, kz) == (BETA, GAMMA):
        return Fraction(1) if ny + nz == 0 else Fraction(0)
    if (ky, kz) == (GAMMA, BETA):
        return Fraction(-1) if ny + nz == 0 else Fraction(0)
    if (ky, kz) in ((BF, CF), (CF, BF)):
        return Fraction(1) if ny + nz == -1 else Fraction(0)
    return Fraction(0)


def _apply_annihilator(mode, coeff, fockstate):
    """Move an annihilating mode through creation monomials."""
    out = FockState()
    for mono, c in fockstate.terms.items():
        sign = 1
        for p, z in enumerate(mono):
            br = _mode_bracket(mode, z)
            if br:
                rest = mono[:p] + mono[p + 1:]
                out = out + FockState({rest: Fraction(sign) * br * c * coeff})
            if is_fermion(mode) and is_fermion(z):
                sign = -sign
        # the fully commuted term hits the vacuum and dies
    return out


def apply_mode(mode, fockstate, coeff=1):
    """A single weight-adapted mode acting on a Fock state."""
    kind, _i, n = mode
    if kind in (BETA, GAMMA) and n == 0:
        if kind == GAMMA:
            raise OutsideBarSubalgebra("gamma_0 creates an underived gamma")
        return FockState()  # beta_0 annihilates everything here
    if n <= -1:
        return _insert_creation(mode, Fraction(coeff), fockstate)
    return _apply_annihilator(mode, Fraction(coeff), fockstate)


def apply_generator_mode(kind, index, field_n, fockstate):
    """Field-indexed generator mode x_(n); gamma shifts to weight-adapted."""
    if kind == GAMMA:
        return apply_mode((kind, index, field_n + 1), fockstate)
    return apply_mode((kind, index, field_n), fockstate)


def _adjoint_mode(mode):
    """(paired mode, coefficient) realizing the Hermitian adjoint."""
    kind, i, n = mode
    if kind == BETA:
        return (GAMMA, i, -n), Fraction(n)
    if kind == GAMMA:
        return (BETA, i, -n), Fraction(-1, n)
    if kind == BF:
        return (CF, i, -n - 1), Fraction(1)
    return (BF, i, -n - 1), Fraction(1)


def herm_form(a, b):
    """The Hermitian form; rational on rational states.

    Computed by peeling creation modes off the left argument and moving
    their adjoints through the right argument.
    """
    total = Fraction(0)
    for mono, ca in a.terms.items():
        if not mono:
            total += ca * b.terms.get((), Fraction(0))
            continue
        x, rest = mono[0], mono[1:]
        adj, coeff = _adjoint_mode(x)
        moved = apply_mode(adj, b, coeff)
        total += ca * herm_form(FockState({rest: Fraction(1)}), moved)
    return total


# -- graded bases and Gram matrices ------------------------------------------

def creation_modes(n_dims, max_weight):
    out = []
    for kind in (BETA, GAMMA, BF, CF):
        n = -1
        while True:
            w = mode_weight((kind, 1, n))
            if w > max_weight:
                break
            for i in range(1, n_dims + 1):
                out.append((kind, i, n))
            n -= 1
    out.sort()
    return out


def fock_basis(n_dims, weight, sector=None):
    """Creation monomials of exact weight; sector = (boson count,
    fermion parity) filters when given."""
    modes = creation_modes(n_dims, weight if weight > 0 else Fraction(0))
    out = []

    def rec(start, chosen, w):
        if w == weight:
            sign, mono = _normalize_modes(chosen)
            if mono is not None:
                out.append(mono)
        for k in range(start, len(modes)):
            m = modes[k]
            mw = mode_weight(m)
            if w + mw > weight:
                continue
            if is_fermion(m):
                if m in chosen:
                    continue
                rec(k + 1, chosen + [m], w + mw)
            else:
                rec(k, chosen + [m], w + mw)

    rec(0, [], Fraction(0))
    out = sorted(set(out))
    if sector is not None:
        bc, fp = sector
        out = [m for m in out
               if sum(1 for x in m if not is_fermion(x)) == bc
               and sum(1 for x in m if is_fermion(x)) % 2 == fp]
    return out


def sectors_at_weight(n_dims, weight):
    seen = sorted({(sum(1 for x in m if not is_fermion(x)),
                    sum(1 for x in m if is_fermion(x)) % 2)
                   for m in fock_basis(n_dims, weight)})
    return seen


class GramReport:
    def __init__(self, n_dims, weight, sector, basis):
        self.n_dims = n_dims
        self.weight = Fraction(weight)
        self.sector = sector
        self.basis = basis
        states = [FockState({m: Fraction(1)}) for m in basis]
        self.matrix = [[herm_form(x, y) for y in states] for x in states]
        self.minors = linalg.leading_principal_minors(self.matrix)
        self.positive_definite = all(m > 0 for m in self.minors)

    def as_dict(self):
        out = {
            "weight": qstr(self.weight),
            "sector": {"bosons": self.sector[0],
                       "fermion_parity": self.sector[1]},
            "dim": len(self.basis),
            "basis": [" ".join(mode_str(x) for x in m) if m else "|0>"
                      for m in self.basis],
            "matrix": [[qstr(x) for x in row] for row in self.matrix],
            "positive_definite": self.positive_definite,
            "boson_zero_mode_note":
                "the n = 0 bosonic adjoint is convention-dependent and "
                "never arises on this subalgebra",
        }
        if not self.positive_definite:
            out["minors"] = [qstr(m) for m in self.minors]
        return out


def gram_matrix(n_dims, weight, sector):
    return GramReport(n_dims, weight, sector,
                      fock_basis(n_dims, weight, sector))


def gram_reports_up_to(n_dims, max_weight):
    """All (weight, sector) Gram reports with weight <= max_weight."""
    weights = []
    w = Fraction(0)
    while w <= max_weight:
        weights.append(w)
        w += HALF
    out = []
    for w in weights:
        for sector in sectors_at_weight(n_dims, w):
            out.append(gram_matrix(n_dims, w, sector))
    return out


# -- adjoint rules for the section modes --------------------------------------

def default_adjoint_rules(sections):
    """name -> callable n -> [(state, adjoint index, coefficient)]."""
    n_dims = sections.n
    d_sign = Fraction((-1) ** (n_dims * (n_dims - 1) // 2))
    return {
        "Q": lambda n: [(sections.G, -n + 1, Fraction(1))],
        "G": lambda n: [(sections.Q, -n + 1, Fraction(1))],
        "J": lambda n: [(sections.J, -n, Fraction(1))],
        "L": lambda n: [(sections.L, -n + 2, Fraction(1)),
                        (sections.J, -n + 1, Fraction(-(n - 1)))],
        "D": lambda n: [(sections.E, n_dims - 2 - n, d_sign)],
        "E": lambda n: [(sections.D, n_dims - 2 - n, d_sign)],
        "Ltilde": lambda n: [(sections.Ltilde, -n + 2, Fraction(1))],
    }


def adjoint_check(section_state, rule, bound, n_dims, *, return_witness=False):
    """Verify (X_(n) A, B) = sum (A, X*_(rule n) B) on the weight-bounded
    basis, for every weight-compatible n.

    A and B run over the canonical words of the subalgebra with
    Ltilde-weight <= bound; the mode action is the vertex engine's
    nth_product.
    """
    words = vertex.bar_basis_words(n_dims, bound)
    states = [(State({w: Fraction(1)}), vertex.word_weight(w))
              for w in words]
    wx = section_state.weight()
    for a, wa in states:
        fa = to_modes(a)
        for b, wb in states:
            fb = to_modes(b)
            n_frac = wx + wa - 1 - wb
            if n_frac.denominator != 1:
                continue
            n = int(n_frac)
            lhs = herm_form(to_modes(vertex.nth_product(section_state, n, a)),
                            fb)
            rhs = Fraction(0)
            for partner, idx, coeff in rule(n):
                rhs += coeff * herm_form(
                    fa, to_modes(vertex.nth_product(partner, idx, b)))
            if lhs != rhs:
                if return_witness:
                    return False, (a.text(), n, b.text(), lhs, rhs)
                return False
    if return_witness:
        return True, None
    return True


import re

_RULE_TERM = re.compile(r"([+-]?\d*)(n?)")


def parse_rule(spec_text, sections):
    """Parse 'Q:-n+1' style overrides: X_(n)* = Partner_(f(n)) with the
    default partner for X and f an affine function of n."""
    name, expr = spec_text.split(":", 1)
    name = name.strip()
    partners = {"Q": sections.G, "G": sections.Q, "J": sections.J,
                "L": sections.L, "D": sections.E, "E": sections.D,
                "Ltilde": sections.Ltilde}
    if name not in partners:
        raise JetvaError("unknown section %r in rule" % name)
    slope = 0
    shift = 0
    pos = 0
    expr = expr.strip().replace(" ", "")
    while pos < len(expr):
        m = _RULE_TERM.match(expr, pos)
        if not m or m.end() == pos:
            raise JetvaError("bad adjoint rule %r" % spec_text)
        head, has_n = m.group(1), m.group(2)
        if has_n:
            slope += int(head + "1") if head in ("", "+", "-") else int(head)
        else:
            shift += int(head)
        pos = m.end()
    partner = partners[name]
    return name, (lambda n: [(partner, slope * n + shift, Fraction(1))])
