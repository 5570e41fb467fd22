"""
Graded super-commutative differential polynomial rings over Q.

A ring is described by an Alphabet of variable families.  Each family
contributes variables  name_i^(level)  with  1 <= i <= indices  and
min_level <= level <= max_level (max_level None means untruncated).
Even families generate a polynomial algebra, odd families an exterior
algebra.  Three pieces of per-family bookkeeping ride along:

  * jet_offset   -- the effective jet degree of level j is j - jet_offset
                    (used by the jet Lie algebra action);
  * weight_offset -- the reported conformal weight of level j is
                    j + weight_offset (the plain weight of the grading is
                    always the bare level sum);
  * rep          -- 'fund' | 'dual' | 'trivial' | None, consumed by jetva.lie.

Monomials are tuples of variables sorted by the fixed total order
(family declaration order, index, level).  All Koszul signs derive from
that order, so canonical forms are platform independent.

Serialization grammar (used by the CLI and golden files):
terms are joined by " + ", each term is "p/q * tok tok ..." with variable
token  name<index>^(level),  e.g. "1/1 * y1^(1) ystar1^(0)".  The zero
polynomial prints as "0".
"""

import re
from fractions import Fraction

from .errors import (AlphabetMismatch, ConfigError, InfinitePiece,
                     TruncationExceeded)

EVEN = "even"
ODD = "odd"


def qstr(x):
    """Scalar for reports: '6', '-3/2'."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def coeff_str(x):
    """Canonical coefficient token, always with denominator."""
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator)


def parse_q(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


class FamilySpec:
    __slots__ = ("name", "parity", "indices", "min_level", "max_level",
                 "jet_offset", "weight_offset", "rep")

    def __init__(self, name, parity, indices, min_level=0, max_level=None,
                 jet_offset=0, weight_offset=0, rep=None):
        if parity not in (EVEN, ODD):
            raise ValueError("parity must be 'even' or 'odd'")
        if indices < 1:
            raise ValueError("indices must be positive")
        if min_level < jet_offset:
            raise ValueError("min_level must be >= jet_offset")
        if max_level is not None and max_level < min_level:
            raise ValueError("max_level below min_level")
        self.name = name
        self.parity = parity
        self.indices = indices
        self.min_level = min_level
        self.max_level = max_level
        self.jet_offset = jet_offset
        self.weight_offset = weight_offset
        self.rep = rep

    def with_max_level(self, max_level):
        return FamilySpec(self.name, self.parity, self.indices,
                          self.min_level, max_level, self.jet_offset,
                          self.weight_offset, self.rep)

    def __repr__(self):
        return "FamilySpec(%r, %s, %d)" % (self.name, self.parity,
                                           self.indices)


class Alphabet:
    """An ordered collection of families; the container for a ring."""

    def __init__(self, families):
        names = [f.name for f in families]
        if len(set(names)) != len(names):
            raise ValueError("family names must be distinct")
        self.families = tuple(families)
        self._index = {f.name: k for k, f in enumerate(families)}

    def family(self, name):
        return self.families[self._index[name]]

    def family_pos(self, name):
        return self._index[name]

    def var(self, name, index, level):
        """Variable triple (family position, index, level), validated."""
        k = self._index[name]
        fam = self.families[k]
        if not 1 <= index <= fam.indices:
            raise ValueError("index %d out of range for %s" % (index, name))
        if level < fam.min_level:
            raise ValueError("level %d below min for %s" % (level, name))
        if fam.max_level is not None and level > fam.max_level:
            raise ValueError("level %d above truncation for %s" % (level, name))
        return (k, index, level)

    def parity_of(self, var):
        return self.families[var[0]].parity

    def is_odd(self, var):
        return self.families[var[0]].parity == ODD

    def weight_of_var(self, var):
        return var[2]

    def conformal_of_var(self, var):
        return var[2] + self.families[var[0]].weight_offset

    def untruncated(self):
        return Alphabet([f.with_max_level(None) for f in self.families])

    def truncated(self, m):
        return Alphabet([f.with_max_level(m) for f in self.families])

    def var_str(self, var):
        k, i, lv = var
        return "%s%d^(%d)" % (self.families[k].name, i, lv)

    def signature(self):
        return tuple((f.name, f.parity, f.indices, f.min_level, f.max_level,
                      f.jet_offset, f.weight_offset, f.rep)
                     for f in self.families)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return "Alphabet(%s)" % ", ".join(f.name for f in self.families)


def merge_monomials(alph, m1, m2):
    """Merge two canonical monomials; returns (sign, monomial) or (0, None).

    The Koszul sign counts transpositions of odd variables needed to
    interleave m2 into m1; a repeated odd variable kills the product.
    """
    out = []
    sign = 1
    i = j = 0
    odd_left = sum(1 for v in m1 if alph.is_odd(v))
    while i < len(m1) and j < len(m2):
        v1, v2 = m1[i], m2[j]
        if alph.is_odd(v1) and v1 == v2:
            return 0, None
        if v1 <= v2:
            if alph.is_odd(v1):
                odd_left -= 1
            out.append(v1)
            i += 1
        else:
            if alph.is_odd(v2) and odd_left % 2:
                sign = -sign
            out.append(v2)
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return sign, tuple(out)


def normalize_monomial(alph, variables):
    """Sort an arbitrary variable sequence; returns (sign, monomial|None)."""
    vs = list(variables)
    sign = 1
    # insertion sort with odd-odd transposition signs; quadratic but
    # monomials are short
    for i in range(1, len(vs)):
        j = i
        while j > 0 and vs[j - 1] > vs[j]:
            if alph.is_odd(vs[j - 1]) and alph.is_odd(vs[j]):
                sign = -sign
            vs[j - 1], vs[j] = vs[j], vs[j - 1]
            j -= 1
    for a, b in zip(vs, vs[1:]):
        if a == b and alph.is_odd(a):
            return 0, None
    return sign, tuple(vs)


class Grade:
    """Full tri-degree data: one degree per family plus the weight L."""

    __slots__ = ("degrees", "weight")

    def __init__(self, degrees, weight):
        self.degrees = tuple(degrees)
        self.weight = weight

    def key(self):
        return (self.degrees, self.weight)

    def __eq__(self, other):
        return isinstance(other, Grade) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return (self.weight, self.degrees) < (other.weight, other.degrees)

    def __repr__(self):
        return "Grade(degrees=%s, weight=%d)" % (self.degrees, self.weight)

    def as_dict(self, alph):
        return {"degrees": {f.name: d for f, d in zip(alph.families,
                                                      self.degrees)},
                "weight": self.weight}

    def conformal_weight(self, alph):
        return self.weight + sum(d * f.weight_offset
                                 for f, d in zip(alph.families, self.degrees))


def grade_of_monomial(alph, mono):
    degrees = [0] * len(alph.families)
    weight = 0
    for v in mono:
        degrees[v[0]] += 1
        weight += v[2]
    return Grade(degrees, weight)


class Poly:
    """Sparse exact-rational element of the ring over an Alphabet.

    Immutable once built; all operations return new values, so shared
    polynomials are safe to use from any number of threads.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=None):
        self.alphabet = alphabet
        if terms is None:
            terms = {}
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet):
        return cls(alphabet, {(): Fraction(1)})

    @classmethod
    def scalar(cls, alphabet, c):
        return cls(alphabet, {(): Fraction(c)})

    @classmethod
    def variable(cls, alphabet, name, index, level):
        v = alphabet.var(name, index, level)
        return cls(alphabet, {(v,): Fraction(1)})

    # -- basic queries -----------------------------------------------

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items())

    def parity(self):
        """Parity if homogeneous for the super-grading, else None."""
        ps = {sum(1 for v in m if self.alphabet.is_odd(v)) % 2
              for m in self.terms}
        if len(ps) == 1:
            return ps.pop()
        if not ps:
            return 0
        return None

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("polynomials over different alphabets")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            nc = terms.get(m, 0) + c
            if nc:
                terms[m] = nc
            else:
                terms.pop(m, None)
        return Poly(self.alphabet, terms)

    def __neg__(self):
        return Poly(self.alphabet, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.alphabet)
        return Poly(self.alphabet, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        alph = self.alphabet
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = merge_monomials(alph, m1, m2)
                if m is None:
                    continue
                nc = terms.get(m, 0) + sign * c1 * c2
                if nc:
                    terms[m] = nc
                else:
                    terms.pop(m, None)
        return Poly(self.alphabet, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.sorted_terms())))

    # -- grading -------------------------------------------------------

    def grade(self):
        """Common Grade of all terms, 'zero', or 'inhomogeneous'."""
        if not self.terms:
            return "zero"
        grades = {grade_of_monomial(self.alphabet, m) for m in self.terms}
        if len(grades) == 1:
            return grades.pop()
        return "inhomogeneous"

    # -- serialization ---------------------------------------------------

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            toks = " ".join(self.alphabet.var_str(v) for v in m)
            if toks:
                parts.append("%s * %s" % (coeff_str(c), toks))
            else:
                parts.append(coeff_str(c))
        return " + ".join(parts)

    def __repr__(self):
        return "Poly(%s)" % self.text()


_VAR_RE = re.compile(r"^([A-Za-z_]+?)(\d+)\^\((\d+)\)$")


def parse_poly(alphabet, text):
    """Inverse of Poly.text; integer coefficients also accepted."""
    text = text.strip()
    if text == "0":
        return Poly.zero(alphabet)
    result = Poly.zero(alphabet)
    for part in text.split(" + "):
        part = part.strip()
        if "*" in part:
            ctext, vtext = part.split("*", 1)
            coeff = parse_q(ctext)
            vars_ = []
            for tok in vtext.split():
                m = _VAR_RE.match(tok)
                if not m:
                    raise ConfigError("bad variable token %r" % tok)
                vars_.append(alphabet.var(m.group(1), int(m.group(2)),
                                          int(m.group(3))))
            sign, mono = normalize_monomial(alphabet, vars_)
            if mono is None:
                continue
            result = result + Poly(alphabet, {mono: sign * coeff})
        else:
            result = result + Poly.scalar(alphabet, parse_q(part))
    return result


class DerivationSpec:
    """A (signed) derivation given by generator images.

    images(var) must return a Poly over the same alphabet.  Even
    derivations use the plain Leibniz rule; odd ones pick up
    (-1)^(number of odd factors passed).
    """

    __slots__ = ("alphabet", "parity", "images")

    def __init__(self, alphabet, parity, images):
        self.alphabet = alphabet
        self.parity = parity
        self.images = images

    def __call__(self, poly):
        if poly.alphabet != self.alphabet:
            raise AlphabetMismatch("derivation applied across alphabets")
        alph = self.alphabet
        out = Poly.zero(alph)
        for mono, coeff in poly.terms.items():
            sign = 1
            for pos, v in enumerate(mono):
                img = self.images(v)
                if img is not None and not img.is_zero():
                    prefix = Poly(alph, {tuple(mono[:pos]): Fraction(sign)})
                    suffix = Poly(alph, {tuple(mono[pos + 1:]): Fraction(1)})
                    out = out + (prefix * img * suffix).scale(coeff)
                if self.parity == ODD and alph.is_odd(v):
                    sign = -sign
        return out


def tilde_d(alphabet, *, strict=True):
    """The level-raising derivation x_i^(j) -> x_i^(j+1).

    With strict=True a variable already at the truncation raises
    TruncationExceeded instead of being dropped; pass an untruncated
    alphabet for derivative-word enumeration.
    """

    def images(var):
        k, i, lv = var
        fam = alphabet.families[k]
        if fam.max_level is not None and lv + 1 > fam.max_level:
            if strict:
                raise TruncationExceeded(
                    "d of %s leaves the truncated ring"
                    % alphabet.var_str(var))
            return Poly.zero(alphabet)
        return Poly(alphabet, {((k, i, lv + 1),): Fraction(1)})

    return DerivationSpec(alphabet, EVEN, images)


# -- graded bases ------------------------------------------------------

def _family_variables(fam_pos, fam, weight_budget, conformal):
    """Variables of one family whose weight fits in the budget."""
    out = []
    offset = fam.weight_offset if conformal else 0
    level = fam.min_level
    while True:
        if fam.max_level is not None and level > fam.max_level:
            break
        w = level + offset
        if w > weight_budget:
            break
        for i in range(1, fam.indices + 1):
            out.append(((fam_pos, i, level), w))
        level += 1
    out.sort()  # canonical (index, level) order inside the family
    return out


def _family_monomials(fam, vars_weights, degree, weight_cap, exact_weight):
    """Monomials in a single family.

    degree None means unconstrained.  Yields (vars tuple, weight, degree).
    Even families allow repeats, odd ones do not.
    """
    results = []
    n = len(vars_weights)

    def rec(start, chosen, wsum):
        if degree is not None and len(chosen) == degree:
            results.append((tuple(chosen), wsum, len(chosen)))
            return
        if degree is None:
            results.append((tuple(chosen), wsum, len(chosen)))
        for k in range(start, n):
            v, w = vars_weights[k]
            if wsum + w > weight_cap:
                continue
            chosen.append(v)
            rec(k if fam.parity == EVEN else k + 1, chosen, wsum + w)
            chosen.pop()

    rec(0, [], 0)
    if exact_weight is not None:
        results = [r for r in results if r[1] == exact_weight]
    return results


def graded_basis(alphabet, weight, degrees=None, *, conformal=False):
    """Deterministic monomial basis of one graded piece.

    degrees maps family name -> degree for the constrained families;
    unconstrained families range freely (their variables must all have
    positive weight, else the piece is infinite).  weight is the level
    sum, or level+offset sum when conformal=True.
    """
    degrees = degrees or {}
    for name in degrees:
        alphabet.family(name)  # validate
    fams = list(enumerate(alphabet.families))
    for pos, fam in fams:
        if fam.name in degrees:
            continue
        zero_weight = (fam.min_level + (fam.weight_offset if conformal else 0)
                       == 0)
        if fam.parity == EVEN and zero_weight:
            raise InfinitePiece(
                "family %s has weight-0 even variables and no degree bound"
                % fam.name)

    per_family = []
    for pos, fam in fams:
        deg = degrees.get(fam.name)
        vw = _family_variables(pos, fam, weight, conformal)
        per_family.append(_family_monomials(fam, vw, deg, weight, None))

    out = []

    def rec(k, chosen, wsum):
        if k == len(per_family):
            if wsum == weight:
                out.append(tuple(v for part in chosen for v in part))
            return
        for part, w, _deg in per_family[k]:
            if wsum + w > weight:
                continue
            chosen.append(part)
            rec(k + 1, chosen, wsum + w)
            chosen.pop()

    rec(0, [], 0)
    out.sort()
    return out


def monomials_up_to_conformal_weight(alphabet, bound, degree_caps=None):
    """All monomials with conformal weight <= bound, grouped by Grade.

    Finiteness requires every even variable to have positive conformal
    weight; odd weight-0 variables are fine (bounded multiplicity).
    degree_caps optionally bounds per-family degrees, which is the only
    way to make alphabets with weight-0 even variables enumerable.
    """
    degree_caps = degree_caps or {}
    fams = list(enumerate(alphabet.families))
    per_family = []
    for pos, fam in fams:
        cap = degree_caps.get(fam.name)
        if (fam.parity == EVEN and fam.min_level + fam.weight_offset == 0
                and cap is None):
            raise InfinitePiece(
                "family %s needs a degree cap for window enumeration"
                % fam.name)
        vw = _family_variables(pos, fam, bound, True)
        monos = []
        n = len(vw)

        def rec(start, chosen, wsum, fam=fam, vw=vw, n=n, cap=cap,
                monos=monos):
            monos.append((tuple(chosen), wsum, len(chosen)))
            if cap is not None and len(chosen) >= cap:
                return
            for k in range(start, n):
                v, w = vw[k]
                if wsum + w > bound:
                    continue
                chosen.append(v)
                rec(k if fam.parity == EVEN else k + 1, chosen, wsum + w)
                chosen.pop()

        rec(0, [], 0)
        per_family.append(monos)

    by_grade = {}

    def cross(k, chosen, wsum):
        if k == len(per_family):
            mono = tuple(v for part in chosen for v in part)
            g = grade_of_monomial(alphabet, mono)
            by_grade.setdefault(g, []).append(mono)
            return
        for part, w, _deg in per_family[k]:
            if wsum + w > bound:
                continue
            chosen.append(part)
            cross(k + 1, chosen, wsum + w)
            chosen.pop()

    cross(0, [], 0)
    for g in by_grade:
        by_grade[g].sort()
    return dict(sorted(by_grade.items(), key=lambda kv: kv[0].key()))
