"""
The free-field vertex superalgebra of N beta-gamma-bc pairs, with exact
rational n-th products.

States are linear combinations of right-nested normally ordered words in
the letters d^k(beta^i), d^k(gamma^i), d^k(b^i), d^k(c^i).  Because every
letter-letter lambda bracket is a multiple of the vacuum, transposing two
letters inside a word costs only the Koszul sign (the quasi-commutativity
correction differentiates a constant), so words are kept sorted by the
fixed letter order (kind, index, derivative) and canonical forms are
unique.  Operands that are themselves composite are never re-sorted; the
recursion restores canonical nesting through quasi-associativity.

Products are computed with the standard calculus:

  * letter vs word: iterated non-commutative Wick formula, which
    degenerates to a sum over single contractions;
  * composite left operand vs letter: skew-symmetry
      a_(n) b = -(-1)^{|a||b|} sum_j (-1)^{n+j} d^j(b_(n+j) a)/j!
  * composite vs composite: the non-commutative Wick formula with its
    integral term;
  * negative products: a_(-k-1) b = :(d^k a / k!) b:, with normal
    products of composites rebuilt by quasi-associativity
      ::a b: c: = :a :b c:: + :(int_0^d a)[b_l c]: + flip term.

nth_product is memoized on canonical word pairs; the memo is pure cache
(identical results with it disabled) and any interleaving of threads
produces the same entries, so it may be shared.

Conformal weights are eigenvalues of the shifted Virasoro field
Ltilde = L - (1/2) dJ:  beta 1, gamma 0, b and c 1/2.
"""

from fractions import Fraction
from math import factorial

from . import linalg
from .errors import JetvaError, OutsideBarSubalgebra
from .ring import Poly, coeff_str, qstr

BETA, GAMMA, BF, CF = 0, 1, 2, 3
KIND_NAMES = ("beta", "gamma", "b", "c")
HALF = Fraction(1, 2)

# Ltilde-weight of an underived generator, by kind.
_BASE_WEIGHT = (Fraction(1), Fraction(0), HALF, HALF)


def letter(kind, index, d=0):
    return (kind, index, d)


def is_odd_letter(l):
    return l[0] >= 2


def letter_weight(l):
    return _BASE_WEIGHT[l[0]] + l[2]


def word_parity(word):
    return sum(1 for l in word if is_odd_letter(l)) % 2


def word_weight(word):
    return sum(letter_weight(l) for l in word)


def _kappa(l1, l2):
    """Full letter bracket: (n, coeff) with l1_(n) l2 = coeff * vacuum,
    or None."""
    k1, i1, d1 = l1
    k2, i2, d2 = l2
    if i1 != i2:
        return None
    base = None
    if (k1, k2) == (BETA, GAMMA):
        base = 1
    elif (k1, k2) == (GAMMA, BETA):
        base = -1
    elif (k1, k2) in ((BF, CF), (CF, BF)):
        base = 1
    if base is None:
        return None
    n = d1 + d2
    return n, Fraction((-1) ** d1 * factorial(n) * base)


def insert_letter(l, word):
    """(sign, word) for :l word:, or (0, None) on an odd repeat."""
    sign = 1
    pos = 0
    odd = is_odd_letter(l)
    for pos in range(len(word) + 1):
        if pos == len(word) or word[pos] >= l:
            break
        if odd and is_odd_letter(word[pos]):
            sign = -sign
    if odd and pos < len(word) and word[pos] == l:
        return 0, None
    return sign, word[:pos] + (l,) + word[pos:]


def word_normalize(letters):
    """(sign, word|None) for an arbitrary letter sequence."""
    ls = list(letters)
    sign = 1
    for i in range(1, len(ls)):
        j = i
        while j > 0 and ls[j - 1] > ls[j]:
            if is_odd_letter(ls[j - 1]) and is_odd_letter(ls[j]):
                sign = -sign
            ls[j - 1], ls[j] = ls[j], ls[j - 1]
            j -= 1
    for a, b in zip(ls, ls[1:]):
        if a == b and is_odd_letter(a):
            return 0, None
    return sign, tuple(ls)


class State:
    """Finite rational combination of canonical words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items()
                      if c != 0}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def vacuum(cls, c=1):
        return cls({(): Fraction(c)})

    @classmethod
    def generator(cls, kind, index, d=0):
        return cls({(letter(kind, index, d),): Fraction(1)})

    @classmethod
    def from_letters(cls, letters, c=1):
        sign, w = word_normalize(letters)
        if w is None:
            return cls()
        return cls({w: Fraction(c) * sign})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            nc = terms.get(w, 0) + c
            if nc:
                terms[w] = nc
            else:
                terms.pop(w, None)
        return State(terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return State()
        return State({w: c * x for w, x in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, State) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def parity(self):
        ps = {word_parity(w) for w in self.terms}
        if not ps:
            return 0
        if len(ps) == 1:
            return ps.pop()
        return None

    def weight(self):
        """Ltilde-weight when homogeneous, else None; zero state is 0."""
        ws = {word_weight(w) for w in self.terms}
        if not ws:
            return Fraction(0)
        if len(ws) == 1:
            return ws.pop()
        return None

    def dx(self):
        """The translation operator (derivative of every letter)."""
        out = State()
        for w, c in self.terms.items():
            for p, l in enumerate(w):
                seq = w[:p] + ((l[0], l[1], l[2] + 1),) + w[p + 1:]
                sign, nw = word_normalize(seq)
                if nw is not None:
                    out = out + State({nw: sign * c})
        return out

    def dx_n(self, n):
        s = self
        for _ in range(n):
            s = s.dx()
        return s

    def sorted_terms(self):
        return sorted(self.terms.items())

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if w:
                toks = " ".join(letter_str(l) for l in w)
                parts.append("%s * :%s:" % (coeff_str(c), toks))
            else:
                parts.append(coeff_str(c))
        return " + ".join(parts)

    def __repr__(self):
        return "State(%s)" % self.text()


def letter_str(l):
    k, i, d = l
    tok = "%s%d" % (KIND_NAMES[k], i)
    if d:
        return "d%d(%s)" % (d, tok)
    return tok


# -- memoized core ----------------------------------------------------------

_LAMBDA_MEMO = {}
_NORMAL_MEMO = {}
_MEMO_ON = True


class memoization:
    """Context manager switching the product cache off (for the cache
    coherence test) or back on."""

    def __init__(self, enabled):
        self.enabled = enabled

    def __enter__(self):
        global _MEMO_ON
        self.saved = _MEMO_ON
        _MEMO_ON = self.enabled

    def __exit__(self, *exc):
        global _MEMO_ON
        _MEMO_ON = self.saved


def clear_caches():
    _LAMBDA_MEMO.clear()
    _NORMAL_MEMO.clear()


def _contract_letter(l, wb):
    """[l_lambda wb] as {n: State}; sum over single contractions."""
    out = {}
    sign = 1
    odd = is_odd_letter(l)
    for p, m in enumerate(wb):
        hit = _kappa(l, m)
        if hit is not None:
            n, coeff = hit
            rest = wb[:p] + wb[p + 1:]
            cur = out.setdefault(n, State())
            out[n] = cur + State({rest: Fraction(sign) * coeff})
        if odd and is_odd_letter(m):
            sign = -sign
    return {n: s for n, s in out.items() if not s.is_zero()}


def _skew(data, pa, pb):
    """a_(n) b from {m: b_(m) a}."""
    if not data:
        return {}
    top = max(data)
    front = -1 if (pa and pb) else 1
    out = {}
    for n in range(top + 1):
        acc = State()
        for j in range(top - n + 1):
            s = data.get(n + j)
            if s is None:
                continue
            acc = acc + s.dx_n(j).scale(
                Fraction((-1) ** (n + j), factorial(j)))
        acc = acc.scale(-front)
        if not acc.is_zero():
            out[n] = acc
    return out


def _lambda_state(sa, wb):
    """[sa_lambda wb] for a State left operand (bilinear)."""
    out = {}
    for wa, ca in sa.terms.items():
        for n, s in _lambda_words(wa, wb).items():
            cur = out.setdefault(n, State())
            out[n] = cur + s.scale(ca)
    return {n: s for n, s in out.items() if not s.is_zero()}


def _lambda_words(wa, wb):
    if not wa or not wb:
        return {}
    key = (wa, wb)
    if _MEMO_ON:
        hit = _LAMBDA_MEMO.get(key)
        if hit is not None:
            return hit
    if len(wa) == 1:
        out = _contract_letter(wa[0], wb)
    elif len(wb) == 1:
        out = _skew(_lambda_words(wb, wa), word_parity(wa), word_parity(wb))
    else:
        out = _ncwick(wa, wb)
    if _MEMO_ON:
        _LAMBDA_MEMO[key] = out
    return out


def _ncwick(wa, wb):
    """[wa_lambda :l wb':] by the non-commutative Wick formula."""
    l, wbr = wb[0], wb[1:]
    P = _lambda_words(wa, (l,))
    Q = _lambda_words(wa, wbr)
    out = {}

    def add(n, s):
        if s.is_zero():
            return
        cur = out.setdefault(n, State())
        out[n] = cur + s

    for n, s in P.items():
        add(n, _normal_state(s, State({wbr: Fraction(1)})))
    sign = -1 if (word_parity(wa) and is_odd_letter(l)) else 1
    for n, s in Q.items():
        acc = State()
        for w, c in s.terms.items():
            sg, nw = insert_letter(l, w)
            if nw is not None:
                acc = acc + State({nw: sg * c})
        add(n, acc.scale(sign))
    for n, s in P.items():
        for m, u in _lambda_state(s, wbr).items():
            # integral term; the binomial restores plain-product keys:
            # lambda^(n)/n! * lambda^(m+1)/(m+1)! pairs of divided powers
            add(n + m + 1, u.scale(Fraction(
                factorial(n + m + 1), factorial(n) * factorial(m + 1))))
    return {n: s for n, s in out.items() if not s.is_zero()}


def _normal_words(u, v):
    """:u v: as a State, canonical."""
    if not u:
        return State({v: Fraction(1)})
    if not v:
        return State({u: Fraction(1)})
    key = (u, v)
    if _MEMO_ON:
        hit = _NORMAL_MEMO.get(key)
        if hit is not None:
            return hit
    l, ur = u[0], u[1:]
    core = _normal_words(ur, v)
    out = State()
    for w, c in core.terms.items():
        sg, nw = insert_letter(l, w)
        if nw is not None:
            out = out + State({nw: sg * c})
    for n, s in _lambda_words(ur, v).items():
        dl = (l[0], l[1], l[2] + n + 1)
        acc = State()
        for w, c in s.terms.items():
            sg, nw = insert_letter(dl, w)
            if nw is not None:
                acc = acc + State({nw: sg * c})
        out = out + acc.scale(Fraction(1, factorial(n + 1)))
    flip = -1 if (is_odd_letter(l) and word_parity(ur)) else 1
    if ur:
        for n, s in _lambda_words((l,), v).items():
            du = State({ur: Fraction(1)}).dx_n(n + 1)
            out = out + _normal_state(du, s).scale(
                Fraction(flip, factorial(n + 1)))
    if _MEMO_ON:
        _NORMAL_MEMO[key] = out
    return out


def _normal_state(sa, sb):
    out = State()
    for u, cu in sa.terms.items():
        for v, cv in sb.terms.items():
            out = out + _normal_words(u, v).scale(cu * cv)
    return out


# -- public products ---------------------------------------------------------

def normal_product(a, b):
    """The (-1)-st product :ab:."""
    return _normal_state(a, b)


def nth_product(a, n, b):
    """a_(n) b for any integer n."""
    if n >= 0:
        out = State()
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                s = _lambda_words(wa, wb).get(n)
                if s is not None:
                    out = out + s.scale(ca * cb)
        return out
    k = -n - 1
    return _normal_state(a.dx_n(k).scale(Fraction(1, factorial(k))), b)


def lambda_bracket(a, b):
    """[(n, a_(n) b)] for n >= 0, nonzero entries only, ascending."""
    out = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            for n, s in _lambda_words(wa, wb).items():
                cur = out.setdefault(n, State())
                out[n] = cur + s.scale(ca * cb)
    return sorted((n, s) for n, s in out.items() if not s.is_zero())


# -- the distinguished sections ----------------------------------------------

class SectionSet:
    """The eight global sections of the rank-N system, plus Ltilde."""

    NAMES = ("Q", "L", "J", "G", "B", "D", "C", "E")

    def __init__(self, n):
        self.n = n
        g = State.generator
        self.Q = _sum(normal_product(g(BETA, i), g(CF, i))
                      for i in range(1, n + 1))
        self.L = _sum(normal_product(g(BETA, i), g(GAMMA, i, 1))
                      - normal_product(g(BF, i), g(CF, i, 1))
                      for i in range(1, n + 1))
        self.J = _sum(normal_product(g(BF, i), g(CF, i))
                      for i in range(1, n + 1)).scale(-1)
        self.G = _sum(normal_product(g(BF, i), g(GAMMA, i, 1))
                      for i in range(1, n + 1))
        self.D = State.from_letters([letter(BF, i) for i in range(1, n + 1)])
        self.E = State.from_letters([letter(CF, i) for i in range(1, n + 1)])
        self.B = nth_product(self.Q, 0, self.D)
        self.C = nth_product(self.G, 0, self.E)
        self.Ltilde = self.L - self.J.dx().scale(HALF)

    def all_eight(self):
        return [getattr(self, name) for name in self.NAMES]

    def named(self):
        return list(zip(self.NAMES, self.all_eight()))


def _sum(states):
    out = State()
    for s in states:
        out = out + s
    return out


def standard_sections(n):
    return SectionSet(n)


def virasoro_central_charge(cand):
    """c when [cand_l cand] = (d + 2 l) cand + (c/12) l^3, else None."""
    br = dict(lambda_bracket(cand, cand))
    expect0 = cand.dx()
    if br.get(0, State()) != expect0:
        return None
    if br.get(1, State()) != cand.scale(2):
        return None
    if not br.get(2, State()).is_zero():
        return None
    top = br.get(3, State())
    for n in br:
        if n > 3:
            return None
    if top.is_zero():
        return Fraction(0)
    if set(top.terms) != {()}:
        return None
    return 2 * top.terms[()]


def weight_of(ltilde, a):
    """Ltilde_(1) eigenvalue of a, or None when a is not an eigenvector."""
    if a.is_zero():
        return None
    img = nth_product(ltilde, 1, a)
    w0, c0 = next(iter(a.terms.items()))
    lam = img.terms.get(w0, Fraction(0)) / c0
    if img == a.scale(lam):
        return lam
    return None


def zero_mode_lie_action(matrix, state):
    """Derivation action of a matrix: beta, b fundamental; gamma, c dual."""
    n = len(matrix)
    out = State()
    for w, c in state.terms.items():
        for p, (k, i, d) in enumerate(w):
            if k in (BETA, BF):
                images = [(a + 1, matrix[a][i - 1]) for a in range(n)]
            else:
                images = [(a + 1, -matrix[i - 1][a]) for a in range(n)]
            for a, coeff in images:
                if not coeff:
                    continue
                seq = w[:p] + ((k, a, d),) + w[p + 1:]
                sign, nw = word_normalize(seq)
                if nw is not None:
                    out = out + State({nw: sign * c * coeff})
    return out


# -- filtration symbols -------------------------------------------------------

def symbol_map(state, alphabet):
    """(n, s, image Poly) for the beta/b then beta counting filtrations.

    n is the maximal number of beta and b letters over the words of the
    state, s the maximal beta count among words attaining n; the image
    collects the attaining words transcribed letter-for-letter into the
    commutative fibre ring (an untruncated cdr-fibre alphabet).
    """
    if state.is_zero():
        return 0, 0, Poly.zero(alphabet)
    best = None
    for w in state.terms:
        nb = sum(1 for l in w if l[0] in (BETA, BF))
        ns = sum(1 for l in w if l[0] == BETA)
        key = (nb, ns)
        if best is None or key > best:
            best = key
    n, s = best
    fam_names = {BETA: "beta", GAMMA: "gamma", BF: "b", CF: "c"}
    out = Poly.zero(alphabet)
    for w, c in state.terms.items():
        nb = sum(1 for l in w if l[0] in (BETA, BF))
        ns = sum(1 for l in w if l[0] == BETA)
        if (nb, ns) != (n, s):
            continue
        for l in w:
            if l[0] == GAMMA and l[2] == 0:
                raise OutsideBarSubalgebra(
                    "underived gamma has no fibre transcription")
        mono = tuple(alphabet.var(fam_names[k], i, d) for k, i, d in w)
        out = out + Poly(alphabet, {mono: c})
    return n, s, out


# -- strong generation --------------------------------------------------------

def _span_symbols(sections, bound):
    """(name, k, state, weight) for derivatives of the eight sections."""
    out = []
    for name, s in sections.named():
        w = s.weight()
        k = 0
        cur = s
        while w + k <= bound:
            out.append(("%s%s" % ("d%d " % k if k else "", name), cur,
                        w + k))
            cur = cur.dx()
            k += 1
    return out


def span_words(sections, bound):
    """Normally ordered words in the eight sections and derivatives.

    Returns [(label, state, weight)] for every right-nested product of
    the symbols with total weight <= bound, deduplicated only by rank
    downstream (words satisfy relations).
    """
    symbols = _span_symbols(sections, bound)
    out = [("1", State.vacuum(), Fraction(0))]

    def rec(start, label, value, weight):
        for k in range(start, len(symbols)):
            name, s, w = symbols[k]
            if weight + w > bound:
                continue
            nv = normal_product(s, value) if label else s
            nl = ("%s %s" % (name, label)) if label else name
            if nv.is_zero():
                continue
            out.append((nl, nv, weight + w))
            rec(k, nl, nv, weight + w)

    rec(0, "", State.vacuum(), Fraction(0))
    seen = {}
    for label, v, w in out:
        seen.setdefault((w, label), (label, v, w))
    return sorted(seen.values(), key=lambda t: (t[2], t[0]))


def _coords_in_words(words, target):
    """Solve target = sum x_i value_i over the listed word values."""
    ambient = sorted(set(w for _l, v, _w in words for w in v.terms)
                     | set(target.terms))
    cols = [[v.terms.get(w, Fraction(0)) for w in ambient]
            for _l, v, _w in words]
    tgt = [target.terms.get(w, Fraction(0)) for w in ambient]
    return linalg.solve_in_span(cols, tgt)


def strong_span_membership(sections, target, bound):
    """(bool, [(word label, coefficient)]) for membership of target in
    the span of normally ordered words of its weight."""
    if target.is_zero():
        return True, []
    w = target.weight()
    if w is None or w > bound:
        return False, []
    words = [t for t in span_words(sections, bound) if t[2] == w]
    x = _coords_in_words(words, target)
    if x is None:
        return False, []
    return True, [(words[i][0], c) for i, c in enumerate(x) if c]


def automorphism_check(sections, signs, bound):
    """Does the diagonal sign map on the eight sections commute with all
    non-negative products among them (results of weight <= bound)?

    signs maps section name -> +1/-1.  The map is extended to words in
    the sections multiplicatively; the extension must be well defined on
    the relations among word values (checked via kernel stability) and
    equivariant on every product.
    """
    words = span_words(sections, bound)
    by_weight = {}
    for label, v, w in words:
        by_weight.setdefault(w, []).append((label, v))

    def word_sign(label):
        s = 1
        for tok in label.split():
            if tok in signs:
                s *= signs[tok]
            elif tok != "1" and not tok.startswith("d"):
                raise JetvaError("unknown token %r" % tok)
        return s

    # kernel stability: sign-twisted relations must still be relations
    for w, pairs in by_weight.items():
        ambient = sorted(set(x for _l, v in pairs for x in v.terms))
        rows = []
        for x in ambient:
            rows.append([v.terms.get(x, Fraction(0)) for _l, v in pairs])
        for kvec in linalg.nullspace(rows, ncols=len(pairs)):
            twisted = State()
            for (label, v), c in zip(pairs, kvec):
                if c:
                    twisted = twisted + v.scale(c * word_sign(label))
            if not twisted.is_zero():
                return False

    for xname, xs in sections.named():
        for yname, ys in sections.named():
            for n, t in lambda_bracket(xs, ys):
                tw = t.weight()
                if tw is None or tw > bound:
                    continue
                pairs = by_weight.get(tw, [])
                labeled = [(l, v, tw) for l, v in pairs]
                x = _coords_in_words(labeled, t)
                if x is None:
                    return False
                sigma_t = State()
                for (label, v), c in zip(pairs, x):
                    if c:
                        sigma_t = sigma_t + v.scale(c * word_sign(label))
                if sigma_t != t.scale(signs[xname] * signs[yname]):
                    return False
    return True


# -- word bases ---------------------------------------------------------------

def bar_letters(n, bound):
    """Letters of the subalgebra generated by beta, d(gamma), b, c with
    weight <= bound."""
    out = []
    for kind in (BETA, GAMMA, BF, CF):
        d = 1 if kind == GAMMA else 0
        while True:
            l = letter(kind, 1, d)
            if letter_weight(l) > bound:
                break
            for i in range(1, n + 1):
                out.append(letter(kind, i, d))
            d += 1
    out.sort()
    return out


def bar_basis_words(n, bound, *, exact=None):
    """Canonical words without underived gamma, of weight <= bound (or
    == exact when given)."""
    letters = bar_letters(n, bound)
    out = []

    def rec(start, chosen, w):
        if exact is None or w == exact:
            sign, word = word_normalize(chosen)
            if word is not None:
                out.append(word)
        for k in range(start, len(letters)):
            l = letters[k]
            lw = letter_weight(l)
            if w + lw > bound:
                continue
            if is_odd_letter(l):
                if l in chosen:
                    continue
                rec(k + 1, chosen + [l], w + lw)
            else:
                rec(k, chosen + [l], w + lw)

    rec(0, [], Fraction(0))
    return sorted(set(out))
