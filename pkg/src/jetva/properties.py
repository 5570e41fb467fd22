"""
Seeded random property samples shared by the CLI report and the test
suite.  Every sampler draws from a caller-supplied random.Random and
returns True only when the identity holds exactly on every sample.
"""

from fractions import Fraction
from math import comb, factorial

from . import presets, vertex
from .lie import JetGen, jet_act, sl
from .ring import Poly, tilde_d
from .vertex import BETA, BF, CF, GAMMA, State


def random_state(rng, n, max_letters=3, max_weight=3):
    """A random homogeneous-parity combination of one or two low-weight
    words (the identities under test are parity-sensitive)."""
    letters = vertex.bar_letters(n, max_weight)

    def random_word():
        word = []
        budget = Fraction(max_weight)
        for _ in range(rng.randint(1, max_letters)):
            l = rng.choice(letters)
            if vertex.letter_weight(l) > budget:
                continue
            word.append(l)
            budget -= vertex.letter_weight(l)
        return word

    while True:
        w1 = random_word()
        s = State.from_letters(w1, rng.randint(-3, 3) or 1)
        if rng.random() < 0.4:
            w2 = random_word()
            if vertex.word_parity(tuple(w2)) == vertex.word_parity(tuple(w1)):
                s = s + State.from_letters(w2, rng.randint(-3, 3) or 1)
        if not s.is_zero():
            return s


def sample_skew_symmetry(rng, n, count):
    for _ in range(count):
        a = random_state(rng, n)
        b = random_state(rng, n)
        pa, pb = a.parity(), b.parity()
        front = -((-1) ** (pa * pb))
        for m in range(0, 3):
            lhs = vertex.nth_product(a, m, b)
            rhs = State.zero()
            for j in range(0, 12):
                t = vertex.nth_product(b, m + j, a)
                if t.is_zero():
                    continue
                rhs = rhs + t.dx_n(j).scale(
                    Fraction((-1) ** (m + j), factorial(j)))
            if lhs != rhs.scale(front):
                return False
    return True


def sample_derivative_axioms(rng, n, count):
    for _ in range(count):
        a = random_state(rng, n)
        b = random_state(rng, n)
        for m in range(0, 3):
            if vertex.nth_product(a.dx(), m, b) != \
                    vertex.nth_product(a, m - 1, b).scale(-m):
                return False
            lhs = vertex.nth_product(a, m, b).dx()
            rhs = vertex.nth_product(a.dx(), m, b) \
                + vertex.nth_product(a, m, b.dx())
            if lhs != rhs:
                return False
    return True


def sample_commutator(rng, n, count):
    for _ in range(count):
        a = random_state(rng, n, max_letters=2, max_weight=2)
        b = random_state(rng, n, max_letters=2, max_weight=2)
        c = random_state(rng, n, max_letters=2, max_weight=2)
        pa, pb = a.parity(), b.parity()
        for m in range(0, 2):
            for k in range(0, 2):
                lhs = vertex.nth_product(a, m, vertex.nth_product(b, k, c)) \
                    - vertex.nth_product(
                        b, k, vertex.nth_product(a, m, c)).scale(
                            (-1) ** (pa * pb))
                rhs = State.zero()
                for j in range(0, m + 1):
                    rhs = rhs + vertex.nth_product(
                        vertex.nth_product(a, j, b), m + k - j, c).scale(
                            comb(m, j))
                if lhs != rhs:
                    return False
    return True


def random_poly(rng, alphabet, max_vars=3):
    all_vars = []
    for pos, fam in enumerate(alphabet.families):
        top = fam.max_level if fam.max_level is not None else fam.min_level + 2
        for i in range(1, fam.indices + 1):
            for lv in range(fam.min_level, top + 1):
                all_vars.append((pos, i, lv))
    out = Poly.zero(alphabet)
    for _ in range(rng.randint(1, 2)):
        vars_ = [rng.choice(all_vars) for _ in range(rng.randint(0,
                                                                 max_vars))]
        coeff = Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3))
        from .ring import normalize_monomial
        sign, mono = normalize_monomial(alphabet, vars_)
        if mono is None:
            continue
        out = out + Poly(alphabet, {mono: sign * coeff})
    return out


def sample_ring_leibniz(rng, count):
    alphabet = presets.cdr_fibre(2, 2).alphabet
    d = tilde_d(alphabet.untruncated(), strict=False)
    alph_u = alphabet.untruncated()
    for _ in range(count):
        a = random_poly(rng, alph_u)
        b = random_poly(rng, alph_u)
        c = random_poly(rng, alph_u)
        if (a * b) * c != a * (b * c):
            return False
        pa, pb = a.parity(), b.parity()
        if pa is not None and pb is not None:
            if a * b != (b * a).scale((-1) ** (pa * pb)):
                return False
        if d(a * b) != d(a) * b + a * d(b):
            return False
    return True


def sample_jet_d_commutation(rng, count):
    algebra = sl(2)
    alphabet = presets.cdr_fibre(2, None).alphabet
    d = tilde_d(alphabet, strict=False)
    for _ in range(count):
        a = random_poly(rng, alphabet)
        g = rng.choice(algebra.basis)
        k = rng.randint(1, 3)
        lhs = jet_act(JetGen(g, k), d(a)) - d(jet_act(JetGen(g, k), a))
        rhs = jet_act(JetGen(g, k - 1), a).scale(k)
        if lhs != rhs:
            return False
    return True


def sample_memoization(rng, n, count):
    for _ in range(count):
        a = random_state(rng, n, max_letters=2, max_weight=2)
        b = random_state(rng, n, max_letters=2, max_weight=2)
        m = rng.randint(-2, 2)
        cached = vertex.nth_product(a, m, b)
        with vertex.memoization(False):
            fresh = vertex.nth_product(a, m, b)
        if cached != fresh:
            return False
    return True
