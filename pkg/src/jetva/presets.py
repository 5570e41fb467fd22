"""
Named alphabets and the declarative configuration grammar.

Two presets cover the rings the verification suites run on:

  tj-bundle   the fibre of the jet bundle whose sections are vector
              fields on the m-th jet scheme: an even dual family y at
              levels 1..m (jet offset 1) paired with an even fundamental
              family ystar at levels 0..m;

  cdr-fibre   the fibre of the second associated graded of the chiral
              de Rham sheaf: beta (even, fundamental, levels 0..m),
              gamma (even, dual, levels 1..m, jet offset 1), b (odd,
              fundamental), c (odd, dual).  Conformal weight offsets are
              1 for beta and b, 0 for gamma and c.  Pass m=None for the
              untruncated ring used in derivative-word enumeration.

Config grammar (one declaration per line, '#' comments):

    algebra sl 2
    jet 2
    coordinate gamma
    family beta parity=even indices=2 rep=fund min=0 weight_offset=1

`max=` defaults to the jet order; `max=none` leaves a family untruncated.
"""

from fractions import Fraction

from .errors import ConfigError
from .lie import DUAL, FUND, lie_basis
from .ring import EVEN, ODD, Alphabet, FamilySpec, Poly


class RingPreset:
    """An alphabet plus the bookkeeping the invariant suites need."""

    def __init__(self, name, alphabet, coordinate_family, degree_caps=None):
        self.name = name
        self.alphabet = alphabet
        self.coordinate_family = coordinate_family
        self.degree_caps = degree_caps or {}


def tj_bundle(n, m):
    alphabet = Alphabet([
        FamilySpec("y", EVEN, n, min_level=1, max_level=m, jet_offset=1,
                   weight_offset=0, rep=DUAL),
        FamilySpec("ystar", EVEN, n, min_level=0, max_level=m,
                   jet_offset=0, weight_offset=0, rep=FUND),
    ])
    # ystar carries weight-0 even variables, so window enumerations need
    # a degree cap; 4 covers every piece the desk-scale suites look at.
    return RingPreset("tj-bundle", alphabet, "y", degree_caps={"ystar": 4})


def cdr_fibre(n, m=None):
    alphabet = Alphabet([
        FamilySpec("beta", EVEN, n, min_level=0, max_level=m, jet_offset=0,
                   weight_offset=1, rep=FUND),
        FamilySpec("gamma", EVEN, n, min_level=1, max_level=m, jet_offset=1,
                   weight_offset=0, rep=DUAL),
        FamilySpec("b", ODD, n, min_level=0, max_level=m, jet_offset=0,
                   weight_offset=1, rep=FUND),
        FamilySpec("c", ODD, n, min_level=0, max_level=m, jet_offset=0,
                   weight_offset=0, rep=DUAL),
    ])
    return RingPreset("cdr-fibre", alphabet, "gamma")


def preset(name, n, m):
    if name == "tj-bundle":
        return tj_bundle(n, m)
    if name == "cdr-fibre":
        return cdr_fibre(n, m)
    raise ConfigError("unknown preset %r" % name)


def eight_invariants(alphabet):
    """The eight invariant ring elements of the cdr-fibre alphabet, by
    construction from pairings and index determinants.

    Order matches SectionSet.NAMES: q, l, j, g, b, d, c, e symbols.
    """
    n = alphabet.family("beta").indices

    def var(name, i, lv):
        return Poly.variable(alphabet, name, i, lv)

    def pairing(name_v, lv_v, name_u, lv_u):
        out = Poly.zero(alphabet)
        for i in range(1, n + 1):
            out = out + var(name_v, i, lv_v) * var(name_u, i, lv_u)
        return out

    def odd_top(name, lv):
        out = Poly.one(alphabet)
        for i in range(1, n + 1):
            out = out * var(name, i, lv)
        return out

    def alternating(sub_name, sub_lv, name, lv):
        """sum_i (-1)^(i-1) x^1 ... x^(i-1) s^i x^(i+1) ... x^N."""
        out = Poly.zero(alphabet)
        for i in range(1, n + 1):
            term = Poly.one(alphabet)
            for j in range(1, n + 1):
                term = term * (var(sub_name, i, sub_lv) if j == i
                               else var(name, j, lv))
            out = out + term.scale(Fraction((-1) ** (i - 1)))
        return out

    q_sym = pairing("beta", 0, "c", 0)
    l_sym = pairing("beta", 0, "gamma", 1)
    j_sym = pairing("b", 0, "c", 0).scale(-1)
    g_sym = pairing("b", 0, "gamma", 1)
    d_sym = odd_top("b", 0)
    e_sym = odd_top("c", 0)
    b_sym = alternating("beta", 0, "b", 0)
    c_sym = alternating("gamma", 1, "c", 0)
    return [q_sym, l_sym, j_sym, g_sym, b_sym, d_sym, c_sym, e_sym]


_PARITIES = {"even": EVEN, "odd": ODD}
_REPS = {"fund": FUND, "dual": DUAL, "trivial": "trivial"}


def parse_config(text):
    """Parse the declarative grammar; returns a dict with keys
    'algebra' (LieAlgebra or None), 'jet' (int or None), and
    'preset' (RingPreset built from family lines, or None)."""
    algebra = None
    jet = None
    families = []
    coordinate = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        try:
            if head == "algebra":
                algebra = lie_basis(toks[1], int(toks[2]))
            elif head == "jet":
                jet = int(toks[1])
            elif head == "coordinate":
                coordinate = toks[1]
            elif head == "family":
                name = toks[1]
                opts = {}
                for tok in toks[2:]:
                    k, v = tok.split("=", 1)
                    opts[k] = v
                max_level = opts.get("max")
                if max_level == "none":
                    max_level = None
                elif max_level is None:
                    max_level = jet
                else:
                    max_level = int(max_level)
                families.append(FamilySpec(
                    name,
                    _PARITIES[opts.get("parity", "even")],
                    int(opts["indices"]),
                    min_level=int(opts.get("min", 0)),
                    max_level=max_level,
                    jet_offset=int(opts.get("offset", 0)),
                    weight_offset=int(opts.get("weight_offset", 0)),
                    rep=_REPS[opts.get("rep", "trivial")]))
            else:
                raise ConfigError("unknown declaration %r" % head)
        except ConfigError:
            raise
        except Exception as exc:
            raise ConfigError("line %d: %s" % (lineno, exc)) from exc
    ring_preset = None
    if families:
        ring_preset = RingPreset("custom", Alphabet(families),
                                 coordinate or families[0].name)
    return {"algebra": algebra, "jet": jet, "preset": ring_preset}
