"""Exception types shared across the engine."""


class JetvaError(Exception):
    pass


class AlphabetMismatch(JetvaError):
    """Operands built over different alphabets."""


class TruncationExceeded(JetvaError):
    """A derivation pushed a variable past the ring truncation."""


class InfinitePiece(JetvaError):
    """A graded piece with infinitely many monomials was requested."""


class MissingRepLabel(JetvaError):
    """A jet action needs a representation label the family does not carry."""


class NotActionClosed(JetvaError):
    """A subspace handed to a restriction is not closed under the action."""


class OutsideBarSubalgebra(JetvaError):
    """A state with an underived gamma letter has no Fock expansion."""


class InvalidRank(JetvaError):
    """Lie algebra rank outside the supported range."""


class ConfigError(JetvaError):
    """Unparseable declarative configuration."""
