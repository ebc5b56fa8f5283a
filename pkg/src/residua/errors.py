"""Exception hierarchy shared by all residua modules."""


class ResiduaError(Exception):
    pass


# lattice-core
class BadId(ResiduaError):
    pass


class CycleDetected(ResiduaError):
    pass


class NotALattice(ResiduaError):
    pass


class Unbounded(ResiduaError):
    pass


class NotImplicative(ResiduaError):
    pass


class EmptyInterval(ResiduaError):
    pass


# free-lattice
class PosetMismatch(ResiduaError):
    pass


class EmptyPoset(ResiduaError):
    pass


class NotDualImplicative(ResiduaError):
    pass


class SizeLimit(ResiduaError):
    pass


# prop-logic
class FormulaSyntaxError(ResiduaError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MissingAtom(ResiduaError):
    pass


class XNotSubset(ResiduaError):
    pass


class Undecided(ResiduaError):
    """Raised when a proof-search or lattice budget runs out before a verdict."""


# closed-class
class DepthExceeded(ResiduaError):
    pass


class EmptyClass(ResiduaError):
    pass


class NotDisjoint(ResiduaError):
    pass


class BranchingMismatch(ResiduaError):
    pass


class FormatError(ResiduaError):
    pass
