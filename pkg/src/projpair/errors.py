"""Exception hierarchy shared by all modules."""


class ProjPairError(Exception):
    """Base class for every error raised by this package."""


class NumericalFailure(ProjPairError):
    """A computed result missed its residual contract."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotHermitianError(ProjPairError):
    pass


class NotPSDError(ProjPairError):
    pass


class ProjectionError(ProjPairError):
    """Input matrix is not an orthogonal projection within tolerance."""

    def __init__(self, message, hermitian_defect=None, idempotency_defect=None):
        super().__init__(message)
        self.hermitian_defect = hermitian_defect
        self.idempotency_defect = idempotency_defect


class EmptyGenericPartError(ProjPairError):
    """The pair has no generic part (dim H5 == 0)."""


class ExistenceError(ProjPairError):
    """No intertwiner / direct rotation exists because d2 != d3."""

    def __init__(self, d2, d3):
        super().__init__(
            f"no intertwining unitary exists: dim R(P)∩N(Q) = {d2} "
            f"!= dim N(P)∩R(Q) = {d3}"
        )
        self.d2 = d2
        self.d3 = d3


class ParameterError(ProjPairError):
    """A free parameter block is malformed (wrong shape, not unitary, ...)."""


class ScopeError(ProjPairError):
    """Operation called outside its hypothesis (e.g. non-generic pair)."""


class SpecError(ProjPairError):
    """Invalid PairSpec for the instance generator."""


class MatrixFileError(ProjPairError):
    """Malformed or inconsistent matrix / decomposition file."""
