"""Exception types. Each names the invariant or precondition it reports."""


class LorenzError(Exception):
    """Base class for all domain errors raised by this package."""


# -- curve construction ------------------------------------------------------

class BadEndpointsError(LorenzError):
    """Knot list does not start at (0, 0) or does not end at t = 1."""


class NotMonotoneError(LorenzError):
    """Knot ordinates decrease somewhere."""


class NonConvexError(LorenzError):
    """Segment slopes decrease beyond tolerance."""


class OutOfRangeError(LorenzError):
    """A coordinate falls outside [0, 1]."""


class DomainError(LorenzError):
    """Function argument outside its domain."""


# -- extremal geometry -------------------------------------------------------

class BadParamsError(LorenzError):
    """Extreme-curve parameters outside the family's parameter box."""


class DegenerateError(LorenzError):
    """Quantity undefined at this parameter corner."""


class OutsideRegionError(LorenzError):
    """Point not in the attainable region of the index."""


# -- samples -----------------------------------------------------------------

class EmptySampleError(LorenzError):
    """Sample has no observations."""


class NegativeIncomeError(LorenzError):
    """Sample contains a negative income."""


class ZeroMeanError(LorenzError):
    """Weighted mean income is not strictly positive."""


class BadWeightError(LorenzError):
    """A survey weight is not strictly positive."""


# -- GB2 ---------------------------------------------------------------------

class NotIntegrableError(LorenzError):
    """Distribution has no finite mean (shape product a*q <= 1)."""


class BadModelError(LorenzError):
    """Unknown model preset number."""


# -- simulation --------------------------------------------------------------

class GridMismatchError(LorenzError):
    """Paths live on different grids."""


class IntegrabilityError(LorenzError):
    """Second-moment-type condition a*q > 2 fails; limit theory does not apply."""


class TooFewDrawsError(LorenzError):
    """Not enough draws for the requested diagnostic."""


# -- data ingestion ----------------------------------------------------------

class MissingColumnError(LorenzError):
    """Requested column not present in the CSV header."""


class NoValidRowsError(LorenzError):
    """Every row was dropped during ingestion."""
