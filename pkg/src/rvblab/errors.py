"""Shared exception types."""


class CapExceeded(RuntimeError):
    """A requested computation is larger than its enforced size cap.

    Raised instead of attempting an enumeration or dense linear-algebra
    step whose cost would blow up combinatorially.  The message names the
    cap and the requested size so callers can decide whether to shrink the
    problem or route it to a cheaper method.
    """
