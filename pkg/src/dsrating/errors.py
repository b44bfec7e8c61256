"""Exception hierarchy. Every domain failure derives from ``DualScalingError``."""


class DualScalingError(ValueError):
    """Base class for domain errors raised by this package."""


class InvalidInput(DualScalingError):
    pass


class DegenerateWeight(DualScalingError):
    pass


class MismatchedRecodings(DualScalingError):
    pass


class DegenerateMargin(DualScalingError):
    """A zero row or column sum; ``labels`` names the offending entries."""

    def __init__(self, labels, indices):
        self.labels = list(labels)
        self.indices = list(indices)
        super().__init__(self._describe())

    def _describe(self):
        return "zero margin for " + ", ".join(repr(lab) for lab in self.labels)


class DegenerateRow(DegenerateMargin):
    def _describe(self):
        return "zero row sum for " + ", ".join(repr(lab) for lab in self.labels)


class DegenerateColumn(DegenerateMargin):
    def _describe(self):
        return "zero column sum for " + ", ".join(repr(lab) for lab in self.labels)


class RankExceeded(DualScalingError):
    def __init__(self, requested, actual_rank):
        self.requested = requested
        self.actual_rank = actual_rank
        super().__init__(f"requested {requested} dimensions but numerical rank is {actual_rank}")


class DegenerateSolution(RankExceeded):
    """All singular values vanish, so there is nothing to explain."""

    def __init__(self, requested=1):
        super().__init__(requested, 0)


class RatingOutOfRange(DualScalingError):
    def __init__(self, row, col, value, q):
        self.row, self.col, self.value, self.q = row, col, value, q
        super().__init__(f"rating {value!r} at row {row}, column {col} outside 1..{q}")


class MalformedCsv(DualScalingError):
    def __init__(self, line, reason):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class UnknownDataset(DualScalingError):
    pass


class NeedTwoDimensions(DualScalingError):
    pass


class IoError(DualScalingError):
    pass
