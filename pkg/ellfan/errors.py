class EllFanError(ValueError):
    kind = "domain"

    def as_dict(self):
        return {"error": {"kind": self.kind, "message": str(self)}}


class DimensionMismatchError(EllFanError):
    kind = "dimension-mismatch"


class InfiniteRankError(EllFanError):
    kind = "infinite-rank"


class FanError(EllFanError):
    kind = "invalid-fan"


class NotAFaceError(FanError):
    kind = "not-a-face"


class CompletenessError(EllFanError):
    kind = "not-complete"


class ConeLimitError(EllFanError):
    kind = "cap-exceeded"


class PointNotInSubgroupError(EllFanError):
    kind = "point-not-in-subgroup"


class ComplexError(EllFanError):
    kind = "complex"


class ParseError(EllFanError):
    kind = "parse"
