"""Exception types. Each carries a stable ``code`` used by the CLI reports."""


class OrbiramError(ValueError):
    code = "INVALID_INPUT"

    def __init__(self, message=""):
        super().__init__(f"{self.code}: {message}" if message else self.code)


class UnsupportedPole(OrbiramError):
    code = "UNSUPPORTED_POLE"


class LabelJumpMismatch(OrbiramError):
    code = "LABEL_JUMP_MISMATCH"


class WildBaseChange(OrbiramError):
    code = "WILD_BASE_CHANGE"


class NotSubextension(OrbiramError):
    code = "NOT_SUBEXTENSION"


class KummerDegreeError(OrbiramError):
    code = "N_NOT_DIVIDING_Q_MINUS_1"


class DisconnectedCover(OrbiramError):
    code = "DISCONNECTED_COVER"


class CocycleInvalid(OrbiramError):
    code = "COCYCLE_INVALID"


class CoverMismatch(OrbiramError):
    code = "COVER_MISMATCH"
