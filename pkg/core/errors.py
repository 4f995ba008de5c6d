class EsbfError(Exception):
    """Base class for every error raised by the core package."""


class InvalidParametersError(EsbfError, ValueError):
    pass


class InvalidResidueError(InvalidParametersError):
    pass


class UnrepresentableError(InvalidParametersError):
    pass


class CapExceededError(InvalidParametersError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"n={n} excede o limite configurado do oráculo ({cap})")
        self.n = n
        self.cap = cap


class PrecisionInsufficientError(EsbfError, ArithmeticError):
    def __init__(self, what: str, precision_bits: int, error_bound):
        super().__init__(
            f"{what}: cota de erro {float(error_bound):.3g} >= 1/2 com {precision_bits} bits"
        )
        self.what = what
        self.precision_bits = precision_bits
        self.error_bound = error_bound


class ConfigurationError(EsbfError, ValueError):
    pass


class CheckpointIOError(EsbfError, OSError):
    pass


class CorruptCheckpointError(EsbfError):
    def __init__(self, path, line_no: int, reason: str):
        super().__init__(f"checkpoint corrompido {path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
