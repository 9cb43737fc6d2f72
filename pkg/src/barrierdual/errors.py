class BarrierDualError(Exception):
    """Base class for every error raised by the solver."""


class NonPositiveParameter(BarrierDualError):
    def __init__(self, name: str, value=None):
        self.name = name
        self.value = value
        super().__init__(f"Parameter [{name}] must be strictly positive, got {value}")


class NegativeState(BarrierDualError):
    def __init__(self, x: float):
        self.x = x
        super().__init__(f"Surplus must be nonnegative, got {x}")


class NegativeMultiplier(BarrierDualError):
    def __init__(self, lambda_mult: float):
        self.lambda_mult = lambda_mult
        super().__init__(f"Lagrange multiplier must be nonnegative, got {lambda_mult}")


class NoSignChange(BarrierDualError):
    pass


class MaxIterExceeded(BarrierDualError):
    pass


class NoRootInRange(BarrierDualError):
    pass


class QuadratureFailure(BarrierDualError):
    pass


class TargetUnreachable(BarrierDualError):
    def __init__(self, target: float, limit: float):
        self.target = target
        self.limit = limit
        super().__init__(
            f"Target {target} is not below the b -> inf limit {limit}; no barrier reaches it"
        )


class MinimizationFailure(BarrierDualError):
    pass


class InvalidConfig(BarrierDualError):
    pass


class InvalidGrid(BarrierDualError):
    pass
