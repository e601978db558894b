class GroupoidError(Exception):
    exit_status = 2


class FormatError(GroupoidError):
    def __init__(self, reason):
        super().__init__(f"Malformed input: {reason}")


class InvalidInputError(GroupoidError):
    pass


class ShapeError(GroupoidError):
    pass


class CompositionError(GroupoidError):
    pass


class ConfigError(GroupoidError):
    def __init__(self, errors):
        details = ", ".join(f"{key}: {value}" for key, value in errors.items())
        super().__init__(f"Invalid configuration: {details}")


class CapacityError(GroupoidError):
    exit_status = 3

    def __init__(self, order, bound):
        super().__init__(
            f"Group of order {order} exceeds the brute-force bound {bound}"
        )


class TheoremViolation(GroupoidError):
    exit_status = 4


class InternalInconsistency(GroupoidError):
    exit_status = 4
