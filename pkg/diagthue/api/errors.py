"""This module defines all custom exceptions."""


class NotIntegralError(ValueError):
    def __init__(self, index: int, value: str):
        """Create an integrality error.

        :param index: Index of the first offending coefficient.
        :param value: String representation of that coefficient.
        """
        super().__init__(f'coefficient {index} is not a rational integer: {value}')
        self._index = index
        self._value = value

    @property
    def index(self) -> int:
        """Index of the first offending coefficient."""
        return self._index

    @property
    def value(self) -> str:
        """String representation of the offending coefficient."""
        return self._value


class DegenerateFormError(ValueError):
    pass


class InvalidFormError(ValueError):
    pass


class MixedFieldError(ValueError):
    pass


class ZeroValueError(ValueError):
    pass


class NotPrimitiveError(ValueError):
    pass


class SameSolutionError(ValueError):
    pass


class WrongClassSizeError(ValueError):
    def __init__(self, expected: int, actual: int):
        """Create a class size error.

        :param expected: The required number of solutions in the class.
        :param actual: The actual number of solutions in the class.
        """
        super().__init__(f'expected a class of {expected} solutions, got {actual}')
        self._expected = expected
        self._actual = actual

    @property
    def expected(self) -> int:
        """The required number of solutions in the class."""
        return self._expected

    @property
    def actual(self) -> int:
        """The actual number of solutions in the class."""
        return self._actual


class ParameterOutOfRangeError(ValueError):
    pass


class PrecisionExhaustedError(RuntimeError):
    def __init__(self, message: str, precision: int):
        """Create a precision error.

        :param message: What could not be certified.
        :param precision: The last precision (in bits) that was tried.
        """
        super().__init__(f'{message} (gave up at {precision} bits)')
        self._precision = precision

    @property
    def precision(self) -> int:
        """The last precision (in bits) that was tried."""
        return self._precision


class DigitBudgetExceededError(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        """Create a digit budget error.

        :param estimate: Estimated number of decimal digits the computation needs.
        :param budget: The configured digit budget.
        """
        super().__init__(f'exact comparison needs about {estimate} digits, budget is {budget}')
        self._estimate = estimate
        self._budget = budget

    @property
    def estimate(self) -> int:
        """Estimated number of decimal digits the computation needs."""
        return self._estimate

    @property
    def budget(self) -> int:
        """The configured digit budget."""
        return self._budget


class ConditionFailedError(RuntimeError):
    def __init__(self, *failed: str):
        """Create an induction condition error.

        :param failed: Labels of the failed conditions, among 'i', 'ii', 'iii' and 'iv'.
        """
        super().__init__(f'induction conditions failed: {", ".join(failed)}')
        self._failed = failed

    @property
    def failed(self) -> tuple[str, ...]:
        """Labels of the failed conditions."""
        return self._failed


class BoundExceededError(RuntimeError):
    def __init__(self, found: int, bound: int, evidence=()):
        """Create a bound error.

        :param found: Number of solutions found within the search box.
        :param bound: The predicted upper bound.
        :param evidence: Findings gathered on the solutions before the bound was checked.
        """
        super().__init__(f'found {found} solutions, predicted bound is {bound}')
        self._found = found
        self._bound = bound
        self._evidence = list(evidence)

    @property
    def found(self) -> int:
        """Number of solutions found within the search box."""
        return self._found

    @property
    def bound(self) -> int:
        """The predicted upper bound."""
        return self._bound

    @property
    def evidence(self) -> list[str]:
        """Findings gathered on the solutions, such as a forbidden class shape."""
        return self._evidence


class InvariantViolationError(RuntimeError):
    pass


DOMAIN_ERRORS: tuple[type[Exception], ...] = tuple(
    v for v in dict(globals()).values()
    if isinstance(v, type) and issubclass(v, Exception) and v.__module__ == __name__
)


def error_details(e: Exception) -> dict[str, object]:
    """Collect the public properties of a domain error into a dict.

    :param e: The error.
    :return: A dict mapping each property name to its value.
    """
    return {
        name: getattr(e, name)
        for name, attr in vars(type(e)).items()
        if isinstance(attr, property)
    }
