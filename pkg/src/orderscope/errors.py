"""Exception hierarchy shared by every orderscope module."""


class OrderscopeError(Exception):
    """Base class for all errors raised by orderscope."""


class InvalidGroupError(OrderscopeError, ValueError):
    pass


class InvalidFieldError(OrderscopeError, ValueError):
    pass


class NotProperOrderError(OrderscopeError, ValueError):
    pass


class DomainError(OrderscopeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(OrderscopeError, RuntimeError):
    """A configured enumeration cap was exceeded.

    ``details`` carries whatever diagnostics the raising site had
    (partial coverage, the cap that tripped, ...).
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details
