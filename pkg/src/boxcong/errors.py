"""Package-wide error types."""


class CapExceeded(RuntimeError):
    """A configured enumeration cap would be exceeded.

    Carries the cap that would have been required to proceed.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required
