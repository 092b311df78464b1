from ..exceptions import AiroasError


class InvalidDomainParams(AiroasError):
    """
    Raised when domain parameters violate their invariants.
    """


class UnknownDomain(AiroasError):
    """
    Raised when a domain name has no registered builder.

    Attributes:
        name (str): The unknown name.
    """

    def __init__(self, name: str, message: str = "no such domain"):
        self.name = name
        self.message = message
        super().__init__(f"{name}: {message}")
