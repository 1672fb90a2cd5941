class LabError(ValueError):
    """
    Base class of every error raised by the lab.

    The detail dict follows the shape used for HTTP error bodies, so the API
    can return it verbatim and the CLI can print its message.

    Args:
        loc (list[str]): Where the offending value came from.
        msg (str): Human readable message.
        error_type (str): Error category.
        **extra: Additional detail fields.
    """

    status_code = 400

    def __init__(self, loc: list[str], msg: str, error_type: str = "value_error", **extra):
        super().__init__(msg)
        self.detail = {"loc": loc, "msg": msg, "type": error_type, **extra}

    @property
    def msg(self) -> str:
        return self.detail["msg"]
