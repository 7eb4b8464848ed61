"""Exception hierarchy.

Every error carries a short ``code`` so the CLI can print ``E:<code>:<detail>``.
"""


class QupitGraphError(Exception):
    code = "error"


class NotInvertible(QupitGraphError, ZeroDivisionError):
    code = "not_invertible"


class InvalidParameter(QupitGraphError, ValueError):
    code = "invalid_parameter"


class InvalidInput(QupitGraphError, ValueError):
    code = "invalid_input"


class UnsupportedModulus(QupitGraphError, ValueError):
    code = "unsupported_modulus"


class ResourceLimit(QupitGraphError, RuntimeError):
    code = "resource_limit"


class ParseError(QupitGraphError, ValueError):
    code = "parse"


class InternalError(QupitGraphError, RuntimeError):
    code = "internal"


class UsageError(QupitGraphError, ValueError):
    code = "usage"


class OracleMismatch(QupitGraphError, AssertionError):
    code = "oracle_mismatch"
