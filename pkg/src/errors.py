"""
Error Types - Exceptions raised by the Lie algebra kernel and its front ends
"""


class LieAlgebraError(ValueError):
    """Base class for every error raised by the algebra modules"""


class AlphabetError(LieAlgebraError):
    """Unknown, duplicate or malformed generator"""


class ContextError(LieAlgebraError):
    """Operands were built under different truncation contexts"""


class DefinitionError(LieAlgebraError):
    """A derivation is missing a generator value or has an ill-typed one"""


class DomainError(LieAlgebraError):
    """An operand has the wrong homological degree for the operation"""


class ExpressionParseError(LieAlgebraError):
    """Expression text does not match the grammar"""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
