class MucoalError(Exception):
    """Base class of every error raised by the library."""


class ResourceError(MucoalError):

    def __init__(self, cap: str, limit, what: str = ''):
        self.cap = cap
        self.limit = limit
        message = '`{}` cap of {} exhausted'.format(cap, limit)
        if what:
            message += ' while ' + what
        super().__init__(message)


class UnsupportedFunctorError(MucoalError):
    pass


class UnknownLiftingError(MucoalError):

    def __init__(self, op: str, functor: str):
        self.op = op
        self.functor = functor
        super().__init__('lifting `{}` is not defined for functor `{}`'.format(op, functor))


class ArityError(MucoalError):

    def __init__(self, op: str, expected: int, got: int):
        self.op = op
        super().__init__('lifting `{}` takes {} argument(s), got {}'.format(op, expected, got))


class UnmappedVariableError(MucoalError):

    def __init__(self, name):
        self.name = name
        super().__init__('substitution is undefined on variable `{}`'.format(name))


class FormulaError(MucoalError):
    pass


class FormulaSyntaxError(FormulaError):

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__('{} (line {}, column {})'.format(message, line, column))


class UnguardedFormulaError(FormulaError):

    def __init__(self, var):
        self.var = var
        super().__init__('variable `{}` occurs unguarded across a nested binder'.format(var))


class UnboundPropositionError(FormulaError):

    def __init__(self, name):
        self.name = name
        super().__init__('free letter `{}` has no valuation entry'.format(name))


class NonMonotoneError(MucoalError):

    def __init__(self, var, smaller, larger):
        self.var = var
        self.counterexample = (smaller, larger)
        super().__init__('formula is not monotone in `{}`'.format(var))


class CoverSearchError(MucoalError):

    def __init__(self, node, message: str = 'no dividing cover found'):
        self.node = node
        super().__init__('{} at node {!r}'.format(message, node))
