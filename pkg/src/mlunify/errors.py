"""Exception hierarchy shared across the toolkit."""


class MlUnifyError(Exception):
    """Base class for all toolkit errors."""


class ParseError(MlUnifyError):
    pass


class IllSorted(MlUnifyError):
    pass


class AmbiguousSort(IllSorted):
    """A variable occurrence whose sort cannot be inferred from context."""


class SortMismatch(IllSorted):
    pass


class UnknownSymbol(MlUnifyError):
    pass


class AlreadyFailed(MlUnifyError):
    """A step was requested on a failed unification problem."""


class UnassignedVariable(MlUnifyError):
    pass


class CarrierTooLarge(MlUnifyError):
    """The valuation space exceeds the configured enumeration budget."""


class NoInjectiveInterpretation(MlUnifyError):
    pass


class ModelFormatError(MlUnifyError):
    pass


class NotSolved(MlUnifyError):
    """Certificate generation needs a successful unification outcome."""


class NotMgu(MlUnifyError):
    pass


class BadInstantiation(MlUnifyError):
    pass


class TautologyBudgetExceeded(MlUnifyError):
    pass


class UnsupportedRule(MlUnifyError):
    pass
