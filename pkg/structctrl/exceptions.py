import contextlib
import textwrap
import traceback


class Error(RuntimeError):
    """Base class for the errors reported by structctrl.

    The exit_code attribute is the process exit status the command
    line interface uses when the error terminates a command.

    """
    exit_code = 1

    def __init__(self, message, *args):
        self.message = message
        self.args = args

    def __str__(self):
        return '\n'.join((*(str(arg) for arg in self.args), self.message))


class ValidationError(Error):
    """A document, cover, or parameter does not satisfy its invariants."""
    exit_code = 3


class ParameterError(ValidationError):
    pass


class PreconditionError(Error):
    """An operation was invoked on an input outside its domain."""
    exit_code = 3


class NotInputAccessibleError(PreconditionError):
    def __init__(self, message, nodes):
        super().__init__(message, 'inaccessible: ' + ', '.join(str(node) for node in nodes))
        self.nodes = tuple(nodes)


class NotAcyclicError(PreconditionError):
    pass


class SizeLimitError(Error):
    exit_code = 4


class VerificationError(Error):
    """A construction failed its own post-verification."""
    exit_code = 1

    def __init__(self, message, *args):
        super().__init__('internal error: ' + message, *args)


class ExceptionsTrap(contextlib.AbstractContextManager):
    """Log the errors raised in a command body and keep going.

    Errors of this package are logged as their message; other
    exceptions with a traceback. The exit status of the most severe
    error seen is kept in exit_code, for sys.exit().

    """
    def __init__(self, func):
        self.log = func
        self.errors = 0
        self.exit_code = 0

    def __exit__(self, exctype, excinst, exctb):
        if exctype is None:
            return True
        self.errors += 1
        self.log('  ERROR', fg='red')
        if issubclass(exctype, Error):
            self.log(textwrap.indent(str(excinst), '  '))
            self.exit_code = max(self.exit_code, excinst.exit_code)
            return True
        if issubclass(exctype, Exception):
            # Unexpected exception.
            self.log('  Unexpected exception.')
            exc = ''.join(traceback.format_exception(exctype, excinst, exctb))
            self.log(textwrap.indent(exc, '  ').rstrip())
            self.exit_code = max(self.exit_code, 1)
            return True
        return False

    def __bool__(self):
        """Return True if any error occurred."""
        return self.errors != 0
