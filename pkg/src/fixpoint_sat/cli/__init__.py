from . import commands, error_handlers, reporting
