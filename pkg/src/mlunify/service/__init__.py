from . import handlers, schemas  # noqa: F401
