from . import health  # noqa: F401
from . import moments  # noqa: F401
from . import planning  # noqa: F401
