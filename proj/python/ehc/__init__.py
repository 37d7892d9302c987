from ._ehc import *  # noqa: F401,F403
