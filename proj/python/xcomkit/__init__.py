"""Python bindings for the XCom toolkit."""

try:
    from ._xcomkit import *  # noqa: F401,F403
    from ._xcomkit import XcomError
except ImportError:  # in-tree build: the extension sits next to the package
    from _xcomkit import *  # noqa: F401,F403
    from _xcomkit import XcomError

__all__ = [
    "XcomError",
    "ast_json",
    "cfg",
    "check",
    "compile",
    "desugar",
    "dump",
    "exec",
    "format",
    "pprint_words",
    "run",
    "secd_run",
    "secd_trace",
]
