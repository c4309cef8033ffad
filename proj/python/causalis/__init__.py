"""Finite structural causal models: counterfactuals, actual causes, explanations.

The heavy lifting lives in the compiled extension; this package re-exports it.
Probabilities are exact (fractions.Fraction on the Python side), values are
opaque symbols, and every operation is deterministic.
"""

try:
    from causalis._core import *  # noqa: F401,F403
    from causalis._core import __version__  # noqa: F401
except ImportError:  # in-tree build: the extension sits on PYTHONPATH directly
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401


def load_fixture(name):
    """Parse a bundled fixture model by name (see fixture_names())."""
    text = fixture_text(name)  # noqa: F405
    if text is None:
        raise KeyError(f"no fixture named {name!r}")
    return parse_model(text)  # noqa: F405
