"""Bayesian stochastic volatility estimation (Gaussian SV and NSVM-3)."""

try:
    from ._svkit import *  # noqa: F401,F403
    from ._svkit import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension next to the package
    from _svkit import *  # noqa: F401,F403
    from _svkit import __version__  # noqa: F401
