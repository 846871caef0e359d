"""Multi-horizon stochastic capacity expansion for coupled energy sectors."""

__version__ = "0.1.0"
