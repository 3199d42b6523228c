"""Broadcast wiretap channels with asymmetric side information.

Rate-region evaluation for discrete and Gaussian models, a desk-scale
random-binning simulator, and a min-max bound for a four-player game with
signals.
"""

__version__ = "0.1.0"
