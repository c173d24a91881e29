"""Maximum-entropy completion of partially specified correlation matrices."""

__version__ = '0.1.0'
