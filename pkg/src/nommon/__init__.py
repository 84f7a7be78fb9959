"""Decision procedures for orbit-finite nominal monoids and
recognizable data languages over infinite alphabets."""

__version__ = "0.1.0"
